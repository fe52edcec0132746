"""Holonomy algebras hol = ad([d, d]) and their generators for double extensions."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .extensions import ExtensionData
from .field import ZERO
from .lie import MetricLieAlgebra, ad_operator, derived_subalgebra, subspace_is_invariant
from .linalg import Matrix, OperatorSpan, bracket_closure, row_space


@dataclass(frozen=True, eq=False)
class HolonomyResult:
    span: OperatorSpan
    is_abelian: bool

    @property
    def dimension(self) -> int:
        return self.span.dim

    def basis(self) -> list[Matrix]:
        return self.span.basis()


def holonomy_algebra(a: MetricLieAlgebra) -> HolonomyResult:
    gens = [ad_operator(a, z) for z in derived_subalgebra(a)]
    span = OperatorSpan(a.dim, gens)
    G = a.metric
    for M in span.basis():
        assert (M.T @ G + G @ M).is_zero(), "holonomy operator is not skew"
    closed = bracket_closure(span)
    assert closed.dim == span.dim, "ad([d,d]) was not closed under brackets"
    return HolonomyResult(span, span.is_abelian())


def _pi_span_basis(e: ExtensionData) -> list[tuple]:
    """Echelon basis of pi(h) g."""
    vecs = [P.column(j) for P in e.pi for j in range(e.n)]
    return row_space(vecs, e.n)


def _dual_span_basis(e: ExtensionData) -> list[tuple]:
    """Echelon basis of ad*(h) h* in the alpha-coordinates (alpha_1..alpha_r)."""
    h = e.h
    r = h.dim
    vecs = []
    for i in range(r):
        for k in range(r):
            # ad*(H_i) alpha_k = -sum_l alpha_k([H_i, H_l]) alpha_l
            vecs.append(tuple(-h.ad_basis[i][k, l] for l in range(r)))
    return row_space(vecs, r)


def _coadjoint(e: ExtensionData, H: Sequence, alpha: Sequence) -> list:
    """ad*(H) alpha as alpha-coordinates."""
    h = e.h
    r = h.dim
    adH = ad_operator(h, H)
    # (ad*(H) alpha)(K) = -alpha([H, K])
    return [-sum((alpha[k] * adH[k, l] for k in range(r)), ZERO) for l in range(r)]


def prop4_generators(e: ExtensionData) -> OperatorSpan:
    """The four displayed matrix families, block by block on h* + g + h."""
    g, h = e.g, e.h
    n, r = g.dim, h.dim
    N = n + 2 * r
    A, X, H = e.alpha_index, e.x_index, e.h_index
    Gpi = [g.metric @ P for P in e.pi]
    gens: list[Matrix] = []

    def beta_row(Y):
        # beta(Y, X_b)(H_i) = <pi(H_i) Y, X_b>
        return {(A(i), X(b)): sum((Gpi[i][b, k] * Y[k] for k in range(n)), ZERO)
                for i in range(r) for b in range(n)}

    def g_part(Y, entries):
        adY = ad_operator(g, Y)
        for a_, b_, v in adY.nonzero():
            entries[(X(a_), X(b_))] = v
        for j in range(r):
            col = e.pi[j].apply(Y)
            for k, v in enumerate(col):
                if v:
                    entries[(X(k), H(j))] = -v

    # family 1: Y = [Y1, Y2]_g with the h*-column -ad_h(.)^* beta(Y1, Y2)
    for a in range(n):
        for b in range(a + 1, n):
            Y = g.ad_basis[a].column(b)
            bvec = [Gpi[i][b, a] for i in range(r)]  # beta(Y1, Y2)(H_i)
            if not any(Y) and not any(bvec):
                continue
            entries = beta_row(Y)
            g_part(Y, entries)
            for j in range(r):
                col = _coadjoint(e, h.basis_vector(j), bvec)
                for l, v in enumerate(col):
                    if v:
                        entries[(A(l), H(j))] = -v
            gens.append(Matrix.from_entries(N, N, entries))
    # family 2: H in [h, h]
    for Hv in derived_subalgebra(h):
        entries = {}
        for k in range(r):
            col = _coadjoint(e, Hv, h.basis_vector(k))
            for l, v in enumerate(col):
                if v:
                    entries[(A(l), A(k))] = v
        for a_, b_, v in e.pi_of(Hv).nonzero():
            entries[(X(a_), X(b_))] = v
        for a_, b_, v in ad_operator(h, Hv).nonzero():
            entries[(H(a_), H(b_))] = v
        gens.append(Matrix.from_entries(N, N, entries))
    # family 3: alpha in ad*(h) h*
    for alpha in _dual_span_basis(e):
        entries = {}
        for j in range(r):
            col = _coadjoint(e, h.basis_vector(j), alpha)
            for l, v in enumerate(col):
                if v:
                    entries[(A(l), H(j))] = v
        gens.append(Matrix.from_entries(N, N, entries))
    # family 4: X in pi(h) g
    for Xv in _pi_span_basis(e):
        entries = beta_row(Xv)
        g_part(Xv, entries)
        gens.append(Matrix.from_entries(N, N, entries))
    return OperatorSpan(N, gens)


def invariant_subspace_check(hr: HolonomyResult, basis: Sequence[Sequence]) -> bool:
    return subspace_is_invariant(hr.basis(), basis)


def theorem5_holonomy(A: Matrix, G: Matrix) -> OperatorSpan:
    """{(0, (A^2 X)^*, 0; 0, 0, -A^2 X; 0, 0, 0)} for A(p,q) in the basis (alpha, g, H)."""
    n = A.nrows
    N = n + 2
    A2 = A @ A
    gens = []
    for j in range(n):
        v = A2.column(j)
        flat = G.apply(v)  # (A^2 X)^* = <A^2 X, .>
        entries = {}
        for b in range(n):
            if flat[b]:
                entries[(0, 1 + b)] = flat[b]
        for k in range(n):
            if v[k]:
                entries[(1 + k, N - 1)] = -v[k]
        gens.append(Matrix.from_entries(N, N, entries))
    return OperatorSpan(N, gens)


def tower_holonomy(U: Sequence[Matrix], n: int) -> OperatorSpan:
    """Columns U_k X for X in g_0, in the basis (alpha_m..alpha_1, g_0, H_1..H_m)."""
    m = len(U)
    N = n + 2 * m
    gens = []
    for j in range(n):
        entries = {}
        for k in range(m):
            v = U[k].column(j)
            # alpha_{k+1} row holds (U_k X)^T, H_{k+1} column holds -U_k X
            for b in range(n):
                if v[b]:
                    entries[(m - 1 - k, m + b)] = v[b]
                    entries[(m + b, m + n + k)] = -v[b]
        gens.append(Matrix.from_entries(N, N, entries))
    return OperatorSpan(N, gens)
