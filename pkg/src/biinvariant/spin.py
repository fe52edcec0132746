"""Clifford matrices, spin lifts and parallel spinors of biinvariant metrics."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

import numpy as np

from .extensions import ExtensionData, double_extend
from .field import I, ONE, SQRT2, ZERO, Scalar, as_scalar
from .holonomy import holonomy_algebra, prop4_generators
from .lie import MetricLieAlgebra, ad_operator, derived_subalgebra, killing_form
from .linalg import (
    Matrix,
    OperatorSpan,
    congruence_diagonalize,
    inverse,
    joint_kernel_dim,
    orthonormal_frame,
    rank,
    row_space,
    unit,
)

HALF = Scalar(Fraction(1, 2))
QUARTER = Scalar(Fraction(1, 4))
INV_SQRT2 = SQRT2.inverse()

U = Matrix.from_rows([[I, 0], [0, -I]])
V = Matrix.from_rows([[0, I], [I, 0]])
E = Matrix.identity(2)
T = Matrix.from_rows([[0, -I], [I, 0]])


class NotAntisymmetric(ValueError):
    """The operator is not skew for the Clifford signature."""


class HypothesisError(ValueError):
    """Theorem hypotheses are not met by the input."""


def _kron_all(factors: Sequence[Matrix]) -> Matrix:
    out = Matrix.identity(1)
    for f in factors:
        out = out.kron(f)
    return out


@dataclass(frozen=True, eq=False)
class CliffordRep:
    """gamma_j realizes e_j; gamma_i gamma_j + gamma_j gamma_i = -2 kappa_i delta_ij."""

    kappa: tuple[int, ...]
    gammas: tuple[Matrix, ...]
    projection: int = 1  # odd dimension: first component of the pair

    @property
    def n(self) -> int:
        return len(self.kappa)

    @property
    def m(self) -> int:
        return self.n // 2

    @property
    def dim(self) -> int:
        return 2 ** self.m

    @property
    def signature(self) -> tuple[int, int]:
        neg = sum(1 for k in self.kappa if k < 0)
        return neg, self.n - neg


def clifford_from_signs(kappa: Sequence[int]) -> CliffordRep:
    """Generators for an orthonormal basis with norms kappa, by the tensor recipe."""
    kappa = tuple(int(k) for k in kappa)
    if any(k not in (1, -1) for k in kappa):
        raise ValueError("kappa entries must be +1 or -1")
    n = len(kappa)
    m = n // 2
    gammas = []
    for idx in range(n):
        tau = I if kappa[idx] < 0 else ONE
        if n % 2 and idx == n - 1:
            g = _kron_all([T] * m).scale(I * tau)
        else:
            j = idx // 2 + 1
            mid = U if idx % 2 == 0 else V
            g = _kron_all([E] * (m - j) + [mid] + [T] * (j - 1)).scale(tau)
        gammas.append(g)
    return CliffordRep(kappa, tuple(gammas))


def clifford_generators(r: int, s: int) -> CliffordRep:
    if r < 0 or s < 0:
        raise ValueError("signature entries must be non-negative")
    return clifford_from_signs([-1] * r + [1] * s)


def clifford_relation_holds(rep: CliffordRep) -> bool:
    Id = Matrix.identity(rep.dim)
    for i, gi in enumerate(rep.gammas):
        for j in range(i, rep.n):
            gj = rep.gammas[j]
            target = Id.scale(-2 * rep.kappa[i]) if i == j else Matrix.zeros(rep.dim)
            if gi @ gj + gj @ gi != target:
                return False
    return True


def clifford_image(rep: CliffordRep, v: Sequence) -> Matrix:
    out = Matrix.zeros(rep.dim)
    for x, g in zip(v, rep.gammas):
        x = as_scalar(x)
        if x:
            out = out + g.scale(x)
    return out


def spinor_indices(m: int) -> list[tuple[int, ...]]:
    """Sign vectors (eps_m, ..., eps_1), lexicographic with +1 before -1."""
    return list(product((1, -1), repeat=m))


def _kron_vec(u: Sequence, w: Sequence) -> tuple:
    return tuple(a * b for a in u for b in w)


def u_vector(eps: Sequence[int]) -> tuple:
    """u(eps_m) x ... x u(eps_1), with u(eps) = (1, -eps i) / sqrt2."""
    out: tuple = (ONE,)
    for e in eps:
        out = _kron_vec(out, (INV_SQRT2, -I * e * INV_SQRT2))
    return out


def _check_skew(kappa: Sequence[int], A: Matrix):
    K = Matrix.diag(kappa)
    if A.shape != K.shape:
        raise NotAntisymmetric(f"expected a {K.nrows}x{K.nrows} operator")
    if not (A.T @ K + K @ A).is_zero():
        raise NotAntisymmetric("operator is not antisymmetric for the signature")


def spin_lift(rep: CliffordRep, A: Matrix) -> Matrix:
    """1/4 sum_i kappa_i e_i . A(e_i)."""
    _check_skew(rep.kappa, A)
    out = Matrix.zeros(rep.dim)
    for i, g in enumerate(rep.gammas):
        col = A.column(i)
        if any(col):
            out = out + (g @ clifford_image(rep, col)).scale(rep.kappa[i])
    return out.scale(QUARTER)


def annihilator_dim(rep: CliffordRep, operators: Sequence[Matrix]) -> int:
    """Dimension of the common kernel of the lifted operators on the spinor module."""
    lifts = [spin_lift(rep, A) for A in operators]
    return joint_kernel_dim(lifts, rep.dim)


# ---------------------------------------------------------------------------
# Double extensions in an adapted basis


@dataclass(frozen=True, eq=False)
class AdaptedBasis:
    """A double extension rewritten with orthonormal g and diagonal h form.

    ``algebra`` is the rebuilt extension; ``frame`` has columns
    e_1..e_{2r}, X_1..X_n in its coordinates and ``to_source`` maps those
    coordinates back to the ones of ``double_extend(source)``.
    """

    source: ExtensionData
    data: ExtensionData
    algebra: MetricLieAlgebra
    c: tuple[Scalar, ...]
    kappa_g: tuple[int, ...]
    frame: Matrix
    frame_inv: Matrix
    to_source: Matrix
    rep: CliffordRep
    rep_g: CliffordRep

    @property
    def n(self) -> int:
        return self.data.n

    @property
    def r(self) -> int:
        return self.data.r

    def alpha(self, j: int) -> tuple:
        """alpha_j, 1-based."""
        return unit(self.algebra.dim, self.data.alpha_index(j - 1))

    def H(self, j: int) -> tuple:
        return unit(self.algebra.dim, self.data.h_index(j - 1))

    def X(self, j: int) -> tuple:
        return unit(self.algebra.dim, self.data.x_index(j - 1))

    def embed_g(self, x: Sequence) -> tuple:
        out = [ZERO] * self.algebra.dim
        for a, v in enumerate(x):
            out[self.data.x_index(a)] = as_scalar(v)
        return tuple(out)

    def embed_h(self, x: Sequence) -> tuple:
        out = [ZERO] * self.algebra.dim
        for a, v in enumerate(x):
            out[self.data.h_index(a)] = as_scalar(v)
        return tuple(out)

    def gamma(self, v: Sequence) -> Matrix:
        return clifford_image(self.rep, self.frame_inv.apply(v))

    def frame_lift(self, A: Matrix) -> Matrix:
        """Spin lift of A (given in adapted coordinates) through the orthonormal frame."""
        return spin_lift(self.rep, self.frame_inv @ A @ self.frame)

    def from_source(self, A: Matrix) -> Matrix:
        """An operator on double_extend(source) rewritten in adapted coordinates."""
        return inverse(self.to_source) @ A @ self.to_source


def adapt(e: ExtensionData) -> AdaptedBasis:
    g, h = e.g, e.h
    n, r = g.dim, h.dim
    Fg, kappa_g = orthonormal_frame(g.metric)
    P, c = congruence_diagonalize(h.metric)
    Fg_inv = inverse(Fg)
    g2 = g.change_basis(Fg)
    h2 = h.change_basis(P)
    h2 = MetricLieAlgebra(h2.labels, h2.ad_basis, Matrix.diag(c), h.name, allow_degenerate=True)
    pi2 = []
    for i in range(r):
        M = Matrix.zeros(n)
        for k in range(r):
            if P[k, i]:
                M = M + e.pi[k].scale(P[k, i])
        pi2.append(Fg_inv @ M @ Fg)
    data = ExtensionData(g2, h2, tuple(pi2))
    d2 = double_extend(data)
    N = d2.dim

    # adapted coordinates -> source coordinates
    Pinv = inverse(P) if r else P
    Q = {}
    for i in range(r):
        for k in range(r):
            if Pinv[i, k]:
                Q[(e.alpha_index(k), data.alpha_index(i))] = Pinv[i, k]
            if P[k, i]:
                Q[(e.h_index(k), data.h_index(i))] = P[k, i]
    for j in range(n):
        for a in range(n):
            if Fg[a, j]:
                Q[(e.x_index(a), data.x_index(j))] = Fg[a, j]
    to_source = Matrix.from_entries(N, N, Q)

    cols = []
    for i in range(r):
        half_c = c[i] * HALF
        for shift in (ONE, -ONE):
            v = [ZERO] * N
            v[data.h_index(i)] = INV_SQRT2
            v[data.alpha_index(i)] = -(half_c + shift) * INV_SQRT2
            cols.append(tuple(v))
    for j in range(n):
        cols.append(unit(N, data.x_index(j)))
    F = Matrix.from_columns(cols) if cols else Matrix.zeros(0)
    kappa = [-1, 1] * r + list(kappa_g)
    return AdaptedBasis(
        source=e,
        data=data,
        algebra=d2,
        c=tuple(c),
        kappa_g=tuple(kappa_g),
        frame=F,
        frame_inv=inverse(F) if N else F,
        to_source=to_source,
        rep=clifford_from_signs(kappa),
        rep_g=clifford_from_signs(kappa_g),
    )


def adapted_spin_lift(ab: AdaptedBasis, A: Matrix) -> Matrix:
    """The lift written through alpha_i, H_i and X_j directly."""
    d = ab.algebra
    G = d.metric
    if A.shape != G.shape or not (A.T @ G + G @ A).is_zero():
        raise NotAntisymmetric("operator is not antisymmetric for the extension metric")
    out = Matrix.zeros(ab.rep.dim)
    for i in range(1, ab.r + 1):
        a_i, H_i = ab.alpha(i), ab.H(i)
        Aa = ab.gamma(A.apply(a_i))
        ga = ab.gamma(a_i)
        out = out + ab.gamma(H_i) @ Aa + ga @ ab.gamma(A.apply(H_i))
        if ab.c[i - 1]:
            out = out - (ga @ Aa).scale(ab.c[i - 1])
    for j in range(1, ab.n + 1):
        X = ab.X(j)
        out = out + (ab.gamma(X) @ ab.gamma(A.apply(X))).scale(ab.kappa_g[j - 1])
    return out.scale(QUARTER)


def closed_form_action(ab: AdaptedBasis, kind: str, which, u: Sequence, eps: Sequence[int]) -> tuple:
    """Clifford action on u x u(eps_r, ..., eps_1) by the explicit sign formulas.

    kind is "alpha" or "H" (which = j, 1-based) or "X" (which = coordinates in g).
    """
    r = ab.r
    eps = tuple(eps)
    if len(eps) != r:
        raise ValueError(f"expected {r} signs")
    if kind == "X":
        sign = (-1) ** r
        for e_ in eps:
            sign *= e_
        Xu = clifford_image(ab.rep_g, which).apply(u)
        return _kron_vec(tuple(x * sign for x in Xu), u_vector(eps))
    j = int(which)
    if not 1 <= j <= r:
        raise ValueError(f"index {j} out of range 1..{r}")
    pos = r - j  # eps_j sits at this position of (eps_r, ..., eps_1)
    ej = eps[pos]
    sign = (-1) ** (j - 1)
    for e_ in eps[pos + 1:]:
        sign *= e_
    if kind == "alpha":
        coeff = as_scalar(ej + 1)
    elif kind == "H":
        coeff = as_scalar(ej - 1) + ab.c[j - 1] * HALF * (ej + 1)
    else:
        raise ValueError(f"unknown kind {kind!r}")
    coeff = coeff * INV_SQRT2 * sign
    flipped = eps[:pos] + (-ej,) + eps[pos + 1:]
    return tuple(coeff * x for x in _kron_vec(tuple(u), u_vector(flipped)))


def spin_holonomy(e: ExtensionData, ab: AdaptedBasis | None = None) -> list[Matrix]:
    """The four generator families of the lifted holonomy, in the adapted frame."""
    ab = ab or adapt(e)
    data = ab.data
    g, h = data.g, data.h
    n, r = g.dim, h.dim
    size = ab.rep.dim
    ga = [ab.gamma(ab.alpha(i)) for i in range(1, r + 1)]
    gX = [ab.gamma(ab.X(j)) for j in range(1, n + 1)]
    kap = ab.kappa_g
    out: list[Matrix] = []

    def g_sum(Y):
        # sum_j kappa_j X_j . [Y, X_j]_g
        adY = ad_operator(g, Y)
        acc = Matrix.zeros(size)
        for j in range(n):
            col = adY.column(j)
            if any(col):
                acc = acc + (gX[j] @ ab.gamma(ab.embed_g(col))).scale(kap[j])
        return acc

    def pi_alpha(Y):
        # 2 sum_j pi(H_j) Y . alpha_j
        acc = Matrix.zeros(size)
        for j in range(r):
            v = data.pi[j].apply(Y)
            if any(v):
                acc = acc + (ab.gamma(ab.embed_g(v)) @ ga[j]).scale(2)
        return acc

    def alpha_pairs(coef):
        acc = Matrix.zeros(size)
        for i in range(r):
            for j in range(r):
                if coef(i, j):
                    acc = acc + (ga[i] @ ga[j]).scale(coef(i, j))
        return acc

    def hbr(i, j):
        return h.ad_basis[i].column(j)

    for a in range(n):
        for b in range(a + 1, n):
            Y = g.ad_basis[a].column(b)
            Y1, Y2 = unit(n, a), unit(n, b)

            def c1(i, j):
                return g.inner(data.pi_of(hbr(i, j)).apply(Y1), Y2)

            out.append(alpha_pairs(c1) + pi_alpha(Y) + g_sum(Y))
    for Hv in derived_subalgebra(h):
        adH = ad_operator(h, Hv)
        acc = Matrix.zeros(size)
        trace = ZERO
        for j in range(r):
            col = adH.column(j)  # [H, H_j]
            if any(col):
                acc = acc + (ab.gamma(ab.embed_h(col)) @ ga[j]).scale(2)
            trace = trace + col[j]
        acc = acc + Matrix.identity(size).scale(trace * 2)
        acc = acc + alpha_pairs(lambda i, j: ab.c[i] * adH[i, j])
        piH = data.pi_of(Hv)
        for j in range(n):
            col = piH.column(j)
            if any(col):
                acc = acc - (gX[j] @ ab.gamma(ab.embed_g(col))).scale(kap[j])
        out.append(acc)
    for alpha in _coadjoint_image(h):
        out.append(alpha_pairs(lambda i, j: sum((alpha[k] * h.ad_basis[i][k, j] for k in range(r)), ZERO)))
    for Xv in row_space([P.column(j) for P in data.pi for j in range(n)], n):
        out.append(pi_alpha(Xv) + g_sum(Xv))
    return [M for M in out if not M.is_zero()]


def _coadjoint_image(h: MetricLieAlgebra) -> list[tuple]:
    """Basis of ad*(h) h* in the dual coordinates."""
    r = h.dim
    vecs = [tuple(-h.ad_basis[i][k, l] for l in range(r)) for i in range(r) for k in range(r)]
    return row_space(vecs, r)


def lifted_prop4(ab: AdaptedBasis) -> list[Matrix]:
    """Adapted lifts of the block-matrix holonomy generators."""
    return [adapted_spin_lift(ab, M) for M in prop4_generators(ab.data).basis()]


# ---------------------------------------------------------------------------
# Parallel spinors


def lifted_holonomy(a: MetricLieAlgebra) -> tuple[CliffordRep, list[Matrix]]:
    """Spin lifts of a basis of ad([a, a]) through an exact orthonormal frame."""
    F, kappa = orthonormal_frame(a.metric)
    Finv = inverse(F)
    rep = clifford_from_signs(kappa)
    hol = holonomy_algebra(a)
    return rep, [spin_lift(rep, Finv @ M @ F) for M in hol.basis()]


def parallel_spinor_dim(a: MetricLieAlgebra) -> int:
    rep, lifts = lifted_holonomy(a)
    return joint_kernel_dim(lifts, rep.dim)


def extension_parallel_spinor_dim(e: ExtensionData) -> int:
    """Same count through the adapted frame of a double extension."""
    ab = adapt(e)
    hol = holonomy_algebra(ab.algebra)
    lifts = [ab.frame_lift(M) for M in hol.basis()]
    return joint_kernel_dim(lifts, ab.rep.dim)


@dataclass(frozen=True)
class Theorem2Result:
    bound: int
    exact: int

    @property
    def holds(self) -> bool:
        return self.bound <= self.exact


def _h_is_abelian_or_semisimple(h: MetricLieAlgebra) -> bool:
    if all(M.is_zero() for M in h.ad_basis):
        return True
    return rank(killing_form(h)) == h.dim


def theorem2_operators(ab: AdaptedBasis) -> list[Matrix]:
    """ad_g(pi(h) g) + pi([h, h]) together with ad_g([g, g]), in the orthonormal g frame."""
    data = ab.data
    g, h = data.g, data.h
    n = g.dim
    ops = []
    for P in data.pi:
        for j in range(n):
            ops.append(ad_operator(g, P.column(j)))
    for Hv in derived_subalgebra(h):
        ops.append(data.pi_of(Hv))
    for Y in derived_subalgebra(g):
        ops.append(ad_operator(g, Y))
    return OperatorSpan(n, ops).basis()


def theorem2_bound(e: ExtensionData) -> Theorem2Result:
    if not _h_is_abelian_or_semisimple(e.h):
        raise HypothesisError("h must be abelian or semisimple")
    ab = adapt(e)
    bound = annihilator_dim(ab.rep_g, theorem2_operators(ab))
    exact = parallel_spinor_dim(ab.algebra)
    result = Theorem2Result(bound, exact)
    if not result.holds:
        raise ArithmeticError(f"lower bound {bound} exceeds exact count {exact}")
    return result


# ---------------------------------------------------------------------------
# Closed formulas used as cross-checks


def theorem5_expected(A: Matrix, G: Matrix) -> int:
    """2^[(p+q)/2] (1 + 2^-rho) if A^2 g is totally isotropic, else 2^[(p+q)/2]."""
    n = A.nrows
    base = 2 ** (n // 2)
    A2 = A @ A
    rho = rank(A2)
    if (A2.T @ G @ A2).is_zero():
        return base + base // 2 ** rho
    return base


def theorem6_expected(n: int, m: int, span_dim: int) -> int:
    return 2 ** (m - span_dim + n // 2)


def _signed_sums(weights: Sequence[int]) -> np.ndarray:
    sums = np.zeros(1, dtype=np.int64)
    for w in weights:
        sums = np.concatenate((sums + w, sums - w))
    return sums


def su2_weight_count(kind: str, k: int) -> int:
    """N_0 - N_2 (rho_k) or N_0' - N_2' (sigma_k) by enumerating all sign vectors."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if kind == "rho":
        sums = _signed_sums(range(1, k + 1))
        top = 2
    elif kind == "sigma":
        weights = []
        for j in range(1, k + 1):
            weights += [2 * j - 1, -(2 * j - 1)]
        sums = _signed_sums(weights)
        top = 4
    else:
        raise ValueError(f"unknown representation {kind!r}")
    return int(np.count_nonzero(sums == 0) - np.count_nonzero(sums == top))


__all__ = [
    "CliffordRep",
    "AdaptedBasis",
    "NotAntisymmetric",
    "HypothesisError",
    "Theorem2Result",
    "clifford_from_signs",
    "clifford_generators",
    "clifford_relation_holds",
    "clifford_image",
    "spinor_indices",
    "u_vector",
    "spin_lift",
    "annihilator_dim",
    "adapt",
    "adapted_spin_lift",
    "closed_form_action",
    "spin_holonomy",
    "lifted_prop4",
    "lifted_holonomy",
    "parallel_spinor_dim",
    "extension_parallel_spinor_dim",
    "theorem2_operators",
    "theorem2_bound",
    "theorem5_expected",
    "theorem6_expected",
    "su2_weight_count",
]
