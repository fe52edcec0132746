"""Metric Lie algebras given by structure constants and an invariant form."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .field import ZERO, Scalar, as_scalar
from .linalg import (
    Matrix,
    Vector,
    bilinear,
    form_signature,
    kernel_basis,
    rank,
    row_space,
)


@dataclass(frozen=True, eq=False)
class MetricLieAlgebra:
    """Lie algebra with basis e_0..e_{n-1} and symmetric invariant form.

    ``ad_basis[i]`` is the matrix of ad(e_i); its column j holds the
    coordinates of [e_i, e_j], so c[i][j][k] = ad_basis[i][k, j].
    """

    labels: tuple[str, ...]
    ad_basis: tuple[Matrix, ...]
    metric: Matrix
    name: str = ""
    allow_degenerate: bool = field(default=False, repr=False)

    @property
    def dim(self) -> int:
        return len(self.labels)

    @classmethod
    def from_brackets(
        cls,
        labels: Sequence[str],
        brackets: Mapping[tuple[int, int], Mapping[int, object] | Sequence],
        metric: Matrix | Sequence[Sequence],
        name: str = "",
        allow_degenerate: bool = False,
    ) -> MetricLieAlgebra:
        """Build from [e_i, e_j] for listed pairs; (j, i) is filled by antisymmetry.

        A pair listed in both orders must agree up to sign.
        """
        n = len(labels)
        cols: list[list[dict]] = [[{} for _ in range(n)] for _ in range(n)]
        for (i, j), val in brackets.items():
            if isinstance(val, Mapping):
                vec = {k: as_scalar(x) for k, x in val.items()}
            else:
                vec = {k: as_scalar(x) for k, x in enumerate(val)}
            vec = {k: x for k, x in vec.items() if x}
            if not vec:
                continue
            for k in vec:
                if not 0 <= k < n:
                    raise ValueError(f"bracket index {k} out of range")
            cols[i][j] = vec
            if not cols[j][i]:
                cols[j][i] = {k: -x for k, x in vec.items()}
        ad = []
        for i in range(n):
            rows = [{} for _ in range(n)]
            for j in range(n):
                for k, x in cols[i][j].items():
                    rows[k][j] = x
            ad.append(Matrix(n, n, rows))
        if not isinstance(metric, Matrix):
            metric = Matrix.from_rows(metric)
        return cls(tuple(labels), tuple(ad), metric, name, allow_degenerate)

    @classmethod
    def abelian(cls, metric: Matrix | Sequence[Sequence], labels: Sequence[str] | None = None,
                name: str = "", allow_degenerate: bool = False) -> MetricLieAlgebra:
        if not isinstance(metric, Matrix):
            metric = Matrix.from_rows(metric)
        n = metric.nrows
        labels = tuple(labels) if labels is not None else tuple(f"X{i + 1}" for i in range(n))
        return cls(labels, tuple(Matrix.zeros(n) for _ in range(n)), metric, name, allow_degenerate)

    def structure_constant(self, i: int, j: int, k: int) -> Scalar:
        return self.ad_basis[i][k, j]

    def bracket(self, x: Sequence, y: Sequence) -> Vector:
        return ad_operator(self, x).apply(y)

    def inner(self, x: Sequence, y: Sequence) -> Scalar:
        return bilinear(self.metric, x, y)

    def basis_vector(self, i: int) -> Vector:
        return tuple(Scalar.from_int(int(k == i)) for k in range(self.dim))

    def signature(self) -> tuple[int, int, int]:
        return form_signature(self.metric)

    def with_metric(self, metric: Matrix, name: str | None = None) -> MetricLieAlgebra:
        return MetricLieAlgebra(self.labels, self.ad_basis, metric,
                                self.name if name is None else name, self.allow_degenerate)

    def change_basis(self, P: Matrix, labels: Sequence[str] | None = None) -> MetricLieAlgebra:
        """Same algebra in the basis given by the columns of P."""
        from .linalg import inverse

        Pinv = inverse(P)
        cols = P.columns()
        ad_new = []
        for c in cols:
            ad_new.append(Pinv @ ad_operator(self, c) @ P)
        metric = P.T @ self.metric @ P
        return MetricLieAlgebra(tuple(labels) if labels else self.labels, tuple(ad_new), metric,
                                self.name, self.allow_degenerate)


def DegenerateFormAlgebra(labels, ad_basis, metric, name: str = "") -> MetricLieAlgebra:
    """A Lie algebra whose invariant form may be degenerate (the h of an extension)."""
    return MetricLieAlgebra(tuple(labels), tuple(ad_basis), metric, name, allow_degenerate=True)


def validate(a: MetricLieAlgebra) -> list[str]:
    """Every violated invariant, as human-readable strings; empty if valid."""
    n = a.dim
    problems: list[str] = []
    G = a.metric
    if len(a.ad_basis) != n or any(M.shape != (n, n) for M in a.ad_basis):
        return ["structure constants do not match the dimension"]
    if G.shape != (n, n):
        return ["metric does not match the dimension"]
    for i in range(n):
        for j in range(i, n):
            for k in range(n):
                if a.ad_basis[i][k, j] != -a.ad_basis[j][k, i]:
                    problems.append(f"antisymmetry: c[{i}][{j}][{k}] != -c[{j}][{i}][{k}]")
    # Jacobi is equivalent to ad([e_i, e_j]) = [ad e_i, ad e_j].
    for i in range(n):
        for j in range(i + 1, n):
            lhs = ad_operator(a, a.ad_basis[i].column(j))
            rhs = a.ad_basis[i] @ a.ad_basis[j] - a.ad_basis[j] @ a.ad_basis[i]
            if lhs != rhs:
                problems.append(f"jacobi: fails for ({a.labels[i]}, {a.labels[j]})")
    if not G.is_symmetric():
        problems.append("metric: not symmetric")
    if not G.is_real():
        problems.append("metric: entries outside Q(sqrt2)")
    elif G.is_symmetric() and not a.allow_degenerate and rank(G) < n:
        problems.append("metric: degenerate")
    for i in range(n):
        if not (a.ad_basis[i].T @ G + G @ a.ad_basis[i]).is_zero():
            problems.append(f"invariance: ad({a.labels[i]}) is not skew for the metric")
    return problems


def ad_operator(a: MetricLieAlgebra, x: Sequence) -> Matrix:
    """Matrix of y -> [x, y]."""
    n = a.dim
    out = Matrix.zeros(n)
    for xi, M in zip(x, a.ad_basis):
        xi = as_scalar(xi)
        if xi:
            out = out + M.scale(xi)
    return out


def killing_form(a: MetricLieAlgebra) -> Matrix:
    n = a.dim
    rows = []
    for i in range(n):
        rows.append([(a.ad_basis[i] @ a.ad_basis[j]).trace() for j in range(n)])
    return Matrix.from_rows(rows)


def derived_subalgebra(a: MetricLieAlgebra) -> list[Vector]:
    """Echelon basis of [a, a]."""
    vecs = [a.ad_basis[i].column(j) for i in range(a.dim) for j in range(i + 1, a.dim)]
    return row_space(vecs, a.dim)


def center(a: MetricLieAlgebra) -> list[Vector]:
    """Echelon basis of {x : ad x = 0}."""
    n = a.dim
    # row (j, k), column i: coefficient of e_k in [e_i, e_j]
    rows = [[a.ad_basis[i][k, j] for i in range(n)] for j in range(n) for k in range(n)]
    M = Matrix.from_rows(rows) if rows else Matrix.zeros(0, n)
    return row_space(kernel_basis(M), n)


def is_metric_derivation(a: MetricLieAlgebra, A: Matrix) -> dict[str, bool]:
    """Which defining property of an antisymmetric derivation holds."""
    n = a.dim
    if A.shape != (n, n):
        raise ValueError(f"expected a {n}x{n} matrix")
    leibniz = all(
        (A @ a.ad_basis[i] - a.ad_basis[i] @ A) == ad_operator(a, A.column(i)) for i in range(n)
    )
    skew = (A.T @ a.metric + a.metric @ A).is_zero()
    return {"leibniz": leibniz, "antisymmetric": skew}


def metric_derivations(a: MetricLieAlgebra) -> list[Matrix]:
    """Basis of the antisymmetric derivations of a, by solving the linear conditions."""
    from .linalg import RowReducer

    n = a.dim
    G = a.metric
    c = a.ad_basis  # [e_a, e_b] has e_l-coefficient c[a][l, b]

    def var(i, j):
        return i * n + j

    red = RowReducer(n * n)

    def push(eq):
        eq = {k: v for k, v in eq.items() if v}
        if eq:
            red.add(eq)

    def acc(eq, k, v):
        if v:
            eq[k] = eq.get(k, ZERO) + v

    for x in range(n):
        for y in range(x + 1, n):
            # D[e_x, e_y] - [D e_x, e_y] - [e_x, D e_y] = 0, component k
            for k in range(n):
                eq: dict = {}
                for l in range(n):
                    acc(eq, var(k, l), c[x][l, y])
                    acc(eq, var(l, x), -c[l][k, y])
                    acc(eq, var(l, y), -c[x][k, l])
                push(eq)
    for x in range(n):
        for y in range(x, n):
            eq = {}
            for l in range(n):
                acc(eq, var(l, x), G[l, y])
                acc(eq, var(l, y), G[x, l])
            push(eq)
    return [Matrix.from_rows([v[i * n:(i + 1) * n] for i in range(n)]) for v in red.null_space()]


def is_derivation_and_skew(a: MetricLieAlgebra, A: Matrix) -> bool:
    report = is_metric_derivation(a, A)
    return report["leibniz"] and report["antisymmetric"]


def subspace_is_invariant(ops: Sequence[Matrix], basis: Sequence[Sequence]) -> bool:
    """True iff every operator maps span(basis) into itself."""
    from .linalg import in_span

    if not basis:
        return True
    n = len(basis[0])
    canon = row_space(basis, n)
    for M in ops:
        for v in canon:
            if not in_span(canon, M.apply(v)):
                return False
    return True


def zero_vector(n: int) -> Vector:
    return tuple(ZERO for _ in range(n))
