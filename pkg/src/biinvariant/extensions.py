"""Double extensions, one-dimensional extensions and towers of them."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .field import ONE, ZERO, Scalar
from .lie import MetricLieAlgebra, is_metric_derivation, validate
from .linalg import Matrix, OperatorSpan, rank


class InvalidExtension(ValueError):
    """Raised when construction data violates a defining condition."""

    def __init__(self, problems):
        if isinstance(problems, str):
            problems = [problems]
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


@dataclass(frozen=True, eq=False)
class ExtensionData:
    """g with invariant metric, h with invariant (maybe degenerate) form, pi: h -> Der_a(g).

    ``pi[a]`` is the matrix of pi(H_a) on g.
    """

    g: MetricLieAlgebra
    h: MetricLieAlgebra
    pi: tuple[Matrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "pi", tuple(self.pi))

    @property
    def n(self) -> int:
        return self.g.dim

    @property
    def r(self) -> int:
        return self.h.dim

    def pi_of(self, H: Sequence) -> Matrix:
        out = Matrix.zeros(self.n)
        for x, P in zip(H, self.pi):
            if x:
                out = out + P.scale(x)
        return out

    # coordinates of d = h* + g + h in the order (alpha_r..alpha_1, X_1..X_n, H_1..H_r)
    def alpha_index(self, i: int) -> int:
        """Position of alpha_{i+1} (0-based i)."""
        return self.r - 1 - i

    def x_index(self, a: int) -> int:
        return self.r + a

    def h_index(self, i: int) -> int:
        return self.r + self.n + i


def validate_extension(e: ExtensionData) -> list[str]:
    problems = []
    g, h = e.g, e.h
    problems += [f"g: {p}" for p in validate(g)]
    hh = MetricLieAlgebra(h.labels, h.ad_basis, h.metric, h.name, allow_degenerate=True)
    problems += [f"h: {p}" for p in validate(hh)]
    if len(e.pi) != h.dim:
        problems.append(f"pi: expected {h.dim} matrices, got {len(e.pi)}")
        return problems
    for a, P in enumerate(e.pi):
        if P.shape != (g.dim, g.dim):
            problems.append(f"pi({h.labels[a]}): wrong shape {P.shape}")
            continue
        rep = is_metric_derivation(g, P)
        if not rep["leibniz"]:
            problems.append(f"pi({h.labels[a]}): not a derivation of g")
        if not rep["antisymmetric"]:
            problems.append(f"pi({h.labels[a]}): not antisymmetric for the metric of g")
    if problems:
        return problems
    for a in range(h.dim):
        for b in range(a + 1, h.dim):
            lhs = e.pi_of(h.ad_basis[a].column(b))
            rhs = e.pi[a] @ e.pi[b] - e.pi[b] @ e.pi[a]
            if lhs != rhs:
                problems.append(
                    f"pi: not a homomorphism on ({h.labels[a]}, {h.labels[b]})"
                )
    return problems


def double_extend(e: ExtensionData, name: str = "") -> MetricLieAlgebra:
    """The metric Lie algebra on h* + g + h built from e."""
    problems = validate_extension(e)
    if problems:
        raise InvalidExtension(problems)
    g, h = e.g, e.h
    n, r = g.dim, h.dim
    N = n + 2 * r
    A, X, H = e.alpha_index, e.x_index, e.h_index
    Gpi = [g.metric @ P for P in e.pi]
    br: dict[tuple[int, int], dict[int, Scalar]] = {}

    def put(i, j, k, v):
        if v:
            d = br.setdefault((i, j), {})
            d[k] = d.get(k, ZERO) + v

    for a in range(n):
        for b in range(a + 1, n):
            for k, v in enumerate(g.ad_basis[a].column(b)):
                put(X(a), X(b), X(k), v)
            for i in range(r):
                put(X(a), X(b), A(i), Gpi[i][b, a])
    for i in range(r):
        for a in range(n):
            for k, v in enumerate(e.pi[i].column(a)):
                put(H(i), X(a), X(k), v)
        # [H_i, alpha_k] = ad*(H_i) alpha_k = -sum_l alpha_k([H_i, H_l]) alpha_l
        for k in range(r):
            for l in range(r):
                put(H(i), A(k), A(l), -h.ad_basis[i][k, l])
        for j in range(i + 1, r):
            for k, v in enumerate(h.ad_basis[i].column(j)):
                put(H(i), H(j), H(k), v)

    metric = {}
    for a, row in enumerate(g.metric.to_lists()):
        for b, v in enumerate(row):
            if v:
                metric[(X(a), X(b))] = v
    for i in range(r):
        for j in range(r):
            if h.metric[i, j]:
                metric[(H(i), H(j))] = h.metric[i, j]
        metric[(A(i), H(i))] = ONE
        metric[(H(i), A(i))] = ONE
    labels = [None] * N
    for i in range(r):
        labels[A(i)] = _dual_label(h.labels[i])
        labels[H(i)] = h.labels[i]
    for a in range(n):
        labels[X(a)] = g.labels[a]
    return MetricLieAlgebra.from_brackets(
        labels, br, Matrix.from_entries(N, N, metric), name=name
    )


def _dual_label(label: str) -> str:
    if label.startswith("H"):
        return "α" + label[1:]
    return label + "*"


def line_algebra(label: str = "H", c=0) -> MetricLieAlgebra:
    """R with the invariant form c."""
    return MetricLieAlgebra(
        (label,), (Matrix.zeros(1),), Matrix.from_rows([[c]]), allow_degenerate=True
    )


def extend_by_line(g: MetricLieAlgebra, A: Matrix, h_label: str = "H", name: str = "") -> MetricLieAlgebra:
    """d_A(g, R) with c = 0: [X,Y] = <AX,Y> alpha + [X,Y]_g, [H,X] = AX."""
    return double_extend(line_extension_data(g, A, h_label), name=name)


def line_extension_data(g: MetricLieAlgebra, A: Matrix, h_label: str = "H") -> ExtensionData:
    return ExtensionData(g, line_algebra(h_label), (A,))


@dataclass(frozen=True, eq=False)
class NormalDerivationSet:
    """Tower data: U_0..U_{m-1} in so(n), Z_1..Z_{m-1} with Z_k antisymmetric k x k."""

    n: int
    U: tuple[Matrix, ...]
    Z: tuple[Matrix, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "U", tuple(self.U))
        Z = tuple(self.Z)
        if not Z:
            Z = tuple(Matrix.zeros(k) for k in range(1, len(self.U)))
        object.__setattr__(self, "Z", Z)

    @property
    def m(self) -> int:
        return len(self.U)

    def span_dim(self) -> int:
        return OperatorSpan(self.n, self.U).dim

    def K(self) -> int:
        return self.m - self.span_dim()

    def derivation(self, k: int) -> Matrix:
        """A_k^0 on g_k = (alpha_k..alpha_1, g_0, H_1..H_k)."""
        n = self.n
        N = n + 2 * k
        entries = {}
        for i, j, v in self.U[k].nonzero():
            entries[(k + i, k + j)] = v
        if k > 0:
            Z = self.Z[k - 1]
            for i, j, v in Z.nonzero():
                # A(H_{j+1}) has alpha_{i+1}-coefficient Z[i, j]
                entries[(k - 1 - i, k + n + j)] = v
        return Matrix.from_entries(N, N, entries)


def validate_normal_set(s: NormalDerivationSet) -> list[str]:
    problems = []
    n = s.n
    if s.m < 1:
        return ["need at least one derivation"]
    for k, U in enumerate(s.U):
        if U.shape != (n, n):
            problems.append(f"condition (i): U_{k} has shape {U.shape}")
        elif not (U + U.T).is_zero():
            problems.append(f"condition (i): U_{k} is not antisymmetric")
    if len(s.Z) != s.m - 1:
        problems.append(f"condition (i): expected {s.m - 1} Z matrices, got {len(s.Z)}")
    for k, Z in enumerate(s.Z, start=1):
        if Z.shape != (k, k):
            problems.append(f"condition (i): Z_{k} must be {k}x{k}")
        elif not (Z + Z.T).is_zero():
            problems.append(f"condition (i): Z_{k} is not antisymmetric")
    if problems:
        return problems
    for a in range(s.m):
        for b in range(a + 1, s.m):
            if not (s.U[a] @ s.U[b] - s.U[b] @ s.U[a]).is_zero():
                problems.append(f"condition (ii): U_{a} and U_{b} do not commute")
    if rank(s.U[0]) < n:
        problems.append("U_0 is not invertible")
    return problems


def build_tower(s: NormalDerivationSet, name: str = "") -> MetricLieAlgebra:
    return tower_levels(s, name)[-1]


def tower_levels(s: NormalDerivationSet, name: str = "") -> list[MetricLieAlgebra]:
    """g_0, g_1, ..., g_m with g_{k+1} = d_{A_k}(g_k, R)."""
    problems = validate_normal_set(s)
    if problems:
        raise InvalidExtension(problems)
    g = MetricLieAlgebra.abelian(Matrix.identity(s.n), [f"X{i + 1}" for i in range(s.n)])
    levels = [g]
    for k in range(s.m):
        g = extend_by_line(g, s.derivation(k), h_label=f"H{k + 1}")
        levels.append(g)
    if name:
        levels[-1] = MetricLieAlgebra(g.labels, g.ad_basis, g.metric, name)
    return levels


def structure_from_matrices(mats: Sequence[Matrix], labels: Sequence[str] | None = None,
                            form: Matrix | None = None) -> MetricLieAlgebra:
    """The Lie algebra spanned by linearly independent matrices, in that basis."""
    from .linalg import solve

    k = len(mats)
    if OperatorSpan(mats[0].nrows, mats).dim != k:
        raise InvalidExtension("matrices are linearly dependent")
    flat_keys = sorted({key for M in mats for key in M.flatten()})
    known = set(flat_keys)
    cols = [[M.flatten().get(key, ZERO) for key in flat_keys] for M in mats]
    basis = Matrix.from_columns(cols)
    brackets = {}
    for i in range(k):
        for j in range(i + 1, k):
            C = mats[i] @ mats[j] - mats[j] @ mats[i]
            flat = C.flatten()
            if any(key not in known for key in flat):
                raise InvalidExtension("matrices do not span a Lie algebra")
            coords = solve(basis, [flat.get(key, ZERO) for key in flat_keys])
            if coords is None:
                raise InvalidExtension("matrices do not span a Lie algebra")
            brackets[(i, j)] = coords
    labels = labels or [f"H{i + 1}" for i in range(k)]
    form = form if form is not None else Matrix.zeros(k)
    return MetricLieAlgebra.from_brackets(labels, brackets, form, allow_degenerate=True)


def abelian_euclidean(n: int, labels: Sequence[str] | None = None) -> MetricLieAlgebra:
    return MetricLieAlgebra.abelian(Matrix.identity(n), labels)


def inner_derivation_check(a: MetricLieAlgebra, A: Matrix) -> bool:
    """True iff A = ad(x) for some x."""
    from .linalg import solve

    keys = sorted({key for M in a.ad_basis for key in M.flatten()} | set(A.flatten()))
    cols = [[M.flatten().get(key, ZERO) for key in keys] for M in a.ad_basis]
    if not keys:
        return True
    return solve(Matrix.from_columns(cols), [A.flatten().get(key, ZERO) for key in keys]) is not None


__all__ = [
    "ExtensionData",
    "InvalidExtension",
    "NormalDerivationSet",
    "validate_extension",
    "double_extend",
    "extend_by_line",
    "line_algebra",
    "line_extension_data",
    "validate_normal_set",
    "build_tower",
    "tower_levels",
    "structure_from_matrices",
    "abelian_euclidean",
    "inner_derivation_check",
]
