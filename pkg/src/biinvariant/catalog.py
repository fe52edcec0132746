"""Named metric Lie algebras with their default parameters."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable

from .extensions import (
    ExtensionData,
    InvalidExtension,
    NormalDerivationSet,
    abelian_euclidean,
    double_extend,
    line_algebra,
    line_extension_data,
    structure_from_matrices,
    tower_levels,
)
from .field import Scalar, as_scalar
from .lie import MetricLieAlgebra, killing_form, validate
from .linalg import Matrix, block_diag


class CatalogError(ValueError):
    """Unknown family name or out-of-range parameters."""


@dataclass(frozen=True, eq=False)
class CatalogEntry:
    name: str
    params: dict
    algebra: MetricLieAlgebra
    extension: ExtensionData | None = None
    tower: NormalDerivationSet | None = None
    notes: tuple[str, ...] = field(default=())


# -- parameter helpers -------------------------------------------------------


def _scalar(params: dict, key: str, default) -> Scalar:
    value = params.get(key, default)
    try:
        return as_scalar(value)
    except (TypeError, ValueError) as exc:
        raise CatalogError(f"parameter {key!r}: {exc}") from None


def _scalars(params: dict, key: str, default) -> list[Scalar]:
    value = params.get(key, default)
    if isinstance(value, (str, int)):
        value = [value]
    try:
        return [as_scalar(v) for v in value]
    except (TypeError, ValueError) as exc:
        raise CatalogError(f"parameter {key!r}: {exc}") from None


def _matrix(params: dict, key: str, default=None) -> Matrix:
    value = params.get(key, default)
    if value is None:
        raise CatalogError(f"missing parameter {key!r}")
    if isinstance(value, Matrix):
        return value
    try:
        rows = [[as_scalar(x) for x in row] for row in value]
    except (TypeError, ValueError) as exc:
        raise CatalogError(f"parameter {key!r}: {exc}") from None
    if len({len(r) for r in rows}) > 1:
        raise CatalogError(f"parameter {key!r}: ragged matrix")
    return Matrix.from_rows(rows)


def _positive(x: Scalar, key: str) -> None:
    if not x.is_real() or x.sign() <= 0:
        raise CatalogError(f"parameter {key!r} must be positive")


def rotation_blocks(lams) -> Matrix:
    """A_lambda: block diagonal with blocks [[0, -l], [l, 0]]."""
    blocks = [Matrix.from_rows([[0, -l], [l, 0]]) for l in lams]
    return block_diag(*blocks)


def signature_metric(p: int, q: int) -> Matrix:
    return Matrix.diag([-1] * p + [1] * q)


# -- fixed matrices ----------------------------------------------------------

L2 = Matrix.from_rows([[0, 1], [1, 0]])
L3 = Matrix.from_rows([[0, 1, 0], [1, 0, 1], [0, -1, 0]])
# companion metrics for L2 and L3 (the matrices fix the metric only up to this choice)
L2_METRIC = Matrix.diag([-1, 1])
L3_METRIC = Matrix.diag([-1, 1, 1])

_NEUTRAL = Matrix.from_rows([[0, 0, 0, 1], [0, 0, -1, 0], [0, -1, 0, 0], [1, 0, 0, 0]])
_SPLIT = Matrix.diag([-1, -1, 1, 1])
_PAIRS = Matrix.from_rows([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])


def n_matrix(k: int, t=1, sign: int = 1) -> tuple[Matrix, Matrix]:
    """(N_k, metric) for the split-signature family in dimension 4."""
    t = as_scalar(t)
    if k == 1:
        return Matrix.from_rows([[0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 1], [0, 0, 0, 0]]), _NEUTRAL
    if k == 2:
        return Matrix.from_rows([[1, -t, 0, 0], [t, 1, 0, 0], [0, 0, -1, -t], [0, 0, t, -1]]), _NEUTRAL
    if k == 3:
        s = sign
        return Matrix.from_rows([[0, -1, s, 0], [1, 0, 0, s], [0, 0, 0, -1], [0, 0, 1, 0]]), _NEUTRAL
    if k == 4:
        return Matrix.from_rows([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -t], [0, 0, t, 0]]), _SPLIT
    if k == 5:
        return Matrix.from_rows([[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, -1, 1], [0, 0, 0, -1]]), _NEUTRAL
    if k == 6:
        return Matrix.diag([1, -1, t, -t]), _PAIRS
    raise CatalogError(f"no N_{k}")


# -- simple algebras ---------------------------------------------------------


def su2_structure() -> MetricLieAlgebra:
    """[e_i, e_j] = eps_ijk e_k with zero form."""
    return MetricLieAlgebra.from_brackets(
        ("e1", "e2", "e3"),
        {(0, 1): {2: 1}, (1, 2): {0: 1}, (2, 0): {1: 1}},
        Matrix.zeros(3),
        allow_degenerate=True,
    )


def sl2_structure() -> MetricLieAlgebra:
    """Basis (H, E, F): [H,E] = 2E, [H,F] = -2F, [E,F] = H."""
    return MetricLieAlgebra.from_brackets(
        ("H", "E", "F"),
        {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}},
        Matrix.zeros(3),
        allow_degenerate=True,
    )


def _with_form(a: MetricLieAlgebra, form: Matrix, name: str, degenerate: bool) -> MetricLieAlgebra:
    return MetricLieAlgebra(a.labels, a.ad_basis, form, name, allow_degenerate=degenerate)


def quaternion_su2() -> list[Matrix]:
    """Left multiplication by i/2, j/2, k/2 on R^4 = H in the basis (1, i, j, k)."""
    Li = Matrix.from_rows([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]])
    Lj = Matrix.from_rows([[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]])
    Lk = Matrix.from_rows([[0, 0, 0, -1], [0, 0, -1, 0], [0, 1, 0, 0], [1, 0, 0, 0]])
    half = Scalar(1, 0) / 2
    return [Li * half, Lj * half, Lk * half]


# -- builders ----------------------------------------------------------------


def _line_entry(name, params, g: MetricLieAlgebra, A: Matrix, notes=()) -> CatalogEntry:
    e = line_extension_data(g, A)
    return CatalogEntry(name, params, double_extend(e, name=name), e, notes=tuple(notes))


def _osc(params):
    lams = _scalars(params, "lambda", ["1"])
    if not lams:
        raise CatalogError("osc needs at least one lambda")
    for l in lams:
        _positive(l, "lambda")
    g = abelian_euclidean(2 * len(lams))
    return _line_entry("osc", {"lambda": lams}, g, rotation_blocks(lams))


def _apq(params):
    p = int(params.get("p", 0))
    q = int(params.get("q", 2))
    if p < 0 or q < 0 or p + q == 0:
        raise CatalogError("A(p,q) needs p, q >= 0 and p + q > 0")
    A = _matrix(params, "A", [[0, -1], [1, 0]] if (p, q) == (0, 2) else None)
    G = signature_metric(p, q)
    g = MetricLieAlgebra.abelian(G)
    return _line_entry("A", {"p": p, "q": q, "A": A}, g, A)


def _l2(params):
    g = MetricLieAlgebra.abelian(L2_METRIC)
    return _line_entry("L2", {}, g, L2)


def _l3(params):
    g = MetricLieAlgebra.abelian(L3_METRIC)
    return _line_entry("L3", {}, g, L3)


def _l2l(params):
    lams = _scalars(params, "lambda", ["1"])
    for l in lams:
        _positive(l, "lambda")
    A = block_diag(L2, rotation_blocks(lams))
    G = block_diag(L2_METRIC, Matrix.identity(2 * len(lams)))
    return _line_entry("L2λ", {"lambda": lams}, MetricLieAlgebra.abelian(G), A)


def _l3l(params):
    lams = _scalars(params, "lambda", ["1"])
    for l in lams:
        _positive(l, "lambda")
    A = block_diag(L3, rotation_blocks(lams))
    G = block_diag(L3_METRIC, Matrix.identity(2 * len(lams)))
    return _line_entry("L3λ", {"lambda": lams}, MetricLieAlgebra.abelian(G), A)


def _nk(k):
    def build(params):
        t = _scalar(params, "t", "1")
        sign = params.get("sign", "+")
        if sign not in ("+", "-", 1, -1):
            raise CatalogError("sign must be '+' or '-'")
        sign = 1 if sign in ("+", 1) else -1
        if k in (2, 4) and (not t.is_real() or t.sign() <= 0):
            raise CatalogError("t must be positive")
        if k == 6 and (not t.is_real() or (t - 1).sign() < 0):
            raise CatalogError("t must be at least 1")
        A, G = n_matrix(k, t, sign)
        used = {}
        if k in (2, 4, 6):
            used["t"] = t
        if k == 3:
            used["sign"] = "+" if sign > 0 else "-"
        return _line_entry(f"N{k}", used, MetricLieAlgebra.abelian(G), A)

    return build


def _cotangent(kind):
    def build(params):
        c = _scalar(params, "c", "1")
        if not c.is_real():
            raise CatalogError("c must be real")
        base = su2_structure() if kind == "su2" else sl2_structure()
        B = killing_form(base)
        h = _with_form(base, B * c, kind, degenerate=True)
        g = MetricLieAlgebra.abelian(Matrix.zeros(0), [])
        e = ExtensionData(g, h, tuple(Matrix.zeros(0) for _ in range(3)))
        name = "T*su2" if kind == "su2" else "T*sl2R"
        return CatalogEntry(name, {"c": c}, double_extend(e, name=name), e)

    return build


def so13_structure() -> MetricLieAlgebra:
    """so(1,3) spanned by the boosts K1..K3 and rotations J1..J3 of R^{1,3}."""
    def gen(i, j, boost):
        entries = {(i, j): 1, (j, i): 1 if boost else -1}
        return Matrix.from_entries(4, 4, entries)

    mats = [gen(0, k, True) for k in (1, 2, 3)] + [gen(2, 3, False), gen(3, 1, False), gen(1, 2, False)]
    return structure_from_matrices(mats, ["K1", "K2", "K3", "J1", "J2", "J3"])


def _simple(kind):
    def build(params):
        c = _scalar(params, "c", "1")
        _positive(c, "c")
        sign = params.get("sign", "-" if kind in ("su2", "so13") else "+")
        if sign not in ("+", "-"):
            raise CatalogError("sign must be '+' or '-'")
        base = {"su2": su2_structure, "sl2": sl2_structure, "so13": so13_structure}[kind]()
        B = killing_form(base)
        form = B * (c if sign == "+" else -c)
        name = f"simple_{kind}"
        used = {"c": c} if kind != "sl2" else {"c": c, "sign": sign}
        return CatalogEntry(name, used, _with_form(base, form, name, degenerate=False))

    return build


def _d_abelian_simple(params):
    """D(g, h): abelian g with metric G, h a simple subalgebra of so(g), pi = inclusion."""
    if "h" in params:
        mats = [_matrix({"m": M}, "m") for M in params["h"]]
        G = _matrix(params, "metric", None) if "metric" in params else Matrix.identity(mats[0].nrows)
    else:
        mats = quaternion_su2()
        G = Matrix.identity(4)
    c = _scalar(params, "c", "0")
    h0 = structure_from_matrices(mats)
    B = killing_form(h0)
    h = _with_form(h0, B * c, "h", degenerate=True)
    g = MetricLieAlgebra.abelian(G)
    e = ExtensionData(g, h, tuple(mats))
    used = {"c": c, "h": mats, "metric": G}
    return CatalogEntry("D_abelian_simple", used, double_extend(e, name="D_abelian_simple"), e)


def _default_pair(params):
    A0 = _matrix(params, "A0", [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]])
    U1 = _matrix(params, "U1", [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]])
    return A0, U1


def _osc_a0u1(params):
    A0, U1 = _default_pair(params)
    s = NormalDerivationSet(A0.nrows, (A0, U1))
    levels = tower_levels(s, name="OscA0U1")
    e = line_extension_data(levels[1], s.derivation(1), h_label="H2")
    return CatalogEntry("OscA0U1", {"A0": A0, "U1": U1}, levels[-1], e, tower=s)


def _d_a0u1(params):
    """d_A(R + osc(A0), R) with A(y) = -alpha1, A(H1) = y, A = U1 on g_0."""
    A0, U1 = _default_pair(params)
    n0 = A0.nrows
    if not (A0 @ U1 - U1 @ A0).is_zero():
        raise CatalogError("A0 and U1 must commute")
    from .linalg import rank as _rank
    from .linalg import OperatorSpan

    if _rank(A0) < n0:
        raise CatalogError("A0 must be bijective")
    if OperatorSpan(n0, [A0, U1]).dim != 2:
        raise CatalogError("A0 and U1 must be linearly independent")
    osc = double_extend(line_extension_data(abelian_euclidean(n0), A0, h_label="H1"))
    # g = R y + osc, basis (y, alpha1, X.., H1)
    N = n0 + 3
    ad = [Matrix.zeros(N)]
    for M in osc.ad_basis:
        ad.append(block_diag(Matrix.zeros(1), M))
    G = block_diag(Matrix.identity(1), osc.metric)
    g = MetricLieAlgebra(("y",) + osc.labels, tuple(ad), G)
    entries = {(1, 0): -1, (0, N - 1): 1}
    for i, j, v in U1.nonzero():
        entries[(2 + i, 2 + j)] = v
    A = Matrix.from_entries(N, N, entries)
    e = line_extension_data(g, A, h_label="H")
    return CatalogEntry("D_A0U1", {"A0": A0, "U1": U1}, double_extend(e, name="D_A0U1"), e)


def _tower(params):
    if "U" not in params:
        raise CatalogError("tower needs parameter 'U' (list of matrices)")
    U = [_matrix({"m": M}, "m") for M in params["U"]]
    Z = [_matrix({"m": M}, "m") for M in params.get("Z", [])]
    s = NormalDerivationSet(U[0].nrows, U, Z)
    levels = tower_levels(s, name="tower")
    e = line_extension_data(levels[-2], s.derivation(s.m - 1), h_label=f"H{s.m}")
    return CatalogEntry("tower", {"U": U, "Z": list(s.Z)}, levels[-1], e, tower=s)


_BUILDERS: dict[str, Callable[[dict], CatalogEntry]] = {
    "osc": _osc,
    "A": _apq,
    "L2": _l2,
    "L3": _l3,
    "L2λ": _l2l,
    "L3λ": _l3l,
    "N1": _nk(1),
    "N2": _nk(2),
    "N3": _nk(3),
    "N4": _nk(4),
    "N5": _nk(5),
    "N6": _nk(6),
    "T*su2": _cotangent("su2"),
    "T*sl2R": _cotangent("sl2"),
    "D_abelian_simple": _d_abelian_simple,
    "OscA0U1": _osc_a0u1,
    "D_A0U1": _d_a0u1,
    "simple_su2": _simple("su2"),
    "simple_sl2": _simple("sl2"),
    "simple_so13": _simple("so13"),
    "tower": _tower,
}

ALIASES = {"L2lambda": "L2λ", "L3lambda": "L3λ", "Tsu2": "T*su2", "Tsl2R": "T*sl2R"}

# every name that builds without extra parameters
DEFAULT_NAMES = [k for k in _BUILDERS if k != "tower"]


def names() -> list[str]:
    return list(_BUILDERS)


def catalog(name: str, params: dict[str, Any] | None = None) -> CatalogEntry:
    params = dict(params or {})
    key = ALIASES.get(name, name)
    if key not in _BUILDERS:
        raise CatalogError(f"unknown catalog name {name!r}")
    try:
        entry = _BUILDERS[key](params)
    except InvalidExtension as exc:
        raise CatalogError(f"{name}: {exc}") from None
    problems = validate(entry.algebra)
    if problems:
        raise CatalogError(f"{name}: constructed algebra is invalid: {problems}")
    return entry
