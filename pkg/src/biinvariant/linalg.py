"""Dense-interface, sparse-storage exact linear algebra over Q(i, sqrt2).

Matrices keep only their nonzero entries (one dict per row).  Clifford
generators are monomial and holonomy operators are mostly zero, so this
is what keeps spinor computations tractable without floating point.
"""
from __future__ import annotations

from typing import Iterable, Sequence

from .field import ONE, ZERO, Scalar, as_scalar

Vector = tuple  # tuple of Scalars


class Matrix:
    """Immutable matrix with entries in Q(i, sqrt2)."""

    __slots__ = ("nrows", "ncols", "_rows", "_hash")

    def __init__(self, nrows: int, ncols: int, rows: Sequence[dict] | None = None):
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            rows = [{} for _ in range(nrows)]
        if len(rows) != nrows:
            raise ValueError("row count mismatch")
        self._rows = tuple(rows)
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable]) -> Matrix:
        rows = [list(r) for r in rows]
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        out = []
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
            d = {}
            for j, x in enumerate(r):
                x = as_scalar(x)
                if x:
                    d[j] = x
            out.append(d)
        return cls(nrows, ncols, out)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence]) -> Matrix:
        return cls.from_rows(zip(*cols)) if cols else cls(0, 0)

    @classmethod
    def zeros(cls, nrows: int, ncols: int | None = None) -> Matrix:
        return cls(nrows, nrows if ncols is None else ncols)

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls(n, n, [{i: ONE} for i in range(n)])

    @classmethod
    def diag(cls, entries: Iterable) -> Matrix:
        entries = [as_scalar(x) for x in entries]
        return cls(len(entries), len(entries), [{i: x} if x else {} for i, x in enumerate(entries)])

    @classmethod
    def from_entries(cls, nrows: int, ncols: int, entries: dict) -> Matrix:
        rows = [{} for _ in range(nrows)]
        for (i, j), x in entries.items():
            x = as_scalar(x)
            if x:
                rows[i][j] = x
        return cls(nrows, ncols, rows)

    # -- access -------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij) -> Scalar:
        i, j = ij
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError(ij)
        return self._rows[i].get(j, ZERO)

    def row(self, i: int) -> dict:
        return self._rows[i]

    def row_vector(self, i: int) -> Vector:
        r = self._rows[i]
        return tuple(r.get(j, ZERO) for j in range(self.ncols))

    def column(self, j: int) -> Vector:
        return tuple(r.get(j, ZERO) for r in self._rows)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.ncols)]

    def to_lists(self) -> list[list[Scalar]]:
        return [list(self.row_vector(i)) for i in range(self.nrows)]

    def nonzero(self):
        for i, r in enumerate(self._rows):
            for j, x in r.items():
                yield i, j, x

    def nnz(self) -> int:
        return sum(len(r) for r in self._rows)

    def is_zero(self) -> bool:
        return all(not r for r in self._rows)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    # -- algebra ------------------------------------------------------------

    def _check_same(self, other: Matrix):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: Matrix) -> Matrix:
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_same(other)
        rows = []
        for r, s in zip(self._rows, other._rows):
            d = dict(r)
            for j, x in s.items():
                y = d.get(j)
                if y is None:
                    d[j] = x
                else:
                    y = y + x
                    if y:
                        d[j] = y
                    else:
                        del d[j]
            rows.append(d)
        return Matrix(self.nrows, self.ncols, rows)

    def __neg__(self) -> Matrix:
        return Matrix(self.nrows, self.ncols, [{j: -x for j, x in r.items()} for r in self._rows])

    def __sub__(self, other: Matrix) -> Matrix:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> Matrix:
        c = as_scalar(c)
        if not c:
            return Matrix(self.nrows, self.ncols)
        return Matrix(self.nrows, self.ncols, [{j: c * x for j, x in r.items()} for r in self._rows])

    def __mul__(self, c) -> Matrix:
        if isinstance(c, Matrix):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
            orows = other._rows
            rows = []
            for r in self._rows:
                acc: dict = {}
                for k, a in r.items():
                    for j, b in orows[k].items():
                        y = acc.get(j)
                        acc[j] = a * b if y is None else y + a * b
                rows.append({j: x for j, x in acc.items() if x})
            return Matrix(self.nrows, other.ncols, rows)
        return self.apply(other)

    def apply(self, v: Sequence) -> Vector:
        """Matrix-vector product for a dense coordinate vector."""
        if len(v) != self.ncols:
            raise ValueError("vector length mismatch")
        out = []
        for r in self._rows:
            acc = ZERO
            for j, a in r.items():
                x = v[j]
                if x:
                    acc = acc + a * x
            out.append(acc)
        return tuple(out)

    @property
    def T(self) -> Matrix:
        rows = [{} for _ in range(self.ncols)]
        for i, r in enumerate(self._rows):
            for j, x in r.items():
                rows[j][i] = x
        return Matrix(self.ncols, self.nrows, rows)

    def conj(self) -> Matrix:
        return Matrix(self.nrows, self.ncols, [{j: x.conj() for j, x in r.items()} for r in self._rows])

    def trace(self) -> Scalar:
        if not self.is_square():
            raise ValueError("trace of non-square matrix")
        acc = ZERO
        for i, r in enumerate(self._rows):
            x = r.get(i)
            if x is not None:
                acc = acc + x
        return acc

    def kron(self, other: Matrix) -> Matrix:
        rows = []
        for r in self._rows:
            for s in other._rows:
                d = {}
                for j, a in r.items():
                    off = j * other.ncols
                    for k, b in s.items():
                        d[off + k] = a * b
                rows.append(d)
        return Matrix(self.nrows * other.nrows, self.ncols * other.ncols, rows)

    def block(self, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
        cols = list(cols)
        rows = list(rows)
        out = [{k: self[i, j] for k, j in enumerate(cols) if self[i, j]} for i in rows]
        return Matrix(len(rows), len(cols), out)

    def is_symmetric(self) -> bool:
        return self.is_square() and self == self.T

    def is_real(self) -> bool:
        return all(x.is_real() for _, _, x in self.nonzero())

    def flatten(self) -> dict:
        """Sparse coordinate dict of the row-major flattening."""
        n = self.ncols
        return {i * n + j: x for i, r in enumerate(self._rows) for j, x in r.items()}

    @classmethod
    def unflatten(cls, flat: dict, nrows: int, ncols: int) -> Matrix:
        rows = [{} for _ in range(nrows)]
        for k, x in flat.items():
            if x:
                rows[k // ncols][k % ncols] = x
        return cls(nrows, ncols, rows)

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.shape, tuple(tuple(sorted(r.items())) for r in self._rows)))
        return self._hash

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(x) for x in self.row_vector(i)) for i in range(self.nrows))
        return f"Matrix({self.nrows}x{self.ncols}: [{body}])"


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return a @ b - b @ a


def block_diag(*blocks: Matrix) -> Matrix:
    n = sum(b.nrows for b in blocks)
    m = sum(b.ncols for b in blocks)
    rows = []
    off = 0
    for b in blocks:
        for r in b._rows:
            rows.append({off + j: x for j, x in r.items()})
        off += b.ncols
    return Matrix(n, m, rows)


def vector(*xs) -> Vector:
    return tuple(as_scalar(x) for x in xs)


def unit(n: int, i: int) -> Vector:
    return tuple(ONE if k == i else ZERO for k in range(n))


def vec_add(u: Sequence, v: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vec_scale(c, v: Sequence) -> Vector:
    c = as_scalar(c)
    return tuple(c * x for x in v)


def vec_is_zero(v: Sequence) -> bool:
    return not any(v)


def bilinear(G: Matrix, u: Sequence, v: Sequence) -> Scalar:
    """u^T G v (no conjugation)."""
    acc = ZERO
    for i, r in enumerate(G._rows):
        ui = u[i]
        if not ui:
            continue
        for j, g in r.items():
            vj = v[j]
            if vj:
                acc = acc + ui * g * vj
    return acc


# ---------------------------------------------------------------------------
# Incremental reduced row echelon form


class RowReducer:
    """Incrementally maintained reduced row echelon basis of sparse vectors.

    Pivots are the first nonzero coordinate in index order; pivot entries
    are normalised to one and cleared from every other basis row.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self._rows: dict[int, dict] = {}

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self._rows)

    def reduce(self, vec: dict) -> dict:
        """Residual of ``vec`` after elimination against the basis."""
        v = {k: x for k, x in vec.items() if x}
        for p in sorted(k for k in v if k in self._rows):
            c = v.get(p)
            if not c:
                continue
            for k, x in self._rows[p].items():
                y = v.get(k)
                y = -(c * x) if y is None else y - c * x
                if y:
                    v[k] = y
                else:
                    v.pop(k, None)
        return v

    def add(self, vec: dict) -> bool:
        """Insert ``vec``; returns True if it enlarged the span."""
        if self.rank == self.ncols:
            return False
        v = self.reduce(vec)
        if not v:
            return False
        p = min(v)
        inv = v[p].inverse()
        v = {k: x * inv for k, x in v.items()}
        for q, row in self._rows.items():
            c = row.get(p)
            if c is None:
                continue
            for k, x in v.items():
                y = row.get(k)
                y = -(c * x) if y is None else y - c * x
                if y:
                    row[k] = y
                else:
                    row.pop(k, None)
        self._rows[p] = v
        return True

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def rows(self) -> list[dict]:
        return [dict(self._rows[p]) for p in sorted(self._rows)]

    def dense_rows(self) -> list[Vector]:
        return [tuple(r.get(k, ZERO) for k in range(self.ncols)) for r in self.rows()]

    def null_space(self) -> list[Vector]:
        """Basis of vectors orthogonal (bilinearly) to every stored row."""
        pivots = set(self._rows)
        basis = []
        for f in range(self.ncols):
            if f in pivots:
                continue
            v = [ZERO] * self.ncols
            v[f] = ONE
            for p, row in self._rows.items():
                x = row.get(f)
                if x:
                    v[p] = -x
            basis.append(tuple(v))
        return basis

    def copy(self) -> RowReducer:
        out = RowReducer(self.ncols)
        out._rows = {p: dict(r) for p, r in self._rows.items()}
        return out


def _dense_to_dict(v: Sequence) -> dict:
    return {k: as_scalar(x) for k, x in enumerate(v) if x}


def _reducer_for_rows(matrices: Iterable[Matrix], ncols: int) -> RowReducer:
    red = RowReducer(ncols)
    for M in matrices:
        if M.ncols != ncols:
            raise ValueError("column count mismatch")
        for r in M._rows:
            if r and red.add(r) and red.rank == ncols:
                return red
    return red


def rank(M: Matrix) -> int:
    return _reducer_for_rows([M], M.ncols).rank


def kernel_basis(M: Matrix) -> list[Vector]:
    """Basis of {v : Mv = 0}; length equals cols - rank."""
    return _reducer_for_rows([M], M.ncols).null_space()


def joint_kernel_dim(matrices: Sequence[Matrix], ncols: int) -> int:
    """dim of the common kernel of all matrices (stacked elimination)."""
    return ncols - _reducer_for_rows(matrices, ncols).rank


def joint_kernel_basis(matrices: Sequence[Matrix], ncols: int) -> list[Vector]:
    return _reducer_for_rows(matrices, ncols).null_space()


def row_space(vectors: Iterable[Sequence], n: int) -> list[Vector]:
    """Canonical (reduced echelon) basis of the span of dense vectors."""
    red = RowReducer(n)
    for v in vectors:
        red.add(_dense_to_dict(v))
    return red.dense_rows()


def in_span(basis: Sequence[Sequence], v: Sequence) -> bool:
    red = RowReducer(len(v))
    for b in basis:
        red.add(_dense_to_dict(b))
    return red.contains(_dense_to_dict(v))


def inverse(M: Matrix) -> Matrix:
    if not M.is_square():
        raise ValueError("inverse of non-square matrix")
    n = M.nrows
    red = RowReducer(2 * n)
    for i, r in enumerate(M._rows):
        row = dict(r)
        row[n + i] = ONE
        red.add(row)
    if red.pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    rows = red.rows()
    return Matrix(n, n, [{k - n: x for k, x in r.items() if k >= n} for r in rows[:n]])


def solve(M: Matrix, b: Sequence) -> Vector | None:
    """One solution x of Mx = b, or None when inconsistent."""
    n = M.ncols
    red = RowReducer(n + 1)
    for r, bi in zip(M._rows, b):
        row = dict(r)
        bi = as_scalar(bi)
        if bi:
            row[n] = bi
        red.add(row)
    if n in red.pivots:
        return None
    x = [ZERO] * n
    for p, row in zip(red.pivots, red.rows()):
        x[p] = row.get(n, ZERO)
    return tuple(x)


# ---------------------------------------------------------------------------
# Symmetric forms


def congruence_diagonalize(G: Matrix) -> tuple[Matrix, list[Scalar]]:
    """Return (P, d) with P^T G P = diag(d), P invertible.

    Symmetric Gaussian elimination; a vanishing diagonal is repaired by
    replacing e_i with e_i + e_j for a partner j with G_ij != 0.
    """
    if not G.is_symmetric():
        raise ValueError("form is not symmetric")
    n = G.nrows
    A = [list(G.row_vector(i)) for i in range(n)]
    P = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]  # columns = new basis

    def add_col_row(dst, src, c):
        # e_dst <- e_dst + c e_src, applied as congruence
        for k in range(n):
            P[k][dst] = P[k][dst] + c * P[k][src]
        for k in range(n):
            A[dst][k] = A[dst][k] + c * A[src][k]
        for k in range(n):
            A[k][dst] = A[k][dst] + c * A[k][src]

    def swap(p, q):
        for row in P:
            row[p], row[q] = row[q], row[p]
        A[p], A[q] = A[q], A[p]
        for row in A:
            row[p], row[q] = row[q], row[p]

    diag = []
    for i in range(n):
        if not A[i][i]:
            partner = next((j for j in range(i + 1, n) if A[i][j]), None)
            if partner is None:
                diag.append(ZERO)
                continue
            if A[partner][partner]:
                swap(i, partner)
            else:
                add_col_row(i, partner, ONE)
        piv = A[i][i]
        inv = piv.inverse()
        for j in range(i + 1, n):
            if A[i][j]:
                add_col_row(j, i, -(A[i][j] * inv))
        diag.append(piv)
    return Matrix.from_rows(P), diag


def form_signature(G: Matrix) -> tuple[int, int, int]:
    """(negatives, positives, zeros) of a real symmetric form."""
    if not G.is_real():
        raise ValueError("signature requires entries in the real subfield Q(sqrt2)")
    _, d = congruence_diagonalize(G)
    neg = sum(1 for x in d if x and x.sign() < 0)
    pos = sum(1 for x in d if x and x.sign() > 0)
    return neg, pos, len(d) - neg - pos


class UnsupportedMetric(ValueError):
    """The metric has no orthonormal frame with coordinates in Q(sqrt2)."""


def orthonormal_frame(G: Matrix) -> tuple[Matrix, list[int]]:
    """Columns of F form a G-orthonormal basis, negative vectors first.

    Returns (F, kappa) with F^T G F = diag(kappa), kappa_j in {-1, +1}.
    """
    if not G.is_real():
        raise UnsupportedMetric("metric has non-real entries")
    P, d = congruence_diagonalize(G)
    cols = P.columns()
    scaled = []
    for col, x in zip(cols, d):
        if not x:
            raise UnsupportedMetric("metric is degenerate")
        s = x.sign()
        root = (x if s > 0 else -x).sqrt()
        if root is None:
            raise UnsupportedMetric(f"no square root of {x if s > 0 else -x} in Q(sqrt2)")
        inv = root.inverse()
        scaled.append((s, tuple(inv * c for c in col)))
    scaled.sort(key=lambda t: t[0])  # stable: negatives first
    F = Matrix.from_columns([c for _, c in scaled])
    return F, [s for s, _ in scaled]


# ---------------------------------------------------------------------------
# Spans of operators


class OperatorSpan:
    """Finite-dimensional span of square matrices of a fixed size."""

    def __init__(self, dim: int, generators: Iterable[Matrix] = ()):
        self.ambient = dim
        self._red = RowReducer(dim * dim)
        self.generators: list[Matrix] = []
        for M in generators:
            self._add(M)

    def _add(self, M: Matrix) -> bool:
        if M.shape != (self.ambient, self.ambient):
            raise ValueError(f"expected {self.ambient}x{self.ambient} operator, got {M.shape}")
        self.generators.append(M)
        return self._red.add(M.flatten())

    @property
    def dim(self) -> int:
        return self._red.rank

    def basis(self) -> list[Matrix]:
        return [Matrix.unflatten(r, self.ambient, self.ambient) for r in self._red.rows()]

    def __contains__(self, M: Matrix) -> bool:
        return self._red.contains(M.flatten())

    def contains_span(self, other: OperatorSpan) -> bool:
        return all(M in self for M in other.basis())

    def same_span(self, other: OperatorSpan) -> bool:
        return self.dim == other.dim and self.contains_span(other)

    def is_abelian(self) -> bool:
        b = self.basis()
        return all(commutator(b[i], b[j]).is_zero() for i in range(len(b)) for j in range(i + 1, len(b)))

    def is_closed(self) -> bool:
        b = self.basis()
        return all(commutator(b[i], b[j]) in self for i in range(len(b)) for j in range(i + 1, len(b)))

    def __repr__(self) -> str:
        return f"OperatorSpan(ambient={self.ambient}, dim={self.dim})"


def bracket_closure(S: OperatorSpan) -> OperatorSpan:
    """Smallest commutator-closed span containing S."""
    out = OperatorSpan(S.ambient, S.basis())
    frontier = out.basis()
    while frontier:
        current = out.basis()
        new = []
        for A in frontier:
            for B in current:
                C = commutator(A, B)
                if not C.is_zero() and out._add(C):
                    new.append(C)
        frontier = new
    return out
