"""Exact dense linear algebra over ExtField.

Row reduction uses first-nonzero pivoting; every routine is deterministic
and returns new immutable matrices.
"""

from __future__ import annotations

import dataclasses
from typing import TYPE_CHECKING

from .errors import Gsp4ObsError, RealizabilityError

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence

    from .ff import ExtField, FqElem

type Row = tuple[FqElem, ...]
type Vector = tuple[FqElem, ...]

# The exponential is only needed up to N^3 (N^4 = 0).
MAX_NILPOTENCY = 4


@dataclasses.dataclass(frozen=True, slots=True)
class FMatrix:
    """A rows x cols matrix with entries in a single ExtField."""

    field: ExtField
    rows: int
    cols: int
    entries: tuple[Row, ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows or any(len(row) != self.cols for row in self.entries):
            raise Gsp4ObsError(f"entry count does not match shape {self.rows}x{self.cols}")

    def __repr__(self) -> str:
        body = "; ".join(" ".join(repr(x) for x in row) for row in self.entries)
        return f"FMatrix[{self.rows}x{self.cols}]({body})"

    def __getitem__(self, index: tuple[int, int]) -> FqElem:
        i, j = index
        return self.entries[i][j]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __add__(self, other: FMatrix) -> FMatrix:
        _check_same_shape(self, other)
        pairs = zip(self.entries, other.entries, strict=True)
        return _make(self.field, [[a + b for a, b in zip(r, s, strict=True)] for r, s in pairs])

    def __sub__(self, other: FMatrix) -> FMatrix:
        _check_same_shape(self, other)
        pairs = zip(self.entries, other.entries, strict=True)
        return _make(self.field, [[a - b for a, b in zip(r, s, strict=True)] for r, s in pairs])

    def __neg__(self) -> FMatrix:
        return _make(self.field, [[-a for a in row] for row in self.entries])

    def __mul__(self, scalar: FqElem | int) -> FMatrix:
        return _make(self.field, [[a * scalar for a in row] for row in self.entries])

    __rmul__ = __mul__

    def __matmul__(self, other: FMatrix) -> FMatrix:
        return mat_mul(self, other)

    def __pow__(self, exponent: int) -> FMatrix:
        return power(self, exponent)

    @property
    def T(self) -> FMatrix:
        return transpose(self)

    def is_zero(self) -> bool:
        return all(x.is_zero() for row in self.entries for x in row)

    def is_identity(self) -> bool:
        return self.rows == self.cols and all(
            (x.is_one() if i == j else x.is_zero()) for i, row in enumerate(self.entries) for j, x in enumerate(row)
        )

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.entries)


def _make(field: ExtField, rows: Sequence[Sequence[FqElem]]) -> FMatrix:
    entries = tuple(tuple(row) for row in rows)
    return FMatrix(field, len(entries), len(entries[0]) if entries else 0, entries)


def _check_same_shape(a: FMatrix, b: FMatrix) -> None:
    if a.shape != b.shape:
        raise Gsp4ObsError(f"shape mismatch: {a.shape} vs {b.shape}")


def from_rows(field: ExtField, rows: Iterable[Iterable[FqElem | int]]) -> FMatrix:
    """Build a matrix from nested rows of field elements or integers."""
    return _make(field, [[x if not isinstance(x, int) else field.element(x) for x in row] for row in rows])


def zeros(field: ExtField, rows: int, cols: int | None = None) -> FMatrix:
    cols = rows if cols is None else cols
    z = field.zero
    return FMatrix(field, rows, cols, tuple((z,) * cols for _ in range(rows)))


def identity(field: ExtField, n: int) -> FMatrix:
    return diagonal(field, [field.one] * n)


def diagonal(field: ExtField, values: Sequence[FqElem]) -> FMatrix:
    n = len(values)
    z = field.zero
    return FMatrix(field, n, n, tuple(tuple(values[i] if i == j else z for j in range(n)) for i in range(n)))


def transpose(m: FMatrix) -> FMatrix:
    return FMatrix(m.field, m.cols, m.rows, tuple(zip(*m.entries, strict=True)) if m.rows else ())


def mat_mul(a: FMatrix, b: FMatrix) -> FMatrix:
    if a.cols != b.rows:
        raise Gsp4ObsError(f"cannot multiply {a.shape} by {b.shape}")
    field = a.field
    zero = field.zero
    columns = list(zip(*b.entries, strict=True))
    out = []
    for row in a.entries:
        out_row = []
        for col in columns:
            acc = zero
            for x, y in zip(row, col, strict=True):
                if not x.is_zero() and not y.is_zero():
                    acc = acc + x * y
            out_row.append(acc)
        out.append(out_row)
    return _make(field, out)


def apply(m: FMatrix, v: Vector) -> Vector:
    """Matrix times column vector."""
    zero = m.field.zero
    out = []
    for row in m.entries:
        acc = zero
        for x, y in zip(row, v, strict=True):
            acc = acc + x * y
        out.append(acc)
    return tuple(out)


def trace(m: FMatrix) -> FqElem:
    acc = m.field.zero
    for i in range(min(m.rows, m.cols)):
        acc = acc + m.entries[i][i]
    return acc


def rref(m: FMatrix) -> tuple[FMatrix, tuple[int, ...]]:
    """Reduced row echelon form and pivot columns (first nonzero pivot in each column)."""
    rows = [list(row) for row in m.entries]
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        pivot = next((i for i in range(r, m.rows) if not rows[i][c].is_zero()), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(m.rows):
            if i != r and not rows[i][c].is_zero():
                factor = rows[i][c]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[r], strict=True)]
        pivots.append(c)
        r += 1
        if r == m.rows:
            break
    return _make(m.field, rows) if rows else m, tuple(pivots)


def rank(m: FMatrix) -> int:
    return len(rref(m)[1])


def kernel_basis(m: FMatrix) -> tuple[Vector, ...]:
    """Basis of the right null space, one vector per free column of the reduced echelon form."""
    field = m.field
    if m.rows == 0:
        return tuple(tuple(field.one if i == j else field.zero for i in range(m.cols)) for j in range(m.cols))
    reduced, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [field.zero] * m.cols
        v[f] = field.one
        for i, c in enumerate(pivots):
            v[c] = -reduced.entries[i][f]
        basis.append(tuple(v))
    return tuple(basis)


def vstack(blocks: Sequence[FMatrix]) -> FMatrix:
    if len({b.cols for b in blocks}) != 1:
        raise Gsp4ObsError("stacked blocks need equal column counts")
    return _make(blocks[0].field, [row for b in blocks for row in b.entries])


def block_diag(blocks: Sequence[FMatrix]) -> FMatrix:
    field = blocks[0].field
    n = sum(b.rows for b in blocks)
    out = [[field.zero] * n for _ in range(n)]
    offset = 0
    for b in blocks:
        if b.field != field:
            raise Gsp4ObsError("blocks over different fields")
        for i, row in enumerate(b.entries):
            out[offset + i][offset : offset + b.cols] = row
        offset += b.rows
    return _make(field, out)


def kron(a: FMatrix, b: FMatrix) -> FMatrix:
    return _make(
        a.field,
        [[x * y for x in a.entries[i] for y in b.entries[k]] for i in range(a.rows) for k in range(b.rows)],
    )


def inverse(m: FMatrix) -> FMatrix:
    if m.rows != m.cols:
        raise Gsp4ObsError("only square matrices are invertible")
    n = m.rows
    eye = identity(m.field, n).entries
    augmented = _make(m.field, [list(row) + list(e) for row, e in zip(m.entries, eye, strict=True)])
    reduced, pivots = rref(augmented)
    if pivots[:n] != tuple(range(n)) or len(pivots) < n:
        raise Gsp4ObsError("matrix is singular")
    return _make(m.field, [row[n:] for row in reduced.entries])


def power(m: FMatrix, exponent: int) -> FMatrix:
    if exponent < 0:
        return power(inverse(m), -exponent)
    result = identity(m.field, m.rows)
    base = m
    while exponent:
        if exponent & 1:
            result = result @ base
        base = base @ base
        exponent >>= 1
    return result


def nilpotency_degree(n: FMatrix) -> int:
    """Smallest k with n^k = 0, or raise if it exceeds the matrix size."""
    current = identity(n.field, n.rows)
    for k in range(1, n.rows + 1):
        current = current @ n
        if current.is_zero():
            return k
    raise Gsp4ObsError("matrix is not nilpotent")


def mat_exp_nilpotent(n: FMatrix, scalar: FqElem | int) -> FMatrix:
    """I + sN + s^2 N^2/2 + s^3 N^3/6, truncated at the nilpotency degree of N."""
    field = n.field
    k = nilpotency_degree(n)
    if k > MAX_NILPOTENCY:
        raise RealizabilityError(f"exp is only available for nilpotency degree <= {MAX_NILPOTENCY}, got {k}")
    if field.p < k:
        raise RealizabilityError(f"characteristic {field.p} too small for nilpotency degree {k}")
    s = scalar if not isinstance(scalar, int) else field.element(scalar)
    result = identity(field, n.rows)
    term = identity(field, n.rows)
    for j in range(1, k):
        term = (term @ n) * (s / j)
        result = result + term
    return result


def conjugacy_test_order2(g: FMatrix, h: FMatrix) -> bool:
    """Whether two involutions are GL-conjugate, decided by their +1 eigenspace dimensions."""
    if g.field.p == 2:
        raise Gsp4ObsError("involution test needs odd characteristic")
    for m in (g, h):
        if m.shape != (4, 4) or not (m @ m).is_identity():
            raise Gsp4ObsError("inputs must be 4x4 involutions")
    eye = identity(g.field, 4)
    return len(kernel_basis(g - eye)) == len(kernel_basis(h - eye))
