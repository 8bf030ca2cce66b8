"""GSp4 and the adjoint representation on sp4.

The symplectic form is the antidiagonal J with J[0,3] = J[1,2] = 1 and
J[2,1] = J[3,0] = -1. The adjoint basis of sp4 is fixed: the two Cartan
generators, the positive root vectors by height, then their negatives.
"""

from __future__ import annotations

import dataclasses
import enum
import functools
from typing import TYPE_CHECKING

import sympy

from . import linalg
from .errors import Gsp4ObsError, NotSymplecticError
from .ff import field_make

if TYPE_CHECKING:
    from collections.abc import Callable

    from .ff import ExtField, FqElem
    from .linalg import FMatrix

# (i, j) -> sign of the partner entry (3-j, 3-i) in an sp4 root vector (0-based).
_EPS = (1, 1, -1, -1)

# Positions read off to get sp4 coordinates, in basis order.
SP4_POSITIONS = ((0, 0), (1, 1), (0, 1), (1, 2), (0, 2), (0, 3), (1, 0), (2, 1), (2, 0), (3, 0))
SP4_LABELS = ("H1", "H2", "E12-E34", "E23", "E13+E24", "E14", "E21-E43", "E32", "E31+E42", "E41")


class Parity(enum.Enum):
    """Class of the image of complex conjugation."""

    Even = "even"
    OddI = "odd1"
    OddII = "odd2"

    def __str__(self) -> str:
        return self.value


def form_matrix(field: ExtField) -> FMatrix:
    """The standard symplectic form J over ``field``."""
    rows = [[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]]
    return linalg.from_rows(field, rows)


def _unit(field: ExtField, n: int, entries: dict[tuple[int, int], int]) -> FMatrix:
    rows = [[entries.get((i, j), 0) for j in range(n)] for i in range(n)]
    return linalg.from_rows(field, rows)


def _sp4_element(field: ExtField, i: int, j: int) -> FMatrix:
    """The sp4 basis vector with leading entry (i, j)."""
    pi, pj = 3 - j, 3 - i
    if (pi, pj) == (i, j):
        return _unit(field, 4, {(i, j): 1})
    return _unit(field, 4, {(i, j): 1, (pi, pj): -_EPS[i] * _EPS[j]})


@dataclasses.dataclass(frozen=True)
class AdjointBasis:
    """An ordered basis of a Lie algebra of n x n matrices with a coordinate reader."""

    name: str
    n: int
    elements: tuple[FMatrix, ...]
    labels: tuple[str, ...]
    reader: Callable[[FMatrix], tuple[FqElem, ...]]
    needs_similitude: bool = True

    @property
    def dim(self) -> int:
        return len(self.elements)

    def coordinates(self, x: FMatrix) -> tuple[FqElem, ...]:
        return self.reader(x)


@functools.lru_cache(maxsize=128)
def sp4_basis(field: ExtField) -> AdjointBasis:
    """The 10-dimensional sp4 = {X : X^T J + J X = 0}."""
    elements = tuple(_sp4_element(field, i, j) for i, j in SP4_POSITIONS)

    def read(x: FMatrix) -> tuple[FqElem, ...]:
        return tuple(x.entries[i][j] for i, j in SP4_POSITIONS)

    return AdjointBasis("sp4", 4, elements, SP4_LABELS, read)


@functools.lru_cache(maxsize=128)
def gsp4_basis(field: ExtField) -> AdjointBasis:
    """sp4 plus the scalar line (11-dimensional)."""
    if field.p == 2:
        raise Gsp4ObsError("the gsp4 coordinates need odd characteristic")
    base = sp4_basis(field)
    half = field.element(2).inverse()

    def read(x: FMatrix) -> tuple[FqElem, ...]:
        lam = (x.entries[0][0] + x.entries[3][3]) * half
        coords = list(base.reader(x))
        coords[0] = coords[0] - lam
        coords[1] = coords[1] - lam
        return (*coords, lam)

    return AdjointBasis("gsp4", 4, (*base.elements, linalg.identity(field, 4)), (*base.labels, "I"), read)


@functools.lru_cache(maxsize=128)
def gl_basis(field: ExtField, n: int) -> AdjointBasis:
    """All matrix units of gl_n, row-major; the adjoint on it is End(V)."""
    positions = [(i, j) for i in range(n) for j in range(n)]
    elements = tuple(_unit(field, n, {pos: 1}) for pos in positions)

    def read(x: FMatrix) -> tuple[FqElem, ...]:
        return tuple(x.entries[i][j] for i, j in positions)

    labels = tuple(f"E{i + 1}{j + 1}" for i, j in positions)
    return AdjointBasis(f"gl{n}", n, elements, labels, read, needs_similitude=False)


@functools.lru_cache(maxsize=128)
def sl2_basis(field: ExtField) -> AdjointBasis:
    """Trace-zero 2 x 2 matrices: H, E, F."""
    elements = (_unit(field, 2, {(0, 0): 1, (1, 1): -1}), _unit(field, 2, {(0, 1): 1}), _unit(field, 2, {(1, 0): 1}))

    def read(x: FMatrix) -> tuple[FqElem, ...]:
        return (x.entries[0][0], x.entries[0][1], x.entries[1][0])

    return AdjointBasis("sl2", 2, elements, ("H", "E", "F"), read, needs_similitude=False)


def is_sp4(x: FMatrix) -> bool:
    j = form_matrix(x.field)
    return (x.T @ j + j @ x).is_zero()


def similitude(g: FMatrix) -> FqElem | None:
    """The scalar c with g^T J g = c J, or None when g is not a symplectic similitude."""
    if g.shape != (4, 4):
        raise Gsp4ObsError("similitude is defined for 4x4 matrices")
    j = form_matrix(g.field)
    m = g.T @ j @ g
    c = m.entries[0][3]
    if c.is_zero() or (m - j * c).is_zero() is False:
        return None
    return c


def adjoint_action(g: FMatrix, basis: AdjointBasis) -> FMatrix:
    """Matrix of X -> g X g^-1 in ``basis``; column k holds the coordinates of the image of basis[k]."""
    if g.shape != (basis.n, basis.n):
        raise Gsp4ObsError(f"expected a {basis.n}x{basis.n} matrix for the {basis.name} basis")
    if basis.needs_similitude and similitude(g) is None:
        raise NotSymplecticError("adjoint action on sp4 needs a symplectic similitude")
    g_inv = linalg.inverse(g)
    columns = [basis.coordinates(g @ x @ g_inv) for x in basis.elements]
    return linalg.transpose(linalg.from_rows(g.field, columns))


def parity_representative(cls: Parity, field: ExtField) -> FMatrix:
    """Diagonal representative of each class of complex conjugation."""
    diag = {Parity.Even: (-1, -1, -1, -1), Parity.OddI: (1, -1, -1, 1), Parity.OddII: (1, -1, 1, -1)}[cls]
    return linalg.diagonal(field, [field.element(v) for v in diag])


def parity_class(c: FMatrix) -> Parity:
    """Classify an involution of GSp4 by eigenvalue multiplicities and similitude."""
    field = c.field
    if field.p == 2:
        raise Gsp4ObsError("parity classes need odd characteristic")
    if not (c @ c).is_identity():
        raise Gsp4ObsError("complex conjugation must be an involution")
    mult = similitude(c)
    if mult is None:
        raise NotSymplecticError("involution is not a symplectic similitude")
    plus = len(linalg.kernel_basis(c - linalg.identity(field, 4)))
    if plus in (0, 4):
        return Parity.Even
    if plus == 2:
        return Parity.OddI if mult.is_one() else Parity.OddII
    raise Gsp4ObsError(f"involution with eigenvalue multiplicities ({plus},{4 - plus}) cannot lie in GSp4")


def fixed_dimension(g: FMatrix, basis: AdjointBasis | None = None) -> int:
    """Dimension of {X : g X g^-1 = X} inside the adjoint basis span."""
    basis = sp4_basis(g.field) if basis is None else basis
    ad = adjoint_action(g, basis)
    return len(linalg.kernel_basis(ad - linalg.identity(g.field, basis.dim)))


def euler_defect(cls: Parity, field: ExtField | None = None) -> int:
    """d1 - d2 = 1 + 10 - dim of the fixed space of complex conjugation on sp4."""
    field = field_make(7, 1) if field is None else field
    return 1 + 10 - fixed_dimension(parity_representative(cls, field))


def parity_from_similitude(mult: int, scalar: bool = False) -> Parity:
    """Parity of a complex conjugation from its similitude (+1 or -1) and whether its image is scalar."""
    if scalar:
        return Parity.Even
    if mult not in (1, -1):
        raise Gsp4ObsError(f"complex conjugation has similitude +1 or -1, got {mult}")
    return Parity.OddI if mult == 1 else Parity.OddII


@functools.cache
def sp4_rational_basis() -> tuple[sympy.Matrix, ...]:
    """The sp4 basis over Q, in the same order as :func:`sp4_basis`."""
    out = []
    for i, j in SP4_POSITIONS:
        m = sympy.zeros(4, 4)
        m[i, j] = 1
        pi, pj = 3 - j, 3 - i
        if (pi, pj) != (i, j):
            m[pi, pj] = -_EPS[i] * _EPS[j]
        out.append(m)
    return tuple(out)


def sp4_rational_coordinates(x: sympy.Matrix) -> list[sympy.Expr]:
    return [x[i, j] for i, j in SP4_POSITIONS]


def rational_ad_matrix(n: sympy.Matrix) -> sympy.Matrix:
    """The matrix of X -> [N, X] on sp4 over Q; column k is the image of basis element k."""
    columns = [sp4_rational_coordinates(n * b - b * n) for b in sp4_rational_basis()]
    return sympy.Matrix(columns).T
