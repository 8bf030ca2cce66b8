"""Exact arithmetic in prime fields F_p and their extensions F_{p^d}.

Elements are dense coefficient tuples (constant term first) reduced modulo
the lexicographically smallest monic irreducible polynomial of degree d.
Fields and elements are immutable and may be shared between workers.
"""

from __future__ import annotations

import dataclasses
import functools
import itertools
import math
from typing import TYPE_CHECKING

import sympy

from .errors import Gsp4ObsError, RealizabilityError

if TYPE_CHECKING:
    from collections.abc import Iterator

type Coeffs = tuple[int, ...]

# Exhaustive square roots below this field size, Tonelli-Shanks above.
EXHAUSTIVE_SQRT_LIMIT = 10_000


def _poly_is_irreducible(coeffs: Coeffs, p: int) -> bool:
    """Irreducibility of a monic polynomial (constant term first) over F_p."""
    d = len(coeffs) - 1
    if d == 1:
        return True
    if d <= 3:
        # No root in F_p is enough for degrees 2 and 3.
        return all(sum(c * pow(x, i, p) for i, c in enumerate(coeffs)) % p for x in range(p))
    x = sympy.Symbol("x")
    poly = sympy.Poly(list(reversed(coeffs)), x, modulus=p)
    return bool(poly.is_irreducible)


@dataclasses.dataclass(frozen=True)
class ExtField:
    """The finite field F_{p^d} = F_p[x]/(modulus)."""

    p: int
    d: int
    modulus: Coeffs

    def __post_init__(self) -> None:
        if len(self.modulus) != self.d + 1 or self.modulus[-1] != 1:
            raise Gsp4ObsError(f"modulus must be monic of degree {self.d}")

    def __repr__(self) -> str:
        return f"ExtField(p={self.p}, d={self.d})"

    @property
    def order(self) -> int:
        return self.p**self.d

    @property
    def zero(self) -> FqElem:
        return FqElem(self, (0,) * self.d)

    @property
    def one(self) -> FqElem:
        return self.element(1)

    def element(self, value: int | Coeffs) -> FqElem:
        """Build an element from an integer of F_p or from a coefficient tuple."""
        if isinstance(value, int):
            return FqElem(self, (value % self.p,) + (0,) * (self.d - 1))
        if len(value) > self.d:
            raise Gsp4ObsError(f"expected at most {self.d} coefficients")
        padded = tuple(c % self.p for c in value) + (0,) * (self.d - len(value))
        return FqElem(self, padded)

    def from_index(self, index: int) -> FqElem:
        """The element whose base-p digits (constant term least significant) spell ``index``."""
        digits = []
        for _ in range(self.d):
            index, digit = divmod(index, self.p)
            digits.append(digit)
        return FqElem(self, tuple(digits))

    def elements(self) -> Iterator[FqElem]:
        """All field elements in the fixed enumeration order."""
        for index in range(self.order):
            yield self.from_index(index)

    # Raw coefficient arithmetic, shared by FqElem operators.

    def _mul(self, a: Coeffs, b: Coeffs) -> Coeffs:
        p, d = self.p, self.d
        if d == 1:
            return ((a[0] * b[0]) % p,)
        prod = [0] * (2 * d - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        # Reduce with x^d = -(m_0 + ... + m_{d-1} x^{d-1}).
        low = self.modulus[:-1]
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k] % p
            if c:
                for i, mi in enumerate(low):
                    prod[k - d + i] -= c * mi
        return tuple(c % p for c in prod[:d])

    @functools.cached_property
    def _order_factors(self) -> tuple[int, ...]:
        return tuple(sorted(sympy.factorint(self.order - 1)))

    @functools.cached_property
    def primitive_element(self) -> FqElem:
        """The smallest generator of the multiplicative group in enumeration order."""
        target = self.order - 1
        for index in range(1, self.order):
            g = self.from_index(index)
            if mult_order(g) == target:
                return g
        raise RealizabilityError(f"no primitive element found in {self}")  # pragma: no cover


@dataclasses.dataclass(frozen=True, slots=True)
class FqElem:
    """An element of an ExtField."""

    field: ExtField
    coeffs: Coeffs

    def __repr__(self) -> str:
        if self.field.d == 1:
            return f"{self.coeffs[0]}"
        return f"FqElem({list(self.coeffs)} mod {self.field.p})"

    @property
    def index(self) -> int:
        """Position in the field's enumeration order."""
        return sum(c * self.field.p**i for i, c in enumerate(self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_one(self) -> bool:
        return self.coeffs[0] == 1 and not any(self.coeffs[1:])

    def _coerce(self, other: FqElem | int) -> Coeffs:
        if isinstance(other, int):
            return self.field.element(other).coeffs
        if other.field is not self.field and other.field != self.field:
            raise Gsp4ObsError("elements belong to different fields")
        return other.coeffs

    def __add__(self, other: FqElem | int) -> FqElem:
        p = self.field.p
        b = self._coerce(other)
        return FqElem(self.field, tuple((x + y) % p for x, y in zip(self.coeffs, b, strict=True)))

    __radd__ = __add__

    def __sub__(self, other: FqElem | int) -> FqElem:
        p = self.field.p
        b = self._coerce(other)
        return FqElem(self.field, tuple((x - y) % p for x, y in zip(self.coeffs, b, strict=True)))

    def __rsub__(self, other: FqElem | int) -> FqElem:
        return (-self) + other

    def __neg__(self) -> FqElem:
        p = self.field.p
        return FqElem(self.field, tuple((-x) % p for x in self.coeffs))

    def __mul__(self, other: FqElem | int) -> FqElem:
        return FqElem(self.field, self.field._mul(self.coeffs, self._coerce(other)))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> FqElem:
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = self.field.one.coeffs
        base = self.coeffs
        while exponent:
            if exponent & 1:
                result = self.field._mul(result, base)
            base = self.field._mul(base, base)
            exponent >>= 1
        return FqElem(self.field, result)

    def inverse(self) -> FqElem:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self.field.d == 1:
            return FqElem(self.field, (pow(self.coeffs[0], -1, self.field.p),))
        return self ** (self.field.order - 2)

    def __truediv__(self, other: FqElem | int) -> FqElem:
        denominator = other if isinstance(other, FqElem) else self.field.element(other)
        return self * denominator.inverse()

    def __rtruediv__(self, other: int) -> FqElem:
        return self.field.element(other) * self.inverse()


@functools.lru_cache(maxsize=512)
def field_make(p: int, d: int) -> ExtField:
    """F_{p^d} with the lexicographically smallest monic irreducible modulus.

    Candidates are scanned as coefficient tuples (constant term first) in
    increasing lexicographic order; the first irreducible one wins, so the
    result is a pure function of (p, d).
    """
    if not sympy.isprime(p):
        raise Gsp4ObsError(f"p = {p} is not prime")
    if d < 1:
        raise Gsp4ObsError(f"extension degree must be >= 1, got {d}")
    if d == 1:
        return ExtField(p, 1, (0, 1))
    for low in itertools.product(range(p), repeat=d):
        if low[0] == 0:
            continue
        coeffs = (*low, 1)
        if _poly_is_irreducible(coeffs, p):
            return ExtField(p, d, coeffs)
    raise RealizabilityError(f"no irreducible polynomial of degree {d} over F_{p}")  # pragma: no cover


def mult_order(x: FqElem) -> int:
    """Smallest n >= 1 with x^n = 1."""
    if x.is_zero():
        raise Gsp4ObsError("zero has no multiplicative order")
    n = x.field.order - 1
    for q in x.field._order_factors:
        while n % q == 0 and (x ** (n // q)).is_one():
            n //= q
    return n


def root_of_unity(field: ExtField, n: int) -> FqElem:
    """An element of exact order n, derived from the field's primitive element."""
    q1 = field.order - 1
    if n < 1 or q1 % n:
        raise RealizabilityError(f"{n} does not divide {q1}; no root of unity of order {n} in F_{field.order}")
    if n == 1:
        return field.one
    return field.primitive_element ** (q1 // n)


def degree_for_roots(p: int, n: int) -> int:
    """Smallest d with n | p^d - 1 (n must be prime to p)."""
    if n % p == 0:
        raise RealizabilityError(f"roots of unity of order {n} do not exist in characteristic {p}")
    if n == 1:
        return 1
    return int(sympy.n_order(p, n))


def prime_to_p_part(n: int, p: int) -> int:
    while n % p == 0:
        n //= p
    return n


def _tonelli_shanks(a: FqElem) -> FqElem | None:
    field = a.field
    q1 = field.order - 1
    if not (a ** (q1 // 2)).is_one():
        return None
    s, t = 0, q1
    while t % 2 == 0:
        s, t = s + 1, t // 2
    z = next(x for x in field.elements() if not x.is_zero() and not (x ** (q1 // 2)).is_one())
    m, c, r, b = s, z**t, a ** ((t + 1) // 2), a**t
    while not b.is_one():
        i, b2 = 0, b
        while not b2.is_one():
            b2, i = b2 * b2, i + 1
        g = c ** (2 ** (m - i - 1))
        m, c, r, b = i, g * g, r * g, b * g * g
    return r


def sqrt_candidates(field: ExtField, a: FqElem) -> tuple[FqElem, ...]:
    """Both square roots of a in the field, ordered by enumeration index; empty if a is a non-residue."""
    if a.is_zero():
        return (field.zero,)
    if field.p == 2:
        # Squaring is a bijection in characteristic 2.
        return (a ** (field.order // 2),)
    if field.order <= EXHAUSTIVE_SQRT_LIMIT:
        roots = [x for x in field.elements() if x * x == a]
    else:
        r = _tonelli_shanks(a)
        roots = [] if r is None else [r, -r]
    return tuple(sorted(roots, key=lambda x: x.index))


def is_prime(n: int) -> bool:
    return bool(sympy.isprime(n))


def lcm(*values: int) -> int:
    return math.lcm(*values) if values else 1
