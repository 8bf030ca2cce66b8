"""Finite models of the tame quotient of G_ell and representations of it.

Elements of the model are pairs (a, b) standing for u^b F^a, with
F u F^-1 = u^ell. Characters are kept symbolically (:class:`SymChar`) and
only turned into field elements through one fixed embedding per field: a
fraction x in Q/Z with prime-to-p denominator n' maps to g^(x (q-1)) where
g is the field's primitive element, and the p-part of x is dropped.
"""

from __future__ import annotations

import dataclasses
import enum
from fractions import Fraction
import functools
import math
from typing import TYPE_CHECKING

import sympy

from . import linalg
from .errors import ConstraintViolation, Gsp4ObsError, RealizabilityError
from .ff import degree_for_roots, field_make, prime_to_p_part, sqrt_candidates
from .symplectic import adjoint_action, sp4_basis

if TYPE_CHECKING:
    from collections.abc import Iterable, Iterator, Sequence

    from .ff import ExtField, FqElem
    from .linalg import FMatrix
    from .symplectic import AdjointBasis

type GroupElt = tuple[int, int]

FROB: GroupElt = (1, 0)
INERTIA: GroupElt = (0, 1)


class ExtensionKind(enum.Enum):
    """The local field a character lives on, as a subgroup of the tame model.

    ``Base`` is G_ell itself. The quadratic kinds are the index-2 subgroups
    <F^2, u>, <F, u^2> and <uF, u^2>; ``Biquadratic`` is <F^2, u^2> and
    ``Quartic`` is the unramified subgroup <F^4, u> of index 4.
    """

    Base = "base"
    Unramified = "unramified"
    Ramified = "ramified"
    RamifiedTwisted = "ramified-twisted"
    Biquadratic = "biquadratic"
    Quartic = "unramified-quartic"

    def __str__(self) -> str:
        return self.value

    @property
    def residue_degree(self) -> int:
        if self is ExtensionKind.Quartic:
            return 4
        return 2 if self in (ExtensionKind.Unramified, ExtensionKind.Biquadratic) else 1

    @property
    def ramification(self) -> int:
        return 2 if self in (ExtensionKind.Ramified, ExtensionKind.RamifiedTwisted, ExtensionKind.Biquadratic) else 1

    @property
    def index(self) -> int:
        return self.residue_degree * self.ramification


QUADRATIC_KINDS = (ExtensionKind.Unramified, ExtensionKind.Ramified, ExtensionKind.RamifiedTwisted)


@dataclasses.dataclass(frozen=True)
class SymChar:
    """A tame character of a local field, stored as exponents.

    The value on the field's Frobenius is exp(2 pi i frob) * q^cyclo with
    q = ell^f the residue field size, and the value on its tame inertia
    generator is exp(2 pi i inertia). ``frob`` and ``inertia`` are reduced
    mod 1; ``cyclo`` is a half-integer.
    """

    ell: int
    frob: Fraction = Fraction(0)
    cyclo: Fraction = Fraction(0)
    inertia: Fraction = Fraction(0)
    kind: ExtensionKind = ExtensionKind.Base

    def __post_init__(self) -> None:
        if not sympy.isprime(self.ell):
            raise Gsp4ObsError(f"ell = {self.ell} is not prime")
        object.__setattr__(self, "frob", Fraction(self.frob) % 1)
        object.__setattr__(self, "inertia", Fraction(self.inertia) % 1)
        object.__setattr__(self, "cyclo", Fraction(self.cyclo))
        if (2 * self.cyclo).denominator != 1:
            raise Gsp4ObsError(f"cyclotomic exponent must be a half-integer, got {self.cyclo}")
        q1 = self.ell**self.kind.residue_degree - 1
        if q1 % self.inertia.denominator:
            raise Gsp4ObsError(
                f"inertia order {self.inertia.denominator} must divide {q1} "
                f"for a tame character of the {self.kind} field"
            )

    @classmethod
    def make(
        cls,
        ell: int,
        frob_order: int = 1,
        frob_exp: int = 0,
        cyclo_exp: Fraction | int = 0,
        inertia_order: int = 1,
        inertia_exp: int = 0,
        kind: ExtensionKind = ExtensionKind.Base,
    ) -> SymChar:
        if frob_order < 1 or inertia_order < 1:
            raise Gsp4ObsError("root orders must be >= 1")
        return cls(ell, Fraction(frob_exp, frob_order), Fraction(cyclo_exp), Fraction(inertia_exp, inertia_order), kind)

    @classmethod
    def trivial(cls, ell: int, kind: ExtensionKind = ExtensionKind.Base) -> SymChar:
        return cls(ell, kind=kind)

    @classmethod
    def nu(cls, ell: int, power: Fraction | int = 1, kind: ExtensionKind = ExtensionKind.Base) -> SymChar:
        """The cyclotomic character to a half-integral power."""
        return cls(ell, cyclo=Fraction(power), kind=kind)

    def __str__(self) -> str:
        parts = []
        if self.frob:
            parts.append(f"F:{self.frob}")
        if self.inertia:
            parts.append(f"u:{self.inertia}")
        if self.cyclo:
            parts.append(f"ν^{self.cyclo}")
        body = " ".join(parts) if parts else "1"
        return body if self.kind is ExtensionKind.Base else f"{body} [{self.kind}]"

    @property
    def frob_order(self) -> int:
        return self.frob.denominator

    @property
    def frob_exp(self) -> int:
        return self.frob.numerator

    @property
    def inertia_order(self) -> int:
        return self.inertia.denominator

    @property
    def inertia_exp(self) -> int:
        return self.inertia.numerator

    @property
    def degree(self) -> int:
        return self.kind.residue_degree

    def is_trivial(self) -> bool:
        return not (self.frob or self.cyclo or self.inertia)

    def is_unramified(self) -> bool:
        return not self.inertia

    def needs_sqrt(self) -> bool:
        """Whether evaluating at Frobenius needs a square root of ell."""
        return (2 * self.cyclo * self.degree) % 2 == 1

    def _check(self, other: SymChar) -> None:
        if other.ell != self.ell or other.kind is not self.kind:
            raise Gsp4ObsError(f"cannot combine characters {self} and {other}")

    def __mul__(self, other: SymChar) -> SymChar:
        self._check(other)
        return SymChar(
            self.ell, self.frob + other.frob, self.cyclo + other.cyclo, self.inertia + other.inertia, self.kind
        )

    def __truediv__(self, other: SymChar) -> SymChar:
        return self * other.inverse()

    def __pow__(self, k: int) -> SymChar:
        return SymChar(self.ell, self.frob * k, self.cyclo * k, self.inertia * k, self.kind)

    def inverse(self) -> SymChar:
        return self**-1

    def restrict(self, kind: ExtensionKind) -> SymChar:
        """Restriction to the subgroup ``kind``: from G_ell to any kind, or from a quadratic kind to <F^2, u^2>."""
        if kind is self.kind:
            return self
        if self.kind in QUADRATIC_KINDS and kind is ExtensionKind.Biquadratic:
            return self._restrict_to_biquadratic()
        if self.kind is not ExtensionKind.Base:
            raise Gsp4ObsError(f"cannot restrict a character of the {self.kind} subgroup to {kind}")
        frob, inertia = self.frob, self.inertia
        match kind:
            case ExtensionKind.Base:
                return self
            case ExtensionKind.Unramified:
                frob = 2 * frob
            case ExtensionKind.Ramified:
                inertia = 2 * inertia
            case ExtensionKind.RamifiedTwisted:
                frob, inertia = frob + inertia, 2 * inertia
            case ExtensionKind.Biquadratic:
                frob, inertia = 2 * frob, 2 * inertia
            case ExtensionKind.Quartic:
                frob = 4 * frob
        return SymChar(self.ell, frob, self.cyclo, inertia, kind)

    def _restrict_to_biquadratic(self) -> SymChar:
        frob, inertia = self.frob, self.inertia
        match self.kind:
            case ExtensionKind.Unramified:
                inertia = 2 * inertia
            case ExtensionKind.Ramified:
                frob = 2 * frob
            case _:
                # F^2 = u^-(1 + ell) (uF)^2 and the inertia generator is already u^2.
                frob = 2 * frob - inertia * Fraction(1 + self.ell, 2)
        return SymChar(self.ell, frob, self.cyclo, inertia, ExtensionKind.Biquadratic)

    def galois_conjugate(self, k: int) -> SymChar:
        """The character composed with the automorphism zeta -> zeta^k of the roots of unity."""
        return dataclasses.replace(self, frob=self.frob * k, inertia=self.inertia * k)

    def conjugate_by_frob(self) -> SymChar:
        """h -> chi(F^-1 h F) for characters of subgroups normalised by F."""
        if self.kind not in (ExtensionKind.Unramified, ExtensionKind.Biquadratic, ExtensionKind.Quartic):
            raise Gsp4ObsError(f"F is not a coset representative for the {self.kind} subgroup")
        # F^-1 u F = u^(ell^-1), and ell^-1 = ell^(f-1) on the inertia of a degree f field.
        return dataclasses.replace(self, inertia=self.inertia * self.ell ** (self.degree - 1))

    def conjugate_by_inertia(self) -> SymChar:
        """h -> chi(u^-1 h u) for subgroups not containing u."""
        ell = self.ell
        match self.kind:
            case ExtensionKind.Ramified | ExtensionKind.RamifiedTwisted:
                shift = self.inertia * ((ell - 1) // 2)
            case ExtensionKind.Biquadratic:
                shift = self.inertia * ((ell * ell - 1) // 2)
            case _:
                raise Gsp4ObsError(f"u is not a coset representative for the {self.kind} subgroup")
        return dataclasses.replace(self, frob=self.frob + shift)

    def conjugates(self) -> tuple[SymChar, ...]:
        """The character twisted by each coset representative of its subgroup."""
        match self.kind:
            case ExtensionKind.Base:
                return (self,)
            case ExtensionKind.Unramified:
                return (self, self.conjugate_by_frob())
            case ExtensionKind.Ramified | ExtensionKind.RamifiedTwisted:
                return (self, self.conjugate_by_inertia())
            case ExtensionKind.Biquadratic:
                by_f = self.conjugate_by_frob()
                return (self, by_f, self.conjugate_by_inertia(), by_f.conjugate_by_inertia())
            case ExtensionKind.Quartic:
                out = [self]
                for _ in range(3):
                    out.append(out[-1].conjugate_by_frob())
                return tuple(out)


def transfer_determinant(theta: SymChar) -> SymChar:
    """The determinant of the induction of a character of a quadratic subgroup, as a character of G_ell."""
    ell = theta.ell
    half = Fraction(1, 2)
    cyclo = 2 * theta.cyclo
    match theta.kind:
        case ExtensionKind.Unramified:
            frob, inertia = theta.frob + half, theta.inertia * (1 + ell)
        case ExtensionKind.Ramified:
            frob, inertia = 2 * theta.frob + theta.inertia * ((ell - 1) // 2), theta.inertia + half
        case ExtensionKind.RamifiedTwisted:
            frob, inertia = half + 2 * theta.frob + theta.inertia * ((ell - 3) // 2), theta.inertia + half
        case _:
            raise Gsp4ObsError(f"no quadratic transfer for the {theta.kind} subgroup")
    return SymChar(ell, frob, cyclo, inertia)


def quadratic_character(kind: ExtensionKind, ell: int) -> SymChar:
    """The character of G_ell cutting out the quadratic subgroup ``kind``."""
    half = Fraction(1, 2)
    match kind:
        case ExtensionKind.Unramified:
            return SymChar(ell, frob=half)
        case ExtensionKind.Ramified:
            return SymChar(ell, inertia=half)
        case ExtensionKind.RamifiedTwisted:
            return SymChar(ell, frob=half, inertia=half)
    raise Gsp4ObsError(f"{kind} is not a quadratic subgroup")


# Evaluation through the fixed embedding.


def root_value(field: ExtField, x: Fraction) -> FqElem:
    """The image of exp(2 pi i x) under the field's fixed embedding."""
    x = Fraction(x) % 1
    n = x.denominator
    n_prime = prime_to_p_part(n, field.p)
    if n_prime == 1:
        return field.one
    p_part = n // n_prime
    y = (x.numerator * pow(p_part, -1, n_prime)) % n_prime
    q1 = field.order - 1
    if q1 % n_prime:
        raise RealizabilityError(f"F_{field.order} has no roots of unity of order {n_prime}")
    return field.primitive_element ** (y * (q1 // n_prime))


@functools.lru_cache(maxsize=512)
def sqrt_ell(field: ExtField, ell: int, choice: int = 0) -> FqElem:
    """The chosen square root of ell; choice 0 is the root of smaller enumeration index."""
    roots = sqrt_candidates(field, field.element(ell))
    if not roots:
        raise RealizabilityError(f"{ell} has no square root in F_{field.order}")
    if choice not in (0, 1):
        raise Gsp4ObsError(f"square root choice must be 0 or 1, got {choice}")
    return roots[choice % len(roots)]


def _cyclo_value(field: ExtField, ell: int, twice_exp: int, sqrt_choice: int) -> FqElem:
    if twice_exp % 2 == 0:
        return field.element(ell) ** (twice_exp // 2)
    return sqrt_ell(field, ell, sqrt_choice) ** twice_exp


def frob_value(chi: SymChar, field: ExtField, sqrt_choice: int = 0) -> FqElem:
    twice = int(2 * chi.cyclo * chi.degree)
    return root_value(field, chi.frob) * _cyclo_value(field, chi.ell, twice, sqrt_choice)


def inertia_value(chi: SymChar, field: ExtField) -> FqElem:
    return root_value(field, chi.inertia)


def char_eval(chi: SymChar, field: ExtField, elt: GroupElt, sqrt_choice: int = 0) -> FqElem:
    """chi(u^b F^a) for elt = (a, b), in the generators of chi's own subgroup."""
    a, b = elt
    return inertia_value(chi, field) ** b * frob_value(chi, field, sqrt_choice) ** a


def field_for(p: int, chars: Iterable[SymChar], extra_orders: Iterable[int] = ()) -> ExtField:
    """The smallest F_{p^d} realising every character value and the needed square roots of ell."""
    chars = list(chars)
    orders = [prime_to_p_part(n, p) for c in chars for n in (c.frob_order, c.inertia_order)]
    orders += [prime_to_p_part(n, p) for n in extra_orders]
    d = degree_for_roots(p, math.lcm(*orders)) if orders else 1
    field = field_make(p, d)
    ells = {c.ell for c in chars if c.needs_sqrt()}
    if any(not sqrt_candidates(field, field.element(ell)) for ell in ells):
        field = field_make(p, 2 * d)
    return field


# The finite tame model.


@dataclasses.dataclass(frozen=True)
class TameGroup:
    """The group of pairs (a mod r, b mod m) with (a, b)(a', b') = (a + a', b + ell^a b')."""

    ell: int
    r: int
    m: int

    def __post_init__(self) -> None:
        if self.r < 1 or self.m < 1:
            raise Gsp4ObsError("tame model sizes must be positive")
        if pow(self.ell, self.r, self.m) != 1 % self.m:
            raise Gsp4ObsError(f"ell^r = {self.ell}^{self.r} is not 1 mod m = {self.m}")

    @classmethod
    def covering(cls, ell: int, r: int = 1, m: int = 1) -> TameGroup:
        """The smallest model whose sizes are multiples of r and m."""
        if m > 1 and math.gcd(ell, m) != 1:
            raise RealizabilityError(f"inertia order {m} is not prime to ell = {ell}")
        r = math.lcm(r, int(sympy.n_order(ell, m)) if m > 1 else 1)
        return cls(ell, r, m)

    def join(self, other: TameGroup) -> TameGroup:
        if other.ell != self.ell:
            raise Gsp4ObsError(f"tame models for different ell: {self.ell} and {other.ell}")
        return TameGroup.covering(self.ell, math.lcm(self.r, other.r), math.lcm(self.m, other.m))

    @property
    def order(self) -> int:
        return self.r * self.m

    def mul(self, x: GroupElt, y: GroupElt) -> GroupElt:
        a, b = x
        a2, b2 = y
        return (a + a2) % self.r, (b + pow(self.ell, a, self.m) * b2) % self.m

    def elements(self) -> Iterator[GroupElt]:
        for a in range(self.r):
            for b in range(self.m):
                yield a, b

    def in_subgroup(self, elt: GroupElt, kind: ExtensionKind) -> bool:
        a, b = elt
        match kind:
            case ExtensionKind.Base:
                return True
            case ExtensionKind.Unramified:
                return a % 2 == 0
            case ExtensionKind.Ramified:
                return b % 2 == 0
            case ExtensionKind.RamifiedTwisted:
                # (uF)^a = u^(1 + ell + ... + ell^(a-1)) F^a
                return (b - a) % 2 == 0
            case ExtensionKind.Biquadratic:
                return a % 2 == 0 and b % 2 == 0
            case ExtensionKind.Quartic:
                return a % 4 == 0


def matrix_order(mat: FMatrix, multiple: int) -> int:
    """Order of ``mat`` given a known multiple of it."""
    if not (mat**multiple).is_identity():
        raise RealizabilityError(f"matrix order does not divide {multiple}")
    n = multiple
    for q in sympy.factorint(multiple):
        while n % q == 0 and (mat ** (n // q)).is_identity():
            n //= q
    return n


def _order_bound(field: ExtField) -> int:
    # Monomial semisimple part times a unipotent part.
    return 2 * field.p * (field.order - 1)


@dataclasses.dataclass(frozen=True)
class ConcreteRep:
    """A representation of the finite tame model, given on the generators F and u."""

    field: ExtField
    group: TameGroup
    frob: FMatrix
    inertia: FMatrix

    def __post_init__(self) -> None:
        n = self.frob.rows
        if self.frob.shape != (n, n) or self.inertia.shape != (n, n):
            raise Gsp4ObsError("generator matrices must be square of equal size")
        if self.group.ell % self.field.p == 0:
            raise RealizabilityError(f"coefficient characteristic {self.field.p} equals ell")
        lhs = self.frob @ self.inertia @ linalg.inverse(self.frob)
        if lhs != self.inertia**self.group.ell:
            raise RealizabilityError("tame relation F u F^-1 = u^ell fails")
        if not (self.frob**self.group.r).is_identity() or not (self.inertia**self.group.m).is_identity():
            raise RealizabilityError(f"generators do not factor through the model r={self.group.r}, m={self.group.m}")

    @classmethod
    def fit(
        cls, field: ExtField, ell: int, frob: FMatrix, inertia: FMatrix, base: TameGroup | None = None
    ) -> ConcreteRep:
        """Wrap generator matrices in the smallest tame model they factor through."""
        bound = _order_bound(field)
        group = TameGroup.covering(ell, matrix_order(frob, bound), matrix_order(inertia, bound))
        if base is not None:
            group = group.join(base)
        return cls(field, group, frob, inertia)

    @property
    def dim(self) -> int:
        return self.frob.rows

    @property
    def ell(self) -> int:
        return self.group.ell

    def with_group(self, group: TameGroup) -> ConcreteRep:
        return ConcreteRep(self.field, group, self.frob, self.inertia)

    @functools.cached_property
    def _frob_powers(self) -> list[FMatrix]:
        out = [linalg.identity(self.field, self.dim)]
        for _ in range(1, self.group.r):
            out.append(out[-1] @ self.frob)
        return out

    @functools.cached_property
    def _inertia_powers(self) -> list[FMatrix]:
        out = [linalg.identity(self.field, self.dim)]
        for _ in range(1, self.group.m):
            out.append(out[-1] @ self.inertia)
        return out

    def at(self, elt: GroupElt) -> FMatrix:
        a, b = elt
        return self._inertia_powers[b % self.group.m] @ self._frob_powers[a % self.group.r]

    def trace_at(self, elt: GroupElt) -> FqElem:
        a, b = elt
        x = self._inertia_powers[b % self.group.m].entries
        y = self._frob_powers[a % self.group.r].entries
        acc = self.field.zero
        for i in range(self.dim):
            for j in range(self.dim):
                if not x[i][j].is_zero() and not y[j][i].is_zero():
                    acc = acc + x[i][j] * y[j][i]
        return acc


# Steinberg-type parameters rho_t(sigma, N).


class SteinbergKind(enum.Enum):
    St2 = "St2"
    St3 = "St3"
    St22 = "St22"
    St4 = "St4"

    def __str__(self) -> str:
        return self.value

    @property
    def dim(self) -> int:
        return {"St2": 2, "St3": 3, "St22": 4, "St4": 4}[self.value]

    @property
    def weights(self) -> tuple[Fraction, ...]:
        """Cyclotomic exponents of the diagonal semisimple part."""
        h = Fraction(1, 2)
        return {
            "St2": (h, -h),
            "St3": (Fraction(1), Fraction(0), Fraction(-1)),
            "St22": (Fraction(1), Fraction(0), Fraction(0), Fraction(-1)),
            "St4": (3 * h, h, -h, -3 * h),
        }[self.value]

    @property
    def kernel_weights(self) -> tuple[Fraction, ...]:
        """Cyclotomic exponents on ker N."""
        return {
            "St2": (Fraction(1, 2),),
            "St3": (Fraction(1),),
            "St22": (Fraction(1), Fraction(0)),
            "St4": (Fraction(3, 2),),
        }[self.value]

    @property
    def is_symplectic(self) -> bool:
        return self.dim == 4

    def nilpotent(self, field: ExtField) -> FMatrix:
        rows = {
            "St2": [[0, 1], [0, 0]],
            "St3": [[0, -2, 0], [0, 0, 1], [0, 0, 0]],
            "St22": [[0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, -1], [0, 0, 0, 0]],
            "St4": [[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1], [0, 0, 0, 0]],
        }[self.value]
        return linalg.from_rows(field, rows)


def steinberg_semisimple(kind: SteinbergKind, field: ExtField, ell: int, sqrt_choice: int = 0) -> FMatrix:
    """sigma(F) = diag(ell^w) over the weights of ``kind``."""
    return linalg.diagonal(field, [_cyclo_value(field, ell, int(2 * w), sqrt_choice) for w in kind.weights])


def steinberg_compatible(kind: SteinbergKind, field: ExtField, ell: int, sqrt_choice: int = 0) -> bool:
    """sigma(F) N sigma(F)^-1 == ell N."""
    sigma = steinberg_semisimple(kind, field, ell, sqrt_choice)
    n = kind.nilpotent(field)
    return sigma @ n @ linalg.inverse(sigma) == n * ell


def steinberg_rep(
    kind: SteinbergKind,
    tau: FqElem | int,
    field: ExtField,
    ell: int,
    sqrt_choice: int = 0,
    group: TameGroup | None = None,
) -> ConcreteRep:
    """rho_t(sigma, N) with t(u) = tau: R_F = sigma(F), R_u = exp(tau N)."""
    if field.p == 2 or field.p == ell:
        raise RealizabilityError(f"characteristic {field.p} is not admissible for ell = {ell}")
    frob = steinberg_semisimple(kind, field, ell, sqrt_choice)
    inertia = linalg.mat_exp_nilpotent(kind.nilpotent(field), tau)
    return ConcreteRep.fit(field, ell, frob, inertia, base=group)


# Constructions.


def character_rep(chi: SymChar, field: ExtField, sqrt_choice: int = 0, group: TameGroup | None = None) -> ConcreteRep:
    """The one-dimensional representation k(chi)."""
    if chi.kind is not ExtensionKind.Base:
        raise Gsp4ObsError("only characters of G_ell define representations of the tame model")
    frob = linalg.diagonal(field, [frob_value(chi, field, sqrt_choice)])
    inertia = linalg.diagonal(field, [inertia_value(chi, field)])
    return ConcreteRep.fit(field, chi.ell, frob, inertia, base=group)


def twist(rep: ConcreteRep, chi: SymChar, sqrt_choice: int = 0) -> ConcreteRep:
    """rep tensored with the character chi."""
    if chi.kind is not ExtensionKind.Base or chi.ell != rep.ell:
        raise Gsp4ObsError(f"cannot twist a representation at ell = {rep.ell} by {chi}")
    f_val = frob_value(chi, rep.field, sqrt_choice)
    u_val = inertia_value(chi, rep.field)
    return ConcreteRep.fit(rep.field, rep.ell, rep.frob * f_val, rep.inertia * u_val, base=rep.group)


def _common(reps: Sequence[ConcreteRep]) -> tuple[ExtField, TameGroup]:
    if not reps:
        raise Gsp4ObsError("need at least one representation")
    field = reps[0].field
    group = reps[0].group
    for rep in reps[1:]:
        if rep.field != field:
            raise Gsp4ObsError(f"representations over different fields: {field} and {rep.field}")
        group = group.join(rep.group)
    return field, group


def direct_sum(reps: Sequence[ConcreteRep]) -> ConcreteRep:
    field, group = _common(reps)
    frob = linalg.block_diag([r.frob for r in reps])
    inertia = linalg.block_diag([r.inertia for r in reps])
    return ConcreteRep(field, group, frob, inertia)


def dual(rep: ConcreteRep) -> ConcreteRep:
    return ConcreteRep(rep.field, rep.group, linalg.inverse(rep.frob).T, linalg.inverse(rep.inertia).T)


def tensor(a: ConcreteRep, b: ConcreteRep) -> ConcreteRep:
    field, group = _common([a, b])
    return ConcreteRep(field, group, linalg.kron(a.frob, b.frob), linalg.kron(a.inertia, b.inertia))


def _poly_mul(f: list[FqElem], g: Sequence[FqElem]) -> list[FqElem]:
    out = [f[0].field.zero] * (len(f) + len(g) - 1)
    for i, x in enumerate(f):
        for j, y in enumerate(g):
            out[i + j] = out[i + j] + x * y
    return out


def _sym_matrix(g: FMatrix, k: int) -> FMatrix:
    """Matrix of Sym^k(g) on the monomials e1^(k-i) e2^i."""
    field = g.field
    image_1 = (g[0, 0], g[1, 0])
    image_2 = (g[0, 1], g[1, 1])
    columns = []
    for i in range(k + 1):
        poly = [field.one]
        for factor in [image_1] * (k - i) + [image_2] * i:
            poly = _poly_mul(poly, factor)
        columns.append(poly)
    return linalg.transpose(linalg.from_rows(field, columns))


def sym_power(rep: ConcreteRep, k: int) -> ConcreteRep:
    """Sym^k of a two-dimensional representation."""
    if rep.dim != 2:
        raise Gsp4ObsError("symmetric powers are only built for two-dimensional representations")
    return ConcreteRep(rep.field, rep.group, _sym_matrix(rep.frob, k), _sym_matrix(rep.inertia, k))


def adjoint_rep(rep: ConcreteRep, basis: AdjointBasis | None = None) -> ConcreteRep:
    """The conjugation action of ``rep`` on a matrix Lie algebra (sp4 by default)."""
    basis = sp4_basis(rep.field) if basis is None else basis
    return ConcreteRep(rep.field, rep.group, adjoint_action(rep.frob, basis), adjoint_action(rep.inertia, basis))


def _require_odd(ell: int) -> None:
    if ell == 2:
        raise ConstraintViolation("dihedral induction", "ℓ ≠ 2")


def dihedral_rep(theta: SymChar, field: ExtField, sqrt_choice: int = 0, group: TameGroup | None = None) -> ConcreteRep:
    """Ind from the quadratic subgroup ``theta.kind`` of theta, on the cosets {1, s} with s = F or u."""
    _require_odd(theta.ell)
    if theta.kind not in QUADRATIC_KINDS:
        raise Gsp4ObsError(f"dihedral induction needs a character of a quadratic subgroup, got {theta.kind}")
    ell = theta.ell
    t_f = frob_value(theta, field, sqrt_choice)
    t_u = inertia_value(theta, field)
    zero, one = field.zero, field.one
    half = (ell - 1) // 2
    match theta.kind:
        case ExtensionKind.Unramified:
            frob = linalg.from_rows(field, [[zero, t_f], [one, zero]])
            inertia = linalg.diagonal(field, [t_u, t_u**ell])
        case ExtensionKind.Ramified:
            frob = linalg.diagonal(field, [t_f, t_u**half * t_f])
            inertia = linalg.from_rows(field, [[zero, t_u], [one, zero]])
        case _:
            frob = linalg.from_rows(field, [[zero, t_u**half * t_f], [t_u.inverse() * t_f, zero]])
            inertia = linalg.from_rows(field, [[zero, t_u], [one, zero]])
    return ConcreteRep.fit(field, ell, frob, inertia, base=group)


def induce_biquadratic(
    theta: SymChar, field: ExtField, sqrt_choice: int = 0, group: TameGroup | None = None
) -> ConcreteRep:
    """Ind from H = <F^2, u^2> of theta, on the cosets {1, F, u, uF}."""
    _require_odd(theta.ell)
    if theta.kind is not ExtensionKind.Biquadratic:
        raise Gsp4ObsError(f"biquadratic induction needs a character of <F^2, u^2>, got {theta.kind}")
    ell = theta.ell
    t_f = frob_value(theta, field, sqrt_choice)
    t_u = inertia_value(theta, field)
    half = (ell - 1) // 2
    frob_cols = {(1, 0): field.one, (0, 1): t_f, (3, 2): t_u ** (ell * half), (2, 3): t_u**half * t_f}
    inertia_cols = {(2, 0): field.one, (3, 1): field.one, (0, 2): t_u, (1, 3): t_u**ell}
    frob = linalg.from_rows(field, [[frob_cols.get((i, j), field.zero) for j in range(4)] for i in range(4)])
    inertia = linalg.from_rows(field, [[inertia_cols.get((i, j), field.zero) for j in range(4)] for i in range(4)])
    return ConcreteRep.fit(field, ell, frob, inertia, base=group)


def induce_quartic(
    theta: SymChar, field: ExtField, sqrt_choice: int = 0, group: TameGroup | None = None
) -> ConcreteRep:
    """Ind from H = <F^4, u> of theta, on the basis e_i = F^i e_0."""
    if theta.kind is not ExtensionKind.Quartic:
        raise Gsp4ObsError(f"quartic induction needs a character of <F^4, u>, got {theta.kind}")
    t_f = frob_value(theta, field, sqrt_choice)
    zero, one = field.zero, field.one
    frob = linalg.from_rows(
        field,
        [[zero, zero, zero, t_f], [one, zero, zero, zero], [zero, one, zero, zero], [zero, zero, one, zero]],
    )
    inertia = linalg.diagonal(field, [inertia_value(c, field) for c in theta.conjugates()])
    return ConcreteRep.fit(field, theta.ell, frob, inertia, base=group)


def extend_to_base(chi: SymChar) -> SymChar | None:
    """A character of G_ell whose restriction to ``chi.kind`` is chi, or None."""
    if chi.kind is ExtensionKind.Base:
        return chi
    f, e = chi.kind.residue_degree, chi.kind.ramification
    for j in range(e):
        inertia = (chi.inertia + j) / e
        if (inertia * (chi.ell - 1)).denominator != 1:
            continue
        for i in range(f):
            frob = chi.frob - inertia if chi.kind is ExtensionKind.RamifiedTwisted else (chi.frob + i) / f
            candidate = SymChar(chi.ell, frob, chi.cyclo, inertia)
            if candidate.restrict(chi.kind) == chi:
                return candidate
    return None


def quartic_similitude(theta: SymChar) -> SymChar | None:
    """The similitude character of the form on Ind theta from <F^4, u>; None unless theta theta^(F^2) extends.

    The form pairs e_0 with e_2 and e_1 with e_3, so the value at F squares to -theta(F^4).
    """
    if theta.kind is not ExtensionKind.Quartic:
        raise Gsp4ObsError(f"expected a character of <F^4, u>, got {theta.kind}")
    product = theta * theta.conjugates()[2]
    if extend_to_base(product) is None:
        return None
    return SymChar(theta.ell, theta.frob / 2 + Fraction(1, 4), product.cyclo, product.inertia)


def induce_quartic_symplectic(
    theta: SymChar, field: ExtField, sqrt_choice: int = 0, group: TameGroup | None = None
) -> ConcreteRep:
    """The quartic induction in the J basis (e_0, e_1, e_3 / c(F), e_2), c the similitude character."""
    similitude = quartic_similitude(theta)
    if similitude is None:
        raise ConstraintViolation("quartic induction", "θθ^{F²} extends to G_ℓ")
    induced = induce_quartic(theta, field, sqrt_choice, group)
    c_f = frob_value(similitude, field, sqrt_choice)
    t_f = induced.frob[0, 3]
    zero, one = field.zero, field.one
    rows = [
        [zero, zero, t_f * c_f.inverse(), zero],
        [one, zero, zero, zero],
        [zero, zero, zero, c_f],
        [zero, one, zero, zero],
    ]
    frob = linalg.from_rows(field, rows)
    t = [induced.inertia[i, i] for i in range(4)]
    inertia = linalg.diagonal(field, [t[0], t[1], t[3], t[2]])
    return ConcreteRep.fit(field, theta.ell, frob, inertia, base=group)


def permute(rep: ConcreteRep, order: Sequence[int]) -> ConcreteRep:
    """Reorder the basis: new basis vector i is old basis vector order[i]."""
    if sorted(order) != list(range(rep.dim)):
        raise Gsp4ObsError(f"{list(order)} is not a permutation of the basis")

    def reorder(m: FMatrix) -> FMatrix:
        return linalg.from_rows(m.field, [[m[i, j] for j in order] for i in order])

    return ConcreteRep(rep.field, rep.group, reorder(rep.frob), reorder(rep.inertia))


def block(rep: ConcreteRep, indices: Sequence[int]) -> ConcreteRep:
    """The diagonal block on ``indices``; a subquotient when the generators are block triangular."""

    def cut(m: FMatrix) -> FMatrix:
        return linalg.from_rows(m.field, [[m[i, j] for j in indices] for i in indices])

    return ConcreteRep(rep.field, rep.group, cut(rep.frob), cut(rep.inertia))


def hom_dimension(src: ConcreteRep, dst: ConcreteRep) -> int:
    """dim Hom_G(src, dst), from the linear system dst(g) X = X src(g) on the generators."""
    field, _ = _common([src, dst])
    eye_s = linalg.identity(field, src.dim)
    eye_d = linalg.identity(field, dst.dim)
    equations = [
        linalg.kron(d, eye_s) - linalg.kron(eye_d, s.T) for s, d in ((src.frob, dst.frob), (src.inertia, dst.inertia))
    ]
    return len(linalg.kernel_basis(linalg.vstack(equations)))
