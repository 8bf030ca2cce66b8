"""Exceptional primes: where H^0(G_ell, ad rho(1)) can be nonzero.

Each group has a list of symbolic weights. A weight psi contributes when
psi nu is trivial mod p for some embedding of its values, and when the
weight space is not killed by the nilpotent N. For Groups I-VI the check
runs on G_ell itself. For the dihedral groups and SC-pair it runs on
H = <F^2, u^2>, where the representation is diagonal, and gives a superset.
SC-irreducible splits ad rho into a torus piece and two inductions from the
quartic subgroup, and is exact by Frobenius reciprocity. The same reciprocity
gives the conjugate-ratio conditions for End of any index-4 induction.

The second half of the module holds the ell = p checks for Fontaine-Laffaille
and ordinary weights.
"""

from __future__ import annotations

import dataclasses
from fractions import Fraction
import functools
from typing import TYPE_CHECKING

import sympy

from . import linalg, tamerep
from .errors import Gsp4ObsError
from .ff import field_make, mult_order, prime_to_p_part
from .localtype import NILPOTENT_ENTRIES, GroupLabel, LocalTypeDescriptor, check_constraints
from .symplectic import SP4_POSITIONS, rational_ad_matrix
from .tamerep import ExtensionKind, SymChar

if TYPE_CHECKING:
    from collections.abc import Mapping

SIEVE_FLOOR = 5

_SUPERSCRIPT = str.maketrans("0123456789-", "⁰¹²³⁴⁵⁶⁷⁸⁹⁻")

# Display order of named characters in labels.
_NAME_ORDER = ("χ", "χ₁", "χ₂", "ξ", "ω", "θ", "θ'", "θ₂", "θ₂'", "θᶠ", "θᶠᶠ", "θᶠᶠᶠ", "θᵘ", "θᵘᶠ", "κ")

_EXACT_GROUPS = frozenset(
    {GroupLabel.I, GroupLabel.II, GroupLabel.III, GroupLabel.IV, GroupLabel.V, GroupLabel.VI, GroupLabel.SCIrreducible}
)


def _power(n: int) -> str:
    return "" if n == 1 else str(n).translate(_SUPERSCRIPT)


def _nu_label(power: Fraction) -> str:
    if power.denominator == 1:
        return "ν" + _power(int(power))
    return f"ν^{{{power.numerator}/{power.denominator}}}"


@dataclasses.dataclass(frozen=True)
class Monomial:
    """A product of named characters and a half-integral power of nu, kept for labels."""

    powers: tuple[tuple[str, int], ...] = ()
    nu: Fraction = Fraction(0)

    @classmethod
    def of(cls, name: str, power: int = 1) -> Monomial:
        return cls(((name, power),))

    @classmethod
    def cyclotomic(cls, power: Fraction | int) -> Monomial:
        return cls(nu=Fraction(power))

    def __mul__(self, other: Monomial) -> Monomial:
        powers = dict(self.powers)
        for name, k in other.powers:
            powers[name] = powers.get(name, 0) + k
        ordered = sorted((kv for kv in powers.items() if kv[1]), key=lambda kv: _NAME_ORDER.index(kv[0]))
        return Monomial(tuple(ordered), self.nu + other.nu)

    def inverse(self) -> Monomial:
        return Monomial(tuple((name, -k) for name, k in self.powers), -self.nu)

    def __truediv__(self, other: Monomial) -> Monomial:
        return self * other.inverse()

    def __str__(self) -> str:
        out = "".join(name + _power(k) for name, k in self.powers)
        if self.nu:
            out += _nu_label(self.nu)
        return out or "1"

    def evaluate(self, env: Mapping[str, SymChar], nu: SymChar) -> SymChar:
        """The character this monomial names, with ``nu`` the cyclotomic character of the ambient group."""
        out = SymChar.nu(nu.ell, self.nu, nu.kind)
        for name, k in self.powers:
            out = out * env[name] ** k
        return out


# Mod-p triviality.


def char_trivial_mod(chi: SymChar, p: int) -> bool:
    """Whether chi reduces to the trivial character mod p for some embedding of its values.

    The inertial part must have p-power order. The unramified root part
    can be sent to any primitive n'-th root of unity, so the condition is that
    the Frobenius power of ell (with either square root when needed) has order
    exactly n', the prime-to-p part of the root order. Decided in F_{p^2}.
    """
    if p == chi.ell:
        raise Gsp4ObsError(f"p = {p} equals ell; the cyclotomic character is not unramified there")
    if prime_to_p_part(chi.inertia_order, p) != 1:
        return False
    n = prime_to_p_part(chi.frob_order, p)
    field = field_make(p, 2)
    twice = int(2 * chi.cyclo * chi.degree)
    if twice % 2 == 0:
        values = {field.element(chi.ell) ** (twice // 2)}
    else:
        values = {tamerep.sqrt_ell(field, chi.ell, choice) ** twice for choice in (0, 1)}
    return any(mult_order(v) == n for v in values)


# Criteria.


@dataclasses.dataclass(frozen=True)
class Condition:
    """One weight psi nu whose triviality can give invariants, with the sp4 basis positions of psi."""

    label: str
    character: SymChar
    indices: tuple[int, ...]


@dataclasses.dataclass(frozen=True)
class Criterion:
    """The conditions of a descriptor and the nilpotent that cuts their multiplicities down."""

    group: GroupLabel
    conditions: tuple[Condition, ...]
    nilpotent: tuple[tuple[tuple[int, int], int], ...] = ()
    exact: bool = True

    def multiplicity(self, condition: Condition, p: int | None = None) -> int:
        """dim of ker(ad N) on the weight space, over F_p, or over Q when p is None."""
        ad = _ad_cache(self.nilpotent) if self.nilpotent else None
        if ad is None:
            return len(condition.indices)
        columns = ad[:, list(condition.indices)]
        if p is None:
            return len(condition.indices) - columns.rank()
        rows = [[int(columns[r, c]) for c in range(columns.cols)] for r in range(columns.rows)]
        return len(condition.indices) - linalg.rank(linalg.from_rows(field_make(p, 1), rows))


@functools.cache
def _ad_cache(nilpotent: tuple[tuple[tuple[int, int], int], ...]) -> sympy.Matrix:
    n = sympy.zeros(4, 4)
    for (i, j), v in nilpotent:
        n[i, j] = v
    return rational_ad_matrix(n)


def _torus_diagonal(desc: LocalTypeDescriptor) -> list[Monomial]:
    half = Fraction(1, 2)
    nu = Monomial.cyclotomic
    one = Monomial()
    match desc.group:
        case GroupLabel.I:
            chi1, chi2 = Monomial.of("χ₁"), Monomial.of("χ₂")
            return [chi1 * chi2, chi1, chi2, one]
        case GroupLabel.II:
            chi = Monomial.of("χ")
            return [chi * chi, chi * nu(half), chi * nu(-half), one]
        case GroupLabel.III:
            chi = Monomial.of("χ")
            return [chi * nu(half), chi * nu(-half), nu(half), nu(-half)]
        case GroupLabel.IV:
            return [nu(3 * half), nu(half), nu(-half), nu(-3 * half)]
        case GroupLabel.V:
            xi = Monomial.of("ξ")
            return [nu(half), xi * nu(half), xi * nu(-half), nu(-half)]
        case GroupLabel.VI:
            return [nu(half), nu(half), nu(-half), nu(-half)]
    raise Gsp4ObsError(f"Group {desc.group} has no torus criterion")


def _dihedral_diagonal(desc: LocalTypeDescriptor) -> list[Monomial]:
    """Characters of H on the J basis for the groups built from dihedral data."""
    a, b = Monomial.of("θ"), Monomial.of("θ'")
    half = Fraction(1, 2)
    match desc.group:
        case GroupLabel.VII | GroupLabel.VIII | GroupLabel.IX:
            chi = Monomial.of("χ")
            return [a, b, chi * a, chi * b]
        case GroupLabel.X:
            return [Monomial.of("ω"), a, b, Monomial()]
        case GroupLabel.XI:
            return [Monomial.cyclotomic(half), a, b, Monomial.cyclotomic(-half)]
        case GroupLabel.SCPair:
            return [a, Monomial.of("θ₂"), Monomial.of("θ₂'"), b]
    raise Gsp4ObsError(f"Group {desc.group} has no dihedral criterion")


def _on_h(theta: SymChar) -> tuple[SymChar, SymChar]:
    """theta and its conjugate by the nontrivial coset, restricted to H."""
    other = theta.conjugates()[1]
    return theta.restrict(ExtensionKind.Biquadratic), other.restrict(ExtensionKind.Biquadratic)


def _dihedral_env(desc: LocalTypeDescriptor) -> dict[str, SymChar]:
    assert desc.psi is not None
    h = ExtensionKind.Biquadratic
    env = dict(zip(("θ", "θ'"), _on_h(desc.psi.theta), strict=True))
    if desc.psi2 is not None:
        env.update(zip(("θ₂", "θ₂'"), _on_h(desc.psi2.theta), strict=True))
    if desc.group in (GroupLabel.VII, GroupLabel.VIII, GroupLabel.IX):
        env["χ"] = desc.similitude_twist.restrict(h)
    if desc.group is GroupLabel.X:
        env["ω"] = desc.psi.determinant.restrict(h)
    return env


def _torus_env(desc: LocalTypeDescriptor) -> dict[str, SymChar]:
    names = {"χ": desc.chi, "χ₁": desc.chi1, "χ₂": desc.chi2, "ξ": desc.xi}
    return {k: v for k, v in names.items() if v is not None}


def _collect(diagonal: list[Monomial], env: Mapping[str, SymChar], nu: SymChar) -> tuple[Condition, ...]:
    """Group the sp4 basis by the character of psi nu, labelled by the smallest monomial naming it."""
    labels: dict[SymChar, list[str]] = {}
    indices: dict[SymChar, list[int]] = {}
    for k, (i, j) in enumerate(SP4_POSITIONS):
        monomial = diagonal[i] / diagonal[j] * Monomial.cyclotomic(1)
        char = monomial.evaluate(env, nu)
        labels.setdefault(char, []).append(str(monomial))
        indices.setdefault(char, []).append(k)
    return tuple(Condition(min(labels[c]), c, tuple(indices[c])) for c in labels)


def _ratio_conditions(env: Mapping[str, SymChar], ratios: list[Monomial], nu: SymChar) -> tuple[Condition, ...]:
    labels: dict[SymChar, list[str]] = {}
    indices: dict[SymChar, list[int]] = {}
    for k, ratio in enumerate(ratios):
        monomial = ratio * Monomial.cyclotomic(1)
        char = monomial.evaluate(env, nu)
        labels.setdefault(char, []).append(str(monomial))
        indices.setdefault(char, []).append(k)
    return tuple(Condition(min(labels[c]), c, tuple(indices[c])) for c in labels)


def _conjugate_names(theta: SymChar) -> tuple[str, ...]:
    match theta.kind:
        case ExtensionKind.Biquadratic:
            return ("θ", "θᶠ", "θᵘ", "θᵘᶠ")
        case ExtensionKind.Quartic:
            return ("θ", "θᶠ", "θᶠᶠ", "θᶠᶠᶠ")
    raise Gsp4ObsError(f"no index-4 induction from the {theta.kind} subgroup")


def induced_conditions(theta: SymChar) -> tuple[Condition, ...]:
    """Conditions theta^s / theta nu on H for End(Ind theta)(1), one per coset s; exact by Frobenius reciprocity."""
    names = _conjugate_names(theta)
    env = dict(zip(names, theta.conjugates(), strict=True))
    ratios = [Monomial.of(name) / Monomial.of("θ") for name in names]
    return _ratio_conditions(env, ratios, SymChar.nu(theta.ell, kind=theta.kind))


def induced_flagged_primes(theta: SymChar, bound: int, floor: int = SIEVE_FLOOR) -> set[int]:
    """Primes floor <= p <= bound, p != ell, where End(Ind theta)(1) has invariants."""
    conditions = induced_conditions(theta)
    return {
        int(p)
        for p in sympy.primerange(max(floor, SIEVE_FLOOR), bound + 1)
        if p != theta.ell and any(char_trivial_mod(c.character, p) for c in conditions)
    }


def _supercuspidal_conditions(desc: LocalTypeDescriptor) -> tuple[Condition, ...]:
    """ad of the quartic induction is Ind(kappa) + Ind(theta / theta^(F^2)) + Ind(theta^F / theta).

    kappa is the character of <F^2, u> with kappa(F^2) = -1; it comes from the diagonal torus.
    """
    assert desc.psi is not None
    ell = desc.ell
    theta = desc.psi.theta
    names = _conjugate_names(theta)
    env = dict(zip(names, theta.conjugates(), strict=True))
    kappa = SymChar(ell, frob=Fraction(1, 2), kind=ExtensionKind.Unramified)
    torus = _ratio_conditions({"κ": kappa}, [Monomial.of("κ")], SymChar.nu(ell, kind=ExtensionKind.Unramified))
    ratios = [Monomial.of("θ") / Monomial.of("θᶠᶠ"), Monomial.of("θᶠ") / Monomial.of("θ")]
    roots = _ratio_conditions(env, ratios, SymChar.nu(ell, kind=ExtensionKind.Quartic))
    return torus + tuple(dataclasses.replace(c, indices=tuple(k + 1 for k in c.indices)) for c in roots)


def criterion(desc: LocalTypeDescriptor) -> Criterion:
    """The symbolic conditions for the descriptor's group."""
    group = desc.group
    if group is GroupLabel.SCIrreducible:
        return Criterion(group, _supercuspidal_conditions(desc))
    nilpotent = tuple(sorted(NILPOTENT_ENTRIES.get(group, {}).items()))
    if group in _EXACT_GROUPS:
        conditions = _collect(_torus_diagonal(desc), _torus_env(desc), SymChar.nu(desc.ell))
    else:
        nu = SymChar.nu(desc.ell, kind=ExtensionKind.Biquadratic)
        conditions = _collect(_dihedral_diagonal(desc), _dihedral_env(desc), nu)
    return Criterion(group, conditions, nilpotent, exact=group in _EXACT_GROUPS)


@dataclasses.dataclass(frozen=True, order=True)
class SieveReport:
    p: int
    condition: str
    group: str
    multiplicity: int = 1


def exceptional_primes(desc: LocalTypeDescriptor, bound: int, floor: int = SIEVE_FLOOR) -> list[SieveReport]:
    """Every prime floor <= p <= bound, p != ell, with a fired condition, sorted by p then label."""
    if bound < SIEVE_FLOOR:
        raise Gsp4ObsError(f"prime bound must be at least {SIEVE_FLOOR}, got {bound}")
    check_constraints(desc)
    crit = criterion(desc)
    group = str(desc.group)
    reports = []
    for p in sympy.primerange(max(floor, SIEVE_FLOOR), bound + 1):
        if p == desc.ell:
            continue
        for cond in crit.conditions:
            if not char_trivial_mod(cond.character, p):
                continue
            m = crit.multiplicity(cond, p)
            if m > 0:
                reports.append(SieveReport(int(p), f"{cond.label} trivial", group, m))
    return sorted(reports)


def flagged_primes(desc: LocalTypeDescriptor, bound: int) -> set[int]:
    return {r.p for r in exceptional_primes(desc, bound)}


def infinite_conditions(desc: LocalTypeDescriptor) -> list[str]:
    """Conditions that hold identically and fire at every p.

    Group IX always has one: on its semisimplification chi^-1 nu restricts to eta, trivial on H.
    """
    crit = criterion(desc)
    return [c.label for c in crit.conditions if c.character.is_trivial() and crit.multiplicity(c) > 0]


# The case ell = p.


@dataclasses.dataclass(frozen=True)
class WeightData:
    """Weights (a, b) with a >= b >= 0 and motivic weight w; the Hodge-Tate weights are delta + {0, b, a, a + b}."""

    a: int
    b: int
    w: int

    def __post_init__(self) -> None:
        if not self.a >= self.b >= 0:
            raise Gsp4ObsError(f"weights need a >= b >= 0, got a = {self.a}, b = {self.b}")
        if (self.w + 1 - self.a - self.b) % 2:
            raise Gsp4ObsError(f"w + 1 must have the parity of a + b, got w = {self.w}, a + b = {self.a + self.b}")

    @property
    def delta(self) -> int:
        return (self.w + 3 - self.a - self.b) // 2

    @property
    def hodge_tate_weights(self) -> tuple[int, ...]:
        d = self.delta
        return (d, d + self.b, d + self.a, d + self.a + self.b)

    @property
    def regular(self) -> bool:
        return self.a > self.b > 0

    def weights_consecutive(self) -> bool:
        """Two Hodge-Tate weights differ by one."""
        ws = sorted(self.hodge_tate_weights)
        return any(y - x == 1 for x, y in zip(ws, ws[1:], strict=False))

    def fl_disjoint(self) -> bool:
        """The jumps of the filtration are disjoint from those of its Tate twist."""
        jumps = set(self.hodge_tate_weights)
        return not jumps & {x + 1 for x in jumps}


@dataclasses.dataclass(frozen=True)
class FLResult:
    p: int
    unobstructed: bool
    reason: str
    weights: tuple[int, ...]
    disjoint: bool
    assumes_unramified: bool = True


def fl_check(wd: WeightData, p: int) -> FLResult:
    """Vanishing of H^0(G_p, ad rho(1)) in the Fontaine-Laffaille range: 0 < a + b < p - 2 and b, a - b != 1."""
    s = wd.a + wd.b
    if wd.b == 1:
        reason = "b = 1"
    elif wd.a - wd.b == 1:
        reason = "a−b = 1"
    elif s >= p - 2:
        reason = f"a+b = {s} ≥ p−2 = {p - 2}"
    elif s <= 0:
        reason = f"a+b = {s} ≤ 0"
    else:
        reason = ""
    return FLResult(p, not reason, reason, wd.hodge_tate_weights, wd.fl_disjoint())


def ordinary_weights(wd: WeightData) -> tuple[int, ...]:
    """Inertial exponents of the semisimplified ad rho(1) on gsp4 for an ordinary rho."""
    out = [1, 1, 1]
    for x in (wd.b, wd.a, wd.a - wd.b, wd.a + wd.b):
        out += [1 + x, 1 - x]
    return tuple(out)


def ordinary_check(wd: WeightData, p: int) -> list[str]:
    """The congruences x = +-1 (mod p - 1), x in {a, b, a - b, a + b}, that hold; empty means H^0 vanishes."""
    if not sympy.isprime(p):
        raise Gsp4ObsError(f"p = {p} is not prime")
    m = p - 1
    values = {"a": wd.a, "b": wd.b, "a−b": wd.a - wd.b, "a+b": wd.a + wd.b}
    fired = []
    for name, x in values.items():
        # x = 1 and x = -1 are the vanishing of the exponents 1 - x and 1 + x of ad rho(1).
        plus, minus = (1 - x) % m == 0, (1 + x) % m == 0
        if plus and minus:
            fired.append(f"{name} ≡ ±1 (mod {m})")
        elif plus:
            fired.append(f"{name} ≡ 1 (mod {m})")
        elif minus:
            fired.append(f"{name} ≡ −1 (mod {m})")
    return fired
