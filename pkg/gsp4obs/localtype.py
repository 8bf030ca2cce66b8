"""Local type descriptors: the per-group parameter data and their realisation as matrices.

A descriptor names one of the groups I-XI (or a supercuspidal variant) at a
prime ell together with the characters and dihedral data the group needs.
Descriptors round-trip through a flat ``key = value`` text format, one field
per line, e.g.::

    group = III
    ell = 5
    chi.frob_order = 2
    chi.frob_exp = 1
    chi.cyclo_exp = 0/2

Dihedral data use ``psi.ext = unramified`` and ``psi.chi.* = ...``.
"""

from __future__ import annotations

import dataclasses
import enum
from fractions import Fraction
import importlib.resources
import math
from pathlib import Path
from typing import TYPE_CHECKING

import sympy

from . import ff, linalg, tamerep
from .errors import ConstraintViolation, DescriptorError, Gsp4ObsError, RealizabilityError
from .tamerep import ExtensionKind, SteinbergKind, SymChar

if TYPE_CHECKING:
    from collections.abc import Iterable, Iterator

    from .ff import ExtField
    from .linalg import FMatrix
    from .tamerep import ConcreteRep

type Filtration = tuple[tuple[int, ...], ...]

CHAR_NAMES = ("chi", "chi1", "chi2", "sigma", "xi", "omega")
CHAR_FIELDS = ("frob_order", "frob_exp", "cyclo_exp", "inertia_order", "inertia_exp")
DIHEDRAL_NAMES = ("psi", "psi2")
DESCRIPTOR_SUFFIX = ".desc"
# Index-4 subgroups an SC-irreducible parameter may be induced from.
INDUCING_KINDS = (ExtensionKind.Quartic, ExtensionKind.Biquadratic)


class GroupLabel(enum.Enum):
    I = "I"  # noqa: E741
    II = "II"
    III = "III"
    IV = "IV"
    V = "V"
    VI = "VI"
    VII = "VII"
    VIII = "VIII"
    IX = "IX"
    X = "X"
    XI = "XI"
    SCIrreducible = "SC-irreducible"
    SCPair = "SC-pair"

    def __str__(self) -> str:
        return self.value

    @property
    def is_dihedral(self) -> bool:
        return self in _DIHEDRAL_GROUPS

    @property
    def is_supercuspidal(self) -> bool:
        return self in (GroupLabel.SCIrreducible, GroupLabel.SCPair)

    @property
    def has_nilpotent(self) -> bool:
        return self in (GroupLabel.II, GroupLabel.III, GroupLabel.IV, GroupLabel.V, GroupLabel.VI, GroupLabel.XI)


_DIHEDRAL_GROUPS = frozenset({GroupLabel.VII, GroupLabel.VIII, GroupLabel.IX, GroupLabel.X, GroupLabel.XI})

_REQUIRED: dict[GroupLabel, tuple[str, ...]] = {
    GroupLabel.I: ("chi1", "chi2"),
    GroupLabel.II: ("chi",),
    GroupLabel.III: ("chi",),
    GroupLabel.IV: (),
    GroupLabel.V: ("xi",),
    GroupLabel.VI: (),
    GroupLabel.VII: ("chi", "psi"),
    GroupLabel.VIII: ("psi",),
    GroupLabel.IX: ("psi",),
    GroupLabel.X: ("psi",),
    GroupLabel.XI: ("psi",),
    GroupLabel.SCIrreducible: ("psi",),
    GroupLabel.SCPair: ("psi", "psi2"),
}


@dataclasses.dataclass(frozen=True)
class Dihedral:
    """A character theta of the subgroup ``kind``; its induction to G_ell is rho_psi."""

    kind: ExtensionKind
    theta: SymChar

    def __post_init__(self) -> None:
        if self.theta.kind is not self.kind:
            raise DescriptorError(f"dihedral character lives on {self.theta.kind}, expected {self.kind}")
        if self.kind is ExtensionKind.Base:
            raise DescriptorError("dihedral data need a proper subgroup")

    @property
    def determinant(self) -> SymChar:
        """omega_psi, the determinant of the two-dimensional induction."""
        return tamerep.transfer_determinant(self.theta)

    @property
    def quadratic_character(self) -> SymChar:
        return tamerep.quadratic_character(self.kind, self.theta.ell)

    def is_regular(self) -> bool:
        """theta differs from all of its nontrivial conjugates."""
        conjugates = self.theta.conjugates()
        return all(c != self.theta for c in conjugates[1:])


@dataclasses.dataclass(frozen=True)
class LocalTypeDescriptor:
    group: GroupLabel
    ell: int
    chi: SymChar | None = None
    chi1: SymChar | None = None
    chi2: SymChar | None = None
    sigma: SymChar | None = None
    xi: SymChar | None = None
    omega: SymChar | None = None
    psi: Dihedral | None = None
    psi2: Dihedral | None = None
    tau: int = 1
    name: str = ""

    def __post_init__(self) -> None:
        if not sympy.isprime(self.ell):
            raise DescriptorError(f"ell = {self.ell} is not prime")
        for key in _REQUIRED[self.group]:
            if getattr(self, key) is None:
                raise DescriptorError(f"Group {self.group} needs parameter {key}")
        for key in CHAR_NAMES:
            char = getattr(self, key)
            if char is not None and (char.ell != self.ell or char.kind is not ExtensionKind.Base):
                raise DescriptorError(f"{key} must be a character of G_{self.ell}")
        for key in DIHEDRAL_NAMES:
            datum = getattr(self, key)
            if datum is not None and datum.theta.ell != self.ell:
                raise DescriptorError(f"{key} must be dihedral data at ell = {self.ell}")
        if self.group is GroupLabel.SCIrreducible and self.psi is not None and self.psi.kind not in INDUCING_KINDS:
            raise DescriptorError("SC-irreducible needs psi.ext = unramified-quartic or biquadratic")
        if self.group is not GroupLabel.SCIrreducible:
            for key in DIHEDRAL_NAMES:
                datum = getattr(self, key)
                if datum is not None and datum.kind not in tamerep.QUADRATIC_KINDS:
                    raise DescriptorError(f"Group {self.group} needs a quadratic {key}.ext")
        if self.tau == 0:
            raise DescriptorError("tau must be nonzero")

    def characters(self) -> Iterator[SymChar]:
        """Every character the descriptor mentions, including dihedral data and derived determinants."""
        for key in CHAR_NAMES:
            char = getattr(self, key)
            if char is not None:
                yield char
        for key in DIHEDRAL_NAMES:
            datum = getattr(self, key)
            if datum is not None:
                yield datum.theta
                if datum.kind in tamerep.QUADRATIC_KINDS:
                    yield datum.determinant
                    yield datum.quadratic_character
                elif datum.kind is ExtensionKind.Quartic:
                    yield SymChar(self.ell, frob=Fraction(1, 4))
                    similitude = tamerep.quartic_similitude(datum.theta)
                    if similitude is not None:
                        yield similitude

    @property
    def similitude_twist(self) -> SymChar:
        """The character chi used for the second block of Groups VII-IX."""
        match self.group:
            case GroupLabel.VII:
                assert self.chi is not None
                return self.chi
            case GroupLabel.VIII:
                return SymChar.trivial(self.ell)
            case GroupLabel.IX:
                assert self.psi is not None
                return SymChar.nu(self.ell) * self.psi.quadratic_character
        raise Gsp4ObsError(f"Group {self.group} has no similitude twist")

    def label(self) -> str:
        return self.name or f"{self.group}@{self.ell}"


# Constraints.


def constraint_violations(desc: LocalTypeDescriptor) -> list[ConstraintViolation]:
    """All regularity constraints of the descriptor's group that fail, symbolically."""
    g = str(desc.group)
    ell = desc.ell
    nu = SymChar.nu(ell)
    one = SymChar.trivial(ell)
    out = []

    def require(ok: bool, text: str) -> None:
        if not ok:
            out.append(ConstraintViolation(g, text))

    match desc.group:
        case GroupLabel.I:
            chi1, chi2 = desc.chi1, desc.chi2
            assert chi1 is not None and chi2 is not None
            require(chi1 not in (nu, nu.inverse()), "χ₁ ≠ ν^{±1}")
            require(chi2 not in (nu, nu.inverse()), "χ₂ ≠ ν^{±1}")
            require(
                all(c not in (nu, nu.inverse()) for c in (chi1 * chi2, chi1 / chi2)),
                "χ₁ ≠ ν^{±1}χ₂^{±1}",
            )
        case GroupLabel.II:
            chi = desc.chi
            assert chi is not None
            require(chi**2 not in (nu, nu.inverse()), "χ² ≠ ν^{±1}")
            require(chi not in (SymChar.nu(ell, Fraction(3, 2)), SymChar.nu(ell, Fraction(-3, 2))), "χ ≠ ν^{±3/2}")
        case GroupLabel.III:
            chi = desc.chi
            assert chi is not None
            require(chi != one, "χ ≠ 1")
            require(chi not in (nu**2, nu**-2), "χ ≠ ν^{±2}")
        case GroupLabel.V:
            xi = desc.xi
            assert xi is not None
            require(not xi.is_trivial() and (xi**2).is_trivial(), "ξ nontrivial quadratic")
    if desc.group.is_dihedral or desc.group.is_supercuspidal:
        require(ell != 2, "ℓ ≠ 2")
        for key in DIHEDRAL_NAMES:
            datum = getattr(desc, key)
            if datum is not None:
                require(datum.is_regular(), f"{key} with θ ≠ θ^σ")
    if desc.group is GroupLabel.SCIrreducible and desc.psi is not None:
        require(_has_symplectic_form(desc.psi), "θθ^σ extends to G_ℓ for an involution σ")
    if desc.psi is not None and desc.psi.kind in tamerep.QUADRATIC_KINDS:
        omega = desc.psi.determinant
        if desc.omega is not None:
            require(desc.omega == omega, "ω = ω_ψ")
        if desc.group is GroupLabel.X:
            require(omega not in (nu, nu.inverse()), "ω_ψ ≠ ν^{±1}")
        if desc.group is GroupLabel.XI:
            require(omega == one, "ω_ψ = 1")
        if desc.group is GroupLabel.IX and desc.xi is not None:
            require(desc.xi == desc.psi.quadratic_character, "ξρ_ψ ≅ ρ_ψ")
        if desc.group is GroupLabel.SCPair and desc.psi2 is not None:
            require(desc.psi2.determinant == omega, "ω_ψ₁ = ω_ψ₂")
    return out


def _has_symplectic_form(psi: Dihedral) -> bool:
    """Whether Ind psi carries an invariant alternating form up to a character of G_ell.

    Such a form pairs the H-lines of theta and theta^sigma for an involution sigma
    of G_ell / H, so theta theta^sigma has to be the restriction of the similitude.
    """
    theta = psi.theta
    if psi.kind is ExtensionKind.Quartic:
        return tamerep.quartic_similitude(theta) is not None
    return any(tamerep.extend_to_base(theta * c) is not None for c in theta.conjugates()[1:])


def check_constraints(desc: LocalTypeDescriptor) -> None:
    violations = constraint_violations(desc)
    if violations:
        raise violations[0]


# Descriptor documents.


def _parse_int(value: str, key: str, line: int) -> int:
    try:
        return int(value)
    except ValueError:
        raise DescriptorError(f"{key} expects an integer, got {value!r}", line) from None


def _char_from_fields(ell: int, fields: dict[str, tuple[str, int]], prefix: str, kind: ExtensionKind) -> SymChar:
    values: dict[str, int | Fraction] = {}
    for field_name, (raw, line) in fields.items():
        if field_name == "cyclo_exp":
            try:
                values[field_name] = Fraction(raw)
            except ValueError:
                raise DescriptorError(f"{prefix}.cyclo_exp expects n/2, got {raw!r}", line) from None
        else:
            values[field_name] = _parse_int(raw, f"{prefix}.{field_name}", line)
    try:
        return SymChar.make(
            ell,
            frob_order=int(values.get("frob_order", 1)),
            frob_exp=int(values.get("frob_exp", 0)),
            cyclo_exp=values.get("cyclo_exp", 0),
            inertia_order=int(values.get("inertia_order", 1)),
            inertia_exp=int(values.get("inertia_exp", 0)),
            kind=kind,
        )
    except DescriptorError:
        raise
    except Gsp4ObsError as exc:
        raise DescriptorError(f"{prefix}: {exc}") from exc


def parse_descriptor(text: str) -> LocalTypeDescriptor:
    """Parse a ``key = value`` descriptor document."""
    entries: dict[str, tuple[str, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise DescriptorError(f"expected 'key = value', got {line!r}", lineno)
        key, value = (part.strip() for part in line.split("=", 1))
        if key in entries:
            raise DescriptorError(f"duplicate key {key}", lineno)
        entries[key] = (value, lineno)

    def pop(key: str) -> tuple[str, int] | None:
        return entries.pop(key, None)

    group_entry = pop("group")
    ell_entry = pop("ell")
    if group_entry is None or ell_entry is None:
        raise DescriptorError("descriptor needs both 'group' and 'ell'")
    try:
        group = GroupLabel(group_entry[0])
    except ValueError:
        raise DescriptorError(f"unknown group {group_entry[0]!r}", group_entry[1]) from None
    ell = _parse_int(ell_entry[0], "ell", ell_entry[1])
    if not sympy.isprime(ell):
        raise DescriptorError(f"ell = {ell} is not prime", ell_entry[1])

    kwargs: dict[str, object] = {}
    tau_entry = pop("tau")
    if tau_entry is not None:
        kwargs["tau"] = _parse_int(tau_entry[0], "tau", tau_entry[1])
    name_entry = pop("name")
    if name_entry is not None:
        kwargs["name"] = name_entry[0]

    for prefix in DIHEDRAL_NAMES:
        ext_entry = pop(f"{prefix}.ext")
        fields = {f: e for f in CHAR_FIELDS if (e := pop(f"{prefix}.chi.{f}")) is not None}
        if ext_entry is None:
            if fields:
                raise DescriptorError(f"{prefix}.chi given without {prefix}.ext", next(iter(fields.values()))[1])
            continue
        try:
            kind = ExtensionKind(ext_entry[0])
        except ValueError:
            raise DescriptorError(f"unknown extension kind {ext_entry[0]!r}", ext_entry[1]) from None
        kwargs[prefix] = Dihedral(kind, _char_from_fields(ell, fields, f"{prefix}.chi", kind))

    for prefix in CHAR_NAMES:
        fields = {f: e for f in CHAR_FIELDS if (e := pop(f"{prefix}.{f}")) is not None}
        if fields:
            kwargs[prefix] = _char_from_fields(ell, fields, prefix, ExtensionKind.Base)

    if entries:
        key, (_, lineno) = min(entries.items(), key=lambda item: item[1][1])
        raise DescriptorError(f"unknown key {key}", lineno)
    return LocalTypeDescriptor(group, ell, **kwargs)  # type: ignore[arg-type]


def _char_lines(prefix: str, char: SymChar) -> list[str]:
    return [
        f"{prefix}.frob_order = {char.frob_order}",
        f"{prefix}.frob_exp = {char.frob_exp}",
        f"{prefix}.cyclo_exp = {int(2 * char.cyclo)}/2",
        f"{prefix}.inertia_order = {char.inertia_order}",
        f"{prefix}.inertia_exp = {char.inertia_exp}",
    ]


def serialize_descriptor(desc: LocalTypeDescriptor) -> str:
    lines = []
    if desc.name:
        lines.append(f"name = {desc.name}")
    lines += [f"group = {desc.group}", f"ell = {desc.ell}"]
    if desc.tau != 1:
        lines.append(f"tau = {desc.tau}")
    for prefix in CHAR_NAMES:
        char = getattr(desc, prefix)
        if char is not None:
            lines += _char_lines(prefix, char)
    for prefix in DIHEDRAL_NAMES:
        datum = getattr(desc, prefix)
        if datum is not None:
            lines.append(f"{prefix}.ext = {datum.kind}")
            lines += _char_lines(f"{prefix}.chi", datum.theta)
    return "\n".join(lines) + "\n"


def packaged_descriptors() -> list[str]:
    """Names of the descriptors shipped with the package."""
    root = importlib.resources.files("gsp4obs") / "descriptors"
    return sorted(p.name.removesuffix(DESCRIPTOR_SUFFIX) for p in root.iterdir() if p.name.endswith(DESCRIPTOR_SUFFIX))


def load_descriptor(path: str | Path) -> LocalTypeDescriptor:
    """Read a descriptor file; a bare name falls back to the packaged corpus."""
    candidate = Path(path)
    if candidate.is_file():
        return parse_descriptor(candidate.read_text(encoding="utf-8"))
    name = candidate.name.removesuffix(DESCRIPTOR_SUFFIX)
    packaged = importlib.resources.files("gsp4obs") / "descriptors" / f"{name}{DESCRIPTOR_SUFFIX}"
    if packaged.is_file():
        return parse_descriptor(packaged.read_text(encoding="utf-8"))
    raise DescriptorError(f"no descriptor file {path}")


# Concretization.

_HALF = Fraction(1, 2)


def _torus_chars(desc: LocalTypeDescriptor) -> list[SymChar]:
    """Diagonal characters in the J basis for Groups I-VI."""
    ell = desc.ell

    def nu(power: Fraction | int) -> SymChar:
        return SymChar.nu(ell, power)

    one = SymChar.trivial(ell)
    match desc.group:
        case GroupLabel.I:
            assert desc.chi1 is not None and desc.chi2 is not None
            return [desc.chi1 * desc.chi2, desc.chi1, desc.chi2, one]
        case GroupLabel.II:
            assert desc.chi is not None
            chi = desc.chi
            return [chi**2, chi * nu(_HALF), chi * nu(-_HALF), one]
        case GroupLabel.III:
            assert desc.chi is not None
            chi = desc.chi
            return [chi * nu(_HALF), chi * nu(-_HALF), nu(_HALF), nu(-_HALF)]
        case GroupLabel.IV:
            return [nu(3 * _HALF), nu(_HALF), nu(-_HALF), nu(-3 * _HALF)]
        case GroupLabel.V | GroupLabel.VI:
            xi = desc.xi if desc.group is GroupLabel.V and desc.xi is not None else one
            return [nu(_HALF), xi * nu(_HALF), xi * nu(-_HALF), nu(-_HALF)]
    raise Gsp4ObsError(f"Group {desc.group} is not a torus construction")


# Nonzero entries of the nilpotent N in the J basis; XI carries St2 on (e1, e4).
NILPOTENT_ENTRIES: dict[GroupLabel, dict[tuple[int, int], int]] = {
    GroupLabel.I: {},
    GroupLabel.II: {(1, 2): 1},
    GroupLabel.III: {(0, 1): 1, (2, 3): -1},
    GroupLabel.IV: {(0, 1): 1, (1, 2): 1, (2, 3): -1},
    GroupLabel.V: {(0, 3): 1, (1, 2): 1},
    GroupLabel.VI: {(0, 3): 1, (1, 2): 1},
    GroupLabel.XI: {(0, 3): 1},
}


def _torus_nilpotent(group: GroupLabel, field: ExtField) -> FMatrix | None:
    entries = NILPOTENT_ENTRIES[group]
    if not entries:
        return None
    return linalg.from_rows(field, [[entries.get((i, j), 0) for j in range(4)] for i in range(4)])


def torus_weights(desc: LocalTypeDescriptor) -> list[SymChar]:
    """The diagonal characters of a Group I-VI concretization, in basis order."""
    return _torus_chars(desc)


def field_for_descriptor(desc: LocalTypeDescriptor, p: int) -> ExtField:
    chars = list(desc.characters())
    if desc.group.has_nilpotent:
        chars.append(SymChar.nu(desc.ell, _HALF))
    if desc.group in (GroupLabel.I, GroupLabel.II, GroupLabel.III, GroupLabel.V):
        chars += _torus_chars(desc)
    return tamerep.field_for(p, chars)


def check_prime(desc: LocalTypeDescriptor, p: int) -> None:
    if not sympy.isprime(p) or p < 5 or p == desc.ell:
        raise RealizabilityError(f"p = {p} is not an admissible coefficient prime for ell = {desc.ell}")


def galois_conjugate(desc: LocalTypeDescriptor, k: int) -> LocalTypeDescriptor:
    """The descriptor with every root of unity raised to the k-th power."""
    changes: dict[str, SymChar | Dihedral] = {}
    for key in CHAR_NAMES:
        char = getattr(desc, key)
        if char is not None:
            changes[key] = char.galois_conjugate(k)
    for key in DIHEDRAL_NAMES:
        datum = getattr(desc, key)
        if datum is not None:
            changes[key] = Dihedral(datum.kind, datum.theta.galois_conjugate(k))
    return dataclasses.replace(desc, **changes)


def embedding_units(desc: LocalTypeDescriptor, p: int) -> list[int]:
    """One unit k per embedding of the descriptor's roots of unity into the algebraic closure of F_p.

    Two units give the same embedding when they agree modulo the prime-to-p
    part of the common denominator; each k is also odd and prime to that
    denominator so quadratic data are left alone.
    """
    return character_units(desc.characters(), p)


def character_units(chars: Iterable[SymChar], p: int) -> list[int]:
    orders = [n for c in chars for n in (c.frob_order, c.inertia_order)]
    denominator = math.lcm(2, *orders)
    modulus = ff.prime_to_p_part(denominator, p)
    units: dict[int, int] = {}
    for k in range(1, denominator + 1):
        if math.gcd(k, denominator) == 1:
            units.setdefault(k % modulus, k)
    return sorted(units.values())


def concretize(
    desc: LocalTypeDescriptor,
    p: int,
    *,
    tau: int | None = None,
    sqrt_choice: int = 0,
    field: ExtField | None = None,
) -> ConcreteRep:
    """The four-dimensional mod-p representation attached to the descriptor's group."""
    check_prime(desc, p)
    check_constraints(desc)
    field = field_for_descriptor(desc, p) if field is None else field
    t = desc.tau if tau is None else tau
    if t % p == 0:
        raise RealizabilityError(f"tau = {t} vanishes mod {p}")
    ell = desc.ell
    group = desc.group
    if group in (GroupLabel.I, GroupLabel.II, GroupLabel.III, GroupLabel.IV, GroupLabel.V, GroupLabel.VI):
        chars = _torus_chars(desc)
        frob = linalg.diagonal(field, [tamerep.frob_value(c, field, sqrt_choice) for c in chars])
        inertia = linalg.diagonal(field, [tamerep.inertia_value(c, field) for c in chars])
        nilpotent = _torus_nilpotent(group, field)
        if nilpotent is not None:
            inertia = inertia @ linalg.mat_exp_nilpotent(nilpotent, t)
        rep = tamerep.ConcreteRep.fit(field, ell, frob, inertia)
    elif group in (GroupLabel.VII, GroupLabel.VIII, GroupLabel.IX):
        assert desc.psi is not None
        rho = tamerep.dihedral_rep(desc.psi.theta, field, sqrt_choice)
        s = linalg.diagonal(field, [field.one, -field.one])
        flipped = tamerep.ConcreteRep(field, rho.group, s @ rho.frob @ s, s @ rho.inertia @ s)
        rep = tamerep.direct_sum([rho, tamerep.twist(flipped, desc.similitude_twist, sqrt_choice)])
    elif group is GroupLabel.X:
        assert desc.psi is not None
        rho = tamerep.dihedral_rep(desc.psi.theta, field, sqrt_choice)
        omega = tamerep.character_rep(desc.psi.determinant, field, sqrt_choice)
        one = tamerep.character_rep(SymChar.trivial(ell), field)
        rep = tamerep.direct_sum([omega, rho, one])
    elif group is GroupLabel.XI:
        assert desc.psi is not None
        rho = tamerep.dihedral_rep(desc.psi.theta, field, sqrt_choice)
        st2 = tamerep.steinberg_rep(SteinbergKind.St2, t, field, ell, sqrt_choice)
        rep = tamerep.permute(tamerep.direct_sum([st2, rho]), (0, 2, 3, 1))
    elif group is GroupLabel.SCIrreducible:
        assert desc.psi is not None
        # A regular biquadratic theta never has a symplectic form, so the constraints leave the quartic kind.
        rep = tamerep.induce_quartic_symplectic(desc.psi.theta, field, sqrt_choice)
    else:
        assert desc.psi is not None and desc.psi2 is not None
        first = tamerep.dihedral_rep(desc.psi.theta, field, sqrt_choice)
        second = tamerep.dihedral_rep(desc.psi2.theta, field, sqrt_choice)
        rep = tamerep.permute(tamerep.direct_sum([first, second]), (0, 2, 3, 1))
    if desc.sigma is not None:
        rep = tamerep.twist(rep, desc.sigma, sqrt_choice)
    return rep


_FILTRATIONS: dict[GroupLabel, Filtration] = {
    GroupLabel.V: ((0,), (3,), (1,), (2,)),
    GroupLabel.VI: ((0,), (3,), (1,), (2,)),
    GroupLabel.VII: ((0, 1), (2, 3)),
    GroupLabel.VIII: ((0, 1), (2, 3)),
    GroupLabel.IX: ((0, 1), (2, 3)),
    GroupLabel.X: ((0,), (1, 2), (3,)),
    GroupLabel.XI: ((0,), (3,), (1, 2)),
    GroupLabel.SCIrreducible: ((0, 1, 2, 3),),
    GroupLabel.SCPair: ((0, 3), (1, 2)),
}


def canonical_filtration(desc: LocalTypeDescriptor) -> Filtration:
    """Jordan-Holder blocks of the concretization, bottom first; the generators are block upper triangular."""
    return _FILTRATIONS.get(desc.group, ((0,), (1,), (2,), (3,)))


def _check_filtration(rep: ConcreteRep, filtration: Filtration) -> None:
    flat = [i for blk in filtration for i in blk]
    if sorted(flat) != list(range(rep.dim)):
        raise Gsp4ObsError("filtration blocks must partition the basis")
    position = {i: k for k, blk in enumerate(filtration) for i in blk}
    for m in (rep.frob, rep.inertia):
        for i in range(rep.dim):
            for j in range(rep.dim):
                if position[i] > position[j] and not m[i, j].is_zero():
                    raise Gsp4ObsError("representation does not preserve the filtration")


def semisimplify(rep: ConcreteRep, filtration: Filtration) -> ConcreteRep:
    """Direct sum of the graded pieces of the filtration."""
    _check_filtration(rep, filtration)
    return tamerep.direct_sum([tamerep.block(rep, blk) for blk in filtration])


def is_generic(rep: ConcreteRep, filtration: Filtration) -> bool:
    """Whenever a factor Q_i is some Q_j(1), it is Q_{i+1}(1) with an inertially non-split extension between them.

    Further isomorphic pairs away from i + 1 are allowed; they arise when a character repeats.
    """
    _check_filtration(rep, filtration)
    factors = [tamerep.block(rep, blk) for blk in filtration]
    nu = SymChar.nu(rep.ell)
    shifted = [tamerep.twist(q, nu) for q in factors]

    def isomorphic(i: int, j: int) -> bool:
        return factors[i].dim == shifted[j].dim and tamerep.hom_dimension(shifted[j], factors[i]) > 0

    for i in range(len(factors)):
        if not any(isomorphic(i, j) for j in range(len(factors))):
            continue
        if i + 1 == len(factors) or not isomorphic(i, i + 1):
            return False
        if all(rep.inertia[a, b].is_zero() for a in filtration[i] for b in filtration[i + 1]):
            return False
    return True
