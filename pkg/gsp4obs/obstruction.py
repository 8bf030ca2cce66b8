"""Invariants H^0(G_ell, -) of concrete representations and the decomposition checks built on them."""

from __future__ import annotations

import dataclasses
from fractions import Fraction
from typing import TYPE_CHECKING

from . import linalg, tamerep
from .errors import Gsp4ObsError
from .localtype import (
    GroupLabel,
    LocalTypeDescriptor,
    character_units,
    concretize,
    embedding_units,
    field_for_descriptor,
    galois_conjugate,
    torus_weights,
)
from .symplectic import SP4_POSITIONS, gl_basis, sl2_basis
from .tamerep import ExtensionKind, SteinbergKind, SymChar

if TYPE_CHECKING:
    from .ff import ExtField
    from .linalg import Vector
    from .symplectic import AdjointBasis
    from .tamerep import ConcreteRep, GroupElt


@dataclasses.dataclass(frozen=True)
class H0Report:
    """Dimension and basis of a space of invariants."""

    dimension: int
    basis: tuple[Vector, ...]
    method: str = "oracle"
    label: str = ""
    p: int | None = None
    sqrt_choice: int = 0

    def __post_init__(self) -> None:
        if self.method == "oracle" and self.dimension != len(self.basis):
            raise Gsp4ObsError("dimension must equal the number of basis vectors")


def h0_oracle(rep: ConcreteRep, twist: SymChar | None = None, sqrt_choice: int = 0) -> H0Report:
    """Joint fixed space of chi(F) R_F and chi(u) R_u."""
    field = rep.field
    frob, inertia = rep.frob, rep.inertia
    if twist is not None:
        frob = frob * tamerep.frob_value(twist, field, sqrt_choice)
        inertia = inertia * tamerep.inertia_value(twist, field)
    eye = linalg.identity(field, rep.dim)
    basis = linalg.kernel_basis(linalg.vstack([frob - eye, inertia - eye]))
    return H0Report(len(basis), basis, p=field.p, sqrt_choice=sqrt_choice)


def adjoint_invariants(
    rep: ConcreteRep,
    cyclotwist: bool = True,
    basis: AdjointBasis | None = None,
    sqrt_choice: int = 0,
) -> H0Report:
    """H^0 of ad(rep), optionally Tate-twisted; sp4 unless another basis is given."""
    ad = tamerep.adjoint_rep(rep, basis)
    twist = SymChar.nu(rep.ell) if cyclotwist else None
    return h0_oracle(ad, twist, sqrt_choice)


def endomorphism_invariants(rep: ConcreteRep, cyclotwist: bool = True) -> H0Report:
    """H^0 of End(V), optionally Tate-twisted; needs no invariant form."""
    return adjoint_invariants(rep, cyclotwist, gl_basis(rep.field, rep.dim))


def induction_invariants(theta: SymChar, p: int, cyclotwist: bool = True) -> H0Report:
    """H^0 of End(Ind theta), optionally Tate-twisted, for a character of an index-4 subgroup."""
    field = tamerep.field_for(p, [theta])
    match theta.kind:
        case ExtensionKind.Biquadratic:
            rep = tamerep.induce_biquadratic(theta, field)
        case ExtensionKind.Quartic:
            rep = tamerep.induce_quartic(theta, field)
        case _:
            raise Gsp4ObsError(f"no index-4 induction from the {theta.kind} subgroup")
    return dataclasses.replace(endomorphism_invariants(rep, cyclotwist), p=p)


def is_induction_obstructed(theta: SymChar, p: int) -> bool:
    """Nonzero invariants of End(Ind theta)(1) for some embedding of theta's values."""
    return any(induction_invariants(theta.galois_conjugate(k), p).dimension > 0 for k in character_units([theta], p))


def obstruction_invariants(
    desc: LocalTypeDescriptor,
    p: int,
    *,
    tau: int | None = None,
    sqrt_choice: int = 0,
    cyclotwist: bool = True,
) -> H0Report:
    """H^0(G_ell, ad rho(1)) for a descriptor at p."""
    rep = concretize(desc, p, tau=tau, sqrt_choice=sqrt_choice)
    report = adjoint_invariants(rep, cyclotwist, sqrt_choice=sqrt_choice)
    return dataclasses.replace(report, label=desc.label(), sqrt_choice=sqrt_choice)


def embedding_variants(desc: LocalTypeDescriptor, p: int) -> list[tuple[int, LocalTypeDescriptor, int]]:
    """(unit k, conjugated descriptor, square root choice) for every embedding of the character values into F_p-bar."""
    conjugates: dict[LocalTypeDescriptor, int] = {}
    for k in embedding_units(desc, p):
        conjugates.setdefault(galois_conjugate(desc, k), k)
    needs_sqrt = desc.group.has_nilpotent or any(c.needs_sqrt() for c in desc.characters())
    choices = (0, 1) if needs_sqrt else (0,)
    return [(k, d, s) for d, k in conjugates.items() for s in choices]


def is_obstructed(desc: LocalTypeDescriptor, p: int, tau: int | None = None) -> bool:
    """Nonzero invariants for some embedding and some choice of square root of ell."""
    return any(
        obstruction_invariants(d, p, tau=tau, sqrt_choice=s).dimension > 0 for _, d, s in embedding_variants(desc, p)
    )


def steinberg_h0_identity(
    kind: SteinbergKind,
    chi: SymChar,
    p: int,
    ell: int,
    tau: int = 1,
    sqrt_choice: int = 0,
) -> tuple[int, int]:
    """(dim H^0(St(t) (x) chi), sum of dim H^0(chi nu^w) over the weights w on ker N)."""
    field = tamerep.field_for(p, [chi, SymChar.nu(ell, kind.weights[0])])
    st = tamerep.steinberg_rep(kind, tau, field, ell, sqrt_choice)
    lhs = h0_oracle(tamerep.twist(st, chi, sqrt_choice)).dimension
    rhs = sum(
        h0_oracle(tamerep.character_rep(chi * SymChar.nu(ell, w), field, sqrt_choice)).dimension
        for w in kind.kernel_weights
    )
    return lhs, rhs


# Decompositions of the adjoint representation.


@dataclasses.dataclass(frozen=True)
class DecompositionReport:
    label: str
    p: int
    passed: bool
    elements_checked: int
    mismatch: GroupElt | None
    h0_lhs: tuple[int, int]
    h0_rhs: tuple[int, int]

    @property
    def detail(self) -> str:
        if self.passed:
            return f"traces agree at {self.elements_checked} elements; H0 {self.h0_lhs}"
        if self.mismatch is not None:
            return f"trace mismatch at u^{self.mismatch[1]} F^{self.mismatch[0]}"
        return f"H0 mismatch: {self.h0_lhs} vs {self.h0_rhs}"


def _characters(chars: list[SymChar], field: ExtField, sqrt_choice: int) -> list[ConcreteRep]:
    return [tamerep.character_rep(c, field, sqrt_choice) for c in chars]


def decomposition_rhs(desc: LocalTypeDescriptor, field: ExtField, tau: int, sqrt_choice: int = 0) -> ConcreteRep:
    """The direct sum the adjoint representation is claimed to decompose into."""
    ell = desc.ell
    one = SymChar.trivial(ell)

    def st(kind: SteinbergKind, t: int) -> ConcreteRep:
        return tamerep.steinberg_rep(kind, t, field, ell, sqrt_choice)

    def tw(rep: ConcreteRep, chi: SymChar) -> ConcreteRep:
        return tamerep.twist(rep, chi, sqrt_choice)

    def dihedral(key: str = "psi") -> ConcreteRep:
        datum = getattr(desc, key)
        return tamerep.dihedral_rep(datum.theta, field, sqrt_choice)

    def ad0(rep: ConcreteRep) -> ConcreteRep:
        return tamerep.adjoint_rep(rep, sl2_basis(field))

    pieces: list[ConcreteRep]
    match desc.group:
        case GroupLabel.I:
            chars = torus_weights(desc)
            pieces = _characters([chars[i] / chars[j] for i, j in SP4_POSITIONS], field, sqrt_choice)
        case GroupLabel.II:
            assert desc.chi is not None
            chi = desc.chi
            pieces = _characters([one, chi**2, chi**-2], field, sqrt_choice)
            pieces += [tw(st(SteinbergKind.St2, tau), chi), tw(st(SteinbergKind.St2, tau), chi.inverse())]
            pieces.append(st(SteinbergKind.St3, tau))
        case GroupLabel.III:
            assert desc.chi is not None
            pieces = [
                tw(st(SteinbergKind.St3, tau), desc.chi),
                tw(st(SteinbergKind.St3, -tau), desc.chi.inverse()),
                st(SteinbergKind.St22, tau),
            ]
        case GroupLabel.IV:
            pieces = [st(SteinbergKind.St3, tau), tamerep.sym_power(st(SteinbergKind.St2, tau), 6)]
        case GroupLabel.V | GroupLabel.VI:
            xi = desc.xi if desc.group is GroupLabel.V and desc.xi is not None else one
            pieces = [st(SteinbergKind.St3, tau), st(SteinbergKind.St3, tau), tw(st(SteinbergKind.St22, tau), xi)]
        case GroupLabel.VII | GroupLabel.VIII | GroupLabel.IX:
            rho = dihedral()
            chi = desc.similitude_twist
            pieces = [tamerep.adjoint_rep(rho, gl_basis(field, 2)), tw(ad0(rho), chi), tw(ad0(rho), chi.inverse())]
        case GroupLabel.X:
            assert desc.psi is not None
            rho = dihedral()
            omega = desc.psi.determinant
            pieces = _characters([one, omega, omega.inverse()], field, sqrt_choice)
            pieces += [rho, tw(rho, omega.inverse()), ad0(rho)]
        case GroupLabel.XI:
            rho = dihedral()
            twisted = tamerep.tensor(st(SteinbergKind.St2, tau), tamerep.dual(rho))
            pieces = [st(SteinbergKind.St3, tau), ad0(rho), twisted]
        case GroupLabel.SCPair:
            first, second = dihedral("psi"), dihedral("psi2")
            pieces = [ad0(first), ad0(second), tamerep.tensor(first, tamerep.dual(second))]
        case GroupLabel.SCIrreducible:
            assert desc.psi is not None
            theta = desc.psi.theta
            conj = theta.conjugates()
            kappa = [SymChar(ell, frob=Fraction(k, 4)) for k in (1, 3)]
            pieces = _characters(kappa, field, sqrt_choice)
            pieces += [tamerep.induce_quartic(psi, field, sqrt_choice) for psi in (theta / conj[2], conj[1] / theta)]
    return tamerep.direct_sum(pieces)


def verify_decomposition(
    desc: LocalTypeDescriptor,
    p: int,
    *,
    tau: int | None = None,
    sqrt_choice: int = 0,
) -> DecompositionReport:
    """Compare ad(rho) with the claimed direct sum: traces at every element, then H^0 under twists 1 and nu."""
    field = field_for_descriptor(desc, p)
    t = desc.tau if tau is None else tau
    rep = concretize(desc, p, tau=t, sqrt_choice=sqrt_choice, field=field)
    lhs = tamerep.adjoint_rep(rep)
    rhs = decomposition_rhs(desc, field, t, sqrt_choice)
    group = lhs.group.join(rhs.group)
    lhs, rhs = lhs.with_group(group), rhs.with_group(group)
    nu = SymChar.nu(desc.ell)
    h0_lhs = (h0_oracle(lhs).dimension, h0_oracle(lhs, nu).dimension)
    h0_rhs = (h0_oracle(rhs).dimension, h0_oracle(rhs, nu).dimension)
    mismatch = None
    checked = 0
    if lhs.dim == rhs.dim:
        for elt in group.elements():
            checked += 1
            if lhs.trace_at(elt) != rhs.trace_at(elt):
                mismatch = elt
                break
    else:
        mismatch = (0, 0)
    passed = mismatch is None and h0_lhs == h0_rhs
    return DecompositionReport(desc.label(), p, passed, checked, mismatch, h0_lhs, h0_rhs)
