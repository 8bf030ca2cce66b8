"""Tests for tame characters, the finite tame model and its representations."""

from fractions import Fraction

import pytest

from gsp4obs import linalg, tamerep
from gsp4obs.errors import ConstraintViolation, Gsp4ObsError, RealizabilityError
from gsp4obs.ff import ExtField, field_make
from gsp4obs.symplectic import similitude
from gsp4obs.tamerep import ConcreteRep, ExtensionKind, SteinbergKind, SymChar, TameGroup


class TestSymChar:
    """Tests for symbolic characters."""

    def test_normalises_roots(self) -> None:
        chi = SymChar(5, frob=Fraction(4, 3))
        assert chi.frob == Fraction(1, 3)
        assert chi.frob_order == 3

    def test_rejects_non_half_integral_cyclo(self) -> None:
        with pytest.raises(Gsp4ObsError):
            SymChar(5, cyclo=Fraction(1, 3))

    def test_inertia_order_must_be_tame(self) -> None:
        with pytest.raises(Gsp4ObsError):
            SymChar(3, inertia=Fraction(1, 4))
        assert SymChar(3, inertia=Fraction(1, 8), kind=ExtensionKind.Unramified).inertia_order == 8

    def test_group_law(self) -> None:
        chi = SymChar.make(7, frob_order=3, frob_exp=1, cyclo_exp=Fraction(1, 2))
        assert (chi * chi.inverse()).is_trivial()
        assert chi**3 == SymChar.nu(7, Fraction(3, 2))

    def test_needs_sqrt(self) -> None:
        assert SymChar.nu(3, Fraction(1, 2)).needs_sqrt()
        assert not SymChar.nu(3, Fraction(1, 2), ExtensionKind.Unramified).needs_sqrt()

    def test_restrict(self) -> None:
        chi = SymChar(5, frob=Fraction(1, 3), inertia=Fraction(1, 4))
        assert chi.restrict(ExtensionKind.Unramified).frob == Fraction(2, 3)
        assert chi.restrict(ExtensionKind.Ramified).inertia == Fraction(1, 2)
        assert chi.restrict(ExtensionKind.Biquadratic).inertia == Fraction(1, 2)

    def test_restrict_through_quadratic(self) -> None:
        """Restricting in two steps agrees with restricting directly."""
        chi = SymChar(5, frob=Fraction(1, 3), inertia=Fraction(1, 4), cyclo=1)
        for kind in tamerep.QUADRATIC_KINDS:
            two_steps = chi.restrict(kind).restrict(ExtensionKind.Biquadratic)
            assert two_steps == chi.restrict(ExtensionKind.Biquadratic)

    def test_conjugates(self) -> None:
        theta = SymChar(3, inertia=Fraction(1, 8), kind=ExtensionKind.Biquadratic)
        conjugates = theta.conjugates()
        assert len(conjugates) == 4
        assert len(set(conjugates)) == 4
        assert conjugates[1].inertia == Fraction(3, 8)

    def test_quartic_conjugates(self) -> None:
        theta = SymChar(3, inertia=Fraction(1, 5), kind=ExtensionKind.Quartic)
        assert [c.inertia for c in theta.conjugates()] == [Fraction(k, 5) for k in (1, 2, 4, 3)]
        assert SymChar(3, frob=Fraction(1, 8)).restrict(ExtensionKind.Quartic).frob == Fraction(1, 2)

    def test_extend_to_base(self) -> None:
        chi = SymChar(5, frob=Fraction(1, 3), inertia=Fraction(1, 4), cyclo=1)
        for kind in (*tamerep.QUADRATIC_KINDS, ExtensionKind.Biquadratic, ExtensionKind.Quartic):
            extended = tamerep.extend_to_base(chi.restrict(kind))
            assert extended is not None
            assert extended.restrict(kind) == chi.restrict(kind)
        assert tamerep.extend_to_base(SymChar(5, inertia=Fraction(1, 8), kind=ExtensionKind.Unramified)) is None

    def test_galois_conjugate(self) -> None:
        chi = SymChar(7, frob=Fraction(1, 3), cyclo=1)
        assert chi.galois_conjugate(2) == SymChar(7, frob=Fraction(2, 3), cyclo=1)

    def test_transfer_of_trivial_is_quadratic(self) -> None:
        for kind in tamerep.QUADRATIC_KINDS:
            theta = SymChar.trivial(5, kind)
            assert tamerep.transfer_determinant(theta) == tamerep.quadratic_character(kind, 5)


class TestEvaluation:
    """Tests for character values through the fixed embedding."""

    def test_trivial(self, f7) -> None:
        assert tamerep.char_eval(SymChar.trivial(3), f7, (1, 1)).is_one()

    def test_cyclotomic_at_frobenius(self, f7) -> None:
        assert tamerep.frob_value(SymChar.nu(3), f7) == f7.element(3)

    def test_half_power_uses_chosen_root(self, f7) -> None:
        half = SymChar.nu(2, Fraction(1, 2))
        field = tamerep.field_for(7, [half])
        assert field == f7
        assert tamerep.frob_value(half, field, 0) == f7.element(3)
        assert tamerep.frob_value(half, field, 1) == f7.element(4)

    def test_field_for_adjoins_missing_root(self) -> None:
        field = tamerep.field_for(7, [SymChar.nu(3, Fraction(1, 2))])
        assert field.order == 49

    def test_p_part_is_dropped(self, f7) -> None:
        assert tamerep.root_value(f7, Fraction(1, 7)).is_one()

    def test_sqrt_choice_range(self, f7) -> None:
        with pytest.raises(Gsp4ObsError):
            tamerep.sqrt_ell(f7, 2, 2)

    def test_missing_sqrt(self, f7) -> None:
        with pytest.raises(RealizabilityError):
            tamerep.sqrt_ell(f7, 3)


class TestTameGroup:
    """Tests for the finite tame model."""

    def test_relation(self) -> None:
        TameGroup(3, 2, 8)
        with pytest.raises(Gsp4ObsError):
            TameGroup(3, 1, 8)

    def test_covering(self) -> None:
        group = TameGroup.covering(3, 1, 8)
        assert (group.r, group.m) == (2, 8)
        with pytest.raises(RealizabilityError):
            TameGroup.covering(3, 1, 6)

    def test_multiplication_is_associative(self) -> None:
        group = TameGroup(3, 2, 8)
        elements = list(group.elements())
        for x in elements[::3]:
            for y in elements[::5]:
                for z in elements[::7]:
                    assert group.mul(group.mul(x, y), z) == group.mul(x, group.mul(y, z))

    def test_subgroups_have_expected_index(self) -> None:
        group = TameGroup(3, 4, 8)
        for kind in ExtensionKind:
            size = sum(group.in_subgroup(e, kind) for e in group.elements())
            assert size * kind.index == group.order


class TestSteinberg:
    """Tests for the Steinberg-type parameters."""

    @pytest.mark.parametrize("kind", list(SteinbergKind))
    @pytest.mark.parametrize(("p", "ell"), [(5, 2), (5, 3), (7, 3), (11, 5), (13, 2)])
    def test_compatible(self, kind, p, ell) -> None:
        field = tamerep.field_for(p, [SymChar.nu(ell, Fraction(1, 2))])
        assert all(tamerep.steinberg_compatible(kind, field, ell, s) for s in (0, 1))

    def test_st2_unipotent(self) -> None:
        field = tamerep.field_for(5, [SymChar.nu(3, Fraction(1, 2))])
        assert field.order == 25
        rep = tamerep.steinberg_rep(SteinbergKind.St2, 1, field, 3)
        assert rep.inertia == linalg.identity(field, 2) + SteinbergKind.St2.nilpotent(field)

    def test_st4_corner(self, f49) -> None:
        rep = tamerep.steinberg_rep(SteinbergKind.St4, 1, f49, 3)
        assert rep.inertia[0, 3] == f49.one

    @pytest.mark.parametrize("kind", [SteinbergKind.St22, SteinbergKind.St4])
    def test_symplectic_images(self, f49, kind) -> None:
        rep = tamerep.steinberg_rep(kind, 2, f49, 3)
        assert similitude(rep.frob) is not None
        assert similitude(rep.inertia) is not None

    def test_opposite_signs_are_symplectic(self, f49) -> None:
        """St2(t) + St2(-t) on (e1, e4) and (e2, e3) lands in GSp4."""
        plus = tamerep.steinberg_rep(SteinbergKind.St2, 1, f49, 3)
        minus = tamerep.steinberg_rep(SteinbergKind.St2, -1, f49, 3)
        rep = tamerep.permute(tamerep.direct_sum([plus, minus]), (0, 2, 3, 1))
        assert similitude(rep.frob) is not None
        assert similitude(rep.inertia) is not None

    def test_characteristic_equal_to_ell(self) -> None:
        with pytest.raises(RealizabilityError):
            tamerep.steinberg_rep(SteinbergKind.St2, 1, field_make(5, 2), 5)


class TestConstructions:
    """Tests for twists, sums, tensors and inductions."""

    def test_twist_round_trip(self, f49) -> None:
        st = tamerep.steinberg_rep(SteinbergKind.St3, 1, f49, 3)
        nu = SymChar.nu(3)
        back = tamerep.twist(tamerep.twist(st, nu), nu.inverse())
        assert back.frob == st.frob
        assert back.inertia == st.inertia

    def test_trivial_twist(self, f49) -> None:
        st = tamerep.steinberg_rep(SteinbergKind.St2, 1, f49, 3)
        twisted = tamerep.twist(st, SymChar.trivial(3))
        assert (twisted.frob, twisted.inertia) == (st.frob, st.inertia)

    def test_direct_sum_of_trivials(self, f7) -> None:
        one = tamerep.character_rep(SymChar.trivial(3), f7)
        rep = tamerep.direct_sum([one, one])
        assert rep.dim == 2
        assert rep.frob.is_identity() and rep.inertia.is_identity()

    def test_dual_pairs_to_trivial(self, f49) -> None:
        st = tamerep.steinberg_rep(SteinbergKind.St2, 1, f49, 3)
        one = tamerep.character_rep(SymChar.trivial(3), f49)
        assert tamerep.hom_dimension(one, tamerep.tensor(st, tamerep.dual(st))) == 1

    def test_sym_power_dimension(self, f49) -> None:
        st = tamerep.steinberg_rep(SteinbergKind.St2, 1, f49, 3)
        assert tamerep.sym_power(st, 6).dim == 7

    def test_relation_is_checked(self, f7) -> None:
        frob = linalg.identity(f7, 2)
        inertia = linalg.diagonal(f7, [f7.element(2), f7.one])
        with pytest.raises(RealizabilityError):
            ConcreteRep(f7, TameGroup(2, 2, 3), frob, inertia)

    def test_trivial_dihedral_splits(self, f7) -> None:
        """Ind of the trivial character is 1 plus the quadratic character."""
        theta = SymChar.trivial(3, ExtensionKind.Unramified)
        rep = tamerep.dihedral_rep(theta, f7)
        one = tamerep.character_rep(SymChar.trivial(3), f7)
        eta = tamerep.character_rep(tamerep.quadratic_character(ExtensionKind.Unramified, 3), f7)
        assert tamerep.hom_dimension(one, rep) == 1
        assert tamerep.hom_dimension(eta, rep) == 1

    def test_regular_dihedral_is_irreducible(self) -> None:
        theta = SymChar(3, inertia=Fraction(1, 8), kind=ExtensionKind.Unramified)
        field = tamerep.field_for(7, [theta])
        rep = tamerep.dihedral_rep(theta, field)
        assert tamerep.hom_dimension(rep, rep) == 1

    def test_trivial_biquadratic_is_permutation(self, f7) -> None:
        theta = SymChar.trivial(3, ExtensionKind.Biquadratic)
        rep = tamerep.induce_biquadratic(theta, f7)
        one = tamerep.character_rep(SymChar.trivial(3), f7)
        assert tamerep.hom_dimension(one, rep) == 1
        assert tamerep.hom_dimension(rep, rep) == 4

    def test_regular_biquadratic_is_irreducible(self) -> None:
        theta = SymChar(3, inertia=Fraction(1, 8), kind=ExtensionKind.Biquadratic)
        field = tamerep.field_for(7, [theta])
        rep = tamerep.induce_biquadratic(theta, field)
        assert tamerep.hom_dimension(rep, rep) == 1

    def test_dihedral_needs_odd_ell(self) -> None:
        theta = SymChar.trivial(2, ExtensionKind.Unramified)
        with pytest.raises(ConstraintViolation):
            tamerep.dihedral_rep(theta, field_make(7, 1))

    def test_permute_validates(self, f7) -> None:
        rep = tamerep.character_rep(SymChar.trivial(3), f7)
        with pytest.raises(Gsp4ObsError):
            tamerep.permute(rep, (1,))


class TestQuarticInduction:
    """Tests for induction from <F^4, u>."""

    theta = SymChar(3, frob=Fraction(1, 3), inertia=Fraction(1, 5), kind=ExtensionKind.Quartic)

    def _field(self, p: int) -> ExtField:
        similitude_char = tamerep.quartic_similitude(self.theta)
        assert similitude_char is not None
        return tamerep.field_for(p, [self.theta, similitude_char])

    def test_frobenius_fourth_power_is_scalar(self) -> None:
        field = self._field(11)
        rep = tamerep.induce_quartic(self.theta, field)
        t_f = tamerep.frob_value(self.theta, field)
        assert rep.frob**4 == linalg.identity(field, 4) * t_f

    def test_similitude(self) -> None:
        field = self._field(11)
        rep = tamerep.induce_quartic_symplectic(self.theta, field)
        c = tamerep.quartic_similitude(self.theta)
        assert similitude(rep.frob) == tamerep.frob_value(c, field)
        assert similitude(rep.inertia) == tamerep.inertia_value(c, field)

    def test_change_of_basis(self) -> None:
        field = self._field(11)
        plain = tamerep.induce_quartic(self.theta, field)
        symplectic = tamerep.induce_quartic_symplectic(self.theta, field)
        assert tamerep.hom_dimension(plain, symplectic) == 1

    def test_needs_form(self, f7) -> None:
        theta = SymChar(3, inertia=Fraction(1, 80), kind=ExtensionKind.Quartic)
        assert tamerep.quartic_similitude(theta) is None
        with pytest.raises(ConstraintViolation):
            tamerep.induce_quartic_symplectic(theta, f7)

    def test_wrong_kind(self, f7) -> None:
        with pytest.raises(Gsp4ObsError, match="<F\\^4, u>"):
            tamerep.induce_quartic(SymChar.trivial(3, ExtensionKind.Unramified), f7)
