"""Tests for exact linear algebra over finite fields."""

import pytest

from gsp4obs import linalg
from gsp4obs.errors import Gsp4ObsError, RealizabilityError
from gsp4obs.ff import field_make
from gsp4obs.tamerep import SteinbergKind


class TestKernel:
    """Tests for kernel_basis and rank."""

    def test_identity_has_trivial_kernel(self, f7) -> None:
        assert linalg.kernel_basis(linalg.identity(f7, 4)) == ()

    def test_zero_matrix(self, f7) -> None:
        basis = linalg.kernel_basis(linalg.zeros(f7, 4))
        assert len(basis) == 4

    def test_single_nilpotent(self, f7) -> None:
        n1 = SteinbergKind.St2.nilpotent(f7)
        assert linalg.kernel_basis(n1) == ((f7.one, f7.zero),)

    def test_kernel_vectors_are_annihilated(self, f7) -> None:
        m = linalg.from_rows(f7, [[1, 2, 3, 4], [2, 4, 6, 1], [3, 6, 2, 5]])
        basis = linalg.kernel_basis(m)
        assert len(basis) == 4 - linalg.rank(m)
        for v in basis:
            assert all(x.is_zero() for x in linalg.apply(m, v))

    def test_rank(self, f7) -> None:
        m = linalg.from_rows(f7, [[1, 2], [2, 4]])
        assert linalg.rank(m) == 1
        assert linalg.rank(linalg.identity(f7, 3)) == 3


class TestInverse:
    """Tests for inversion and powers."""

    def test_inverse(self, f49) -> None:
        g = linalg.from_rows(f49, [[1, 2, 0], [0, 1, 5], [3, 0, 1]])
        assert (g @ linalg.inverse(g)).is_identity()
        assert (linalg.power(g, -2) @ linalg.power(g, 2)).is_identity()

    def test_singular(self, f7) -> None:
        with pytest.raises(Gsp4ObsError):
            linalg.inverse(linalg.from_rows(f7, [[1, 2], [2, 4]]))

    def test_shape_mismatch(self, f7) -> None:
        with pytest.raises(Gsp4ObsError):
            _ = linalg.identity(f7, 2) @ linalg.identity(f7, 3)


class TestExponential:
    """Tests for exp of nilpotent matrices."""

    def test_zero_gives_identity(self, f7) -> None:
        assert linalg.mat_exp_nilpotent(linalg.zeros(f7, 4), 3).is_identity()

    def test_square_zero(self) -> None:
        f5 = field_make(5, 1)
        n1 = SteinbergKind.St2.nilpotent(f5)
        assert linalg.mat_exp_nilpotent(n1, 1) == linalg.identity(f5, 2) + n1

    def test_cubic_truncation(self, f7) -> None:
        """The (1,4) entry of exp(N4) is -1/6, which is 1 in F_7."""
        n4 = SteinbergKind.St4.nilpotent(f7)
        e = linalg.mat_exp_nilpotent(n4, 1)
        assert e[0, 3] == f7.one
        assert e[0, 2] == f7.element(2).inverse()
        assert linalg.nilpotency_degree(n4) == 4

    def test_exp_is_a_homomorphism(self, f7) -> None:
        n4 = SteinbergKind.St4.nilpotent(f7)
        lhs = linalg.mat_exp_nilpotent(n4, 2) @ linalg.mat_exp_nilpotent(n4, 3)
        assert lhs == linalg.mat_exp_nilpotent(n4, 5)

    def test_characteristic_too_small(self) -> None:
        f3 = field_make(3, 1)
        with pytest.raises(RealizabilityError):
            linalg.mat_exp_nilpotent(SteinbergKind.St4.nilpotent(f3), 1)

    def test_not_nilpotent(self, f7) -> None:
        with pytest.raises(Gsp4ObsError):
            linalg.nilpotency_degree(linalg.identity(f7, 2))


class TestInvolutionConjugacy:
    """Tests for conjugacy_test_order2."""

    def test_identity(self, f7) -> None:
        eye = linalg.identity(f7, 4)
        assert linalg.conjugacy_test_order2(eye, eye)

    def test_same_signature(self, f7) -> None:
        g = linalg.diagonal(f7, [f7.element(x) for x in (1, -1, -1, 1)])
        h = linalg.diagonal(f7, [f7.element(x) for x in (1, -1, 1, -1)])
        assert linalg.conjugacy_test_order2(g, h)

    def test_different_signature(self, f7) -> None:
        g = linalg.diagonal(f7, [f7.element(x) for x in (1, 1, 1, -1)])
        h = linalg.diagonal(f7, [f7.element(x) for x in (1, -1, -1, 1)])
        assert not linalg.conjugacy_test_order2(g, h)

    def test_rejects_non_involution(self, f7) -> None:
        g = linalg.diagonal(f7, [f7.element(x) for x in (2, 1, 1, 1)])
        with pytest.raises(Gsp4ObsError):
            linalg.conjugacy_test_order2(g, g)
