from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from postlie_sl2 import mateq
from postlie_sl2.linalg import GaussianRational, Mat3, Vec3
from postlie_sl2.sl2 import (
    LIE_BRACKET,
    NotAdjointForm,
    StructureConstants,
    bracket,
    bracket_via_2x2,
    check_jacobi,
    check_postlie,
    check_rota_baxter,
    circ_from_matrix,
    derived_bracket,
    matrix_from_circ,
)

from conftest import exact_congruate, gr, sampled_tags

rationals = st.fractions(
    min_value=Fraction(-3), max_value=Fraction(3), max_denominator=6
)
gaussians = st.builds(GaussianRational, rationals, rationals)
exact_mats = st.lists(gaussians, min_size=9, max_size=9).map(
    lambda e: Mat3([e[0:3], e[3:6], e[6:9]])
)

E = [Vec3.basis(i) for i in range(3)]


class TestBracket:
    def test_table(self):
        assert bracket(E[1], E[2]) == E[0]
        assert bracket(E[2], E[0]) == E[1]
        assert bracket(E[0], E[1]) == E[2]

    @given(st.lists(gaussians, min_size=3, max_size=3))
    def test_alternating(self, coords):
        x = Vec3(coords)
        assert bracket(x, x).is_zero()

    def test_lie_bracket_constant_is_valid(self):
        assert not check_jacobi(LIE_BRACKET)


class TestBracketVia2x2:
    def test_basis_pairs(self):
        for i in range(3):
            for j in range(3):
                assert bracket_via_2x2(E[i], E[j]) == bracket(E[i], E[j])

    def test_random_floating_pairs(self):
        rng = np.random.default_rng(17)
        for _ in range(100):
            x = Vec3((rng.standard_normal(3) + 1j * rng.standard_normal(3)).tolist())
            y = Vec3((rng.standard_normal(3) + 1j * rng.standard_normal(3)).tolist())
            diff = bracket_via_2x2(x, y) - bracket(x, y)
            assert diff.max_abs() < 1e-12

    def test_self_bracket_zero(self):
        assert bracket_via_2x2(E[0], E[0]).is_zero()


class TestCircFromMatrix:
    def test_zero(self):
        c = circ_from_matrix(Mat3.zero())
        assert all(c.product(i, j).is_zero() for i in range(3) for j in range(3))

    def test_minus_identity(self):
        c = circ_from_matrix(-Mat3.identity())
        for i in range(3):
            for j in range(3):
                assert c.product(i, j) == bracket(-E[i], E[j])

    def test_family3_products(self):
        A = mateq.representative(mateq.FamilyTag.trace_minus_2())
        c = circ_from_matrix(A)
        # images written out exactly as the classification states them
        f2 = E[1].scale(gr(Fraction(-1, 2), Fraction(-1, 2))) + E[2].scale(
            gr(Fraction(-1, 2), Fraction(1, 2))
        )
        for j in range(3):
            assert c.product(0, j) == bracket(-E[0], E[j])
            assert c.product(1, j) == bracket(f2, E[j])
            assert c.product(2, j) == bracket(f2, E[j])


class TestMatrixFromCirc:
    def test_zero(self):
        assert matrix_from_circ(StructureConstants.zero()) == Mat3.zero()

    @given(exact_mats)
    def test_round_trip(self, A):
        assert matrix_from_circ(circ_from_matrix(A)) == A

    def test_not_adjoint_form(self):
        # [f, e1] is always orthogonal to e1 in coordinates, so no f works
        table = [[Vec3.zero() for _ in range(3)] for _ in range(3)]
        table[0][0] = E[0]
        with pytest.raises(NotAdjointForm):
            matrix_from_circ(StructureConstants(table))


class TestCheckPostlie:
    def test_zero_product(self):
        assert check_postlie(StructureConstants.zero()) == []

    def test_minus_identity(self):
        assert check_postlie(circ_from_matrix(-Mat3.identity())) == []

    def test_identity_fails(self):
        violations = check_postlie(circ_from_matrix(Mat3.identity()))
        assert violations
        assert all(v.identity == "postlie-3" for v in violations)


class TestDerivedBracket:
    def test_zero_product_gives_bracket(self):
        assert derived_bracket(StructureConstants.zero()) == LIE_BRACKET

    def test_minus_identity_gives_negated_bracket(self):
        # x o y - y o x = [-x,y] - [-y,x] = -2[x,y], so {x,y} = -[x,y]
        d = derived_bracket(circ_from_matrix(-Mat3.identity()))
        for i in range(3):
            for j in range(3):
                assert d.product(i, j) == -LIE_BRACKET.product(i, j)

    @given(exact_mats)
    @settings(max_examples=30)
    def test_antisymmetric(self, A):
        d = derived_bracket(circ_from_matrix(A))
        for i in range(3):
            for j in range(3):
                assert (d.product(i, j) + d.product(j, i)).is_zero()


class TestCheckJacobi:
    def test_fixed_bracket(self):
        assert check_jacobi(LIE_BRACKET) == []

    def test_derived_of_solutions(self):
        for tag in sampled_tags():
            A = mateq.representative(tag)
            assert check_jacobi(derived_bracket(circ_from_matrix(A))) == []

    def test_antisymmetry_violation(self):
        table = [[Vec3.zero() for _ in range(3)] for _ in range(3)]
        table[0][0] = E[1]  # [e1, e1] = e2 breaks antisymmetry
        violations = check_jacobi(StructureConstants(table))
        assert any(v.identity == "antisymmetry" for v in violations)


class TestCheckRotaBaxter:
    def test_zero(self):
        assert check_rota_baxter(Mat3.zero()) == []

    def test_minus_identity(self):
        # LHS = [x,y]; RHS = f(-[x,y]) = [x,y]
        assert check_rota_baxter(-Mat3.identity()) == []

    def test_identity_fails(self):
        assert check_rota_baxter(Mat3.identity())


class TestEquivalenceTheorem:
    """PostLie axioms, the Rota-Baxter identity and the matrix equation are
    three faces of the same condition; they must agree on every input."""

    def test_representatives_and_congruates(self):
        for tag in sampled_tags():
            A = mateq.representative(tag)
            mats = [A] + [exact_congruate(tag, 100 + s) for s in range(3)]
            for M in mats:
                assert mateq.residual(M).is_zero()
                assert check_postlie(circ_from_matrix(M)) == []
                assert check_rota_baxter(M) == []

    def test_non_solutions_fail_everything(self):
        rng = np.random.default_rng(23)
        count = 0
        while count < 10:
            A = Mat3.from_numpy(
                rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
            )
            if mateq.residual(A).frobenius_norm() <= 1e-3:
                continue
            count += 1
            assert check_postlie(circ_from_matrix(A))
            assert check_rota_baxter(A)

    def test_rota_baxter_is_derived_bracket_homomorphism(self):
        # f({x,y}) = [f(x), f(y)] on all basis pairs, for every solution
        for tag in sampled_tags():
            A = mateq.representative(tag)
            d = derived_bracket(circ_from_matrix(A))
            for i in range(3):
                for j in range(3):
                    lhs = d.product(i, j) @ A
                    rhs = bracket(A.row(i), A.row(j))
                    assert lhs == rhs
