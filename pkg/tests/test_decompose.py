from fractions import Fraction

import pytest

from jacform import linalg
from jacform.decompose import (
    GradedMonomial,
    UnderdeterminedError,
    basis_enum,
    combine,
    decompose,
    monomial_series,
    system_rank,
)
from jacform.forms import eisenstein, f3_tilde_eisenstein, phi_m21, weierstrass_p_q
from jacform.series import ValidityBox

T = 6


class TestLinalg:
    def test_unique_solution(self):
        sol = linalg.solve([[2, 1], [1, 3], [1, 1]], [3, 4, 2])
        assert sol.consistent and sol.unique and sol.x == [1, 1]

    def test_inconsistent(self):
        sol = linalg.solve([[1, 0], [0, 1], [1, 1]], [1, 1, 3])
        assert not sol.consistent
        assert sol.inconsistent_row is not None

    def test_rank_deficient(self):
        sol = linalg.solve([[1, 2], [2, 4]], [1, 2])
        assert sol.consistent and not sol.unique and sol.rank == 1
        assert linalg.rank([[1, 2], [2, 4], [0, 0]]) == 1

    def test_exact_fractions(self):
        sol = linalg.solve([[Fraction(1, 3), 1], [1, Fraction(1, 7)]], [1, 1])
        a, b = sol.x
        assert Fraction(1, 3) * a + b == 1 and a + Fraction(1, 7) * b == 1


class TestMonomials:
    def test_weight_and_index(self):
        m = GradedMonomial(1, 0, 0, 2, 1)
        assert (m.weight, m.index) == (-2, 3)

    def test_str_and_parse(self):
        for m in [GradedMonomial(), GradedMonomial(e=1), GradedMonomial(a=1, d=1), GradedMonomial(b=2, e=2)]:
            assert GradedMonomial.parse(str(m)) == m
        assert str(GradedMonomial(a=1, d=1)) == "E2*phi_m21"
        assert str(GradedMonomial()) == "1"


class TestBasis:
    def test_weight_zero_index_zero(self):
        assert basis_enum(0, 0) == [GradedMonomial()]

    def test_weight_zero_index_one(self):
        assert basis_enum(0, 1) == [GradedMonomial(e=1), GradedMonomial(a=1, d=1)]

    def test_phi_alone(self):
        assert basis_enum(-2, 1) == [GradedMonomial(d=1)]

    def test_modular_only(self):
        assert basis_enum(2, 0, quasi=False) == []
        assert basis_enum(2, 0) == [GradedMonomial(a=1)]

    def test_every_element_has_requested_grading(self):
        for w, m in [(0, 2), (4, 1), (6, 0), (-4, 2)]:
            for mono in basis_enum(w, m):
                assert (mono.weight, mono.index) == (w, m)

    def test_bad_grading(self):
        with pytest.raises(ValueError):
            basis_enum(1, 0)
        with pytest.raises(ValueError):
            basis_enum(-4, 1)


class TestDecompose:
    def test_wp_phi(self):
        target = weierstrass_p_q(T, 40) * phi_m21(T) * 24
        dec = decompose(target, 0, 1, ValidityBox.default(T))
        assert dec.ok and dec.unique
        assert dec.coefficients == {GradedMonomial(e=1): 2}

    def test_e4(self):
        dec = decompose(eisenstein(2, T), 4, 0, ValidityBox.default(T))
        assert dec.ok and dec.coefficients == {GradedMonomial(b=1): 1}

    @pytest.mark.parametrize("w,m", [(0, 1), (0, 2), (-2, 1), (4, 0)])
    def test_round_trip(self, w, m):
        basis = basis_enum(w, m)
        coeffs = {mono: Fraction(3 * k - 4, k + 1) for k, mono in enumerate(basis)}
        dec = decompose(combine(coeffs, T), w, m)
        assert dec.ok and dec.unique and dec.coefficients == coeffs

    def test_index_two_full_rank(self):
        assert system_rank(0, 2, ValidityBox.default(T)) == len(basis_enum(0, 2)) == 4

    def test_failure_reports_residual(self):
        target = monomial_series(GradedMonomial(d=1), T)
        dec = decompose(target, 0, 1)
        assert not dec.ok and dec.residual_cell is not None
        assert dec.to_json()["ok"] is False

    def test_f3_tilde_not_modular(self):
        dec = decompose(f3_tilde_eisenstein(T), 2, 0, quasi=False)
        assert not dec.ok and dec.residual_cell == (0, 0)

    def test_underdetermined(self):
        with pytest.raises(UnderdeterminedError):
            decompose(eisenstein(2, 0), 0, 2, ValidityBox.uniform(0, 0, 0))

    def test_json(self):
        dec = decompose(eisenstein(2, T), 4, 0, ValidityBox.default(T))
        assert dec.to_json() == {"ok": True, "coefficients": {"E4": "1"}, "residual_cell": None}
