from fractions import Fraction

import pytest

import oracles as o
from jacform.forms import (
    FormId,
    bernoulli,
    build,
    clear_memo,
    delta,
    eisenstein,
    f3_tilde_divisor,
    f3_tilde_eisenstein,
    phi_01,
    phi_01_s,
    phi_m21,
    t_rescale,
    theta_d4,
    weierstrass_p,
    weierstrass_p_q,
)
from jacform.sbasis import from_sbasis
from jacform.series import INF, BiSeries, SeriesError, ValidityBox


def naive_cells(naive, tmax, lo, hi):
    return {(n, d): naive.get(n, d) for d in range(tmax + 1) for n in range(lo, hi + 1)}


def test_bernoulli_values():
    assert [bernoulli(n) for n in range(7)] == [1, Fraction(-1, 2), Fraction(1, 6), 0, Fraction(-1, 30), 0, Fraction(1, 42)]
    assert o.bernoulli_table(12) == [bernoulli(n) for n in range(13)]


@pytest.mark.parametrize("k", [1, 2, 3])
def test_eisenstein_matches_hand_normalisation(k):
    assert eisenstein(k, 12).t_coeffs() == o.eisenstein_t(k, 12)


def test_e2_head():
    assert eisenstein(1, 2).t_coeffs() == [1, -24, -72]


def test_eisenstein_index_checked():
    with pytest.raises(SeriesError):
        eisenstein(0, 3)


def test_delta_and_theta():
    assert delta(10).t_coeffs() == o.delta_t(10)
    assert theta_d4(10).t_coeffs() == o.theta_d4_t(10)
    assert theta_d4(3).t_coeffs() == [1, 24, 24, 96]


def test_t_rescale():
    e2 = eisenstein(1, 6)
    assert t_rescale(e2, 1).compare(e2)
    assert t_rescale(e2, 2).t_coeffs() == [1, 0, -24, 0, -72, 0, -96]
    with pytest.raises(SeriesError):
        t_rescale(phi_m21(2), 2)


def test_phi_m21_matches_product():
    tmax, span = 5, 8
    got = phi_m21(tmax)
    want = o.phi_m21(tmax, -span - 10, span + 10)
    for (n, d), v in naive_cells(want, tmax, -span, span).items():
        assert got.coeff(n, d) == v, (n, d)


def test_wp_q_matches_oracle():
    tmax, qhi = 5, 9
    got = weierstrass_p_q(tmax, qhi)
    want = o.wp(tmax, -qhi, qhi)
    for (n, d), v in naive_cells(want, tmax, -qhi, qhi).items():
        assert got.coeff(n, d) == v, (n, d)
    assert got.window(0) == (-INF, qhi)


def test_wp_slices():
    wp = weierstrass_p(2)
    assert wp.slice(0) == {-1: 1, 0: Fraction(-1, 12)}
    # t^1 slice: q + 2 + q^-1
    assert from_sbasis(wp).slice(1) == {1: 1, 0: 2, -1: 1}
    assert wp.slice(1) == {1: 1}


def test_phi01_head():
    assert phi_01(0).slice(0) == {1: -1, 0: 10, -1: -1}
    assert phi_01_s(3).pole_order == 0


def test_phi01_definition_small():
    tmax = 6
    lhs = phi_01(tmax)
    rhs = weierstrass_p_q(tmax, 40) * phi_m21(tmax) * 12
    cmp = lhs.compare(rhs)
    assert cmp and cmp.compared_cells > 100


def test_f3_tilde_identity():
    assert f3_tilde_divisor(20).compare(f3_tilde_eisenstein(20))
    assert f3_tilde_divisor(20).t_coeffs() == o.f3_tilde_t(20)


class TestFormId:
    def test_json_round_trip(self):
        fids = [
            FormId("eisenstein", (2,)),
            FormId("eta_product", (-24,)),
            FormId("eta_product", (((1, 2), (2, -1)),)),
            FormId("t_rescale", (FormId("eisenstein", (1,)), 2)),
            FormId("phi_m21"),
        ]
        for fid in fids:
            assert FormId.from_json(fid.to_json()) == fid

    def test_unknown_kind(self):
        with pytest.raises(KeyError):
            FormId("zeta")

    def test_wrong_arity(self):
        with pytest.raises(SeriesError):
            FormId("eisenstein")

    def test_str(self):
        assert str(FormId("eisenstein", (3,))) == "eisenstein(3)"


def test_build_restricts_and_memoises():
    clear_memo()
    box = ValidityBox.default(4)
    a = build(FormId("phi_m21"), box)
    assert a.box == box
    assert build(FormId("phi_m21"), box) is a
    assert a.compare(phi_m21(4))


def test_build_eta_mapping():
    fid = FormId("eta_product", (((1, 2), (2, -1)),))
    got = build(fid, ValidityBox.uniform(6)).t_coeffs()
    want = o.one(6, 0, 0) * o.binom_power(-1, 0, 1, 2, 6, 0, 0) * o.binom_power(-1, 0, 2, -1, 6, 0, 0)
    assert got == o._t_coeffs(want)
