"""One test per acceptance criterion; each records a PASS/FAIL line.

Run ``pytest tests/test_acceptance.py`` (the lines appear in the terminal
summary) or ``python3 tests/test_acceptance.py`` for the lines alone.
"""

import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

import test_properties  # noqa: E402
from jacform.decompose import GradedMonomial, decompose  # noqa: E402
from jacform.forms import (  # noqa: E402
    f3_tilde_divisor,
    f3_tilde_eisenstein,
    phi_01,
    phi_m21,
    phi_m21_s,
    theta_d4,
    weierstrass_p,
    weierstrass_p_q,
)
from jacform.gw import FCoefficients, GWInput, assemble_Z, gw3_abelian, invert_gw  # noqa: E402
from jacform.io import series_from_json  # noqa: E402
from jacform.pt import (  # noqa: E402
    POSITIVE_SLOPES,
    GeometryParams,
    check_elliptic_law,
    check_inversion_law,
    exp_slope_sum,
    f_series,
    genus0_Z,
    genus1_Z,
    pt0,
)
from jacform.sbasis import SBasisSeries, from_sbasis  # noqa: E402
from jacform.series import ValidityBox, eta_product  # noqa: E402
from jacform.worked import load_golden, stu_f_coefficients  # noqa: E402

LINES = {}


def record(n, ok, detail):
    LINES[n] = f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}"
    return ok


def cmp_detail(cmp):
    out = f"{cmp.compared_cells} cells"
    if cmp.first_mismatch:
        n, d, a, b = cmp.first_mismatch
        out += f", first mismatch at q^{n} t^{d}: {a} vs {b}"
    return out


def golden(name, key):
    return series_from_json(load_golden(name)[key])


# --------------------------------------------------------------------------
# the criteria; each returns (ok, detail)


def criterion_1():
    tmax = 20
    box = ValidityBox.default(tmax)  # q-window +-22
    lhs = phi_01(tmax).restrict(box)
    rhs = (weierstrass_p_q(tmax, 22 + 2 * tmax + 2) * phi_m21(tmax) * 12).restrict(box)
    cmp = lhs.compare(rhs)
    full = cmp.compared_cells == (tmax + 1) * 45
    return cmp.equal and full, "phi_01 = 12 wp phi_{-2,1}; " + cmp_detail(cmp)


def criterion_2():
    tmax = 12
    box = ValidityBox.default(tmax, 12)
    details, ok = [], True
    for e in (-6, 6, 24):
        a = exp_slope_sum(e, POSITIVE_SLOPES, tmax, 12).restrict(box)
        cmp = a.compare(f_series(e, tmax, 12))
        ok = ok and cmp.equal and cmp.compared_cells == (tmax + 1) * 25
        details.append(f"e={e}: {cmp_detail(cmp)}")
    return ok, "; ".join(details)


def z_schoen_b(tmax):
    return genus0_Z(eta_product(-12, tmax), tmax, sbasis=True)


def z_schoen_e(tmax):
    return genus1_Z(0, 12, tmax, sbasis=True)


def z_k3(h, tmax):
    gw = (1,) if h == 0 else (24, 0)
    return assemble_Z(invert_gw(GWInput(h, gw), tmax), tmax, sbasis=True)


def z_stu(tmax):
    fs = stu_f_coefficients(tmax)
    f = FCoefficients(0, (fs["f_m1"].scale(Fraction(1, 12)), fs["f_0"]), i_min=-1)
    return assemble_Z(f, tmax, sbasis=True)


def z_axe3(tmax):
    f = invert_gw(GWInput(3, (0, 0, 12, gw3_abelian(tmax))), tmax)
    return assemble_Z(f, tmax, sbasis=True)


def criterion_3():
    tmax = 10
    g = golden("schoen", "PT_B")
    pt = from_sbasis(z_schoen_b(tmax), 12) * pt0(GeometryParams(0, 12), tmax)
    cmp = pt.compare(g)
    return cmp.equal and cmp.compared_cells > 100, "PT_B vs closed product (exponent 20); " + cmp_detail(cmp)


def criterion_4():
    tmax = 15
    pt = from_sbasis(z_schoen_e(tmax)) * pt0(GeometryParams(0, 12), tmax)
    cmp = pt.compare(golden("schoen", "PT_E"))
    want = [12 * v for v in eta_product(-12, tmax).t_coeffs()]
    ok = cmp.equal and cmp.compared_cells >= tmax + 1 and pt.t_coeffs() == want
    return ok, "PT_E = 12 prod (1-t^m)^-12; " + cmp_detail(cmp)


def criterion_5():
    tmax = 12
    base = pt0(GeometryParams(0, 24), tmax)
    c0 = (from_sbasis(z_k3(0, tmax), 14) * base).compare(golden("k3xe", "PT_0"))
    c1 = (from_sbasis(z_k3(1, tmax), 14) * base).compare(golden("k3xe", "PT_1"))
    ok = c0.equal and c1.equal and min(c0.compared_cells, c1.compared_cells) > 100
    return ok, f"h=0 1/(Delta phi): {cmp_detail(c0)}; h=1 24 wp/Delta: {cmp_detail(c1)}"


def criterion_6():
    tmax = 8
    fs = stu_f_coefficients(tmax)
    product = fs["head"] * eta_product(-48, tmax)
    c = fs["f_0"].compare(product)
    head = fs["head"].t_coeffs()[:4]
    want = [Fraction(-11, 3), 1448, -362376, 85977632]
    ok = c.equal and c.compared_cells == tmax + 1 and head == want
    return ok, f"f_0 = head * prod(1-t^m)^-48 ({cmp_detail(c)}); head starts {[str(x) for x in head]}"


def criterion_7():
    tmax = 10
    z = z_axe3(tmax)
    phi2 = phi_m21_s(tmax) ** 2
    want = weierstrass_p(tmax) * phi2 * 12 - SBasisSeries.from_t_series(theta_d4(tmax)) * phi2
    cmp = from_sbasis(z).compare(from_sbasis(want))
    return cmp.equal, "12 wp phi^2 - theta_D4 phi^2; " + cmp_detail(cmp)


LAW_TMAX = 20


def criterion_8():
    zs = [
        ("Schoen Z_B", z_schoen_b, 0),
        ("Schoen Z_E", z_schoen_e, 1),
        ("K3xE Z_0", lambda t: z_k3(0, t), 0),
        ("K3xE Z_1", lambda t: z_k3(1, t), 1),
        ("STU Z", z_stu, 0),
        ("AxE Z_3", z_axe3, 3),
    ]
    ok, parts = True, []
    for label, make, h in zs:
        z = make(LAW_TMAX)
        cells = []
        for lam in (-2, -1, 1, 2):
            cmp = check_elliptic_law(z, h, lam)
            ok = ok and cmp.equal and cmp.compared_cells >= 50
            cells.append(cmp.compared_cells)
        inv = check_inversion_law(z, h)
        ok = ok and inv.equal
        parts.append(f"{label} min {min(cells)} cells")
    return ok, "; ".join(parts)


def criterion_9():
    tmax = 12
    z1 = z_k3(1, tmax)
    dec = decompose(z1 * phi_m21_s(tmax), 0, 1)
    want = {GradedMonomial(e=1): Fraction(2)}
    ok = dec.ok and dec.unique and dec.coefficients == want
    return ok, f"coefficients {dec.to_json()['coefficients']}, {dec.cells} cells, rank {dec.rank}"


def criterion_10():
    tmax = 20
    cmp = f3_tilde_divisor(tmax).compare(f3_tilde_eisenstein(tmax))
    dec = decompose(f3_tilde_eisenstein(tmax), 2, 0, quasi=False)
    ok = cmp.equal and cmp.compared_cells == tmax + 1 and not dec.ok
    return ok, f"identity: {cmp_detail(cmp)}; modular decomposition fails at {dec.residual_cell}"


PROPERTY_SUITES = [
    test_properties.test_ring_axioms_exact,
    test_properties.test_truncated_arithmetic_is_sound,
    test_properties.test_lambda_shifts_compose,
    test_properties.test_q_inv_t_is_an_involution,
    test_properties.test_substitution_is_multiplicative,
    test_properties.test_charmap_involution,
    test_properties.test_invert_round_trip,
    test_properties.test_log_exp_round_trip,
    test_properties.test_exp_is_a_homomorphism,
    test_properties.test_invert_gw_assemble_round_trip,
]


def criterion_11():
    failed = []
    for suite in PROPERTY_SUITES:
        try:
            suite()
        except Exception as exc:  # noqa: BLE001
            failed.append(f"{suite.__name__}: {type(exc).__name__}")
    detail = f"{len(PROPERTY_SUITES)} suites x 100 cases (derandomized)"
    return not failed, detail + (f"; failed {failed}" if failed else "")


CRITERIA = {n: globals()[f"criterion_{n}"] for n in range(1, 12)}


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n):
    start = time.perf_counter()
    ok, detail = CRITERIA[n]()
    record(n, ok, f"{detail} [{time.perf_counter() - start:.1f}s]")
    print(LINES[n])
    assert ok, LINES[n]


if __name__ == "__main__":
    failures = 0
    for n in sorted(CRITERIA):
        start = time.perf_counter()
        ok, detail = CRITERIA[n]()
        record(n, ok, f"{detail} [{time.perf_counter() - start:.1f}s]")
        print(LINES[n], flush=True)
        failures += not ok
    sys.exit(1 if failures else 0)
