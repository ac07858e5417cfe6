"""End-to-end worked examples, each diffed against frozen golden series."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from .decompose import GradedMonomial, decompose
from .forms import (
    eisenstein,
    f3_tilde_divisor,
    f3_tilde_eisenstein,
    inv_phi_m21_s,
    phi_m21_s,
    weierstrass_p,
)
from .gw import FCoefficients, GWInput, assemble_Z, euler_variant, gw3_abelian, invert_gw
from .io import series_from_json
from .pt import GeometryParams, check_elliptic_law, check_inversion_law, genus0_Z, genus1_Z, pt0
from .sbasis import SBasisSeries, from_sbasis
from .series import BiSeries, Comparison, ValidityBox, eta_product

__all__ = ["EXAMPLES", "Check", "Report", "load_golden", "run_example", "stu_f_coefficients"]

LAMBDAS = (-2, -1, 1, 2)


@dataclass
class Check:
    label: str
    passed: bool
    detail: str = ""


@dataclass
class Report:
    name: str
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, label: str, result, detail: str = "") -> None:
        if isinstance(result, Comparison):
            if not detail:
                detail = f"{result.compared_cells} cells"
                if result.first_mismatch:
                    n, d, a, b = result.first_mismatch
                    detail += f"; first difference at q^{n} t^{d}: {a} != {b}"
            result = result.equal
        self.checks.append(Check(label, bool(result), detail))

    def to_json(self) -> dict:
        return {
            "example": self.name,
            "pass": self.passed,
            "checks": [{"label": c.label, "pass": c.passed, "detail": c.detail} for c in self.checks],
        }

    def format(self) -> str:
        lines = [f"{self.name}: {'PASS' if self.passed else 'FAIL'}"]
        for c in self.checks:
            lines.append(f"  [{'ok' if c.passed else 'FAIL'}] {c.label}" + (f" ({c.detail})" if c.detail else ""))
        return "\n".join(lines) + "\n"


def load_golden(name: str) -> dict:
    text = resources.files("jacform").joinpath("golden", f"{name}.json").read_text()
    return json.loads(text)


def _golden_series(golden: dict, key: str) -> BiSeries:
    return series_from_json(golden[key])


def _qhi_for(g: BiSeries) -> int:
    return max(int(w[1]) for w in g.box.qwindow)


def _law_checks(report: Report, label: str, z: SBasisSeries, h: int) -> None:
    for lam in LAMBDAS:
        report.add(f"{label}: elliptic law, lambda={lam}", check_elliptic_law(z, h, lam))
    report.add(f"{label}: q -> t/q law", check_inversion_law(z, h))


def _t(series: BiSeries) -> SBasisSeries:
    return SBasisSeries.from_t_series(series)


# --------------------------------------------------------------------------


def schoen(tmax: int = 10) -> Report:
    rep = Report("schoen")
    golden = load_golden("schoen")
    ptb_g = _golden_series(golden, "PT_B")
    pte_g = _golden_series(golden, "PT_E")
    tmax = min(tmax, ptb_g.tmax)
    base = pt0(GeometryParams(0, 12), tmax)
    gw0 = eta_product(-12, tmax)
    zb = genus0_Z(gw0, tmax, sbasis=True)
    ptb = from_sbasis(zb, _qhi_for(ptb_g)) * base
    rep.add("PT_B against the closed product", ptb.compare(ptb_g))
    ze = genus1_Z(0, 12, tmax, sbasis=True)
    pte = from_sbasis(ze) * base
    rep.add("PT_E = 12 prod (1-t^m)^-12", pte.compare(pte_g.truncate(tmax)))
    _law_checks(rep, "Z_B", zb, 0)
    _law_checks(rep, "Z_E", ze, 1)
    return rep


def k3xe(tmax: int = 12) -> Report:
    rep = Report("k3xe")
    golden = load_golden("k3xe")
    g0 = _golden_series(golden, "PT_0")
    g1 = _golden_series(golden, "PT_1")
    tmax = min(tmax, g0.tmax)
    base = pt0(GeometryParams(0, 24), tmax)
    f0 = invert_gw(GWInput(0, (1,)), tmax)
    z0 = assemble_Z(f0, tmax, sbasis=True)
    rep.add("genus 0: PT = 1/(Delta phi_{-2,1})", (from_sbasis(z0, _qhi_for(g0)) * base).compare(g0))
    f1 = invert_gw(GWInput(1, (24, 0)), tmax)
    z1 = assemble_Z(f1, tmax, sbasis=True)
    rep.add("genus 1: PT = 24 wp / Delta", (from_sbasis(z1, _qhi_for(g1)) * base).compare(g1))
    _law_checks(rep, "Z_0", z0, 0)
    _law_checks(rep, "Z_1", z1, 1)
    target = z1 * phi_m21_s(tmax)
    dec = decompose(target, 0, 1)
    want = {GradedMonomial(e=1): Fraction(2)}
    rep.add(
        "PT_1 Delta phi_{-2,1} = 2 phi_{0,1} in the quasi-Jacobi ring",
        dec.ok and dec.unique and dec.coefficients == want,
        json.dumps(dec.to_json()["coefficients"]),
    )
    return rep


def stu_f_coefficients(tmax: int = 8) -> dict:
    """The genus-0 inputs and the resulting ``f_{-1}``, ``f_0`` as t-series."""
    e2, e4, e6 = (eisenstein(k, tmax) for k in (1, 2, 3))
    inv48 = eta_product(-48, tmax)
    f10 = e4 * e6 * eta_product(-24, tmax) * -2
    f11 = (
        e4 * e6 * (e4 * e4 * e4 * Fraction(67, 36) + e6 * e6 * Fraction(65, 36) + e2 * e4 * e6 * Fraction(1, 3))
        * inv48
        * -1
    )
    fm1 = f10 * f10
    f0 = f11 + e2 * f10 * f10 * Fraction(1, 12)
    head = e4 * e6 * (e4 * e4 * e4 * Fraction(67, 36) + e6 * e6 * Fraction(65, 36)) * -1
    return {"F10": f10, "F11": f11, "f_m1": fm1, "f_0": f0, "head": head}


def stu(tmax: int = 8) -> Report:
    rep = Report("stu")
    golden = load_golden("stu")
    tmax = min(tmax, _golden_series(golden, "f_0").tmax)
    fs = stu_f_coefficients(tmax)
    rep.add("f_0 = F_(1,1) + E_2 F_(1,0) F_(0,1) / 12 against golden", fs["f_0"].compare(_golden_series(golden, "f_0")))
    rep.add("f_-1 = F_(1,0) F_(0,1) against golden", fs["f_m1"].compare(_golden_series(golden, "f_m1")))
    rep.add("leading factor expansion", fs["head"].compare(_golden_series(golden, "head")))
    # the basis element at i = -1 is phi_{0,1}/phi_{-2,1}^2 = 12 wp / phi_{-2,1}
    f = FCoefficients(0, (fs["f_m1"].scale(Fraction(1, 12)), fs["f_0"]), i_min=-1)
    z = assemble_Z(f, tmax, sbasis=True)
    inv = inv_phi_m21_s(tmax)
    direct = _t(fs["f_m1"]) * weierstrass_p(tmax) * inv + _t(fs["f_0"]) * inv
    rep.add("basis sum equals f_-1 wp/phi_{-2,1} + f_0/phi_{-2,1}", z.equals(direct))
    _law_checks(rep, "Z_(1,1)", z, 0)
    return rep


def axe(tmax: int = 10) -> Report:
    rep = Report("axe")
    golden = load_golden("axe")
    g2 = _golden_series(golden, "PT_2")
    g3 = _golden_series(golden, "PT_3")
    tmax = min(tmax, g2.tmax)
    f2 = invert_gw(GWInput(2, (0, 0, 1)), tmax)
    rep.add("genus 2: f = (0, 0, 1)", [x.t_coeffs() for x in f2.f] == [[0] * (tmax + 1)] * 2 + [[1] + [0] * tmax])
    z2 = assemble_Z(f2, tmax, sbasis=True)
    rep.add("genus 2: PT = phi_{-2,1}", from_sbasis(z2).compare(g2))
    _law_checks(rep, "Z_2", z2, 2)
    gw3 = gw3_abelian(tmax)
    f3 = invert_gw(GWInput(3, (0, 0, 12, gw3)), tmax)
    z3 = assemble_Z(f3, tmax, sbasis=True)
    rep.add("genus 3: PT = 12 wp phi^2 - theta_D4 phi^2 (GW^3 as given)", from_sbasis(z3).compare(g3))
    _law_checks(rep, "Z_3", z3, 3)
    vals = gw3.t_coeffs()
    vals[0] = Fraction(-3)
    f3c = invert_gw(GWInput(3, (0, 0, 12, BiSeries.from_t_coeffs(vals))), tmax)
    z3c = assemble_Z(f3c, tmax, sbasis=True)
    rep.add("genus 3 with GW^3 constant term -3", from_sbasis(z3c).compare(g3))
    return rep


def axe_euler(tmax: int = 10) -> Report:
    rep = Report("axe-euler")
    golden = load_golden("axe-euler")
    g = _golden_series(golden, "PT_tilde_3")
    ft_g = _golden_series(golden, "f3_tilde")
    tmax = min(tmax, g.tmax)
    rep.add("f3~ divisor sum = 5/2 - E_2(t) - E_2(t^2)/2", f3_tilde_divisor(ft_g.tmax).compare(f3_tilde_eisenstein(ft_g.tmax)))
    rep.add("f3~ against golden", f3_tilde_eisenstein(ft_g.tmax).compare(ft_g))
    ft = f3_tilde_eisenstein(tmax)
    f = FCoefficients(3, (0, 0, 1, ft))
    rep.add("Euler-characteristic series against golden", euler_variant(f, tmax).compare(g))
    dec = decompose(f3_tilde_eisenstein(20), 2, 0, quasi=False)
    rep.add(
        "f3~ has no decomposition into modular forms of weight 2",
        not dec.ok,
        f"residual at {dec.residual_cell}",
    )
    return rep


EXAMPLES = {
    "schoen": schoen,
    "stu": stu,
    "k3xe": k3xe,
    "axe": axe,
    "axe-euler": axe_euler,
}


def run_example(name: str, tmax: int | None = None) -> Report:
    if name not in EXAMPLES:
        raise KeyError(f"unknown example {name!r}; choose from {sorted(EXAMPLES)}")
    fn = EXAMPLES[name]
    return fn() if tmax is None else fn(tmax)
