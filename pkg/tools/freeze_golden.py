"""Regenerate src/jacform/golden/*.json from the slow oracles in tests/oracles.py.

Run from the repository root:  python3 tools/freeze_golden.py
"""

import json
import pathlib
import sys
from fractions import Fraction

ROOT = pathlib.Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "tests"))

import oracles as o  # noqa: E402

OUT = ROOT / "src" / "jacform" / "golden"


def q_series(terms, tmax, lo, hi):
    coeffs = sorted(
        ([n, d, str(Fraction(v))] for (n, d), v in terms.items() if v and lo <= n <= hi and d <= tmax),
        key=lambda c: (c[1], c[0]),
    )
    return {"tmax": tmax, "qwindow": [[lo, hi]] * (tmax + 1), "coeffs": coeffs}


def t_series(vals):
    coeffs = [[0, d, str(Fraction(v))] for d, v in enumerate(vals) if v]
    return {"tmax": len(vals) - 1, "qwindow": [[None, None]] * len(vals), "coeffs": coeffs}


def render(obj):
    return json.dumps(obj, indent=1, sort_keys=True) + "\n"


def payloads():
    """Golden file contents keyed by file stem."""
    out = {}
    write = out.__setitem__
    T, Q = 10, 12
    write("schoen", {
        "PT_B": q_series(o.schoen_pt_b(T, Q), T, -Q, Q),
        "PT_E": t_series(o.schoen_pt_e(15)),
    })
    T, Q = 12, 14
    write("k3xe", {
        "PT_0": q_series(o.k3xe_pt0(T, Q), T, -Q, Q),
        "PT_1": q_series(o.k3xe_pt1(T, Q), T, -Q, Q),
    })
    f0, head = o.stu_f0_t(8)
    write("stu", {"f_0": t_series(f0), "head": t_series(head), "f_m1": t_series(o.stu_fm1_t(8))})
    T, Q = 10, 12
    write("axe", {"PT_2": q_series(o.axe_h2(T, Q), T, -Q, Q), "PT_3": q_series(o.axe_h3(T, Q), T, -Q, Q)})
    write("axe-euler", {
        "PT_tilde_3": q_series(o.axe_h3(T, Q, sign=-1, f3=o.f3_tilde_t(T)), T, -Q, Q),
        "f3_tilde": t_series(o.f3_tilde_t(20)),
    })
    phi = o.phi_m21(2, -8, 8)
    phi01 = (o.wp(2, -8, 12) * o.phi_m21(2, -8, 12)).scale(12)
    write("forms", {
        "phi_m21": q_series(phi.t, 2, -4, 4),
        "phi_01": q_series(phi01.window(-4, 4), 2, -4, 4),
        "delta": t_series(o.delta_t(10)),
        "E2": t_series(o.eisenstein_t(1, 10)),
        "E4": t_series(o.eisenstein_t(2, 10)),
        "E6": t_series(o.eisenstein_t(3, 10)),
        "theta_D4": t_series(o.theta_d4_t(10)),
    })
    return out


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for name, obj in payloads().items():
        (OUT / f"{name}.json").write_text(render(obj))


if __name__ == "__main__":
    main()
