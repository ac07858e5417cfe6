"""JSON exchange format and the plain-text coefficient table.

A series is ``{"tmax": int, "qwindow": [[lo, hi], ...], "coeffs": [[n, d, "num/den"], ...]}``.
An unbounded window end is written as ``null``; coefficients are exact
rational strings, sorted by t-degree then q-exponent.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .gw import FCoefficients, GWInput
from .series import BiSeries, ValidityBox, _win_empty

__all__ = [
    "series_to_json",
    "series_from_json",
    "gw_to_json",
    "gw_from_json",
    "f_to_json",
    "f_from_json",
    "dumps",
    "format_table",
]


def series_to_json(a: BiSeries) -> dict:
    box = a.box.to_json()
    coeffs = [[n, d, str(v)] for (n, d), v in sorted(a.coeffs.items(), key=lambda c: (c[0][1], c[0][0]))]
    return {"tmax": box["tmax"], "qwindow": box["qwindow"], "coeffs": coeffs}


def series_from_json(obj) -> BiSeries:
    box = ValidityBox.from_json(obj)
    return BiSeries({(int(n), int(d)): Fraction(v) for n, d, v in obj["coeffs"]}, box)


def gw_to_json(inp: GWInput) -> dict:
    return {"h": inp.h, "series": [series_to_json(s) for s in inp.gw]}


def gw_from_json(obj) -> GWInput:
    return GWInput(int(obj["h"]), tuple(series_from_json(s) for s in obj["series"]))


def f_to_json(f: FCoefficients) -> dict:
    out = {"h": f.h, "series": [series_to_json(s) for s in f.f]}
    if f.i_min:
        out["i_min"] = f.i_min
    return out


def f_from_json(obj) -> FCoefficients:
    series = tuple(series_from_json(s) for s in obj["series"])
    return FCoefficients(int(obj["h"]), series, int(obj.get("i_min", 0)))


def dumps(obj) -> str:
    """Canonical text: fixed key order, no trailing spaces, newline-terminated."""
    return json.dumps(obj, indent=1, sort_keys=True) + "\n"


def format_table(a: BiSeries, qlo: int | None = None, qhi: int | None = None) -> str:
    """Coefficient grid with q across and t down; ``.`` marks cells outside the box."""
    ns = [n for n, _ in a.coeffs] or [0]
    lo = min(ns) if qlo is None else qlo
    hi = max(ns) if qhi is None else qhi
    header = ["d\\n"] + [str(n) for n in range(lo, hi + 1)]
    rows = [header]
    for d in range(a.tmax + 1):
        w = a.window(d)
        row = [str(d)]
        for n in range(lo, hi + 1):
            if _win_empty(w) or not (w[0] <= n <= w[1]):
                row.append(".")
            else:
                row.append(str(a.coeff(n, d)))
        rows.append(row)
    widths = [max(len(r[j]) for r in rows) for j in range(len(header))]
    return "\n".join(" ".join(c.rjust(wd) for c, wd in zip(r, widths)) for r in rows) + "\n"
