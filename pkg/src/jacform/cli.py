"""Command-line front end.

Exit codes: 0 success or pass, 1 mathematical mismatch, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import io
from .cache import SeriesCache
from .decompose import decompose
from .forms import (
    FormId,
    build,
    f3_tilde_divisor,
    f3_tilde_eisenstein,
    phi_m21,
    weierstrass_p_q,
    phi_01,
)
from .gw import GWInput, assemble_Z, invert_gw
from .pt import (
    POSITIVE_SLOPES,
    GeometryParams,
    charmap,
    check_elliptic_law,
    check_inversion_law,
    exp_slope_sum,
    f_series,
    genus2_Z,
    pt0,
)
from .series import BiSeries, SeriesError, ValidityBox, invert, sign_flip, subst_q_inv_t, subst_q_t_lambda
from .worked import EXAMPLES, run_example

FORM_NAMES = {
    "e2": FormId("eisenstein", (1,)),
    "e4": FormId("eisenstein", (2,)),
    "e6": FormId("eisenstein", (3,)),
    "delta": FormId("delta"),
    "phi_m21": FormId("phi_m21"),
    "phi_01": FormId("phi_01"),
    "wp": FormId("wp"),
    "theta_d4": FormId("theta_d4"),
}


class UsageError(Exception):
    pass


def _box(args) -> ValidityBox:
    tmax = args.tmax
    lo = -(tmax + 2) if args.qlo is None else args.qlo
    hi = tmax + 2 if args.qhi is None else args.qhi
    if lo > hi:
        raise UsageError("--qlo must not exceed --qhi")
    return ValidityBox.uniform(tmax, lo, hi)


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_series(args, s: BiSeries, box: ValidityBox | None = None) -> None:
    if args.format == "table":
        lo = hi = None
        if s.is_q_independent():
            lo = hi = 0
        elif box is not None:
            lo, hi = int(box.qwindow[0][0]), int(box.qwindow[0][1])
        _emit(args, io.format_table(s, lo, hi))
    else:
        _emit(args, io.dumps(io.series_to_json(s)))


def _emit_json(args, obj) -> None:
    if args.format == "table" and isinstance(obj, dict):
        _emit(args, "".join(f"{k}: {json.dumps(v)}\n" for k, v in obj.items()))
    else:
        _emit(args, io.dumps(obj))


def _read_series(path: str) -> BiSeries:
    try:
        with open(path) as fh:
            return io.series_from_json(json.load(fh))
    except (OSError, ValueError, KeyError) as exc:
        raise UsageError(f"cannot read series from {path}: {exc}") from exc


# --------------------------------------------------------------------------
# commands


def cmd_gen(args) -> int:
    box = _box(args)
    if args.pt0:
        g = GeometryParams(args.ex, args.es, 0, args.sign)
        job = {"name": "pt0", "params": [g.e_X, g.e_S, g.sign_convention], "box": box.to_json()}
        compute = lambda: pt0(g, box.tmax, int(box.qwindow[0][1])).restrict(box)  # noqa: E731
    else:
        if args.form is None:
            raise UsageError("give --form NAME or --pt0")
        if args.form == "eta":
            fid = FormId("eta_product", (args.exponent,))
        elif args.form == "f3_tilde":
            fid = None
        elif args.form in FORM_NAMES:
            fid = FORM_NAMES[args.form]
        else:
            raise UsageError(f"unknown form {args.form!r}; known: {sorted(FORM_NAMES) + ['eta', 'f3_tilde']}")
        if args.rescale != 1:
            if fid is None:
                raise UsageError("--rescale applies to the FormId kinds only")
            fid = FormId("t_rescale", (fid, args.rescale))
        if fid is None:
            job = {"name": "f3_tilde", "params": [], "box": box.to_json()}
            compute = lambda: f3_tilde_eisenstein(box.tmax).restrict(box)  # noqa: E731
        else:
            job = {"name": fid.kind, "form": fid.to_json(), "box": box.to_json()}
            compute = lambda: build(fid, box)  # noqa: E731
    if args.no_cache:
        series = compute()
    else:
        series, _ = SeriesCache(args.cache_dir).get_or_compute(job, compute)
    _emit_series(args, series, box)
    return 0


def _verdict(args, comp) -> int:
    obj = comp.to_json()
    _emit_json(args, obj)
    return 0 if obj["pass"] else 1


def cmd_verify(args) -> int:
    tmax = args.tmax
    box = _box(args)
    name = args.identity
    if name == "phi01-def":
        lhs = phi_01(tmax).restrict(box)
        rhs = weierstrass_p_q(tmax, int(box.qwindow[0][1]) + tmax + 2) * phi_m21(tmax) * 12
        return _verdict(args, lhs.compare(rhs.restrict(box)))
    if name in ("elliptic-law", "inversion-law"):
        if not args.series:
            raise UsageError(f"{name} needs --series FILE")
        z = _read_series(args.series)
        if name == "inversion-law":
            return _verdict(args, check_inversion_law(z, args.h, box))
        return _verdict(args, check_elliptic_law(z, args.h, args.lam, args.pole_order, box))
    if name == "wallcross-exp":
        ok, cells, first = True, 0, None
        for e in args.ex_list:
            a = exp_slope_sum(e, POSITIVE_SLOPES, tmax, int(box.qwindow[0][1]))
            c = a.compare(f_series(e, tmax, int(box.qwindow[0][1])))
            cells += c.compared_cells
            if not c.equal and first is None:
                ok, first = False, c.to_json()["first_mismatch"]
        return _verdict_obj(args, {"pass": ok, "compared_cells": cells, "first_mismatch": first})
    if name == "fm0-involution":
        first = None
        cells = 0
        for h in range(-3, 6):
            for n in range(-(tmax + 2), tmax + 3):
                for d in range(tmax + 1):
                    cells += 1
                    if charmap(*charmap(n, d, h), h) != (n, d) and first is None:
                        first = [n, d, str(h), "not an involution"]
        return _verdict_obj(args, {"pass": first is None, "compared_cells": cells, "first_mismatch": first})
    if name == "f3-tilde":
        return _verdict(args, f3_tilde_divisor(tmax).compare(f3_tilde_eisenstein(tmax)))
    if name == "genus2-closed-form":
        pad = lambda v: BiSeries.from_t_coeffs((v + [0] * (tmax + 1))[: tmax + 1])  # noqa: E731
        g = [pad([1, 2, -3]), pad([0, 5, 1]), pad([7, 0, 0, 1])]
        a = assemble_Z(invert_gw(GWInput(2, tuple(g)), tmax), tmax)
        return _verdict(args, a.compare(genus2_Z(*g, tmax)))
    raise UsageError(f"unknown identity {name!r}; known: {sorted(IDENTITIES)}")


def _verdict_obj(args, obj) -> int:
    _emit_json(args, obj)
    return 0 if obj["pass"] else 1


IDENTITIES = (
    "phi01-def",
    "elliptic-law",
    "inversion-law",
    "wallcross-exp",
    "fm0-involution",
    "f3-tilde",
    "genus2-closed-form",
)


def _parse_gw_values(text: str, tmax: int) -> list:
    out = []
    for part in text.split(";"):
        vals = [Fraction(v) for v in part.split(",") if v.strip()]
        out.append(BiSeries.from_t_coeffs((vals + [0] * (tmax + 1))[: tmax + 1]))
    return out


def cmd_invert(args) -> int:
    tmax = args.tmax
    if args.input:
        with open(args.input) as fh:
            inp = io.gw_from_json(json.load(fh))
    elif args.gw is not None:
        gw = _parse_gw_values(args.gw, tmax)
        inp = GWInput(len(gw) - 1, tuple(gw))
    else:
        raise UsageError("give --input FILE or --gw 'c0,c1,..;c0,..;...'")
    f = invert_gw(inp, tmax)
    if args.assemble:
        _emit_series(args, assemble_Z(f, tmax, args.qhi).restrict(_box(args)), _box(args))
    else:
        _emit_json(args, io.f_to_json(f))
    return 0


def cmd_decompose(args) -> int:
    z = _read_series(args.series)
    box = _box(args).intersect(z.box) if (args.qlo is not None or args.qhi is not None) else None
    res = decompose(z, args.weight, args.index, box, quasi=not args.modular)
    _emit_json(args, res.to_json())
    return 0 if res.ok else 1


def cmd_transform(args) -> int:
    z = _read_series(args.series)
    op = args.op
    if op == "q-inv-t":
        out = subst_q_inv_t(z)
    elif op == "q-t-lambda":
        out = subst_q_t_lambda(z, args.lam)
    elif op == "sign-flip":
        out = sign_flip(z)
    elif op == "invert":
        out = invert(z, args.qhi)
    else:
        raise UsageError(f"unknown op {op!r}")
    _emit_series(args, out)
    return 0


def cmd_examples(args) -> int:
    names = sorted(EXAMPLES) if args.name == "all" else [args.name]
    ok = True
    outputs = []
    for name in names:
        rep = run_example(name, args.tmax_override)
        ok = ok and rep.passed
        outputs.append(rep)
    if args.format == "table":
        _emit(args, "".join(r.format() for r in outputs))
    else:
        _emit(args, io.dumps([r.to_json() for r in outputs] if len(outputs) > 1 else outputs[0].to_json()))
    return 0 if ok else 1


# --------------------------------------------------------------------------


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tmax", type=int, default=20, help="highest t-degree (default 20)")
    p.add_argument("--qlo", type=int, default=None, help="lowest q-exponent (default -(tmax+2))")
    p.add_argument("--qhi", type=int, default=None, help="highest q-exponent (default tmax+2)")
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--cache-dir", default=None, help="cache directory (env JACFORM_CACHE_DIR)")
    p.add_argument("--out", default=None, help="write to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="jacform", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="construct a named series")
    _common(p)
    p.add_argument("--form", help=f"one of {', '.join(sorted(FORM_NAMES))}, eta, f3_tilde")
    p.add_argument("--exponent", type=int, default=24, help="exponent for --form eta")
    p.add_argument("--rescale", type=int, default=1, help="substitute t -> t^r")
    p.add_argument("--pt0", action="store_true", help="build PT_0 from --ex/--es")
    p.add_argument("--ex", type=int, default=0, help="Euler characteristic of the threefold")
    p.add_argument("--es", type=int, default=0, help="Euler characteristic of the base")
    p.add_argument("--sign", choices=("q", "p"), default="q")
    p.add_argument("--no-cache", action="store_true")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="run a registered identity check")
    _common(p)
    p.add_argument("identity", choices=IDENTITIES)
    p.add_argument("--series", help="series JSON for the law checks")
    p.add_argument("--h", type=int, default=1)
    p.add_argument("--lambda", dest="lam", type=int, default=1)
    p.add_argument("--pole-order", type=int, default=None)
    p.add_argument("--ex-list", type=lambda s: [int(x) for x in s.split(",")], default=[-6, 6, 24])
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("invert", help="GW series -> f coefficients")
    _common(p)
    p.add_argument("--input", help="GWInput JSON file")
    p.add_argument("--gw", help="t-coefficients per genus, e.g. '0;0;1'")
    p.add_argument("--assemble", action="store_true", help="print the assembled series instead")
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("decompose", help="decompose into the quasi-Jacobi ring")
    _common(p)
    p.add_argument("--series", required=True)
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--index", type=int, required=True)
    p.add_argument("--modular", action="store_true", help="exclude E2")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("transform", help="apply a substitution")
    _common(p)
    p.add_argument("--series", required=True)
    p.add_argument("--op", required=True, choices=("q-inv-t", "q-t-lambda", "sign-flip", "invert"))
    p.add_argument("--lambda", dest="lam", type=int, default=1)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("examples", help="run a worked example against its golden file")
    _common(p)
    p.add_argument("name", choices=sorted(EXAMPLES) + ["all"])
    p.add_argument("--example-tmax", dest="tmax_override", type=int, default=None)
    p.set_defaults(func=cmd_examples)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"jacform: error: {exc}", file=sys.stderr)
        return 2
    except (SeriesError, LookupError, ValueError) as exc:
        print(f"jacform: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
