"""Exact truncated series in ``Q((q))[[t]]`` with explicit validity boxes.

A :class:`BiSeries` stores finitely many rational coefficients ``c[n, d]`` of
``sum c[n, d] q^n t^d`` together with a :class:`ValidityBox`.  The box says,
for every t-degree ``d <= tmax``, on which closed interval of q-exponents the
coefficients are *known*.  An interval end may be infinite:

* ``(-inf, hi]`` is a q-expansion truncated above ``hi`` (all lower
  coefficients are known, the ones not stored are zero);
* ``(-inf, inf)`` is an exact Laurent polynomial;
* ``[lo, hi]`` is a slice known only on a finite window.

Looking up a coefficient outside the box raises :class:`OutsideBoxError`.
Every operation computes the largest box on which its result is determined by
the known coefficients of its inputs, so equalities checked on a box are
genuine identities of the truncated data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping

INF = math.inf

Rational = Fraction

__all__ = [
    "INF",
    "Rational",
    "SeriesError",
    "OutsideBoxError",
    "EmptyBoxError",
    "NegativeDegreeError",
    "ValidityBox",
    "BiSeries",
    "Comparison",
    "add",
    "mul",
    "invert",
    "exp_series",
    "log_series",
    "double_product",
    "eta_product",
    "subst_q_inv_t",
    "subst_q_t_lambda",
    "sign_flip",
]


class SeriesError(ValueError):
    """A series operation was called outside its domain."""


class OutsideBoxError(LookupError):
    """A coefficient outside the validity box was requested."""


class EmptyBoxError(SeriesError):
    pass


class NegativeDegreeError(SeriesError):
    pass


# --------------------------------------------------------------------------
# windows


def _win_intersect(a, b):
    return (max(a[0], b[0]), min(a[1], b[1]))


def _win_empty(w) -> bool:
    return w[0] > w[1]


def _win_contains(w, n) -> bool:
    return w[0] <= n <= w[1]


def _win_json(w):
    if _win_empty(w):
        return None
    return [None if w[0] == -INF else int(w[0]), None if w[1] == INF else int(w[1])]


def _win_from_json(x):
    if x is None:
        return (1, 0)
    lo, hi = x
    return (-INF if lo is None else int(lo), INF if hi is None else int(hi))


FULL = (-INF, INF)
EMPTY = (1, 0)


@dataclass(frozen=True)
class ValidityBox:
    """Per-t-degree intervals of trusted q-exponents, for ``d = 0..tmax``."""

    tmax: int
    qwindow: tuple

    def __post_init__(self):
        if self.tmax < 0:
            raise EmptyBoxError("tmax must be non-negative")
        if len(self.qwindow) != self.tmax + 1:
            raise SeriesError(
                f"qwindow needs {self.tmax + 1} intervals, got {len(self.qwindow)}"
            )
        norm = tuple(EMPTY if _win_empty(w) else (w[0], w[1]) for w in self.qwindow)
        object.__setattr__(self, "qwindow", norm)

    @classmethod
    def default(cls, tmax: int = 20, qspan: int | None = None) -> "ValidityBox":
        """The finite box ``[-(tmax+2), tmax+2]`` at every t-degree."""
        span = tmax + 2 if qspan is None else qspan
        return cls(tmax, tuple((-span, span) for _ in range(tmax + 1)))

    @classmethod
    def uniform(cls, tmax: int, lo=-INF, hi=INF) -> "ValidityBox":
        return cls(tmax, tuple((lo, hi) for _ in range(tmax + 1)))

    def window(self, d: int):
        if not 0 <= d <= self.tmax:
            return EMPTY
        return self.qwindow[d]

    def contains(self, n: int, d: int) -> bool:
        return 0 <= d <= self.tmax and _win_contains(self.qwindow[d], n)

    def intersect(self, other: "ValidityBox") -> "ValidityBox":
        tmax = min(self.tmax, other.tmax)
        return ValidityBox(
            tmax,
            tuple(_win_intersect(self.qwindow[d], other.qwindow[d]) for d in range(tmax + 1)),
        )

    def is_empty(self) -> bool:
        return all(_win_empty(w) for w in self.qwindow)

    def to_json(self) -> dict:
        return {"tmax": self.tmax, "qwindow": [_win_json(w) for w in self.qwindow]}

    @classmethod
    def from_json(cls, obj) -> "ValidityBox":
        return cls(int(obj["tmax"]), tuple(_win_from_json(w) for w in obj["qwindow"]))


# --------------------------------------------------------------------------
# slice kernels
#
# A slice is a dict n -> Fraction (no zeros) together with its known window.


def _to_ints(s: Mapping[int, Fraction]):
    den = 1
    for v in s.values():
        if v.denominator != 1:
            den = den * v.denominator // math.gcd(den, v.denominator)
    if den == 1:
        return 1, {n: v.numerator for n, v in s.items()}
    return den, {n: v.numerator * (den // v.denominator) for n, v in s.items()}


def _hull(s):
    if not s:
        return None
    return min(s), max(s)


def _possible_bounds(s, w):
    """Bounds of the set of exponents that may carry a nonzero coefficient."""
    hull = _hull(s)
    unk_lo = w[0] > -INF
    unk_hi = w[1] < INF
    if hull is None and not unk_lo and not unk_hi:
        return None, None, False
    lo = -INF if unk_lo else (hull[0] if hull else w[1] + 1)
    hi = INF if unk_hi else (hull[1] if hull else w[0] - 1)
    return lo, hi, True


def _product_window(sa, wa, sb, wb):
    """Window on which the Cauchy product of two slices is determined."""
    inf_a, sup_a, any_a = _possible_bounds(sa, wa)
    inf_b, sup_b, any_b = _possible_bounds(sb, wb)
    lower_bad = -INF
    upper_bad = INF
    for (w, other_inf, other_sup, other_any) in (
        (wa, inf_b, sup_b, any_b),
        (wb, inf_a, sup_a, any_a),
    ):
        if not other_any:
            continue
        if w[0] > -INF:
            lower_bad = max(lower_bad, w[0] - 1 + other_sup)
        if w[1] < INF:
            upper_bad = min(upper_bad, w[1] + 1 + other_inf)
    lo = lower_bad + 1
    hi = upper_bad - 1
    if lo > hi:
        return EMPTY
    return (lo, hi)


def _slice_mul_into(acc: dict, sa, sb, window, scale: int = 1):
    """Add ``scale * sa * sb`` restricted to ``window`` into ``acc`` (ints, den)."""
    if not sa or not sb or _win_empty(window):
        return
    da, ia = _to_ints(sa)
    db, ib = _to_ints(sb)
    lo, hi = window
    items_b = list(ib.items())
    prod: dict[int, int] = {}
    for na, va in ia.items():
        for nb, vb in items_b:
            n = na + nb
            if lo <= n <= hi:
                prod[n] = prod.get(n, 0) + va * vb
    den = da * db
    for n, v in prod.items():
        if v:
            acc[n] = acc.get(n, 0) + Fraction(v * scale, den)


def _clean(s: dict, window) -> dict:
    return {n: v for n, v in s.items() if v and _win_contains(window, n)}


def _slice_scale(s, c):
    if c == 0:
        return {}
    return {n: v * c for n, v in s.items()}


# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Comparison:
    """Outcome of comparing two series on the intersection of their boxes."""

    equal: bool
    compared_cells: int
    first_mismatch: tuple | None
    box: ValidityBox

    def __bool__(self) -> bool:
        return self.equal

    def to_json(self) -> dict:
        mm = None
        if self.first_mismatch is not None:
            n, d, a, b = self.first_mismatch
            mm = [n, d, str(a), str(b)]
        return {"pass": self.equal, "compared_cells": self.compared_cells, "first_mismatch": mm}


class BiSeries:
    """Truncated element of ``Q((q))[[t]]``; immutable."""

    __slots__ = ("_slices", "box")

    def __init__(self, coeffs: Mapping, box: ValidityBox):
        slices = [dict() for _ in range(box.tmax + 1)]
        for (n, d), v in coeffs.items():
            v = Fraction(v)
            if not v:
                continue
            if not box.contains(n, d):
                raise OutsideBoxError(f"coefficient at (n={n}, d={d}) lies outside the box")
            slices[d][n] = v
        self._slices = tuple(slices)
        self.box = box

    @classmethod
    def _make(cls, slices, windows) -> "BiSeries":
        obj = cls.__new__(cls)
        obj._slices = tuple(slices)
        obj.box = ValidityBox(len(windows) - 1, tuple(windows))
        return obj

    # constructors -----------------------------------------------------

    @classmethod
    def zero(cls, tmax: int) -> "BiSeries":
        return cls._make([{} for _ in range(tmax + 1)], [FULL] * (tmax + 1))

    @classmethod
    def constant(cls, c, tmax: int) -> "BiSeries":
        return cls.monomial(c, 0, 0, tmax)

    @classmethod
    def monomial(cls, c, n: int, d: int, tmax: int) -> "BiSeries":
        slices = [{} for _ in range(tmax + 1)]
        c = Fraction(c)
        if c and d <= tmax:
            slices[d][n] = c
        return cls._make(slices, [FULL] * (tmax + 1))

    @classmethod
    def from_t_coeffs(cls, values: Iterable) -> "BiSeries":
        """A q-independent series ``sum values[d] t^d``, exact through its length."""
        slices = []
        for v in values:
            v = Fraction(v)
            slices.append({0: v} if v else {})
        if not slices:
            raise EmptyBoxError("empty coefficient list")
        return cls._make(slices, [FULL] * len(slices))

    @classmethod
    def from_laurent(cls, coeffs: Mapping, tmax: int) -> "BiSeries":
        """Exact Laurent polynomial in q with power-series t-part (full windows)."""
        return cls(coeffs, ValidityBox.uniform(tmax))

    # access ------------------------------------------------------------

    @property
    def tmax(self) -> int:
        return self.box.tmax

    def window(self, d: int):
        return self.box.window(d)

    def coeff(self, n: int, d: int) -> Fraction:
        if not self.box.contains(n, d):
            raise OutsideBoxError(
                f"(n={n}, d={d}) is outside the validity box (window {self.box.window(d)})"
            )
        return self._slices[d].get(n, Fraction(0))

    def known(self, n: int, d: int) -> bool:
        return self.box.contains(n, d)

    def __getitem__(self, key) -> Fraction:
        n, d = key
        return self.coeff(n, d)

    def slice(self, d: int) -> dict:
        return dict(self._slices[d])

    @property
    def coeffs(self) -> dict:
        return {(n, d): v for d, s in enumerate(self._slices) for n, v in s.items()}

    def items(self) -> Iterator:
        for d, s in enumerate(self._slices):
            for n in sorted(s):
                yield (n, d), s[n]

    def __len__(self) -> int:
        return sum(len(s) for s in self._slices)

    def is_q_independent(self) -> bool:
        return all(set(s) <= {0} for s in self._slices)

    def t_coeffs(self) -> list:
        """Coefficients of a q-independent series as a list indexed by d."""
        if not self.is_q_independent():
            raise SeriesError("series depends on q")
        return [s.get(0, Fraction(0)) for s in self._slices]

    def q_hull(self):
        """(min n, max n) over stored coefficients, or None for the zero series."""
        ns = [n for s in self._slices for n in s]
        if not ns:
            return None
        return min(ns), max(ns)

    def __repr__(self) -> str:
        terms = []
        for (n, d), v in self.items():
            terms.append(f"{v}*q^{n}*t^{d}")
            if len(terms) >= 6:
                terms.append("...")
                break
        return f"BiSeries({' + '.join(terms) or '0'}; tmax={self.tmax})"

    # arithmetic ----------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, BiSeries):
            return add(self, other)
        if isinstance(other, (int, Fraction)):
            return add(self, BiSeries.constant(other, self.tmax))
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        if isinstance(other, BiSeries):
            return add(self, other.scale(-1))
        if isinstance(other, (int, Fraction)):
            return add(self, BiSeries.constant(-other, self.tmax))
        return NotImplemented

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, BiSeries):
            return mul(self, other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / Fraction(other))
        if isinstance(other, BiSeries):
            return mul(self, invert(other))
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            return invert(self) ** (-k)
        result = BiSeries.constant(1, self.tmax)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> "BiSeries":
        c = Fraction(c)
        return BiSeries._make([_slice_scale(s, c) for s in self._slices], self.box.qwindow)

    # structural ----------------------------------------------------------

    def restrict(self, box: ValidityBox) -> "BiSeries":
        """Forget everything outside ``box`` (intersected with the current box)."""
        new = self.box.intersect(box)
        return BiSeries._make(
            [_clean(self._slices[d], new.qwindow[d]) for d in range(new.tmax + 1)],
            new.qwindow,
        )

    def truncate(self, tmax: int) -> "BiSeries":
        tmax = min(tmax, self.tmax)
        return BiSeries._make(self._slices[: tmax + 1], self.box.qwindow[: tmax + 1])

    def compare(self, other: "BiSeries") -> Comparison:
        """Coefficient-wise comparison on the intersection box."""
        box = self.box.intersect(other.box)
        if box.is_empty():
            raise EmptyBoxError("the two series have disjoint boxes")
        cells = 0
        mismatch = None
        for d in range(box.tmax + 1):
            w = box.qwindow[d]
            if _win_empty(w):
                continue
            sa, sb = self._slices[d], other._slices[d]
            ns = [n for n in set(sa) | set(sb) if _win_contains(w, n)]
            # an infinite window end is counted only up to the furthest nonzero cell
            lo = w[0] if w[0] > -INF else min(ns, default=INF)
            hi = w[1] if w[1] < INF else max(ns, default=-INF)
            if lo <= hi:
                cells += int(hi - lo + 1)
            for n in sorted(ns):
                a, b = sa.get(n, Fraction(0)), sb.get(n, Fraction(0))
                if a != b and mismatch is None:
                    mismatch = (n, d, a, b)
        return Comparison(mismatch is None, cells, mismatch, box)

    def map_coeffs(self, fn: Callable[[int, int, Fraction], Fraction]) -> "BiSeries":
        slices = []
        for d, s in enumerate(self._slices):
            out = {}
            for n, v in s.items():
                w = fn(n, d, v)
                if w:
                    out[n] = w
            slices.append(out)
        return BiSeries._make(slices, self.box.qwindow)

    # convenience wrappers
    def invert(self, qhi=None):
        return invert(self, qhi)

    def exp(self):
        return exp_series(self)

    def log(self):
        return log_series(self)

    def subst_q_inv_t(self):
        return subst_q_inv_t(self)

    def subst_q_t_lambda(self, lam: int):
        return subst_q_t_lambda(self, lam)

    def sign_flip(self):
        return sign_flip(self)


# --------------------------------------------------------------------------
# ring operations


def add(a: BiSeries, b: BiSeries) -> BiSeries:
    """Coefficient-wise sum on the intersection of the two boxes."""
    box = a.box.intersect(b.box)
    if box.is_empty():
        raise EmptyBoxError("box intersection is empty")
    slices = []
    for d in range(box.tmax + 1):
        w = box.qwindow[d]
        out = dict(a._slices[d])
        for n, v in b._slices[d].items():
            out[n] = out.get(n, 0) + v
        slices.append(_clean(out, w))
    return BiSeries._make(slices, box.qwindow)


def _mul_slices(a_slices, a_wins, b_slices, b_wins, tmax):
    out_slices = []
    out_wins = []
    for D in range(tmax + 1):
        win = FULL
        for d1 in range(D + 1):
            win = _win_intersect(
                win, _product_window(a_slices[d1], a_wins[d1], b_slices[D - d1], b_wins[D - d1])
            )
        acc: dict = {}
        if not _win_empty(win):
            for d1 in range(D + 1):
                _slice_mul_into(acc, a_slices[d1], b_slices[D - d1], win)
        out_slices.append(_clean(acc, win))
        out_wins.append(win)
    return out_slices, out_wins


def mul(a: BiSeries, b: BiSeries) -> BiSeries:
    """Cauchy product in t with q-convolution of every pair of slices."""
    tmax = min(a.tmax, b.tmax)
    slices, wins = _mul_slices(a._slices, a.box.qwindow, b._slices, b.box.qwindow, tmax)
    if all(_win_empty(w) for w in wins):
        raise EmptyBoxError("product has an empty validity box")
    return BiSeries._make(slices, wins)


def _invert_slice(s, w, qhi):
    """Inverse of a unit of ``Q((q))``: ``c q^n0 (1 + higher)``."""
    if not s:
        raise SeriesError("t^0 part is zero; not invertible")
    if w[0] > -INF:
        raise SeriesError(
            "t^0 part is not known below its lowest term; cannot locate the leading term"
        )
    n0 = min(s)
    c = s[n0]
    if len(s) == 1 and w[1] == INF:
        return {-n0: 1 / c}, FULL
    hi = w[1] - 2 * n0 if w[1] < INF else INF
    if qhi is not None:
        hi = min(hi, qhi)
    if hi == INF:
        raise SeriesError("inverse is an infinite q-series; pass qhi to truncate it")
    # relative expansion in r = s / (c q^n0) - 1
    length = int(hi + n0) + 1  # relative exponents 0 .. hi + n0
    if length <= 0:
        return {}, (-INF, hi)
    r = [Fraction(0)] * length
    for n, v in s.items():
        j = n - n0
        if 0 < j < length:
            r[j] = v / c
    g = [Fraction(0)] * length
    g[0] = Fraction(1)
    for j in range(1, length):
        acc = Fraction(0)
        for i in range(1, j + 1):
            if r[i]:
                acc += r[i] * g[j - i]
        g[j] = -acc
    inv_c = 1 / c
    out = {j - n0: g[j] * inv_c for j in range(length) if g[j]}
    return out, (-INF, hi)


def invert(a: BiSeries, qhi=None) -> BiSeries:
    """Multiplicative inverse; the t^0 slice must be a unit ``c q^n0 (1 + ...)``.

    ``qhi`` caps the q-precision when the inverse of the t^0 slice is an
    infinite q-series (for instance ``1/(1+q)``).
    """
    b0, w0 = _invert_slice(a._slices[0], a.box.qwindow[0], qhi)
    out_slices = [b0]
    out_wins = [w0]
    neg_b0 = {n: -v for n, v in b0.items()}
    for D in range(1, a.tmax + 1):
        win = FULL
        for k in range(1, D + 1):
            win = _win_intersect(
                win,
                _product_window(a._slices[k], a.box.qwindow[k], out_slices[D - k], out_wins[D - k]),
            )
        acc: dict = {}
        if not _win_empty(win):
            for k in range(1, D + 1):
                _slice_mul_into(acc, a._slices[k], out_slices[D - k], win)
        inner = _clean(acc, win)
        win2 = _product_window(neg_b0, w0, inner, win)
        acc2: dict = {}
        if not _win_empty(win2):
            _slice_mul_into(acc2, neg_b0, inner, win2)
        out_slices.append(_clean(acc2, win2))
        out_wins.append(win2)
    return BiSeries._make(out_slices, out_wins)


def _require_exact_slice(a: BiSeries, d: int, expected: dict, what: str):
    if a.box.qwindow[d] != FULL or a._slices[d] != expected:
        raise SeriesError(what)


def exp_series(a: BiSeries) -> BiSeries:
    """Formal exponential of a series with vanishing t^0 part."""
    _require_exact_slice(a, 0, {}, "exp_series needs a series whose t^0 part is exactly zero")
    e_slices = [{0: Fraction(1)}]
    e_wins = [FULL]
    for D in range(1, a.tmax + 1):
        win = FULL
        for k in range(1, D + 1):
            win = _win_intersect(
                win, _product_window(a._slices[k], a.box.qwindow[k], e_slices[D - k], e_wins[D - k])
            )
        acc: dict = {}
        if not _win_empty(win):
            for k in range(1, D + 1):
                _slice_mul_into(acc, a._slices[k], e_slices[D - k], win, scale=k)
        e_slices.append({n: v / D for n, v in _clean(acc, win).items()})
        e_wins.append(win)
    return BiSeries._make(e_slices, e_wins)


def log_series(a: BiSeries) -> BiSeries:
    """Formal logarithm of a series whose t^0 part is exactly 1."""
    _require_exact_slice(a, 0, {0: Fraction(1)}, "log_series needs t^0 part exactly 1")
    l_slices = [{}]
    l_wins = [FULL]
    for D in range(1, a.tmax + 1):
        win = a.box.qwindow[D]
        for k in range(1, D):
            win = _win_intersect(
                win, _product_window(l_slices[k], l_wins[k], a._slices[D - k], a.box.qwindow[D - k])
            )
        acc: dict = {}
        if not _win_empty(win):
            for k in range(1, D):
                _slice_mul_into(acc, l_slices[k], a._slices[D - k], win, scale=k)
        out = dict(a._slices[D])
        for n, v in acc.items():
            out[n] = out.get(n, 0) - v / D
        l_slices.append(_clean(out, win))
        l_wins.append(win)
    return BiSeries._make(l_slices, l_wins)


# --------------------------------------------------------------------------
# products


def _rising_binomial(a: int, jmax: int) -> list:
    """Coefficients of ``(1 - x)^(-a)`` for ``x^0 .. x^jmax``."""
    out = [1]
    for j in range(1, jmax + 1):
        out.append(out[-1] * (a + j - 1) // j)
    return out


def _mul_by_power_series_in_monomial(state, tmax, qhi, ell, m, coeffs):
    """Dense state[d][n] (n = 0..qhi) times ``sum_j coeffs[j] (q^ell t^m)^j``."""
    # in place, high degrees first, so every read sees the old value
    for d in range(tmax, -1, -1):
        row = state[d]
        for n in range(qhi, -1, -1):
            acc = row[n]
            j = 1
            while j < len(coeffs) and j * m <= d and j * ell <= n:
                v = state[d - j * m][n - j * ell]
                if v:
                    acc += coeffs[j] * v
                j += 1
            row[n] = acc


def double_product(
    e: int,
    sign: int = -1,
    tmax: int = 20,
    qhi: int | None = None,
    ell_weight: Callable[[int], int] | None = None,
) -> BiSeries:
    """``prod_{l,m >= 1} (1 - (sign*q)^l t^m)^(-w(l) * e)`` with ``w(l) = l`` by default.

    Only exponents ``n <= qhi`` are produced; every slice of positive t-degree
    is a power series in q, so the window is ``(-inf, qhi]``.
    """
    if sign not in (1, -1):
        raise SeriesError("sign must be +1 or -1")
    qhi = tmax + 2 if qhi is None else qhi
    weight = ell_weight or (lambda ell: ell)
    state = [[0] * (qhi + 1) for _ in range(tmax + 1)]
    state[0][0] = 1
    if e:
        for ell in range(1, qhi + 1):
            a = weight(ell) * e
            if a == 0:
                continue
            for m in range(1, tmax + 1):
                jmax = min(qhi // ell, tmax // m)
                if jmax == 0:
                    break
                if a > 0:
                    coeffs = _rising_binomial(a, jmax)
                else:
                    coeffs = [(-1) ** j * math.comb(-a, j) for j in range(jmax + 1)]
                if sign == -1 and ell % 2:
                    coeffs = [c if j % 2 == 0 else -c for j, c in enumerate(coeffs)]
                _mul_by_power_series_in_monomial(state, tmax, qhi, ell, m, coeffs)
    slices = [{n: Fraction(v) for n, v in enumerate(row) if v} for row in state]
    wins = [FULL] + [(-INF, qhi)] * tmax
    return BiSeries._make(slices, wins)


def _divisor_sum(n: int, fn: Callable[[int], int]) -> int:
    total = 0
    k = 1
    while k * k <= n:
        if n % k == 0:
            total += fn(k)
            if k * k != n:
                total += fn(n // k)
        k += 1
    return total


def eta_product(exponents, tmax: int = 20) -> BiSeries:
    """``prod_{m >= 1} (1 - t^m)^(k_m)`` as an exact q-independent series.

    ``exponents`` is a single integer ``k`` (used for every m) or a mapping
    ``m -> k_m`` (missing m mean ``k_m = 0``).
    """
    if isinstance(exponents, int):
        k_of = lambda m: exponents  # noqa: E731
    else:
        table = dict(exponents)
        k_of = lambda m: table.get(m, 0)  # noqa: E731
    # N * log-coefficient = -sum_{m | N} m k_m
    logn = [0] + [-_divisor_sum(N, lambda m: m * k_of(m)) for N in range(1, tmax + 1)]
    p = [Fraction(1)] + [Fraction(0)] * tmax
    for N in range(1, tmax + 1):
        acc = 0
        for j in range(1, N + 1):
            if logn[j]:
                acc += logn[j] * p[N - j]
        p[N] = acc / N
    return BiSeries.from_t_coeffs(p)


# --------------------------------------------------------------------------
# substitutions


def _check_nonnegative_images(a: BiSeries, image_degree):
    for d, s in enumerate(a._slices):
        for n in s:
            if image_degree(n, d) < 0:
                raise NegativeDegreeError(
                    f"q^{n} t^{d} is sent to negative t-degree {image_degree(n, d)}; "
                    "restrict the input box so that the substituted series stays in Q[[t]]"
                )


def _run_containing(known: Callable[[int], bool], start: int, step: int, limit: int):
    """Walk from ``start`` in direction ``step`` while known, up to ``limit``."""
    n = start
    last = None
    while (n - limit) * step <= 0 and known(n):
        last = n
        n += step
    return last


def subst_q_inv_t(a: BiSeries) -> BiSeries:
    """``a(q^{-1} t, t)``: the coefficient at (n, d) moves to (-n, d + n)."""
    _check_nonnegative_images(a, lambda n, d: d + n)
    tmax = a.tmax
    slices = []
    wins = []
    for D in range(tmax + 1):
        # output (N, D) comes from input (-N, D + N); N < -D has no preimage
        def known(N, D=D):
            d = D + N
            if d < 0:
                return True
            if d > tmax:
                return False
            return _win_contains(a.box.qwindow[d], -N)

        top = _run_containing(known, -D, 1, tmax - D + 1)
        if top is None:
            # only the part below -D is known (and it is zero)
            win = (-INF, -D - 1)
        else:
            win = (-INF, top)
        out = {}
        for N in range(-D, int(win[1]) + 1):
            v = a._slices[D + N].get(-N)
            if v:
                out[N] = v
        slices.append(out)
        wins.append(win)
    return BiSeries._make(slices, wins)


def subst_q_t_lambda(a: BiSeries, lam: int) -> BiSeries:
    """``a(q t^lam, t)``: the coefficient at (n, d) moves to (n, d + lam n)."""
    if lam == 0:
        return a
    _check_nonnegative_images(a, lambda n, d: d + lam * n)
    tmax = a.tmax
    slices = []
    wins = []
    for D in range(tmax + 1):
        # output (N, D) comes from input (N, D - lam N)
        def known(N, D=D):
            d = D - lam * N
            if d < 0:
                return True
            if d > tmax:
                return False
            return _win_contains(a.box.qwindow[d], N)

        if lam > 0:
            # N > D / lam has no preimage: known zero above
            start = D // lam + 1
            bottom = _run_containing(known, start - 1, -1, -((tmax - D) // lam) - 1)
            win = (start, INF) if bottom is None else (bottom, INF)
            rng = range(int(win[0]), start)
        else:
            mu = -lam
            start = -(D // mu) - 1
            top = _run_containing(known, start + 1, 1, (tmax - D) // mu + 1)
            win = (-INF, start) if top is None else (-INF, top)
            rng = range(start + 1, int(win[1]) + 1)
        out = {}
        for N in rng:
            v = a._slices[D - lam * N].get(N)
            if v:
                out[N] = v
        slices.append(out)
        wins.append(win)
    return BiSeries._make(slices, wins)


def sign_flip(a: BiSeries) -> BiSeries:
    """The substitution ``q -> -q``: coefficient (n, d) times ``(-1)^n``."""
    return a.map_coeffs(lambda n, d, v: -v if n % 2 else v)
