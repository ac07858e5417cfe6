"""Series in the symmetric variable ``s = q + 2 + q^-1`` and in ``u`` (``q = -e^{iu}``).

Every q-symmetric slice met in this package is a Laurent polynomial in
``s``; :class:`SBasisSeries` stores those slices exactly and is truncated only
in t.  Negative powers of ``s`` are the poles at ``q = -1``; their q-expansions
``s^-k = q^k (1+q)^-2k`` are infinite, which is why :func:`from_sbasis` takes a
q-precision.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .series import (
    FULL,
    INF,
    BiSeries,
    OutsideBoxError,
    SeriesError,
    _product_window,
    _slice_mul_into,
    _win_contains,
)

__all__ = [
    "AsymmetricSliceError",
    "SBasisSeries",
    "USeries",
    "to_sbasis",
    "from_sbasis",
    "u_expand",
    "s_power_q",
]


class AsymmetricSliceError(SeriesError):
    pass


def _poly_mul(a: Mapping[int, Fraction], b: Mapping[int, Fraction]) -> dict:
    out: dict = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = out.get(i + j, 0) + x * y
    return {k: v for k, v in out.items() if v}


def _poly_add(a, b, c=1):
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + c * v
    return {k: v for k, v in out.items() if v}


class SBasisSeries:
    """Truncated element of ``Q[s, s^-1][[t]]``; immutable.

    ``slices[d]`` maps s-exponents to rationals.  Slices are exact; the only
    truncation is ``tmax``.
    """

    __slots__ = ("_slices",)

    def __init__(self, coeffs: Mapping, tmax: int):
        slices = [dict() for _ in range(tmax + 1)]
        for (k, d), v in coeffs.items():
            v = Fraction(v)
            if not v:
                continue
            if not 0 <= d <= tmax:
                raise OutsideBoxError(f"t-degree {d} outside 0..{tmax}")
            slices[d][k] = v
        self._slices = tuple(slices)

    @classmethod
    def _make(cls, slices) -> "SBasisSeries":
        obj = cls.__new__(cls)
        obj._slices = tuple({k: v for k, v in s.items() if v} for s in slices)
        return obj

    @classmethod
    def constant(cls, c, tmax: int) -> "SBasisSeries":
        c = Fraction(c)
        return cls._make([{0: c}] + [{} for _ in range(tmax)])

    @classmethod
    def s_power(cls, k: int, tmax: int) -> "SBasisSeries":
        return cls._make([{k: Fraction(1)}] + [{} for _ in range(tmax)])

    @classmethod
    def from_t_coeffs(cls, values: Iterable) -> "SBasisSeries":
        return cls._make([{0: Fraction(v)} for v in values])

    @classmethod
    def from_t_series(cls, a: BiSeries) -> "SBasisSeries":
        return cls.from_t_coeffs(a.t_coeffs())

    # access --------------------------------------------------------------

    @property
    def tmax(self) -> int:
        return len(self._slices) - 1

    def coeff(self, k: int, d: int) -> Fraction:
        if not 0 <= d <= self.tmax:
            raise OutsideBoxError(f"t-degree {d} outside 0..{self.tmax}")
        return self._slices[d].get(k, Fraction(0))

    def __getitem__(self, key) -> Fraction:
        return self.coeff(*key)

    def slice(self, d: int) -> dict:
        return dict(self._slices[d])

    @property
    def coeffs(self) -> dict:
        return {(k, d): v for d, s in enumerate(self._slices) for k, v in s.items()}

    def swindow(self, d: int):
        """(lowest, highest) s-exponent present at t-degree d, or None."""
        s = self._slices[d]
        if not s:
            return None
        return min(s), max(s)

    @property
    def pole_order(self) -> int:
        """Largest k such that some slice contains ``s^-k`` (0 if none)."""
        lows = [min(s) for s in self._slices if s]
        return max([0] + [-k for k in lows])

    def is_t_only(self) -> bool:
        return all(set(s) <= {0} for s in self._slices)

    def t_coeffs(self) -> list:
        if not self.is_t_only():
            raise SeriesError("series depends on s")
        return [s.get(0, Fraction(0)) for s in self._slices]

    def __repr__(self) -> str:
        parts = []
        for d, s in enumerate(self._slices[:3]):
            if s:
                inner = " + ".join(f"{v}*s^{k}" for k, v in sorted(s.items()))
                parts.append(f"({inner})*t^{d}")
        return f"SBasisSeries({' + '.join(parts) or '0'} + ...; tmax={self.tmax})"

    def equals(self, other: "SBasisSeries") -> bool:
        tmax = min(self.tmax, other.tmax)
        return all(self._slices[d] == other._slices[d] for d in range(tmax + 1))

    # arithmetic ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, SBasisSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return SBasisSeries.constant(other, self.tmax)
        if isinstance(other, BiSeries) and other.is_q_independent():
            return SBasisSeries.from_t_series(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        tmax = min(self.tmax, other.tmax)
        return SBasisSeries._make(
            [_poly_add(self._slices[d], other._slices[d]) for d in range(tmax + 1)]
        )

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + other.scale(-1)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def scale(self, c) -> "SBasisSeries":
        c = Fraction(c)
        return SBasisSeries._make([{k: v * c for k, v in s.items()} for s in self._slices])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        tmax = min(self.tmax, other.tmax)
        out = []
        for D in range(tmax + 1):
            acc: dict = {}
            for d1 in range(D + 1):
                a, b = self._slices[d1], other._slices[D - d1]
                if a and b:
                    _slice_mul_into(acc, a, b, FULL)
            out.append(acc)
        return SBasisSeries._make(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / Fraction(other))
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.invert()

    def __pow__(self, k: int) -> "SBasisSeries":
        if k < 0:
            return self.invert() ** (-k)
        result = SBasisSeries.constant(1, self.tmax)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def invert(self) -> "SBasisSeries":
        """Inverse when the t^0 slice is a single monomial ``c s^k``."""
        s0 = self._slices[0]
        if len(s0) != 1:
            raise SeriesError(
                "t^0 slice must be a single monomial c*s^k to invert in Q[s, 1/s][[t]]"
            )
        (k0, c0), = s0.items()
        b0 = {-k0: 1 / c0}
        out = [b0]
        for D in range(1, self.tmax + 1):
            acc: dict = {}
            for k in range(1, D + 1):
                a, b = self._slices[k], out[D - k]
                if a and b:
                    _slice_mul_into(acc, a, b, FULL)
            out.append({n: -v / c0 for n, v in ((n - k0, v) for n, v in acc.items()) if v})
        return SBasisSeries._make(out)

    def truncate(self, tmax: int) -> "SBasisSeries":
        return SBasisSeries._make(self._slices[: min(tmax, self.tmax) + 1])

    def t_rescale(self, r: int) -> "SBasisSeries":
        """``t -> t^r`` (keeps tmax)."""
        out = [{} for _ in range(self.tmax + 1)]
        for d, s in enumerate(self._slices):
            if d * r <= self.tmax:
                out[d * r] = dict(s)
        return SBasisSeries._make(out)

    def to_bi(self, qhi: int | None = None) -> BiSeries:
        return from_sbasis(self, qhi)


# --------------------------------------------------------------------------
# conversion to and from q


@lru_cache(maxsize=None)
def _s_power_finite(k: int) -> tuple:
    """q-expansion of ``s^k`` for ``k >= 0``: ``q^-k (1+q)^(2k)``."""
    return tuple((j - k, math.comb(2 * k, j)) for j in range(2 * k + 1))


def s_power_q(k: int, qhi: int | None = None) -> dict:
    """q-expansion of ``s^k`` as ``{n: coefficient}``; truncated at ``qhi`` if k < 0."""
    if k >= 0:
        return {n: Fraction(c) for n, c in _s_power_finite(k) if qhi is None or n <= qhi}
    if qhi is None:
        raise SeriesError("s^k with k < 0 has an infinite q-expansion; give qhi")
    K = -k
    out = {}
    for j in range(0, qhi - K + 1):
        out[K + j] = Fraction((-1) ** j * math.comb(2 * K + j - 1, j))
    return out


def from_sbasis(a: SBasisSeries, qhi: int | None = None) -> BiSeries:
    """Expand in q.  Slices with negative s-powers are truncated above ``qhi``."""
    qhi = a.tmax + 2 if qhi is None else qhi
    slices = []
    wins = []
    for s in a._slices:
        out: dict = {}
        polar = any(k < 0 for k in s)
        for k, b in s.items():
            for n, c in s_power_q(k, qhi if k < 0 else None).items():
                out[n] = out.get(n, 0) + b * c
        win = (-INF, qhi) if polar else FULL
        slices.append({n: v for n, v in out.items() if v and _win_contains(win, n)})
        wins.append(win)
    return BiSeries._make(slices, wins)


def _peel(poly: dict) -> dict:
    """Write a symmetric Laurent polynomial in q as a polynomial in s."""
    poly = dict(poly)
    out = {}
    while poly:
        top = max(poly)
        if top < 0:
            raise AsymmetricSliceError("slice is not symmetric under q <-> 1/q")
        c = poly[top]
        out[top] = c
        for n, b in _s_power_finite(top):
            v = poly.get(n, 0) - c * b
            if v:
                poly[n] = v
            else:
                poly.pop(n, None)
    return out


def to_sbasis(a: BiSeries, pole_order: int = 0) -> SBasisSeries:
    """Rewrite each q-symmetric slice in powers of s.

    With ``pole_order = k`` every slice is first multiplied by ``s^k``; the
    product must be a symmetric Laurent polynomial whose mirror image is
    visible inside the slice's window.
    """
    if pole_order < 0:
        raise SeriesError("pole_order must be non-negative")
    sk = {n: Fraction(c) for n, c in _s_power_finite(pole_order)}
    out = []
    for d in range(a.tmax + 1):
        s, w = a._slices[d], a.box.qwindow[d]
        if pole_order:
            win = _product_window(s, w, sk, FULL)
            acc: dict = {}
            _slice_mul_into(acc, s, sk, win)
            s = {n: v for n, v in acc.items() if v and _win_contains(win, n)}
            w = win
        reach = max([0] + [abs(n) for n in s])
        if not (w[0] <= -reach and w[1] >= reach):
            raise AsymmetricSliceError(
                f"t^{d} slice: window {w} does not show the mirror of every term "
                f"(needs [-{reach}, {reach}]); raise q-precision or the pole order"
            )
        for n, v in s.items():
            if s.get(-n) != v:
                raise AsymmetricSliceError(
                    f"t^{d} slice is not symmetric: q^{n} has {v}, q^{-n} has {s.get(-n, 0)}"
                )
        peeled = _peel(s)
        out.append({k - pole_order: v for k, v in peeled.items()})
    return SBasisSeries._make(out)


# --------------------------------------------------------------------------
# u-expansion


@lru_cache(maxsize=None)
def _s_over_u2(order: int) -> tuple:
    """Coefficients of ``(2 - 2 cos u) / u^2`` in ``w = u^2``, through ``w^order``."""
    return tuple(
        Fraction(2 * (-1) ** i, math.factorial(2 * i + 2)) for i in range(order + 1)
    )


def _series_power(base: tuple, k: int, order: int) -> list:
    """``base^k`` for a series with ``base[0] == 1`` (any integer k)."""
    p = [Fraction(0)] * (order + 1)
    p[0] = Fraction(1)
    for n in range(1, order + 1):
        acc = Fraction(0)
        for i in range(1, n + 1):
            if i < len(base) and base[i]:
                acc += ((k + 1) * i - n) * base[i] * p[n - i]
        p[n] = acc / n
    return p


class USeries:
    """Truncated Laurent series in ``u`` (even exponents only) with t-series coefficients."""

    __slots__ = ("_coeffs", "tmax", "umin", "umax")

    def __init__(self, coeffs: Mapping, tmax: int, umin: int, umax: int):
        clean = {}
        for (j, d), v in coeffs.items():
            v = Fraction(v)
            if not v:
                continue
            if j % 2:
                raise SeriesError("odd u-exponent")
            if not (umin <= j <= umax and 0 <= d <= tmax):
                raise OutsideBoxError(f"(u^{j}, t^{d}) outside the box")
            clean[(j, d)] = v
        self._coeffs = clean
        self.tmax = tmax
        self.umin = umin
        self.umax = umax

    def coeff(self, j: int, d: int) -> Fraction:
        if not (0 <= d <= self.tmax and j <= self.umax):
            raise OutsideBoxError(f"(u^{j}, t^{d}) outside the box")
        return self._coeffs.get((j, d), Fraction(0))

    def __getitem__(self, key) -> Fraction:
        return self.coeff(*key)

    @property
    def coeffs(self) -> dict:
        return dict(self._coeffs)

    def t_series(self, j: int) -> list:
        """The coefficient of ``u^j`` as a list of t-coefficients."""
        return [self.coeff(j, d) for d in range(self.tmax + 1)]

    def __repr__(self):
        return f"USeries({len(self._coeffs)} terms; u^{self.umin}..u^{self.umax}, tmax={self.tmax})"


def u_expand(a: SBasisSeries, umax: int) -> USeries:
    """Substitute ``s = 2 - 2 cos u`` and keep u-exponents ``<= umax``."""
    if umax % 2:
        raise SeriesError("umax must be even")
    ks = [k for s in a._slices for k in s]
    kmin = min(ks) if ks else 0
    if umax < 2 * kmin:
        raise SeriesError(
            f"umax={umax} cannot hold the leading term u^{2 * kmin} of s^{kmin}"
        )
    base = _s_over_u2(max(0, umax // 2 - kmin))
    powers: dict = {}
    coeffs: dict = {}
    for d, s in enumerate(a._slices):
        for k, b in s.items():
            order = umax // 2 - k
            if order < 0:
                continue
            if k not in powers or len(powers[k]) < order + 1:
                powers[k] = _series_power(base, k, order)
            pk = powers[k]
            for i in range(order + 1):
                if pk[i]:
                    key = (2 * (k + i), d)
                    coeffs[key] = coeffs.get(key, 0) + b * pk[i]
    return USeries(coeffs, a.tmax, 2 * kmin, umax)
