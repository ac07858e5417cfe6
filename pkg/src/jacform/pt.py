"""Stable-pair series: PT_0, wall-crossing factors, N-invariants and the symmetry checks."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .forms import inv_phi_m21_s, phi_m21, phi_m21_s, weierstrass_p, eisenstein
from .sbasis import SBasisSeries, from_sbasis
from .series import (
    INF,
    BiSeries,
    Comparison,
    EmptyBoxError,
    SeriesError,
    ValidityBox,
    double_product,
    eta_product,
    exp_series,
    invert,
    subst_q_inv_t,
)

__all__ = [
    "GeometryParams",
    "SlopeRegion",
    "POSITIVE_SLOPES",
    "NEGATIVE_SLOPES",
    "pt0",
    "f_series",
    "n_invariant",
    "exp_slope_sum",
    "wallcross_factor",
    "charmap",
    "check_elliptic_law",
    "check_inversion_law",
    "genus0_Z",
    "genus1_Z",
    "genus2_Z",
]


@dataclass(frozen=True)
class GeometryParams:
    """Euler characteristics of the threefold and base, the genus h, and the variable.

    ``sign_convention`` is ``"q"`` (products in ``-q``) or ``"p"`` (unweighted, products in ``p``).
    """

    e_X: int
    e_S: int
    h: int = 0
    sign_convention: str = "q"

    def __post_init__(self):
        if self.sign_convention not in ("q", "p"):
            raise ValueError("sign_convention must be 'q' or 'p'")


def f_series(e_X: int, tmax: int = 20, qhi: int | None = None, sign: int = -1) -> BiSeries:
    """``f(q,t) = prod_{l,m>=1} (1 - (sign q)^l t^m)^(-l e_X)``."""
    return double_product(e_X, sign=sign, tmax=tmax, qhi=qhi)


def pt0(g: GeometryParams, tmax: int = 20, qhi: int | None = None) -> BiSeries:
    sign = -1 if g.sign_convention == "q" else 1
    return f_series(g.e_X, tmax, qhi, sign) * eta_product(-g.e_S, tmax)


def n_invariant(n: int, d: int, e_X: int) -> Fraction:
    """``sum_{k | gcd(n, d)} -e_X / k^2``."""
    if d < 1:
        raise SeriesError("d must be positive")
    g = math.gcd(abs(n), d)
    return sum((Fraction(-e_X, k * k) for k in range(1, g + 1) if g % k == 0), Fraction(0))


@dataclass(frozen=True)
class SlopeRegion:
    """Open interval ``(lo, hi)`` of slopes n/d; either end may be infinite."""

    lo: float
    hi: float

    def contains(self, n: int, d: int) -> bool:
        return self.lo * d < n < self.hi * d


POSITIVE_SLOPES = SlopeRegion(0, INF)
NEGATIVE_SLOPES = SlopeRegion(-1, 0)


def exp_slope_sum(
    e_X: int, region: SlopeRegion, tmax: int = 20, qhi: int | None = None
) -> BiSeries:
    """``exp(sum (-1)^(n-1) n N_{n,d} q^n t^d)`` over d >= 1 and n/d in ``region``."""
    if region.lo < -1:
        raise SeriesError("slope region must lie inside (-1, inf)")
    qhi = tmax + 2 if qhi is None else qhi
    slices = [{}]
    wins = [(-INF, INF)]
    for d in range(1, tmax + 1):
        lo = max(math.floor(region.lo * d) + 1, -d + 1) if region.lo > -INF else -d + 1
        hi = qhi if region.hi == INF else min(qhi, math.ceil(region.hi * d) - 1)
        s = {}
        for n in range(lo, hi + 1):
            if n and region.contains(n, d):
                v = (n if n % 2 else -n) * n_invariant(n, d, e_X)
                if v:
                    s[n] = v
        slices.append(s)
        wins.append((-INF, qhi) if region.hi == INF else (-INF, INF))
    return exp_series(BiSeries._make(slices, wins))


def wallcross_factor(e_X: int, tmax: int = 20, qhi: int | None = None) -> BiSeries:
    """``f(q^-1 t, t)^-1 f(q, t)``."""
    qhi = tmax + 2 if qhi is None else qhi
    f = f_series(e_X, tmax, max(qhi, tmax))
    return invert(subst_q_inv_t(f), qhi) * f


def charmap(n: int, d: int, h: int) -> tuple:
    """Index map ``(n, d) -> (-n - 2h + 2, d + n + h - 1)``; an involution."""
    return (-n - 2 * h + 2, d + n + h - 1)


# --------------------------------------------------------------------------
# functional-equation checks


def _check_affine(
    Z: BiSeries, fwd: Callable[[int, int], tuple], box: ValidityBox | None
) -> Comparison:
    """Compare ``c(n,d)`` with ``c(fwd(n,d))`` for every cell of a finite box.

    A cell counts as compared when both it and its image are known; exactly
    known zeros count too, so a q-independent series is still tested.
    """
    box = ValidityBox.default(Z.tmax) if box is None else box
    W = Z.restrict(box)
    cells = 0
    mismatch = None
    for d in range(W.tmax + 1):
        lo, hi = W.window(d)
        if lo == -INF or hi == INF:
            raise SeriesError("the comparison box must be finite")
        for n in range(int(lo), int(hi) + 1):
            n2, d2 = fwd(n, d)
            if not W.known(n2, d2):
                continue
            cells += 1
            a, b = W.coeff(n, d), W.coeff(n2, d2)
            if a != b and mismatch is None:
                mismatch = (n, d, a, b)
    if cells == 0:
        raise EmptyBoxError("no coefficient pair of the law lies inside the box")
    return Comparison(mismatch is None, cells, mismatch, box)


def _clear_poles(Z, pole_order: int | None):
    if isinstance(Z, SBasisSeries):
        k = Z.pole_order
        if pole_order is not None and pole_order < k:
            raise SeriesError(f"series has an s-pole of order {k} > {pole_order}")
        k = k if pole_order is None else pole_order
        return from_sbasis(Z * phi_m21_s(Z.tmax) ** k), k
    k = pole_order or 0
    if k:
        Z = Z * phi_m21(Z.tmax) ** k
    return Z, k


def check_elliptic_law(
    Z, h: int, lam: int, pole_order: int | None = None, box: ValidityBox | None = None
) -> Comparison:
    """Check ``Z(q t^lam, t) = t^(-(h-1) lam^2) q^(-2(h-1) lam) Z(q, t)`` coefficientwise.

    The law in the form ``c_{n,d} = c_{n + 2m lam, d + lam n + m lam^2}`` holds for
    the q-expansion only when Z has no poles in q; poles at ``q = -1`` are first
    cleared by multiplying with ``phi_{-2,1}^k`` (index m = h - 1 + k).  For an
    :class:`SBasisSeries` k is read off; for a BiSeries pass ``pole_order``.
    The comparison runs over ``box`` (default: ``ValidityBox.default(tmax)``).
    """
    W, k = _clear_poles(Z, pole_order)
    m = h - 1 + k
    return _check_affine(W, lambda n, d: (n + 2 * m * lam, d + lam * n + m * lam * lam), box)


def check_inversion_law(Z, h: int, box: ValidityBox | None = None) -> Comparison:
    """Check ``Z(q^-1 t, t) = q^(2(h-1)) t^(-(h-1)) Z(q, t)`` on the q-expansion.

    Coefficientwise this is ``c_{n,d} = c_{charmap(n, d, h)}``; it is a genuine
    identity in ``Q((q))[[t]]`` even when Z has poles at ``q = -1``.
    """
    if isinstance(Z, SBasisSeries):
        Z = from_sbasis(Z)
    return _check_affine(Z, lambda n, d: charmap(n, d, h), box)


# --------------------------------------------------------------------------
# closed formulas in low genus


def _t_only(x, tmax: int) -> SBasisSeries:
    if isinstance(x, SBasisSeries):
        return x.truncate(tmax)
    if isinstance(x, BiSeries):
        return SBasisSeries.from_t_series(x.truncate(tmax))
    if isinstance(x, (int, Fraction)):
        return SBasisSeries.constant(x, tmax)
    vals = list(x)[: tmax + 1]
    return SBasisSeries.from_t_coeffs(vals + [0] * (tmax + 1 - len(vals)))


def _out(z: SBasisSeries, qhi, sbasis: bool):
    return z if sbasis else from_sbasis(z, qhi)


def genus0_Z(F, tmax: int = 20, qhi: int | None = None, sbasis: bool = False):
    """``F(t) / phi_{-2,1}(q,t)``."""
    return _out(_t_only(F, tmax) * inv_phi_m21_s(tmax), qhi, sbasis)


def genus1_Z(gw0, gw1, tmax: int = 20, qhi: int | None = None, sbasis: bool = False):
    """``GW^0(t) wp(q,t) + GW^1(t)``."""
    z = _t_only(gw0, tmax) * weierstrass_p(tmax) + _t_only(gw1, tmax)
    return _out(z, qhi, sbasis)


def genus2_Z(gw0, gw1, gw2, tmax: int = 20, qhi: int | None = None, sbasis: bool = False):
    """The genus-two combination of wp, E_2, E_4 and phi_{-2,1}."""
    wp = weierstrass_p(tmax)
    phi = phi_m21_s(tmax)
    e2 = SBasisSeries.from_t_series(eisenstein(1, tmax))
    e4 = SBasisSeries.from_t_series(eisenstein(2, tmax))
    b0 = (
        wp * wp * phi
        + e2 * wp * phi * Fraction(1, 12)
        + (e2 * e2 * Fraction(1, 288) - e4 * Fraction(11, 1440)) * phi
    )
    b1 = wp * phi + e2 * phi * Fraction(1, 12)
    z = _t_only(gw0, tmax) * b0 + _t_only(gw1, tmax) * b1 + _t_only(gw2, tmax) * phi
    return _out(z, qhi, sbasis)
