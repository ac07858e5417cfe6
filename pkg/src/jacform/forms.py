"""Constructors for the standard q-series and Jacobi forms.

Sign conventions: ``phi_{-2,1}`` has t^0 slice ``q + 2 + q^-1`` and
``wp`` has t^0 slice ``1/s - 1/12``, so ``phi_{0,1}`` starts ``-q + 10 - q^-1``.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .sbasis import SBasisSeries, from_sbasis, to_sbasis
from .series import (
    INF,
    BiSeries,
    SeriesError,
    ValidityBox,
    _divisor_sum,
    eta_product,
)

__all__ = [
    "bernoulli",
    "eisenstein",
    "delta",
    "theta_d4",
    "t_rescale",
    "weierstrass_p",
    "weierstrass_p_q",
    "phi_m21",
    "phi_m21_s",
    "phi_01",
    "phi_01_s",
    "inv_phi_m21_s",
    "f3_tilde_divisor",
    "f3_tilde_eisenstein",
    "FormId",
    "build",
    "clear_memo",
]


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """Bernoulli number ``B_n`` with ``B_1 = -1/2``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return Fraction(1)
    acc = sum(math.comb(n + 1, j) * bernoulli(j) for j in range(n))
    return -acc / (n + 1)


def eisenstein(k: int, tmax: int = 20) -> BiSeries:
    """``E_{2k}(t)``, normalised to constant term 1."""
    if k < 1:
        raise SeriesError("Eisenstein index k must be >= 1")
    c = Fraction(4 * k) / bernoulli(2 * k)
    vals = [Fraction(1)]
    for d in range(1, tmax + 1):
        vals.append(-c * _divisor_sum(d, lambda m: m ** (2 * k - 1)))
    return BiSeries.from_t_coeffs(vals)


def delta(tmax: int = 20) -> BiSeries:
    return eta_product(24, tmax)


def theta_d4(tmax: int = 20) -> BiSeries:
    vals = [1] + [
        24 * _divisor_sum(d, lambda k: k if k % 2 else 0) for d in range(1, tmax + 1)
    ]
    return BiSeries.from_t_coeffs(vals)


def t_rescale(a, r: int):
    """Substitute ``t -> t^r`` in a q-independent series (tmax is kept)."""
    if r < 1:
        raise SeriesError("rescale factor must be a positive integer")
    if isinstance(a, SBasisSeries):
        return a.t_rescale(r)
    if not a.is_q_independent():
        raise SeriesError("t_rescale needs a q-independent series")
    vals = a.t_coeffs()
    out = [Fraction(0)] * len(vals)
    for d, v in enumerate(vals):
        if d * r < len(out):
            out[d * r] = v
    return BiSeries.from_t_coeffs(out)


# --------------------------------------------------------------------------
# Jacobi forms


def _wp_slice_q(d: int) -> dict:
    """t^d slice (d >= 1) of wp: ``-sum_{m|d} m((-q)^m - 2 + (-q)^-m)``."""
    out: dict = {}
    for m in range(1, d + 1):
        if d % m:
            continue
        sgn = -1 if m % 2 else 1
        out[m] = out.get(m, 0) - m * sgn
        out[-m] = out.get(-m, 0) - m * sgn
        out[0] = out.get(0, 0) + 2 * m
    return {n: Fraction(v) for n, v in out.items() if v}


def weierstrass_p(tmax: int = 20) -> SBasisSeries:
    """The Weierstrass function in the s-basis (exact slices)."""
    positive = BiSeries._make(
        [{}] + [_wp_slice_q(d) for d in range(1, tmax + 1)],
        [(-INF, INF)] * (tmax + 1),
    )
    sb = to_sbasis(positive)
    head = SBasisSeries._make(
        [{-1: Fraction(1), 0: Fraction(-1, 12)}] + [{} for _ in range(tmax)]
    )
    return head + sb


def weierstrass_p_q(tmax: int = 20, qhi: int | None = None) -> BiSeries:
    """The Weierstrass function expanded directly in q.

    ``q/(1+q)^2 = sum_{j>=1} (-1)^(j-1) j q^j`` is truncated above ``qhi``.
    """
    qhi = tmax + 2 if qhi is None else qhi
    s0 = {0: Fraction(-1, 12)}
    for j in range(1, qhi + 1):
        s0[j] = Fraction((-1) ** (j - 1) * j)
    slices = [s0] + [_wp_slice_q(d) for d in range(1, tmax + 1)]
    wins = [(-INF, qhi)] + [(-INF, INF)] * tmax
    return BiSeries._make(slices, wins)


def phi_m21(tmax: int = 20) -> BiSeries:
    """``(q + 2 + q^-1) prod (1+q t^m)^2 (1+q^-1 t^m)^2 / (1-t^m)^4``, exact in q."""
    acc = BiSeries.from_laurent({(1, 0): 1, (0, 0): 2, (-1, 0): 1}, tmax)
    for m in range(1, tmax + 1):
        plus = BiSeries.from_laurent({(0, 0): 1, (1, m): 1}, tmax)
        minus = BiSeries.from_laurent({(0, 0): 1, (-1, m): 1}, tmax)
        acc = acc * plus * plus * minus * minus
    return acc * eta_product(-4, tmax)


def phi_m21_s(tmax: int = 20) -> SBasisSeries:
    """phi_{-2,1} in the s-basis: ``s prod (1 + (s-2) t^m + t^2m)^2 / (1-t^m)^4``."""
    acc = SBasisSeries.s_power(1, tmax)
    for m in range(1, tmax + 1):
        coeffs = {(0, 0): 1}
        if m <= tmax:
            coeffs[(1, m)] = 1
            coeffs[(0, m)] = -2
        if 2 * m <= tmax:
            coeffs[(0, 2 * m)] = coeffs.get((0, 2 * m), 0) + 1
        f = SBasisSeries(coeffs, tmax)
        acc = acc * f * f
    return acc * SBasisSeries.from_t_series(eta_product(-4, tmax))


def inv_phi_m21_s(tmax: int = 20) -> SBasisSeries:
    return phi_m21_s(tmax).invert()


def phi_01_s(tmax: int = 20) -> SBasisSeries:
    return weierstrass_p(tmax) * phi_m21_s(tmax) * 12


def phi_01(tmax: int = 20) -> BiSeries:
    """``12 wp phi_{-2,1}``; a Laurent polynomial in q at each t-degree."""
    return from_sbasis(phi_01_s(tmax))


# --------------------------------------------------------------------------
# the naive Euler characteristic series


def f3_tilde_divisor(tmax: int = 20) -> BiSeries:
    """``1 + 12 sum_{d>=1} sum_{k|d} (2k t^d + k t^2d)``."""
    vals = [Fraction(0)] * (tmax + 1)
    vals[0] = Fraction(1)
    for d in range(1, tmax + 1):
        sig = _divisor_sum(d, lambda k: k)
        vals[d] += 24 * sig
        if 2 * d <= tmax:
            vals[2 * d] += 12 * sig
    return BiSeries.from_t_coeffs(vals)


def f3_tilde_eisenstein(tmax: int = 20) -> BiSeries:
    """``5/2 - E_2(t) - E_2(t^2)/2``."""
    e2 = eisenstein(1, tmax)
    return BiSeries.constant(Fraction(5, 2), tmax) - e2 - t_rescale(e2, 2).scale(Fraction(1, 2))


# --------------------------------------------------------------------------
# symbolic identifiers and the process-wide memo

_KINDS = {
    "eisenstein": 1,
    "delta": 0,
    "phi_m21": 0,
    "phi_01": 0,
    "wp": 0,
    "theta_d4": 0,
    "eta_product": 1,
    "t_rescale": 2,
}


@dataclass(frozen=True)
class FormId:
    """Name plus parameters of a standard generator.

    ``params`` for each kind: ``eisenstein`` (k,), ``eta_product`` (exponents,)
    where exponents is an int or a tuple of (m, k_m) pairs, ``t_rescale``
    (base FormId, r); the others take none.
    """

    kind: str
    params: tuple = ()

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise KeyError(f"unknown form kind {self.kind!r}; known: {sorted(_KINDS)}")
        if len(self.params) != _KINDS[self.kind]:
            raise SeriesError(f"{self.kind} takes {_KINDS[self.kind]} parameter(s)")

    def to_json(self) -> dict:
        params = []
        for p in self.params:
            if isinstance(p, FormId):
                params.append(p.to_json())
            elif isinstance(p, tuple):
                params.append([list(x) for x in p])
            else:
                params.append(p)
        return {"kind": self.kind, "params": params}

    @classmethod
    def from_json(cls, obj) -> "FormId":
        kind = obj["kind"]
        raw = obj.get("params", [])
        params = []
        for p in raw:
            if isinstance(p, dict):
                params.append(cls.from_json(p))
            elif isinstance(p, list):
                params.append(tuple(tuple(x) for x in p))
            else:
                params.append(p)
        return cls(kind, tuple(params))

    def __str__(self) -> str:
        if not self.params:
            return self.kind
        inner = ",".join(str(p) for p in self.params)
        return f"{self.kind}({inner})"


def _build_uncached(fid: FormId, tmax: int) -> BiSeries:
    k = fid.kind
    if k == "eisenstein":
        return eisenstein(fid.params[0], tmax)
    if k == "delta":
        return delta(tmax)
    if k == "phi_m21":
        return phi_m21(tmax)
    if k == "phi_01":
        return phi_01(tmax)
    if k == "wp":
        return weierstrass_p_q(tmax, tmax + 2)
    if k == "theta_d4":
        return theta_d4(tmax)
    if k == "eta_product":
        ex = fid.params[0]
        return eta_product(ex if isinstance(ex, int) else dict(ex), tmax)
    base, r = fid.params
    return t_rescale(_build_uncached(base, tmax), r)


_memo: dict = {}
_memo_lock = threading.Lock()


def build(fid: FormId, box: ValidityBox | None = None) -> BiSeries:
    """Construct ``fid`` restricted to ``box`` (default box if omitted), memoised.

    Concurrent callers may compute the same entry twice; the first stored
    value wins and both results are equal.
    """
    box = box or ValidityBox.default()
    key = (fid, box)
    with _memo_lock:
        hit = _memo.get(key)
    if hit is not None:
        return hit
    value = _build_uncached(fid, box.tmax).restrict(box)
    with _memo_lock:
        return _memo.setdefault(key, value)


def clear_memo() -> None:
    with _memo_lock:
        _memo.clear()
