"""From Gromov-Witten series to the coefficients f_i of the Jacobi-form expansion.

Writing ``M_i = phi_{-2,1}^(i-1) phi_{0,1}^(h-i)``, the u-expansion of ``M_i``
starts at ``12^(h-i) u^(2i-2)``, so matching ``sum f_i M_i`` against
``sum_g GW^g u^(2g-2)`` modulo ``u^(2h)`` is a lower-triangular system that is
solved by forward substitution in ``Q[[t]]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .forms import phi_01_s, phi_m21_s
from .sbasis import SBasisSeries, from_sbasis, u_expand
from .series import BiSeries, SeriesError, _divisor_sum, invert, sign_flip

__all__ = [
    "GWInput",
    "FCoefficients",
    "monomial_s",
    "monomial_u",
    "gw_matrix",
    "invert_gw",
    "assemble_Z",
    "gw_of",
    "gw3_abelian",
    "euler_variant",
]


def _as_t_series(x, tmax: int) -> BiSeries:
    if isinstance(x, BiSeries):
        if not x.is_q_independent():
            raise SeriesError("GW and f series must be q-independent")
        x = x.truncate(tmax)
        vals = x.t_coeffs()
    elif isinstance(x, SBasisSeries):
        vals = x.t_coeffs()[: tmax + 1]
    elif isinstance(x, (int, Fraction)):
        vals = [x]
    else:
        vals = list(x)[: tmax + 1]
    vals = [Fraction(v) for v in vals]
    return BiSeries.from_t_coeffs(vals + [Fraction(0)] * (tmax + 1 - len(vals)))


@dataclass(frozen=True)
class GWInput:
    """``GW^0(t), ..., GW^h(t)`` for a class of arithmetic genus h."""

    h: int
    gw: tuple

    def __post_init__(self):
        if self.h < 0:
            raise SeriesError("genus must be non-negative")
        if len(self.gw) != self.h + 1:
            raise SeriesError(f"need exactly h+1 = {self.h + 1} GW series, got {len(self.gw)}")


@dataclass(frozen=True)
class FCoefficients:
    """``f_{i_min}, ..., f_h`` as q-independent series; ``f[j]`` is ``f_{i_min + j}``."""

    h: int
    f: tuple
    i_min: int = 0

    def __post_init__(self):
        if len(self.f) != self.h - self.i_min + 1:
            raise SeriesError("f must hold one series for each i = i_min..h")

    def __getitem__(self, i: int):
        return self.f[i - self.i_min]

    @property
    def indices(self) -> range:
        return range(self.i_min, self.h + 1)


@lru_cache(maxsize=64)
def monomial_s(i: int, h: int, tmax: int) -> SBasisSeries:
    """``phi_{-2,1}^(i-1) phi_{0,1}^(h-i)`` in the s-basis."""
    if i > h:
        raise SeriesError("need i <= h")
    return phi_m21_s(tmax) ** (i - 1) * phi_01_s(tmax) ** (h - i)


def monomial_u(i: int, h: int, umax: int, tmax: int = 20):
    if umax < 2 * h - 2:
        raise SeriesError(f"umax must be at least 2h-2 = {2 * h - 2}")
    return u_expand(monomial_s(i, h, tmax), umax)


def gw_matrix(h: int, tmax: int) -> list:
    """``A[g][i]``: the t-series coefficient of ``u^(2g-2)`` in ``M_i``."""
    umax = max(2 * h, 4)
    rows = [[None] * (h + 1) for _ in range(h + 1)]
    for i in range(h + 1):
        u = monomial_u(i, h, umax, tmax)
        for g in range(h + 1):
            rows[g][i] = BiSeries.from_t_coeffs(u.t_series(2 * g - 2))
    return rows


def invert_gw(inp: GWInput, tmax: int = 20) -> FCoefficients:
    h = inp.h
    A = gw_matrix(h, tmax)
    for g in range(h + 1):
        for i in range(g + 1, h + 1):
            if any(A[g][i].t_coeffs()):
                raise AssertionError(f"u-expansion of M_{i} has a u^{2 * g - 2} term")
        assert A[g][g].t_coeffs()[0] == 12 ** (h - g)
    gw = [_as_t_series(x, tmax) for x in inp.gw]
    f = []
    for g in range(h + 1):
        rhs = gw[g]
        for i in range(g):
            rhs = rhs - A[g][i] * f[i]
        f.append(rhs * invert(A[g][g]))
    return FCoefficients(h, tuple(f))


def assemble_Z(f: FCoefficients, tmax: int = 20, qhi: int | None = None, sbasis: bool = False):
    """``sum_i f_i(t) phi_{-2,1}^(i-1) phi_{0,1}^(h-i)``."""
    z = SBasisSeries.constant(0, tmax)
    for i in f.indices:
        fi = SBasisSeries.from_t_series(_as_t_series(f[i], tmax))
        z = z + fi * monomial_s(i, f.h, tmax)
    return z if sbasis else from_sbasis(z, qhi)


def gw_of(z: SBasisSeries, h: int) -> GWInput:
    """Read ``GW^0..GW^h`` back off a series: its u-coefficients below ``u^(2h)``."""
    u = u_expand(z, max(2 * h, 4))
    return GWInput(h, tuple(BiSeries.from_t_coeffs(u.t_series(2 * g - 2)) for g in range(h + 1)))


def gw3_abelian(tmax: int = 20) -> BiSeries:
    """``sum_{d>=1} (8 sigma(2d) + 64 sigma(d/2) [d even]) t^d``."""
    sigma = lambda n: _divisor_sum(n, lambda k: k)  # noqa: E731
    vals = [0]
    for d in range(1, tmax + 1):
        vals.append(8 * sigma(2 * d) + (64 * sigma(d // 2) if d % 2 == 0 else 0))
    return BiSeries.from_t_coeffs(vals)


def euler_variant(f: FCoefficients, tmax: int = 20, qhi: int | None = None) -> BiSeries:
    """``assemble_Z`` followed by ``q -> -p``."""
    return sign_flip(assemble_Z(f, tmax, qhi))
