"""Decomposition into ``QMod[phi_{-2,1}, phi_{0,1}]`` at fixed weight and index."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .forms import eisenstein, phi_01_s, phi_m21_s
from .sbasis import SBasisSeries, from_sbasis
from .series import INF, BiSeries, SeriesError, ValidityBox

__all__ = [
    "GradedMonomial",
    "Decomposition",
    "UnderdeterminedError",
    "basis_enum",
    "monomial_series",
    "combine",
    "decompose",
    "system_rank",
]


class UnderdeterminedError(SeriesError):
    pass


@dataclass(frozen=True, order=True)
class GradedMonomial:
    """``E2^a E4^b E6^c phi_{-2,1}^d phi_{0,1}^e``."""

    a: int = 0
    b: int = 0
    c: int = 0
    d: int = 0
    e: int = 0

    @property
    def weight(self) -> int:
        return 2 * self.a + 4 * self.b + 6 * self.c - 2 * self.d

    @property
    def index(self) -> int:
        return self.d + self.e

    def __str__(self) -> str:
        names = ("E2", "E4", "E6", "phi_m21", "phi_01")
        parts = []
        for name, k in zip(names, (self.a, self.b, self.c, self.d, self.e)):
            if k == 1:
                parts.append(name)
            elif k:
                parts.append(f"{name}^{k}")
        return "*".join(parts) or "1"

    @classmethod
    def parse(cls, text: str) -> "GradedMonomial":
        names = {"E2": 0, "E4": 1, "E6": 2, "phi_m21": 3, "phi_01": 4}
        ex = [0] * 5
        if text.strip() != "1":
            for part in text.split("*"):
                name, _, k = part.strip().partition("^")
                ex[names[name]] += int(k) if k else 1
        return cls(*ex)


def basis_enum(weight: int, index: int, quasi: bool = True) -> list:
    """All monomials of the given weight and index, sorted by ``(a,b,c,d,e)``.

    With ``quasi=False`` E2 is excluded (honest modular forms only).
    """
    if weight % 2:
        raise ValueError("weight must be even")
    if index < 0 or weight < -2 * index:
        raise ValueError("need index >= 0 and weight >= -2*index")
    out = []
    for d in range(index + 1):
        e = index - d
        rest = weight + 2 * d
        for a in range(rest // 2 + 1 if quasi else 1):
            for b in range((rest - 2 * a) // 4 + 1):
                r = rest - 2 * a - 4 * b
                if r % 6 == 0:
                    out.append(GradedMonomial(a, b, r // 6, d, e))
    return sorted(out)


@lru_cache(maxsize=256)
def _monomial_s(m: GradedMonomial, tmax: int) -> SBasisSeries:
    z = SBasisSeries.constant(1, tmax)
    for k, ex in ((1, m.a), (2, m.b), (3, m.c)):
        if ex:
            z = z * SBasisSeries.from_t_series(eisenstein(k, tmax)) ** ex
    if m.d:
        z = z * phi_m21_s(tmax) ** m.d
    if m.e:
        z = z * phi_01_s(tmax) ** m.e
    return z


def monomial_series(m: GradedMonomial, tmax: int = 20) -> BiSeries:
    return from_sbasis(_monomial_s(m, tmax))


def combine(coeffs: dict, tmax: int = 20) -> BiSeries:
    """``sum c_M M`` for a mapping monomial -> coefficient."""
    z = SBasisSeries.constant(0, tmax)
    for m, c in coeffs.items():
        z = z + _monomial_s(m, tmax) * Fraction(c)
    return from_sbasis(z)


@dataclass
class Decomposition:
    ok: bool
    coefficients: dict
    residual_cell: tuple | None
    unique: bool = True
    rank: int = 0
    cells: int = 0
    basis: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "coefficients": {str(m): str(c) for m, c in self.coefficients.items()},
            "residual_cell": list(self.residual_cell) if self.residual_cell else None,
        }


def _cells(box: ValidityBox):
    for d in range(box.tmax + 1):
        lo, hi = box.window(d)
        if lo == -INF or hi == INF:
            raise SeriesError("decomposition needs a finite box")
        for n in range(int(lo), int(hi) + 1):
            yield n, d


def _system(basis, target, box):
    cols = [monomial_series(m, box.tmax) for m in basis]
    cells = [c for c in _cells(box) if target.known(*c)]
    A = [[col.coeff(n, d) for col in cols] for n, d in cells]
    b = [target.coeff(n, d) for n, d in cells]
    return cells, A, b, cols


def decompose(
    target, weight: int, index: int, box: ValidityBox | None = None, quasi: bool = True
) -> Decomposition:
    """Solve ``sum c_M M = target`` exactly over every cell of ``box``.

    Success needs every cell to match; otherwise the first cell (by t, then q)
    where the best pivot solution leaves a residual is reported.
    """
    if isinstance(target, SBasisSeries):
        target = from_sbasis(target)
    box = box or ValidityBox.default(target.tmax)
    target = target.restrict(box)
    basis = basis_enum(weight, index, quasi)
    cells, A, b, cols = _system(basis, target, box)
    if len(cells) < 2 * len(basis):
        raise UnderdeterminedError(
            f"{len(cells)} cells for {len(basis)} unknowns; enlarge the box"
        )
    if basis:
        sol = linalg.solve(A, b)
        x, rk = sol.x, sol.rank
    else:
        x, rk = [], 0
    residual = None
    for row, (n, d), bi in zip(A, cells, b):
        if sum((ai * xi for ai, xi in zip(row, x)), Fraction(0)) != bi:
            residual = (n, d)
            break
    coeffs = {m: c for m, c in zip(basis, x) if c}
    return Decomposition(residual is None, coeffs, residual, rk == len(basis), rk, len(cells), basis)


def system_rank(weight: int, index: int, box: ValidityBox | None = None, quasi: bool = True) -> int:
    """Column rank of the basis evaluated on ``box``."""
    box = box or ValidityBox.default()
    basis = basis_enum(weight, index, quasi)
    cols = [monomial_series(m, box.tmax) for m in basis]
    rows = [[col.coeff(n, d) for col in cols] for n, d in _cells(box)]
    return linalg.rank(rows)
