"""The cusp profile, the blow-up initial datum and rational/irrational times."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np

from .grid import Grid3, RealField, SpectralField, forward_transform, inverse_transform
from .multipliers import apply_propagator

__all__ = [
    "ProfileSpec",
    "BlowupSpec",
    "SingularTimeSet",
    "GenericityProbe",
    "PeriodizationWarning",
    "sample_profile",
    "profile_transform",
    "project_profile",
    "coprime_pairs",
    "coefficient",
    "build_u0",
    "genericity_margin",
    "GOLDEN",
    "golden_times",
]

GOLDEN = (1 + math.sqrt(5)) / 2


class PeriodizationWarning(UserWarning):
    """Profile is not negligible on the box boundary."""


@dataclass(frozen=True)
class ProfileSpec:
    b: float = 2.0

    def __post_init__(self):
        if not self.b > 0:
            raise ValueError(f"profile decay rate b must be positive, got {self.b}")


@dataclass(frozen=True)
class BlowupSpec:
    """Truncation of the double sum ``sum c_jk W(-j/k) phi`` over coprime pairs.

    ``window`` restricts the retained terms to ``window[0] <= j/k <= window[1]``.
    ``custom`` maps (j, k) to a coefficient and replaces the default rule
    ``exp(-e^k) exp(-j^2)``.
    """

    j_max: int = 3
    k_max: int = 2
    profile: ProfileSpec = ProfileSpec()
    custom: dict | None = None
    window: tuple[float, float] = (0.0, math.inf)

    def __post_init__(self):
        if self.j_max < 1 or self.k_max < 1:
            raise ValueError("j_max and k_max must be >= 1")


@dataclass
class SingularTimeSet:
    times: list[Fraction] = field(default_factory=list)
    coefficients: list[float] = field(default_factory=list)

    def __post_init__(self):
        if len(set(self.times)) != len(self.times):
            raise ValueError("singular times must be distinct")

    def __contains__(self, t) -> bool:
        return any(abs(float(q) - float(t)) < 1e-12 for q in self.times)

    def __len__(self) -> int:
        return len(self.times)

    def as_floats(self) -> list[float]:
        return [float(q) for q in self.times]


@dataclass(frozen=True)
class GenericityProbe:
    gamma: float
    K: int

    def __post_init__(self):
        if self.K < 2:
            raise ValueError("search bound K must be >= 2")


def sample_profile(spec: ProfileSpec, grid: Grid3) -> RealField:
    """Point samples of exp(-b |(x, y1, y2)|) on the centered grid."""
    boundary = math.exp(-spec.b * grid.box_len / 2)
    if boundary > 1e-10:
        warnings.warn(
            f"profile boundary magnitude {boundary:.2e} exceeds 1e-10 "
            f"(b={spec.b}, L={grid.box_len}); periodization error is not negligible",
            PeriodizationWarning,
            stacklevel=2,
        )
    x, y1, y2 = grid.coords()
    r = np.sqrt(x ** 2 + y1 ** 2 + y2 ** 2)
    return RealField(grid, np.exp(-spec.b * r))


def profile_transform(spec: ProfileSpec, xi: np.ndarray) -> np.ndarray:
    """Continuum transform of exp(-b r) in 3D: 8 pi b / (b^2 + |xi|^2)^2."""
    return 8 * np.pi * spec.b / (spec.b ** 2 + np.asarray(xi) ** 2) ** 2


def project_profile(spec: ProfileSpec, grid: Grid3) -> RealField:
    """Band-limited projection: lattice samples of the closed-form transform.

    Unlike :func:`sample_profile` this carries no aliased tail, so its
    spectrum decays exactly like ``|xi|^-4``; the price is Gibbs ringing and
    ``phi(0) < 1`` in physical space.
    """
    xi, e1, e2 = grid.wavenumbers()
    F = profile_transform(spec, np.sqrt(xi ** 2 + e1 ** 2 + e2 ** 2))
    return inverse_transform(SpectralField(grid, F))


def coprime_pairs(j_max: int, k_max: int) -> list[tuple[int, int]]:
    """Coprime (j, k), ordered by k then j (the order of the double sum)."""
    if j_max < 1 or k_max < 1:
        raise ValueError("j_max and k_max must be >= 1")
    return [(j, k) for k in range(1, k_max + 1) for j in range(1, j_max + 1)
            if math.gcd(j, k) == 1]


def coefficient(j: int, k: int) -> float:
    """exp(-e^k) exp(-j^2), evaluated in extended precision.

    Returns 0.0 and warns when the value underflows double precision.
    """
    if math.gcd(j, k) != 1:
        raise ValueError(f"({j}, {k}) is not a coprime pair")
    with mpmath.workdps(40):
        val = mpmath.exp(-mpmath.exp(k)) * mpmath.exp(-j * j)
        out = float(val)
    if out == 0.0 or out < np.finfo(float).tiny:
        warnings.warn(f"coefficient c_({j},{k}) = {mpmath.nstr(val, 5)} underflows; term dropped",
                      RuntimeWarning, stacklevel=2)
        return 0.0
    return out


def build_u0(spec: BlowupSpec, grid: Grid3) -> tuple[RealField, SingularTimeSet]:
    """Sum of coefficient(j, k) * W(-j/k) phi over the retained pairs."""
    phi_hat = forward_transform(sample_profile(spec.profile, grid))
    acc = SpectralField(grid, np.zeros(grid.shape, dtype=complex))
    times, coeffs = [], []
    lo, hi = spec.window
    for j, k in coprime_pairs(spec.j_max, spec.k_max):
        q = Fraction(j, k)
        if not lo <= q <= hi:
            continue
        c = spec.custom[(j, k)] if spec.custom is not None else coefficient(j, k)
        if c <= 0:
            continue
        acc = acc + c * apply_propagator(phi_hat, -float(q))
        times.append(q)
        coeffs.append(c)
    return inverse_transform(acc), SingularTimeSet(times, coeffs)


def genericity_margin(probe: GenericityProbe) -> float:
    """min |k1 + k2 gamma| (|k1|+|k2|) ln(|k1|+|k2|+1) over 1 <= |k2|, |k1|+|k2| <= K.

    k2 < 0 mirrors k2 > 0.  For fixed k2 any k1 other than the two integer
    neighbours of -k2 gamma has |k1 + k2 gamma| >= 1 and so scores at least
    k2 ln(k2 + 1); the neighbours give an upper bound and only the few k2
    whose floor k2 ln(k2 + 1) undercuts it are scanned exhaustively.
    """
    g = probe.gamma
    K = probe.K
    if not math.isfinite(g):
        raise ValueError("gamma must be finite")

    def score(k1, k2):
        size = np.abs(k1) + k2
        return np.abs(k1 + k2 * g) * size * np.log(size + 1.0)

    k2 = np.arange(1, K + 1, dtype=np.int64)
    room = K - k2
    base = np.floor(-k2 * g).astype(np.int64)
    best = math.inf
    for k1 in (base, base + 1):
        ok = np.abs(k1) <= room
        if ok.any():
            best = min(best, float(score(k1[ok], k2[ok]).min()))
    for q in k2[k2 * np.log(k2 + 1.0) < best]:
        k1 = np.arange(-(K - q), K - q + 1, dtype=np.int64)
        best = min(best, float(score(k1, q).min()))
    return best


def golden_times(window: tuple[float, float], count: int = 4) -> list[float]:
    """Irrational probe times m*GOLDEN/2^p (p = 0, 1, ...) inside the window."""
    lo, hi = window
    out: list[float] = []
    for p in range(0, 6):
        for m in range(1, 40):
            t = m * GOLDEN / 2 ** p
            if lo < t < hi and all(abs(t - s) > 1e-9 for s in out):
                out.append(t)
            if len(out) == count:
                return sorted(out)
    return sorted(out)
