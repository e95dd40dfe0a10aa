"""Lebesgue, Sobolev, weighted and mixed space-time norms on the periodic box.

All physical integrals use the rectangle rule on the uniform grid; spectral
norms use Parseval, ``||f||_2^2 = L^-3 sum |F_m|^2``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .grid import Grid3, RealField, SpectralField, forward_transform, inverse_transform
from .multipliers import derivative_symbol, fractional_symbol

__all__ = [
    "SobolevSpec",
    "WeightSpec",
    "MixedNormSpec",
    "XTNormReport",
    "Trajectory",
    "lebesgue_norm",
    "spectral_l2",
    "sobolev_norm",
    "weighted_z_norm",
    "exp_weighted_sobolev",
    "WeightOverflowError",
    "mixed_norm",
    "mixed_norm_array",
    "xt_norm",
    "shell_spectrum",
    "tail_exponent",
]

_VARIANTS = {"J": "J", "D": "D", "J_x": "Jx", "D_x": "Dx", "J_y": "Jy",
             "D_y": "Dy", "D_y1": "Dy1", "D_y2": "Dy2"}


@dataclass(frozen=True)
class SobolevSpec:
    s: float
    variant: str = "J"

    def __post_init__(self):
        if not math.isfinite(self.s):
            raise ValueError("Sobolev index must be finite")
        if self.variant not in _VARIANTS:
            raise ValueError(f"unknown Sobolev variant {self.variant!r}; one of {sorted(_VARIANTS)}")


@dataclass(frozen=True)
class WeightSpec:
    r1: float = 0.5
    r2: float = 0.5
    bracket: str = "homogeneous"   # or "japanese": <x> = sqrt(1 + x^2)

    def __post_init__(self):
        if self.bracket not in ("homogeneous", "japanese"):
            raise ValueError(f"bracket must be 'homogeneous' or 'japanese', got {self.bracket!r}")
        if self.r1 < 0 or self.r2 < 0:
            raise ValueError("weight exponents must be non-negative")


@dataclass
class Trajectory:
    """Uniformly spaced snapshots of one field on one grid.

    ``provenance`` is one of ``nonlinear``, ``linear``, ``duhamel``.
    """

    grid: Grid3
    times: np.ndarray
    snapshots: list[RealField]
    provenance: str = "linear"
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        if len(self.times) != len(self.snapshots):
            raise ValueError("times and snapshots differ in length")
        if self.provenance not in ("nonlinear", "linear", "duhamel"):
            raise ValueError(f"bad provenance {self.provenance!r}")
        if len(self.times) > 1:
            dt = np.diff(self.times)
            if np.any(dt <= 0):
                raise ValueError("times must be increasing")
            if np.ptp(dt) > 1e-9 * max(abs(dt).max(), 1.0):
                raise ValueError("times must be uniformly spaced")
        for s in self.snapshots:
            if s.grid != self.grid:
                raise ValueError("snapshot grid mismatch")
            if not np.all(np.isfinite(s.samples)):
                raise ValueError("trajectory snapshots must be finite")

    def __len__(self):
        return len(self.times)

    def array(self) -> np.ndarray:
        """Samples stacked as (t, x, y1, y2)."""
        return np.stack([s.samples for s in self.snapshots])

    def scaled(self, c: float) -> Trajectory:
        return Trajectory(self.grid, self.times.copy(), [c * s for s in self.snapshots],
                          self.provenance, dict(self.meta))


def lebesgue_norm(f: RealField, p: float = 2) -> float:
    a = np.abs(f.samples)
    if p == math.inf:
        return float(a.max())
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    return float((np.sum(a ** p) * f.grid.cell_volume) ** (1.0 / p))


def spectral_l2(F: SpectralField) -> float:
    return float(np.sqrt(np.sum(np.abs(F.coeffs) ** 2) / F.grid.box_len ** 3))


def sobolev_norm(f: RealField | SpectralField, spec: SobolevSpec) -> float:
    """Parseval norm of the variant's symbol times f_hat.

    Homogeneous variants with s < 0 drop the zero mode.
    """
    F = forward_transform(f) if isinstance(f, RealField) else f
    sym, _ = fractional_symbol(F.grid, _VARIANTS[spec.variant], spec.s)
    return spectral_l2(SpectralField(F.grid, F.coeffs * sym))


def _power_weight(coord: np.ndarray, r: float, bracket: str) -> np.ndarray:
    if bracket == "japanese":
        return (1 + coord ** 2) ** (r / 2)
    return np.abs(coord) ** r


def weighted_z_norm(f: RealField, s: float, w: WeightSpec) -> float:
    """||f||_{H^s} + || |x|^r1 f ||_2 + || |y|^r2 f ||_2 (centered coordinates)."""
    x, y1, y2 = f.grid.coords()
    wx = _power_weight(x, w.r1, w.bracket)
    wy = _power_weight(np.sqrt(y1 ** 2 + y2 ** 2), w.r2, w.bracket)
    return (sobolev_norm(f, SobolevSpec(s))
            + lebesgue_norm(RealField(f.grid, wx * f.samples))
            + lebesgue_norm(RealField(f.grid, wy * f.samples)))


class WeightOverflowError(ValueError):
    pass


def exp_weighted_sobolev(f: RealField, a: float, alpha=(0, 0, 0), *,
                         decay_rate: float | None = None) -> float:
    """||d^alpha (exp(a(x+y1+y2)) f)||_2 by physical weighting then spectral derivatives.

    ``decay_rate`` is the caller's exponential decay rate of ``f``; the weighted
    field is square integrable only when it exceeds ``a sqrt(3)``.
    """
    if sum(alpha) > 3:
        raise ValueError(f"|alpha| <= 3 required, got {alpha}")
    if decay_rate is not None and not decay_rate > a * math.sqrt(3):
        raise WeightOverflowError(
            f"weight rate a={a} needs decay rate > a*sqrt(3) = {a * math.sqrt(3):.4f}, "
            f"got {decay_rate}")
    g = f.grid
    x, y1, y2 = g.coords()
    max_exp = 1.5 * abs(a) * g.box_len
    if max_exp > 700:
        raise WeightOverflowError(f"weight exponent reaches {max_exp:.1f} on the box (limit 700)")
    wf = RealField(g, np.exp(a * (x + y1 + y2)) * f.samples)
    faces = max(np.abs(wf.samples[i]).max() for i in (0, -1))
    faces = max(faces, np.abs(wf.samples[:, 0]).max(), np.abs(wf.samples[:, :, 0]).max())
    peak = np.abs(wf.samples).max()
    if peak and faces > 1e-2 * peak:
        raise WeightOverflowError(
            f"weighted field is not small on the box boundary (boundary/peak = {faces / peak:.2e}); "
            f"decay of f does not beat the weight rate a={a}")
    if not any(alpha):
        return lebesgue_norm(wf)
    F = forward_transform(wf)
    return spectral_l2(SpectralField(g, F.coeffs * derivative_symbol(g, tuple(alpha))))


# ---------------------------------------------------------------------------
# mixed space-time norms

_GROUPS = {"x": (1,), "y": (2, 3), "y1": (2,), "y2": (3,), "t": (0,),
           "xy": (1, 2, 3), "yt": (0, 2, 3), "xyt": (0, 1, 2, 3), "xt": (0, 1)}


@dataclass(frozen=True)
class MixedNormSpec:
    """Nested norm, outermost group first, e.g. ``[("x", inf), ("yt", 2)]``.

    Groups are drawn from x, y (= y1 y2), y1, y2, t and their concatenations
    and together must cover x, y1, y2, t exactly once.
    """

    order: tuple[tuple[str, float], ...]
    symmetric: bool = False   # time interval [-T, T] instead of [0, T]

    def __post_init__(self):
        seen: list[int] = []
        for grp, p in self.order:
            if grp not in _GROUPS:
                raise ValueError(f"unknown variable group {grp!r}")
            if not (p == math.inf or p >= 1):
                raise ValueError(f"exponent {p} outside [1, inf]")
            seen.extend(_GROUPS[grp])
        if sorted(seen) != [0, 1, 2, 3]:
            raise ValueError(f"groups {[g for g, _ in self.order]} do not partition x, y1, y2, t")

    @classmethod
    def parse(cls, text: str, symmetric: bool = False) -> MixedNormSpec:
        """``"x:inf,yt:2"`` -> spec."""
        order = []
        for part in text.split(","):
            grp, p = part.split(":")
            order.append((grp.strip(), math.inf if p.strip() in ("inf", "oo") else float(p)))
        return cls(tuple(order), symmetric)


def _trapezoid_weights(n: int, dt: float) -> np.ndarray:
    w = np.full(n, dt)
    if n > 1:
        w[0] = w[-1] = dt / 2
    else:
        w[:] = 1.0
    return w


def mixed_norm_array(values: np.ndarray, times: np.ndarray, spacing: float,
                     spec: MixedNormSpec) -> np.ndarray | float:
    """Nested norm of a (t, x, y1, y2) array; innermost group is reduced first.

    A single snapshot carries unit time weight, so time-inner norms reduce to
    spatial ones.
    """
    if values.shape[0] == 0:
        raise ValueError("empty trajectory")
    a = np.abs(values)
    dt = float(times[1] - times[0]) if len(times) > 1 else 1.0
    axis_w = {0: _trapezoid_weights(len(times), dt)}
    for ax in (1, 2, 3):
        axis_w[ax] = np.full(values.shape[ax], spacing)
    remaining = [0, 1, 2, 3]
    for grp, p in reversed(spec.order):
        axes = _GROUPS[grp]
        idx = tuple(remaining.index(ax) for ax in axes)
        if p == math.inf:
            a = a.max(axis=idx)
        else:
            a = _weighted_power_sum(a, idx, [axis_w[ax] for ax in axes], p)
        for ax in axes:
            remaining.remove(ax)
    return float(a)


def _weighted_power_sum(a: np.ndarray, idx: tuple[int, ...], weights, p: float) -> np.ndarray:
    out = a ** p
    for i, w in sorted(zip(idx, weights), reverse=True):
        shape = [1] * out.ndim
        shape[i] = len(w)
        out = (out * w.reshape(shape)).sum(axis=i)
    return out ** (1.0 / p)


def mixed_norm(traj: Trajectory, spec: MixedNormSpec) -> float:
    if len(traj) == 0:
        raise ValueError("empty trajectory")
    return mixed_norm_array(traj.array(), traj.times, traj.grid.spacing, spec)


# ---------------------------------------------------------------------------
# work-space norm


@dataclass
class XTNormReport:
    terms: dict[str, float]
    extras: dict[str, float] = field(default_factory=dict)

    @property
    def total(self) -> float:
        return float(sum(self.terms.values()))


_LINF_T_L2 = MixedNormSpec.parse("t:inf,xy:2")
_L2T_LINF = MixedNormSpec.parse("t:2,xy:inf")
_MAXIMAL = MixedNormSpec.parse("x:2,yt:inf")
_SMOOTHING = MixedNormSpec.parse("x:inf,yt:2")


def _apply_symbol(traj_hat: list[SpectralField], sym: np.ndarray) -> np.ndarray:
    return np.stack([inverse_transform(SpectralField(F.grid, F.coeffs * sym)).samples
                     for F in traj_hat])


def xt_norm(traj: Trajectory, s: float = 2.25, w: WeightSpec = WeightSpec(),
            extra_bracket_power: float = 1.55) -> XTNormReport:
    """Every term of the contraction work-space norm, plus one diagnostic.

    ``extras['<x>^{3/2+} L^inf_T L^2']`` uses the exponent
    ``extra_bracket_power`` and is not counted in the total.
    """
    if not 2 < s < 3:
        raise ValueError(f"work-space index s must lie in (2, 3), got {s}")
    g = traj.grid
    hats = [forward_transform(f) for f in traj.snapshots]
    t, h = traj.times, g.spacing
    x, y1, y2 = g.coords()

    def sym(kind, order=1.0):
        return fractional_symbol(g, kind, order)[0]

    dx = sym("dx")
    dy = [sym("dy1"), sym("dy2")]
    Dy = ["Dy1", "Dy2"]
    terms: dict[str, float] = {}

    def norm(spec, symbol=None, weight=None):
        vals = _apply_symbol(hats, symbol) if symbol is not None else traj.array()
        if weight is not None:
            vals = vals * weight
        return mixed_norm_array(vals, t, h, spec)

    terms["L^inf_T H^s"] = max(sobolev_norm(F, SobolevSpec(s)) for F in hats) if hats else 0.0
    terms["|x|^r1 u L^inf_T L^2"] = norm(_LINF_T_L2, weight=_power_weight(x, w.r1, w.bracket))
    terms["|y|^r2 u L^inf_T L^2"] = norm(
        _LINF_T_L2, weight=_power_weight(np.sqrt(y1 ** 2 + y2 ** 2), w.r2, w.bracket))
    terms["u_x L^2_T L^inf"] = norm(_L2T_LINF, dx)
    terms["u_xx L^2_T L^inf"] = norm(_L2T_LINF, dx * dx)
    terms["D_x^{s-1} u L^2_T L^inf"] = norm(_L2T_LINF, sym("Dx", s - 1))
    for j in range(2):
        terms[f"D_y{j+1}^{{s-2}} u_x L^2_T L^inf"] = norm(_L2T_LINF, sym(Dy[j], s - 2) * dx)
    for j in range(2):
        terms[f"u_xy{j+1} L^2_T L^inf"] = norm(_L2T_LINF, dx * dy[j])
    terms["u L^2_x L^inf_yT"] = norm(_MAXIMAL)
    terms["u_x L^2_x L^inf_yT"] = norm(_MAXIMAL, dx)
    for j in range(2):
        terms[f"u_y{j+1} L^2_x L^inf_yT"] = norm(_MAXIMAL, dy[j])
    terms["D_x^{s-2} u L^2_x L^inf_yT"] = norm(_MAXIMAL, sym("Dx", s - 2))
    for j in range(2):
        terms[f"D_y{j+1}^{{s-2}} u L^2_x L^inf_yT"] = norm(_MAXIMAL, sym(Dy[j], s - 2))
    terms["D_x^s u_x L^inf_x L^2_yT"] = norm(_SMOOTHING, sym("Dx", s) * dx)
    for j in range(2):
        terms[f"D_y{j+1}^s u_x L^inf_x L^2_yT"] = norm(_SMOOTHING, sym(Dy[j], s) * dx)
    terms["u_xxx L^inf_x L^2_yT"] = norm(_SMOOTHING, dx ** 3)
    for j in range(2):
        terms[f"D_y{j+1}^2 u_x L^inf_x L^2_yT"] = norm(_SMOOTHING, sym(Dy[j], 2) * dx)

    bracket = (1 + x ** 2 + y1 ** 2 + y2 ** 2) ** (extra_bracket_power / 2)
    extras = {"<x>^{3/2+} u L^inf_T L^2": norm(_LINF_T_L2, weight=bracket)}
    return XTNormReport(terms, extras)


# ---------------------------------------------------------------------------
# spectral tail probes


def shell_spectrum(f: RealField | SpectralField, dk: float | None = None):
    """Shell radii and energies E(k) = sum_{k <= |mode| < k + dk} |F|^2 / L^3."""
    F = forward_transform(f) if isinstance(f, RealField) else f
    g = F.grid
    dk = dk or 2 * np.pi / g.box_len
    xi, e1, e2 = g.wavenumbers()
    kk = np.sqrt(xi ** 2 + e1 ** 2 + e2 ** 2)
    idx = np.floor(kk / dk + 1e-9).astype(int).ravel()
    energy = np.bincount(idx, weights=(np.abs(F.coeffs) ** 2).ravel()) / g.box_len ** 3
    radii = dk * np.arange(len(energy))
    return radii, energy


def tail_exponent(f: RealField | SpectralField, window: tuple[float, float] | None = None,
                  dk: float | None = None) -> float:
    """Least-squares slope of log E vs log k over ``window``.

    The default window is the middle third of the resolved band (0, k_max).
    Shells are centered at ``k + dk/2`` for the fit.
    """
    F = forward_transform(f) if isinstance(f, RealField) else f
    g = F.grid
    radii, energy = shell_spectrum(F, dk)
    step = radii[1] - radii[0]
    centers = radii + step / 2
    if window is None:
        window = (g.k_max / 3, 2 * g.k_max / 3)
    lo, hi = window
    if lo <= 0 or hi > g.k_max + 1e-12 or lo >= hi:
        raise ValueError(f"fit window {window} outside resolved band (0, {g.k_max:.4g}]")
    sel = (radii >= lo) & (radii + step <= hi) & (energy > 0)
    if sel.sum() < 8:
        raise ValueError(f"only {sel.sum()} shells in fit window {window}; need >= 8")
    slope, _ = np.polyfit(np.log(centers[sel]), np.log(energy[sel]), 1)
    return float(slope)
