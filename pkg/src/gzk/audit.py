"""Numerical audits of the linear estimates, weights and regularity claims.

Inequalities of the form ``A <~ B`` have no explicit constants, so an audit
computes ``A/B`` over an ensemble and checks that the supremum stays finite
and does not drift when the grid is refined.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np
import scipy.fft as sfft

from .blowup_data import (BlowupSpec, GenericityProbe, ProfileSpec, SingularTimeSet, build_u0,
                          genericity_margin, golden_times)
from .grid import Grid3, RealField, SpectralField, forward_transform, inverse_transform, make_grid
from .multipliers import (apply_propagator, apply_weighted_propagator, derivative_symbol,
                          dispersion_on_grid, fractional_symbol)
from .norms import SobolevSpec, sobolev_norm, spectral_l2
from .solver import SolverConfig, duhamel_split, integrate, solve_at

__all__ = [
    "EstimateId",
    "Ensemble",
    "AuditReport",
    "run_audit",
    "audit_ratio",
    "weighted_commutator_residual",
    "weighted_decay_norms",
    "weighted_decay_scaling",
    "gradient_oscillation",
    "SweepResult",
    "blowup_sweep",
    "default_sweep_times",
    "SmoothingReport",
    "smoothing_report",
    "ContractionReport",
    "contraction_report",
]

log = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# estimate identifiers and ensembles


@dataclass(frozen=True)
class EstimateId:
    """Which estimate to audit and its parameters.

    kinds: ``strichartz`` (gamma, beta), ``kato_forward``, ``kato_dual``,
    ``maximal`` (s), ``weighted_commutator`` (r, s, axis),
    ``weighted_decay`` (a, alpha), ``genericity``.
    """

    kind: str
    params: tuple = ()

    def __post_init__(self):
        p = dict(self.params)
        if self.kind == "strichartz":
            g, b = p.get("gamma"), p.get("beta")
            if g is None or b is None or not 0 < g < b:
                raise ValueError(f"strichartz needs 0 < gamma < beta, got gamma={g}, beta={b}")
        elif self.kind == "maximal":
            if not p.get("s", 0) > 1:
                raise ValueError(f"maximal estimate needs s > 1, got s={p.get('s')}")
        elif self.kind == "weighted_commutator":
            r, s = p.get("r"), p.get("s")
            if r is None or not 0 < r < 1:
                raise ValueError(f"weighted_commutator needs r in (0, 1), got {r}")
            if s is None or s < 2 * r:
                raise ValueError(f"weighted_commutator needs s >= 2r, got s={s}, r={r}")
            if p.get("axis", "x") not in ("x", "y1", "y2"):
                raise ValueError(f"axis must be x, y1 or y2, got {p.get('axis')}")
        elif self.kind == "weighted_decay":
            if sum(p.get("alpha", (0, 0, 0))) > 2:
                raise ValueError("weighted_decay needs |alpha| <= 2")
        elif self.kind not in ("kato_forward", "kato_dual", "genericity"):
            raise ValueError(f"unknown estimate {self.kind!r}")

    @classmethod
    def strichartz(cls, gamma: float, beta: float) -> EstimateId:
        return cls("strichartz", (("gamma", gamma), ("beta", beta)))

    @classmethod
    def kato_forward(cls) -> EstimateId:
        return cls("kato_forward")

    @classmethod
    def kato_dual(cls) -> EstimateId:
        return cls("kato_dual")

    @classmethod
    def maximal(cls, s: float) -> EstimateId:
        return cls("maximal", (("s", s),))

    @classmethod
    def weighted_commutator(cls, r: float, s: float, axis: str = "x") -> EstimateId:
        return cls("weighted_commutator", (("r", r), ("s", s), ("axis", axis)))

    @property
    def p(self) -> dict:
        return dict(self.params)

    def label(self) -> str:
        if not self.params:
            return self.kind
        return self.kind + "(" + ", ".join(f"{k}={v}" for k, v in self.params) + ")"


@dataclass(frozen=True)
class Ensemble:
    """Reproducible test fields.

    ``band_limited``: random coefficients on modes with |xi_j| <= k_cut,
    drawn on the box lattice independently of the sampling resolution, so a
    finer grid samples the same functions.  ``decaying``: the same times a
    Gaussian envelope of width ``width``.  ``probes``: fixed Gaussians and
    modulated Gaussians.
    """

    count: int = 20
    generator: str = "band_limited"
    seed: int = 0
    k_cut: float = 2.0
    width: float = 3.0

    def __post_init__(self):
        if self.generator not in ("band_limited", "decaying", "probes"):
            raise ValueError(f"unknown ensemble generator {self.generator!r}")
        if self.count < 1:
            raise ValueError("ensemble count must be >= 1")

    def members(self, grid: Grid3) -> list[RealField]:
        if self.generator == "probes":
            return [_probe(grid, i) for i in range(self.count)]
        rng = np.random.default_rng(self.seed)
        mcut = int(math.floor(self.k_cut * grid.box_len / (2 * math.pi)))
        if mcut >= grid.n_axis // 2:
            raise ValueError(f"band cutoff {self.k_cut} not resolved on {grid}")
        out = []
        for _ in range(self.count):
            f = _band_limited(grid, mcut, rng)
            if self.generator == "decaying":
                x, y1, y2 = grid.coords()
                f = f * np.exp(-(x ** 2 + y1 ** 2 + y2 ** 2) / (2 * self.width ** 2))
            out.append(RealField(grid, f / np.abs(f).max()))
        return out


def _band_limited(grid: Grid3, mcut: int, rng: np.random.Generator) -> np.ndarray:
    size = 2 * mcut + 1
    c = rng.standard_normal((size,) * 3) + 1j * rng.standard_normal((size,) * 3)
    m = np.arange(-mcut, mcut + 1)
    decay = np.exp(-0.5 * (m[:, None, None] ** 2 + m[None, :, None] ** 2
                           + m[None, None, :] ** 2) / max(mcut, 1) ** 2)
    c *= decay
    full = np.zeros(grid.shape, dtype=complex)
    idx = m % grid.n_axis
    full[np.ix_(idx, idx, idx)] = c
    return sfft.ifftn(full).real * grid.n_axis ** 3


def _probe(grid: Grid3, i: int) -> RealField:
    x, y1, y2 = grid.coords()
    width = 1.0 + 0.5 * (i % 4)
    shift = 0.5 * (i // 4)
    env = np.exp(-((x - shift) ** 2 + y1 ** 2 + y2 ** 2) / (2 * width ** 2))
    carrier = np.cos((i % 3) * x + (i % 2) * y1)
    return RealField(grid, env * carrier)


@dataclass
class AuditReport:
    estimate: str
    ratios: list[float]
    refined_ratios: list[float] | None
    sup: float
    refined_sup: float | None
    growth_bound: float
    flagged: list[int] = field(default_factory=list)

    @property
    def growth(self) -> float | None:
        if self.refined_sup is None:
            return None
        lo, hi = sorted((self.sup, self.refined_sup))
        return math.inf if lo == 0 and hi > 0 else (hi / lo if lo else 1.0)

    @property
    def verdict(self) -> str:
        if not math.isfinite(self.sup):
            return "FAIL"
        g = self.growth
        return "PASS" if g is None or g < self.growth_bound else "FAIL"

    def as_dict(self) -> dict:
        return {"estimate": self.estimate, "ratios": self.ratios,
                "refined_ratios": self.refined_ratios, "sup": self.sup,
                "refined_sup": self.refined_sup, "growth": self.growth,
                "growth_bound": self.growth_bound, "flagged": self.flagged,
                "verdict": self.verdict}


# ---------------------------------------------------------------------------
# individual ratios


def _time_grid(T: float, n_t: int, symmetric: bool) -> np.ndarray:
    return np.linspace(-T if symmetric else 0.0, T, n_t)


def _trap(n: int, dt: float) -> np.ndarray:
    w = np.full(n, dt)
    w[0] = w[-1] = dt / 2
    return w


class _Half:
    """Half-spectrum (rfftn) view of a grid for repeated propagation."""

    def __init__(self, grid: Grid3):
        n = grid.n_axis
        self.grid = grid
        kr = 2 * np.pi * np.arange(n // 2 + 1) / grid.box_len
        kro = kr.copy()
        kro[-1] = 0.0
        self.xi = grid.k[:, None, None]
        self.e1 = grid.k[None, :, None]
        self.e2 = kr[None, None, :]
        xo, o1, o2 = grid.k_odd[:, None, None], grid.k_odd[None, :, None], kro[None, None, :]
        self.odd = (xo, o1, o2)
        self.omega = xo * (self.xi ** 2 + self.e1 ** 2 + self.e2 ** 2)
        # multiplicity of each half-spectrum column in the full spectrum
        w = np.full(n // 2 + 1, 2.0)
        w[0] = w[-1] = 1.0
        self.mult = w[None, None, :]

    def fwd(self, u: np.ndarray) -> np.ndarray:
        return sfft.rfftn(u, workers=-1)

    def inv(self, U: np.ndarray) -> np.ndarray:
        return sfft.irfftn(U, s=self.grid.shape, workers=-1)

    def l2sq(self, U: np.ndarray) -> float:
        """Physical quadrature of |u|^2 for u = irfftn(U)."""
        g = self.grid
        return float(np.sum(self.mult * np.abs(U) ** 2)) * g.cell_volume / g.n_axis ** 3

    def evolve(self, U: np.ndarray, times: np.ndarray):
        """Yield W(t)U along a uniform time grid by repeated multiplication."""
        step = np.exp(1j * (times[1] - times[0]) * self.omega)
        cur = U * np.exp(1j * times[0] * self.omega)
        for i in range(len(times)):
            if i:
                cur = cur * step
            yield cur


def _kato_forward_lhs(f: RealField, times: np.ndarray) -> float:
    """sup_x ( int int |grad W(t) f|^2 dy dt )^(1/2)."""
    g = f.grid
    hs = _Half(g)
    n = g.n_axis
    w = _trap(len(times), times[1] - times[0])
    acc = np.zeros(n)
    for Ut, wt in zip(hs.evolve(hs.fwd(f.samples), times), w):
        for sym in hs.odd:
            # transform back along x only; Parseval handles the y directions
            Q = sfft.ifft(1j * sym * Ut, axis=0, workers=-1)
            acc += wt * (hs.mult * np.abs(Q) ** 2).sum(axis=(1, 2))
    acc *= g.spacing ** 2 / n ** 2
    return float(np.sqrt(acc.max()))


def _maximal_lhs(f: RealField, times: np.ndarray) -> float:
    """( int sup_{y,t} |W(t) f|^2 dx )^(1/2)."""
    g = f.grid
    hs = _Half(g)
    sup = np.zeros(g.n_axis)
    for Ut in hs.evolve(hs.fwd(f.samples), times):
        sup = np.maximum(sup, np.abs(hs.inv(Ut)).max(axis=(1, 2)))
    return float(np.sqrt(np.sum(sup ** 2) * g.spacing))


def _strichartz_lhs(f: RealField, times: np.ndarray, gamma: float) -> float:
    """( int sup_{x,y} |D_x^gamma W(t) f|^2 dt )^(1/2)."""
    g = f.grid
    hs = _Half(g)
    w = _trap(len(times), times[1] - times[0])
    U = hs.fwd(f.samples) * np.abs(hs.xi) ** gamma
    acc = 0.0
    for Ut, wt in zip(hs.evolve(U, times), w):
        acc += wt * np.abs(hs.inv(Ut)).max() ** 2
    return float(np.sqrt(acc))


def _kato_dual_ratio(f: RealField, times: np.ndarray, rng_seed: int) -> float:
    """sup_t ||grad int_0^t W(-t') g(t') dt'||_2 / ||g||_{L^1_x L^2_{yt}}.

    ``g(t, x, y) = f(x, y) cos(nu t + theta)`` with (nu, theta) drawn from the
    member's seed; the time integral uses the trapezoid rule on ``times``.
    """
    g = f.grid
    hs = _Half(g)
    rng = np.random.default_rng(rng_seed)
    nu, theta = rng.uniform(0.5, 6.0), rng.uniform(0, 2 * np.pi)
    prof = np.cos(nu * times + theta)
    U = hs.fwd(f.samples)
    grad2 = sum(o ** 2 for o in hs.odd) * np.abs(U) ** 2
    i0 = int(np.argmin(np.abs(times)))
    best = 0.0
    # integrate outwards from t = 0 in both directions
    for idx in (range(i0, len(times)), range(i0, -1, -1)):
        acc = np.zeros(hs.omega.shape, dtype=complex)
        prev = None
        for i in idx:
            cur = np.exp(-1j * times[i] * hs.omega) * prof[i]
            if prev is not None:
                acc += 0.5 * (times[i] - times[prev]) * (cur + prev_val)
            prev, prev_val = i, cur
            val = float(np.sum(hs.mult * grad2 * np.abs(acc) ** 2))
            best = max(best, val)
    best = math.sqrt(best * g.cell_volume / g.n_axis ** 3)
    w = _trap(len(times), times[1] - times[0])
    time_l2 = math.sqrt(float(np.sum(w * prof ** 2)))
    y_l2 = np.sqrt((f.samples ** 2).sum(axis=(1, 2)) * g.spacing ** 2)
    denom = float(np.sum(y_l2) * g.spacing) * time_l2
    return best / denom if denom else 0.0


def audit_ratio(eid: EstimateId, f: RealField, T: float, n_t: int = 64,
                symmetric: bool | None = None, member_seed: int = 0) -> float:
    """Left side over right side of one estimate for one field (0 for f = 0)."""
    if not np.any(f.samples):
        return 0.0
    p = eid.p
    if symmetric is None:
        symmetric = eid.kind in ("kato_forward", "kato_dual")
    times = _time_grid(T, n_t, symmetric)
    F = forward_transform(f)
    l2 = spectral_l2(F)
    if eid.kind == "kato_forward":
        return _kato_forward_lhs(f, times) / l2
    if eid.kind == "kato_dual":
        return _kato_dual_ratio(f, times, member_seed)
    if eid.kind == "maximal":
        return _maximal_lhs(f, times) / sobolev_norm(F, SobolevSpec(p["s"]))
    if eid.kind == "strichartz":
        return _strichartz_lhs(f, times, p["gamma"]) / sobolev_norm(F, SobolevSpec(p["beta"]))
    if eid.kind == "weighted_commutator":
        return weighted_commutator_residual(f, p["r"], p.get("axis", "x"), T, p["s"])
    raise ValueError(f"no ratio audit for {eid.kind!r}")


def _band_edge_flag(f: RealField, frac: float = 0.9, tol: float = 1e-6) -> bool:
    F = forward_transform(f)
    g = F.grid
    xi, e1, e2 = g.wavenumbers()
    edge = np.maximum(np.maximum(abs(xi), abs(e1)), abs(e2)) > frac * g.k_max
    e = np.abs(F.coeffs) ** 2
    tot = e.sum()
    return bool(tot and e[edge].sum() > tol * tot)


def run_audit(eid: EstimateId, ens: Ensemble, grid: Grid3, T: float = 1.0, *,
              n_t: int = 64, refine: bool = True, growth_bound: float = 2.0,
              symmetric: bool | None = None) -> AuditReport:
    """Ratios over the ensemble on ``grid`` and (optionally) on the 2n grid."""
    if n_t < 64:
        raise ValueError("time sampling needs at least 64 points")
    if eid.kind == "maximal" and not 0 < T < 1:
        raise ValueError(f"maximal estimate is stated for 0 < T < 1, got T={T}")
    if eid.kind in ("weighted_decay", "genericity"):
        raise ValueError(f"{eid.kind} is audited by its own routine, not by ratios")

    def ratios_on(gr: Grid3):
        members = ens.members(gr)
        flags = [i for i, f in enumerate(members) if _band_edge_flag(f)]
        vals = [audit_ratio(eid, f, T, n_t, symmetric, member_seed=ens.seed * 1000 + i)
                for i, f in enumerate(members)]
        return vals, flags

    ratios, flagged = ratios_on(grid)
    sup = max((r for r in ratios if r > 0), default=0.0)
    refined, rsup = None, None
    if refine:
        refined, more = ratios_on(make_grid(2 * grid.n_axis, grid.box_len))
        rsup = max((r for r in refined if r > 0), default=0.0)
        flagged = sorted(set(flagged) | set(more))
    if flagged:
        log.warning("%s: members %s carry energy at the edge of the resolved band",
                    eid.label(), flagged)
    return AuditReport(eid.label(), ratios, refined, sup, rsup, growth_bound, flagged)


# ---------------------------------------------------------------------------
# weights


def _axis_weight(grid: Grid3, axis: str, r: float) -> np.ndarray:
    i = {"x": 0, "y1": 1, "y2": 2}[axis]
    return np.abs(grid.coords()[i]) ** r


def weighted_commutator_residual(u0: RealField, r: float, axis: str, t: float,
                                 s: float) -> float:
    """|| |x|^r W(t) u0 - W(t)(|x|^r u0) ||_2 / ((1 + |t|) ||u0||_{H^s})."""
    if not 0 < r < 1:
        raise ValueError(f"r must lie in (0, 1), got {r}")
    if s < 2 * r:
        raise ValueError(f"need s >= 2r, got s={s}, r={r}")
    g = u0.grid
    wgt = _axis_weight(g, axis, r)
    edge = max(abs(u0.samples[0]).max(), abs(u0.samples[-1]).max(),
               abs(u0.samples[:, 0]).max(), abs(u0.samples[:, -1]).max(),
               abs(u0.samples[:, :, 0]).max(), abs(u0.samples[:, :, -1]).max())
    if edge > 1e-6 * abs(u0.samples).max():
        raise ValueError("u0 is not small on the box boundary; the weight is not representable")
    if t == 0:
        return 0.0
    F = forward_transform(u0)
    Wu = inverse_transform(apply_propagator(F, t)).samples
    Wwu = inverse_transform(apply_propagator(forward_transform(RealField(g, wgt * u0.samples)), t))
    diff = wgt * Wu - Wwu.samples
    num = math.sqrt(float(np.sum(diff ** 2)) * g.cell_volume)
    return num / ((1 + abs(t)) * sobolev_norm(F, SobolevSpec(s)))


def weighted_decay_norms(a: float, alpha, t_samples, grid: Grid3,
                         profile: ProfileSpec = ProfileSpec()) -> np.ndarray:
    """||d^alpha (exp(a(x+y1+y2)) W(t) phi)||_2 via the conjugated propagator."""
    if not a * math.sqrt(3) < profile.b:
        raise ValueError(f"need a*sqrt(3) < b for a representable weight, got a={a}, b={profile.b}")
    x, y1, y2 = grid.coords()
    expo = a * (x + y1 + y2) - profile.b * np.sqrt(x ** 2 + y1 ** 2 + y2 ** 2)
    if expo.max() > 700:
        raise ValueError(f"weighted datum overflows (max exponent {expo.max():.1f})")
    w0 = forward_transform(RealField(grid, np.exp(expo)))
    sym = derivative_symbol(grid, tuple(alpha))
    out = []
    for t in t_samples:
        wt = apply_weighted_propagator(w0, float(t), a)
        out.append(spectral_l2(SpectralField(grid, wt.coeffs * sym)))
    vals = np.array(out)
    if not np.all(np.isfinite(vals)):
        raise ValueError("weighted evolution lost dynamic range (non-finite norms)")
    return vals


def weighted_decay_scaling(a: float, alpha, t_samples, grid: Grid3,
                           profile: ProfileSpec = ProfileSpec()) -> float:
    """Slope of log(N(t) exp(-3 a^3 t)) against log t."""
    t = np.asarray(t_samples, dtype=float)
    if np.any(t <= 0) or np.any(t > 1):
        raise ValueError("t_samples must lie in (0, 1]")
    if sum(alpha) > 2:
        raise ValueError("|alpha| <= 2 required")
    N = weighted_decay_norms(a, alpha, t, grid, profile)
    slope, _ = np.polyfit(np.log(t), np.log(N) - 3 * a ** 3 * t, 1)
    return float(slope)


# ---------------------------------------------------------------------------
# pointwise regularity


def gradient_oscillation(f: RealField | SpectralField, delta: float) -> float:
    """max_d |d_d f(+delta e_d) - d_d f(-delta e_d)| at the origin.

    Derivatives are spectral; points off the grid are reached by evaluating
    the trigonometric interpolant along the coordinate line.
    """
    F = forward_transform(f) if isinstance(f, RealField) else f
    g = F.grid
    if delta < 2 * g.spacing - 1e-12:
        raise ValueError(f"delta={delta} is below resolution (2 * spacing = {2 * g.spacing})")
    score = 0.0
    for ax in range(3):
        G = 1j * g.wavenumbers(odd=True)[ax] * F.coeffs
        line = G.sum(axis=tuple(a for a in range(3) if a != ax))
        plus = (line * np.exp(1j * g.k * delta)).sum().real
        minus = (line * np.exp(-1j * g.k * delta)).sum().real
        score = max(score, abs(plus - minus) / g.box_len ** 3)
    return float(score)


def default_sweep_times(armed: SingularTimeSet, window: tuple[float, float] | None = None,
                        n_irrational: int = 4) -> list[float]:
    """Armed rationals plus golden-ratio derived times inside the window.

    The default window runs from 0 to half a unit past the last armed time.
    """
    if window is None:
        window = (0.0, max(armed.as_floats(), default=1.0) + 0.5)
    return sorted(set(armed.as_floats()) | set(golden_times(window, n_irrational)))


@dataclass
class SweepResult:
    rows: list[tuple[float, float, bool]]   # (t, score, is_armed_rational)
    armed: SingularTimeSet
    delta: float
    source: str
    genericity: dict[float, float] = field(default_factory=dict)

    @property
    def baseline(self) -> float:
        vals = [s for t, s, armed in self.rows if not armed and not _is_rational_like(t)]
        return max(vals) if vals else 0.0

    def spike_set(self, factor: float = 5.0) -> list[float]:
        b = self.baseline
        return [t for t, s, _ in self.rows if s > factor * b]

    def min_armed_ratio(self) -> float:
        b = self.baseline
        vals = [s for t, s, armed in self.rows if armed]
        if not vals:
            return math.nan
        return min(vals) / b if b else math.inf

    def max_armed_ratio(self) -> float:
        b = self.baseline
        vals = [s for t, s, armed in self.rows if armed]
        return max(vals) / b if b and vals else math.nan

    def spikes_match_armed(self, factor: float = 5.0) -> bool:
        got = self.spike_set(factor)
        return (len(got) == len(self.armed)
                and all(t in self.armed for t in got))


def _is_rational_like(t: float, qmax: int = 12) -> bool:
    q = Fraction(t).limit_denominator(qmax)
    return abs(float(q) - t) < 1e-9


def blowup_sweep(spec: BlowupSpec, grid: Grid3, times, delta: float | None = None,
                 source: str = "linear", eps: float = 0.05, *,
                 window: tuple[float, float] | None = None,
                 solver: SolverConfig | None = None) -> SweepResult:
    """Oscillation score of W(t)u0, u(t) (data eps*u0) or z_1(t) at each time.

    Armed rationals are the retained singular times inside ``window``
    (default: the span of ``times``).
    """
    if source not in ("linear", "nonlinear", "duhamel"):
        raise ValueError(f"unknown field source {source!r}")
    times = sorted(float(t) for t in times)
    delta = 4 * grid.spacing if delta is None else delta
    window = window or (times[0], times[-1])
    u0, singular = build_u0(spec, grid)
    armed = SingularTimeSet(
        [q for q in singular.times if window[0] <= q <= window[1]],
        [c for q, c in zip(singular.times, singular.coefficients)
         if window[0] <= q <= window[1]])
    F0 = forward_transform(u0)
    if source == "linear":
        fields = [apply_propagator(F0, t) for t in times]
    else:
        data = eps * u0
        cfg = solver or SolverConfig(k=1, dt=0.01)
        us = solve_at(data, times, cfg)
        if source == "nonlinear":
            fields = [forward_transform(u) for u in us]
        else:
            Fd = forward_transform(data)
            fields = [forward_transform(u) - apply_propagator(Fd, t) for t, u in zip(times, us)]
    rows = [(t, gradient_oscillation(Ft, delta), t in armed) for t, Ft in zip(times, fields)]
    gen = {t: genericity_margin(GenericityProbe(t, 2000)) for t, _, a in rows
           if not a and not _is_rational_like(t)}
    return SweepResult(rows, armed, delta, source, gen)


# ---------------------------------------------------------------------------
# Duhamel smoothing


@dataclass
class SmoothingReport:
    n_axes: list[int]
    s_probe: float
    t: float
    G_lin: list[float]
    G_duh: list[float]
    mode: str                 # "absolute" or "comparative"
    lin_min_growth: float
    duh_max_growth: float
    under_resolved: list[int] = field(default_factory=list)

    @staticmethod
    def _growths(vals):
        out = []
        for a, b in zip(vals, vals[1:]):
            out.append(0.0 if a == 0 and b == 0 else (b / a if a else math.inf))
        return out

    @property
    def lin_growth(self) -> list[float]:
        return self._growths(self.G_lin)

    @property
    def duh_growth(self) -> list[float]:
        return self._growths(self.G_duh)

    @property
    def verdict(self) -> str:
        lg, dg = self.lin_growth, self.duh_growth
        if all(v == 0 for v in self.G_duh):
            return "SMOOTHING"
        if self.mode == "absolute":
            ok = all(l >= self.lin_min_growth and d <= self.duh_max_growth for l, d in zip(lg, dg))
        else:
            ok = all(d <= l for l, d in zip(lg, dg))
        return "SMOOTHING" if ok else "NOT-SMOOTHING"

    def as_dict(self) -> dict:
        return {"n_axes": self.n_axes, "s_probe": self.s_probe, "t": self.t,
                "G_lin": self.G_lin, "G_duh": self.G_duh, "lin_growth": self.lin_growth,
                "duh_growth": self.duh_growth, "mode": self.mode,
                "lin_min_growth": self.lin_min_growth, "duh_max_growth": self.duh_max_growth,
                "under_resolved": self.under_resolved, "verdict": self.verdict}


def smoothing_report(make_u0: Callable[[Grid3], RealField], cfg: SolverConfig, s_probe: float,
                     grids: list[Grid3], t: float = 0.5, *, mode: str | None = None,
                     lin_min_growth: float = 1.25, duh_max_growth: float = 1.15) -> SmoothingReport:
    """Grid-refinement growth of ||J^s W(t)u0|| and ||J^s z_k(t)||.

    ``mode`` defaults to ``absolute`` for k >= 2 and ``comparative`` for k = 1.
    """
    ns = [g.n_axis for g in grids]
    if any(b != 2 * a for a, b in zip(ns, ns[1:])):
        raise ValueError(f"grids must double: {ns}")
    mode = mode or ("absolute" if cfg.k >= 2 else "comparative")
    run_cfg = SolverConfig(k=cfg.k, dt=cfg.dt, T=t, dealias_fraction=cfg.dealias_fraction,
                           snapshot_stride=max(1, round(t / cfg.dt)),
                           cfl_constant=cfg.cfl_constant, nonlinear=cfg.nonlinear)
    G_lin, G_duh, bad = [], [], []
    for g in grids:
        u0 = make_u0(g)
        traj = integrate(u0, run_cfg)
        z = duhamel_split(traj, u0).snapshots[-1]
        lin = apply_propagator(forward_transform(u0), t)
        G_lin.append(sobolev_norm(lin, SobolevSpec(s_probe)))
        G_duh.append(sobolev_norm(z, SobolevSpec(s_probe)))
        if _band_edge_flag(traj.snapshots[-1], frac=0.9, tol=1e-2):
            bad.append(g.n_axis)
    return SmoothingReport(ns, s_probe, t, G_lin, G_duh, mode, lin_min_growth,
                           duh_max_growth, bad)


# ---------------------------------------------------------------------------
# contraction


@dataclass
class ContractionReport:
    distances: list[float]
    T: float
    quad_points: int
    mismatch: float           # ||Picard(T) - integrate(T)||_{H^s}
    tolerance: float          # Richardson error estimates of both schemes, summed
    ratio_bound: float = 0.5
    first_ratio: int = 2

    @property
    def ratios(self) -> list[float]:
        d = self.distances
        return [d[i + 1] / d[i] if d[i] > 0 else 0.0 for i in range(len(d) - 1)]

    @property
    def contracting(self) -> bool:
        return all(r <= self.ratio_bound for r in self.ratios[self.first_ratio:])

    @property
    def verdict(self) -> str:
        return "PASS" if self.contracting and self.mismatch <= self.tolerance else "FAIL"

    def as_dict(self) -> dict:
        return {"T": self.T, "quad_points": self.quad_points, "distances": self.distances,
                "ratios": self.ratios, "ratio_bound": self.ratio_bound,
                "mismatch": self.mismatch, "tolerance": self.tolerance,
                "contracting": self.contracting, "verdict": self.verdict}


def contraction_report(u0: RealField, T: float, *, k: int = 1, quad_points: int = 33,
                       n_iters: int = 10, sobolev_s: float = 2.0) -> ContractionReport:
    """Picard distances and the Picard/integrate agreement at t = T.

    Both schemes are rerun at half the step; the Richardson estimates
    (trapezoid order 2, RK4 order 4) of their errors form the tolerance.
    """
    from .solver import picard_iterate

    coarse = picard_iterate(u0, T, n_iters, quad_points, k=k, sobolev_s=sobolev_s)
    fine = picard_iterate(u0, T, n_iters, 2 * quad_points - 1, k=k, sobolev_s=sobolev_s)
    dt = T / (quad_points - 1)

    def run(step):
        cfg = SolverConfig(k=k, dt=step, T=T, snapshot_stride=10 ** 9)
        return integrate(u0, cfg).meta["final"]

    ic, if_ = run(dt), run(dt / 2)
    spec = SobolevSpec(sobolev_s)
    err_p = sobolev_norm(coarse.final - fine.final, spec) * 4 / 3
    err_i = sobolev_norm(ic - if_, spec) * 16 / 15
    mismatch = sobolev_norm(coarse.final - ic, spec)
    return ContractionReport(coarse.distances, T, quad_points, mismatch, err_p + err_i)
