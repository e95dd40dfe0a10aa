"""Integrating-factor RK4 solver for u_t + d_x Lap u + u^k u_x = 0.

The linear part is removed exactly: with ``v_hat = exp(-i t omega) u_hat`` the
remaining ODE ``v_hat' = -exp(-i t omega) F[u^k u_x]`` is advanced by classical
RK4.  Internally everything runs on real-to-complex transforms without the
physical normalization of :mod:`gzk.grid`, which cancels in a round trip.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
import scipy.fft as sfft

from .grid import Grid3, RealField, dealias_mask, forward_transform, inverse_transform
from .multipliers import apply_propagator, fractional_symbol
from .norms import SobolevSpec, Trajectory, lebesgue_norm, sobolev_norm

__all__ = [
    "SolverConfig",
    "SolverAbort",
    "CFLViolation",
    "integrate",
    "solve_at",
    "duhamel_split",
    "linear_trajectory",
    "invariants",
    "duhamel_quadrature",
    "picard_iterate",
    "PicardResult",
]

log = logging.getLogger(__name__)


class SolverAbort(RuntimeError):
    """Non-finite state; ``last_time`` is the last time with a finite solution."""

    def __init__(self, msg: str, last_time: float):
        super().__init__(f"{msg} (last valid time {last_time:.6g})")
        self.last_time = last_time


class CFLViolation(ValueError):
    pass


@dataclass(frozen=True)
class SolverConfig:
    k: int = 1
    dt: float = 0.01
    T: float = 1.0
    dealias_fraction: float = 2.0 / 3.0
    snapshot_stride: int = 1
    cfl_constant: float = 1.0
    nonlinear: bool = True

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 1:
            raise ValueError(f"nonlinearity degree k must be a positive integer, got {self.k}")
        if not self.dt > 0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if not self.T >= 0:
            raise ValueError(f"T must be non-negative, got {self.T}")
        if self.snapshot_stride < 1:
            raise ValueError("snapshot_stride must be >= 1")

    @property
    def n_steps(self) -> int:
        n = round(self.T / self.dt)
        if abs(n * self.dt - self.T) > 1e-9 * max(self.T, 1):
            raise ValueError(f"T={self.T} is not a multiple of dt={self.dt}")
        return n


def cfl_bound(u_max: float, grid: Grid3, constant: float = 1.0) -> float:
    """Largest admissible step, constant / (max|u| * k_max)."""
    if u_max == 0:
        return math.inf
    return constant / (u_max * grid.k_max)


class _Spectral:
    """rfft-based workspace holding the symbols a run needs."""

    def __init__(self, grid: Grid3, k: int, fraction: float):
        n = grid.n_axis
        self.grid = grid
        self.k = k
        kf = grid.k
        kr = 2 * np.pi * np.arange(n // 2 + 1) / grid.box_len
        kfo, kro = grid.k_odd, kr.copy()
        kro[-1] = 0.0
        xi, e1, e2 = kf[:, None, None], kf[None, :, None], kr[None, None, :]
        self.omega = kfo[:, None, None] * (xi ** 2 + e1 ** 2 + e2 ** 2)
        self.ikx = 1j * kfo[:, None, None] * np.ones((1, n, n // 2 + 1))
        full = dealias_mask(grid, fraction)
        self.mask = full[:, :, : n // 2 + 1]

    def fwd(self, u: np.ndarray) -> np.ndarray:
        return sfft.rfftn(u, workers=-1)

    def inv(self, U: np.ndarray) -> np.ndarray:
        return sfft.irfftn(U, s=self.grid.shape, workers=-1)

    def nonlinear(self, U: np.ndarray) -> np.ndarray:
        """F[P(u^k u_x)], the mask applied once to the final product."""
        u = self.inv(U)
        ux = self.inv(self.ikx * U)
        prod = ux
        for _ in range(self.k):
            prod = prod * u
        return self.mask * self.fwd(prod)


def integrate(u0: RealField, cfg: SolverConfig) -> Trajectory:
    """Nonlinear trajectory from ``u0`` on [0, T], snapshots every stride steps."""
    grid = u0.grid
    sp = _Spectral(grid, cfg.k, cfg.dealias_fraction)
    umax = float(np.abs(u0.samples).max())
    bound = cfl_bound(umax, grid, cfg.cfl_constant)
    if cfg.nonlinear and cfg.dt > bound:
        raise CFLViolation(f"dt={cfg.dt} exceeds the stability bound {bound:.4g} "
                           f"(C={cfg.cfl_constant}, max|u0|={umax:.4g}, k_max={grid.k_max:.4g})")
    n_steps = cfg.n_steps
    dt = cfg.dt
    U = sp.fwd(u0.samples)
    times, snaps = [0.0], [RealField(grid, u0.samples.copy())]
    t = 0.0
    for step in range(1, n_steps + 1):
        U = _rk4_steps(sp, U, dt, 1, cfg.nonlinear, t)
        t = step * dt
        if step % cfg.snapshot_stride == 0 or step == n_steps:
            u = sp.inv(U)
            if not np.all(np.isfinite(u)):
                raise SolverAbort("non-finite solution", times[-1])
            if step % cfg.snapshot_stride == 0:
                times.append(t)
                snaps.append(RealField(grid, u))
    if n_steps % cfg.snapshot_stride:
        log.info("final time %.4g is off the snapshot lattice and not stored", t)
    traj = Trajectory(grid, np.array(times), snaps,
                      "nonlinear" if cfg.nonlinear else "linear",
                      {"k": cfg.k, "dt": dt, "T": cfg.T})
    traj.meta["final"] = RealField(grid, sp.inv(U))
    return traj


def solve_at(u0: RealField, times, cfg: SolverConfig) -> list[RealField]:
    """u(t) at arbitrary increasing times, landing exactly on each of them.

    Each interval between requested times is split into the fewest equal
    steps not exceeding ``cfg.dt``; ``cfg.T`` is ignored.
    """
    grid = u0.grid
    sp = _Spectral(grid, cfg.k, cfg.dealias_fraction)
    umax = float(np.abs(u0.samples).max())
    bound = cfl_bound(umax, grid, cfg.cfl_constant)
    if cfg.nonlinear and cfg.dt > bound:
        raise CFLViolation(f"dt={cfg.dt} exceeds the stability bound {bound:.4g}")
    times = [float(t) for t in times]
    if any(b < a for a, b in zip(times, times[1:])) or (times and times[0] < 0):
        raise ValueError("times must be non-negative and increasing")
    U = sp.fwd(u0.samples)
    t, out = 0.0, []
    for target in times:
        span = target - t
        if span > 0:
            n = max(1, math.ceil(span / cfg.dt - 1e-9))
            U = _rk4_steps(sp, U, span / n, n, cfg.nonlinear, t)
            t = target
        out.append(RealField(grid, sp.inv(U)))
    return out


def _rk4_steps(sp: _Spectral, U: np.ndarray, dt: float, n: int, nonlinear: bool,
               t0: float) -> np.ndarray:
    E = np.exp(1j * dt * sp.omega)
    if not nonlinear:
        return np.exp(1j * n * dt * sp.omega) * U
    Eh = np.exp(0.5j * dt * sp.omega)
    for step in range(n):
        k1 = -sp.nonlinear(U)
        k2 = -sp.nonlinear(Eh * (U + 0.5 * dt * k1))
        k3 = -sp.nonlinear(Eh * U + 0.5 * dt * k2)
        k4 = -sp.nonlinear(E * U + dt * Eh * k3)
        U = E * U + dt / 6 * (E * k1 + 2 * Eh * (k2 + k3) + k4)
        if not np.all(np.isfinite(U)):
            raise SolverAbort("non-finite solution", t0 + step * dt)
    return U


def linear_trajectory(u0: RealField, times) -> Trajectory:
    """Snapshots W(t) u0 at the given (uniform) times."""
    F = forward_transform(u0)
    snaps = [inverse_transform(apply_propagator(F, float(t))) for t in times]
    return Trajectory(u0.grid, np.asarray(times, float), snaps, "linear")


def duhamel_split(traj: Trajectory, u0: RealField) -> Trajectory:
    """z(t_i) = u(t_i) - W(t_i) u0 for each snapshot.

    A trajectory of the free flow has no nonlinear part, so its split is
    returned as exact zeros rather than as stepping round-off.
    """
    if traj.grid != u0.grid:
        raise ValueError(f"grid mismatch: trajectory on {traj.grid}, u0 on {u0.grid}")
    if traj.provenance == "linear":
        z = [RealField(traj.grid, np.zeros(traj.grid.shape)) for _ in traj.snapshots]
        return Trajectory(traj.grid, traj.times.copy(), z, "duhamel", dict(traj.meta))
    F = forward_transform(u0)
    z = [u - inverse_transform(apply_propagator(F, float(t)))
         for t, u in zip(traj.times, traj.snapshots)]
    z[0] = RealField(traj.grid, np.zeros(traj.grid.shape))
    return Trajectory(traj.grid, traj.times.copy(), z, "duhamel", dict(traj.meta))


def invariants(f: RealField, k: int = 1) -> tuple[float, float, float]:
    """(mass, mean, hamiltonian) = (int u^2, int u, int |grad u|^2/2 - u^(k+2)/((k+1)(k+2)))."""
    g = f.grid
    u = f.samples
    mass = float(np.sum(u * u) * g.cell_volume)
    mean = float(np.sum(u) * g.cell_volume)
    F = forward_transform(f)
    grad2 = sum(np.abs(fractional_symbol(g, kind)[0] * F.coeffs) ** 2
                for kind in ("dx", "dy1", "dy2"))
    kinetic = 0.5 * float(np.sum(grad2)) / g.box_len ** 3
    potential = float(np.sum(u ** (k + 2)) * g.cell_volume) / ((k + 1) * (k + 2))
    return mass, mean, kinetic - potential


def duhamel_quadrature(traj: Trajectory, t_index: int, k: int = 1,
                       dealias_fraction: float = 2.0 / 3.0) -> RealField:
    """-int_0^t W(t - t') (u^k u_x)(t') dt' by trapezoid over stored snapshots.

    The sign follows the equation: u = W(t) u0 - int W(t - t') u^k u_x dt'.
    """
    g = traj.grid
    sp = _Spectral(g, k, dealias_fraction)
    t = traj.times[t_index]
    if t_index == 0:
        return RealField(g, np.zeros(g.shape))
    acc = np.zeros_like(sp.fwd(traj.snapshots[0].samples))
    w = np.full(t_index + 1, traj.times[1] - traj.times[0])
    w[0] = w[-1] = w[0] / 2
    for j in range(t_index + 1):
        Nj = sp.nonlinear(sp.fwd(traj.snapshots[j].samples))
        acc += w[j] * np.exp(1j * (t - traj.times[j]) * sp.omega) * Nj
    return RealField(g, -sp.inv(acc))


@dataclass
class PicardResult:
    distances: list[float]
    times: np.ndarray
    final: RealField           # last iterate at t = T
    diverging: bool

    @property
    def ratios(self) -> list[float]:
        d = self.distances
        return [d[i + 1] / d[i] if d[i] > 0 else 0.0 for i in range(len(d) - 1)]


def picard_iterate(u0: RealField, T: float, n_iters: int, quad_points: int, k: int = 1,
                   dealias_fraction: float = 2.0 / 3.0, sobolev_s: float = 2.0,
                   rel_floor: float = 1e-12) -> PicardResult:
    """Iterate u -> W(t) u0 - int_0^t W(t - t') u^k u_x dt' on a uniform time grid.

    ``distances[n] = max_j ||u^{n+1}(t_j) - u^n(t_j)||_{H^s}``.  Growth over
    three consecutive iterations is reported via ``diverging``, not raised.
    Iteration stops early once a distance falls below ``rel_floor`` times the
    iterate norm: past that point the distances are rounding noise.
    """
    if quad_points < 2:
        raise ValueError("quad_points must be >= 2")
    g = u0.grid
    sp = _Spectral(g, k, dealias_fraction)
    times = np.linspace(0.0, T, quad_points)
    dt = times[1] - times[0]
    U0 = sp.fwd(u0.samples)
    phases = [np.exp(1j * t * sp.omega) for t in times]
    iterate = [ph * U0 for ph in phases]
    sob = fractional_symbol(g, "J", sobolev_s)[0][:, :, : g.n_axis // 2 + 1]
    # rfft half-spectrum: interior modes of the last axis stand for two modes
    half_w = np.full(g.n_axis // 2 + 1, 2.0)
    half_w[0] = half_w[-1] = 1.0
    norm_factor = math.sqrt(g.cell_volume / g.n_axis ** 3)

    def hs(D):
        return math.sqrt(float(np.sum(half_w * np.abs(sob * D) ** 2))) * norm_factor

    distances: list[float] = []
    for _ in range(n_iters):
        integrand = [np.conj(ph) * sp.nonlinear(Ui) for ph, Ui in zip(phases, iterate)]
        acc = np.zeros_like(U0)
        new = [iterate[0].copy()]
        for j in range(1, quad_points):
            acc = acc + 0.5 * dt * (integrand[j - 1] + integrand[j])
            new.append(phases[j] * (U0 - acc))
        distances.append(max(hs(a - b) for a, b in zip(new, iterate)))
        iterate = new
        if distances[-1] <= rel_floor * max(hs(a) for a in iterate):
            break
    growth = [distances[i + 1] > distances[i] for i in range(len(distances) - 1)]
    diverging = any(all(growth[i:i + 3]) for i in range(max(len(growth) - 2, 0)))
    if diverging:
        log.warning("Picard iterates diverge: distances %s", distances)
    return PicardResult(distances, times, RealField(g, sp.inv(iterate[-1])), diverging)
