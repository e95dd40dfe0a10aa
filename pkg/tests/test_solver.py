import math
import warnings

import numpy as np
import pytest

from gzk.blowup_data import PeriodizationWarning, ProfileSpec, sample_profile
from gzk.grid import RealField, forward_transform, inverse_transform, make_grid
from gzk.multipliers import apply_propagator
from gzk.norms import lebesgue_norm
from gzk.solver import (CFLViolation, SolverAbort, SolverConfig, cfl_bound, duhamel_quadrature,
                        duhamel_split, integrate, invariants, linear_trajectory, picard_iterate,
                        solve_at)


def gaussian(grid, amp, width=1.0, shift=0.0):
    x, y1, y2 = grid.coords()
    return RealField(grid, amp * np.exp(-((x - shift) ** 2 + y1 ** 2 + y2 ** 2) / (2 * width ** 2)))


@pytest.fixture(scope="module")
def g32():
    return make_grid(32, 20.0)


def test_config_validation():
    with pytest.raises(ValueError):
        SolverConfig(k=0)
    with pytest.raises(ValueError):
        SolverConfig(dt=0)
    with pytest.raises(ValueError):
        SolverConfig(T=1.0, dt=0.3).n_steps


def test_zero_data_zero_trajectory(g32):
    tr = integrate(RealField.zeros(g32), SolverConfig(dt=0.05, T=0.5, snapshot_stride=2))
    assert all(np.all(s.samples == 0) for s in tr.snapshots)
    assert tr.provenance == "nonlinear"


def test_linear_limit_matches_propagator(g32):
    u0 = gaussian(g32, 1.0)
    tr = integrate(u0, SolverConfig(dt=0.05, T=1.0, nonlinear=False))
    F = forward_transform(u0)
    for t, s in zip(tr.times, tr.snapshots):
        ref = inverse_transform(apply_propagator(F, t)).samples
        assert np.abs(s.samples - ref).max() <= 1e-10 * np.abs(ref).max()


def test_cfl_refuses_to_start(g32):
    u0 = gaussian(g32, 10.0)
    bound = cfl_bound(10.0, g32)
    with pytest.raises(CFLViolation):
        integrate(u0, SolverConfig(dt=2 * bound, T=4 * bound))


def test_abort_reports_last_valid_time(g32):
    u0 = gaussian(g32, 40.0, width=0.6)
    cfg = SolverConfig(k=3, dt=0.02, T=2.0, cfl_constant=1e9, snapshot_stride=1)
    with np.errstate(all="ignore"), pytest.raises(SolverAbort) as info:
        integrate(u0, cfg)
    assert 0 <= info.value.last_time < 2.0


def _gap(g, eps):
    u0 = gaussian(g, eps)
    tr = integrate(u0, SolverConfig(dt=0.05, T=1.0, snapshot_stride=4))
    z = duhamel_split(tr, u0)
    return max(lebesgue_norm(s) for s in z.snapshots)


def test_duhamel_gap_is_quadratic(g32):
    ratio = _gap(g32, 0.2) / _gap(g32, 0.1)
    assert abs(ratio / 4 - 1) < 0.2


def _final(u0, k, dt, T):
    return integrate(u0, SolverConfig(k=k, dt=dt, T=T, snapshot_stride=10 ** 6)).meta["final"]


def test_rk4_observed_order(g32):
    u0 = gaussian(g32, 1.0, width=1.5)
    T = 0.5
    a, b, c = (_final(u0, 1, T / n, T) for n in (10, 20, 40))
    order = math.log2(lebesgue_norm(a - b) / lebesgue_norm(b - c))
    assert order >= 3.5


def test_duhamel_split_linear_is_zero(g32):
    u0 = gaussian(g32, 1.0)
    tr = linear_trajectory(u0, np.linspace(0, 1, 5))
    z = duhamel_split(tr, u0)
    assert z.provenance == "duhamel"
    assert all(np.abs(s.samples).max() < 1e-12 for s in z.snapshots)


def test_duhamel_split_starts_at_zero(g32):
    u0 = gaussian(g32, 0.5)
    z = duhamel_split(integrate(u0, SolverConfig(dt=0.05, T=0.2)), u0)
    assert np.all(z.snapshots[0].samples == 0)


def test_duhamel_split_grid_mismatch(g32):
    u0 = gaussian(g32, 0.5)
    tr = integrate(u0, SolverConfig(dt=0.05, T=0.1))
    with pytest.raises(ValueError):
        duhamel_split(tr, gaussian(make_grid(16, 20.0), 0.5))


def test_duhamel_matches_quadrature(g32):
    u0 = gaussian(g32, 0.5)
    tr = integrate(u0, SolverConfig(dt=0.005, T=0.1))
    z = duhamel_split(tr, u0).snapshots[-1]
    q = duhamel_quadrature(tr, len(tr.times) - 1)
    assert lebesgue_norm(z - q) <= 0.05 * lebesgue_norm(q)


def test_duhamel_small_time_bound(g32):
    u0 = gaussian(g32, 0.5)
    tr = integrate(u0, SolverConfig(dt=0.005, T=0.1))
    z = duhamel_split(tr, u0)
    ux = inverse_transform(forward_transform(u0) * 1).samples
    k = g32.k_odd[:, None, None]
    prod = [s.samples * np.fft.ifftn(1j * k * np.fft.fftn(s.samples)).real for s in tr.snapshots]
    sup = max(math.sqrt(np.sum(p ** 2) * g32.cell_volume) for p in prod)
    for t, s in zip(tr.times, z.snapshots):
        assert lebesgue_norm(s) <= 1.05 * t * sup + 1e-14
    assert ux.shape == g32.shape


def test_solve_at_matches_integrate(g32):
    u0 = gaussian(g32, 0.5)
    tr = integrate(u0, SolverConfig(dt=0.05, T=0.5, snapshot_stride=5))
    got = solve_at(u0, [0.25, 0.5], SolverConfig(dt=0.05))
    assert np.abs(got[0].samples - tr.snapshots[1].samples).max() < 1e-13
    assert np.abs(got[1].samples - tr.snapshots[2].samples).max() < 1e-13


def test_invariants_zero(g32):
    assert invariants(RealField.zeros(g32), 1) == (0.0, 0.0, 0.0)


def test_mass_quadratic(g32):
    f = gaussian(g32, 0.7)
    assert math.isclose(invariants(3.0 * f)[0], 9.0 * invariants(f)[0], rel_tol=1e-12)


@pytest.mark.parametrize("k", [1, 2])
def test_hamiltonian_sign_by_conservation(k):
    # the frozen sign conserves H; the flipped cubic sign drifts
    g = make_grid(32, 20.0)
    u0 = gaussian(g, 0.8, width=1.2)
    tr = integrate(u0, SolverConfig(k=k, dt=0.01, T=0.4, snapshot_stride=10))

    def flipped(f):
        m, mu, h = invariants(f, k)
        pot = float(np.sum(f.samples ** (k + 2)) * g.cell_volume) / ((k + 1) * (k + 2))
        return h + 2 * pot

    H = [invariants(s, k)[2] for s in tr.snapshots]
    Hf = [flipped(s) for s in tr.snapshots]
    drift = max(abs(h - H[0]) for h in H) / abs(H[0])
    drift_f = max(abs(h - Hf[0]) for h in Hf) / abs(Hf[0])
    assert drift < 1e-5 and drift_f > 100 * drift


def test_mean_conserved(g32):
    u0 = gaussian(g32, 0.5)
    tr = integrate(u0, SolverConfig(dt=0.02, T=0.4, snapshot_stride=5))
    means = [invariants(s)[1] for s in tr.snapshots]
    assert max(abs(m - means[0]) for m in means) < 1e-12 * abs(means[0])


def test_picard_zero_data(g32):
    res = picard_iterate(RealField.zeros(g32), 0.25, 5, 9)
    assert all(d == 0 for d in res.distances)


@pytest.fixture(scope="module")
def picard_pair():
    g = make_grid(64, 30.0)
    u0 = 0.05 * sample_profile(ProfileSpec(), g)
    return picard_iterate(u0, 0.25, 4, 33), picard_iterate(u0, 0.125, 4, 33)


def test_picard_contracts(picard_pair):
    res, _ = picard_pair
    assert all(r <= 0.5 for r in res.ratios[2:])
    assert not res.diverging


@pytest.mark.xfail(strict=True, reason=(
    "for cusp data the first Picard step is dominated by high modes whose Duhamel integral "
    "saturates after t ~ |omega|^-1, so d_2/d_1 is nearly T-independent; see decisions ledger"))
def test_picard_ratio_halves_with_T(picard_pair):
    full, half = picard_pair
    factor = (full.distances[1] / full.distances[0]) / (half.distances[1] / half.distances[0])
    assert 1.2 <= factor <= 2.0


def test_picard_divergence_reported():
    g = make_grid(16, 10.0)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", PeriodizationWarning)
        u0 = 30.0 * sample_profile(ProfileSpec(), g)
    with np.errstate(all="ignore"):
        res = picard_iterate(u0, 2.0, 6, 9)
    assert res.diverging
