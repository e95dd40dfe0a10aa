"""Periodic computational box, transforms and dealiasing.

The whole space R^3 is replaced by the centered box [-L/2, L/2)^3 with ``n``
samples per axis.  Spectral coefficients carry the factor ``spacing**3`` and
the phase of the centered origin, so that on a fine enough grid they
approximate the continuum transform ``f_hat(xi) = int f(x) exp(-i x.xi) dx``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
import scipy.fft as sfft

__all__ = [
    "Grid3",
    "RealField",
    "SpectralField",
    "make_grid",
    "forward_transform",
    "inverse_transform",
    "dealias_mask",
]


@dataclass(frozen=True)
class Grid3:
    n_axis: int
    box_len: float

    def __post_init__(self):
        if int(self.n_axis) != self.n_axis or self.n_axis < 8 or self.n_axis % 2:
            raise ValueError(f"n_axis must be an even integer >= 8, got {self.n_axis}")
        if not self.box_len > 0:
            raise ValueError(f"box_len must be positive, got {self.box_len}")

    @property
    def shape(self) -> tuple[int, int, int]:
        return (self.n_axis,) * 3

    @property
    def spacing(self) -> float:
        return self.box_len / self.n_axis

    @property
    def cell_volume(self) -> float:
        return self.spacing ** 3

    @cached_property
    def x(self) -> np.ndarray:
        """Centered sample coordinates along one axis; ``x[n/2] == 0``."""
        return -self.box_len / 2 + self.spacing * np.arange(self.n_axis)

    @cached_property
    def modes(self) -> np.ndarray:
        """Integer lattice indices in FFT order, covering [-n/2, n/2 - 1]."""
        return np.fft.fftfreq(self.n_axis, d=1.0 / self.n_axis).astype(int)

    @cached_property
    def k(self) -> np.ndarray:
        """Angular wavenumbers 2 pi m / L along one axis (FFT order)."""
        return 2 * np.pi * self.modes / self.box_len

    @cached_property
    def k_odd(self) -> np.ndarray:
        """Wavenumbers for odd symbols: the unpaired Nyquist mode is set to 0."""
        k = self.k.copy()
        k[self.n_axis // 2] = 0.0
        return k

    @property
    def k_max(self) -> float:
        return np.pi * self.n_axis / self.box_len

    def coords(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Broadcastable (x, y1, y2) coordinate arrays."""
        x = self.x
        return x[:, None, None], x[None, :, None], x[None, None, :]

    def wavenumbers(self, odd: bool = False):
        """Broadcastable (xi, eta1, eta2) arrays."""
        k = self.k_odd if odd else self.k
        return k[:, None, None], k[None, :, None], k[None, None, :]

    @cached_property
    def _phase(self) -> np.ndarray:
        # exp(i L xi / 2) = (-1)^m per axis: the origin sits at index n/2.
        s = np.where(self.modes % 2, -1.0, 1.0)
        return s[:, None, None] * s[None, :, None] * s[None, None, :]

    def origin_index(self) -> tuple[int, int, int]:
        return (self.n_axis // 2,) * 3


@dataclass
class RealField:
    grid: Grid3
    samples: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=float)
        if self.samples.shape != self.grid.shape:
            raise ValueError(
                f"samples shape {self.samples.shape} does not match grid {self.grid.shape}"
            )

    def __add__(self, other: RealField) -> RealField:
        _check_same_grid(self.grid, other.grid)
        return RealField(self.grid, self.samples + other.samples)

    def __sub__(self, other: RealField) -> RealField:
        _check_same_grid(self.grid, other.grid)
        return RealField(self.grid, self.samples - other.samples)

    def __mul__(self, c: float) -> RealField:
        return RealField(self.grid, c * self.samples)

    __rmul__ = __mul__

    @classmethod
    def zeros(cls, grid: Grid3) -> RealField:
        return cls(grid, np.zeros(grid.shape))


@dataclass
class SpectralField:
    grid: Grid3
    coeffs: np.ndarray = field(repr=False)
    real_valued: bool = True
    zero_mode_dropped: bool = False

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=complex)
        if self.coeffs.shape != self.grid.shape:
            raise ValueError(
                f"coeffs shape {self.coeffs.shape} does not match grid {self.grid.shape}"
            )

    def __add__(self, other: SpectralField) -> SpectralField:
        _check_same_grid(self.grid, other.grid)
        return SpectralField(self.grid, self.coeffs + other.coeffs,
                             self.real_valued and other.real_valued)

    def __sub__(self, other: SpectralField) -> SpectralField:
        _check_same_grid(self.grid, other.grid)
        return SpectralField(self.grid, self.coeffs - other.coeffs,
                             self.real_valued and other.real_valued)

    def __mul__(self, c) -> SpectralField:
        return SpectralField(self.grid, c * self.coeffs,
                             self.real_valued and np.isrealobj(c))

    __rmul__ = __mul__

    def hermitian_defect(self) -> float:
        """max |F(-m) - conj F(m)| / max |F|, over the paired modes."""
        c = self.coeffs
        flipped = np.roll(np.flip(c, axis=(0, 1, 2)), 1, axis=(0, 1, 2))
        scale = np.abs(c).max()
        return float(np.abs(flipped - c.conj()).max() / scale) if scale else 0.0


def _check_same_grid(a: Grid3, b: Grid3):
    if a != b:
        raise ValueError(f"grid mismatch: {a} vs {b}")


def make_grid(n_axis: int, box_len: float) -> Grid3:
    return Grid3(n_axis, float(box_len))


def forward_transform(f: RealField) -> SpectralField:
    g = f.grid
    coeffs = sfft.fftn(f.samples, workers=-1)
    coeffs *= g._phase * g.cell_volume
    return SpectralField(g, coeffs)


def inverse_transform(F: SpectralField, *, check_real: bool = False) -> RealField:
    """Back to physical samples, keeping the real part.

    With ``check_real`` the discarded imaginary part is compared against the
    field size and a ``ValueError`` is raised when it exceeds 1e-10 of it.
    """
    g = F.grid
    out = sfft.ifftn(F.coeffs * (g._phase / g.cell_volume), workers=-1)
    if check_real:
        scale = np.abs(out.real).max()
        if scale and np.abs(out.imag).max() > 1e-10 * scale:
            raise ValueError("inverse transform is not real-valued")
    return RealField(g, out.real)


def dealias_mask(grid: Grid3, fraction: float = 2.0 / 3.0) -> np.ndarray:
    if not 0 < fraction <= 1:
        raise ValueError(f"fraction must lie in (0, 1], got {fraction}")
    keep = np.abs(grid.modes) <= fraction * grid.n_axis / 2
    return (keep[:, None, None] & keep[None, :, None] & keep[None, None, :]).astype(float)
