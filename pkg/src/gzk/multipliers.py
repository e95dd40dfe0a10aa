"""Fourier multipliers: dispersion, free and weighted propagators, derivatives.

Under the transform convention of :mod:`gzk.grid` a derivative ``d/dx`` acts
as ``i xi``, so the linear part of ``u_t + d_x Lap u = 0`` becomes
``u_hat_t = i omega u_hat`` with ``omega = xi (xi^2 + |eta|^2)`` and the free
propagator ``W(t)`` multiplies each mode by ``exp(i t omega)``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import Grid3, SpectralField

__all__ = [
    "Mode",
    "dispersion_symbol",
    "dispersion_on_grid",
    "apply_propagator",
    "weighted_propagator_symbol",
    "weighted_symbol_on_grid",
    "apply_weighted_propagator",
    "FRACTIONAL_KINDS",
    "fractional_symbol",
    "apply_fractional",
    "derivative_symbol",
]


@dataclass(frozen=True)
class Mode:
    xi: float
    eta1: float
    eta2: float


def dispersion_symbol(m: Mode) -> float:
    return m.xi * (m.xi ** 2 + m.eta1 ** 2 + m.eta2 ** 2)


def dispersion_on_grid(grid: Grid3) -> np.ndarray:
    # odd in xi only; the Nyquist plane in xi gets omega = 0 so W stays real
    xi_o = grid.wavenumbers(odd=True)[0]
    xi, e1, e2 = grid.wavenumbers()
    return xi_o * (xi ** 2 + e1 ** 2 + e2 ** 2)


def apply_propagator(F: SpectralField, t: float) -> SpectralField:
    """W(t): multiply every mode by exp(i t omega)."""
    if t == 0:
        return SpectralField(F.grid, F.coeffs.copy(), F.real_valued)
    return SpectralField(F.grid, F.coeffs * np.exp(1j * t * dispersion_on_grid(F.grid)),
                         F.real_valued)


def weighted_propagator_symbol(m: Mode, a: float) -> complex:
    """Symbol of the linear flow conjugated by exp(a (x + y1 + y2)).

    With ``w = exp(a(x+y1+y2)) v`` and ``v_t + d_x Lap v = 0``, every derivative
    acting on ``v`` becomes ``(d - a)`` acting on ``w``; in Fourier variables
    ``w_hat_t = -(i xi - a) * sum_j (i zeta_j - a)^2 * w_hat``.
    """
    xi, e1, e2 = m.xi, m.eta1, m.eta2
    sq = xi ** 2 + e1 ** 2 + e2 ** 2
    re = -a * (xi ** 2 + (xi + e1) ** 2 + (xi + e2) ** 2) + 3 * a ** 3
    im = xi * sq - 3 * a ** 2 * xi - 2 * a ** 2 * (xi + e1 + e2)
    return complex(re, im)


def weighted_symbol_on_grid(grid: Grid3, a: float) -> np.ndarray:
    xi, e1, e2 = grid.wavenumbers()
    xo, o1, o2 = grid.wavenumbers(odd=True)
    # squares use the full lattice; odd factors (and cross terms) drop Nyquist
    re = -a * (3 * xi ** 2 + e1 ** 2 + e2 ** 2 + 2 * xo * (o1 + o2)) + 3 * a ** 3
    im = xo * (xi ** 2 + e1 ** 2 + e2 ** 2) - 3 * a ** 2 * xo - 2 * a ** 2 * (xo + o1 + o2)
    return re + 1j * im


def apply_weighted_propagator(W0: SpectralField, t: float, a: float) -> SpectralField:
    """Evolve ``w = exp(a(x+y1+y2)) W(t) v0`` from ``w0`` for ``t >= 0``.

    Backward times need the mirrored weight ``exp(-a(x+y1+y2))``, which is the
    same computation with ``a -> -a`` run on reflected data; growing symbols
    are refused instead.
    """
    if t < 0:
        raise ValueError("t < 0: use the mirrored weight exp(-a(x+y1+y2)) for backward times")
    if a <= 0:
        raise ValueError(f"weight rate must be positive, got {a}")
    if t == 0:
        return SpectralField(W0.grid, W0.coeffs.copy(), W0.real_valued)
    mult = np.exp(t * weighted_symbol_on_grid(W0.grid, a))
    return SpectralField(W0.grid, W0.coeffs * mult, W0.real_valued)


FRACTIONAL_KINDS = ("D", "J", "Dx", "Dy1", "Dy2", "Dy", "Jx", "Jy", "dx", "dy1", "dy2")


def fractional_symbol(grid: Grid3, kind: str, s: float = 1.0) -> tuple[np.ndarray, bool]:
    """Per-mode symbol of a derivative operator and a flag set when a
    homogeneous symbol with ``s < 0`` had its zero mode zeroed.

    ``dx``/``dy1``/``dy2`` are the classical first derivatives (``s`` ignored);
    ``Dy`` uses ``|eta|`` and ``Dy1``/``Dy2`` a single transverse frequency.
    """
    xi, e1, e2 = grid.wavenumbers()
    if kind == "dx":
        return 1j * grid.wavenumbers(odd=True)[0], False
    if kind == "dy1":
        return 1j * grid.wavenumbers(odd=True)[1], False
    if kind == "dy2":
        return 1j * grid.wavenumbers(odd=True)[2], False
    if kind == "J":
        return (1 + xi ** 2 + e1 ** 2 + e2 ** 2) ** (s / 2), False
    if kind == "Jx":
        return np.broadcast_to((1 + xi ** 2) ** (s / 2), grid.shape), False
    if kind == "Jy":
        return np.broadcast_to((1 + e1 ** 2 + e2 ** 2) ** (s / 2), grid.shape), False
    base = {
        "D": lambda: np.sqrt(xi ** 2 + e1 ** 2 + e2 ** 2),
        "Dx": lambda: np.broadcast_to(np.abs(xi), grid.shape),
        "Dy1": lambda: np.broadcast_to(np.abs(e1), grid.shape),
        "Dy2": lambda: np.broadcast_to(np.abs(e2), grid.shape),
        "Dy": lambda: np.broadcast_to(np.sqrt(e1 ** 2 + e2 ** 2), grid.shape),
    }
    if kind not in base:
        raise ValueError(f"unknown derivative kind {kind!r}; expected one of {FRACTIONAL_KINDS}")
    r = base[kind]()
    if s == 0:
        return np.ones(grid.shape), False
    zero = r == 0
    if s < 0 and zero.any():
        out = np.where(zero, 0.0, np.where(zero, 1.0, r) ** s)
        return out, True
    return r ** s, False


def apply_fractional(F: SpectralField, kind: str, s: float = 1.0) -> SpectralField:
    sym, flagged = fractional_symbol(F.grid, kind, s)
    return SpectralField(F.grid, F.coeffs * sym, F.real_valued, zero_mode_dropped=flagged)


def derivative_symbol(grid: Grid3, alpha: tuple[int, int, int]) -> np.ndarray:
    """Symbol of d_x^a0 d_y1^a1 d_y2^a2 (classical, integer orders)."""
    sym = np.ones(grid.shape, dtype=complex)
    for axis, order in enumerate(alpha):
        if order < 0:
            raise ValueError(f"negative derivative order in {alpha}")
        if order == 0:
            continue
        k = grid.wavenumbers(odd=order % 2 == 1)[axis]
        sym = sym * (1j * k) ** order
    return sym
