"""Cycle wave functions on the torus in their two theta forms.

A cycle of length n contributes a common one-particle wave function: a
Gaussian-weighted superposition of torus plane waves with momentum scale
1/(sqrt(n) lambda), equivalently (by Poisson summation) a periodized
Gaussian of width sqrt(n) lambda around the center.  Both forms are
implemented and serve as mutual oracles.  In d dimensions the function is
a product of one-dimensional factors, one per coordinate, so all sums
below are one-dimensional.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .special_fn import _theta_zmax, reduce_shift, theta1d, theta1d_shifted

__all__ = [
    "CycleWaveParams",
    "psi_planewave_form",
    "psi_gaussian_form",
    "psi_shifted",
    "phase_theta_sum",
    "wave_profile",
    "profile_to_csv",
]


@dataclass(frozen=True)
class CycleWaveParams:
    """Arguments of the cycle wave function.

    ``y`` is the center (reduced into [0, L) per coordinate), ``xbar``
    the average-momentum shift vector (zero for the plain forms).
    """

    n: int
    L: float
    lam: float
    y: tuple
    xbar: tuple = ()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"cycle length must be >= 1, got {self.n}")
        if not self.L > 0.0:
            raise ValueError(f"box side must be positive, got {self.L}")
        if not self.lam > 0.0:
            raise ValueError(f"thermal wavelength must be positive, got {self.lam}")
        y = tuple(float(c) % self.L for c in np.atleast_1d(np.asarray(self.y, dtype=float)))
        if not y:
            raise ValueError("center y needs at least one coordinate")
        xbar = self.xbar if len(np.atleast_1d(self.xbar)) else (0.0,) * len(y)
        xbar = tuple(float(c) for c in np.atleast_1d(np.asarray(xbar, dtype=float)))
        if len(xbar) != len(y):
            raise ValueError(f"xbar has {len(xbar)} components, center has {len(y)}")
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "xbar", xbar)

    @property
    def d(self) -> int:
        return len(self.y)

    @property
    def a_num(self) -> float:
        # exponent scale of the amplitude sum (half the weight scale)
        return self.n * self.lam**2 / (2.0 * self.L**2)

    @property
    def a_den(self) -> float:
        # exponent scale of the normalizing theta
        return self.n * self.lam**2 / self.L**2

    @property
    def shift(self) -> tuple:
        # momentum shift in lattice units, reduced to [-1/2, 1/2]
        return tuple(float(s) for s in reduce_shift(np.array(self.xbar) * self.L / (2.0 * math.pi)))


def phase_theta_sum(a: float, s: float, w: float, form: str = "auto") -> complex:
    """sum_z exp(-pi a (z+s)^2) exp(2 pi i (z+s) w), by the direct series
    or its Poisson dual a^{-1/2} sum_m exp(2 pi i m s) exp(-pi (w-m)^2/a).

    ``form`` picks the representation: "direct", "dual", or "auto" (the
    faster-converging one).  The two must agree; tests use them as a
    mutual oracle.
    """
    if not a > 0.0 or math.isinf(a):
        raise ValueError(f"exponent scale must be positive and finite, got {a}")
    if form == "auto":
        form = "direct" if a >= 1.0 else "dual"
    if form == "direct":
        zmax = _theta_zmax(a) + 1
        z = np.arange(-zmax, zmax + 1) + s
        return complex(np.sum(np.exp(-math.pi * a * z**2) * np.exp(2j * math.pi * z * w)))
    if form == "dual":
        mmax = _theta_zmax(1.0 / a) + 1
        m = np.arange(math.floor(w) - mmax, math.floor(w) + mmax + 2)
        terms = np.exp(-math.pi * (w - m) ** 2 / a) * np.exp(2j * math.pi * m * s)
        return complex(np.sum(terms)) / math.sqrt(a)
    raise ValueError(f"form must be direct, dual, or auto, got {form!r}")


def _require_zero_shift(params: CycleWaveParams, what: str) -> None:
    if any(c != 0.0 for c in params.xbar):
        raise ValueError(f"{what} takes zero average momentum; use psi_shifted")


def psi_planewave_form(params: CycleWaveParams, x) -> complex:
    """Plane-wave superposition form:
    L^{-d/2} sum_z e^{-pi n lambda^2 z^2/(2L^2)} e^{i(2 pi/L) z.(x-y)}
    normalized by the square root of the weight theta."""
    _require_zero_shift(params, "the plane-wave form")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if x.shape != (params.d,):
        raise ValueError(f"point must have {params.d} components, got shape {x.shape}")
    a = params.a_num
    norm = math.sqrt(params.L) * math.sqrt(theta1d(params.a_den))
    out = complex(1.0)
    for xi, yi in zip(x, params.y):
        out *= phase_theta_sum(a, 0.0, (xi - yi) / params.L, form="direct") / norm
    return out


def psi_gaussian_form(params: CycleWaveParams, x) -> float:
    """Periodized-Gaussian form:
    (2/(sqrt(n) lambda))^{d/2} sum_z e^{-2 pi (x-y+Lz)^2/(n lambda^2)}
    over images, normalized by the dual theta; strictly positive."""
    _require_zero_shift(params, "the Gaussian form")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if x.shape != (params.d,):
        raise ValueError(f"point must have {params.d} components, got shape {x.shape}")
    n, L, lam = params.n, params.L, params.lam
    width2 = n * lam**2
    span = math.ceil(math.sqrt(20.0 * n / math.pi) * lam / L) + 1
    denom = math.sqrt(theta1d(1.0 / params.a_den)) * (math.sqrt(n) * lam / 2.0) ** 0.5
    out = 1.0
    for xi, yi in zip(x, params.y):
        u = xi - yi
        m0 = round(u / L)
        m = np.arange(m0 - span, m0 + span + 1)
        out *= float(np.exp(-2.0 * math.pi * (u - m * L) ** 2 / width2).sum()) / denom
    return out


def psi_shifted(params: CycleWaveParams, x) -> complex:
    """Average-momentum-shifted wave function: the plane-wave sum runs
    over momenta (2 pi/L)(z + s) with s the fractional shift, and the
    normalizing theta becomes the shifted theta at the same s."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if x.shape != (params.d,):
        raise ValueError(f"point must have {params.d} components, got shape {x.shape}")
    a = params.a_num
    out = complex(1.0)
    for xi, yi, s in zip(x, params.y, params.shift):
        denom = theta1d_shifted(params.a_den, s)
        if denom <= 0.0:
            raise RuntimeError(f"shifted theta collapsed to {denom} at s = {s}")
        num = phase_theta_sum(a, s, (xi - yi) / params.L)
        out *= num / (math.sqrt(params.L) * math.sqrt(denom))
    return out


def wave_profile(params: CycleWaveParams, axis: int = 0, num: int = 257):
    """Sample psi along x = y + t e_axis, t in [0, L): rows of
    (t, Re psi, Im psi, |psi|^2)."""
    if not 0 <= axis < params.d:
        raise ValueError(f"axis must lie in 0..{params.d - 1}, got {axis}")
    if num < 2:
        raise ValueError(f"need at least 2 samples, got {num}")
    rows = []
    base = np.array(params.y, dtype=float)
    for t in np.linspace(0.0, params.L, num, endpoint=False):
        x = base.copy()
        x[axis] += t
        val = psi_shifted(params, x)
        rows.append((float(t), val.real, val.imag, abs(val) ** 2))
    return rows


def profile_to_csv(fp, params: CycleWaveParams, axis: int = 0, num: int = 257) -> None:
    fp.write(f"# n = {params.n}\n")
    fp.write(f"# L = {params.L!r}\n")
    fp.write(f"# lam = {params.lam!r}\n")
    fp.write(f"# y = {','.join(repr(c) for c in params.y)}\n")
    fp.write(f"# xbar = {','.join(repr(c) for c in params.xbar)}\n")
    fp.write(f"# axis = {axis}\n")
    fp.write("x,re_psi,im_psi,abs2\n")
    for t, re, im, a2 in wave_profile(params, axis, num):
        fp.write(f"{t!r},{re!r},{im!r},{a2!r}\n")
