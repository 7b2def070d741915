"""Scalar special functions: theta sums, polylogarithm, thermal wavelength.

Everything downstream is built from the one-dimensional lattice Gaussian sum

    Theta(a) = sum_{z in Z} exp(-pi a z^2),  a > 0,

its shifted variant sum_z exp(-pi a (z+s)^2), and the Bose function
(polylogarithm) g_s(z) = sum_{n>=1} z^n / n^s.  Units are reduced,
hbar = m = 1, so the thermal wavelength is lambda_beta = sqrt(2*pi*beta)
and the single-particle torus weight q_n = Theta(n lambda^2/L^2)^d is a
plain product over dimensions.  All dimensionless combinations
(rho*lambda^d, n*lambda^2/L^2) are independent of that convention.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np
from scipy.special import exp1 as _exp1, gamma as _gamma, gammaincc as _gammaincc
from scipy.special import zeta as _scipy_zeta

__all__ = [
    "thermal_wavelength",
    "theta1d",
    "theta1d_shifted",
    "reduce_shift",
    "polylog",
    "zeta",
    "q_n",
    "log_q_weights",
    "q_asymptotic_regime",
    "AsymptoticRegime",
]

# exp(-40) ~ 4e-18: truncating the theta tail at exponent 40 keeps the
# relative error below double-precision resolution.
_TAIL_EXPONENT = 40.0

# Polylog evaluation: direct series up to this fugacity, head sum plus
# Euler-Maclaurin tail beyond (the inversion code needs smooth values up
# to and including z = 1).
_SERIES_Z_MAX = 0.99
_EM_HEAD_TERMS = 10_000


def thermal_wavelength(beta: float) -> float:
    """Thermal de Broglie wavelength sqrt(2*pi*beta) in units hbar = m = 1."""
    beta = float(beta)
    if not beta > 0.0 or math.isinf(beta):
        raise ValueError(f"beta must be positive and finite, got {beta}")
    return math.sqrt(2.0 * math.pi * beta)


def _theta_zmax(a: float) -> int:
    # a is the post-duality exponent scale (>= 1 when called after the switch)
    return math.ceil(math.sqrt(_TAIL_EXPONENT / (math.pi * a))) + 1


def theta1d(a: float) -> float:
    """Theta(a) = sum_{z in Z} exp(-pi a z^2).

    Poisson summation gives Theta(a) = a^{-1/2} Theta(1/a); whichever of
    the two series has exponent scale >= 1 is summed directly, so the
    truncation never needs more than a handful of terms and the relative
    error stays below ~1e-15.
    """
    a = float(a)
    if not a > 0.0 or math.isinf(a):
        raise ValueError(f"theta exponent scale must be positive and finite, got {a}")
    if a < 1.0:
        return theta1d(1.0 / a) / math.sqrt(a)
    z = np.arange(1, _theta_zmax(a) + 1)
    return 1.0 + 2.0 * float(np.exp(-math.pi * a * z * z).sum())


def theta1d_shifted(a: float, s: float) -> float:
    """sum_{z in Z} exp(-pi a (z+s)^2) for a shift s in [-1/2, 1/2].

    The dual (Poisson) form is a^{-1/2} sum_z exp(-pi z^2/a) cos(2 pi s z);
    the faster-converging representation is chosen automatically.  Shifts
    outside [-1/2, 1/2] should be reduced first, see ``reduce_shift``.
    """
    a = float(a)
    s = float(s)
    if not a > 0.0 or math.isinf(a):
        raise ValueError(f"theta exponent scale must be positive and finite, got {a}")
    if abs(s) > 0.5 + 1e-12:
        raise ValueError(f"shift must lie in [-1/2, 1/2], got {s}")
    if a >= 1.0:
        zmax = _theta_zmax(a) + 1  # one extra image for the off-center peak
        z = np.arange(-zmax, zmax + 1)
        return float(np.exp(-math.pi * a * (z + s) ** 2).sum())
    zmax = _theta_zmax(1.0 / a) + 1
    z = np.arange(1, zmax + 1)
    tail = np.exp(-math.pi * z * z / a) * np.cos(2.0 * math.pi * s * z)
    return (1.0 + 2.0 * float(tail.sum())) / math.sqrt(a)


def reduce_shift(shift) -> np.ndarray:
    """Componentwise fractional-part reduction of a shift vector to [-1/2, 1/2]."""
    s = np.atleast_1d(np.asarray(shift, dtype=float))
    return s - np.round(s)


def zeta(s: float) -> float:
    """Riemann zeta for s > 1 (the saturation value g_s(1))."""
    s = float(s)
    if s <= 1.0:
        raise ValueError(f"zeta(s) with s <= 1 is outside the convergent range, got s={s}")
    return float(_scipy_zeta(s))


def _power_exp_integral(s: float, t: float, a: float) -> float:
    # int_a^inf x^{-s} e^{-t x} dx = t^{s-1} Gamma(1-s, t a); the negative
    # first parameter is raised into gammaincc's domain by the recurrence
    # Gamma(p, x) = [Gamma(p+1, x) - x^p e^{-x}] / p
    if t == 0.0:
        return a ** (1.0 - s) / (s - 1.0)
    x = t * a
    p = 1.0 - s
    k = math.ceil(-p) + 1
    g = float(_gammaincc(p + k, x)) * float(_gamma(p + k))
    for j in range(k - 1, -1, -1):
        if p + j == 0.0:
            g = float(_exp1(x))  # Gamma(0, x), where the recurrence divides by 0
        else:
            g = (g - x ** (p + j) * math.exp(-x)) / (p + j)
    return t ** (s - 1.0) * g


def _em_tail(s: float, t: float, a: float) -> float:
    # Euler-Maclaurin value of sum_{n >= a} n^{-s} e^{-t n}:
    # integral + f(a)/2 - f'(a)/12 + f'''(a)/720, with f = x^{-s} e^{-t x}.
    if t * a > 45.0:
        return 0.0  # tail below e^{-45} of the head scale
    integral = _power_exp_integral(s, t, a)
    fa = a ** (-s) * math.exp(-t * a)
    g1 = -(s / a + t)  # (log f)'
    g2 = s / a**2  # (log f)''
    g3 = -2.0 * s / a**3  # (log f)'''
    fppp = (g3 + 3.0 * g1 * g2 + g1**3) * fa
    return integral + 0.5 * fa - g1 * fa / 12.0 + fppp / 720.0


def polylog(s: float, z: float) -> float:
    """Bose function g_s(z) = sum_{n>=1} z^n / n^s for 0 <= z <= 1.

    Parameters
    ----------
    s : order; must exceed 1 when z = 1 (g_s(1) = zeta(s)).
    z : fugacity in [0, 1].

    The direct series is summed for z <= 0.99 with terms cut at 1e-17
    relative; closer to z = 1 a fixed 10^4-term head is completed by an
    Euler-Maclaurin tail, keeping the error at the 1e-13 level up to and
    including z = 1.
    """
    s = float(s)
    z = float(z)
    if z < 0.0 or z > 1.0:
        raise ValueError(f"polylog fugacity must lie in [0, 1], got {z}")
    if z == 0.0:
        return 0.0
    if z == 1.0 and s <= 1.0:
        raise ValueError(f"polylog diverges at z=1 for s <= 1, got s={s}")
    if z <= _SERIES_Z_MAX:
        # tail bound z^{n+1}/((1-z) n^s): cut when below 1e-17 of the sum scale
        nmax = max(40, math.ceil(math.log(1e-17 * z * (1.0 - z)) / math.log(z)))
        n = np.arange(1, nmax + 1)
        return float(np.sum(z**n / n**s))
    t = -math.log(z)  # 0 <= t < 0.01005
    n = np.arange(1, _EM_HEAD_TERMS + 1)
    head = float(np.sum(np.exp(-t * n) / n**s))
    return head + _em_tail(s, t, float(_EM_HEAD_TERMS + 1))


def q_n(params, n: int, shift=None) -> float:
    """Single-particle torus weight at inverse temperature n*beta.

    q_n = Theta(n lambda^2/L^2)^d at zero shift, or the product over
    dimensions of the shifted theta sums after fractional-part reduction
    of the shift vector.  Exceeds 1 at zero shift for every n.
    """
    if n < 1:
        raise ValueError(f"cycle length must be >= 1, got {n}")
    a = n * params.lam**2 / params.L**2
    if shift is None:
        return theta1d(a) ** params.d
    s = reduce_shift(shift)
    if s.shape != (params.d,):
        raise ValueError(f"shift must have {params.d} components, got shape {s.shape}")
    return float(np.prod([theta1d_shifted(a, si) for si in s]))


def log_q_weights(params, n=None) -> np.ndarray:
    """log q_n for n = 1..N (or a given integer array), vectorized.

    Uses log1p on the directly-summed branch so the macroscopic regime
    q_n -> 1+ keeps full absolute accuracy in the logarithm.
    """
    if n is None:
        n = np.arange(1, params.N + 1)
    n = np.asarray(n)
    a = n * params.lam**2 / params.L**2
    out = np.empty(a.shape, dtype=float)
    big = a >= 1.0
    if big.any():
        ab = a[big]
        zmax = _theta_zmax(float(ab.min()))
        z = np.arange(1, zmax + 1)
        out[big] = np.log1p(2.0 * np.exp(-math.pi * ab[:, None] * z * z).sum(axis=1))
    if (~big).any():
        ab = 1.0 / a[~big]  # dual scale, >= 1
        zmax = _theta_zmax(float(ab.min()))
        z = np.arange(1, zmax + 1)
        dual = np.log1p(2.0 * np.exp(-math.pi * ab[:, None] * z * z).sum(axis=1))
        out[~big] = dual + 0.5 * np.log(ab)
    return params.d * out


class AsymptoticRegime(NamedTuple):
    tag: str  # "bulk" | "macroscopic" | "critical"
    value: float


# Desk-scale gates for the three asymptotic branches of q_n; the limits
# themselves are n*lambda^2/L^2 -> 0 and -> infinity.
_BULK_MAX = 0.1
_MACRO_MIN = 10.0


def q_asymptotic_regime(params, n: int, shift=None) -> AsymptoticRegime:
    """Classify q_n by its exponent scale a = n lambda^2/L^2 and return the
    limiting value: bulk (a <= 0.1) -> L^d/(n^{d/2} lambda^d), macroscopic
    (a >= 10) -> exp(-pi a |s|^2) with s the reduced shift, critical
    otherwise -> the exact theta product."""
    if n < 1:
        raise ValueError(f"cycle length must be >= 1, got {n}")
    a = n * params.lam**2 / params.L**2
    s = np.zeros(params.d) if shift is None else reduce_shift(shift)
    if a <= _BULK_MAX:
        return AsymptoticRegime("bulk", (params.L / params.lam) ** params.d / n ** (params.d / 2.0))
    if a >= _MACRO_MIN:
        return AsymptoticRegime("macroscopic", math.exp(-math.pi * a * float(s @ s)))
    return AsymptoticRegime("critical", q_n(params, n, shift))
