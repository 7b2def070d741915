"""Pair potentials and the rigorous interaction bounds built from them.

A valid potential here is radial, integrable, nonnegative, and of
positive type (nonnegative Fourier transform); the Fourier convention is
u_hat(k) = int u(x) e^{-2 pi i k.x} dx, under which Gaussian kernels
transform without loose 2*pi factors.  The bounds exposed below sandwich
the interacting free energy between its ideal value shifted by mean-field
terms, and sandwich the decoupled partition function between rescalings
of the ideal one.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, NamedTuple

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from .cycle_engine import SystemParams, WeightSequence, build_partition_table
from .special_fn import thermal_wavelength, zeta
from .thermo import UnsupportedDimensionError, ideal_free_energy_density

__all__ = [
    "UnsupportedPotentialError",
    "QuadratureError",
    "PairPotential",
    "BoundPair",
    "MeanInteractionBound",
    "ConditionReport",
    "gaussian_potential",
    "autocorrelation_potential",
    "tabulated_potential",
    "load_potential",
    "periodize",
    "alpha_nk",
    "mean_interaction_upper",
    "phi_nn_bounds",
    "dcp_bound_weights",
    "free_energy_bounds",
    "dcp_partition_sandwich",
    "validate_conditions",
]

_QUAD_REL_TOL = 1e-10
_PERIODIZE_REL_TOL = 1e-10
_PERIODIZE_MAX_SHELL = 10_000


class UnsupportedPotentialError(ValueError):
    """The operation needs a nonnegative positive-type potential."""


class QuadratureError(RuntimeError):
    """Adaptive quadrature could not reach the requested tolerance."""


def _quad(fn, a: float, b: float, what: str, **kw) -> float:
    # the residual check below is the acceptance policy; scipy's advisory
    # roundoff warning duplicates it
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        val, err = quad(fn, a, b, epsabs=1e-15, epsrel=_QUAD_REL_TOL, limit=400, **kw)
    if err > max(1e-10 * abs(val), 1e-12):
        raise QuadratureError(f"{what}: residual estimate {err:.3e} for value {val:.6e}")
    return val


def _radialize(fn: Callable[[float], float]):
    """Lift a scalar radial profile to accept scalars or arrays of radii."""

    def wrapped(r):
        arr = np.atleast_1d(np.asarray(r, dtype=float))
        out = np.array([fn(abs(float(x))) for x in arr.ravel()]).reshape(arr.shape)
        return float(out[0]) if np.isscalar(r) or np.asarray(r).ndim == 0 else out

    return wrapped


@dataclass(frozen=True)
class PairPotential:
    """Radial pair potential with its transform and summary scalars.

    ``u`` and ``uhat`` accept a radius (or array of radii) in real and
    Fourier space.  ``eta`` is the decay exponent of condition (iii),
    |u(x)| = O(|x|^{-d-eta}); infinity for compactly supported or
    Gaussian-tailed potentials.
    """

    d: int
    u: Callable
    uhat: Callable
    u0: float
    uhat0: float
    norm1: float
    eta: float
    positive: bool
    positive_type: bool
    kind: str = "custom"

    def __post_init__(self):
        if self.d < 1:
            raise ValueError(f"dimension must be >= 1, got {self.d}")
        if self.uhat0 > self.norm1 * (1.0 + 1e-12):
            raise ValueError(
                f"uhat(0) = {self.uhat0} exceeds the L1 norm {self.norm1}; "
                "the transform convention is inconsistent"
            )

    def require_positive_pair(self, what: str) -> None:
        if not (self.positive and self.positive_type):
            raise UnsupportedPotentialError(
                f"{what} needs a nonnegative potential of positive type; "
                f"flags are positive={self.positive}, positive_type={self.positive_type}"
            )


@dataclass(frozen=True)
class BoundPair:
    """A two-sided bound with a context tag."""

    lower: float
    upper: float
    context: str = ""

    def __post_init__(self):
        if not self.lower <= self.upper:
            raise ValueError(
                f"lower bound {self.lower} exceeds upper bound {self.upper}"
                + (f" ({self.context})" if self.context else "")
            )

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def contains(self, value: float, slack: float = 0.0) -> bool:
        return self.lower - slack <= value <= self.upper + slack


def gaussian_potential(g: float, sigma: float, d: int = 3) -> PairPotential:
    """u(x) = g e^{-pi x^2/sigma^2}, whose transform is again a Gaussian:
    uhat(k) = g sigma^d e^{-pi sigma^2 k^2}."""
    if not g > 0.0:
        raise ValueError(f"coupling g must be positive, got {g}")
    if not sigma > 0.0:
        raise ValueError(f"range sigma must be positive, got {sigma}")

    def u(r):
        r = np.asarray(r, dtype=float)
        return g * np.exp(-math.pi * r**2 / sigma**2)

    def uhat(k):
        k = np.asarray(k, dtype=float)
        return g * sigma**d * np.exp(-math.pi * sigma**2 * k**2)

    return PairPotential(
        d=d,
        u=u,
        uhat=uhat,
        u0=g,
        uhat0=g * sigma**d,
        norm1=g * sigma**d,
        eta=math.inf,
        positive=True,
        positive_type=True,
        kind="gaussian",
    )


def _volume_integral(v: Callable, R: float, d: int, points=None) -> float:
    # int v(|x|) d^d x for radial v supported in |x| <= R
    if d == 1:
        return 2.0 * _quad(v, 0.0, R, "radial L1 integral", points=points)
    return 4.0 * math.pi * _quad(lambda s: s * s * v(s), 0.0, R, "radial L1 integral", points=points)


def _radial_transform(v: Callable, R: float, d: int, k: float, points=None) -> float:
    # int v(|x|) e^{-2 pi i k.x} d^d x, real by symmetry
    if k == 0.0:
        return _volume_integral(v, R, d, points=points)
    w = 2.0 * math.pi * k
    if d == 1:
        return 2.0 * _quad(lambda s: v(s) * math.cos(w * s), 0.0, R, "cosine transform", points=points)
    return (2.0 / k) * _quad(
        lambda s: s * v(s) * math.sin(w * s), 0.0, R, "sine transform", points=points
    )


def _clip_points(candidates, lo: float, hi: float):
    pts = sorted({p for p in candidates if lo < p < hi})
    return pts or None


def autocorrelation_potential(
    v: Callable, v_support: float, d: int = 3, breakpoints=None
) -> PairPotential:
    """u = v * v for a nonnegative radial profile v vanishing beyond
    ``v_support``: u(x) = int v(|x+y|) v(|y|) dy, so uhat = |vhat|^2 >= 0
    by construction.  Supported in d = 1 and d = 3 (the radial reduction
    of the overlap integral is dimension-specific).  ``breakpoints`` lists
    radii where v is not smooth, guiding the quadrature."""
    if d not in (1, 3):
        raise UnsupportedDimensionError(
            f"autocorrelation construction implemented for d in (1, 3), got {d}"
        )
    if not v_support > 0.0:
        raise ValueError(f"support radius must be positive, got {v_support}")
    R = float(v_support)
    bp = [] if breakpoints is None else sorted(float(b) for b in breakpoints)
    probe = np.linspace(0.0, R, 257)
    if min(v(float(s)) for s in probe) < 0.0:
        raise ValueError("profile v must be nonnegative on its support")

    if d == 1:

        def u_scalar(r: float) -> float:
            # both factors vanish outside y in [-R, R - r]; kinks where
            # either |y| or |r + y| crosses 0 or a breakpoint of v
            if r >= 2.0 * R:
                return 0.0
            cands = [-r, 0.0]
            for b in bp:
                cands += [b, -b, b - r, -b - r]
            return _quad(
                lambda y: v(abs(y)) * v(abs(r + y)), -R, R - r, "overlap integral",
                points=_clip_points(cands, -R, R - r),
            )

    else:

        def u_scalar(r: float) -> float:
            if r >= 2.0 * R:
                return 0.0
            if r == 0.0:
                return 4.0 * math.pi * _quad(
                    lambda s: s * s * v(s) ** 2, 0.0, R, "overlap at 0", points=_clip_points(bp, 0.0, R)
                )

            def outer(s: float) -> float:
                lo, hi = abs(r - s), min(r + s, R)
                if lo >= hi:
                    return 0.0
                inner = _quad(lambda t: t * v(t), lo, hi, "overlap inner", points=_clip_points(bp, lo, hi))
                return s * v(s) * inner

            # outer kinks: v-breakpoints, plus s where an inner bound crosses one
            cands = list(bp)
            for b in bp + [R]:
                cands += [abs(r - b), r + b, b - r]
            return (2.0 * math.pi / r) * _quad(
                outer, 0.0, R, "overlap outer", points=_clip_points(cands, 0.0, R)
            )

    vbp = _clip_points(bp, 0.0, R)
    vhat0 = _volume_integral(v, R, d, points=vbp)
    u = _radialize(u_scalar)
    uhat = _radialize(lambda k: _radial_transform(v, R, d, k, points=vbp) ** 2)
    return PairPotential(
        d=d,
        u=u,
        uhat=uhat,
        u0=u_scalar(0.0),
        uhat0=vhat0**2,
        norm1=vhat0**2,  # int u = (int v)^2, and u >= 0
        eta=math.inf,  # support of u is compact (radius 2R)
        positive=True,
        positive_type=True,
        kind="autocorrelation",
    )


def tabulated_potential(r: np.ndarray, values: np.ndarray, d: int = 3, eta: float = math.inf) -> PairPotential:
    """Potential from a sampled radial profile, linearly interpolated and
    treated as zero beyond the last sample.  The transform is computed by
    quadrature; the positivity flags reflect the sampled data."""
    r = np.asarray(r, dtype=float)
    values = np.asarray(values, dtype=float)
    if r.ndim != 1 or r.shape != values.shape or r.size < 2:
        raise ValueError("profile needs matching 1-d arrays of at least 2 samples")
    if r[0] != 0.0 or np.any(np.diff(r) <= 0.0):
        raise ValueError("radii must start at 0 and increase strictly")
    if d not in (1, 3):
        raise UnsupportedDimensionError(f"tabulated profiles implemented for d in (1, 3), got {d}")
    R = float(r[-1])

    def u_scalar(s: float) -> float:
        return float(np.interp(s, r, values, right=0.0))

    breakpoints = list(r[1:-1])
    u = _radialize(u_scalar)
    uhat = _radialize(lambda k: _radial_transform(u_scalar, R, d, k, points=breakpoints))
    norm1_signed = _volume_integral(u_scalar, R, d, points=breakpoints)
    norm1 = _volume_integral(lambda s: abs(u_scalar(s)), R, d, points=breakpoints)
    positive = bool(np.all(values >= 0.0))
    # uhat varies on the scale 1/R; probe several of those periods
    kgrid = np.linspace(0.0, 8.0 / R, 48)
    uhat_samples = uhat(kgrid)
    positive_type = bool(np.all(uhat_samples >= -1e-10 * abs(norm1_signed)))
    return PairPotential(
        d=d,
        u=u,
        uhat=uhat,
        u0=float(values[0]),
        uhat0=norm1_signed,
        norm1=norm1,
        eta=eta,
        positive=positive,
        positive_type=positive_type,
        kind="tabulated",
    )


def periodize(pot: PairPotential, L: float, x) -> float:
    """u_L(x) = sum_z u(x + L z) over the integer lattice, truncated when
    the shell-decay estimate certifies a relative tail below 1e-10."""
    if not L > 0.0:
        raise ValueError(f"box side must be positive, got {L}")
    if not pot.eta > 0.0 or math.isnan(pot.eta):
        raise ValueError("periodization needs a known positive decay exponent eta")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if x.shape != (pot.d,):
        raise ValueError(f"point must have {pot.d} components, got shape {x.shape}")
    total = float(np.asarray(pot.u(float(np.linalg.norm(x)))))
    for Z in range(1, _PERIODIZE_MAX_SHELL + 1):
        ax = [np.arange(-Z, Z + 1)] * pot.d
        grid = np.stack(np.meshgrid(*ax, indexing="ij"), axis=-1).reshape(-1, pot.d)
        shell_mask = np.abs(grid).max(axis=1) == Z
        shell_pts = x[None, :] + L * grid[shell_mask]
        shell = float(np.asarray(pot.u(np.linalg.norm(shell_pts, axis=1))).sum())
        total += shell
        # remaining shells scale like (j/Z)^{-1-eta} relative to this one
        tail_factor = 1.0 if math.isinf(pot.eta) else max(1.0, Z / pot.eta)
        if abs(shell) * tail_factor <= _PERIODIZE_REL_TOL * abs(total):
            return total
    raise QuadratureError(f"periodization did not converge within {_PERIODIZE_MAX_SHELL} shells")


def alpha_nk(n: int, k: int, lam: float) -> float:
    """alpha_{n,k} = (1/k + 1/(n-k))/lambda^2, the inverse-area scale of
    the two arcs a k-split cuts an n-cycle into."""
    if not 1 <= k <= n - 1:
        raise ValueError(f"split index k must lie in 1..{n - 1}, got {k}")
    if not lam > 0.0:
        raise ValueError(f"thermal wavelength must be positive, got {lam}")
    return (1.0 / k + 1.0 / (n - k)) / lam**2


class MeanInteractionBound(NamedTuple):
    asymptotic: float  # (|u|_1/2) n [(n-1)/L^d + 2^{d/2} zeta(d/2)/lambda^d]
    exact: float  # (|u|_1/2) n sum_k alpha^{d/2} (1 + 1/(L sqrt(alpha)))^d


def mean_interaction_upper(n: int, L: float, beta: float, pot: PairPotential) -> MeanInteractionBound:
    """Upper bounds on the mean interaction energy of one n-cycle.

    The asymptotic form replaces the exact k-sum by its zeta-function
    bound; the exact finite-L sum is returned alongside (its binomial
    l = 0 term reproduces the (n-1)/L^d piece).  Both vanish for n = 1:
    a single 1-cycle has no split to interact across.
    """
    if pot.d < 3:
        raise UnsupportedDimensionError(f"the zeta-function bound needs d >= 3, got d = {pot.d}")
    if n < 1:
        raise ValueError(f"cycle length must be >= 1, got {n}")
    if n == 1:
        return MeanInteractionBound(0.0, 0.0)
    d = pot.d
    lam = thermal_wavelength(beta)
    half_norm = 0.5 * pot.norm1
    asymptotic = half_norm * n * ((n - 1) / L**d + 2.0 ** (d / 2.0) * zeta(d / 2.0) / lam**d)
    k = np.arange(1, n)
    alpha = (1.0 / k + 1.0 / (n - k)) / lam**2
    exact = half_norm * n * float(np.sum(alpha ** (d / 2.0) * (1.0 + 1.0 / (L * np.sqrt(alpha))) ** d))
    return MeanInteractionBound(float(asymptotic), exact)


def _log_phi_edges(L: float, beta: float, pot: PairPotential) -> tuple[float, float]:
    # per-particle log edges: -A and +B in e^{-A n} <= Phi_n/q_n <= e^{+B n}
    pot.require_positive_pair("single-cycle weight bounds")
    if pot.d < 3:
        raise UnsupportedDimensionError(f"the zeta-function bound needs d >= 3, got d = {pot.d}")
    d = pot.d
    lam = thermal_wavelength(beta)
    log_lower = -(2.0 ** (d / 2.0 - 1.0)) * zeta(d / 2.0) * beta * pot.norm1 / lam**d
    log_upper = 0.5 * beta * periodize(pot, L, np.zeros(d))
    return log_lower, log_upper


def phi_nn_bounds(n: int, L: float, beta: float, pot: PairPotential) -> BoundPair:
    """Bounds on the interacting single-cycle weight as a multiplier of the
    ideal q_n: e^{-A n} <= Phi_n/q_n <= e^{+B n} with
    A = 2^{d/2-1} zeta(d/2) beta |u|_1 / lambda^d and B = beta u_L(0)/2."""
    if n < 1:
        raise ValueError(f"cycle length must be >= 1, got {n}")
    log_lower, log_upper = _log_phi_edges(L, beta, pot)
    return BoundPair(math.exp(log_lower * n), math.exp(log_upper * n), context="cycle weight multiplier")


def dcp_bound_weights(
    params: SystemParams, pot: PairPotential
) -> tuple[WeightSequence, WeightSequence]:
    """The dcp-lower and dcp-upper weight sequences q_n c^n, with log c the
    per-particle edge of phi_nn_bounds."""
    log_lower, log_upper = _log_phi_edges(params.L, params.beta, pot)
    ideal = WeightSequence.ideal(params)
    n = np.arange(1, params.N + 1, dtype=float)
    lower = ideal.rescaled(n * log_lower, tag="dcp-lower", rate=log_lower)
    upper = ideal.rescaled(n * log_upper, tag="dcp-upper", rate=log_upper)
    return lower, upper


class FreeEnergyBounds(NamedTuple):
    f: BoundPair  # on the interacting free-energy density
    f_tilde: BoundPair  # on f - rho^2 |u|_1 / 2


def free_energy_bounds(
    rho: float, beta: float, pot: PairPotential, c_u: float | None = None
) -> FreeEnergyBounds:
    """Free-energy sandwich around the ideal value:

        C[u] rho^2 - (u(0)/2) rho + f0  <=  f  <=
        (|u|_1/2) rho^2 + 2^{d/2-1} zeta(d/2) |u|_1 rho / lambda^d + f0,

    with the superstability constant C[u] = uhat(0)/2 for positive-type
    potentials, overridable through ``c_u`` for potentials outside that
    class (it must then be a valid constant for the caller's potential).
    """
    if pot.d < 3:
        raise UnsupportedDimensionError(f"free-energy bounds need d >= 3, got d = {pot.d}")
    if not rho > 0.0:
        raise ValueError(f"density must be positive, got {rho}")
    if c_u is None:
        pot.require_positive_pair("the free-energy sandwich with C[u] = uhat(0)/2")
        c_u = 0.5 * pot.uhat0
    d = pot.d
    lam = thermal_wavelength(beta)
    f0 = ideal_free_energy_density(rho, beta, d)
    lower = c_u * rho**2 - 0.5 * pot.u0 * rho + f0
    upper = 0.5 * pot.norm1 * rho**2 + 2.0 ** (d / 2.0 - 1.0) * zeta(d / 2.0) * pot.norm1 * rho / lam**d + f0
    f = BoundPair(lower, upper, context="free energy")
    shift = 0.5 * pot.norm1 * rho**2
    f_tilde = BoundPair(lower - shift, upper - shift, context="mean-field-subtracted free energy")
    return FreeEnergyBounds(f=f, f_tilde=f_tilde)


def dcp_partition_sandwich(
    N: int, L: float, beta: float, pot: PairPotential, verify: bool = True
) -> BoundPair:
    """Bounds on log Q~dcp - log Q0 for the decoupled model:
    -2^{d/2-1} zeta(d/2) beta uhat(0) N / lambda^d <= . <= beta u_L(0) N / 2.

    With ``verify`` the recursion is run with the dcp-lower and dcp-upper
    weights and checked to land inside the sandwich; a per-cycle factor
    c^n telescopes to a global c^N, so each run must reproduce its edge
    of the sandwich to rounding (O(N^2) cost, skip for very large N).
    """
    pot.require_positive_pair("decoupled partition sandwich")
    if pot.d < 3:
        raise UnsupportedDimensionError(f"the zeta-function bound needs d >= 3, got d = {pot.d}")
    d = pot.d
    lam = thermal_wavelength(beta)
    coeff = 2.0 ** (d / 2.0 - 1.0) * zeta(d / 2.0) * beta / lam**d
    lower = -coeff * pot.uhat0 * N
    upper = 0.5 * beta * periodize(pot, L, np.zeros(d)) * N
    bounds = BoundPair(lower, upper, context="log partition shift")
    if verify:
        params = SystemParams(d=d, L=L, N=N, beta=beta)
        base = build_partition_table(params, WeightSequence.ideal(params)).logQ[N]
        w_lo, w_hi = dcp_bound_weights(params, pot)
        # uhat(0) = |u|_1 for this class; allow for their quadratures differing
        slack = 1e-12 * max(1.0, abs(lower), abs(upper)) + coeff * abs(pot.norm1 - pot.uhat0) * N
        for w, edge, name in ((w_lo, N * w_lo.rate, "lower"), (w_hi, N * w_hi.rate, "upper")):
            shift = build_partition_table(params, w).logQ[N] - base
            if abs(shift - edge) > slack:
                raise RuntimeError(
                    f"{name} dcp recursion drifted from its telescoped edge: "
                    f"{shift} vs {edge}"
                )
            if not bounds.contains(shift, slack=slack):
                raise RuntimeError(f"{name} dcp recursion left the sandwich: {shift}")
    return bounds


@dataclass(frozen=True)
class ConditionReport:
    """Sampled check of the three validity conditions."""

    nonnegative_u: bool  # (i): u >= 0
    positive_type: bool  # (ii): uhat >= 0 and integrable
    periodizable: bool  # (iii): decay exponent eta > 0
    min_u: float
    min_uhat: float
    declared_tail_exponent: float  # -(d + eta)
    fitted_tail_exponent: float  # slope of log|u| vs log r, inf if u vanishes
    uhat_integral: float

    @property
    def all_pass(self) -> bool:
        return self.nonnegative_u and self.positive_type and self.periodizable


def validate_conditions(
    pot: PairPotential, r_max: float = 10.0, k_max: float = 10.0, num: int = 128
) -> ConditionReport:
    """Sample u and uhat on radial grids and report the three conditions.

    Report-only: a failing condition does not raise here, it shows up as
    a False flag (construction-time flags are cross-checked against the
    sampled minima).
    """
    r = np.linspace(0.0, r_max, num)
    k = np.linspace(0.0, k_max, num)
    u_samples = np.asarray(pot.u(r), dtype=float)
    uhat_samples = np.asarray(pot.uhat(k), dtype=float)
    min_u = float(u_samples.min())
    min_uhat = float(uhat_samples.min())
    # tail exponent from the outer half-decade of nonvanishing samples
    good = (r >= 0.5 * r_max) & (np.abs(u_samples) > 1e-280)
    if good.sum() < 2:
        fitted = math.inf
    else:
        fitted = float(np.polyfit(np.log(r[good]), np.log(np.abs(u_samples[good])), 1)[0])
    if pot.d == 1:
        integrand = np.abs(uhat_samples)
        surface = 2.0
    else:
        surface = 2.0 * math.pi ** (pot.d / 2.0) / math.gamma(pot.d / 2.0)
        integrand = np.abs(uhat_samples) * k ** (pot.d - 1)
    uhat_integral = surface * float(np.trapezoid(integrand, k))
    return ConditionReport(
        nonnegative_u=min_u >= 0.0,
        positive_type=min_uhat >= -1e-12 * max(abs(pot.uhat0), 1.0),
        periodizable=pot.eta > 0.0,
        min_u=min_u,
        min_uhat=min_uhat,
        declared_tail_exponent=-(pot.d + pot.eta),
        fitted_tail_exponent=fitted,
        uhat_integral=uhat_integral,
    )


def _parse_keyvalue(text: str) -> dict:
    out = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"expected 'key = value', got {raw!r}")
        key, val = line.split("=", 1)
        out[key.strip()] = val.strip()
    return out


def _read_profile(path: Path) -> tuple[np.ndarray, np.ndarray]:
    rows = []
    for raw in path.read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        cols = [c.strip() for c in line.split(",")]
        if len(cols) != 2:
            raise ValueError(f"{path}: expected two columns (r, value), got {raw!r}")
        try:
            rows.append((float(cols[0]), float(cols[1])))
        except ValueError:
            if rows:
                raise ValueError(f"{path}: non-numeric row {raw!r} after data began")
            continue  # header line
    if len(rows) < 2:
        raise ValueError(f"{path}: profile needs at least 2 numeric rows")
    data = np.array(rows)
    return data[:, 0], data[:, 1]


def load_potential(path) -> PairPotential:
    """Potential definition file: 'key = value' lines with '#' comments.

    kind = gaussian requires g and sigma; kind = tabulated and
    kind = autocorrelation require profile = <csv of (r, value)>, resolved
    relative to the definition file; eta is optional (default: compact
    support, infinite exponent).  d defaults to 3.
    """
    path = Path(path)
    spec = _parse_keyvalue(path.read_text())
    kind = spec.get("kind")
    d = int(spec.get("d", 3))
    if kind == "gaussian":
        return gaussian_potential(float(spec["g"]), float(spec["sigma"]), d)
    if kind in ("tabulated", "autocorrelation"):
        if "profile" not in spec:
            raise ValueError(f"{path}: kind = {kind} needs profile = <csv path>")
        r, vals = _read_profile(path.parent / spec["profile"])
        if kind == "tabulated":
            eta = float(spec["eta"]) if "eta" in spec else math.inf
            return tabulated_potential(r, vals, d, eta)
        def profile(s: float) -> float:
            return float(np.interp(s, r, vals, right=0.0))

        return autocorrelation_potential(profile, float(r[-1]), d, breakpoints=r[1:-1])
    raise ValueError(f"{path}: kind must be gaussian, tabulated, or autocorrelation, got {kind!r}")
