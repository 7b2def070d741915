"""Canonical-ensemble cycle statistics for decoupled cycle weights.

The canonical partition function with cycle weights w_n obeys

    Q_M = (1/M) sum_{n=1}^{M} w_n Q_{M-n},   Q_0 = 1,

and the density of particles in n-cycles is rho_n = rho w_n Q_{N-n} /
(N Q_N).  Everything here works in log space because the ratios
Q_{N-n}/Q_N are the only stable objects at large N.  The recursion is
O(N^2); the default cap is N <= 10^5 (about a minute of dense numpy
work at the cap).
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple

import numpy as np

from .special_fn import log_q_weights, thermal_wavelength

__all__ = [
    "N_MAX",
    "WEIGHT_TAGS",
    "SystemParams",
    "WeightSequence",
    "LogPartitionTable",
    "CycleSpectrum",
    "CycleType",
    "MacroAggregate",
    "build_partition_table",
    "cycle_density_spectrum",
    "sample_cycle_type",
    "brute_force_partition_fn",
    "verify_auxiliary_identity",
    "aggregate_macroscopic",
]

N_MAX = 100_000  # O(N^2) recursion cost cap

WEIGHT_TAGS = ("ideal", "dcp-lower", "dcp-upper", "custom")

_BRUTE_FORCE_N_MAX = 10


@dataclass(frozen=True)
class SystemParams:
    """Torus system: d dimensions, side L, N particles, inverse temperature beta."""

    d: int
    L: float
    N: int
    beta: float

    def __post_init__(self):
        if self.d < 1:
            raise ValueError(f"dimension must be >= 1, got {self.d}")
        if not self.L > 0.0:
            raise ValueError(f"box side must be positive, got {self.L}")
        if self.N < 1:
            raise ValueError(f"particle count must be >= 1, got {self.N}")
        if not self.beta > 0.0:
            raise ValueError(f"inverse temperature must be positive, got {self.beta}")

    @property
    def lam(self) -> float:
        return thermal_wavelength(self.beta)

    @property
    def rho(self) -> float:
        return self.N / self.L**self.d

    @property
    def rho_lam_d(self) -> float:
        """Degeneracy parameter rho * lambda^d."""
        return self.rho * self.lam**self.d

    @classmethod
    def from_density(cls, d: int, N: int, rho: float, beta: float) -> "SystemParams":
        if not rho > 0.0:
            raise ValueError(f"density must be positive, got {rho}")
        return cls(d=d, L=(N / rho) ** (1.0 / d), N=N, beta=beta)

    @classmethod
    def from_degeneracy(cls, d: int, N: int, rho_lam_d: float, beta: float) -> "SystemParams":
        """Fix rho * lambda^d instead of rho."""
        lam = thermal_wavelength(beta)
        return cls.from_density(d, N, rho_lam_d / lam**d, beta)


@dataclass(frozen=True)
class WeightSequence:
    """Positive cycle weights w_1..w_n stored as logarithms.

    ``rate`` is the exponential growth rate b = lim n^{-1} ln w_n when it
    is known (0 for the ideal weights, ln c for a dcp bound edge with
    per-particle multiplier c); None means unknown.
    """

    log_w: np.ndarray
    tag: str = "custom"
    rate: float | None = None

    def __post_init__(self):
        log_w = np.asarray(self.log_w, dtype=float)
        object.__setattr__(self, "log_w", log_w)
        if log_w.ndim != 1 or log_w.size < 1:
            raise ValueError("weights must form a nonempty 1-d array")
        if not np.all(np.isfinite(log_w)):
            raise ValueError("all weights must be positive with finite logarithms")
        if self.tag not in WEIGHT_TAGS:
            raise ValueError(f"tag must be one of {WEIGHT_TAGS}, got {self.tag!r}")

    def __len__(self) -> int:
        return self.log_w.size

    @classmethod
    def ideal(cls, params: SystemParams) -> "WeightSequence":
        """Torus weights q_n = Theta(n lambda^2/L^2)^d for n = 1..N."""
        return cls(log_q_weights(params), tag="ideal", rate=0.0)

    @classmethod
    def from_weights(cls, w, tag: str = "custom", rate: float | None = None) -> "WeightSequence":
        w = np.asarray(w, dtype=float)
        if np.any(w <= 0.0):
            raise ValueError("all weights must be positive")
        return cls(np.log(w), tag=tag, rate=rate)

    def rescaled(self, log_multiplier, tag: str = "custom", rate: float | None = None) -> "WeightSequence":
        """New sequence with log w_n shifted by a per-n log multiplier."""
        shift = np.asarray(log_multiplier, dtype=float)
        if shift.shape not in ((), self.log_w.shape):
            raise ValueError("log multiplier must be scalar or match the weight length")
        return WeightSequence(self.log_w + shift, tag=tag, rate=rate)


@dataclass
class CycleSpectrum:
    """Densities rho_n of particles in n-cycles, n = 1..N; sum_n rho_n = rho."""

    rho_n: np.ndarray
    rho: float
    params: SystemParams

    @property
    def fractions(self) -> np.ndarray:
        """rho_n / rho, the probability that a tagged particle sits in an n-cycle."""
        return self.rho_n / self.rho

    def rows(self) -> Iterator[tuple[int, float, float]]:
        frac = self.fractions
        for i, r in enumerate(self.rho_n):
            yield i + 1, float(r), float(frac[i])

    def to_csv(self, fp, comments: dict | None = None) -> None:
        for key, val in (comments or {}).items():
            fp.write(f"# {key} = {val}\n")
        fp.write("n,rho_n,rho_n_over_rho\n")
        for n, r, f in self.rows():
            fp.write(f"{n},{r!r},{f!r}\n")

    def to_json_dict(self) -> dict:
        return {
            "N": self.params.N,
            "rho": self.rho,
            "n": list(range(1, self.params.N + 1)),
            "rho_n": [float(x) for x in self.rho_n],
            "rho_n_over_rho": [float(x) for x in self.fractions],
        }

    def to_json(self, fp) -> None:
        json.dump(self.to_json_dict(), fp, indent=2)
        fp.write("\n")


@dataclass
class LogPartitionTable:
    """log Q_M for M = 0..N, with the weights and params that produced it."""

    logQ: np.ndarray
    weights: WeightSequence
    params: SystemParams
    _cum_cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def N(self) -> int:
        return self.logQ.size - 1

    def cycle_probabilities(self, M: int | None = None) -> np.ndarray:
        """P(n) = w_n Q_{M-n} / (M Q_M) for n = 1..M, renormalized to kill
        the last-digit rounding so the array is an exact distribution."""
        if M is None:
            M = self.N
        if not 1 <= M <= self.N:
            raise ValueError(f"M must lie in 1..{self.N}, got {M}")
        logp = self.weights.log_w[:M] + self.logQ[M - 1 :: -1] - self.logQ[M]
        p = np.exp(logp - logp.max())
        return p / p.sum()


@dataclass(frozen=True)
class CycleType:
    """Cycle lengths of one sampled permutation, in draw order.

    The first part is the length of the cycle containing the tagged
    particle; the multiset is the cycle type proper.
    """

    parts: tuple[int, ...]

    def __post_init__(self):
        if any(p < 1 for p in self.parts):
            raise ValueError("cycle lengths must be >= 1")

    @property
    def N(self) -> int:
        return sum(self.parts)

    def counts(self) -> Counter:
        return Counter(self.parts)


class MacroAggregate(NamedTuple):
    macro: float  # density in cycles n >= eps*N
    band: float  # density in the band eps*N^{2/d} <= n <= N/ln N


def _logsumexp(terms: np.ndarray) -> float:
    m = terms.max()
    return float(m + np.log(np.exp(terms - m).sum()))


def build_partition_table(params: SystemParams, weights: WeightSequence) -> LogPartitionTable:
    """Run the cycle-weight recursion up to N in log space.

    The w == 1 fixed point gives logQ[M] = 0 bit-exactly: the max shift
    is 0 and log(sum) and log(M) are the same float.
    """
    N = params.N
    if N > N_MAX:
        raise ValueError(f"N = {N} exceeds the O(N^2) recursion cap {N_MAX}")
    if len(weights) < N:
        raise ValueError(f"weight sequence covers 1..{len(weights)}, need 1..{N}")
    log_w = weights.log_w
    logQ = np.zeros(N + 1)
    for M in range(1, N + 1):
        terms = log_w[:M] + logQ[M - 1 :: -1]
        logQ[M] = _logsumexp(terms) - math.log(M)
    return LogPartitionTable(logQ, weights, params)


def cycle_density_spectrum(table: LogPartitionTable) -> CycleSpectrum:
    """rho_n = rho w_n Q_{N-n} / (N Q_N); sums to rho by the recursion."""
    params = table.params
    N = params.N
    logp = table.weights.log_w[:N] + table.logQ[N - 1 :: -1] - table.logQ[N] - math.log(N)
    return CycleSpectrum(rho_n=params.rho * np.exp(logp), rho=params.rho, params=params)


def sample_cycle_type(table: LogPartitionTable, seed) -> CycleType:
    """Draw one exact cycle type: the tagged particle's cycle length n has
    probability w_n Q_{M-n}/(M Q_M), the n particles are removed, and the
    draw recurses on M - n.  ``seed`` is a 64-bit integer or an existing
    numpy Generator (for repeated sampling without re-seeding)."""
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    parts = []
    M = table.N
    while M > 0:
        cum = table._cum_cache.get(M)
        if cum is None:
            cum = np.cumsum(table.cycle_probabilities(M))
            cum[-1] = 1.0
            table._cum_cache[M] = cum
        n = int(np.searchsorted(cum, rng.random(), side="right")) + 1
        n = min(n, M)
        parts.append(n)
        M -= n
    return CycleType(tuple(parts))


def _partition_multiplicities(N: int, nmax: int | None = None) -> Iterator[dict]:
    # multiplicity dicts {n: m_n} over integer partitions of N
    if nmax is None:
        nmax = N
    if N == 0:
        yield {}
        return
    for n in range(min(N, nmax), 0, -1):
        for m in range(N // n, 0, -1):
            for rest in _partition_multiplicities(N - m * n, n - 1):
                yield {n: m, **rest}


def brute_force_partition_fn(weights: WeightSequence, N: int) -> float:
    """Permutation-sum oracle: sum over integer partitions {m_n} of N of
    prod_n w_n^{m_n} / (m_n! n^{m_n}).  Exponential cost; refuses N > 10."""
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    if N > _BRUTE_FORCE_N_MAX:
        raise ValueError(f"brute force enumeration is capped at N = {_BRUTE_FORCE_N_MAX}, got {N}")
    if len(weights) < N:
        raise ValueError(f"weight sequence covers 1..{len(weights)}, need 1..{N}")
    w = np.exp(weights.log_w)
    total = 0.0
    for mult in _partition_multiplicities(N):
        term = 1.0
        for n, m in mult.items():
            term *= w[n - 1] ** m / (math.factorial(m) * n**m)
        total += term
    return float(total)


def verify_auxiliary_identity(
    params: SystemParams,
    base_weights: WeightSequence | None = None,
    C: float = 0.0,
    D: float = 0.0,
) -> float:
    """Max relative deviation of the auxiliary recursion from its closed form.

    The recursion with weights q_n e^{-C[n(M-n) + n(n-1)/2] - D n} (M the
    running total) telescopes exactly to e^{-C M(M-1)/2 - D M} Q0_M.  The
    identity is algebraic, so the returned deviation is pure floating-point
    noise; extended precision keeps it certifiable at 1e-10 even when the
    exponents reach ~1e5.  ``base_weights`` defaults to the ideal q_n of
    ``params``, the only weights the closed form holds for.
    """
    if not (math.isfinite(C) and math.isfinite(D)):
        raise ValueError("C and D must be finite")
    N = params.N
    if base_weights is None:
        logq = log_q_weights(params).astype(np.longdouble)
    else:
        if len(base_weights) < N:
            raise ValueError(f"weight sequence covers 1..{len(base_weights)}, need 1..{N}")
        logq = base_weights.log_w[:N].astype(np.longdouble)
    n = np.arange(1, N + 1, dtype=np.longdouble)
    C = np.longdouble(C)
    D = np.longdouble(D)

    def lse(terms):
        m = terms.max()
        return m + np.log(np.exp(terms - m).sum())

    logQ0 = np.zeros(N + 1, dtype=np.longdouble)
    logQm = np.zeros(N + 1, dtype=np.longdouble)
    for M in range(1, N + 1):
        nn = n[:M]
        logQ0[M] = lse(logq[:M] + logQ0[M - 1 :: -1]) - np.log(np.longdouble(M))
        pair_exponent = C * (nn * (M - nn) + nn * (nn - 1) / 2) + D * nn
        logQm[M] = lse(logq[:M] - pair_exponent + logQm[M - 1 :: -1]) - np.log(np.longdouble(M))
    M = np.arange(N + 1, dtype=np.longdouble)
    log_ref = -C * M * (M - 1) / 2 - D * M + logQ0
    return float(np.abs(np.expm1(logQm - log_ref)).max())


def aggregate_macroscopic(spectrum: CycleSpectrum, eps: float) -> MacroAggregate:
    """Density in macroscopic cycles (n >= eps N) and in the sub-macroscopic
    band eps N^{2/d} <= n <= N/ln N.  eps = 1 keeps exactly rho_N."""
    if not 0.0 < eps <= 1.0:
        raise ValueError(f"eps must lie in (0, 1], got {eps}")
    N = spectrum.params.N
    d = spectrum.params.d
    # half-ulp slack so eps*N landing on an integer includes that n
    lo_macro = max(1, math.ceil(eps * N * (1.0 - 1e-12)))
    macro = float(spectrum.rho_n[lo_macro - 1 :].sum())
    lo_band = max(1, math.ceil(eps * N ** (2.0 / d) * (1.0 - 1e-12)))
    hi_band = N if N == 1 else min(N, math.floor(N / math.log(N) * (1.0 + 1e-12)))
    band = float(spectrum.rho_n[lo_band - 1 : hi_band].sum()) if lo_band <= hi_band else 0.0
    return MacroAggregate(macro=macro, band=band)
