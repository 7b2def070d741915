"""Oracle tests for theta sums, polylog, and torus weights.

Frozen reference values were computed with mpmath at 30 significant
digits; mpmath is also used live on coarse grids as an independent
cross-check.
"""

from __future__ import annotations

import math
from types import SimpleNamespace

import mpmath as mp
import numpy as np
import pytest

from bosecycles.special_fn import (
    log_q_weights,
    polylog,
    q_asymptotic_regime,
    q_n,
    reduce_shift,
    theta1d,
    theta1d_shifted,
    thermal_wavelength,
    zeta,
)

mp.mp.dps = 30


def _params(d=3, L=10.0, lam=1.0, N=64):
    return SimpleNamespace(d=d, L=L, lam=lam, N=N)


class TestThermalWavelength:
    def test_value(self):
        assert thermal_wavelength(1.0) == pytest.approx(math.sqrt(2.0 * math.pi), rel=1e-15)
        assert thermal_wavelength(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-15)

    def test_rejects_nonpositive(self):
        for beta in (0.0, -1.0, math.inf):
            with pytest.raises(ValueError):
                thermal_wavelength(beta)


THETA_FROZEN = {
    0.01: 9.9999999999999999,
    0.25: 2.0000139493694248,
    1.0: 1.086434811213308,
    2.5: 1.000776406407899,
    16.0: 1.0,
}

THETA_SHIFTED_FROZEN = {
    (1.0, 0.5): 0.91357913815611682,
    (0.3, 0.25): 1.8257418583505537,
    (7.0, -0.5): 0.0081916497787016718,
    (2.0, 0.125): 0.91498563257285879,
}


class TestTheta1d:
    @pytest.mark.parametrize("a,ref", sorted(THETA_FROZEN.items()))
    def test_frozen_values(self, a, ref):
        assert theta1d(a) == pytest.approx(ref, rel=1e-14)

    @pytest.mark.parametrize("a", [1e-4, 0.03, 0.7, 1.0, 3.0, 50.0])
    def test_poisson_duality(self, a):
        assert theta1d(a) == pytest.approx(theta1d(1.0 / a) / math.sqrt(a), rel=1e-14)

    def test_monotone_decreasing(self):
        # beyond a ~ 11.9 the excess 2 e^{-pi a} drops under eps/2 and the
        # float64 sum saturates at exactly 1, so strictness is asserted
        # below that and saturation above
        grid = np.geomspace(1e-3, 11.0, 40)
        vals = [theta1d(a) for a in grid]
        assert all(x > y for x, y in zip(vals, vals[1:]))
        assert all(v > 1.0 for v in vals)
        assert theta1d(50.0) == 1.0

    @pytest.mark.parametrize("a,s", sorted(THETA_SHIFTED_FROZEN))
    def test_shifted_frozen_values(self, a, s):
        assert theta1d_shifted(a, s) == pytest.approx(THETA_SHIFTED_FROZEN[(a, s)], rel=1e-13)

    @pytest.mark.parametrize("a", [0.2, 1.0, 5.0])
    def test_shifted_reduces_to_plain_at_zero(self, a):
        assert theta1d_shifted(a, 0.0) == pytest.approx(theta1d(a), rel=1e-15)

    @pytest.mark.parametrize("a", [0.15, 0.8, 2.0, 9.0])
    @pytest.mark.parametrize("s", [-0.5, -0.21, 0.1, 0.37, 0.5])
    def test_shifted_against_mpmath(self, a, s):
        ref = float(mp.nsum(lambda z: mp.e ** (-mp.pi * a * (z + s) ** 2), [-mp.inf, mp.inf]))
        assert theta1d_shifted(a, s) == pytest.approx(ref, rel=1e-13)

    def test_shifted_bounded_by_plain(self):
        for a in (0.3, 1.0, 4.0):
            for s in (0.1, 0.3, 0.5):
                assert theta1d_shifted(a, s) < theta1d(a)

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            theta1d(0.0)
        with pytest.raises(ValueError):
            theta1d(-2.0)
        with pytest.raises(ValueError):
            theta1d_shifted(1.0, 0.7)


class TestReduceShift:
    def test_half_open_window(self):
        out = reduce_shift([0.6, -0.6, 1.25, -3.5, 0.5])
        assert np.allclose(out, [-0.4, 0.4, 0.25, 0.5, 0.5])
        assert np.all(np.abs(out) <= 0.5)

    def test_integer_shifts_vanish(self):
        assert np.allclose(reduce_shift([-2.0, 0.0, 7.0]), 0.0)


POLYLOG_FROZEN = {
    (1.5, 0.5): 0.62483702081991385,
    (2.5, 0.5): 0.55499727871751229,
    (1.5, 0.9): 1.6144385285663397,
    (2.5, 0.99): 1.3175394259587277,
    (1.5, 0.995): 2.3687158181806404,
    (2.5, 0.9999): 1.3412283627998935,
    (1.5, 0.999999): 2.608831900452534,
    (4.0, 0.7): 0.73621724094913836,
    (1.5, 1.0): 2.6123753486854883,
    (2.5, 1.0): 1.3414872572509172,
}


class TestPolylog:
    @pytest.mark.parametrize("key", sorted(POLYLOG_FROZEN))
    def test_frozen_values(self, key):
        s, z = key
        assert polylog(s, z) == pytest.approx(POLYLOG_FROZEN[key], rel=1e-12)

    @pytest.mark.parametrize("s", [1.5, 2.5, 3.5])
    def test_against_mpmath_across_crossover(self, s):
        # straddles the series / Euler-Maclaurin switch at z = 0.99
        for z in (0.2, 0.98, 0.989, 0.99, 0.9901, 0.9999, 0.99999999):
            assert polylog(s, z) == pytest.approx(float(mp.polylog(s, z)), rel=1e-12)

    def test_continuity_at_crossover(self):
        lo, hi = polylog(1.5, 0.99 - 1e-12), polylog(1.5, 0.99 + 1e-12)
        assert abs(hi - lo) < 1e-10

    def test_monotone_in_z(self):
        grid = np.linspace(0.0, 1.0, 101)
        vals = [polylog(1.5, z) for z in grid]
        assert all(x < y for x, y in zip(vals, vals[1:]))

    def test_saturation_matches_zeta(self):
        # dual route: series+tail at z=1 versus scipy's zeta
        assert polylog(1.5, 1.0) == pytest.approx(zeta(1.5), rel=1e-12)
        assert polylog(2.5, 1.0) == pytest.approx(zeta(2.5), rel=1e-12)

    def test_small_z_linear(self):
        assert polylog(2.0, 1e-12) == pytest.approx(1e-12, rel=1e-10)
        assert polylog(2.0, 0.0) == 0.0

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            polylog(1.5, 1.1)
        with pytest.raises(ValueError):
            polylog(1.5, -0.2)
        with pytest.raises(ValueError):
            polylog(1.0, 1.0)
        with pytest.raises(ValueError):
            zeta(1.0)


class TestZeta:
    def test_frozen_values(self):
        assert zeta(1.5) == pytest.approx(2.6123753486854883, rel=1e-14)
        assert zeta(2.5) == pytest.approx(1.3414872572509172, rel=1e-14)
        assert zeta(2.0) == pytest.approx(math.pi**2 / 6.0, rel=1e-14)


class TestTorusWeights:
    def test_q1_matches_theta_product(self):
        p = _params(d=3, L=8.0, lam=1.3)
        a = p.lam**2 / p.L**2
        assert q_n(p, 1) == pytest.approx(theta1d(a) ** 3, rel=1e-14)

    def test_exceeds_one_and_decreases(self):
        # q_n > 1 strictly, but near saturation the excess sits below the
        # float64 quantum at 1.0; the log weights keep it resolved
        p = _params(d=3, L=10.0, lam=1.0, N=2000)
        logq = log_q_weights(p)
        assert np.all(logq > 0.0)
        assert np.all(np.diff(logq) < 0.0)
        assert np.all(np.exp(logq) >= 1.0)

    def test_log_weights_match_scalar_route(self):
        p = _params(d=2, L=7.0, lam=1.7, N=300)
        logq = log_q_weights(p)
        for n in (1, 2, 17, 150, 300):
            assert logq[n - 1] == pytest.approx(math.log(q_n(p, n)), rel=1e-13, abs=1e-15)

    def test_shifted_weight_product_form(self):
        p = _params(d=2, L=5.0, lam=1.0)
        shift = [0.2, -0.45]
        a = 3 * p.lam**2 / p.L**2
        want = theta1d_shifted(a, 0.2) * theta1d_shifted(a, -0.45)
        assert q_n(p, 3, shift) == pytest.approx(want, rel=1e-13)

    def test_shift_periodicity(self):
        p = _params(d=1, L=5.0, lam=1.0)
        assert q_n(p, 4, [0.3]) == pytest.approx(q_n(p, 4, [2.3]), rel=1e-14)

    def test_bulk_weight_ratio(self):
        # a = n lam^2/L^2 small: q_n ~ (L/lam)^d n^{-d/2}
        p = _params(d=3, L=200.0, lam=1.0)
        got = q_n(p, 5)
        want = (p.L / p.lam) ** 3 / 5**1.5
        assert got == pytest.approx(want, rel=1e-8)

    def test_rejects_bad_cycle_length(self):
        p = _params()
        with pytest.raises(ValueError):
            q_n(p, 0)
        with pytest.raises(ValueError):
            q_n(p, 3, [0.1])  # wrong shift dimension for d=3


class TestAsymptoticRegime:
    def test_bulk_branch(self):
        p = _params(d=3, L=100.0, lam=1.0)
        tag, val = q_asymptotic_regime(p, 10)
        assert tag == "bulk"
        assert val == pytest.approx(q_n(p, 10), rel=1e-3)

    def test_macroscopic_branch_zero_shift(self):
        p = _params(d=3, L=2.0, lam=1.0)
        tag, val = q_asymptotic_regime(p, 100)
        assert tag == "macroscopic"
        assert val == 1.0

    def test_macroscopic_branch_with_shift(self):
        p = _params(d=1, L=2.0, lam=1.0)
        n = 100
        tag, val = q_asymptotic_regime(p, n, [0.25])
        a = n * p.lam**2 / p.L**2
        assert tag == "macroscopic"
        assert val == pytest.approx(math.exp(-math.pi * a * 0.0625), rel=1e-12)
        assert val == pytest.approx(q_n(p, n, [0.25]), rel=1e-8)

    def test_critical_branch_is_exact(self):
        p = _params(d=3, L=3.0, lam=1.0)
        tag, val = q_asymptotic_regime(p, 9)  # a = 1.0
        assert tag == "critical"
        assert val == q_n(p, 9)
