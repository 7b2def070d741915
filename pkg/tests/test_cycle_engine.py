"""Oracle tests for the cycle-weight recursion, spectra, sampler, and
the auxiliary-identity check.

The brute-force permutation sum over integer partitions is the oracle
for the recursion; closed forms for N = 2, 3 are asserted directly.
"""

from __future__ import annotations

import io
import json
import math

import numpy as np
import pytest
from scipy import stats

from bosecycles.cycle_engine import (
    N_MAX,
    CycleType,
    SystemParams,
    WeightSequence,
    aggregate_macroscopic,
    brute_force_partition_fn,
    build_partition_table,
    cycle_density_spectrum,
    sample_cycle_type,
    verify_auxiliary_identity,
)


def _ideal_table(d=3, N=64, rho_lam_d=2.0, beta=1.0):
    p = SystemParams.from_degeneracy(d, N, rho_lam_d, beta)
    return build_partition_table(p, WeightSequence.ideal(p))


def _const_weights(N, value=1.0):
    return WeightSequence(np.full(N, math.log(value)), tag="custom")


class TestSystemParams:
    def test_derived_fields(self):
        p = SystemParams(d=3, L=8.0, N=512, beta=1.0)
        assert p.rho == 512 / 8.0**3
        assert p.lam == pytest.approx(math.sqrt(2 * math.pi), rel=1e-15)
        assert p.rho_lam_d == pytest.approx(p.rho * p.lam**3, rel=1e-15)

    def test_from_density_roundtrip(self):
        p = SystemParams.from_density(3, 100, rho=0.37, beta=2.0)
        assert p.rho == pytest.approx(0.37, rel=1e-14)

    def test_from_degeneracy_roundtrip(self):
        p = SystemParams.from_degeneracy(3, 100, rho_lam_d=2.612, beta=0.7)
        assert p.rho_lam_d == pytest.approx(2.612, rel=1e-14)

    @pytest.mark.parametrize(
        "kw",
        [
            dict(d=0, L=1.0, N=1, beta=1.0),
            dict(d=3, L=0.0, N=1, beta=1.0),
            dict(d=3, L=1.0, N=0, beta=1.0),
            dict(d=3, L=1.0, N=1, beta=-1.0),
        ],
    )
    def test_rejects_invalid(self, kw):
        with pytest.raises(ValueError):
            SystemParams(**kw)


class TestWeightSequence:
    def test_ideal_rate_is_zero(self):
        p = SystemParams(d=3, L=8.0, N=32, beta=1.0)
        w = WeightSequence.ideal(p)
        assert w.tag == "ideal"
        assert w.rate == 0.0
        assert len(w) == 32

    def test_from_weights_log_roundtrip(self):
        w = WeightSequence.from_weights([1.0, 2.0, 4.0])
        assert np.allclose(w.log_w, [0.0, math.log(2), math.log(4)])

    def test_rescaled_shifts_logs(self):
        w = WeightSequence.from_weights([1.0, 1.0, 1.0])
        shifted = w.rescaled(np.array([0.1, 0.2, 0.3]), tag="dcp-upper", rate=0.1)
        assert np.allclose(shifted.log_w, [0.1, 0.2, 0.3])
        assert shifted.tag == "dcp-upper"

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValueError):
            WeightSequence.from_weights([1.0, 0.0])
        with pytest.raises(ValueError):
            WeightSequence(np.array([0.0, np.inf]))
        with pytest.raises(ValueError):
            WeightSequence(np.zeros(4), tag="bogus")


class TestPartitionTable:
    def test_constant_weights_fixed_point_bit_exact(self):
        p = SystemParams(d=3, L=5.0, N=200, beta=1.0)
        t = build_partition_table(p, _const_weights(200))
        assert np.all(t.logQ == 0.0)

    def test_n2_closed_form(self):
        w1, w2 = 1.7, 0.4
        p = SystemParams(d=1, L=1.0, N=2, beta=1.0)
        w = WeightSequence.from_weights([w1, w2])
        t = build_partition_table(p, w)
        assert math.exp(t.logQ[2]) == pytest.approx((w1**2 + w2) / 2, rel=1e-14)

    def test_n3_closed_form(self):
        w1, w2, w3 = 1.7, 0.4, 2.2
        p = SystemParams(d=1, L=1.0, N=3, beta=1.0)
        t = build_partition_table(p, WeightSequence.from_weights([w1, w2, w3]))
        want = (w1**3 + 3 * w1 * w2 + 2 * w3) / 6
        assert math.exp(t.logQ[3]) == pytest.approx(want, rel=1e-14)

    @pytest.mark.parametrize("seed", range(5))
    def test_matches_brute_force_random_weights(self, seed):
        rng = np.random.default_rng(seed)
        for N in range(1, 9):
            w = WeightSequence.from_weights(rng.uniform(0.3, 3.0, size=N))
            p = SystemParams(d=1, L=1.0, N=N, beta=1.0)
            t = build_partition_table(p, w)
            oracle = brute_force_partition_fn(w, N)
            assert math.exp(t.logQ[N]) == pytest.approx(oracle, rel=1e-10)

    def test_rejects_short_weights_and_cap(self):
        p = SystemParams(d=3, L=5.0, N=10, beta=1.0)
        with pytest.raises(ValueError):
            build_partition_table(p, _const_weights(9))
        big = SystemParams(d=3, L=5.0, N=N_MAX + 1, beta=1.0)
        with pytest.raises(ValueError):
            build_partition_table(big, _const_weights(1))

    def test_large_system_no_overflow(self):
        # logQ stays finite even when Q itself spans thousands of decades
        t = _ideal_table(N=2048, rho_lam_d=0.5)
        assert np.all(np.isfinite(t.logQ))
        assert t.logQ[-1] > 1e3  # dilute gas: Q grows roughly like (L^d/lam^d)^N/N!


class TestBruteForce:
    def test_n1(self):
        w = WeightSequence.from_weights([1.7])
        assert brute_force_partition_fn(w, 1) == pytest.approx(1.7, rel=1e-15)

    def test_n2(self):
        w = WeightSequence.from_weights([1.7, 0.4])
        assert brute_force_partition_fn(w, 2) == pytest.approx((1.7**2 + 0.4) / 2, rel=1e-14)

    def test_n4_linear_weights(self):
        # partitions of 4: 4 | 3+1 | 2+2 | 2+1+1 | 1+1+1+1 with w_n = n
        w = WeightSequence.from_weights([1.0, 2.0, 3.0, 4.0])
        want = 4 / 4 + (3 / 3) * 1 + (2 / 2) ** 2 / 2 + (2 / 2) * 1 / 2 + 1 / 24
        got = brute_force_partition_fn(w, 4)
        assert got == pytest.approx(want, rel=1e-14)
        p = SystemParams(d=1, L=1.0, N=4, beta=1.0)
        t = build_partition_table(p, w)
        assert math.exp(t.logQ[4]) == pytest.approx(got, rel=1e-12)

    def test_refuses_large_n(self):
        w = _const_weights(60)
        with pytest.raises(ValueError):
            brute_force_partition_fn(w, 11)


class TestSpectrum:
    def test_single_particle(self):
        t = _ideal_table(N=1)
        s = cycle_density_spectrum(t)
        assert s.rho_n[0] == pytest.approx(s.rho, rel=1e-15)

    def test_constant_weights_n2_split(self):
        p = SystemParams(d=3, L=4.0, N=2, beta=1.0)
        t = build_partition_table(p, _const_weights(2))
        s = cycle_density_spectrum(t)
        assert np.allclose(s.rho_n, [s.rho / 2, s.rho / 2], rtol=1e-14)

    @pytest.mark.parametrize("rho_lam_d", [0.5, 2.612, 10.0])
    def test_normalization(self, rho_lam_d):
        t = _ideal_table(N=512, rho_lam_d=rho_lam_d)
        s = cycle_density_spectrum(t)
        assert s.rho_n.sum() == pytest.approx(s.rho, rel=1e-12)
        assert np.all(s.rho_n >= 0.0)

    def test_condensed_small_n_law(self):
        # deep in the condensed regime rho_n lam^d -> n^{-d/2}, sharpening with N
        devs = {}
        for N in (512, 2048):
            p = SystemParams.from_degeneracy(3, N, 10.0, beta=1.0)
            s = cycle_density_spectrum(build_partition_table(p, WeightSequence.ideal(p)))
            law = s.rho_n[:4] * p.lam**3
            ref = np.arange(1, 5) ** -1.5
            devs[N] = np.abs(law / ref - 1.0).max()
        assert devs[512] < 1e-3
        assert devs[2048] < 1e-8
        assert devs[2048] < devs[512]

    def test_csv_export(self):
        t = _ideal_table(N=4)
        s = cycle_density_spectrum(t)
        buf = io.StringIO()
        s.to_csv(buf, comments={"N": 4})
        lines = buf.getvalue().splitlines()
        assert lines[0] == "# N = 4"
        assert lines[1] == "n,rho_n,rho_n_over_rho"
        assert len(lines) == 6
        n, rho_n, frac = lines[2].split(",")
        assert int(n) == 1
        assert float(rho_n) == s.rho_n[0]
        assert float(frac) == s.fractions[0]

    def test_json_export(self):
        t = _ideal_table(N=4)
        s = cycle_density_spectrum(t)
        buf = io.StringIO()
        s.to_json(buf)
        blob = json.loads(buf.getvalue())
        assert blob["N"] == 4
        assert blob["n"] == [1, 2, 3, 4]
        assert blob["rho_n_over_rho"] == pytest.approx(list(s.fractions))


class TestSampler:
    def test_single_particle_always_one_cycle(self):
        t = _ideal_table(N=1)
        assert sample_cycle_type(t, 0) == CycleType((1,))

    def test_deterministic_given_seed(self):
        t = _ideal_table(N=32)
        assert sample_cycle_type(t, 1234) == sample_cycle_type(t, 1234)

    def test_parts_partition_n(self):
        t = _ideal_table(N=48, rho_lam_d=5.0)
        rng = np.random.default_rng(7)
        for _ in range(200):
            ct = sample_cycle_type(t, rng)
            assert ct.N == 48
            assert all(p >= 1 for p in ct.parts)

    def test_constant_weights_n2_coin_flip(self):
        p = SystemParams(d=1, L=1.0, N=2, beta=1.0)
        t = build_partition_table(p, _const_weights(2))
        rng = np.random.default_rng(42)
        n_two = sum(sample_cycle_type(t, rng).parts == (2,) for _ in range(4000))
        # 3 binomial sigmas around p = 1/2
        assert abs(n_two / 4000 - 0.5) < 3 * 0.5 / math.sqrt(4000)

    def test_first_cycle_chi_square(self):
        t = _ideal_table(N=64, rho_lam_d=2.612)
        probs = t.cycle_probabilities(64)
        rng = np.random.default_rng(2024)
        draws = np.array([sample_cycle_type(t, rng).parts[0] for _ in range(10_000)])
        counts = np.bincount(draws, minlength=65)[1:]
        # pool bins with expected count < 5 into the last bin
        expected = 10_000 * probs
        cut = int(np.argmax(np.cumsum(expected[::-1]) >= 5.0))
        k = 64 - cut
        obs = np.append(counts[:k], counts[k:].sum())
        exp = np.append(expected[:k], expected[k:].sum())
        _, pvalue = stats.chisquare(obs, exp * obs.sum() / exp.sum())
        assert pvalue > 0.001

    def test_macro_mass_matches_aggregate(self):
        t = _ideal_table(N=64, rho_lam_d=8.0)
        s = cycle_density_spectrum(t)
        eps = 0.25
        macro_frac = aggregate_macroscopic(s, eps).macro / s.rho
        rng = np.random.default_rng(5)
        nsamp = 4000
        vals = []
        for _ in range(nsamp):
            ct = sample_cycle_type(t, rng)
            vals.append(sum(p for p in ct.parts if p >= eps * 64) / 64)
        got = float(np.mean(vals))
        sigma = math.sqrt(macro_frac * (1 - macro_frac) / nsamp)
        assert abs(got - macro_frac) <= 3 * sigma


class TestAuxiliaryIdentity:
    def test_zero_coupling_is_exact(self):
        p = SystemParams.from_degeneracy(3, 128, 2.0, beta=1.0)
        assert verify_auxiliary_identity(p, C=0.0, D=0.0) == 0.0

    @pytest.mark.parametrize("C,D,N", [(0.01, 0.3, 256), (1.0, 0.0, 64), (0.5, 1.0, 128)])
    def test_small_deviation(self, C, D, N):
        p = SystemParams.from_degeneracy(3, N, 2.0, beta=1.0)
        assert verify_auxiliary_identity(p, C=C, D=D) <= 1e-10

    def test_accepts_explicit_base_weights(self):
        p = SystemParams.from_degeneracy(3, 64, 2.0, beta=1.0)
        w = WeightSequence.ideal(p)
        assert verify_auxiliary_identity(p, w, C=0.2, D=0.1) <= 1e-10

    def test_rejects_nonfinite(self):
        p = SystemParams(d=3, L=5.0, N=8, beta=1.0)
        with pytest.raises(ValueError):
            verify_auxiliary_identity(p, C=math.inf, D=0.0)


class TestAggregateMacroscopic:
    def test_eps_one_keeps_only_full_cycle(self):
        t = _ideal_table(N=16, rho_lam_d=5.0)
        s = cycle_density_spectrum(t)
        macro, _ = aggregate_macroscopic(s, 1.0)
        assert macro == pytest.approx(float(s.rho_n[-1]), rel=1e-15)

    def test_constant_weights_n2(self):
        p = SystemParams(d=3, L=4.0, N=2, beta=1.0)
        t = build_partition_table(p, _const_weights(2))
        s = cycle_density_spectrum(t)
        macro, _ = aggregate_macroscopic(s, 0.6)
        assert macro == pytest.approx(s.rho / 2, rel=1e-14)

    def test_band_window(self):
        # d = 3, N = 4096: band is eps*N^{2/3} = 64*eps .. N/ln N = 492
        t = _ideal_table(N=4096, rho_lam_d=2.0)
        s = cycle_density_spectrum(t)
        _, band = aggregate_macroscopic(s, 0.25)
        lo = math.ceil(0.25 * 4096 ** (2 / 3))
        hi = math.floor(4096 / math.log(4096))
        assert band == pytest.approx(float(s.rho_n[lo - 1 : hi].sum()), rel=1e-14)

    def test_empty_band_is_zero(self):
        # N = 2: band lower edge eps*2^{2/3} with hi = floor(2/ln 2) = 2
        p = SystemParams(d=3, L=4.0, N=2, beta=1.0)
        s = cycle_density_spectrum(build_partition_table(p, _const_weights(2)))
        macro, band = aggregate_macroscopic(s, 1.0)
        assert band >= 0.0

    def test_rejects_eps_out_of_range(self):
        t = _ideal_table(N=8)
        s = cycle_density_spectrum(t)
        for eps in (0.0, -0.1, 1.5):
            with pytest.raises(ValueError):
                aggregate_macroscopic(s, eps)

    def test_macro_plus_rest_is_total(self):
        t = _ideal_table(N=256, rho_lam_d=6.0)
        s = cycle_density_spectrum(t)
        macro, _ = aggregate_macroscopic(s, 0.1)
        below = float(s.rho_n[: math.ceil(0.1 * 256) - 1].sum())
        assert macro + below == pytest.approx(s.rho, rel=1e-12)
