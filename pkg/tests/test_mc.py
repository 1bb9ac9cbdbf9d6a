import math

import numpy as np
import pytest
from scipy import stats

import stretch_fpp as sf

XYZ = sf.GraphFamily.from_letters("XYZ")


class TestRateEstimate:
    def test_record_fields(self):
        est = sf.RateEstimate(
            family=sf.GraphFamily.from_letters("VWX"),
            method="monte-carlo",
            value=0.51,
            std_error=1e-4,
            n_steps=10_000,
            n_shards=8,
            seed=3,
        )
        assert est.to_record() == {
            "family": "VWX",
            "method": "monte-carlo",
            "value": 0.51,
            "std_error": 1e-4,
            "n_steps": 10_000,
            "n_shards": 8,
            "seed": 3,
        }

    def test_monte_carlo_needs_a_positive_standard_error(self):
        with pytest.raises(ValueError):
            sf.RateEstimate(family=XYZ, method="monte-carlo", value=0.68, std_error=0.0)

    def test_exact_values_carry_no_standard_error(self):
        with pytest.raises(ValueError):
            sf.RateEstimate(family=XYZ, method="exact", value=0.68, std_error=0.1)

    def test_non_finite_value_rejected(self):
        with pytest.raises(ValueError):
            sf.RateEstimate(family=XYZ, method="exact", value=math.inf)


class TestEstimateChi:
    def test_bit_reproducible(self):
        a = sf.estimate_chi(XYZ, n_steps=10_000, n_shards=4, burn_in=1_000, seed=42)
        b = sf.estimate_chi(XYZ, n_steps=10_000, n_shards=4, burn_in=1_000, seed=42)
        assert a.value == b.value
        assert a.std_error == b.std_error

    def test_both_recursions_walk_the_same_streams(self):
        """The gap recursion and the generic frontier are independent codes
        for the same chain, so on shared weight streams they agree bit for
        bit, not just statistically."""
        a = sf.estimate_chi(XYZ, n_steps=20_000, n_shards=4, burn_in=1_000, seed=3, method="frontier")
        b = sf.estimate_chi(XYZ, n_steps=20_000, n_shards=4, burn_in=1_000, seed=3, method="delta")
        assert a.value == b.value
        assert a.std_error == b.std_error

    def test_delta_method_limited_to_rails_plus_rungs(self):
        with pytest.raises(ValueError):
            sf.estimate_chi(
                sf.GraphFamily.from_letters("VWXY"),
                n_steps=10_000,
                n_shards=2,
                burn_in=1_000,
                method="delta",
            )

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"n_steps": 5_000},
            {"burn_in": 500},
            {"n_shards": 1},
            {"method": "exact"},
        ],
    )
    def test_weak_configurations_rejected(self, kwargs):
        full = {"n_steps": 10_000, "n_shards": 4, "burn_in": 1_000, "seed": 0}
        full.update(kwargs)
        with pytest.raises(ValueError):
            sf.estimate_chi(XYZ, **full)

    @pytest.mark.parametrize("letters", ["X", "YZ", "Z", ""])
    def test_only_nontrivial_families_are_estimable(self, letters):
        with pytest.raises(ValueError):
            sf.estimate_chi(sf.GraphFamily.from_letters(letters), n_steps=10_000)

    def test_standard_error_scales_like_inverse_root_steps(self):
        ses = [
            sf.estimate_chi(XYZ, n_steps=n, n_shards=16, burn_in=1_000, seed=7).std_error
            for n in (10_000, 100_000, 1_000_000)
        ]
        root10 = math.sqrt(10.0)
        for wide, tight in zip(ses, ses[1:]):
            assert root10 / 1.5 < wide / tight < root10 * 1.5


class TestCollectSamples:
    def test_returns_the_requested_count(self):
        deltas, lams = sf.collect_samples(XYZ, 10_000, n_shards=8, burn_in=1_000, seed=2)
        assert deltas.shape == (10_000,)
        assert lams.shape == (10_000,)

    def test_deterministic(self):
        a = sf.collect_samples(XYZ, 5_000, n_shards=8, burn_in=1_000, seed=2)
        b = sf.collect_samples(XYZ, 5_000, n_shards=8, burn_in=1_000, seed=2)
        assert np.array_equal(a[0], b[0])
        assert np.array_equal(a[1], b[1])

    def test_count_is_validated(self):
        with pytest.raises(ValueError):
            sf.collect_samples(XYZ, 0)

    def test_gap_samples_are_symmetric_in_law(self):
        # measured statistic at this seed: 7.5e-4
        deltas, _ = sf.collect_samples(XYZ, 1_000_000, seed=22)
        ks = stats.ks_2samp(deltas, -deltas).statistic
        assert ks < 3e-3


class TestValidateRecursion:
    def test_clean_on_a_solved_family(self):
        rep = sf.validate_recursion(XYZ, trials=50, seed=1)
        assert rep.failures == 0
        assert rep.max_discrepancy < 1e-9
        assert rep.trials == 50

    def test_clean_when_the_top_row_is_unreachable(self):
        rep = sf.validate_recursion(sf.GraphFamily.from_letters("X"), trials=25, seed=1)
        assert rep.failures == 0

    def test_arguments_validated(self):
        with pytest.raises(ValueError):
            sf.validate_recursion(XYZ, trials=0)
        with pytest.raises(ValueError):
            sf.validate_recursion(XYZ, trials=10, max_n=1)


class TestSubadditivity:
    def test_no_violations_on_sampled_ladders(self):
        rep = sf.subadditivity_probe(XYZ, trials=100, n=30, m=11, seed=0)
        assert rep.violations == 0
        assert rep.max_excess <= 1e-9

    @pytest.mark.parametrize("m", [0, 30])
    def test_degenerate_splits_are_exactly_tight(self, m):
        rep = sf.subadditivity_probe(XYZ, trials=10, n=30, m=m, seed=0)
        assert rep.violations == 0
        assert rep.max_excess == 0.0

    def test_split_point_validated(self):
        with pytest.raises(ValueError):
            sf.subadditivity_probe(XYZ, trials=10, n=3, m=5)
        with pytest.raises(ValueError):
            sf.subadditivity_probe(XYZ, trials=0, n=3, m=2)
