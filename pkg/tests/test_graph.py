import math

import numpy as np
import pytest

import stretch_fpp as sf
from stretch_fpp.graph import exp_samples


class TestFamilyParsing:
    def test_letters_are_canonicalized(self):
        assert sf.GraphFamily.from_letters("zyx").letters == "XYZ"
        assert sf.GraphFamily.from_letters("XYZ") == sf.GraphFamily.from_letters("zxy")

    def test_flags_follow_letter_order(self):
        fam = sf.GraphFamily.from_letters("VZ")
        assert fam.flags == (True, False, False, False, True)

    @pytest.mark.parametrize("bad", ["XX", "A", "XYZQ", "xyzz"])
    def test_repeats_and_unknown_letters_rejected(self, bad):
        with pytest.raises(ValueError):
            sf.GraphFamily.from_letters(bad)

    def test_edge_names_are_the_present_lowercase_letters(self):
        assert sf.GraphFamily.from_letters("VWXYZ").edge_names == ("v", "w", "x", "y", "z")
        assert sf.GraphFamily.from_letters("XZ").edge_names == ("x", "z")

    def test_empty_family_prints_a_placeholder(self):
        assert str(sf.GraphFamily()) == "(empty)"


CLASSIFY_CASES = [
    ("XYZ", sf.SOLVED),
    ("VWXY", sf.SOLVED),
    ("WXYZ", sf.SOLVED),
    ("VWX", sf.UNSOLVED),
    ("VWXZ", sf.UNSOLVED),
    ("VWXYZ", sf.UNSOLVED),
    ("X", sf.TRIVIAL),  # the bottom rail is the geodesic
    ("XY", sf.TRIVIAL),
    ("XZ", sf.TRIVIAL),
    ("YZ", sf.TRIVIAL),  # up the rung, along the top, back down
    ("VW", sf.TRIVIAL),  # diagonals alternate rows and reach (n, 0) for even n
    ("VZ", sf.TRIVIAL),
    ("V", sf.DISCONNECTED),
    ("W", sf.DISCONNECTED),
    ("Y", sf.DISCONNECTED),
    ("Z", sf.DISCONNECTED),
    ("", sf.DISCONNECTED),
]


@pytest.mark.parametrize(
    "letters, want", CLASSIFY_CASES, ids=[c[0] or "empty" for c in CLASSIFY_CASES]
)
def test_classification(letters, want):
    assert sf.classify(sf.GraphFamily.from_letters(letters)) == want


class TestSampling:
    def test_deterministic_for_a_fixed_seed(self):
        fam = sf.GraphFamily.from_letters("XYZ")
        a = sf.sample_ladder(fam, 20, seed=5)
        b = sf.sample_ladder(fam, 20, seed=5)
        assert a.to_json() == b.to_json()

    def test_seed_changes_the_draw(self):
        fam = sf.GraphFamily.from_letters("XYZ")
        a = sf.sample_ladder(fam, 20, seed=5)
        b = sf.sample_ladder(fam, 20, seed=6)
        assert a.to_json() != b.to_json()

    def test_only_present_edges_are_drawn(self):
        lad = sf.sample_ladder(sf.GraphFamily.from_letters("VWX"), 7, seed=0)
        assert lad.n == 7
        assert len(lad.layers) == 7
        assert lad.z0 is None
        first = lad.layers[0]
        assert first.v > 0 and first.w > 0 and first.x > 0
        assert first.y is None and first.z is None

    def test_rung_family_draws_the_column_zero_rung(self):
        lad = sf.sample_ladder(sf.GraphFamily.from_letters("XZ"), 3, seed=1)
        assert lad.z0 > 0

    def test_empty_ladder_rejected(self):
        with pytest.raises(ValueError):
            sf.sample_ladder(sf.GraphFamily.from_letters("XYZ"), 0, seed=1)

    def test_weights_look_exponential(self):
        draws = exp_samples(sf.shard_rng(12), 1_000_000)
        assert draws.min() > 0.0
        assert abs(draws.mean() - 1.0) < 4e-3
        assert abs(draws.var() - 1.0) < 1.5e-2

    def test_json_round_trip(self):
        lad = sf.sample_ladder(sf.GraphFamily.from_letters("XYZ"), 5, seed=3)
        back = sf.WeightedLadder.from_json(lad.to_json())
        assert back.family == lad.family
        assert back.n == lad.n
        assert back.z0 == lad.z0
        for a, b in zip(lad.layers, back.layers):
            assert (b.v, b.w, b.x, b.y, b.z) == (a.v, a.w, a.x, a.y, a.z)


def test_shard_streams_are_reproducible_and_distinct():
    a = sf.shard_rng(9, 3).random(4)
    b = sf.shard_rng(9, 3).random(4)
    c = sf.shard_rng(9, 4).random(4)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)


class TestDijkstraOracle:
    def test_distance_to_the_origin_is_zero(self):
        lad = sf.sample_ladder(sf.GraphFamily.from_letters("XYZ"), 2, seed=0)
        assert sf.dijkstra_oracle(lad, (0, 0)) == 0.0

    def test_single_layer_by_hand(self):
        # to (1, 0): rail 3.0 vs rung + top rail + rung 0.5 + 1.0 + 0.25
        # to (1, 1): rung + top rail 1.5 vs rail + rung 3.25
        lad = sf.WeightedLadder(
            family=sf.GraphFamily.from_letters("XYZ"),
            n=1,
            layers=[sf.LayerWeights(x=3.0, y=1.0, z=0.25)],
            z0=0.5,
        )
        assert sf.dijkstra_oracle(lad, (1, 0)) == pytest.approx(1.75)
        assert sf.dijkstra_oracle(lad, (1, 1)) == pytest.approx(1.5)

    def test_alternating_diagonals_by_hand(self):
        """Two bare diagonals: the only route to (2, 0) zigzags through (1, 1)."""
        lad = sf.WeightedLadder(
            family=sf.GraphFamily.from_letters("VW"),
            n=2,
            layers=[
                sf.LayerWeights(v=1.0, w=9.0),
                sf.LayerWeights(v=9.0, w=2.0),
            ],
            z0=None,
        )
        assert sf.dijkstra_oracle(lad, (2, 0)) == pytest.approx(3.0)
        assert sf.dijkstra_oracle(lad, (1, 0)) == math.inf

    def test_unreachable_vertex_reports_infinity(self):
        lad = sf.WeightedLadder(
            family=sf.GraphFamily.from_letters("Y"),
            n=2,
            layers=[sf.LayerWeights(y=1.0), sf.LayerWeights(y=1.0)],
            z0=None,
        )
        assert sf.dijkstra_oracle(lad, (2, 0)) == math.inf

    @pytest.mark.parametrize("target", [(5, 0), (-1, 0), (1, 2)])
    def test_target_outside_the_ladder_rejected(self, target):
        lad = sf.sample_ladder(sf.GraphFamily.from_letters("XYZ"), 3, seed=0)
        with pytest.raises(ValueError):
            sf.dijkstra_oracle(lad, target)
