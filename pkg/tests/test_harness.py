import json

import pytest

import oracles
from kernelhunt import (
    find_k_kernel,
    hunt,
    load_checkpoint,
    make_digraph,
    random_hunt,
    save_checkpoint,
    threshold,
)
from kernelhunt.harness import (
    CHECKPOINT_FORMAT_VERSION,
    EXHAUSTIVE_MAX_N,
    SearchCheckpoint,
    checkpoint_from_dict,
    cursor_space,
    decode_cursor,
    enumerate_labeled_digraphs,
    pair_list,
)


class TestCursorEncoding:
    def test_space_sizes(self):
        assert cursor_space(2) == 4
        assert cursor_space(3) == 64
        assert cursor_space(4) == 4096

    def test_pair_order_is_lexicographic(self):
        assert pair_list(3) == [(0, 1), (0, 2), (1, 2)]

    def test_first_pair_is_least_significant(self):
        assert decode_cursor(2, 0) == make_digraph(2, [])
        assert decode_cursor(2, 1) == make_digraph(2, [(0, 1)])
        assert decode_cursor(2, 2) == make_digraph(2, [(1, 0)])
        assert decode_cursor(2, 3) == make_digraph(2, [(0, 1), (1, 0)])
        assert decode_cursor(3, 4) == make_digraph(3, [(0, 2)])

    def test_enumeration_is_complete_and_distinct(self):
        seen = {d for d in enumerate_labeled_digraphs(3)}
        assert len(seen) == 64

    def test_enumeration_range(self):
        got = list(enumerate_labeled_digraphs(3, 10, 13))
        assert got == [decode_cursor(3, c) for c in (10, 11, 12)]


class TestHunt:
    def test_order3_n4_frozen_counts(self):
        cp = hunt(3, 4)
        assert cp.cursor == 4096
        assert cp.examined == 4096
        assert cp.counterexamples == ()
        assert cp.premise_hits == cp.kernels_found == 1712

    def test_counts_match_brute_force(self):
        holds = sum(
            1
            for d in enumerate_labeled_digraphs(4)
            if oracles.brute_premise(d, 3, threshold)
        )
        assert holds == 1712

    def test_order2_n4_matches_duchet_oracle(self):
        cp = hunt(2, 4)
        holds = sum(
            1
            for d in enumerate_labeled_digraphs(4)
            if oracles.brute_every_cycle_has_symmetric_arc(d)
        )
        assert cp.premise_hits == holds == 3608
        assert not cp.counterexamples

    def test_order5_probe_frozen_outcome(self):
        # beyond the proven orders; value frozen from an exhaustive run
        cp = hunt(5, 4)
        assert cp.premise_hits == 1609
        assert cp.counterexamples == ()
        checked = 0
        for d in enumerate_labeled_digraphs(4):
            if oracles.brute_premise(d, 5, threshold):
                checked += 1
                assert oracles.brute_k_kernels(d, 5)
        assert checked == 1609

    def test_shard_invariance(self):
        blobs = {s: hunt(3, 4, shards=s).to_json() for s in (1, 4, 8)}
        assert blobs[1] == blobs[4] == blobs[8]

    def test_stop_and_resume(self):
        full = hunt(3, 4)
        part = hunt(3, 4, stop_cursor=1000)
        assert part.cursor == 1000
        assert part.examined == 1000
        resumed = hunt(3, 4, checkpoint=part)
        assert resumed == full

    def test_resume_requires_matching_parameters(self):
        part = hunt(3, 4, stop_cursor=10)
        with pytest.raises(ValueError):
            hunt(4, 4, checkpoint=part)
        with pytest.raises(ValueError):
            hunt(3, 3, checkpoint=part)

    def test_bounds_validation(self):
        with pytest.raises(ValueError):
            hunt(1, 3)
        with pytest.raises(ValueError):
            hunt(3, EXHAUSTIVE_MAX_N + 1)
        with pytest.raises(ValueError):
            hunt(3, 3, stop_cursor=65)

    def test_checkpoint_file_flow(self, tmp_path):
        path = str(tmp_path / "cp.json")
        part = hunt(3, 4, stop_cursor=500, checkpoint_path=path)
        on_disk = load_checkpoint(path)
        assert on_disk == part
        resumed = hunt(3, 4, checkpoint=on_disk, checkpoint_path=path)
        assert load_checkpoint(path) == resumed == hunt(3, 4)


class TestCheckpointSerialization:
    def test_round_trip(self, tmp_path):
        cp = hunt(3, 3)
        path = str(tmp_path / "cp.json")
        save_checkpoint(cp, path)
        assert load_checkpoint(path) == cp
        raw = json.loads(open(path).read())
        assert raw["format_version"] == CHECKPOINT_FORMAT_VERSION

    def test_unknown_format_version_rejected(self):
        data = hunt(3, 3).to_json_dict()
        data["format_version"] = 999
        with pytest.raises(ValueError):
            checkpoint_from_dict(data)

    def test_inconsistent_tallies_rejected(self):
        data = hunt(3, 3).to_json_dict()
        data["kernels_found"] -= 1
        with pytest.raises(ValueError):
            checkpoint_from_dict(data)

    def test_forged_counterexample_rejected(self):
        digon = "n 2\n0 1\n1 0\n"
        data = {
            "format_version": CHECKPOINT_FORMAT_VERSION,
            "k": 3,
            "n": 2,
            "cursor": 4,
            "examined": 4,
            "premise_hits": 1,
            "kernels_found": 0,
            "counterexamples": [digon],
            "rng_seed": None,
        }
        with pytest.raises(ValueError, match="kernel on revalidation"):
            checkpoint_from_dict(data)
        unchecked = checkpoint_from_dict(data, validate=False)
        assert unchecked.counterexamples == (digon,)

    def test_premise_failing_counterexample_rejected(self):
        triangle = "n 3\n0 1\n1 2\n2 0\n"
        data = {
            "format_version": CHECKPOINT_FORMAT_VERSION,
            "k": 3,
            "n": 3,
            "cursor": 64,
            "examined": 64,
            "premise_hits": 1,
            "kernels_found": 0,
            "counterexamples": [triangle],
            "rng_seed": None,
        }
        with pytest.raises(ValueError, match="premise on revalidation"):
            checkpoint_from_dict(data)


class TestRandomHunt:
    def test_zero_trials(self):
        cp = random_hunt(3, 5, 0, seed=1)
        assert cp.examined == 0
        assert cp.cursor == 0
        assert cp.rng_seed == 1

    def test_deterministic_for_fixed_seed(self):
        a = random_hunt(3, 5, 400, seed=99, sym_bias=0.6)
        b = random_hunt(3, 5, 400, seed=99, sym_bias=0.6)
        assert a.to_json() == b.to_json()

    def test_different_seeds_differ(self):
        a = random_hunt(3, 5, 400, seed=1)
        b = random_hunt(3, 5, 400, seed=2)
        assert a.examined == b.examined == 400
        assert a.to_json() != b.to_json()

    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            random_hunt(1, 4, 10, seed=0)
        with pytest.raises(ValueError):
            random_hunt(3, 0, 10, seed=0)
        with pytest.raises(ValueError):
            random_hunt(3, 4, -1, seed=0)
        with pytest.raises(ValueError):
            random_hunt(3, 4, 10, seed=0, sym_bias=1.5)

    def test_no_counterexamples_at_order3_n6(self):
        cp = random_hunt(3, 6, 100_000, seed=20250819, sym_bias=0.6)
        assert cp.counterexamples == ()
        assert cp.examined == 100_000
        assert cp.kernels_found == cp.premise_hits

    def test_pipeline_agrees_with_public_ops(self):
        cp = random_hunt(4, 5, 3000, seed=5, sym_bias=0.55)
        assert cp.kernels_found + len(cp.counterexamples) == cp.premise_hits
