import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import digraphs, random_digraph
from kernelhunt import (
    Cycle,
    check_disjoint_lemma_instance,
    check_path_pair_lemmas,
    check_small_cycle_symmetry,
    closure,
    closure_cycles_have_symmetric_arc,
    conjecture_premise,
    duchet_premise,
    make_digraph,
    threshold,
)
from kernelhunt.families import build_h_k
from kernelhunt.harness import cursor_space, decode_cursor
from kernelhunt.premises import (
    _cycle_table,
    _flat_from_masks,
    _long_cycles_all_symmetric_flat,
    _premise_holds_flat,
    _premise_worst_flat,
    _small_cycle_violation_flat,
    _threshold_row,
)


def directed_cycle(n):
    return make_digraph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_symmetric(n):
    return make_digraph(n, [(u, v) for u in range(n) for v in range(n) if u != v])


def int_ceil(a, b):
    return -(-a // b)


class TestThreshold:
    def test_order_two_always_one(self):
        assert all(threshold(2, length) == 1 for length in range(2, 40))

    def test_anchor_values(self):
        assert threshold(4, 6) == 5
        assert threshold(3, 5) == 4
        for length in (3, 4, 5):
            assert threshold(4, length) == length

    def test_formula(self):
        for k in range(2, 12):
            for length in range(2, 40):
                assert threshold(k, length) == int_ceil((k - 2) * length, k - 1) + 1

    def test_monotone_in_length_and_order(self):
        for k in range(2, 9):
            values = [threshold(k, length) for length in range(2, 30)]
            assert values == sorted(values)
        for length in range(2, 30):
            values = [threshold(k, length) for k in range(2, 9)]
            assert values == sorted(values)

    def test_validation(self):
        with pytest.raises(ValueError):
            threshold(1, 3)
        with pytest.raises(ValueError):
            threshold(3, 1)


class TestDuchetPremise:
    def test_directed_triangle_fails(self):
        assert not duchet_premise(directed_cycle(3))

    def test_symmetric_digraph_holds(self):
        assert duchet_premise(complete_symmetric(4))

    @given(digraphs())
    def test_matches_cycle_scan(self, d):
        assert duchet_premise(d) == oracles.brute_every_cycle_has_symmetric_arc(d)

    @given(digraphs(max_n=5))
    @settings(max_examples=60)
    def test_equivalent_to_order_two_premise(self, d):
        assert conjecture_premise(d, 2).holds == duchet_premise(d)


class TestConjecturePremise:
    def test_family_order3_off_by_one(self):
        verdict = conjecture_premise(build_h_k(3).digraph, 3)
        assert not verdict.holds
        worst = verdict.worst
        assert worst.length == 6
        assert worst.sym_count == 3
        assert worst.threshold == 4
        assert worst.margin == -1

    def test_symmetric_triangle_is_tight_at_order3(self):
        verdict = conjecture_premise(complete_symmetric(3), 3)
        assert verdict.holds
        assert verdict.worst.margin == 0

    def test_fully_symmetric_holds_at_small_orders(self):
        for k in (2, 3, 4):
            assert conjecture_premise(complete_symmetric(4), k).holds

    def test_acyclic_holds_vacuously(self):
        d = make_digraph(3, [(0, 1), (0, 2)])
        verdict = conjecture_premise(d, 4)
        assert verdict.holds
        assert verdict.worst is None
        assert verdict.cycles_checked == 0

    def test_asymmetric_cycle_short_circuits(self):
        verdict = conjecture_premise(directed_cycle(5), 3)
        assert not verdict.holds
        assert verdict.cycles_checked == 1
        assert verdict.worst.sym_count == 0

    def test_order_below_two_rejected(self):
        with pytest.raises(ValueError):
            conjecture_premise(directed_cycle(3), 1)

    @given(digraphs(max_n=5), st.integers(2, 4))
    @settings(max_examples=60)
    def test_matches_brute_force(self, d, k):
        assert conjecture_premise(d, k).holds == oracles.brute_premise(d, k, threshold)

    @given(digraphs(max_n=5), st.integers(2, 4))
    @settings(max_examples=60)
    def test_worst_margin_is_the_minimum(self, d, k):
        verdict = conjecture_premise(d, k)
        margins = [
            oracles.brute_sym_count(d, seq) - threshold(k, len(seq))
            for seq in oracles.brute_cycles(d)
            if len(seq) >= 3
        ]
        if not margins:
            assert verdict.worst is None
        elif verdict.holds:
            assert verdict.worst.margin == min(margins) >= 0
        else:
            # the scan may stop at the first violation it meets
            assert verdict.worst.margin < 0 and min(margins) < 0


class TestClosureCycleConclusion:
    def test_directed_triangle_closure_is_symmetric(self):
        verdict = closure_cycles_have_symmetric_arc(directed_cycle(3), 3)
        assert verdict.holds

    def test_directed_7cycle_fails(self):
        verdict = closure_cycles_have_symmetric_arc(directed_cycle(7), 3)
        assert not verdict.holds
        assert verdict.worst.sym_count == 0

    def test_unsupported_order_rejected(self):
        with pytest.raises(ValueError):
            closure_cycles_have_symmetric_arc(directed_cycle(3), 5)

    def test_premise_holders_never_fail_small(self):
        n = 4
        for k in (3, 4):
            for cursor in range(0, cursor_space(n), 7):
                d = decode_cursor(n, cursor)
                if conjecture_premise(d, k).holds:
                    assert closure_cycles_have_symmetric_arc(d, k).holds


class TestSmallCycleSymmetry:
    def test_fully_symmetric_clean(self):
        assert check_small_cycle_symmetry(complete_symmetric(4)) == []

    def test_directed_5cycle_reported(self):
        violations = check_small_cycle_symmetry(directed_cycle(5))
        assert len(violations) == 1
        report = violations[0]
        assert report.length == 5
        assert report.sym_count == 0
        assert report.threshold == 5

    def test_six_cycle_with_chord_reports_computed_values(self):
        arcs = [(i, (i + 1) % 6) for i in range(6)] + [(3, 0), (0, 3)]
        d = make_digraph(6, arcs)
        violations = check_small_cycle_symmetry(d)
        assert violations
        assert all(r.margin < 0 for r in violations)

    def test_requirement_caps_at_five(self):
        arcs = []
        for i in range(6):
            arcs.append((i, (i + 1) % 6))
            if i != 0:
                arcs.append(((i + 1) % 6, i))
        d = make_digraph(6, arcs)
        # the 6-cycle has five symmetric arcs, exactly the requirement
        assert all(r.length != 6 for r in check_small_cycle_symmetry(d))


class TestPathPairLemmas:
    def test_fully_symmetric_clean(self):
        assert check_path_pair_lemmas(complete_symmetric(4)) == []

    def test_directed_5cycle_violates(self):
        violations = check_path_pair_lemmas(directed_cycle(5))
        assert violations
        v = violations[0]
        assert len(v.nonsymmetric) > v.allowed
        assert v.forward[0] == v.u and v.forward[-1] == v.v
        assert v.back[0] == v.v and v.back[-1] == v.u

    def test_total_length_six_allows_one(self):
        # digon chain: every return path reuses symmetric arcs, no violation
        arcs = []
        for i in range(6):
            arcs.append((i, (i + 1) % 7))
            arcs.append(((i + 1) % 7, i))
        arcs.append((6, 0))
        d = make_digraph(7, arcs)
        for v in check_path_pair_lemmas(d):
            total = (len(v.forward) - 1) + (len(v.back) - 1)
            assert total <= 6

    def test_premise_holders_clean_sampled(self, rng):
        found = 0
        while found < 25:
            d = random_digraph(rng, 5, p_sym=0.55, p_one=0.1)
            if not conjecture_premise(d, 4).holds:
                continue
            found += 1
            assert check_path_pair_lemmas(d) == []


class TestDisjointLemmaInstance:
    def test_cycle_of_original_arcs(self):
        d = complete_symmetric(3)
        cyc = Cycle((0, 1, 2))
        paths = [(0, 1), (1, 2), (2, 0)]
        assert check_disjoint_lemma_instance(d, 3, cyc, paths)

    def test_family_closure_cycle_is_computed_not_asserted(self):
        # the family digraph fails the premise, so either outcome is legal
        inst = build_h_k(3)
        outcome = check_disjoint_lemma_instance(
            inst.digraph,
            3,
            Cycle((0, 2, 4)),
            [(0, 1, 2), (2, 3, 4), (4, 5, 0)],
        )
        assert isinstance(outcome, bool)

    def test_non_disjoint_realization_vacuous(self):
        d = make_digraph(4, [(0, 3), (3, 1), (1, 3), (3, 0), (0, 1), (1, 2), (2, 0), (0, 2), (2, 1), (1, 0)])
        cyc = Cycle((0, 1, 2))
        # both detours pass through vertex 3
        paths = [(0, 3, 1), (1, 2), (2, 0)]
        assert check_disjoint_lemma_instance(d, 3, cyc, paths)

    def test_path_validation(self):
        d = complete_symmetric(4)
        cyc = Cycle((0, 1, 2))
        with pytest.raises(ValueError):
            check_disjoint_lemma_instance(d, 3, cyc, [(0, 1), (1, 2)])
        with pytest.raises(ValueError):
            check_disjoint_lemma_instance(d, 3, cyc, [(0, 2), (1, 2), (2, 0)])
        with pytest.raises(ValueError):
            check_disjoint_lemma_instance(d, 3, cyc, [(0, 3, 2, 1), (1, 2), (2, 0)])
        with pytest.raises(ValueError):
            check_disjoint_lemma_instance(
                d, 3, cyc, [(0, 3, 3, 1), (1, 2), (2, 0)]
            )

    def test_arc_membership_validated(self):
        d = make_digraph(3, [(0, 1), (1, 2), (2, 0)])
        with pytest.raises(ValueError):
            check_disjoint_lemma_instance(d, 3, Cycle((0, 1, 2)), [(0, 1), (1, 2), (2, 1, 0)])


class TestFlatFastPath:
    def survey(self, d, k):
        flat = _flat_from_masks(d.n, d.out_masks)
        table = _cycle_table(d.n)
        thr = _threshold_row(k, d.n)
        return flat, table, thr

    def test_exhaustive_n4_agreement(self):
        n = 4
        table = _cycle_table(n)
        for k in (2, 3, 4):
            thr = _threshold_row(k, n)
            for cursor in range(cursor_space(n)):
                d = decode_cursor(n, cursor)
                flat = _flat_from_masks(n, d.out_masks)
                public = conjecture_premise(d, k)
                assert _premise_holds_flat(flat, table, thr) == public.holds
                holds, worst, _checked = _premise_worst_flat(flat, table, thr)
                assert holds == public.holds
                if public.worst is None:
                    assert worst is None
                else:
                    margins = [
                        oracles.brute_sym_count(d, seq) - threshold(k, len(seq))
                        for seq in oracles.brute_cycles(d)
                        if len(seq) >= 3
                    ]
                    assert worst[0] == min(margins)

    def test_random_larger_agreement(self, rng):
        for n in (5, 6, 7):
            table = _cycle_table(n)
            for _ in range(60):
                d = random_digraph(rng, n)
                flat = _flat_from_masks(n, d.out_masks)
                for k in (2, 3, 4):
                    thr = _threshold_row(k, n)
                    assert (
                        _premise_holds_flat(flat, table, thr)
                        == conjecture_premise(d, k).holds
                    )

    def test_long_cycle_check_matches_public(self, rng):
        for _ in range(120):
            d = random_digraph(rng, 5)
            for k in (3, 4):
                h = closure(d, k - 1)
                cflat = _flat_from_masks(h.n, h.out_masks)
                flat_violation = _long_cycles_all_symmetric_flat(cflat, _cycle_table(h.n))
                public = closure_cycles_have_symmetric_arc(d, k)
                assert (flat_violation is None) == public.holds

    def test_small_cycle_check_matches_public(self, rng):
        for _ in range(120):
            d = random_digraph(rng, 5, p_sym=0.45, p_one=0.35)
            flat = _flat_from_masks(d.n, d.out_masks)
            flat_violation = _small_cycle_violation_flat(flat, _cycle_table(d.n))
            public = check_small_cycle_symmetry(d)
            assert (flat_violation is None) == (not public)
