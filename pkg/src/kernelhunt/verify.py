"""Named verification items backing the package's advertised guarantees.

Each item measures one guarantee end to end, at full advertised scale by
default, and reports pass/fail with a short account of what was covered.
The exhaustive items share the flat scan core of the search harness; the
fast path is cross-checked against the public object-level operations
both inside the scan (on a fixed cursor cadence) and in the unit tests.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass

from . import families, premises
from .digraph import Cycle, asymmetric_part_is_acyclic, closure, make_digraph
from .formats import write_edge_list
from .harness import _run_scan, cursor_space, decode_cursor, hunt, pair_list
from .kernels import all_k_kernels, find_kernel, is_kernel_perfect
from .premises import (
    _cycle_table,
    _flat_from_masks,
    _premise_holds_flat,
    _simple_paths_up_to,
    _threshold_row,
    check_disjoint_lemma_instance,
    duchet_premise,
)


@dataclass(frozen=True)
class ItemResult:
    name: str
    passed: bool
    details: str
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: {self.details}"


@dataclass(frozen=True)
class SweepOutcome:
    """Result of exhaustively sweeping all labeled digraphs up to n_max.

    Kernel failures are premise-satisfying digraphs without an order-k
    kernel; ``violations`` holds the per-check offender lists, all as
    (n, cursor, edge list) triples.
    """

    k: int
    n_max: int
    examined: int
    premise_hits: int
    kernels_found: int
    kernel_failures: tuple[tuple[int, int, str], ...]
    violations: dict[str, tuple[tuple[int, int, str], ...]]
    per_n: tuple[tuple[int, int, int], ...]
    seconds: float


def theorem_sweep(
    k: int,
    n_max: int = 5,
    shards: int = 1,
    collect: tuple[str, ...] = ("closure_cycles",),
) -> SweepOutcome:
    """Sweep every labeled digraph on 1..n_max vertices at order k.

    For each premise-satisfying digraph the scan verifies an order-k
    kernel exists and runs the extra ``collect`` checks.
    """
    t0 = time.monotonic()
    examined = hits = kernels = 0
    kernel_failures: list[tuple[int, int, str]] = []
    violations: dict[str, list[tuple[int, int, str]]] = {kind: [] for kind in collect}
    per_n: list[tuple[int, int, int]] = []
    for n in range(1, n_max + 1):
        ex, h, kern, cex, viol = _run_scan(
            k, n, 0, cursor_space(n), shards=shards, collect=tuple(collect)
        )
        examined += ex
        hits += h
        kernels += kern
        kernel_failures.extend((n, c, text) for c, text in cex)
        for kind in collect:
            violations[kind].extend((n, c, text) for c, text in viol[kind])
        per_n.append((n, ex, h))
    return SweepOutcome(
        k=k,
        n_max=n_max,
        examined=examined,
        premise_hits=hits,
        kernels_found=kernels,
        kernel_failures=tuple(kernel_failures),
        violations={kind: tuple(v) for kind, v in violations.items()},
        per_n=tuple(per_n),
        seconds=time.monotonic() - t0,
    )


def _timed(name: str, passed: bool, details: str, t0: float) -> ItemResult:
    return ItemResult(name=name, passed=passed, details=details, seconds=time.monotonic() - t0)


def family_reports(orders: tuple[int, ...] = (3, 4, 5, 6)) -> dict[int, families.FamilyReport]:
    return {k: families.verify_h_k(k) for k in orders}


def verify_family(
    orders: tuple[int, ...] = (3, 4, 5, 6),
    reports: dict[int, families.FamilyReport] | None = None,
) -> ItemResult:
    """Every family member is exactly as sharp as advertised."""
    t0 = time.monotonic()
    if reports is None:
        reports = family_reports(orders)
    bad = {k: r.mismatches for k, r in reports.items() if not r.ok}
    details = (
        f"orders {list(orders)}: vertex counts, unique long cycle, symmetric-arc count,"
        f" premise margin -1 and kernel absence all confirmed"
        if not bad
        else f"mismatches: {bad}"
    )
    return _timed("family-sharpness", not bad, details, t0)


def verify_sharpness_narrative(
    orders: tuple[int, ...] = (3, 4, 5, 6),
    reports: dict[int, families.FamilyReport] | None = None,
) -> ItemResult:
    """The family report itself states the margin of -1 alongside kernel absence."""
    t0 = time.monotonic()
    if reports is None:
        reports = family_reports(orders)
    problems = []
    for k, r in sorted(reports.items()):
        text = r.summary()
        if r.premise_margin != -1 or not r.kernel_absent:
            problems.append(f"k={k}: margin={r.premise_margin} kernels={r.k_kernel_count}")
        elif "premise margin -1" not in text or f"no {k}-kernel" not in text:
            problems.append(f"k={k}: summary does not state the sharpness facts")
    details = (
        f"orders {sorted(reports)}: each report states premise margin -1 together with kernel absence"
        if not problems
        else "; ".join(problems)
    )
    return _timed("sharpness-narrative", not problems, details, t0)


def verify_closure_reduction(n: int = 4, orders: tuple[int, ...] = (2, 3, 4)) -> ItemResult:
    """Subset-scan oracle and closure-plus-kernel search agree on existence.

    Both sides are computed independently for every labeled digraph on n
    vertices: the oracle scans subsets against the distance matrix, the
    other side runs the backtracking kernel search on the (k-1)-closure.
    """
    t0 = time.monotonic()
    space = cursor_space(n)
    mismatches: list[tuple[int, int]] = []
    with_kernel = {k: 0 for k in orders}
    for cursor in range(space):
        d = decode_cursor(n, cursor)
        for k in orders:
            oracle = bool(all_k_kernels(d, k))
            reduced = find_kernel(closure(d, k - 1)) is not None
            if oracle != reduced:
                mismatches.append((cursor, k))
            elif oracle:
                with_kernel[k] += 1
    details = (
        f"{space} digraphs x orders {list(orders)}: 0 mismatches;"
        f" digraphs with kernels {with_kernel}"
        if not mismatches
        else f"{len(mismatches)} mismatches, first {mismatches[:5]}"
    )
    return _timed("closure-reduction", not mismatches, details, t0)


def verify_duchet(n: int = 4) -> ItemResult:
    """Symmetric-arc-on-every-cycle implies kernel-perfect, exhaustively."""
    t0 = time.monotonic()
    space = cursor_space(n)
    holders = 0
    failures: list[int] = []
    for cursor in range(space):
        d = decode_cursor(n, cursor)
        if duchet_premise(d):
            holders += 1
            if not is_kernel_perfect(d):
                failures.append(cursor)
    details = (
        f"{space} digraphs on {n} vertices; {holders} satisfy the premise,"
        f" all kernel-perfect"
        if not failures
        else f"{len(failures)} premise-satisfying digraphs not kernel-perfect: {failures[:5]}"
    )
    return _timed("duchet-kernel-perfect", not failures, details, t0)


def _sweep_details(outcome: SweepOutcome) -> str:
    per_n = ", ".join(f"n={n}: {h}/{ex}" for n, ex, h in outcome.per_n)
    return (
        f"k={outcome.k}: {outcome.examined} digraphs, {outcome.premise_hits} premise hits"
        f" ({per_n}), kernels found for all hits"
    )


def verify_closure_theorem(
    k: int,
    n_max: int = 5,
    shards: int = 1,
    sweep: SweepOutcome | None = None,
) -> ItemResult:
    """Premise at order k forces symmetric arcs on every closure cycle and a k-kernel.

    Exhaustive over all labeled digraphs on up to n_max vertices.
    """
    if k not in (3, 4):
        raise ValueError("the closure-cycle conclusion is verified for k in {3, 4}")
    t0 = time.monotonic()
    if sweep is None or sweep.k != k or "closure_cycles" not in sweep.violations:
        sweep = theorem_sweep(k, n_max=n_max, shards=shards, collect=("closure_cycles",))
    bad_cycles = sweep.violations["closure_cycles"]
    bad_kernels = sweep.kernel_failures
    passed = not bad_cycles and not bad_kernels
    details = (
        _sweep_details(sweep) + ", every closure cycle carries a symmetric arc"
        if passed
        else f"closure-cycle violations {len(bad_cycles)}, kernel failures {len(bad_kernels)}"
    )
    return _timed(f"order-{k}-closure-cycles", passed, details, t0)


def verify_small_cycles(
    n_max: int = 5,
    shards: int = 1,
    sweep: SweepOutcome | None = None,
) -> ItemResult:
    """Threshold table spot-values plus the small-cycle pattern on the order-4 sweep."""
    t0 = time.monotonic()
    expected = {3: 3, 4: 4, 5: 5, 6: 5}
    table_bad = {
        length: premises.threshold(4, length)
        for length, want in expected.items()
        if premises.threshold(4, length) != want
    }
    if sweep is None or sweep.k != 4 or "small_cycles" not in sweep.violations:
        sweep = theorem_sweep(4, n_max=n_max, shards=shards, collect=("small_cycles",))
    violations = sweep.violations["small_cycles"]
    passed = not table_bad and not violations
    details = (
        f"threshold(4, L) = {expected}; {sweep.premise_hits} premise hits keep cycles"
        f" <= 5 fully symmetric"
        if passed
        else f"threshold deviations {table_bad}, sweep violations {len(violations)}"
    )
    return _timed("small-cycle-symmetry", passed, details, t0)


def verify_path_pairs(
    n_max: int = 5,
    shards: int = 1,
    sweep: SweepOutcome | None = None,
) -> ItemResult:
    """Forward/back path pairs on order-4 premise hits stay within the allowance."""
    t0 = time.monotonic()
    if sweep is None or sweep.k != 4 or "path_pairs" not in sweep.violations:
        sweep = theorem_sweep(4, n_max=n_max, shards=shards, collect=("path_pairs",))
    violations = sweep.violations["path_pairs"]
    passed = not violations
    details = (
        f"{sweep.premise_hits} premise hits scanned; no path pair exceeds its allowance"
        if passed
        else f"{len(violations)} digraphs with offending path pairs"
    )
    return _timed("path-pair-symmetry", passed, details, t0)


def verify_disjoint_realizations(
    trials: int = 100_000,
    seed: int = 20250819,
    orders: tuple[int, ...] = (3, 4),
    n_range: tuple[int, int] = (4, 7),
    max_candidates: int | None = None,
) -> ItemResult:
    """Randomized internally-disjoint realizations always force a symmetric arc.

    Samples premise-satisfying digraphs, realizes closure cycles by short
    paths of the base digraph chosen at random, and counts only
    realizations whose paths are internally disjoint and avoid the cycle.
    """
    t0 = time.monotonic()
    rng = random.Random(seed)
    if max_candidates is None:
        max_candidates = 200 * trials
    done = 0
    accepted = 0
    candidates = 0
    failures: list[str] = []
    while done < trials:
        candidates += 1
        if candidates > max_candidates:
            raise RuntimeError("sampling budget exhausted before reaching the trial count")
        k = orders[rng.randrange(len(orders))]
        n = rng.randint(*n_range)
        arcs: list[tuple[int, int]] = []
        for u, v in pair_list(n):
            r = rng.random()
            if r < 0.55:
                arcs.append((u, v))
                arcs.append((v, u))
            elif r < 0.85:
                pass
            elif r < 0.925:
                arcs.append((u, v))
            else:
                arcs.append((v, u))
        d = make_digraph(n, arcs)
        if not asymmetric_part_is_acyclic(d):
            continue
        flat = _flat_from_masks(n, d.out_masks)
        if not _premise_holds_flat(flat, _cycle_table(n), _threshold_row(k, n)):
            continue
        accepted += 1
        h = closure(d, k - 1)
        hflat = _flat_from_masks(n, h.out_masks)
        present = [
            seq
            for _length, amask, _rmask, seq in _cycle_table(n)
            if hflat & amask == amask
        ]
        if not present:
            continue
        if len(present) > 40:
            present = rng.sample(present, 40)
        paths_by_pair = _simple_paths_up_to(d, k - 1)
        for seq in present:
            cyc = Cycle(seq)
            cycle_vertices = set(seq)
            for _attempt in range(3):
                chosen: list[tuple[int, ...]] = []
                for x, y in cyc.arcs():
                    options = paths_by_pair.get((x, y), ())
                    chosen.append(options[rng.randrange(len(options))])
                internals = [set(p[1:-1]) for p in chosen]
                disjoint = all(not (inner & cycle_vertices) for inner in internals)
                if disjoint:
                    seen: set[int] = set()
                    for inner in internals:
                        if inner & seen:
                            disjoint = False
                            break
                        seen |= inner
                if not disjoint:
                    continue
                done += 1
                if not check_disjoint_lemma_instance(d, k, cyc, chosen):
                    failures.append(
                        f"k={k} cycle={seq} digraph:\n{write_edge_list(d)}"
                    )
                if done >= trials:
                    break
            if done >= trials:
                break
    details = (
        f"{done} disjoint realizations over {accepted} premise-satisfying digraphs"
        f" ({candidates} sampled), every realized cycle has a symmetric closure arc"
        if not failures
        else f"{len(failures)} failing realizations, first:\n{failures[0]}"
    )
    return _timed("disjoint-path-realizations", not failures, details, t0)


def verify_harness_determinism(seed: int = 7, k: int = 3, n: int = 4) -> ItemResult:
    """Checkpoints are byte-identical across shard counts and kill-resume points."""
    t0 = time.monotonic()
    problems: list[str] = []
    baseline = hunt(k, n, shards=1)
    base_blob = baseline.to_json()
    for shards in (4, 8):
        blob = hunt(k, n, shards=shards).to_json()
        if blob != base_blob:
            problems.append(f"shards={shards} checkpoint differs")
    rng = random.Random(seed)
    cut_points = sorted(rng.sample(range(1, cursor_space(n)), 3))
    for cut in cut_points:
        partial = hunt(k, n, stop_cursor=cut)
        resumed = hunt(k, n, checkpoint=partial)
        if resumed.to_json() != base_blob:
            problems.append(f"resume at cursor {cut} differs")
    details = (
        f"k={k} n={n}: shard counts (1, 4, 8) byte-identical;"
        f" kill-and-resume at cursors {cut_points} reproduces the full run"
        f" ({baseline.premise_hits} hits, {baseline.kernels_found} kernels)"
        if not problems
        else "; ".join(problems)
    )
    return _timed("harness-determinism", not problems, details, t0)


def run_all(
    shards: int = 1,
    n_max: int = 5,
    trials: int = 100_000,
    seed: int = 20250819,
    family_orders: tuple[int, ...] = (3, 4, 5, 6),
) -> list[ItemResult]:
    """Run every verification item at the requested scale, in a fixed order."""
    results: list[ItemResult] = []
    reports = family_reports(family_orders)
    results.append(verify_family(family_orders, reports))
    results.append(verify_closure_reduction())
    results.append(verify_duchet())
    results.append(verify_closure_theorem(3, n_max=n_max, shards=shards))
    sweep4 = theorem_sweep(
        4, n_max=n_max, shards=shards, collect=("closure_cycles", "small_cycles", "path_pairs")
    )
    results.append(verify_closure_theorem(4, n_max=n_max, shards=shards, sweep=sweep4))
    results.append(verify_small_cycles(n_max=n_max, shards=shards, sweep=sweep4))
    results.append(verify_path_pairs(n_max=n_max, shards=shards, sweep=sweep4))
    results.append(verify_disjoint_realizations(trials=trials, seed=seed))
    results.append(verify_harness_determinism())
    results.append(verify_sharpness_narrative(family_orders, reports))
    return results
