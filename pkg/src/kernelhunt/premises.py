"""Symmetric-arc density conditions on the cycles of a digraph.

The central quantity is a per-cycle threshold: a cycle of length L is
asked to carry at least ``ceil((k-2) * L / (k-1)) + 1`` symmetric arcs
for the order k under test (1 for k = 2).  A digraph satisfies the
conjecture premise for k when every simple cycle of length at least
three clears its threshold; digons are exempt since both of their arcs
are symmetric by definition.  The k = 2 case degenerates to the classic
sufficient condition for kernel-perfectness: every cycle carries a
symmetric arc, equivalently the asymmetric arcs form no cycle.

Margins are reported as ``symmetric count - threshold``, so a verdict
holds exactly when the minimum margin over checked cycles is
nonnegative.  All arithmetic is exact integer arithmetic.

Beside the public checks on Digraph values, this module keeps flat
single-integer adjacency helpers (bit u*n+v set iff arc (u, v) present)
with precomputed cycle tables for small n.  The exhaustive sweeps run on
those; cross-checks against the public path are part of the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .digraph import (
    INF,
    Arc,
    Cycle,
    Digraph,
    _bits,
    _cycle_seqs,
    asymmetric_part_is_acyclic,
    closure,
    distances,
    make_digraph,
)

# Flat cycle tables are quadratic in bits and factorial in entries; seven
# vertices (2344 entries, 49-bit masks) is the largest size the sweeps use.
_TABLE_MAX_N = 7


def threshold(k: int, length: int) -> int:
    """Symmetric arcs demanded of a cycle of the given length at order k.

    Exact integer ceiling; k = 2 always demands a single symmetric arc.
    """
    if k < 2:
        raise ValueError("order k must be >= 2")
    if length < 2:
        raise ValueError("cycle length must be >= 2")
    return (k - 2) * (length + 1) // (k - 1) + 1


@dataclass(frozen=True)
class CycleReport:
    """One cycle measured against a symmetric-arc requirement."""

    cycle: Cycle
    length: int
    sym_count: int
    threshold: int
    margin: int


@dataclass(frozen=True)
class PremiseVerdict:
    """Outcome of a cycle-condition check.

    ``worst`` carries the minimum-margin cycle among those checked (or a
    violating cycle when a check short-circuits); it is absent only when
    no cycle was subject to the condition.  ``holds`` is equivalent to
    ``worst is None or worst.margin >= 0``.
    """

    holds: bool
    worst: CycleReport | None
    cycles_checked: int


def duchet_premise(d: Digraph) -> bool:
    """Whether every directed cycle of d has a symmetric arc.

    Decided in linear time: a cycle free of symmetric arcs exists exactly
    when the subdigraph of asymmetric arcs has a cycle.
    """
    return asymmetric_part_is_acyclic(d)


def _sym_count_seq(out: tuple[int, ...] | list[int], seq: tuple[int, ...]) -> int:
    count = 0
    last = len(seq) - 1
    for i, x in enumerate(seq):
        y = seq[i + 1] if i < last else seq[0]
        # arc (x, y); symmetric iff (y, x) also present
        if (out[y] >> x) & 1:
            count += 1
    return count


def _report(d_out: tuple[int, ...] | list[int], seq: tuple[int, ...], required: int) -> CycleReport:
    sym = _sym_count_seq(d_out, seq)
    return CycleReport(
        cycle=Cycle(seq),
        length=len(seq),
        sym_count=sym,
        threshold=required,
        margin=sym - required,
    )


def conjecture_premise(d: Digraph, k: int) -> PremiseVerdict:
    """Check every simple cycle of length >= 3 against its threshold.

    Digons are exempt.  The verdict's ``worst`` is the first cycle
    attaining the minimum margin in enumeration order.  When the
    asymmetric arcs already contain a cycle the premise cannot hold (that
    cycle has zero symmetric arcs), so the check short-circuits and
    reports one such cycle instead of enumerating everything.
    """
    if k < 2:
        raise ValueError("order k must be >= 2")
    if not asymmetric_part_is_acyclic(d):
        asym = make_digraph(
            d.n, (a for a in d.arcs if (a[1], a[0]) not in d.arcs)
        )
        seq = next(_cycle_seqs(asym.n, asym.out_masks))
        return PremiseVerdict(
            holds=False,
            worst=_report(d.out_masks, seq, threshold(k, len(seq))),
            cycles_checked=1,
        )
    worst: CycleReport | None = None
    checked = 0
    for seq in _cycle_seqs(d.n, d.out_masks):
        if len(seq) < 3:
            continue
        checked += 1
        report = _report(d.out_masks, seq, threshold(k, len(seq)))
        if worst is None or report.margin < worst.margin:
            worst = report
    holds = worst is None or worst.margin >= 0
    return PremiseVerdict(holds=holds, worst=worst, cycles_checked=checked)


def closure_cycles_have_symmetric_arc(d: Digraph, k: int) -> PremiseVerdict:
    """Whether every simple cycle of the (k-1)-step closure has a symmetric arc.

    This is the conclusion the premise is known to force for k in {3, 4};
    other orders are rejected.  Cycles of every length >= 2 are checked
    against a required count of one, and the first violating cycle, if
    any, short-circuits the scan.
    """
    if k not in (3, 4):
        raise ValueError("the closure-cycle conclusion is checked for k in {3, 4} only")
    h = closure(d, k - 1)
    worst: CycleReport | None = None
    checked = 0
    for seq in _cycle_seqs(h.n, h.out_masks):
        checked += 1
        report = _report(h.out_masks, seq, 1)
        if report.margin < 0:
            return PremiseVerdict(holds=False, worst=report, cycles_checked=checked)
        if worst is None or report.margin < worst.margin:
            worst = report
    return PremiseVerdict(holds=True, worst=worst, cycles_checked=checked)


def _small_cycle_requirement(length: int) -> int:
    # Full symmetry up to length five, at least five symmetric arcs beyond.
    return length if length <= 5 else 5


def check_small_cycle_symmetry(d: Digraph) -> list[CycleReport]:
    """Violations of the small-cycle symmetry pattern.

    Every cycle of length at most five must be fully symmetric and every
    longer cycle must carry at least five symmetric arcs.  Returns one
    report per violating cycle (threshold holds the required count), in
    enumeration order; digraphs satisfying the order-4 premise are
    expected to produce none.
    """
    violations: list[CycleReport] = []
    for seq in _cycle_seqs(d.n, d.out_masks):
        report = _report(d.out_masks, seq, _small_cycle_requirement(len(seq)))
        if report.margin < 0:
            violations.append(report)
    return violations


@dataclass(frozen=True)
class PathPairViolation:
    """A forward/back path pair carrying more asymmetric arcs than allowed."""

    u: int
    v: int
    forward: tuple[int, ...]
    back: tuple[int, ...]
    nonsymmetric: tuple[Arc, ...]
    allowed: int


def _simple_paths_up_to(d: Digraph, max_len: int) -> dict[Arc, list[tuple[int, ...]]]:
    """All simple paths of length 1..max_len, grouped by (source, target)."""
    by_pair: dict[Arc, list[tuple[int, ...]]] = {}
    path: list[int] = []

    def extend(u: int, visited: int) -> None:
        for v in _bits(d.out_masks[u] & ~visited):
            path.append(v)
            by_pair.setdefault((path[0], v), []).append(tuple(path))
            if len(path) <= max_len:
                extend(v, visited | (1 << v))
            path.pop()

    for s in range(d.n):
        path.clear()
        path.append(s)
        extend(s, 1 << s)
    return by_pair


def _path_arcs(path: tuple[int, ...]) -> list[Arc]:
    return [(path[i], path[i + 1]) for i in range(len(path) - 1)]


def check_path_pair_lemmas(d: Digraph) -> list[PathPairViolation]:
    """Scan forward/back path pairs for asymmetric arcs beyond the allowance.

    For distinct vertices u, v, every pair of a simple u-v path P and a
    simple v-u path Q with combined length at most six is examined: with
    combined length up to five no arc of P or Q may be asymmetric, at
    exactly six at most one may be.  Returns every violating pair.

    Any violating pair's arcs lie on the closed walk P followed by Q, so
    an asymmetric arc (x, y) can only offend if x is reachable from y.
    When no asymmetric arc lies on a closed walk the scan is skipped.
    """
    asym = {a for a in d.arcs if (a[1], a[0]) not in d.arcs}
    if asym:
        dist = distances(d)
        if all(dist.rows[y][x] == INF for (x, y) in asym):
            asym = set()
    if not asym:
        return []
    by_pair = _simple_paths_up_to(d, 5)
    violations: list[PathPairViolation] = []
    for u in range(d.n):
        for v in range(d.n):
            if u == v:
                continue
            for p in by_pair.get((u, v), ()):
                budget = 6 - (len(p) - 1)
                if budget < 1:
                    continue
                for q in by_pair.get((v, u), ()):
                    total = (len(p) - 1) + (len(q) - 1)
                    if total > 6:
                        continue
                    offending = sorted(set(_path_arcs(p) + _path_arcs(q)) & asym)
                    allowed = 0 if total <= 5 else 1
                    if len(offending) > allowed:
                        violations.append(
                            PathPairViolation(
                                u=u,
                                v=v,
                                forward=p,
                                back=q,
                                nonsymmetric=tuple(offending),
                                allowed=allowed,
                            )
                        )
    return violations


def check_disjoint_lemma_instance(
    d: Digraph,
    k: int,
    cycle: Cycle,
    paths: Sequence[Sequence[int]],
) -> bool:
    """Check one realization of a closure cycle by short paths of d.

    ``cycle`` lives in the (k-1)-step closure and ``paths[i]`` must be a
    simple path of d, of length 1..k-1, from the i-th cycle vertex to the
    next.  The checked implication: if the paths are mutually internally
    disjoint and avoid the cycle's vertices, the cycle has a symmetric
    arc in the closure.  Returns the implication's truth, so a
    non-disjoint realization is vacuously true.
    """
    if k < 2:
        raise ValueError("order k must be >= 2")
    arcs = cycle.arcs()
    if len(paths) != len(arcs):
        raise ValueError(f"expected {len(arcs)} paths, one per cycle arc, got {len(paths)}")
    internals: list[set[int]] = []
    for (x, y), raw in zip(arcs, paths):
        p = tuple(raw)
        if len(p) < 2 or p[0] != x or p[-1] != y:
            raise ValueError(f"path {p} does not run from {x} to {y}")
        if len(p) - 1 > k - 1:
            raise ValueError(f"path {p} is longer than {k - 1}")
        if len(set(p)) != len(p):
            raise ValueError(f"path {p} repeats a vertex")
        for a, b in zip(p, p[1:]):
            if (a, b) not in d.arcs:
                raise ValueError(f"path step ({a}, {b}) is not an arc of the digraph")
        internals.append(set(p[1:-1]))
    on_cycle = set(cycle.vertices)
    disjoint = all(not (inner & on_cycle) for inner in internals)
    if disjoint:
        for i in range(len(internals)):
            for j in range(i + 1, len(internals)):
                if internals[i] & internals[j]:
                    disjoint = False
                    break
            if not disjoint:
                break
    if not disjoint:
        return True
    h = closure(d, k - 1)
    return any((y, x) in h.arcs for (x, y) in arcs)


# -- flat adjacency fast path -------------------------------------------------
#
# A digraph on n <= _TABLE_MAX_N vertices is one integer: bit u*n+v set iff
# arc (u, v) present.  The cycle table for n lists every possible simple
# cycle sequence of length >= 3 once, with its arc mask and reversed-arc
# mask, in the same order the public enumerator would find it.


@lru_cache(maxsize=None)
def _cycle_table(n: int) -> tuple[tuple[int, int, int, tuple[int, ...]], ...]:
    """Entries (length, arc_mask, reversed_mask, seq) for all cycles >= 3."""
    if n > _TABLE_MAX_N:
        raise ValueError(f"cycle table supports n <= {_TABLE_MAX_N}, got {n}")
    full = (1 << n) - 1
    complete = tuple(full & ~(1 << u) for u in range(n))
    entries = []
    for seq in _cycle_seqs(n, complete):
        if len(seq) < 3:
            continue
        amask = rmask = 0
        last = len(seq) - 1
        for i, x in enumerate(seq):
            y = seq[i + 1] if i < last else seq[0]
            amask |= 1 << (x * n + y)
            rmask |= 1 << (y * n + x)
        entries.append((len(seq), amask, rmask, seq))
    return tuple(entries)


def _threshold_row(k: int, n: int) -> tuple[int, ...]:
    """thresholds[L] for L in 0..n (entries below L=2 are placeholders)."""
    return tuple(threshold(k, L) if L >= 2 else 0 for L in range(n + 1))


def _flat_from_masks(n: int, out: Iterable[int]) -> int:
    flat = 0
    for u, row in enumerate(out):
        flat |= row << (u * n)
    return flat


def _rows_from_flat(n: int, flat: int) -> list[int]:
    full = (1 << n) - 1
    return [(flat >> (u * n)) & full for u in range(n)]


def _premise_holds_flat(
    adj: int,
    table: tuple[tuple[int, int, int, tuple[int, ...]], ...],
    thr: tuple[int, ...],
) -> bool:
    """Early-exit premise test over a flat adjacency integer."""
    for length, amask, rmask, _seq in table:
        if adj & amask == amask and (adj & rmask).bit_count() < thr[length]:
            return False
    return True


def _premise_worst_flat(
    adj: int,
    table: tuple[tuple[int, int, int, tuple[int, ...]], ...],
    thr: tuple[int, ...],
) -> tuple[bool, tuple[int, tuple[int, ...], int, int] | None, int]:
    """Full scan variant returning (holds, (margin, seq, length, sym), checked)."""
    checked = 0
    worst: tuple[int, tuple[int, ...], int, int] | None = None
    for length, amask, rmask, seq in table:
        if adj & amask == amask:
            checked += 1
            sym = (adj & rmask).bit_count()
            margin = sym - thr[length]
            if worst is None or margin < worst[0]:
                worst = (margin, seq, length, sym)
    holds = worst is None or worst[0] >= 0
    return holds, worst, checked


def _long_cycles_all_symmetric_flat(
    adj: int,
    table: tuple[tuple[int, int, int, tuple[int, ...]], ...],
) -> tuple[int, ...] | None:
    """First cycle (length >= 3) of the flat digraph with no symmetric arc."""
    for _length, amask, rmask, seq in table:
        if adj & amask == amask and adj & rmask == 0:
            return seq
    return None


def _small_cycle_violation_flat(
    adj: int,
    table: tuple[tuple[int, int, int, tuple[int, ...]], ...],
) -> tuple[int, ...] | None:
    """First cycle breaking the small-cycle symmetry pattern, if any."""
    for length, amask, rmask, seq in table:
        if adj & amask == amask:
            required = length if length <= 5 else 5
            if (adj & rmask).bit_count() < required:
                return seq
    return None
