"""Exhaustive and randomized hunts over labeled digraphs.

A labeled digraph on n vertices is encoded as a cursor: each unordered
vertex pair, in lexicographic order, contributes one base-4 digit (none,
forward, backward, both), with the first pair least significant.  The
full space for n is exactly ``4 ** (n*(n-1)/2)`` cursors, so any scan is
a cursor interval and can be split, resumed and merged deterministically.

The scan pipeline per digraph: a linear-time pre-filter (the asymmetric
arcs must be acyclic, necessary for any premise), then the cycle-table
premise check, then a kernel search on the closure for premise hits.
Hits without a kernel are counterexample candidates; they are re-checked
through the public, object-level operations before being recorded, and
the fast path is additionally cross-checked against the public path on a
fixed cursor cadence while scanning.

Checkpoints serialize to canonical JSON, embed counterexamples as
edge-list strings, and are re-validated on load, so a checkpoint file is
a self-certifying search record.
"""

from __future__ import annotations

import json
import math
import multiprocessing
import random
import time
from dataclasses import dataclass, replace
from typing import Iterator

from .digraph import Digraph, _bits, _closure_masks, make_digraph
from .formats import canonical_json, parse_edge_list, write_edge_list
from .kernels import _kernel_search, find_k_kernel
from .premises import (
    _TABLE_MAX_N,
    _cycle_table,
    _flat_from_masks,
    _long_cycles_all_symmetric_flat,
    _premise_holds_flat,
    _rows_from_flat,
    _small_cycle_violation_flat,
    _threshold_row,
    conjecture_premise,
    check_path_pair_lemmas,
)

CHECKPOINT_FORMAT_VERSION = 1

# Exhaustive scans refuse larger n: the cursor space is 4^(n(n-1)/2).
EXHAUSTIVE_MAX_N = 6

# Fast-path results are compared against the public operations once per
# this many cursors while scanning.
_CROSS_CHECK_STRIDE = 0x4000


def pair_list(n: int) -> list[tuple[int, int]]:
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


def cursor_space(n: int) -> int:
    return 4 ** (n * (n - 1) // 2)


def decode_cursor(n: int, cursor: int) -> Digraph:
    """The digraph a cursor encodes; independent of the scanning odometer."""
    if not 0 <= cursor < cursor_space(n):
        raise ValueError(f"cursor {cursor} outside 0..{cursor_space(n) - 1}")
    arcs = []
    c = cursor
    for u, v in pair_list(n):
        state = c & 3
        c >>= 2
        if state & 1:
            arcs.append((u, v))
        if state & 2:
            arcs.append((v, u))
    return make_digraph(n, arcs)


def enumerate_labeled_digraphs(n: int, start: int = 0, stop: int | None = None) -> Iterator[Digraph]:
    """Stream every labeled digraph on n vertices for cursors in [start, stop)."""
    end = cursor_space(n) if stop is None else stop
    if not 0 <= start <= end <= cursor_space(n):
        raise ValueError("cursor range out of bounds")
    for c in range(start, end):
        yield decode_cursor(n, c)


@dataclass(frozen=True)
class SearchCheckpoint:
    """Resumable scan state: position, tallies, and surviving counterexamples.

    ``cursor`` is the next unexamined cursor, so a finished run holds the
    end of its range.  In random mode it counts trials consumed and
    ``rng_seed`` records the seed.
    """

    k: int
    n: int
    cursor: int
    examined: int
    premise_hits: int
    kernels_found: int
    counterexamples: tuple[str, ...]
    rng_seed: int | None = None

    def to_json_dict(self) -> dict:
        return {
            "format_version": CHECKPOINT_FORMAT_VERSION,
            "k": self.k,
            "n": self.n,
            "cursor": self.cursor,
            "examined": self.examined,
            "premise_hits": self.premise_hits,
            "kernels_found": self.kernels_found,
            "counterexamples": list(self.counterexamples),
            "rng_seed": self.rng_seed,
        }

    def to_json(self) -> str:
        return canonical_json(self.to_json_dict())


def save_checkpoint(cp: SearchCheckpoint, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(cp.to_json())


def checkpoint_from_dict(data: dict, validate: bool = True) -> SearchCheckpoint:
    if data.get("format_version") != CHECKPOINT_FORMAT_VERSION:
        raise ValueError(f"unsupported checkpoint format_version {data.get('format_version')!r}")
    cp = SearchCheckpoint(
        k=int(data["k"]),
        n=int(data["n"]),
        cursor=int(data["cursor"]),
        examined=int(data["examined"]),
        premise_hits=int(data["premise_hits"]),
        kernels_found=int(data["kernels_found"]),
        counterexamples=tuple(data["counterexamples"]),
        rng_seed=None if data.get("rng_seed") is None else int(data["rng_seed"]),
    )
    if cp.kernels_found + len(cp.counterexamples) != cp.premise_hits:
        raise ValueError("checkpoint tallies are inconsistent")
    if validate:
        for text in cp.counterexamples:
            d = parse_edge_list(text)
            if not conjecture_premise(d, cp.k).holds:
                raise ValueError("checkpoint counterexample fails the premise on revalidation")
            if find_k_kernel(d, cp.k) is not None:
                raise ValueError("checkpoint counterexample has a kernel on revalidation")
    return cp


def load_checkpoint(path: str, validate: bool = True) -> SearchCheckpoint:
    with open(path, "r", encoding="utf-8") as fh:
        return checkpoint_from_dict(json.load(fh), validate=validate)


# -- flat scan core ------------------------------------------------------------


def _pair_deltas(n: int) -> list[tuple[tuple[int, int], ...]]:
    """Per pair, per state, the (adj, transpose) bits that state contributes."""
    deltas = []
    for u, v in pair_list(n):
        fwd_a, fwd_t = 1 << (u * n + v), 1 << (v * n + u)
        bwd_a, bwd_t = fwd_t, fwd_a
        deltas.append(
            (
                (0, 0),
                (fwd_a, fwd_t),
                (bwd_a, bwd_t),
                (fwd_a | bwd_a, fwd_t | bwd_t),
            )
        )
    return deltas


def _digraph_from_flat(n: int, adj: int) -> Digraph:
    rows = _rows_from_flat(n, adj)
    return make_digraph(n, ((u, v) for u in range(n) for v in _bits(rows[u])))


def _scan_unit(args: tuple) -> tuple:
    """Scan cursors [start, stop) on n vertices for order k.

    Returns (examined, premise_hits, kernels_found, counterexamples,
    violations) where counterexamples and each violations list hold
    (cursor, edge-list) pairs.  ``collect`` switches on the extra per-hit
    checks the exhaustive verifier wants.
    """
    k, n, start, stop, collect = args
    table = _cycle_table(n)
    thr = _threshold_row(k, n)
    deltas = _pair_deltas(n)
    npairs = len(deltas)
    full = (1 << n) - 1

    digits = [0] * npairs
    adj = adjt = 0
    c = start
    scratch = start
    for p in range(npairs):
        s = scratch & 3
        scratch >>= 2
        digits[p] = s
        da, dt = deltas[p][s]
        adj |= da
        adjt |= dt

    examined = hits = kernels = 0
    counterexamples: list[tuple[int, str]] = []
    violations: dict[str, list[tuple[int, str]]] = {kind: [] for kind in collect}

    while c < stop:
        # pre-filter: peel the asymmetric subdigraph; a stuck remainder is
        # an all-asymmetric cycle, which no premise survives
        asymt = adjt & ~adj
        remaining = full
        if asymt:
            while remaining:
                progressed = False
                m = remaining
                while m:
                    low = m & -m
                    m ^= low
                    u = low.bit_length() - 1
                    if (asymt >> (u * n)) & remaining == 0:
                        remaining ^= low
                        progressed = True
                if not progressed:
                    break
        else:
            remaining = 0

        premise_ok = remaining == 0 and _premise_holds_flat(adj, table, thr)

        if premise_ok:
            hits += 1
            rows = _rows_from_flat(n, adj)
            crows = _closure_masks(n, rows, k - 1)
            cin = [0] * n
            for u in range(n):
                r = crows[u]
                while r:
                    low = r & -r
                    r ^= low
                    cin[low.bit_length() - 1] |= 1 << u
            mask = _kernel_search(n, crows, cin, crows, cin)
            if mask is not None:
                kernels += 1
            else:
                d = _digraph_from_flat(n, adj)
                if not conjecture_premise(d, k).holds or find_k_kernel(d, k) is not None:
                    raise RuntimeError(f"fast path disagrees with public operations at cursor {c}")
                counterexamples.append((c, write_edge_list(d)))
            if "closure_cycles" in violations:
                cflat = _flat_from_masks(n, crows)
                seq = _long_cycles_all_symmetric_flat(cflat, table)
                if seq is not None:
                    violations["closure_cycles"].append((c, write_edge_list(_digraph_from_flat(n, adj))))
            if "small_cycles" in violations:
                seq = _small_cycle_violation_flat(adj, table)
                if seq is not None:
                    violations["small_cycles"].append((c, write_edge_list(_digraph_from_flat(n, adj))))
            if "path_pairs" in violations:
                d = _digraph_from_flat(n, adj)
                if check_path_pair_lemmas(d):
                    violations["path_pairs"].append((c, write_edge_list(d)))

        if c % _CROSS_CHECK_STRIDE == 0:
            public = conjecture_premise(decode_cursor(n, c), k).holds
            if public != premise_ok:
                raise RuntimeError(f"fast premise path disagrees with public path at cursor {c}")

        examined += 1
        c += 1
        p = 0
        while p < npairs:
            s = digits[p]
            da, dt = deltas[p][s]
            nxt = 0 if s == 3 else s + 1
            na, nt = deltas[p][nxt]
            adj ^= da ^ na
            adjt ^= dt ^ nt
            digits[p] = nxt
            if nxt:
                break
            p += 1

    return examined, hits, kernels, counterexamples, violations


def _run_scan(
    k: int,
    n: int,
    start: int,
    stop: int,
    shards: int = 1,
    collect: tuple[str, ...] = (),
    flush=None,
) -> tuple:
    """Scan [start, stop) in cursor-ordered work units, optionally in parallel.

    The merge happens in cursor order whatever the worker count, so the
    outcome is a pure function of (k, n, start, stop, collect).  ``flush``
    is called with the running merged state after each unit boundary.
    """
    span = stop - start
    merged: tuple = (0, 0, 0, [], {kind: [] for kind in collect})
    if span <= 0:
        return merged
    shards = max(1, shards)
    unit = max(1, min(1 << 20, math.ceil(span / (shards * 4))))
    units = [
        (k, n, a, min(a + unit, stop), collect)
        for a in range(start, stop, unit)
    ]

    def fold(state: tuple, part: tuple, upto: int) -> tuple:
        ex, hits, kern, cex, viol = state
        pex, phits, pkern, pcex, pviol = part
        cex = cex + pcex
        for kind in viol:
            viol[kind] = viol[kind] + pviol[kind]
        out = (ex + pex, hits + phits, kern + pkern, cex, viol)
        if flush is not None:
            flush(out, upto)
        return out

    if shards == 1 or len(units) == 1:
        for unit in units:
            merged = fold(merged, _scan_unit(unit), unit[3])
        return merged
    ctx = multiprocessing.get_context("fork")
    with ctx.Pool(processes=shards) as pool:
        for unit, part in zip(units, pool.imap(_scan_unit, units)):
            merged = fold(merged, part, unit[3])
    return merged


def hunt(
    k: int,
    n: int,
    shards: int = 1,
    checkpoint: SearchCheckpoint | None = None,
    stop_cursor: int | None = None,
    checkpoint_path: str | None = None,
    flush_every: int = 1 << 20,
    flush_seconds: float = 30.0,
) -> SearchCheckpoint:
    """Exhaustively scan labeled digraphs on n vertices for order k.

    Tallies premise hits and kernel successes; premise hits without a
    k-kernel are recorded as counterexamples.  Pass a prior checkpoint to
    resume, ``stop_cursor`` to stop early, and ``checkpoint_path`` to
    persist progress periodically (every ``flush_every`` cursors or
    ``flush_seconds`` seconds, whichever comes first) and at the end.
    """
    if k < 2:
        raise ValueError("order k must be >= 2")
    if not 1 <= n <= EXHAUSTIVE_MAX_N:
        raise ValueError(f"exhaustive hunts support 1 <= n <= {EXHAUSTIVE_MAX_N}")
    total = cursor_space(n)
    if checkpoint is None:
        state = SearchCheckpoint(k, n, 0, 0, 0, 0, ())
    else:
        if checkpoint.k != k or checkpoint.n != n:
            raise ValueError(
                f"checkpoint is for k={checkpoint.k} n={checkpoint.n}, not k={k} n={n}"
            )
        state = checkpoint
    stop = total if stop_cursor is None else stop_cursor
    if not state.cursor <= stop <= total:
        raise ValueError(f"stop cursor {stop} outside {state.cursor}..{total}")

    last_flush = {"cursor": state.cursor, "time": time.monotonic()}

    def flush(partial: tuple, upto: int) -> None:
        if checkpoint_path is None:
            return
        due = upto - last_flush["cursor"] >= flush_every
        due = due or time.monotonic() - last_flush["time"] >= flush_seconds
        if due or upto == stop:
            save_checkpoint(_merge(state, partial, upto), checkpoint_path)
            last_flush["cursor"] = upto
            last_flush["time"] = time.monotonic()

    outcome = _run_scan(k, n, state.cursor, stop, shards=shards, flush=flush)
    final = _merge(state, outcome, stop)
    if checkpoint_path is not None:
        save_checkpoint(final, checkpoint_path)
    return final


def _merge(state: SearchCheckpoint, partial: tuple, cursor: int) -> SearchCheckpoint:
    ex, hits, kern, cex, _viol = partial
    return replace(
        state,
        cursor=cursor,
        examined=state.examined + ex,
        premise_hits=state.premise_hits + hits,
        kernels_found=state.kernels_found + kern,
        counterexamples=state.counterexamples + tuple(text for _c, text in cex),
    )


def random_hunt(
    k: int,
    n: int,
    trials: int,
    seed: int,
    sym_bias: float = 0.5,
) -> SearchCheckpoint:
    """Sample random labeled digraphs and run the same scan pipeline.

    Each unordered pair independently becomes a symmetric pair with
    probability ``sym_bias``; the remaining mass splits evenly between
    absent, forward and backward.  Fully deterministic for a fixed seed.
    """
    if k < 2:
        raise ValueError("order k must be >= 2")
    if n < 1:
        raise ValueError("n must be >= 1")
    if trials < 0:
        raise ValueError("trials must be >= 0")
    if not 0.0 <= sym_bias <= 1.0:
        raise ValueError("sym_bias must lie in [0, 1]")
    rng = random.Random(seed)
    pairs = pair_list(n)
    examined = hits = kernels = 0
    counterexamples: list[str] = []
    table = _cycle_table(n) if n <= _TABLE_MAX_N else None
    thr = _threshold_row(k, n)
    full = (1 << n) - 1
    for trial in range(trials):
        adj = adjt = 0
        for u, v in pairs:
            fwd = 1 << (u * n + v)
            bwd = 1 << (v * n + u)
            if rng.random() < sym_bias:
                adj |= fwd | bwd
                adjt |= fwd | bwd
            else:
                state = rng.randrange(3)
                if state == 1:
                    adj |= fwd
                    adjt |= bwd
                elif state == 2:
                    adj |= bwd
                    adjt |= fwd
        examined += 1
        asymt = adjt & ~adj
        remaining = full
        if asymt:
            while remaining:
                progressed = False
                m = remaining
                while m:
                    low = m & -m
                    m ^= low
                    u = low.bit_length() - 1
                    if (asymt >> (u * n)) & remaining == 0:
                        remaining ^= low
                        progressed = True
                if not progressed:
                    break
        else:
            remaining = 0
        if table is not None:
            premise_ok = remaining == 0 and _premise_holds_flat(adj, table, thr)
        else:
            premise_ok = remaining == 0 and conjecture_premise(
                _digraph_from_flat(n, adj), k
            ).holds
        if table is not None and trial % _CROSS_CHECK_STRIDE == 0:
            d = _digraph_from_flat(n, adj)
            if conjecture_premise(d, k).holds != premise_ok:
                raise RuntimeError(
                    f"fast premise path disagrees with public path at trial {trial}"
                )
        if not premise_ok:
            continue
        hits += 1
        rows = _rows_from_flat(n, adj)
        crows = _closure_masks(n, rows, k - 1)
        cin = [0] * n
        for u in range(n):
            r = crows[u]
            while r:
                low = r & -r
                r ^= low
                cin[low.bit_length() - 1] |= 1 << u
        mask = _kernel_search(n, crows, cin, crows, cin)
        if mask is not None:
            kernels += 1
        else:
            d = _digraph_from_flat(n, adj)
            if not conjecture_premise(d, k).holds or find_k_kernel(d, k) is not None:
                raise RuntimeError(
                    f"fast path disagrees with public operations at trial {trial}"
                )
            counterexamples.append(write_edge_list(d))
    return SearchCheckpoint(
        k=k,
        n=n,
        cursor=trials,
        examined=examined,
        premise_hits=hits,
        kernels_found=kernels,
        counterexamples=tuple(counterexamples),
        rng_seed=seed,
    )
