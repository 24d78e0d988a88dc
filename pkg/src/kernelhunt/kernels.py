"""Kernel and (k, l)-kernel solvers for small digraphs.

A set S is k-independent when every ordered pair of distinct members is
at directed distance at least k, in both directions, and l-absorbent when
every vertex outside S reaches some member within distance l.  A
(k, l)-kernel is a set that is both; a kernel is the (2, 1) case and a
k-kernel the (k, k-1) case.

Two disjoint code paths answer the same questions on purpose.  The
backtracking search branches vertex by vertex in index order, trying
"join the set" before "stay outside", so the first solution found is the
lexicographically least one as a sorted vertex list.  The oracle
``all_k_kernels`` instead scans every subset against the distance matrix
and is used to cross-check the search everywhere in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .digraph import Digraph, DistanceMatrix, _bits, closure, distances, make_digraph

# Subset scans below this vertex count run as plain Python loops; larger
# ones (up to the oracle bound) vectorize over numpy arrays instead.
_NUMPY_SCAN_MIN_N = 15

ORACLE_BOUND = 20


@dataclass(frozen=True)
class KernelCertificate:
    """A verified (k, l)-kernel together with absorption witnesses.

    ``witnesses`` maps every vertex u outside S to a pair (v, d) where v
    is a member of S at true directed distance d <= l from u.
    """

    S: frozenset[int]
    k: int
    l: int
    witnesses: dict[int, tuple[int, int]]

    def to_json_dict(self) -> dict:
        return {
            "S": sorted(self.S),
            "k": self.k,
            "l": self.l,
            "witnesses": {
                str(u): {"v": v, "d": dd} for u, (v, dd) in sorted(self.witnesses.items())
            },
        }


def _check_subset(d: Digraph, s: frozenset[int]) -> None:
    if not all(0 <= u < d.n for u in s):
        raise ValueError("set contains vertices outside the digraph")


def is_k_independent(d: Digraph, s: frozenset[int], k: int) -> bool:
    """Whether all ordered pairs of distinct members are at distance >= k.

    Both directions are required: an arc between two members in either
    direction already breaks 2-independence.
    """
    if k < 2:
        raise ValueError("independence order k must be >= 2")
    _check_subset(d, s)
    from .digraph import _bfs_row

    members = sorted(s)
    for u in members:
        row = _bfs_row(d.n, d.out_masks, u)
        for v in members:
            if v != u and row[v] < k:
                return False
    return True


def is_l_absorbent(d: Digraph, s: frozenset[int], l: int) -> bool:
    """Whether every vertex outside s reaches some member within l steps."""
    if l < 1:
        raise ValueError("absorption radius l must be >= 1")
    _check_subset(d, s)
    full = (1 << d.n) - 1
    cover = 0
    for u in s:
        cover |= 1 << u
    for _ in range(l):
        if cover == full:
            break
        grown = cover
        for u in _bits(full & ~cover):
            if d.out_masks[u] & cover:
                grown |= 1 << u
        if grown == cover:
            break
        cover = grown
    return cover == full


def _kernel_search(
    n: int,
    ind_out: tuple[int, ...],
    ind_in: tuple[int, ...],
    abs_out: tuple[int, ...],
    abs_in: tuple[int, ...],
) -> int | None:
    """Backtracking search for an independent absorbent set, as a bitmask.

    Independence is read against the ind-masks (no arc between members in
    either direction), absorption against the abs-masks (every outsider
    has an abs-out-arc into the set).  Vertices are decided in index
    order, membership branch first; pending outsiders are pruned as soon
    as no undecided vertex can still absorb them.
    """
    full = (1 << n) - 1

    def feasible(pending: int, future: int) -> bool:
        for j in _bits(pending):
            if abs_out[j] & future == 0:
                return False
        return True

    def rec(i: int, members: int, pending: int) -> int | None:
        if i == n:
            return members if pending == 0 else None
        bit = 1 << i
        future = full & ~((bit << 1) - 1)
        if (ind_out[i] | ind_in[i]) & members == 0:
            trimmed = pending & ~abs_in[i]
            if feasible(trimmed, future):
                found = rec(i + 1, members | bit, trimmed)
                if found is not None:
                    return found
        if abs_out[i] & members:
            grown = pending
        else:
            if abs_out[i] & future == 0:
                return None
            grown = pending | bit
        if feasible(grown, future):
            return rec(i + 1, members, grown)
        return None

    return rec(0, 0, 0)


def _certificate(d: Digraph, members: int, k: int, l: int) -> KernelCertificate:
    """Attach absorption witnesses to a found set, from true distances in d."""
    dist = distances(d)
    s = frozenset(_bits(members))
    witnesses: dict[int, tuple[int, int]] = {}
    for u in range(d.n):
        if u in s:
            continue
        best: tuple[int, int] | None = None
        for v in sorted(s):
            du = dist.rows[u][v]
            if du <= l and (best is None or (du, v) < best):
                best = (int(du), v)
        if best is None:
            raise RuntimeError(f"vertex {u} has no member within distance {l}")
        witnesses[u] = (best[1], best[0])
    return KernelCertificate(S=s, k=k, l=l, witnesses=witnesses)


def find_kernel(d: Digraph) -> KernelCertificate | None:
    """First kernel of d in the deterministic search order, or None.

    A kernel is an independent set (no arc between members) that every
    outside vertex has an arc into.
    """
    mask = _kernel_search(d.n, d.out_masks, d.in_masks, d.out_masks, d.in_masks)
    if mask is None:
        return None
    return _certificate(d, mask, 2, 1)


def find_k_kernel(d: Digraph, k: int) -> KernelCertificate | None:
    """Find a k-kernel of d by solving the plain kernel problem on the
    (k-1)-step closure, then re-validating against d itself.

    A set is a kernel of the closure exactly when it is a k-kernel of d,
    so the revalidation never fires; it guards the reduction.
    """
    if k < 2:
        raise ValueError("kernel order k must be >= 2")
    reduced = find_kernel(closure(d, k - 1))
    if reduced is None:
        return None
    s = reduced.S
    if not (is_k_independent(d, s, k) and is_l_absorbent(d, s, k - 1)):
        raise RuntimeError("closure reduction produced a set failing direct validation")
    mask = 0
    for u in s:
        mask |= 1 << u
    return _certificate(d, mask, k, k - 1)


def find_kl_kernel(d: Digraph, k: int, l: int) -> KernelCertificate | None:
    """Search for a (k, l)-kernel directly.

    Independence is enforced against the (k-1)-step closure and
    absorption against the l-step closure, which together encode the
    distance conditions exactly.
    """
    if k < 2:
        raise ValueError("independence order k must be >= 2")
    if l < 1:
        raise ValueError("absorption radius l must be >= 1")
    ind = closure(d, k - 1)
    ab = d if l == 1 else closure(d, l)
    mask = _kernel_search(d.n, ind.out_masks, ind.in_masks, ab.out_masks, ab.in_masks)
    if mask is None:
        return None
    s = frozenset(_bits(mask))
    if not (is_k_independent(d, s, k) and is_l_absorbent(d, s, l)):
        raise RuntimeError("search produced a set failing direct validation")
    return _certificate(d, mask, k, l)


def _oracle_masks(dist: DistanceMatrix, k: int) -> tuple[list[int], list[int]]:
    """Per-vertex conflict and absorption masks for the subset scan."""
    n = dist.n
    bad = [0] * n
    ab = [0] * n
    for u in range(n):
        for v in range(n):
            if v == u:
                continue
            if dist.rows[u][v] < k or dist.rows[v][u] < k:
                bad[u] |= 1 << v
            if dist.rows[u][v] <= k - 1:
                ab[u] |= 1 << v
    return bad, ab


def all_k_kernels(d: Digraph, k: int, max_n: int = ORACLE_BOUND) -> list[frozenset[int]]:
    """Every k-kernel of d, by exhaustive scan over all vertex subsets.

    This is the oracle side of the solver: it never looks at closures or
    the backtracking search, only at the distance matrix.  Subsets are
    returned in ascending bitmask order.  Refuses digraphs above max_n
    vertices since the scan is exponential.
    """
    if k < 2:
        raise ValueError("kernel order k must be >= 2")
    if d.n > max_n:
        raise ValueError(f"subset scan refuses n={d.n} above the bound {max_n}")
    bad, ab = _oracle_masks(distances(d), k)
    if d.n < _NUMPY_SCAN_MIN_N:
        return [frozenset(_bits(m)) for m in _scan_subsets_py(d.n, bad, ab)]
    return [frozenset(_bits(int(m))) for m in _scan_subsets_np(d.n, bad, ab)]


def _scan_subsets_py(n: int, bad: list[int], ab: list[int]) -> list[int]:
    found = []
    full = (1 << n) - 1
    for s in range(1 << n):
        ok = True
        t = s
        while t:
            low = t & -t
            if bad[low.bit_length() - 1] & s:
                ok = False
                break
            t ^= low
        if ok:
            t = full & ~s
            while t:
                low = t & -t
                if ab[low.bit_length() - 1] & s == 0:
                    ok = False
                    break
                t ^= low
        if ok:
            found.append(s)
    return found


def _scan_subsets_np(n: int, bad: list[int], ab: list[int]) -> list[int]:
    subsets = np.arange(1 << n, dtype=np.uint32)
    good = np.ones(subsets.shape, dtype=bool)
    for u in range(n):
        member = ((subsets >> np.uint32(u)) & np.uint32(1)).astype(bool)
        conflicted = (subsets & np.uint32(bad[u])) != 0
        absorbed = (subsets & np.uint32(ab[u])) != 0
        good &= np.where(member, ~conflicted, absorbed)
    return [int(m) for m in np.nonzero(good)[0]]


def induced_subdigraph(d: Digraph, vertices: frozenset[int] | set[int]) -> Digraph:
    """The subdigraph induced on the given vertices, relabeled densely.

    Vertices keep their relative order: the i-th smallest becomes i.
    """
    _check_subset(d, frozenset(vertices))
    order = sorted(vertices)
    index = {u: i for i, u in enumerate(order)}
    arcs = [(index[u], index[v]) for (u, v) in d.arcs if u in index and v in index]
    return make_digraph(len(order), arcs)


def is_kernel_perfect(d: Digraph, max_n: int = ORACLE_BOUND) -> bool:
    """Whether every induced subdigraph of d has a kernel.

    Checks all 2^n induced subdigraphs with the backtracking solver, so
    it refuses digraphs above max_n vertices.
    """
    if d.n > max_n:
        raise ValueError(f"induced-subdigraph scan refuses n={d.n} above the bound {max_n}")
    for mask in range(1 << d.n):
        sub = induced_subdigraph(d, set(_bits(mask)))
        if find_kernel(sub) is None:
            return False
    return True
