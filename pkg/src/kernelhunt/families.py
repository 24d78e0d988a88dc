"""The three-chain sharpness family.

For every k >= 3 the family member is built from three chains of k-1
vertices whose internal arcs are all symmetric, joined head to tail by
three one-way connector arcs into a single big cycle, plus a two-vertex
one-way tail hanging off the end of each chain.  The only simple cycle
longer than a digon is the big one: it has length 3(k-1) and exactly
3(k-2) symmetric arcs, one short of the threshold at order k, and the
digraph has no k-kernel.  The family therefore shows the symmetric-arc
bound cannot be lowered by even one arc.

Vertex layout: chain V occupies indices 0..k-2, chain U the next k-1,
chain W the next, followed by the tail vertices ev, fv, eu, fu, ew, fw.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .digraph import Arc, Digraph, enumerate_simple_cycles, make_digraph
from .kernels import all_k_kernels
from .premises import PremiseVerdict, conjecture_premise

_CHAINS = ("v", "u", "w")


@dataclass(frozen=True)
class FamilyInstance:
    """A built family member with its human-readable vertex labels."""

    k: int
    digraph: Digraph
    labels: dict[int, str]

    def index_of(self, label: str) -> int:
        for i, name in self.labels.items():
            if name == label:
                return i
        raise KeyError(label)


def build_h_k(k: int) -> FamilyInstance:
    """Construct the order-k family member on 3(k-1)+6 vertices."""
    if k < 3:
        raise ValueError("the family is defined for k >= 3")
    span = k - 1
    tail_base = 3 * span
    n = tail_base + 6
    labels: dict[int, str] = {}
    arcs: list[Arc] = []
    for c, letter in enumerate(_CHAINS):
        start = c * span
        for i in range(span):
            labels[start + i] = f"{letter}{i + 1}"
        # symmetric chain arcs
        for i in range(span - 1):
            arcs.append((start + i, start + i + 1))
            arcs.append((start + i + 1, start + i))
        # one-way tail off the chain end
        e = tail_base + 2 * c
        f = e + 1
        labels[e] = f"e{letter}"
        labels[f] = f"f{letter}"
        arcs.append((start + span - 1, e))
        arcs.append((e, f))
    # one-way connectors closing the three chains into one big cycle
    for c in range(3):
        here_last = c * span + span - 1
        next_first = ((c + 1) % 3) * span
        arcs.append((here_last, next_first))
    return FamilyInstance(k=k, digraph=make_digraph(n, arcs), labels=labels)


@dataclass(frozen=True)
class FamilyReport:
    """Measured properties of one family member against its expectations.

    ``mismatches`` lists every expectation that failed; an empty list
    means the member is exactly as sharp as intended: a single long cycle
    one symmetric arc below the order-k threshold, and no k-kernel.
    """

    k: int
    vertex_count: int
    expected_vertex_count: int
    long_cycle_lengths: tuple[int, ...]
    expected_long_cycle_length: int
    long_cycle_sym_count: int | None
    expected_sym_count: int
    premise: PremiseVerdict
    premise_margin: int | None
    k_kernel_count: int
    sinks: tuple[int, ...]
    expected_sinks: tuple[int, ...]
    mismatches: tuple[str, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return not self.mismatches

    @property
    def kernel_absent(self) -> bool:
        return self.k_kernel_count == 0

    def summary(self) -> str:
        lines = [
            f"family member k={self.k}: {self.vertex_count} vertices,"
            f" long cycles of lengths {list(self.long_cycle_lengths)}",
            f"long cycle carries {self.long_cycle_sym_count} symmetric arcs;"
            f" premise margin {self.premise_margin}"
            f" (one symmetric arc short of the order-{self.k} threshold)"
            if self.premise_margin == -1
            else f"long cycle carries {self.long_cycle_sym_count} symmetric arcs;"
            f" premise margin {self.premise_margin}",
            f"no {self.k}-kernel exists ({self.k_kernel_count} found by subset scan)"
            if self.kernel_absent
            else f"{self.k_kernel_count} {self.k}-kernels found by subset scan",
            f"sinks: {list(self.sinks)}",
        ]
        if self.mismatches:
            lines.append("MISMATCHES: " + "; ".join(self.mismatches))
        return "\n".join(lines)


def verify_h_k(k: int, oracle_k_limit: int = 6) -> FamilyReport:
    """Measure the order-k member and compare against the sharpness claims.

    The k-kernel absence check scans all subsets of a 3(k-1)+6 vertex
    digraph, so orders above ``oracle_k_limit`` are refused.
    """
    if k > oracle_k_limit:
        raise ValueError(f"subset scan would cover 2^{3 * (k - 1) + 6} sets; raise oracle_k_limit to allow")
    inst = build_h_k(k)
    d = inst.digraph
    mismatches: list[str] = []

    expected_n = 3 * (k - 1) + 6
    if d.n != expected_n:
        mismatches.append(f"vertex count {d.n}, expected {expected_n}")

    long_cycles = [c for c in enumerate_simple_cycles(d) if c.length > 2]
    lengths = tuple(c.length for c in long_cycles)
    expected_len = 3 * (k - 1)
    if len(long_cycles) != 1:
        mismatches.append(f"{len(long_cycles)} cycles longer than a digon, expected exactly 1")
    if lengths and lengths[0] != expected_len:
        mismatches.append(f"long cycle length {lengths[0]}, expected {expected_len}")

    sym_count: int | None = None
    if len(long_cycles) == 1:
        from .digraph import cycle_symmetric_count

        sym_count = cycle_symmetric_count(d, long_cycles[0])
        if sym_count != 3 * (k - 2):
            mismatches.append(f"long cycle has {sym_count} symmetric arcs, expected {3 * (k - 2)}")

    premise = conjecture_premise(d, k)
    margin = premise.worst.margin if premise.worst is not None else None
    if premise.holds or margin != -1:
        mismatches.append(f"premise verdict holds={premise.holds} margin={margin}, expected a miss by exactly 1")

    kernels = all_k_kernels(d, k, max_n=d.n)
    if kernels:
        mismatches.append(f"{len(kernels)} {k}-kernels found, expected none")

    sinks = tuple(u for u in range(d.n) if d.out_masks[u] == 0)
    tail_base = 3 * (k - 1)
    expected_sinks = (tail_base + 1, tail_base + 3, tail_base + 5)
    if sinks != expected_sinks:
        mismatches.append(f"sinks {sinks}, expected {expected_sinks}")

    return FamilyReport(
        k=k,
        vertex_count=d.n,
        expected_vertex_count=expected_n,
        long_cycle_lengths=lengths,
        expected_long_cycle_length=expected_len,
        long_cycle_sym_count=sym_count,
        expected_sym_count=3 * (k - 2),
        premise=premise,
        premise_margin=margin,
        k_kernel_count=len(kernels),
        sinks=sinks,
        expected_sinks=expected_sinks,
        mismatches=tuple(mismatches),
    )
