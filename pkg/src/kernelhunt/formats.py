"""Text formats and serialization.

The edge-list format is line based: the first significant line is
``n <vertex-count>``, every following line one ``u v`` arc.  Blank lines
and ``#`` comments are ignored.  Writing sorts arcs, so parse and write
round-trip bit-exactly on canonical text.

DOT output lists one arc per line in sorted order; symmetric pairs
appear as their two arcs.  When labels are supplied each vertex also
gets a node line carrying its label as a comment.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import Mapping

from .digraph import Digraph, make_digraph
from .kernels import KernelCertificate
from .premises import PremiseVerdict


class ParseError(ValueError):
    """Malformed edge-list input; ``line`` is the 1-based offending line."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def parse_edge_list(text: str) -> Digraph:
    """Parse the edge-list format into a digraph.

    Raises ParseError, with the offending line number, on any malformed
    or out-of-range content.  Duplicate arcs are deduplicated.
    """
    n: int | None = None
    arcs: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "n":
                raise ParseError(lineno, f"expected header 'n <count>', got {line!r}")
            try:
                n = int(parts[1])
            except ValueError:
                raise ParseError(lineno, f"vertex count {parts[1]!r} is not an integer") from None
            if n < 0:
                raise ParseError(lineno, "vertex count must be nonnegative")
            continue
        if len(parts) != 2:
            raise ParseError(lineno, f"expected 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(lineno, f"arc endpoints must be integers, got {line!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(lineno, f"arc ({u}, {v}) outside 0..{n - 1}")
        if u == v:
            raise ParseError(lineno, f"loop at vertex {u} is not allowed")
        arcs.append((u, v))
    if n is None:
        raise ParseError(1, "missing 'n <count>' header")
    return make_digraph(n, arcs)


def write_edge_list(d: Digraph) -> str:
    lines = [f"n {d.n}"]
    lines.extend(f"{u} {v}" for u, v in d.sorted_arcs())
    return "\n".join(lines) + "\n"


def write_dot(d: Digraph, labels: Mapping[int, str] | None = None) -> str:
    lines = ["digraph {"]
    if labels is not None:
        for u in range(d.n):
            lines.append(f"  {u}; // {labels.get(u, '')}".rstrip())
    for u, v in d.sorted_arcs():
        lines.append(f"  {u} -> {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def certificate_json(cert: KernelCertificate | None) -> dict | None:
    return None if cert is None else cert.to_json_dict()


def verdict_json(verdict: PremiseVerdict) -> dict:
    worst = None
    if verdict.worst is not None:
        r = verdict.worst
        worst = {
            "cycle": list(r.cycle.vertices),
            "len": r.length,
            "sym": r.sym_count,
            "threshold": r.threshold,
            "margin": r.margin,
        }
    return {
        "holds": verdict.holds,
        "worst": worst,
        "cycles_checked": verdict.cycles_checked,
    }


def canonical_json(obj) -> str:
    """Stable compact encoding used wherever bytes must be reproducible."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def input_digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class RunReport:
    """Envelope every CLI command prints: what ran, on what, with what result."""

    command: str
    input_digest: str
    result: object
    seconds: float

    def to_json_dict(self) -> dict:
        return {
            "command": self.command,
            "input_digest": self.input_digest,
            "result": self.result,
            "seconds": round(self.seconds, 6),
        }
