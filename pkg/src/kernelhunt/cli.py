"""Command-line surface for the digraph kernel toolkit.

Every command reads edge-list text from a file argument or stdin, writes a
JSON run report to stdout, and keeps diagnostics on stderr. ``family`` is
the one exception: it emits the digraph itself as edge-list or DOT text.
Exit codes: 0 success, 1 property failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import sys
import time

from . import verify as verify_items
from .digraph import closure, enumerate_simple_cycles
from .families import build_h_k
from .formats import (
    ParseError,
    RunReport,
    canonical_json,
    certificate_json,
    input_digest,
    parse_edge_list,
    verdict_json,
    write_dot,
    write_edge_list,
)
from .harness import hunt, load_checkpoint, random_hunt, save_checkpoint
from .kernels import find_kl_kernel
from .premises import conjecture_premise


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kernelhunt",
        description="k-kernels, m-closures, and symmetric-arc cycle conditions on digraphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("closure", help="m-closure of a digraph")
    p.add_argument("input", nargs="?", default="-", help="edge-list file, or - for stdin")
    p.add_argument("--m", type=int, required=True, help="closure order (arcs for distance <= m)")

    p = sub.add_parser("kernel", help="find a (k,l)-kernel")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--k", type=int, default=2, help="independence order (default 2)")
    p.add_argument("--l", type=int, default=None, help="absorbency order (default k-1)")

    p = sub.add_parser("check-premise", help="check the symmetric-arc cycle premise")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--k", type=int, default=2, help="kernel order the premise targets (default 2)")

    p = sub.add_parser("cycles", help="enumerate simple cycles")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--max-len", type=int, default=None, help="only cycles up to this length")

    p = sub.add_parser("family", help="emit the sharpness family member H_k")
    p.add_argument("--k", type=int, required=True, help="kernel order (k >= 3)")
    p.add_argument(
        "--format",
        choices=("edgelist", "dot"),
        default="edgelist",
        help="output format (default edgelist)",
    )

    p = sub.add_parser("hunt", help="exhaustive counterexample search")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--shards", type=int, default=1)
    p.add_argument("--resume", default=None, help="checkpoint file to load and keep updating")
    p.add_argument("--checkpoint", default=None, help="file to write the final checkpoint to")
    p.add_argument("--stop-cursor", type=int, default=None, help="pause after this cursor")

    p = sub.add_parser("random-hunt", help="randomized counterexample search")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--sym-bias", type=float, default=0.5, help="probability a pair becomes a digon")
    p.add_argument("--checkpoint", default=None, help="file to write the final checkpoint to")

    p = sub.add_parser("verify-paper", help="run the full verification suite")
    p.add_argument("--shards", type=int, default=1)
    p.add_argument("--max-n", type=int, default=5, help="sweep bound for the exhaustive items")
    p.add_argument("--trials", type=int, default=100_000, help="randomized realization count")
    p.add_argument("--seed", type=int, default=20250819)

    return parser


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _cmd_closure(args) -> tuple[str, dict, int, str | None]:
    text = _read_input(args.input)
    d = parse_edge_list(text)
    h = closure(d, args.m)
    payload = {
        "m": args.m,
        "n": h.n,
        "arcs": [list(a) for a in h.sorted_arcs()],
        "edge_list": write_edge_list(h),
    }
    return input_digest(text), payload, 0, None


def _cmd_kernel(args) -> tuple[str, dict, int, str | None]:
    text = _read_input(args.input)
    d = parse_edge_list(text)
    k = args.k
    l = args.l if args.l is not None else max(1, k - 1)
    cert = find_kl_kernel(d, k, l)
    payload: dict = {"k": k, "l": l, "found": cert is not None}
    if cert is not None:
        payload["kernel"] = certificate_json(cert)
    return input_digest(text), payload, 0 if cert is not None else 1, None


def _cmd_check_premise(args) -> tuple[str, dict, int, str | None]:
    text = _read_input(args.input)
    d = parse_edge_list(text)
    verdict = conjecture_premise(d, args.k)
    payload = {"k": args.k}
    payload.update(verdict_json(verdict))
    return input_digest(text), payload, 0 if verdict.holds else 1, None


def _cmd_cycles(args) -> tuple[str, dict, int, str | None]:
    text = _read_input(args.input)
    d = parse_edge_list(text)
    found = [list(c.vertices) for c in enumerate_simple_cycles(d, max_len=args.max_len)]
    payload = {"count": len(found), "cycles": found}
    return input_digest(text), payload, 0, None


def _cmd_family(args) -> tuple[str, dict, int, str | None]:
    inst = build_h_k(args.k)
    if args.format == "dot":
        return "", {}, 0, write_dot(inst.digraph, labels=inst.labels)
    lines = [f"# {v} = {inst.labels[v]}" for v in sorted(inst.labels)]
    raw = "\n".join(lines) + "\n" + write_edge_list(inst.digraph)
    return "", {}, 0, raw


def _cmd_hunt(args) -> tuple[str, dict, int, str | None]:
    resume = None
    if args.resume is not None:
        resume = load_checkpoint(args.resume)
        print(f"resuming at cursor {resume.cursor}", file=sys.stderr)
    save_path = args.checkpoint or args.resume
    final = hunt(
        args.k,
        args.n,
        shards=args.shards,
        checkpoint=resume,
        stop_cursor=args.stop_cursor,
        checkpoint_path=save_path,
    )
    payload = final.to_json_dict()
    code = 1 if final.counterexamples else 0
    return input_digest(f"hunt k={args.k} n={args.n}"), payload, code, None


def _cmd_random_hunt(args) -> tuple[str, dict, int, str | None]:
    final = random_hunt(args.k, args.n, args.trials, args.seed, sym_bias=args.sym_bias)
    if args.checkpoint is not None:
        save_checkpoint(final, args.checkpoint)
    payload = final.to_json_dict()
    code = 1 if final.counterexamples else 0
    digest = input_digest(f"random-hunt k={args.k} n={args.n} trials={args.trials} seed={args.seed}")
    return digest, payload, code, None


def _cmd_verify_paper(args) -> tuple[str, dict, int, str | None]:
    results = verify_items.run_all(
        shards=args.shards, n_max=args.max_n, trials=args.trials, seed=args.seed
    )
    for r in results:
        print(r.line(), file=sys.stderr)
    payload = {
        "passed": all(r.passed for r in results),
        "items": [
            {
                "name": r.name,
                "passed": r.passed,
                "details": r.details,
                "seconds": round(r.seconds, 6),
            }
            for r in results
        ],
    }
    digest = input_digest(f"verify max_n={args.max_n} trials={args.trials} seed={args.seed}")
    return digest, payload, 0 if payload["passed"] else 1, None


_DISPATCH = {
    "closure": _cmd_closure,
    "kernel": _cmd_kernel,
    "check-premise": _cmd_check_premise,
    "cycles": _cmd_cycles,
    "family": _cmd_family,
    "hunt": _cmd_hunt,
    "random-hunt": _cmd_random_hunt,
    "verify-paper": _cmd_verify_paper,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    t0 = time.monotonic()
    try:
        digest, payload, code, raw = _DISPATCH[args.command](args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if raw is not None:
        sys.stdout.write(raw)
        return code
    report = RunReport(
        command=args.command,
        input_digest=digest,
        result=payload,
        seconds=time.monotonic() - t0,
    )
    sys.stdout.write(canonical_json(report.to_json_dict()))
    return code


if __name__ == "__main__":
    sys.exit(main())
