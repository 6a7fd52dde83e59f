"""Command-line driver.

Exit codes: 0 when the command succeeded and its claim holds, 1 when the
claim fails or no witness exists, 2 on input errors, 3 when a constructive
coloring hit a proof gap.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from .colorer import color_rc2, color_rc3, color_rc4
from .errors import (BudgetExceededError, CapReachedError, DisconnectedError,
                     InputError, PreconditionNotMet, ProofGap, RcGraphError)
from .exact import rc_exact
from .formats import build_report, emit_dot, emit_edge_list, emit_json, parse_edge_list
from .generators import generate
from .thresholds import exhaustive_verify, f_threshold, sharpness_witness
from .verify import is_rainbow_connected

EXIT_OK = 0
EXIT_CLAIM_FAILS = 1
EXIT_INPUT = 2
EXIT_PROOF_GAP = 3


def _read_graph(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    return parse_edge_list(text)


def _cmd_verify(args) -> int:
    g, coloring = _read_graph(args.file)
    if coloring is None:
        raise InputError("verify needs a colored edge list (third column)")
    ok = is_rainbow_connected(g, coloring)
    print("true" if ok else "false")
    return EXIT_OK if ok else EXIT_CLAIM_FAILS


def _cmd_exact(args) -> int:
    g, _ = _read_graph(args.file)
    start = time.perf_counter()
    try:
        cert = rc_exact(g, k_max=args.kmax, budget=args.budget)
    except CapReachedError as exc:
        doc = build_report("exact", g, {
            "value": None,
            "proven_lower_bound": exc.proven_lower_bound,
            "reason": str(exc),
        }, timing=time.perf_counter() - start)
        sys.stdout.write(emit_json(doc))
        return EXIT_CLAIM_FAILS
    except BudgetExceededError as exc:
        doc = build_report("exact", g, {
            "value": None,
            "lower_bound": exc.lower_bound,
            "upper_bound": exc.upper_bound,
            "reason": str(exc),
        }, timing=time.perf_counter() - start)
        sys.stdout.write(emit_json(doc))
        return EXIT_CLAIM_FAILS
    doc = build_report("exact", g, cert.to_dict(), timing=time.perf_counter() - start)
    sys.stdout.write(emit_json(doc))
    return EXIT_OK


def _cmd_color(args) -> int:
    g, _ = _read_graph(args.file)
    fn = {2: color_rc2, 3: color_rc3, 4: color_rc4}[args.colors]
    start = time.perf_counter()
    try:
        result = fn(g)
    except ProofGap as gap:
        doc = build_report("color", g, {
            "proof_gap": True,
            "tag": gap.tag,
            "failing_pair": list(gap.failing_pair) if gap.failing_pair else None,
            "message": str(gap),
        }, trace=[{"case": s.case.value, "note": s.note} for s in gap.trace],
            timing=time.perf_counter() - start)
        sys.stdout.write(emit_json(doc))
        return EXIT_PROOF_GAP
    body = result.to_dict()
    doc = build_report("color", g, body, trace=body.pop("trace"),
                       timing=time.perf_counter() - start)
    sys.stdout.write(emit_json(doc))
    if args.dot:
        Path(args.dot).write_text(emit_dot(g, result.coloring))
    return EXIT_OK


def _cmd_threshold(args) -> int:
    entry = f_threshold(args.n, args.k)
    sys.stdout.write(emit_json(build_report("threshold", None, entry.to_dict())))
    return EXIT_OK


def _cmd_sharpness(args) -> int:
    report = sharpness_witness(args.n, args.k, budget=args.budget)
    doc = build_report("sharpness", None, report.to_dict(),
                       timing=report.wall_time_s)
    sys.stdout.write(emit_json(doc))
    return EXIT_OK if report.witness is not None else EXIT_CLAIM_FAILS


def _cmd_sweep(args) -> int:
    report = exhaustive_verify(args.n, args.k, mode=args.mode, seed=args.seed,
                               sample_size=args.count, workers=args.workers)
    doc = build_report("sweep", None, report.to_dict(),
                       timing=report.wall_time_s, seed=args.seed)
    sys.stdout.write(emit_json(doc))
    return EXIT_OK if not report.failures else EXIT_CLAIM_FAILS


def _cmd_gen(args) -> int:
    g = generate(args.kind, args.params, seed=args.seed)
    sys.stdout.write(emit_edge_list(g))
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rcgraph",
        description="rainbow connection toolkit: verify, solve, color, sweep",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check a colored edge list for rainbow connectivity")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("exact", help="exact rainbow connection number")
    p.add_argument("file")
    p.add_argument("--kmax", type=int, default=None)
    p.add_argument("--budget", type=int, default=10**8)
    p.set_defaults(fn=_cmd_exact)

    p = sub.add_parser("color", help="constructive 2/3/4-coloring for dense graphs")
    p.add_argument("file")
    p.add_argument("--colors", type=int, choices=(2, 3, 4), required=True)
    p.add_argument("--dot", default=None, help="also write a DOT rendering here")
    p.set_defaults(fn=_cmd_color)

    p = sub.add_parser("threshold", help="edge-count threshold f(n, k)")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.set_defaults(fn=_cmd_threshold)

    p = sub.add_parser("sharpness", help="search a witness that f(n, k) is tight")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.add_argument("--budget", type=int, default=200_000)
    p.set_defaults(fn=_cmd_sharpness)

    p = sub.add_parser("sweep", help="verify the k-color guarantee over many graphs")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.add_argument("--mode", choices=("exhaustive", "sample"), default="exhaustive")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--count", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(fn=_cmd_sweep)

    p = sub.add_parser("gen", help="emit a generated graph as an edge list")
    p.add_argument("kind")
    p.add_argument("params", type=int, nargs="*")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(fn=_cmd_gen)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (InputError, PreconditionNotMet, DisconnectedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ProofGap as gap:
        print(f"proof gap: {gap}", file=sys.stderr)
        return EXIT_PROOF_GAP
    except RcGraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CLAIM_FAILS


if __name__ == "__main__":
    sys.exit(main())
