"""Command-line entry point.

Exit codes: 0 ok, 2 bad input or usage, 3 invalid (k, s), 4 no convergence,
5 Laplacian requested on a hypergraph that is not odd-bipartite,
6 a monotonicity check failed.  Stdout carries only JSON or CSV.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

from . import io
from .equitable import lift_eigenvector
from .hypergraph import is_odd_bipartite
from .power import (
    build_generalized_power,
    check_ks,
    natural_partition,
    regular_radius,
)
from .solver import (
    ConvergenceError,
    NotOddBipartiteError,
    SolverConfig,
    adjacency_radius,
    flip_to_laplacian,
    laplacian_radius_odd_bipartite,
    signless_radius,
)
from .verify import quotient_radius, verify_monotonicity

EXIT_PARSE, EXIT_KS, EXIT_CONVERGE, EXIT_NOT_ODD_BIPARTITE, EXIT_VERIFY = 2, 3, 4, 5, 6

log = logging.getLogger("hyperspec")


def _round(obj):
    """Round every float to 12 significant digits."""
    if isinstance(obj, float):
        return float(f"{obj:.12g}")
    if isinstance(obj, dict):
        return {k: _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    return obj


def emit(command: str, inputs: dict, outputs: dict, started: float) -> None:
    report = {
        "command": command,
        "inputs": inputs,
        "outputs": _round(outputs),
        "timing_ms": int((time.perf_counter() - started) * 1000),
    }
    print(json.dumps(report, sort_keys=True))


class UsageError(Exception):
    pass


class InvalidKS(Exception):
    pass


def _validate_ks(k: int, s: int) -> None:
    try:
        check_ks(k, s)
    except ValueError as exc:
        raise InvalidKS(str(exc)) from None


def parse_range(text: str) -> list[int]:
    """``A:B:STEP`` (inclusive), ``A:B`` or a single integer."""
    parts = [int(p) for p in text.split(":")]
    if len(parts) == 1:
        return parts
    if len(parts) not in (2, 3):
        raise argparse.ArgumentTypeError(f"bad range {text!r}")
    a, b, step = parts[0], parts[1], parts[2] if len(parts) == 3 else 1
    if step <= 0:
        raise argparse.ArgumentTypeError("range step must be positive")
    return list(range(a, b + 1, step))


def cmd_gen_power(args) -> int:
    started = time.perf_counter()
    _validate_ks(args.k, args.s)
    G = io.read_graph(args.graph)
    H, labeling = build_generalized_power(G, args.k, args.s)
    out = Path(args.out)
    labeling_path = Path(args.labeling) if args.labeling else out.with_suffix(".labeling.json")
    io.write_json(H.to_json(), out)
    io.write_json(labeling.to_json(), labeling_path)
    emit("gen-power", {"graph": str(args.graph), "k": args.k, "s": args.s},
         {"n": H.n, "m": H.m, "hypergraph": str(out), "labeling": str(labeling_path)}, started)
    return 0


def cmd_radius(args) -> int:
    started = time.perf_counter()
    cfg = SolverConfig(tol=args.tol, max_iter=args.max_iter)
    inputs = {"tensor": args.tensor, "tol": args.tol}
    if args.hypergraph:
        if args.quotient:
            raise UsageError("--quotient needs --graph with -k and -s")
        H = io.read_hypergraph(args.hypergraph)
        inputs["hypergraph"] = str(args.hypergraph)
    else:
        if args.k is None or args.s is None:
            raise UsageError("--graph needs -k and -s")
        _validate_ks(args.k, args.s)
        G = io.read_graph(args.graph)
        H, labeling = build_generalized_power(G, args.k, args.s)
        inputs.update(graph=str(args.graph), k=args.k, s=args.s, quotient=args.quotient)

    if args.quotient:
        if args.tensor == "A":
            raise UsageError("--quotient is only available for Q and L")
        cert = None
        if args.tensor == "L":
            cert = is_odd_bipartite(H)
            if cert is None:
                raise NotOddBipartiteError("hypergraph is not odd-bipartite")
        pair = quotient_radius(G, args.k, args.s, cfg)
        outputs = pair.to_json()
        lifted = lift_eigenvector(natural_partition(labeling), pair.vector)
        if cert is not None:
            full = type(pair)(pair.lam, lifted, pair.residual, pair.iterations, pair.bracket)
            lifted = flip_to_laplacian(H, full, cert[0], max(cfg.tol, 1e-8))
        outputs["lifted_vector"] = [float(v) for v in lifted]
    elif args.tensor == "Q":
        outputs = signless_radius(H, cfg).to_json()
    elif args.tensor == "A":
        outputs = adjacency_radius(H, cfg).to_json()
    else:
        pair, signed = laplacian_radius_odd_bipartite(H, cfg)
        outputs = pair.to_json()
        outputs["vector"] = [float(v) for v in signed]
    emit("radius", inputs, outputs, started)
    return 0


def cmd_verify(args) -> int:
    G = io.read_graph(args.graph)
    if G.max_degree() < 1:
        raise UsageError("graph needs at least one edge")
    cfg = SolverConfig(tol=args.tol, max_iter=args.max_iter, shift=0.0)
    report = verify_monotonicity(G, args.k_range, args.s_range, cfg)
    print(report.table())
    for c in report.checks:
        print(f"{'PASS' if c.passed else 'FAIL'} {c.name} ({c.detail})", file=sys.stderr)
    return 0 if report.ok else EXIT_VERIFY


def cmd_regular_root(args) -> int:
    started = time.perf_counter()
    if args.k < 3 or not 1 <= args.s <= (args.k - 1) // 2:
        raise InvalidKS(f"need 1 <= s <= floor((k-1)/2), got k={args.k}, s={args.s}")
    root, bracket = regular_radius(args.d, args.k, args.s, return_bracket=True)
    emit("regular-root", {"d": args.d, "k": args.k, "s": args.s},
         {"root": root, "bracket": list(bracket)}, started)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperspec",
        description="Spectral radii of generalized power hypergraphs via equitable quotients.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    parser.add_argument("--threads", type=int, default=1,
                        help="worker threads for operator applies (only 1 is supported)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-power", help="build G^{k,s} from a graph file")
    p.add_argument("--graph", required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-s", type=int, required=True)
    p.add_argument("--out", required=True, help="hypergraph JSON output")
    p.add_argument("--labeling", help="labeling JSON output (default: OUT with .labeling.json)")
    p.set_defaults(func=cmd_gen_power)

    p = sub.add_parser("radius", help="largest H-eigenvalue of A, Q or L")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--hypergraph")
    src.add_argument("--graph")
    p.add_argument("-k", type=int)
    p.add_argument("-s", type=int)
    p.add_argument("--quotient", action="store_true",
                   help="solve on the quotient tensor and lift the vector")
    p.add_argument("--tensor", choices=["A", "Q", "L"], default="Q")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--max-iter", type=int, default=1_000_000)
    p.set_defaults(func=cmd_radius)

    p = sub.add_parser("verify", help="check monotonicity in k and s on a grid")
    p.add_argument("--graph", required=True)
    p.add_argument("--k-range", type=parse_range, required=True)
    p.add_argument("--s-range", type=parse_range, default=[1])
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--max-iter", type=int, default=1_000_000)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("regular-root", help="closed-form radius for a d-regular graph")
    p.add_argument("-d", type=int, required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-s", type=int, required=True)
    p.set_defaults(func=cmd_regular_root)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(levelname)s %(message)s")
    if args.threads != 1:
        log.warning("--threads %d ignored; applies run single-threaded", args.threads)
    try:
        return args.func(args)
    except InvalidKS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_KS
    except NotOddBipartiteError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_ODD_BIPARTITE
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONVERGE
    except (UsageError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
