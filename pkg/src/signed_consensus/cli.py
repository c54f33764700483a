"""Command-line interface: ``signed-consensus {analyze,eigvec,classify,simulate,random}``.

Exit codes: 0 success / verification pass, 1 usage error, 2 parse error,
3 verification failure, 4 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from fractions import Fraction

import numpy as np

from .balance import balance_report
from .behavior import classify, verify_report
from .connectivity import analyze_connectivity
from .generate import InfeasibleError, random_signed_digraph
from .graph import GraphError, load_graph, to_edge_list
from .simulate import (DEFAULT_CONV_TOL, DEFAULT_DT, DEFAULT_T_END, SimulationError,
                       atomic_write, converged_state, simulate, write_csv)
from .spectral import SpectralError, certificate

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_VERIFY, EXIT_NUMERIC = 0, 1, 2, 3, 4

log = logging.getLogger("signed_consensus")


class UsageError(Exception):
    pass


def _emit(payload: dict, path: str | None) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    if path:
        atomic_write(path, text)
    else:
        sys.stdout.write(text)


def parse_x0(text: str | None, n: int) -> np.ndarray:
    if text is None or text == "zeros":
        return np.zeros(n)
    if text.startswith("random:"):
        try:
            seed = int(text.split(":", 1)[1])
        except ValueError:
            raise UsageError(f"bad random seed in --x0 {text!r}") from None
        return np.random.default_rng(seed).uniform(-1.0, 1.0, n)
    try:
        x0 = np.array([float(t) for t in text.replace(",", " ").split()])
    except ValueError:
        raise UsageError(f"--x0 must be numbers, 'zeros' or 'random:<seed>', got {text!r}") from None
    if x0.size != n:
        raise UsageError(f"--x0 has {x0.size} entries but the graph has {n} nodes")
    return x0


def parse_anchors(items: list[str] | None) -> dict[int, int]:
    out = {}
    for item in items or []:
        try:
            node, sign = item.split(":")
            node_i, sign_i = int(node), int(sign)
        except ValueError:
            raise UsageError(f"--anchor expects NODE:SIGN, got {item!r}") from None
        if sign_i not in (-1, 1) or node_i < 1:
            raise UsageError(f"--anchor expects a 1-based node and sign +-1, got {item!r}")
        out[node_i - 1] = sign_i
    return out


def _require_input(args):
    if not args.input:
        raise UsageError("--input is required")
    return load_graph(args.input)


def cmd_analyze(args) -> int:
    g = _require_input(args)
    report = analyze_connectivity(g)
    _emit({"n": g.n, "connectivity": report.to_json(), "balance": balance_report(g)}, args.output)
    return EXIT_OK


def cmd_eigvec(args) -> int:
    g = _require_input(args)
    cert = certificate(g, exact=args.exact, anchors=parse_anchors(args.anchor))
    _emit(cert.to_json(), args.output)
    return EXIT_OK


def _table(g, rep) -> str:
    lines = [f"behavior: {rep.behavior.value}"
             + (" (strict interval, not bipartite)" if rep.strict_interval else "")
             + (" [extension]" if rep.uses_extension else "")]
    lines.append(f"{'node':>6} {'balance':>10} {'xi':>14} {'theta':>14}")
    for i in range(g.n):
        if rep.xi is None:
            xi = ""
        elif isinstance(rep.xi[i], Fraction):
            xi = str(rep.xi[i])
        else:
            xi = f"{float(rep.xi[i]):.6g}"
        th = "" if rep.theta is None else f"{float(rep.theta[i]):.6g}"
        bal = "balanced" if rep.node_balance[i] else "unbalanced"
        lines.append(f"{g.label(i):>6} {bal:>10} {xi:>14} {th:>14}")
    return "\n".join(lines) + "\n"


def cmd_classify(args) -> int:
    g = _require_input(args)
    x0 = parse_x0(args.x0, g.n) if args.x0 else None
    rep = classify(g, x0, exact=args.exact)
    if args.format == "table":
        text = _table(g, rep)
        if args.output:
            atomic_write(args.output, text)
        else:
            sys.stdout.write(text)
    else:
        _emit(rep.to_json(), args.output)
    return EXIT_OK


def cmd_simulate(args) -> int:
    g = _require_input(args)
    x0 = parse_x0(args.x0, g.n)
    traj = simulate(g, x0, dt=args.dt, t_end=args.t_end, conv_tol=args.conv_tol)
    rep = classify(g, x0)
    if traj.converged:
        ver = verify_report(rep, converged_state(traj), tol=args.tol)
    else:
        ver = None
    payload = {
        "report": rep.to_json(),
        "trajectory": {k: v for k, v in traj.to_json(g, args.seed).items()
                       if k not in ("times", "states")},
        "verification": ver.to_json() if ver else {"passed": False, "reason": "not converged"},
    }
    if args.output:
        write_csv(traj, args.output)
    _emit(payload, args.report)
    passed = ver is not None and ver.passed
    sys.stderr.write(f"verdict: {rep.behavior.value} {'PASS' if passed else 'FAIL'}\n")
    return EXIT_OK if passed else EXIT_VERIFY


def cmd_random(args) -> int:
    if args.seed is None:
        raise UsageError("--seed is required for random generation")
    if args.n is None:
        raise UsageError("--n is required")
    g = random_signed_digraph(args.n, args.density, args.neg_fraction, args.seed,
                              spanning_tree=args.spanning_tree, balanced=args.balanced)
    text = to_edge_list(g)
    if args.output:
        atomic_write(args.output, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="signed-consensus",
                                description="Collective-behavior analysis of signed digraphs.")
    sub = p.add_subparsers(dest="command", required=True)

    def io(sp):
        sp.add_argument("--input", help="graph file (edge list, or .json)")
        sp.add_argument("--output", help="output path (default: stdout)")

    sp = sub.add_parser("analyze", help="connectivity and structural balance report")
    io(sp)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("eigvec", help="zero-eigenvalue eigenvector certificate")
    io(sp)
    sp.add_argument("--exact", action="store_true", help="rational arithmetic")
    sp.add_argument("--anchor", action="append", metavar="NODE:SIGN",
                    help="pin the sign of xi at a leader node (repeatable)")
    sp.set_defaults(func=cmd_eigvec)

    sp = sub.add_parser("classify", help="behavior class and predicted terminal state")
    io(sp)
    sp.add_argument("--x0", help="initial state: comma list, 'zeros' or 'random:<seed>'")
    sp.add_argument("--exact", action="store_true")
    sp.add_argument("--format", choices=["json", "table"], default="json")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("simulate", help="integrate x' = -Lx and verify the classification")
    io(sp)
    sp.add_argument("--report", help="report JSON path (default: stdout)")
    sp.add_argument("--x0", default="zeros")
    sp.add_argument("--dt", type=float, default=DEFAULT_DT)
    sp.add_argument("--t-end", type=float, default=DEFAULT_T_END)
    sp.add_argument("--conv-tol", type=float, default=DEFAULT_CONV_TOL)
    sp.add_argument("--tol", type=float, default=1e-6, help="verification tolerance")
    sp.add_argument("--seed", type=int)
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("random", help="seeded random signed digraph")
    sp.add_argument("--output")
    sp.add_argument("--n", type=int)
    sp.add_argument("--density", type=float, default=0.3)
    sp.add_argument("--neg-fraction", type=float, default=0.3)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--spanning-tree", action="store_true")
    sp.add_argument("--balanced", action="store_true")
    sp.set_defaults(func=cmd_random)
    return p


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=os.environ.get("SIGNED_CONSENSUS_LOG", "WARNING").upper(),
                        format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    for name in ("dt", "t_end", "conv_tol", "tol"):
        val = getattr(args, name, None)
        if val is not None and not val > 0:
            sys.stderr.write(f"error: --{name.replace('_', '-')} must be positive\n")
            return EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, InfeasibleError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (GraphError, OSError) as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    except (SpectralError, SimulationError) as exc:
        sys.stderr.write(f"numerical failure: {exc}\n")
        return EXIT_NUMERIC
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
