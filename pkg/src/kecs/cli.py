"""Command-line front end.

Exit codes: 0 on success, 1 on bad input or usage, 2 when a coloring run
misses the guarantee it reported.
"""

from __future__ import annotations

import argparse
import logging
import random
import sys
from collections.abc import Sequence
from fractions import Fraction
from typing import TextIO

from .approx import approximate_kecs
from .bounds import beyond_shannon_fraction, connected_fraction, plan_guarantee, rho, shannon_fraction
from .coloring import ColoringFormatError, format_coloring, parse_coloring, validate
from .multigraph import FAMILIES, GraphFormatError, format_edge_list, generate, random_multigraph, read_edge_list
from .oracle import NodeCapExceeded, exact_max_kecs
from .pipeline import color_graph

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CERT = 2


class UsageError(Exception):
    pass


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kecs", description="Large k-edge-colorable subgraphs of multigraphs.")
    p.add_argument("--verbose", "-v", action="store_true", help="log every potential increase to stderr")
    sub = p.add_subparsers(dest="verb", required=True)

    c = sub.add_parser("color", help="color with max-degree colors and report the guarantee")
    c.add_argument("graph")
    c.add_argument("--budget", type=_positive)

    a = sub.add_parser("approx", help="approximate maximum k-edge-colorable subgraph")
    a.add_argument("graph")
    a.add_argument("--k", "-k", type=_positive, required=True)
    a.add_argument("--budget", type=_positive)

    o = sub.add_parser("oracle", help="exact optimum by branch and bound")
    o.add_argument("graph")
    o.add_argument("--k", "-k", type=_positive)
    o.add_argument("--jobs", type=_positive, default=1)
    o.add_argument("--node-cap", type=_positive, default=10**7)

    b = sub.add_parser("bounds", help="guarantee report for a graph, or bound values for --delta")
    b.add_argument("graph", nargs="?")
    b.add_argument("--delta", type=_positive)
    b.add_argument("--k", type=int)
    b.add_argument("--t", type=int)

    gen = sub.add_parser("gen", help="write a named or random instance")
    gen.add_argument("family", choices=(*FAMILIES, "random"))
    gen.add_argument("--c", type=_positive, default=1)
    gen.add_argument("--n", type=int, default=6)
    gen.add_argument("--m", type=int, default=12)
    gen.add_argument("--max-deg", type=_positive)
    gen.add_argument("--seed", type=int, default=0)

    ver = sub.add_parser("verify", help="check a coloring file against a graph")
    ver.add_argument("graph")
    ver.add_argument("coloring")
    return p


def _cmd_color(args: argparse.Namespace, out: TextIO) -> int:
    g = read_edge_list(args.graph)
    res = color_graph(g, budget=args.budget)
    out.write(format_coloring(res.coloring))
    cert = res.certification
    out.write(f"b {res.report.render()}\n")
    out.write(
        f"g required {res.required} colored {res.colored} collapsed {len(res.records)} "
        f"escalations {res.escalations} certification {cert.status}\n"
    )
    for note in (*res.report.notes, *cert.notes):
        out.write(f"# {note}\n")
    return EXIT_CERT if res.uncertified or res.colored < res.required else EXIT_OK


def _cmd_approx(args: argparse.Namespace, out: TextIO) -> int:
    g = read_edge_list(args.graph)
    res = approximate_kecs(g, args.k, budget=args.budget)
    out.write("f " + " ".join(map(str, res.matching)) + "\n")
    for i, comp in enumerate(res.components):
        out.write(
            f"component {i} {comp.classification} vertices {','.join(map(str, comp.vertices))} "
            f"colored {comp.colored}/{len(comp.edges)}\n"
        )
    out.write(format_coloring(res.coloring))
    out.write(f"ratio {res.colored}/{len(res.matching)} guarantee {_frac(res.guaranteed_fraction)}\n")
    return EXIT_CERT if res.uncertified else EXIT_OK


def _cmd_oracle(args: argparse.Namespace, out: TextIO) -> int:
    g = read_edge_list(args.graph)
    k = args.k if args.k is not None else max(1, max((g.degree(v) for v in g.vertices()), default=1))
    res = exact_max_kecs(g, k, node_cap=args.node_cap, jobs=args.jobs)
    out.write(f"opt {res.opt}\n")
    out.write(format_coloring(res.witness))
    return EXIT_OK


def _cmd_bounds(args: argparse.Namespace, out: TextIO) -> int:
    if args.graph is not None:
        out.write(plan_guarantee(read_edge_list(args.graph)).render() + "\n")
        return EXIT_OK
    if args.delta is None:
        raise UsageError("bounds needs a graph file or --delta")
    d = args.delta
    if args.k is not None or args.t is not None:
        if args.k is None or args.t is None:
            raise UsageError("--k and --t must be given together")
        if not 0 <= args.k <= d or args.t < 0:
            raise UsageError("need 0 <= k <= delta and t >= 0")
        out.write(f"rho={_frac(rho(d, args.k, args.t))}\n")
        return EXIT_OK
    out.write(f"shannon={_frac(shannon_fraction(d))}\n")
    if d >= 4:
        out.write(f"beyond={_frac(beyond_shannon_fraction(d))}\n")
    if d >= 3:
        out.write(f"connected={_frac(connected_fraction(d))}\n")
    return EXIT_OK


def _cmd_gen(args: argparse.Namespace, out: TextIO) -> int:
    if args.family == "random":
        if args.n < 0 or args.m < 0:
            raise UsageError("--n and --m must be non-negative")
        g = random_multigraph(random.Random(args.seed), args.n, args.m, args.max_deg)
        out.write(format_edge_list(g, [f"random n={args.n} m={args.m} seed={args.seed}"]))
    else:
        g = generate(args.family, args.c)
        out.write(format_edge_list(g, [f"{args.family} c={args.c}"]))
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace, out: TextIO) -> int:
    g = read_edge_list(args.graph)
    with open(args.coloring) as fh:
        col = parse_coloring(fh.read(), g)
    problems = validate(g, col)
    if problems:
        for msg in problems:
            out.write(f"invalid {msg}\n")
        return EXIT_INPUT
    out.write("ok\n")
    return EXIT_OK


COMMANDS = {
    "color": _cmd_color,
    "approx": _cmd_approx,
    "oracle": _cmd_oracle,
    "bounds": _cmd_bounds,
    "gen": _cmd_gen,
    "verify": _cmd_verify,
}


def run(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    logger = logging.getLogger("kecs")
    handler = logging.StreamHandler(err)
    handler.setFormatter(logging.Formatter("%(message)s"))
    level = logger.level
    if args.verbose:
        logger.addHandler(handler)
        logger.setLevel(logging.INFO)
    try:
        return COMMANDS[args.verb](args, out)
    except (OSError, GraphFormatError, ColoringFormatError, UsageError, NodeCapExceeded, ValueError) as exc:
        err.write(f"kecs: error: {exc}\n")
        return EXIT_INPUT
    finally:
        logger.removeHandler(handler)
        logger.setLevel(level)


def main() -> None:
    sys.exit(run())
