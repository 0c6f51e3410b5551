"""Command line interface.

Exit codes for `solve` name the certificate variant: 0 Hamiltonian
cycle, 10 toughness witness, 20 no 2-factor, 30 not 2K2-free, 40
anomaly. `verify` exits 0 on a valid certificate and 1 otherwise.
Anything unreadable (bad graph text, bad flags, out-of-range sizes)
exits 2.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .errors import CycleCertError, ParseError, TooLarge, TooSmall
from .factor import find_two_factor
from .generate import GenSpec, enumerate_2k2_free, generate
from .graph import Graph
from .recognize import find_induced_2k2, toughness_exact
from .report import run_sweep
from .solve import (
    EXIT_CODES,
    certificate_from_json,
    certificate_to_json,
    dumps_canonical,
    solve,
    to_dot,
    verify_certificate,
)

__all__ = ["main"]


def _read_graph(path: str) -> Graph:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return Graph.from_text(text)


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a fraction: {text!r}") from exc


def _fraction_str(x: Fraction | None) -> str:
    if x is None:
        return "inf"
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def _cmd_analyze(args) -> int:
    g = _read_graph(args.graph)
    pair = find_induced_2k2(g)
    info: dict = {
        "n": g.n,
        "m": g.m,
        "two_k2_free": pair is None,
    }
    if pair is not None:
        info["induced_2k2"] = [list(pair[0]), list(pair[1])]
    if g.n <= args.max_n:
        result = toughness_exact(g, max_n=args.max_n)
        info["toughness"] = _fraction_str(result.value)
        if result.witness is not None:
            info["toughness_cut"] = list(result.witness)
    f = find_two_factor(g)
    info["two_factor"] = None if f is None else [list(c.order) for c in f.cycles]
    print(dumps_canonical(info))
    return 0


def _cmd_solve(args) -> int:
    g = _read_graph(args.graph)
    cert = solve(g, args.t)
    if args.format == "dot":
        payload = to_dot(g, cert)
    else:
        payload = dumps_canonical(certificate_to_json(cert)) + "\n"
    if args.out:
        Path(args.out).write_text(payload)
    else:
        sys.stdout.write(payload)
    return EXIT_CODES[cert.variant]


def _cmd_verify(args) -> int:
    g = _read_graph(args.graph)
    cert = certificate_from_json(json.loads(Path(args.certificate).read_text()))
    ok, reason = verify_certificate(g, cert, args.t)
    print(f"{'PASS' if ok else 'FAIL'}: {reason}")
    return 0 if ok else 1


def _cmd_gen(args) -> int:
    params: tuple[tuple[str, int], ...] = ()
    if args.kind == "multipartite":
        if not args.parts:
            raise ParseError("multipartite generation needs --parts")
        parts = tuple(int(p) for p in args.parts.split(","))
        params = tuple(("part", p) for p in parts)
        spec = GenSpec("multipartite", sum(parts), args.seed, params)
    elif args.kind == "random":
        spec = GenSpec("random", args.n, args.seed, (("p", args.p),))
    else:
        spec = GenSpec(args.kind, args.n, args.seed)
    g = generate(spec)
    text = g.to_text()
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_sweep(args) -> int:
    specs = []
    for i in range(args.count):
        n = args.n_min + (i % (args.n_max - args.n_min + 1))
        specs.append(GenSpec(args.kind, n, args.seed + i))
    report = run_sweep(
        specs,
        t=args.t,
        out_dir=args.out_dir,
        compute_toughness=args.toughness,
        figures=not args.no_figures,
    )
    summary = report.summary()
    print(
        f"swept {summary['total']} instances, verified {summary['verified']}; "
        f"files in {args.out_dir}"
    )
    for variant, count in summary["variants"].items():
        print(f"  {variant}: {count}")
    return 0


def _cmd_enumerate(args) -> int:
    levels = enumerate_2k2_free(args.max_n)
    for n in sorted(levels):
        print(f"n={n}: {len(levels[n])} graphs")
        if args.list:
            for g in levels[n]:
                edges = " ".join(f"{u}-{v}" for u, v in g.edges())
                print(f"  {edges if edges else '(edgeless)'}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cyclecert",
        description=(
            "Certifying Hamiltonicity for 2K2-free graphs: emit a "
            "Hamiltonian cycle or a toughness violation, both checkable."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="structural facts about a graph")
    p.add_argument("graph", help="graph file, or - for stdin")
    p.add_argument("--max-n", type=int, default=24,
                   help="skip exact toughness above this size")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("solve", help="emit a certificate")
    p.add_argument("graph")
    p.add_argument("--t", type=_fraction, default=Fraction(3),
                   help="toughness threshold, e.g. 3 or 5/2")
    p.add_argument("--format", choices=["json", "dot"], default="json")
    p.add_argument("--out", help="write to file instead of stdout")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("verify", help="check a certificate against a graph")
    p.add_argument("graph")
    p.add_argument("certificate")
    p.add_argument("--t", type=_fraction, default=Fraction(3))
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("gen", help="write a generated graph")
    p.add_argument("--kind", choices=["split", "cochordal", "multipartite", "random"],
                   required=True)
    p.add_argument("--n", type=int, default=12)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--p", type=int, default=50,
                   help="edge percentage for the random kind")
    p.add_argument("--parts", help="comma-separated part sizes for multipartite")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("sweep", help="solve a batch and write reports")
    p.add_argument("--kind", choices=["split", "cochordal"], default="split")
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--n-min", type=int, default=12)
    p.add_argument("--n-max", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--t", type=_fraction, default=Fraction(3))
    p.add_argument("--out-dir", required=True)
    p.add_argument("--toughness", action="store_true",
                   help="also record exact toughness per instance")
    p.add_argument("--no-figures", action="store_true")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("enumerate", help="count small 2K2-free graphs")
    p.add_argument("--max-n", type=int, default=7)
    p.add_argument("--list", action="store_true", help="print edge lists too")
    p.set_defaults(func=_cmd_enumerate)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, TooSmall, TooLarge, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CycleCertError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
