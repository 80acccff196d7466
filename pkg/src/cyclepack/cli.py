"""Command line front end.

Exit codes: 0 success, 1 input error, 2 guarantee or checker violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .errors import CyclePackError, InputError, VerificationFailure
from .harness import generators as gens
from .harness.instance import Instance, Report, frac_to_str
from .harness.pipeline import reduce_instance, run_certify, run_oracle, run_round, run_solve
from .rounding import greedy_round

EXIT_OK, EXIT_INPUT, EXIT_VIOLATION = 0, 1, 2


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _load(args: argparse.Namespace) -> Instance:
    try:
        text = Path(args.instance).read_text()
    except OSError as exc:
        raise InputError(f"cannot read instance: {exc}") from exc
    inst = Instance.loads(text)
    if args.mode:
        inst = inst.with_mode(args.mode)
    return inst


def _generate(args: argparse.Namespace) -> Instance:
    if args.generator == "nested":
        prof = gens.NestedProfile(args.depth, args.branching, args.touch, args.width, args.height)
        return gens.gen_nested(prof, args.seed)
    if args.generator == "random":
        return gens.gen_random_planar(args.width, args.height, args.seed, args.kind)
    if args.generator == "figure":
        named = dict(gens.figure_instances())
        if args.name not in named:
            raise InputError(f"unknown figure {args.name!r}; choose from {sorted(named)}")
        return named[args.name]
    if args.generator == "small":
        graphs = dict(gens.small_graphs())
        if args.name not in graphs:
            raise InputError(f"unknown graph {args.name!r}; choose from {sorted(graphs)}")
        g = graphs[args.name]
        demand = (0,) if args.kind == "dcycles" else ()
        return Instance(g, gens.capped_family(g, args.kind, demand), "vertex", 0, {"generator": "small", "graph": args.name})
    raise InputError(f"unknown generator {args.generator!r}")


def cmd_gen(args: argparse.Namespace) -> int:
    if args.generator == "corpus":
        out = Path(args.out or "corpus")
        out.mkdir(parents=True, exist_ok=True)
        for name, inst in gens.corpus(args.size, args.seed if args.seed else gens.CORPUS_SEED):
            (out / f"{name}.json").write_text(inst.dumps() + "\n")
        return EXIT_OK
    inst = _generate(args)
    if args.mode:
        inst = inst.with_mode(args.mode)
    _write(inst.dumps(), args.out)
    return EXIT_OK


def _report_cmd(runner):
    def run(args: argparse.Namespace) -> int:
        inst = _load(args)
        rep: Report = runner(inst, Path(args.instance).stem)
        _write(rep.dumps(), args.out)
        return EXIT_OK if rep.ok else EXIT_VIOLATION

    return run


def cmd_oracle(args: argparse.Namespace) -> int:
    inst = _load(args)
    rep = run_oracle(inst, Path(args.instance).stem, args.budget)
    _write(rep.dumps(), args.out)
    return EXIT_OK if rep.ok else EXIT_VIOLATION


def cmd_reduce(args: argparse.Namespace) -> int:
    inst = _load(args)
    _write(reduce_instance(inst).dumps(), args.out)
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    rows = []
    failures = 0
    for name, inst in gens.corpus(args.size, args.seed if args.seed else gens.CORPUS_SEED):
        cycles = inst.cycles()
        for mode in (args.mode,) if args.mode else ("vertex", "edge"):
            try:
                packing, trace = greedy_round(inst.graph, cycles, mode)
            except VerificationFailure as exc:
                failures += 1
                rows.append({"instance": name, "mode": mode, "error": str(exc)})
                continue
            ratio = None if not packing else trace.lp_value / len(packing)
            rows.append(
                {
                    "instance": name,
                    "mode": mode,
                    "cycles": len(cycles),
                    "lp_value": frac_to_str(trace.lp_value),
                    "packing": len(packing),
                    "lp_over_packing": None if ratio is None else frac_to_str(ratio),
                    "guarantee": trace.guarantee,
                }
            )
    ratios = [Fraction(r["lp_over_packing"]) for r in rows if r.get("lp_over_packing")]
    summary = {
        "instances": len(rows),
        "failures": failures,
        "max_lp_over_packing": frac_to_str(max(ratios)) if ratios else None,
        "mean_lp_over_packing": round(float(sum(ratios) / len(ratios)), 6) if ratios else None,
    }
    if args.out:
        Path(args.out).write_text(json.dumps({"rows": rows, "summary": summary}, indent=2) + "\n")
    print(f"{'instance':<24}{'mode':<8}{'cycles':>7}{'LP':>10}{'packing':>9}{'LP/pack':>10}")
    for r in rows:
        if "error" in r:
            print(f"{r['instance']:<24}{r['mode']:<8}  error: {r['error']}")
            continue
        q = Fraction(r["lp_over_packing"]) if r["lp_over_packing"] else None
        shown = "-" if q is None else f"{float(q):.3f}"
        print(f"{r['instance']:<24}{r['mode']:<8}{r['cycles']:>7}{r['lp_value']:>10}{r['packing']:>9}{shown:>10}")
    print(json.dumps(summary))
    return EXIT_OK if failures == 0 else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cyclepack", description="Greedy LP rounding for planar cycle packing.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp: argparse.ArgumentParser, needs_instance: bool = True) -> None:
        if needs_instance:
            sp.add_argument("--instance", required=True, help="instance JSON file")
        sp.add_argument("--out", help="output file (default: stdout)")
        sp.add_argument("--mode", choices=("vertex", "edge"), help="override the instance mode")
        sp.add_argument("--budget", type=int, default=5_000_000, help="search budget for oracles")
        sp.add_argument("--seed", type=int, default=0)

    g = sub.add_parser("gen", help="generate an instance or the corpus")
    common(g, needs_instance=False)
    g.add_argument("--generator", choices=("nested", "random", "figure", "small", "corpus"), default="nested")
    g.add_argument("--depth", type=int, default=2)
    g.add_argument("--branching", type=int, default=3)
    g.add_argument("--touch", choices=gens.TOUCH_PATTERNS, default="mixed")
    g.add_argument("--width", type=int, default=6)
    g.add_argument("--height", type=int, default=5)
    g.add_argument("--kind", choices=("all", "odd", "dcycles"), default="all")
    g.add_argument("--name", default="figure1")
    g.add_argument("--size", type=int, default=200, help="corpus size")
    g.set_defaults(func=cmd_gen)

    for name, runner, text in (
        ("solve", run_solve, "solve the packing LP exactly"),
        ("round", run_round, "greedy rounding with guarantee checks"),
        ("certify", run_certify, "build and check structure certificates"),
    ):
        sp = sub.add_parser(name, help=text)
        common(sp)
        sp.set_defaults(func=_report_cmd(runner))

    o = sub.add_parser("oracle", help="brute-force packing and transversal numbers")
    common(o)
    o.set_defaults(func=cmd_oracle)

    r = sub.add_parser("reduce", help="emit the reduced vertex instance of a laminar family")
    common(r)
    r.set_defaults(func=cmd_reduce)

    b = sub.add_parser("bench", help="round the seeded corpus and tabulate ratios")
    common(b, needs_instance=False)
    b.add_argument("--size", type=int, default=200)
    b.set_defaults(func=cmd_bench)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except VerificationFailure as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except CyclePackError as exc:
        print(f"input error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
