"""Command-line entry point: ``distcirc <subcommand> ...``.

Exit codes are 0 on success, 1 when a check fails or no factor is found (or
an output file cannot be written), and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from typing import Optional

from . import __version__
from .coherence import DEFAULT_TOLERANCE
from .iterator import build_efficient, build_naive, efficient_circuit, gate_counts, naive_circuit, verify_equivalence
from .morphisms import from_matrix, mor_to_json, semiring_by_name
from .sampling import DEFAULT_SEED, random_endo, random_unitary, rng_for
from .shapes import Atom
from .shor import factor, oracle
from .suites import SUITES, all_suites

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass
class RunConfig:
    subcommand: str
    seed: int = DEFAULT_SEED
    tolerance: float = DEFAULT_TOLERANCE
    trials: int = 20
    out: Optional[str] = None
    format: str = "text"


class _Output:
    """Collects lines for stdout or ``--out``."""

    def __init__(self, path: Optional[str]):
        self.path = path
        self.lines: list[str] = []

    def emit(self, line: str):
        if self.path is None:
            print(line, flush=True)
        else:
            self.lines.append(line)

    def close(self) -> int:
        if self.path is None:
            return EXIT_OK
        return _write(self.path, "".join(line + "\n" for line in self.lines))


def _write(path: str, text: str) -> int:
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: cannot write {path}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def _seed(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return v


def _positive_float(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be > 0")
    return v


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _config(args, name: str) -> RunConfig:
    return RunConfig(name, args.seed, args.tolerance, getattr(args, "trials", 20), args.out, args.format)


# --- subcommands -------------------------------------------------------------

def cmd_verify(args) -> int:
    cfg = _config(args, "verify")
    names = SUITES if args.suite == "all" else (args.suite,)
    ns = None if args.n is None else (args.n,)
    dims = None if args.dim is None else (args.dim,)
    out = _Output(cfg.out)
    total = failed = 0
    for rep in all_suites(names, cfg.seed, cfg.trials, cfg.tolerance, ns, dims):
        total += 1
        failed += not rep.passed
        out.emit(rep.to_json() if cfg.format == "json" else str(rep))
    if cfg.format == "text":
        out.emit(f"{total - failed}/{total} checks passed")
    code = out.close()
    return EXIT_FAIL if failed or code else EXIT_OK


def _best_time(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def cmd_bench(args) -> int:
    cfg = _config(args, "bench")
    rng = rng_for(cfg.seed, "bench", args.dim)
    f = from_matrix(random_unitary(args.dim, rng), Atom("X", args.dim))
    out = _Output(cfg.out)
    if cfg.format == "text":
        out.emit(f"{'n':>3} {'naive':>8} {'efficient':>9} {'t_naive_s':>11} {'t_efficient_s':>13}")
    for n in range(1, args.n_max + 1):
        counts = gate_counts(n)
        row = {"n": n, "naive": counts["naive"], "efficient": counts["efficient"],
               "t_naive": None, "t_efficient": None}
        if n <= args.time_max:
            row["t_naive"] = _best_time(lambda: build_naive(f, 1 << n), args.repeat)
            row["t_efficient"] = _best_time(lambda: build_efficient(f, n), args.repeat)
        if cfg.format == "json":
            out.emit(json.dumps(row))
        else:
            tn = "-" if row["t_naive"] is None else f"{row['t_naive']:.6f}"
            te = "-" if row["t_efficient"] is None else f"{row['t_efficient']:.6f}"
            out.emit(f"{n:>3} {row['naive']:>8} {row['efficient']:>9} {tn:>11} {te:>13}")
    return out.close()


def cmd_export(args) -> int:
    if args.kind == "shor-oracle":
        try:
            circ = oracle(args.r, args.K, args.n)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
    elif args.kind == "efficient":
        circ = efficient_circuit(args.n, target_dim=args.dim)
    else:
        circ = naive_circuit(args.n, target_dim=args.dim)
    text = circ.to_json()
    if args.out is None:
        sys.stdout.write(text)
        return EXIT_OK
    return _write(args.out, text)


def cmd_iterate(args) -> int:
    cfg = _config(args, "iterate")
    sr = semiring_by_name(args.semiring)
    rng = rng_for(cfg.seed, "iterate", args.n, args.dim, sr.name)
    f = random_endo(Atom("X", args.dim), sr, rng)
    t0 = time.perf_counter()
    build = build_efficient(f, args.n) if args.form == "efficient" else build_naive(f, 1 << args.n)
    elapsed = time.perf_counter() - t0
    rep = verify_equivalence(f, args.n, cfg.tolerance, seed=cfg.seed)
    summary = {
        "form": args.form, "n": args.n, "dim": args.dim, "semiring": sr.name,
        "stage_count": build.stage_count, "powers_computed": build.powers_computed,
        "build_seconds": elapsed, "equivalence": rep.to_dict(),
    }
    out = _Output(cfg.out)
    if cfg.format == "json":
        out.emit(json.dumps(summary))
    else:
        out.emit(f"{args.form} iterator n={args.n} dim={args.dim} ({sr.name}): "
                 f"{build.stage_count} stages, build {elapsed:.6f}s")
        out.emit(str(rep))
    code = out.close()
    if args.export is not None:
        code = code or _write(args.export, json.dumps(mor_to_json(build.result)) + "\n")
    return EXIT_FAIL if code or not rep.passed else EXIT_OK


def cmd_factor(args) -> int:
    if args.K < 4:
        print(f"error: --K must be >= 4, got {args.K}", file=sys.stderr)
        return EXIT_USAGE
    try:
        run = factor(args.K, n=args.controls, shots=args.shots, seed=args.seed,
                     max_attempts=args.max_attempts, base=args.base, inverse=args.inverse)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.json or args.format == "json":
        text = run.to_json()
    elif run.factors:
        text = (f"K={run.K}: factors {run.factors[0]} {run.factors[1]} "
                f"(method {run.method}, base {run.base}, period {run.period}, attempts {run.attempts})\n")
    elif run.method == "prime":
        text = f"K={run.K}: no nontrivial factor (prime)\n"
    else:
        text = f"K={run.K}: no nontrivial factor found after {run.attempts} attempts\n"
    if args.out is None:
        sys.stdout.write(text)
        code = EXIT_OK
    else:
        code = _write(args.out, text)
    return EXIT_FAIL if code or not run.factors else EXIT_OK


# --- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_seed, default=DEFAULT_SEED, help="root seed (default %(default)s)")
    common.add_argument("--tolerance", type=_positive_float, default=DEFAULT_TOLERANCE,
                        help="max-abs tolerance for inexact checks")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", default=None, help="write output to this file instead of stdout")

    parser = argparse.ArgumentParser(prog="distcirc", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("suite", choices=SUITES + ("all",))
    p.add_argument("--trials", type=_positive_int, default=20, help="random instances per check")
    p.add_argument("--n", type=_positive_int, default=None, help="iterator suite: only this n")
    p.add_argument("--dim", type=_positive_int, default=None, help="iterator suite: only this target dimension")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", parents=[common], help="gate counts and build times")
    p.add_argument("--n-max", type=_positive_int, default=10)
    p.add_argument("--dim", type=_positive_int, default=2)
    p.add_argument("--time-max", type=int, default=10, help="time builds only for n up to this")
    p.add_argument("--repeat", type=_positive_int, default=3, help="best-of repeats per timing")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("export", parents=[common], help="write a circuit as JSON")
    p.add_argument("kind", choices=("naive", "efficient", "shor-oracle"))
    p.add_argument("--n", type=_positive_int, default=4, help="control qubits")
    p.add_argument("--dim", type=_positive_int, default=2, help="target dimension")
    p.add_argument("--r", type=int, default=7, help="shor-oracle base")
    p.add_argument("--K", type=int, default=15, help="shor-oracle modulus")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("iterate", parents=[common], help="build one iterator and check it")
    p.add_argument("--n", type=_positive_int, default=4)
    p.add_argument("--dim", type=_positive_int, default=2)
    p.add_argument("--form", choices=("naive", "efficient"), default="efficient")
    p.add_argument("--semiring", choices=("complex", "boolean"), default="complex")
    p.add_argument("--export", default=None, help="write the built matrix as JSON")
    p.set_defaults(func=cmd_iterate)

    p = sub.add_parser("factor", parents=[common], help="factor an integer by period finding")
    p.add_argument("--K", type=int, required=True)
    p.add_argument("--base", type=int, default=None, help="fixed base r instead of random draws")
    p.add_argument("--controls", type=_positive_int, default=None,
                   help="control qubits (default 2*ceil(log2 K))")
    p.add_argument("--shots", type=_positive_int, default=32)
    p.add_argument("--max-attempts", type=_positive_int, default=8)
    p.add_argument("--inverse", action="store_true", help="inverse QFT on the control register")
    p.add_argument("--json", action="store_true", help="emit the FactorRun JSON document")
    p.set_defaults(func=cmd_factor)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    return args.func(args)


def entry():
    sys.exit(main())
