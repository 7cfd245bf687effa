"""Command-line front end: ``mul``, ``reflect``, ``verify`` and ``bench``.

Randomness comes from :class:`random.Random` (MT19937).  Each verify or bench
profile gets its own stream seeded with the string ``"<seed>:<d>x<r>"``, so
one profile can be rerun alone and produce the same operators.
"""

from __future__ import annotations

import argparse
import csv
import os
import random
import statistics
import sys
import time

from . import multiply
from .errors import CharacteristicTooSmall, FieldMismatch, ParseError, WeylError
from .evaluation import phi_matrix
from .field import Field, parse_field
from .matrix import mat_mul
from .operator import DiffOperator, apply, naive_mul, psi, reflect_naive
from .poly import Polynomial
from .reflection import reflect_fast, reflect_inverse

EXIT_FAIL, EXIT_PARSE, EXIT_CHAR = 1, 2, 3
VERIFY_FIELD = "fp:2147483647"
VERIFY_PROFILES = "8x8,16x4,4x16,6x6,2x9,9x2"
BENCH_GRID = "256x4,512x4,1024x4,2048x4,4096x4"


def parse_profiles(text: str) -> list[tuple[int, int]]:
    out = []
    for item in text.split(","):
        try:
            d, r = item.lower().split("x")
            out.append((int(d), int(r)))
        except ValueError as exc:
            raise ParseError(f"bad profile {item!r}; expected <d>x<r>") from exc
        if out[-1][0] < 1 or out[-1][1] < 1:
            raise ParseError(f"profile {item!r} must be positive")
    return out


def read_operator(arg: str, field: Field) -> DiffOperator:
    """Operator text, or a path to a file holding text or the JSON form."""
    text = arg
    if os.path.isfile(arg):
        with open(arg, encoding="utf-8") as fh:
            text = fh.read()
    if text.lstrip().startswith("{"):
        op = DiffOperator.from_json(text)
        if op.field != field:
            raise FieldMismatch(f"operator file is over {op.field.name}, --field is {field.name}")
        return op
    return DiffOperator.parse(text, field)


def _emit(args, text: str) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _render(args, op: DiffOperator) -> str:
    return op.to_json() if args.json else str(op)


# -- commands ---------------------------------------------------------------------


def cmd_mul(args) -> int:
    F = parse_field(args.field or "rational")
    K, L = read_operator(args.left, F), read_operator(args.right, F)
    _emit(args, _render(args, multiply.mul(K, L, algorithm=args.algorithm)))
    return 0


def cmd_reflect(args) -> int:
    F = parse_field(args.field or "rational")
    L = read_operator(args.operator, F)
    _emit(args, _render(args, reflect_inverse(L) if args.inverse else reflect_fast(L)))
    return 0


def _checks(K: DiffOperator, L: DiffOperator, rng: random.Random, algorithm: str, fault: bool):
    """Yield ``(name, ok)`` for one random pair."""
    F = K.field
    ref = naive_mul(K, L)
    got = multiply.mul(K, L, algorithm=algorithm)
    if fault and not got.is_zero():
        got = got + DiffOperator.scalar(1, F)
    yield "mul", got == ref
    if algorithm != "fast":
        yield "mul-fast", multiply.mul(K, L, algorithm="fast") == ref
    yield "reflect", reflect_fast(K) == reflect_naive(K)
    yield "reflect-twice", reflect_fast(reflect_fast(L)) == psi(L)
    yield "reflect-inverse", reflect_inverse(reflect_fast(K)) == K
    yield "reflect-morphism", reflect_fast(ref) == naive_mul(reflect_fast(K), reflect_fast(L))
    k = rng.randint(1, 12)
    dK, dL = K.degree_bound, L.degree_bound
    lhs = phi_matrix(ref, k, dx=dK + dL).mat
    rhs = mat_mul(phi_matrix(K, k + dL, dx=dK).mat, phi_matrix(L, k, dx=dL).mat)
    yield "phi-factor", lhs == rhs
    P = Polynomial([F.random(rng) for _ in range(rng.randint(0, 10))], F)
    yield "apply", apply(ref, P) == apply(K, apply(L, P))


def cmd_verify(args) -> int:
    F = parse_field(args.field or VERIFY_FIELD)
    profiles = parse_profiles(args.profiles)
    algorithm = args.algorithm
    lines = [f"verify seed={args.seed} field={F.name} algorithm={algorithm} trials={args.trials}"]
    total = failed = 0
    repro = None
    for d, r in profiles:
        rng = random.Random(f"{args.seed}:{d}x{r}")
        passed = count = 0
        for trial in range(args.trials):
            K = DiffOperator.random(F, d, r, rng)
            L = DiffOperator.random(F, d, r, rng)
            for name, ok in _checks(K, L, rng, algorithm, args.inject_fault):
                count += 1
                passed += ok
                if not ok and repro is None:
                    repro = (d, r, trial, name)
        lines.append(f"profile {d}x{r}: {passed}/{count} passed")
        total += count
        failed += count - passed
    lines.append(f"checks: {total} passed: {total - failed} failed: {failed}")
    if failed:
        d, r, trial, name = repro
        lines.append("FAIL")
        lines.append(f"first failure: check {name!r} in trial {trial} of profile {d}x{r}")
        lines.append(
            f"reproducer: weylmul verify --seed {args.seed} --field {F.name} "
            f"--algorithm {algorithm} --profiles {d}x{r} --trials {trial + 1}"
        )
    else:
        lines.append("PASS")
    _emit(args, "\n".join(lines))
    return EXIT_FAIL if failed else 0


def time_median(fn, reps: int) -> int:
    """Median wall time in ns over ``reps`` runs, after one discarded warm-up."""
    fn()
    samples = []
    for _ in range(reps):
        t0 = time.perf_counter_ns()
        fn()
        samples.append(time.perf_counter_ns() - t0)
    return int(statistics.median(samples))


def bench_rows(field: Field, grid, algorithms, reps: int, seed: int) -> list:
    """``[(algorithm, d, r, field name, reps, median_ns), ...]``."""
    if reps < 3:
        raise ValueError("reps must be at least 3")
    if "fast" in algorithms:
        d_max = max(d for d, _ in grid)
        r_max = max(r for _, r in grid)
        field.check_characteristic(multiply.guard_bound(d_max, r_max))
    rows = []
    for algorithm in algorithms:
        for d, r in grid:
            rng = random.Random(f"{seed}:{d}x{r}")
            K = DiffOperator.random(field, d, r, rng)
            L = DiffOperator.random(field, d, r, rng)
            ns = time_median(lambda: multiply.mul(K, L, algorithm=algorithm), reps)
            rows.append((algorithm, d, r, field.name, reps, ns))
    return rows


def cmd_bench(args) -> int:
    F = parse_field(args.field or VERIFY_FIELD)
    algorithms = [a.strip() for a in args.algorithms.split(",")]
    for a in algorithms:
        if a not in ("naive", "fast"):
            raise ParseError(f"unknown bench algorithm {a!r}")
    rows = bench_rows(F, parse_profiles(args.grid), algorithms, args.reps, args.seed)
    out = open(args.output, "w", newline="", encoding="utf-8") if args.output else sys.stdout
    try:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["algorithm", "d", "r", "field", "reps", "median_ns"])
        w.writerows(rows)
    finally:
        if args.output:
            out.close()
    return 0


# -- argument parsing ---------------------------------------------------------------


def _u64(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 1 << 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    # Subcommands repeat the global flags with suppressed defaults so that a
    # flag given before the command name is not reset by the subparser.
    def default(v):
        return argparse.SUPPRESS if suppress else v

    g = argparse.ArgumentParser(add_help=False)
    g.add_argument("--field", default=default(None),
                   help="rational or fp:<p> (default: rational; verify and bench use fp:2147483647)")
    g.add_argument("--algorithm", choices=("auto", "naive", "fast"), default=default("auto"))
    g.add_argument("--seed", type=_u64, default=default(0))
    g.add_argument("--threads", type=_positive, default=default(1))
    g.add_argument("--output", default=default(None), help="write the result here instead of stdout")
    return g


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags(suppress=True)
    parser = argparse.ArgumentParser(prog="weylmul", parents=[_global_flags(suppress=False)],
                                     description="Exact arithmetic with differential operators in K[x, D].")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mul", parents=[common], help="print the product of two operators")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--json", action="store_true", help="print the JSON form")
    p.set_defaults(func=cmd_mul)

    p = sub.add_parser("reflect", parents=[common], help="apply x -> D, D -> -x")
    p.add_argument("operator")
    p.add_argument("--inverse", action="store_true", help="apply the inverse map x -> -D, D -> x")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_reflect)

    p = sub.add_parser("verify", parents=[common], help="run the randomized oracle suite")
    p.add_argument("--trials", type=_positive, default=25, help="random pairs per profile")
    p.add_argument("--profiles", default=VERIFY_PROFILES, help="comma-separated <d>x<r> list")
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", parents=[common], help="time naive and fast products, CSV output")
    p.add_argument("--grid", default=BENCH_GRID, help="comma-separated <d>x<r> list")
    p.add_argument("--reps", type=int, default=3)
    p.add_argument("--algorithms", default="naive,fast")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    multiply.config.threads = args.threads
    try:
        return args.func(args)
    except CharacteristicTooSmall as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHAR
    except (ParseError, FieldMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (WeylError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
