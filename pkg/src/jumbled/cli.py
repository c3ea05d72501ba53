"""Command-line front end: build profile indexes, answer queries, verify
backends against each other, generate inputs, and benchmark."""

from __future__ import annotations

import argparse
import math
import random
import sys
import time
import tracemalloc
from pathlib import Path

import numpy as np

from .inputs import (
    ParseError,
    gen_string,
    gen_tree,
    gen_weights,
    parse_binary_string_text,
    parse_tree_text,
    parse_weights_text,
    random_parents,
)
from .profiles import (
    Profile,
    occurs,
    read_profile_csv,
    write_profile_csv,
    write_sums_csv,
)
from .strings import (
    BinaryString,
    blocked_profile,
    naive_profile,
    naive_weighted_max_sums,
    recursive_profile,
    weighted_max_sums,
)
from .trees import (
    LabeledTree,
    binarize,
    enumerate_connected_oracle,
    simple_tree_profile,
    tree_profile,
    weighted_tree_max_sums,
)

KINDS = ("string", "tree", "weighted-string", "weighted-tree")

# name -> callable(value, param); param is --block / --micro or None
STRING_BACKENDS = {
    "naive": lambda s, param=None: naive_profile(s),
    "blocked": lambda s, param=None: blocked_profile(s, b=param),
    "recursive": lambda s, param=None: recursive_profile(s),
}
TREE_BACKENDS = {
    "simple-tree": lambda t, param=None: simple_tree_profile(binarize(t)),
    "micro-macro": lambda t, param=None: tree_profile(t, r=param),
    "enumerate": lambda t, param=None: enumerate_connected_oracle(t),
}
WEIGHTED_STRING_BACKENDS = {
    "naive": lambda w, param=None: naive_weighted_max_sums(w),
    "recursive": lambda w, param=None: weighted_max_sums(w),
}
WEIGHTED_TREE_BACKENDS = {
    "simple-tree": lambda t, param=None: weighted_tree_max_sums(t),
}

BUILD_ALGOS = {
    "string": ("naive", "blocked", "recursive"),
    "tree": ("simple-tree", "micro-macro"),
    "weighted-string": ("naive", "recursive"),
    "weighted-tree": ("simple-tree",),
}
DEFAULT_ALGO = {
    "string": "blocked",
    "tree": "micro-macro",
    "weighted-string": "recursive",
    "weighted-tree": "simple-tree",
}
_BACKEND_MAPS = {
    "string": STRING_BACKENDS,
    "tree": TREE_BACKENDS,
    "weighted-string": WEIGHTED_STRING_BACKENDS,
    "weighted-tree": WEIGHTED_TREE_BACKENDS,
}


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def _sqrt_ceil(n: int) -> int:
    return math.isqrt(n - 1) + 1 if n > 1 else 1


def _parse_input(kind: str, text: str):
    if kind == "string":
        return BinaryString(parse_binary_string_text(text))
    if kind == "weighted-string":
        return parse_weights_text(text)
    parents, labels = parse_tree_text(text, weighted=kind == "weighted-tree")
    return LabeledTree(parents, labels)


def cmd_build(args) -> int:
    algo = args.algo or DEFAULT_ALGO[args.kind]
    if algo not in BUILD_ALGOS[args.kind]:
        return _fail(f"backend {algo!r} is not applicable to kind {args.kind!r}")
    for name, value in (("--block", args.block), ("--micro", args.micro)):
        if value is not None and value < 1:
            return _fail(f"{name} must be >= 1")
    try:
        text = Path(args.input).read_text()
    except OSError as exc:
        return _fail(str(exc))
    try:
        value = _parse_input(args.kind, text)
        param = args.block if args.kind == "string" else args.micro
        result = _BACKEND_MAPS[args.kind][algo](value, param)
        if isinstance(result, Profile):
            write_profile_csv(result, args.out)
        else:
            write_sums_csv(result, args.out)
    except (ParseError, ValueError) as exc:
        return _fail(str(exc))
    except OSError as exc:
        return _fail(str(exc))
    return 0


def cmd_query(args) -> int:
    try:
        profile = read_profile_csv(args.profile)
    except (ParseError, OSError) as exc:
        return _fail(str(exc))
    print("yes" if occurs(profile, args.i, args.j) else "no")
    return 0


def _verify_case(kind: str, case: int, max_n: int):
    rng = random.Random(1_000_003 * case + 17)
    n = rng.randint(1, max_n)
    density = rng.choice((0.05, 0.25, 0.5, 0.75, 0.95))
    if kind == "string":
        bits = np.array([1 if rng.random() < density else 0 for _ in range(n)],
                        dtype=np.uint8)
        return BinaryString(bits), "".join(map(str, bits)), n, rng
    if kind == "weighted-string":
        w = np.array([rng.randint(-9, 9) for _ in range(n)], dtype=np.int64)
        return w, " ".join(map(str, w)), n, rng
    parents = random_parents(n, rng)
    if kind == "tree":
        labels = [1 if rng.random() < density else 0 for _ in range(n)]
    else:
        labels = [rng.randint(-9, 9) for _ in range(n)]
    tree = LabeledTree(parents, labels)
    return tree, f"parents={parents} labels={labels}", n, rng


def _draw_param(name: str, n: int, rng: random.Random):
    if name == "blocked":
        return rng.randint(1, n)
    if name == "micro-macro":
        return rng.choice((1, 2, _sqrt_ceil(n), n))
    return None


def _first_difference(want, got):
    if isinstance(want, Profile):
        bad = np.flatnonzero((want.min_ones != got.min_ones)
                             | (want.max_ones != got.max_ones))
        i = int(bad[0])
        return (i + 1,
                f"min={int(want.min_ones[i])} max={int(want.max_ones[i])}",
                f"min={int(got.min_ones[i])} max={int(got.max_ones[i])}")
    bad = np.flatnonzero(np.asarray(want) != np.asarray(got))
    i = int(bad[0])
    return i + 1, str(int(want[i])), str(int(got[i]))


def cmd_verify(args) -> int:
    backends = _BACKEND_MAPS[args.kind]
    for name in (args.algo, args.oracle):
        if name not in backends:
            return _fail(f"unknown backend {name!r} for kind {args.kind!r}")
        if name == "enumerate" and args.max_n > 18:
            return _fail("the enumerate oracle requires --max-n <= 18")
    if args.max_n < 1 or args.seeds < 1:
        return _fail("--max-n and --seeds must be >= 1")
    for case in range(args.seeds):
        value, rendering, n, rng = _verify_case(args.kind, case, args.max_n)
        p_algo = _draw_param(args.algo, n, rng)
        p_oracle = _draw_param(args.oracle, n, rng)
        got = backends[args.algo](value, p_algo)
        want = backends[args.oracle](value, p_oracle)
        same = want == got if isinstance(want, Profile) else np.array_equal(want, got)
        if not same:
            size, expected, actual = _first_difference(want, got)
            print(f"mismatch: kind={args.kind} algo={args.algo} oracle={args.oracle} "
                  f"case={case} n={n} param={p_algo}")
            print(f"input: {rendering}")
            print(f"size {size}: expected {expected}, got {actual}")
            return 1
    print(f"verify: {args.seeds} cases, 0 mismatches "
          f"({args.kind}: {args.algo} vs {args.oracle}, n <= {args.max_n})")
    return 0


def _gen_text(kind: str, n: int, seed: int, density: float) -> str:
    if kind == "string":
        return gen_string(n, seed, density)
    if kind == "weighted-string":
        return gen_weights(n, seed)
    return gen_tree(n, seed, density, weighted=kind == "weighted-tree")


def cmd_gen(args) -> int:
    if args.n < 1:
        return _fail("--n must be >= 1")
    if not 0.0 <= args.density <= 1.0:
        return _fail("--density must lie in [0, 1]")
    try:
        Path(args.out).write_text(_gen_text(args.kind, args.n, args.seed, args.density))
    except OSError as exc:
        return _fail(str(exc))
    return 0


def _split_multi(tokens):
    # accept both space-separated and comma-separated lists
    return [part for tok in tokens for part in tok.split(",") if part]


def cmd_bench(args) -> int:
    kinds = _split_multi(args.kinds)
    algos = _split_multi(args.algos)
    try:
        sizes = [int(tok) for tok in _split_multi(args.sizes)]
    except ValueError as exc:
        return _fail(f"--sizes expects integers: {exc}")
    for kind in kinds:
        if kind not in KINDS:
            return _fail(f"unknown kind {kind!r}")
    if any(n < 1 for n in sizes):
        return _fail("--sizes entries must be >= 1")
    rows = []
    for kind in kinds:
        for algo in algos:
            if algo not in BUILD_ALGOS[kind]:
                continue
            for n in sizes:
                value = _parse_input(kind, _gen_text(kind, n, args.seed, 0.5))
                if algo == "blocked":
                    param = _sqrt_ceil(n)
                elif algo == "micro-macro":
                    param = _sqrt_ceil(n)
                else:
                    param = None
                fn = _BACKEND_MAPS[kind][algo]
                tracemalloc.start()
                t0 = time.perf_counter()
                fn(value, param)
                elapsed = time.perf_counter() - t0
                _, peak = tracemalloc.get_traced_memory()
                tracemalloc.stop()
                rows.append((kind, algo, n, "" if param is None else param,
                             f"{elapsed:.6f}", peak))
    if not rows:
        return _fail("no compatible kind/algo combinations requested")
    try:
        with open(args.out, "w", newline="") as fh:
            fh.write("kind,algo,n,param,seconds,peak_bytes\n")
            for row in rows:
                fh.write(",".join(str(f) for f in row) + "\n")
    except OSError as exc:
        return _fail(str(exc))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jumbled",
        description="Jumbled-pattern-matching indexes for binary strings and trees.")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("build", help="index an input file and write the profile CSV")
    p.add_argument("--input", required=True)
    p.add_argument("--kind", choices=KINDS, default="string")
    p.add_argument("--algo", choices=sorted({a for algos in BUILD_ALGOS.values() for a in algos}))
    p.add_argument("--block", type=int, help="block length for the blocked backend")
    p.add_argument("--micro", type=int, help="micro tree size bound for micro-macro")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("query", help="answer an occurrence query against a profile CSV")
    p.add_argument("--profile", required=True)
    p.add_argument("-i", type=int, required=True, help="subgraph/window size")
    p.add_argument("-j", type=int, required=True, help="number of 1s")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("verify", help="randomized equivalence check of two backends")
    p.add_argument("--algo", required=True)
    p.add_argument("--oracle", required=True)
    p.add_argument("--max-n", type=int, default=200)
    p.add_argument("--seeds", type=int, default=100)
    p.add_argument("--kind", choices=KINDS, default="string")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="generate a random input file")
    p.add_argument("--kind", choices=KINDS, default="string")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--density", type=float, default=0.5,
                   help="probability of a 1 label (ignored for weighted kinds)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="time index construction, write a CSV table")
    p.add_argument("--kinds", nargs="+", default=["string"])
    p.add_argument("--algos", nargs="+", required=True)
    p.add_argument("--sizes", nargs="+", required=True)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    if getattr(args, "func", None) is None:
        parser.print_help(sys.stderr)
        return 2
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
