"""Command-line interface.

Exit codes: 0 solved / valid, 1 no tree within the budget / invalid tree,
2 bad input, refused request or timeout.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from . import bench as bench_mod
from .dataset import DatasetError, load_csv
from .deadline import Deadline, SolverTimeout
from .dp import dp_min_size
from .fpt import fpt_min_tree, solve_bounded, solve_with_red_leaf_bound
from .generate import random_dataset, xor_grid
from .hardness import PsiError, build_reduction, normalize_psi, parse_psi
from .oracle import MAX_ORACLE_SIZE, OracleLimits, brute_tree
from .tree import TreeFormatError, from_json, size, stats, to_json, validate

EXIT_OK, EXIT_NONE, EXIT_ERROR = 0, 1, 2
DP_MAX_DIM = 3


class UsageError(Exception):
    pass


def _dims(text: str | None, d: int):
    if text is None:
        return None
    try:
        dims = {int(tok) - 1 for tok in text.split(",") if tok.strip()}
    except ValueError:
        raise UsageError(f"bad --dims {text!r}") from None
    if not dims or any(not 0 <= i < d for i in dims):
        raise UsageError(f"--dims must list dimensions in 1..{d}")
    return frozenset(dims)


def choose_algo(args) -> str:
    if args.algo != "auto":
        return args.algo
    restricted = args.max_size is not None or args.red_leaves is not None or args.dims is not None
    return "fpt" if restricted else "dp"


def _write(path, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def cmd_solve(args) -> int:
    ds = load_csv(args.data, args.header)
    algo = choose_algo(args)
    dims = _dims(args.dims, ds.d)
    deadline = Deadline(args.timeout)

    if algo == "dp":
        if ds.d > DP_MAX_DIM and not args.force:
            raise UsageError(f"dp on d={ds.d} is expected to blow up; pass --force to run anyway")
        if dims is not None or args.red_leaves is not None:
            raise UsageError("dp supports neither --dims nor --red-leaves")
        tree = dp_min_size(ds, shrink=args.shrink, prune=args.prune, deadline=deadline).tree
        if args.max_size is not None and size(tree) > args.max_size:
            tree = None
    elif algo == "fpt":
        if args.red_leaves is not None:
            if dims is not None:
                raise UsageError("--red-leaves cannot be combined with --dims")
            red = ds.class_id(args.red_class) if args.red_class is not None else 0
            tree = solve_with_red_leaf_bound(ds, args.red_leaves, red, cache=args.cache, deadline=deadline)
        elif args.max_size is not None:
            tree = solve_bounded(ds, args.max_size, dims, cache=args.cache, deadline=deadline)
        else:
            tree = fpt_min_tree(ds, dims_allowed=dims, cache=args.cache, deadline=deadline)
    elif algo == "oracle":
        cap = MAX_ORACLE_SIZE if args.max_size is None else args.max_size
        try:
            tree = brute_tree(ds, OracleLimits(cap, dims))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    else:
        raise UsageError(f"unknown algorithm {algo!r}")

    if tree is None:
        print("none within budget")
        return EXIT_NONE
    print(size(tree))
    if args.tree_out:
        _write(args.tree_out, to_json(tree, ds))
    return EXIT_OK


def cmd_verify(args) -> int:
    ds = load_csv(args.data, args.header)
    tree = from_json(Path(args.tree).read_text(encoding="utf-8"), ds)
    red = ds.class_id(args.red_class) if args.red_class is not None else 0
    st = stats(tree, ds, red)
    ok = validate(tree, ds)
    print(f"valid={'yes' if ok else 'no'}")
    print(f"size={st.size}")
    for c, count in st.leaf_count_per_class.items():
        print(f"leaves[{ds.label_names[c]}]={count}")
    print(f"essential={st.essential_count} (red={ds.label_names[red]})")
    print(f"max_consecutive_nonessential={st.max_consecutive_nonessential}")
    return EXIT_OK if ok else EXIT_NONE


def cmd_gen_xor(args) -> int:
    if args.grid < 1:
        raise UsageError("--grid must be positive")
    _write(args.out, xor_grid(args.grid).to_csv())
    return EXIT_OK


def cmd_gen_random(args) -> int:
    rng = random.Random(args.seed)
    try:
        if args.count is None:
            _write(args.out, random_dataset(rng, args.n, args.d, args.k, args.max_coord).to_csv())
            return EXIT_OK
        if args.out == "-":
            raise UsageError("--count needs --out DIR")
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for idx in range(args.count):
            ds = random_dataset(rng, args.n, args.d, args.k, args.max_coord)
            (out / f"random_{idx:03d}.csv").write_text(ds.to_csv(), encoding="utf-8")
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return EXIT_OK


def cmd_gen_psi(args) -> int:
    p = normalize_psi(parse_psi(Path(args.input).read_text(encoding="utf-8")))
    red = build_reduction(p)
    _write(args.out, red.dataset.to_csv())
    if args.budget_out:
        Path(args.budget_out).write_text(f"{red.budget}\n", encoding="utf-8")
    else:
        print(f"budget={red.budget}", file=sys.stderr)
    return EXIT_OK


def cmd_bench(args) -> int:
    corpus = Path(args.corpus)
    if not corpus.is_dir():
        raise UsageError(f"{corpus} is not a directory")
    algos = [a.strip() for a in args.algos.split(",") if a.strip()]
    bad = [a for a in algos if a not in bench_mod.ALGOS]
    if bad or not algos:
        raise UsageError(f"unknown algorithms {bad}")
    rows = bench_mod.run_bench(sorted(corpus.glob("*.csv")), algos, args.timeout, args.header)
    timing = not args.no_timing
    sys.stdout.write(bench_mod.format_text(rows, algos, timing))
    if args.csv_out:
        _write(args.csv_out, bench_mod.format_csv(rows, timing))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dtsize", description="Exact minimum-size decision trees.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="compute a minimum-size consistent tree")
    p.add_argument("data")
    p.add_argument("--header", action="store_true", help="input CSV has a header row")
    p.add_argument("--algo", choices=["auto", "dp", "fpt", "oracle"], default="auto")
    p.add_argument("--max-size", type=int)
    p.add_argument("--dims", help="comma-separated 1-based dimensions allowed for cuts")
    p.add_argument("--red-leaves", type=int, metavar="R")
    p.add_argument("--red-class", metavar="NAME")
    p.add_argument("--tree-out", help="write the witness tree as JSON ('-' for stdout)")
    p.add_argument("--no-cache", dest="cache", action="store_false",
                   help="fpt: disable the per-subset result cache (plain recursion)")
    p.add_argument("--shrink", action="store_true", help="dp: key boxes by their bounding box")
    p.add_argument("--prune", action="store_true", help="dp: skip cuts with an empty side")
    p.add_argument("--force", action="store_true", help="allow dp on d >= 4")
    p.add_argument("--timeout", type=float, help="seconds")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a tree JSON against a dataset")
    p.add_argument("tree")
    p.add_argument("data")
    p.add_argument("--header", action="store_true")
    p.add_argument("--red-class", metavar="NAME")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen-xor", help="checkerboard grid instance")
    p.add_argument("--grid", type=int, default=2)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_gen_xor)

    p = sub.add_parser("gen-random", help="seeded random instance(s)")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--max-coord", type=int, default=5)
    p.add_argument("--count", type=int, help="write COUNT files into the --out directory")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_gen_random)

    p = sub.add_parser("gen-psi", help="reduce a PSI instance to a decision-tree instance")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", default="-")
    p.add_argument("--budget-out")
    p.set_defaults(func=cmd_gen_psi)

    p = sub.add_parser("bench", help="run solvers over a corpus directory")
    p.add_argument("corpus")
    p.add_argument("--algos", default=",".join(bench_mod.ALGOS))
    p.add_argument("--timeout", type=float, default=10.0)
    p.add_argument("--header", action="store_true")
    p.add_argument("--csv-out")
    p.add_argument("--no-timing", action="store_true", help="omit wall times so reports are reproducible")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, DatasetError, TreeFormatError, PsiError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except SolverTimeout as exc:
        print(f"timeout: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
