"""Command-line interface.

Exit codes: 0 success, 2 usage error, 3 invalid input, 4 node budget
exhausted (the best result found is still written).  Every error prints a
single ``error: <category>: <detail>`` line on stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from . import formats
from .codec import build_codebook, decode, encode
from .covergen import DensitySpec
from .entropy import partition_entropy
from .errors import CoverEntropyError, ValidationError
from .families import cover_validate, is_partition
from .measure import GroundSpace, validate
from .reduction import TiePolicy, reduce
from .solver import DEFAULT_BUDGET, brute_force_oracle, solve_exact, solve_greedy
from .sweep import EXACT_COVER_LIMIT, eps_schedule, sweep

EXIT_BUDGET = 4
LOG_LEVELS = {"quiet": logging.WARNING, "info": logging.INFO, "trace": logging.DEBUG}

log = logging.getLogger("cover_entropy")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _load_space(path) -> GroundSpace:
    space = formats.load_measure(path)
    problems = validate(space)
    if problems:
        raise ValidationError(f"{path}: " + "; ".join(problems))
    return space


def _load_cover(path, space):
    cover = formats.load_cover(path, space)
    problems = cover_validate(space, cover)
    if problems:
        raise ValidationError(f"{path}: " + "; ".join(problems))
    return cover


def _load_partition(path, space):
    p = formats.load_partition(path, space)
    problems = is_partition(space, p)
    if problems:
        raise ValidationError(f"{path}: " + "; ".join(problems))
    return p


def _print_json(obj) -> None:
    print(json.dumps(obj))


def cmd_entropy(args) -> int:
    space = _load_space(args.measure)
    p = _load_partition(args.partition, space)
    print(partition_entropy(space, p))
    return 0


def cmd_reduce(args) -> int:
    space = _load_space(args.measure)
    cover = _load_cover(args.cover, space)
    p = _load_partition(args.partition, space)
    result = reduce(space, cover, p, TiePolicy(cover=args.policy))
    if args.out:
        formats.save_partition(args.out, result.partition, space)
    if args.trace:
        formats.write_json(args.trace, result.trace.as_dict())
    _print_json(
        {
            "entropy_in": partition_entropy(space, p),
            "entropy_out": partition_entropy(space, result.partition),
            "ordering": [cover.sets[i].id for i in result.ordering],
            "steps": len(result.trace.steps),
        }
    )
    return 0


def cmd_solve(args) -> int:
    space = _load_space(args.measure)
    cover = _load_cover(args.cover, space)
    method = args.method
    if method == "auto":
        method = "exact" if len(cover) <= EXACT_COVER_LIMIT else "greedy"
    if method == "exact":
        result = solve_exact(space, cover, args.budget_nodes)
    elif method == "greedy":
        result = solve_greedy(space, cover)
    else:
        result = brute_force_oracle(space, cover)
    out = result.as_dict(cover)
    if args.out:
        formats.write_json(args.out, {**out, **formats.partition_to_dict(result.partition, space)})
    _print_json(out)
    if result.method == "exact" and not result.optimal:
        print("error: budget: node budget exhausted; result is not proven optimal", file=sys.stderr)
        return EXIT_BUDGET
    return 0


def cmd_encode(args) -> int:
    space = _load_space(args.measure)
    p = _load_partition(args.partition, space)
    codebook = build_codebook(space, p)
    atoms = formats.read_atom_csv(args.data)
    stream = encode(codebook, atoms)
    with open(args.out, "wb") as f:
        f.write(stream)
    log.info("encoded %d symbols into %d bytes", len(atoms), len(stream))
    return 0


def cmd_decode(args) -> int:
    with open(args.input, "rb") as f:
        data = f.read()
    codebook = None
    space = None
    if args.measure and args.partition:
        space = _load_space(args.measure)
        codebook = build_codebook(space, _load_partition(args.partition, space))
    elif args.measure or args.partition:
        raise _UsageError("--measure and --partition must be given together")
    rows = []
    for cell, rep in decode(data, codebook):
        label = space.atom(rep).label if rep is not None else None
        rows.append((cell, rep, label))
    formats.write_decoded_csv(args.out, rows)
    return 0


def cmd_sweep(args) -> int:
    density: DensitySpec = formats.load_density(args.density)
    rows = sweep(
        density,
        eps_schedule(args.eps_start, args.eps_end, args.steps),
        args.mode,
        args.atoms_per_unit,
        args.method,
    )
    formats.write_sweep_csv(args.out, rows)
    for r in rows:
        log.info("eps=%g entropy=%.12g (%s, %d sets)", r.eps, r.entropy_bits, r.method, r.cover_size)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cover-entropy", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("entropy", help="entropy of a partition")
    p.add_argument("--measure", required=True)
    p.add_argument("--partition", required=True)
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("reduce", help="reduce an acceptable partition to ordering form")
    p.add_argument("--measure", required=True)
    p.add_argument("--cover", required=True)
    p.add_argument("--partition", required=True)
    p.add_argument("--policy", choices=["max-gain", "first-index"], default="max-gain")
    p.add_argument("--out")
    p.add_argument("--trace")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("solve", help="entropy of a cover")
    p.add_argument("--measure", required=True)
    p.add_argument("--cover", required=True)
    p.add_argument("--method", choices=["auto", "greedy", "exact", "oracle"], default="auto")
    p.add_argument("--budget-nodes", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--out")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("encode", help="Huffman-code atom samples by partition cell")
    p.add_argument("--measure", required=True)
    p.add_argument("--partition", required=True)
    p.add_argument("--data", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="decode a CVQ1 stream to cell ids")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--measure", help="with --partition, resolves cell representatives")
    p.add_argument("--partition")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("sweep", help="cover entropy over a schedule of interval lengths")
    p.add_argument("--density", required=True)
    p.add_argument("--eps-start", type=float, required=True)
    p.add_argument("--eps-end", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--mode", choices=["aligned", "sliding"], default="aligned")
    p.add_argument("--atoms-per-unit", type=int, default=1024)
    p.add_argument("--method", choices=["auto", "greedy", "exact"], default="auto")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sweep)
    return parser


def _configure_logging() -> None:
    level = LOG_LEVELS.get(os.environ.get("COVER_ENTROPY_LOG", "quiet"), logging.WARNING)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    log.handlers[:] = [handler]
    log.setLevel(level)
    log.propagate = False


def run(argv=None) -> int:
    _configure_logging()
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"error: usage: {exc}", file=sys.stderr)
        return 2
    except CoverEntropyError as exc:
        print(f"error: {exc.category}: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: io: {exc}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
