"""Command line interface.

Every subcommand accepts --format text|json.  In json mode stdout carries a
single JSON document and any progress chatter goes to stderr, so output can
be piped straight into a parser.

Exit codes: 0 success, 1 verification found failing cases, 2 malformed input,
3 internal consistency check failed, 4 request exceeds a capability limit.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from .bounds import certify, upper_bound_formula, word_lower_bound
from .bumpiness import (
    VERY_BUMPY,
    BumpinessParams,
    hard_permutation,
    is_bc_bumpy,
    is_very_bumpy,
    not_bumpy_count_bound,
    verify_hard_profile,
)
from .core import (
    CapabilityError,
    DomainError,
    InternalCheckError,
    ParseError,
    Permutation,
    evaluate_word,
    format_permutation,
    format_word,
    inverse,
    parse_permutation,
)
from .oracle import (
    DEFAULT_LIMIT,
    ComplexityTable,
    build_table,
    ensure_parents,
    export_parents,
    export_table,
    import_parents,
    import_table,
    sphere_csv_lines,
    unrank,
)
from .stats import bumpy_fraction_estimate, exhaustive_bumpy_count
from .synthesis import synthesize

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_INTERNAL = 3
EXIT_CAPABILITY = 4


def _emit(args: argparse.Namespace, doc: dict, text_lines: list[str]) -> None:
    if args.format == "json":
        print(json.dumps(doc, indent=2))
    else:
        for line in text_lines:
            print(line)


def _note(args: argparse.Namespace, message: str) -> None:
    # stdout is reserved for results (bare CSV, JSON documents)
    print(message, file=sys.stderr)


def _resolve_permutation(args: argparse.Namespace) -> Permutation:
    if getattr(args, "hard", None) is not None:
        if args.perm is not None:
            raise DomainError("give either a permutation or --hard, not both")
        return hard_permutation(args.hard)
    if args.perm is None:
        raise DomainError("a permutation (or --hard N) is required")
    return parse_permutation(args.perm)


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a fraction: {text!r}") from exc


def _bumpiness_params(args: argparse.Namespace) -> BumpinessParams:
    if args.b is None and args.c is None:
        return VERY_BUMPY
    if args.b is None or args.c is None:
        raise DomainError("--b and --c must be given together")
    return BumpinessParams(_parse_fraction(args.b), _parse_fraction(args.c))


def cache_dir() -> Path:
    env = os.environ.get("PERMWORD_CACHE")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "permword"


def _table_paths(n: int) -> tuple[Path, Path]:
    base = cache_dir()
    return base / f"s{n}.pwc", base / f"s{n}.parents"


def _load_or_build_table(
    args: argparse.Namespace, n: int, need_parents: bool
) -> ComplexityTable:
    dist_path, parent_path = _table_paths(n)
    if dist_path.exists():
        table = import_table(str(dist_path))
        if table.n != n:
            raise ParseError(f"cache file {dist_path} holds n={table.n}, not {n}")
        if need_parents:
            if parent_path.exists():
                table = import_parents(table, str(parent_path))
            else:
                _note(args, f"deriving parent letters for n={n}")
                table = ensure_parents(table)
                export_parents(table, str(parent_path))
        return table
    _note(args, f"no cached table for n={n}, running BFS over {n}! states")
    table = build_table(n, with_parents=need_parents)
    dist_path.parent.mkdir(parents=True, exist_ok=True)
    export_table(table, str(dist_path))
    if need_parents:
        export_parents(table, str(parent_path))
    return table


def cmd_synth(args: argparse.Namespace) -> int:
    p = _resolve_permutation(args)
    word = synthesize(p)
    verified = evaluate_word(word, p.n) == p
    if not verified:
        raise InternalCheckError("synthesized word failed re-evaluation")
    doc = {
        "n": p.n,
        "permutation": format_permutation(p),
        "word": format_word(word),
        "length": len(word),
        "budget": int(upper_bound_formula(p.n)),
        "verified": verified,
    }
    _emit(
        args,
        doc,
        [
            f"permutation: {doc['permutation']}",
            f"word: {doc['word'] or '(empty)'}",
            f"length: {doc['length']}",
            f"budget: {doc['budget']}",
            f"verified: {str(verified).lower()}",
        ],
    )
    return EXIT_OK


def cmd_bound(args: argparse.Namespace) -> int:
    p = _resolve_permutation(args)
    table = None
    if args.exact:
        if p.n > DEFAULT_LIMIT:
            raise CapabilityError(
                f"--exact needs an oracle table, unavailable for n={p.n} > {DEFAULT_LIMIT}"
            )
        table = _load_or_build_table(args, p.n, need_parents=False)
    cert = certify(p, with_exact=args.exact, table=table)
    doc = cert.to_json_dict()
    lines = [
        f"n: {doc['n']}",
        f"displacement_lb: {doc['displacement_lb']}",
        f"word_lb: {doc['word_lb']}",
        f"upper_len: {doc['upper_len']}",
        f"upper_formula: {doc['upper_formula']}",
    ]
    if cert.exact is not None:
        lines.append(f"exact: {cert.exact}")
    _emit(args, doc, lines)
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    n = args.n
    if n > DEFAULT_LIMIT:
        raise CapabilityError(
            f"oracle tables stop at n={DEFAULT_LIMIT}; n={n} was requested"
        )
    if args.action == "build":
        table = _load_or_build_table(args, n, need_parents=True)
        doc = {
            "n": n,
            "states": len(table.distances),
            "diameter": table.diameter,
            "cache": str(_table_paths(n)[0]),
        }
        _emit(
            args,
            doc,
            [f"built n={n}: {doc['states']} states, diameter {doc['diameter']}",
             f"cached at {doc['cache']}"],
        )
        return EXIT_OK
    if args.action == "query":
        if args.arg is None:
            raise DomainError("query needs a permutation argument")
        p = parse_permutation(args.arg)
        if p.n != n:
            raise DomainError(f"permutation has n={p.n} but --n {n} was given")
        table = _load_or_build_table(args, n, need_parents=True)
        word = table.geodesic_word(p)
        doc = {
            "n": n,
            "permutation": format_permutation(p),
            "complexity": table.exact_complexity(p),
            "word": format_word(word),
        }
        _emit(
            args,
            doc,
            [f"complexity: {doc['complexity']}", f"word: {doc['word'] or '(empty)'}"],
        )
        return EXIT_OK
    if args.action == "spheres":
        table = _load_or_build_table(args, n, need_parents=False)
        doc = {"n": n, "spheres": list(table.sphere_sizes)}
        _emit(args, doc, sphere_csv_lines(table))
        return EXIT_OK
    if args.action == "export":
        if args.arg is None:
            raise DomainError("export needs a destination path")
        table = _load_or_build_table(args, n, need_parents=False)
        export_table(table, args.arg)
        doc = {"n": n, "path": args.arg, "states": len(table.distances)}
        _emit(args, doc, [f"wrote {doc['states']} distance bytes to {args.arg}"])
        return EXIT_OK
    raise DomainError(f"unknown oracle action {args.action!r}")


def cmd_bumpy(args: argparse.Namespace) -> int:
    p = _resolve_permutation(args)
    report = is_bc_bumpy(p, _bumpiness_params(args))
    doc = report.to_json_dict()
    counts = " ".join(str(c) for c in report.per_shift_counts)
    _emit(
        args,
        doc,
        [
            f"n: {doc['n']}",
            f"b: {doc['b']}",
            f"c: {doc['c']}",
            f"is_bumpy: {str(report.is_bumpy).lower()}",
            f"worst_shift: {report.worst_shift}",
            f"counts: {counts}",
        ],
    )
    return EXIT_OK


def cmd_fraction(args: argparse.Namespace) -> int:
    result = bumpy_fraction_estimate(
        args.n, args.samples, args.seed, _bumpiness_params(args)
    )
    doc = result.to_json_dict()
    _emit(
        args,
        doc,
        [
            f"n: {doc['n']}",
            f"samples: {doc['samples']}",
            f"seed: {doc['seed']}",
            f"bumpy_count: {doc['bumpy_count']}",
            f"fraction: {doc['fraction']}",
            f"ci: [{doc['ci_low']}, {doc['ci_high']}]",
        ],
    )
    return EXIT_OK


def _verify_small() -> list[str]:
    """Exhaustive small-n cross-check of bounds against the oracle."""
    failures = []
    for n in range(3, 7):
        table = ensure_parents(build_table(n))
        for r in range(len(table.distances)):
            p = unrank(r, n)
            exact = table.exact_complexity(p)
            cert = certify(p)
            if not cert.best_lower_bound() <= exact <= cert.upper_len:
                failures.append(
                    f"n={n} perm={format_permutation(p)}: "
                    f"lb={cert.best_lower_bound()} exact={exact} ub={cert.upper_len}"
                )
            word = table.geodesic_word(p)
            if len(word) != exact or evaluate_word(word, n) != p:
                failures.append(
                    f"n={n} perm={format_permutation(p)}: bad geodesic {format_word(word)}"
                )
            if table.exact_complexity(inverse(p)) != exact:
                failures.append(
                    f"n={n} perm={format_permutation(p)}: inverse distance differs"
                )
    return failures


def _verify_profile() -> list[str]:
    """Hard-permutation displacement profile across a range of sizes."""
    failures = []
    for n in range(3, 201):
        if not verify_hard_profile(n):
            failures.append(f"n={n}: hard permutation profile check failed")
    for n in range(16, 513):
        if not is_very_bumpy(hard_permutation(n)):
            failures.append(f"n={n}: hard permutation is not very bumpy")
    return failures


def _verify_counting() -> list[str]:
    """Non-bumpy counting bound: exact small case plus large-n decay."""
    failures = []
    non_bumpy = 40320 - exhaustive_bumpy_count(8)
    bound8, _ = not_bumpy_count_bound(8)
    if non_bumpy != 8:
        failures.append(f"n=8: expected 8 non-bumpy permutations, got {non_bumpy}")
    if not non_bumpy <= bound8:
        failures.append(f"n=8: count {non_bumpy} exceeds bound {bound8}")
    ratios = [(n, not_bumpy_count_bound(n)[1]) for n in range(4000, 8001, 400)]
    if not ratios[0][1] < 1:
        failures.append(f"n=4000: ratio {float(ratios[0][1]):.3e} is not below 1")
    for (n1, r1), (n2, r2) in itertools.pairwise(ratios):
        if not r2 < r1:
            failures.append(f"ratio did not decrease from n={n1} to n={n2}")
    return failures


def cmd_verify(args: argparse.Namespace) -> int:
    suites = {
        "small": _verify_small,
        "profile": _verify_profile,
        "counting": _verify_counting,
    }
    failures = suites[args.suite]()
    doc = {"suite": args.suite, "passed": not failures, "failures": failures}
    lines = [f"FAIL {f}" for f in failures]
    lines.append(f"{'PASS' if not failures else 'FAIL'} suite={args.suite}")
    _emit(args, doc, lines)
    return EXIT_OK if not failures else EXIT_VERIFY_FAILED


def _add_format(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=["text", "json"], default="text")


def _add_perm_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("perm", nargs="?", help="permutation as space-separated images")
    p.add_argument("--hard", type=int, metavar="N",
                   help="use the built-in hard permutation of size N")


def _add_bc(p: argparse.ArgumentParser) -> None:
    p.add_argument("--b", help="displacement threshold fraction, e.g. 1/8")
    p.add_argument("--c", help="count threshold fraction, e.g. 1/4")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permword",
        description="Words over {sigma, tau, tau inverse}: synthesis, bounds, "
        "exact oracles, bumpiness",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="synthesize a word for a permutation")
    _add_perm_args(p)
    _add_format(p)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("bound", help="lower/upper bound certificate")
    _add_perm_args(p)
    p.add_argument("--exact", action="store_true",
                   help="include the exact complexity (small n only)")
    _add_format(p)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("oracle", help="exact complexity tables at small n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("action", choices=["build", "query", "spheres", "export"])
    p.add_argument("arg", nargs="?",
                   help="permutation for query, destination path for export")
    _add_format(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("bumpy", help="per-shift displacement counts")
    _add_perm_args(p)
    _add_bc(p)
    _add_format(p)
    p.set_defaults(func=cmd_bumpy)

    p = sub.add_parser("fraction", help="sampled fraction of bumpy permutations")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    _add_bc(p)
    _add_format(p)
    p.set_defaults(func=cmd_fraction)

    p = sub.add_parser("verify", help="run a built-in consistency suite")
    p.add_argument("--suite", choices=["small", "profile", "counting"],
                   required=True)
    _add_format(p)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except CapabilityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPABILITY
    except InternalCheckError as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
