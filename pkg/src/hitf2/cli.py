"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 memory budget exceeded, 3 a
verification check failed.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import replace
from pathlib import Path
from typing import Sequence

from . import config
from .f2core import Monomial, ParseError, Polynomial, WeightVector, format_monomial, format_polynomial, parse_polynomial
from .f2linalg import BudgetExceeded
from .hitproblem import (
    StratumMismatch,
    admissible_basis_full,
    admissible_basis_weight,
    kameko_down,
    kameko_up,
    qp_dimension_by_weights,
)
from .invariants import invariant_space
from .steenrod import sq

EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_CHECK = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse's default exit code is 2, which is reserved here
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _weight(text: str) -> WeightVector:
    try:
        return WeightVector(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"weight must be comma-separated integers, got {text!r}") from None


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="structured output")
    p.add_argument("--cache-dir", help="cache directory ('none' disables caching)")
    p.add_argument("--mem-budget", help="memory budget, e.g. 8G")
    p.add_argument("--threads", type=int, help="worker processes for row generation")


def _add_stratum(p: argparse.ArgumentParser, need_k: bool = True) -> None:
    p.add_argument("--k", type=int, required=need_k, help="number of variables")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--degree", type=int)
    g.add_argument("--weight", type=_weight, help="weight vector, e.g. 4,4,4,2,2,1")


def _add_poly(p: argparse.ArgumentParser) -> None:
    p.add_argument("poly", nargs="?", help="polynomial text, e.g. 'x1^2x2 + x1x2^2'")
    p.add_argument("--file", type=Path, help="read the polynomial from a UTF-8 file")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hitf2", description="Hit problem computations over GF(2).")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("dim", help="dimension of QP_k in a degree or weight")
    _add_stratum(p)
    p.add_argument("--no-singer", action="store_true", help="compute every weight, even those below the minimal spike")
    p.add_argument("--full", action="store_true", help="eliminate over the whole degree instead of by weight")
    p.add_argument("--breakdown", action="store_true", help="also print the nonzero per-weight dimensions")
    _add_common(p)

    p = sub.add_parser("basis", help="admissible monomials, descending")
    _add_stratum(p)
    p.add_argument("--style", choices=("bracket", "x"), default="bracket")
    _add_common(p)

    p = sub.add_parser("sq", help="apply Sq^r")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--style", choices=("bracket", "x"), default="x")
    _add_poly(p)
    _add_common(p)

    p = sub.add_parser("hit-test", help="decide whether a polynomial is hit")
    p.add_argument("--k", type=int)
    _add_poly(p)
    _add_common(p)

    p = sub.add_parser("reduce", help="class of a polynomial in admissible coordinates")
    p.add_argument("--k", type=int)
    p.add_argument("--weight", type=_weight, help="reduce in a weight stratum instead of the whole degree")
    p.add_argument("--style", choices=("bracket", "x"), default="bracket")
    _add_poly(p)
    _add_common(p)

    p = sub.add_parser("invariants", help="GL_k or symmetric-group invariant classes")
    _add_stratum(p)
    p.add_argument("--group", choices=("GL", "Sigma"), default="GL")
    _add_common(p)

    p = sub.add_parser("kameko", help="x1...xk f^2 (up) or its one-sided inverse (down)")
    p.add_argument("direction", choices=("up", "down"))
    p.add_argument("--k", type=int)
    p.add_argument("--style", choices=("bracket", "x"), default="x")
    _add_poly(p)
    _add_common(p)

    p = sub.add_parser("verify-paper", help="reproduction run with CHECK lines")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--quick", action="store_true", help="k <= 4 strata, small k=5 strata, identities (default)")
    mode.add_argument("--full", action="store_true", help="adds the 62,500-column stratum and the invariant checks")
    _add_common(p)
    return parser


def _settings(args) -> config.Settings:
    s = config.from_env()
    if args.cache_dir is not None:
        off = args.cache_dir.strip().lower() in ("none", "off", "")
        s = replace(s, cache_dir=None if off else Path(args.cache_dir))
    if args.mem_budget is not None:
        s = s.with_(mem_budget=config.parse_size(args.mem_budget))
    if args.threads is not None:
        if args.threads < 1:
            raise UsageError("--threads must be at least 1")
        s = s.with_(threads=args.threads)
    return s


def _read_poly(args) -> Polynomial:
    if args.file is not None and args.poly is not None:
        raise UsageError("give the polynomial either inline or with --file, not both")
    if args.file is not None:
        text = args.file.read_text(encoding="utf-8").strip()
    elif args.poly is not None:
        text = args.poly
    else:
        raise UsageError("a polynomial is required")
    return parse_polynomial(text, getattr(args, "k", None))


def _check_k(k: int | None) -> None:
    if k is not None and not 1 <= k <= 16:
        raise UsageError("k must lie in [1, 16]")


def _emit(args, text: str, payload: dict, out) -> None:
    if args.json:
        out.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        out.write(text + "\n")


def _cmd_dim(args, out) -> int:
    _check_k(args.k)
    if args.weight is not None:
        b = admissible_basis_weight(args.k, args.weight)
        _emit(args, str(b.dim), {"k": args.k, "weight": list(args.weight), "degree": b.degree, "dim": b.dim}, out)
        return EXIT_OK
    if args.degree < 0:
        raise UsageError("degree must be nonnegative")
    if args.full:
        b = admissible_basis_full(args.k, args.degree)
        _emit(args, str(b.dim), {"k": args.k, "degree": args.degree, "dim": b.dim}, out)
        return EXIT_OK
    r = qp_dimension_by_weights(args.k, args.degree, singer=not args.no_singer)
    lines = [str(r.total)]
    for w, d in r.per_weight.items():
        if d and args.breakdown:
            lines.append(f"  ({','.join(map(str, w))}) {d}")
    _emit(args, "\n".join(lines), r.as_dict(), out)
    return EXIT_OK


def _cmd_basis(args, out) -> int:
    _check_k(args.k)
    if args.weight is not None:
        monos = admissible_basis_weight(args.k, args.weight).monomials
    else:
        if args.degree < 0:
            raise UsageError("degree must be nonnegative")
        from .hitproblem import admissible_basis_degree

        monos = tuple(admissible_basis_degree(args.k, args.degree)) if args.degree else (Monomial.one(args.k),)
    _emit(args, "\n".join(format_monomial(m, args.style) for m in monos),
          {"k": args.k, "dim": len(monos), "monomials": [list(m) for m in monos]}, out)
    return EXIT_OK


def _cmd_sq(args, out) -> int:
    _check_k(args.k)
    if args.r < 0:
        raise UsageError("r must be nonnegative")
    f = _read_poly(args)
    g = sq(args.r, f)
    _emit(args, format_polynomial(g, args.style), {"k": g.k, "result": [list(m) for m in g]}, out)
    return EXIT_OK


def _cmd_hit_test(args, out) -> int:
    _check_k(args.k)
    f = _read_poly(args)
    if f.is_zero():
        hit = True
    else:
        b = admissible_basis_full(f.k, f.degree)
        hit = b.is_zero_class(f)
    _emit(args, "HIT" if hit else "NOT HIT", {"hit": hit}, out)
    return EXIT_OK


def _cmd_reduce(args, out) -> int:
    _check_k(args.k)
    f = _read_poly(args)
    if f.is_zero():
        _emit(args, "0", {"coordinates": []}, out)
        return EXIT_OK
    if args.weight is not None:
        b = admissible_basis_weight(f.k, args.weight)
    else:
        b = admissible_basis_full(f.k, f.degree)
    red = b.reduce(f)
    text = " + ".join(format_monomial(m, args.style) for m in red.coordinates) or "0"
    _emit(args, text, {"coordinates": [list(m) for m in red.coordinates],
                       "lower_weight_terms": len(red.lower)}, out)
    return EXIT_OK


def _cmd_invariants(args, out) -> int:
    _check_k(args.k)
    if args.weight is not None:
        b = admissible_basis_weight(args.k, args.weight)
    else:
        if args.degree < 0:
            raise UsageError("degree must be nonnegative")
        b = admissible_basis_full(args.k, args.degree)
    inv = invariant_space(args.k, b, args.group)
    polys = [b.polynomial(v) for v in inv]
    lines = [f"dim {len(inv)}"] + [format_polynomial(p) for p in polys]
    _emit(args, "\n".join(lines), {"dim": len(inv), "classes": [[list(m) for m in p] for p in polys]}, out)
    return EXIT_OK


def _cmd_kameko(args, out) -> int:
    _check_k(args.k)
    f = _read_poly(args)
    g = kameko_up(f) if args.direction == "up" else kameko_down(f)
    _emit(args, format_polynomial(g, args.style), {"result": [list(m) for m in g]}, out)
    return EXIT_OK


def _cmd_verify(args, out) -> int:
    from .verification import run

    rep = run(quick=not args.full)
    out.write((rep.to_json() if args.json else rep.text()) + "\n")
    return EXIT_OK if rep.ok else EXIT_CHECK


_COMMANDS = {
    "dim": _cmd_dim,
    "basis": _cmd_basis,
    "sq": _cmd_sq,
    "hit-test": _cmd_hit_test,
    "reduce": _cmd_reduce,
    "invariants": _cmd_invariants,
    "kameko": _cmd_kameko,
    "verify-paper": _cmd_verify,
}


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        settings = _settings(args)
    except (UsageError, ValueError) as exc:
        sys.stderr.write(f"hitf2: error: {exc}\n")
        return EXIT_USAGE
    config.use(settings)
    try:
        return _COMMANDS[args.command](args, out)
    except BudgetExceeded as exc:
        sys.stderr.write(f"hitf2: memory budget exceeded: {exc}\n")
        return EXIT_BUDGET
    except (UsageError, ParseError, StratumMismatch, ValueError) as exc:
        sys.stderr.write(f"hitf2: error: {exc}\n")
        return EXIT_USAGE
    finally:
        config.use(None)


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
