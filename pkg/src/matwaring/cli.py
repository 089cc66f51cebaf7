"""Command-line entry point.

Exit codes: 0 success, 1 bad input, 2 no solution found (or a witness list
that does not verify), 3 an engine result failed its own verification.
"""

import argparse
import logging
import sys

from .decompose import decompose_n
from .errors import (
    FieldMismatch,
    InternalVerificationError,
    NeedLargerField,
    ParseError,
    TooLarge,
    WaringError,
)
from .ff import format_element, is_prime, make_field, parse_element
from .matff import DEFAULT_SEED
from .oracle import census, census_csv, verify, weil_check
from .polyff import parse_poly
from .scalar_waring import constrained_pair, two_power_rep, waring_constant
from .textio import parse_matrices, parse_matrix, render_decomposition

EXIT_OK, EXIT_INPUT, EXIT_NONE, EXIT_INTERNAL = 0, 1, 2, 3

log = logging.getLogger("matwaring")


class InputError(Exception):
    pass


def _range(text):
    """'A:B' (inclusive) or a single integer."""
    lo, sep, hi = text.partition(":")
    try:
        a = int(lo)
        b = int(hi) if sep else a
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A:B or an integer, got {text!r}") from None
    if a > b:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return range(a, b + 1)


def _field(args):
    if args.p is None:
        raise InputError("--p is required")
    modulus = None
    if args.modulus:
        try:
            modulus = tuple(int(c) for c in args.modulus.split(","))
        except ValueError:
            raise InputError(f"bad --modulus {args.modulus!r}") from None
    return make_field(args.p, args.m, modulus)


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _check_field(args, ctx):
    if args.p is not None and args.p != ctx.p:
        raise FieldMismatch(f"--p {args.p} disagrees with p={ctx.p} in the input")


def _emit(args, text):
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_field_info(args):
    F = _field(args)
    lines = [f"q={F.q}", f"p={F.p}", f"m={F.m}"]
    if F.m > 1:
        lines.append("modulus=" + ",".join(str(c) for c in F.modulus))
    lines.append("generator=" + format_element(F, F.generator))
    _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def _witness_lines(F, w):
    return "\n".join(f"{name}={format_element(F, getattr(w, name))}" for name in ("x", "y", "xk", "yk")) + "\n"


def cmd_solve_scalar(args):
    F = _field(args)
    w = two_power_rep(F, parse_element(F, args.c), args.k)
    _emit(args, _witness_lines(F, w))
    return EXIT_OK


def cmd_solve_pair(args):
    F = _field(args)
    c = parse_element(F, args.c)
    if c == 0:
        raise InputError("--c must be nonzero")
    w = constrained_pair(F, c, args.k, parse_element(F, args.lam))
    _emit(args, _witness_lines(F, w))
    return EXIT_OK


def cmd_decompose(args):
    ctx, A = parse_matrix(_read(args.input))
    _check_field(args, ctx)
    d = decompose_n(ctx, A, args.k, max_terms=min(args.max_terms, 3), seed=args.seed)
    # independent re-check through the oracle path
    if not verify(A, args.k, d.witnesses):
        raise InternalVerificationError("decomposition does not verify")
    if d.terms > args.max_terms:
        raise NeedLargerField(f"found {d.terms} terms, more than --max-terms {args.max_terms}")
    _emit(args, render_decomposition(d, True))
    return EXIT_OK


def _strip_decomposition_header(text):
    keep = []
    k = None
    for line in text.splitlines():
        body = "".join(line.split("#", 1)[0].split())
        key, _, value = body.partition("=")
        if key in ("terms", "case", "verified"):
            continue
        if key == "k":
            k = int(value)
            continue
        keep.append(line)
    return "\n".join(keep), k


def cmd_verify(args):
    ctx, A = parse_matrix(_read(args.input))
    _check_field(args, ctx)
    body, k = _strip_decomposition_header(_read(args.witnesses))
    k = args.k if args.k is not None else k
    if k is None:
        raise InputError("-k is required unless the witness file carries k=")
    wctx, witnesses = parse_matrices(body)
    if wctx != ctx:
        raise FieldMismatch("witnesses and target are over different fields")
    ok = verify(A, k, witnesses)
    _emit(args, f"verified={'true' if ok else 'false'}\n")
    return EXIT_OK if ok else EXIT_NONE


def cmd_census(args):
    if args.p_range is None or args.k_range is None:
        raise InputError("--p-range and --k-range are required")
    primes = [p for p in args.p_range if is_prime(p)]
    records = census(primes, list(args.m), list(args.n), list(args.k_range), jobs=args.jobs)
    _emit(args, census_csv(records))
    return EXIT_OK


def cmd_weil_check(args):
    F = _field(args)
    f = parse_poly(F, args.f)
    if f.degree < 1:
        raise InputError("f must have degree >= 1")
    rec = weil_check(F, args.d, f)
    lines = [
        f"N={rec.N}",
        f"abs_irreducible={str(rec.abs_irreducible).lower()}",
        f"hypothesis_met={str(rec.hypothesis_met).lower()}",
        f"bound_holds={str(rec.bound_holds).lower()}",
    ]
    _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_constant(args):
    _emit(args, f"{waring_constant(args.k)}\n")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="matwaring",
        description="Write matrices over finite fields as sums of k-th powers.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help_text, field=True, k=True, out=True):
        sp = sub.add_parser(name, help=help_text, description=help_text)
        if field:
            sp.add_argument("--p", type=int, help="field characteristic")
            sp.add_argument("--m", type=int, default=1, help="extension degree (default 1)")
            sp.add_argument("--modulus", help="monic defining polynomial, little-endian, e.g. 1,0,1")
        if k:
            sp.add_argument("-k", "--k", type=int, required=k == "required", help="exponent k")
        if out:
            sp.add_argument("--out", help="write output here instead of stdout")
        sp.set_defaults(func=func)
        return sp

    add("field-info", cmd_field_info, "print the field parameters and its generator", k=False)
    sp = add("solve-scalar", cmd_solve_scalar, "write c as x^k + y^k", k="required")
    sp.add_argument("--c", required=True, help="target element")
    sp = add("solve-pair", cmd_solve_pair, "x^k + y^k = c with x^k != y^k and x^k y^k != lambda", k="required")
    sp.add_argument("--c", required=True, help="nonzero target element")
    sp.add_argument("--lambda", dest="lam", default="0", help="excluded product (default 0)")
    sp = add("decompose", cmd_decompose, "decompose a matrix file into k-th powers", k="required")
    sp.add_argument("--input", required=True, help="matrix file")
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"seed for randomised steps (default {DEFAULT_SEED})")
    sp.add_argument("--max-terms", type=int, default=3, help="fail with exit 2 above this many terms (default 3)")
    sp = add("verify", cmd_verify, "check that witnesses' k-th powers sum to a matrix")
    sp.add_argument("--input", required=True, help="target matrix file")
    sp.add_argument("--witnesses", required=True, help="witness matrices, or a decompose output")
    sp = add("census", cmd_census, "empirical Waring numbers over a grid, as CSV", field=False, k=False)
    sp.add_argument("--p-range", type=_range, help="primes in A:B (inclusive)")
    sp.add_argument("--m", type=_range, default=range(1, 2), help="extension degrees, A:B or a single value")
    sp.add_argument("--n", type=_range, default=range(2, 3), help="matrix sizes, A:B or a single value")
    sp.add_argument("--k-range", type=_range, help="exponents in A:B (inclusive)")
    sp.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
    sp = add("weil-check", cmd_weil_check, "count points on y^d = f(x) against the Weil bound", k=False)
    sp.add_argument("--d", type=int, required=True, help="exponent d")
    sp.add_argument("--f", required=True, help="polynomial coefficients, little-endian")
    add("constant", cmd_constant, "print the field-size threshold (k + 2k^2)^2", field=False, k="required")
    return parser


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except InternalVerificationError as exc:
        print(f"error: internal verification failed: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except NeedLargerField as exc:
        print(f"no solution: {exc}", file=sys.stderr)
        return EXIT_NONE
    except (ParseError, InputError, TooLarge, WaringError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main():
    sys.exit(run())
