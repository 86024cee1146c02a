"""Command line interface.

Exit codes: 0 positive verdict (CODE, TORSION, witness verified), 1 negative
verdict, 2 usage or parse error, 3 search bound exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from typing import Optional, Sequence

from . import io
from .algebra import AlgebraicNumber, Polynomial, algebraic_is_root_of_unity, is_irreducible
from .check import STRATEGIES, code_check
from .errors import FreekitError, ParseError
from .freegroup import FreeGroupElement
from .reductions import (
    ClausInstance,
    claus_reduction,
    claus_transport_witness,
    dim_reduce_2x2,
    embed_pairs_to_mat3,
    gadget_code_d,
)
from .search import GeneratorSet, balanced_collision_search, dt_family, quotient_bfs_search, verify_double_factorization
from .torsion import classify_two_by_two, matrix_is_torsion, morphism_is_torsion
from .verdict import CODE, NOT_A_CODE, Verdict

EXIT_POSITIVE = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_EXHAUSTED = 3


def _emit(obj, as_json: bool, lines: Sequence[str]) -> None:
    if as_json:
        print(json.dumps(obj, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _report_verdict(v: Verdict, as_json: bool) -> int:
    lines = [v.line()]
    if v.witness is not None:
        lines.append(json.dumps(v.witness.to_json()))
    _emit(v.to_json(), as_json, lines)
    if v.status == CODE:
        return EXIT_POSITIVE
    if v.status == NOT_A_CODE:
        return EXIT_NEGATIVE
    return EXIT_EXHAUSTED


def cmd_code_check(args) -> int:
    X = io.parse_set(io.read_source(args.file), args.kind)
    if X.kind != args.kind:
        raise ParseError(f"file declares kind {X.kind!r} but {args.kind!r} was requested")
    v = code_check(X, args.strategy, args.max_len, args.depth)
    return _report_verdict(v, args.json)


def cmd_torsion(args) -> int:
    if args.target == "algebraic":
        if not args.minpoly:
            raise ParseError("--minpoly is required for algebraic torsion")
        p = io.parse_coefficients(args.minpoly)
        if p.degree < 1:
            raise ParseError("the minimal polynomial must have degree at least 1")
        p = p.monic()
        if not is_irreducible(p):
            raise ParseError(f"{p} is not irreducible over Q")
        if p == Polynomial.z():
            torsion, cert = True, (1, 2)  # u = 0
        else:
            u = AlgebraicNumber(p, check=False)
            torsion = algebraic_is_root_of_unity(u)
            cert = None
            if torsion:
                order = next(n for n in range(1, 10**9) if (u**n).is_one())
                cert = (1, 1 + order)
        obj = {"verdict": "TORSION" if torsion else "NOT_TORSION", "minpoly": str(p)}
        lines = ["TORSION" + (f" ({cert[0]},{cert[1]})" if cert else "") if torsion else "NOT_TORSION"]
        if cert:
            obj["certificate"] = list(cert)
        _emit(obj, args.json, lines)
        return EXIT_POSITIVE if torsion else EXIT_NEGATIVE
    if args.file is None:
        raise ParseError("an input file (or -) is required")
    text = io.read_source(args.file)
    if args.target == "matrix":
        m = io.parse_single_matrix(text)
        t = matrix_is_torsion(m)
        obj = t.to_json()
        lines = [t.line()]
        if m.dim == 2:
            cls = classify_two_by_two(m)
            obj["class"] = cls
            lines.append(f"class: {cls}")
    else:
        sigma = io.parse_single_morphism(text)
        t = morphism_is_torsion(sigma)
        obj = t.to_json()
        lines = [t.line()]
    _emit(obj, args.json, lines)
    return EXIT_POSITIVE if t.torsion else EXIT_NEGATIVE


def cmd_fg(args) -> int:
    tokens = " ".join(args.elements).split()
    if not tokens:
        raise ParseError("no group elements given")
    elems = []
    for tok in tokens:
        e = FreeGroupElement.parse(tok)
        if e in elems:
            raise ParseError(f"duplicate element {tok!r}")
        elems.append(e)
    v = code_check(GeneratorSet(elems, kind="freegroup"))
    return _report_verdict(v, args.json)


def cmd_reduce(args) -> int:
    text = io.read_source(args.file)
    if args.target == "claus-to-pairs":
        inst = ClausInstance.from_json(io.load_json(text))
        red = claus_reduction(inst)
        out = red.Z.to_json()
        out["alphabet"] = ["0", "1"]
        out["unencoded"] = [e.to_json() for e in red.Y]
        if args.witness:
            w = claus_transport_witness(inst, inst.pcp.sigma_alphabet.word(args.witness))
            if not verify_double_factorization(red.Z, w):
                print(f"transported witness does not verify; is {args.witness!r} a solution?", file=sys.stderr)
                return EXIT_NEGATIVE
            out["witness"] = w.to_json()
    elif args.target == "pairs-to-mat3":
        X = io.parse_set(text, "pairs")
        out = {"kind": "matrices", "elements": [embed_pairs_to_mat3(p).to_json() for p in X]}
    else:
        obj = io.load_json(text)
        if isinstance(obj, list) and all(isinstance(x, int) for x in obj):
            elems = obj
        else:
            elems = list(io.set_from_json(obj, "naturals" if isinstance(obj, list) else None))
        out = dim_reduce_2x2(elems).to_json()
    print(json.dumps(out, sort_keys=True))
    return EXIT_POSITIVE


def cmd_gadget(args) -> int:
    X = io.parse_set(io.read_source(args.file), args.kind)
    if len(X) < 2:
        raise ParseError("need x followed by at least one element of Y")
    elems = gadget_code_d(X[0], list(X.elements[1:]), args.d)
    out = {"kind": X.kind, "elements": [e.to_json() if hasattr(e, "to_json") else e for e in elems]}
    alpha = getattr(X[0], "alphabet", None)
    if alpha is not None:
        out["alphabet"] = list(alpha.symbols)
    out["distinct"] = len(set(elems)) == len(elems)
    print(json.dumps(out, sort_keys=True))
    return EXIT_POSITIVE


def cmd_verify(args) -> int:
    w = io.parse_witness(io.read_source(args.witness))
    X = io.parse_set(io.read_source(args.set), args.kind)
    ok = verify_double_factorization(X, w)
    _emit({"verified": ok}, args.json, ["VERIFIED" if ok else "NOT_VERIFIED"])
    return EXIT_POSITIVE if ok else EXIT_NEGATIVE


def cmd_search(args) -> int:
    if args.file:
        X = io.parse_set(io.read_source(args.file), args.kind)
    else:
        X = dt_family(Fraction(2, 3), Fraction(3, 5))
    print(
        f"searching up to length {args.max_len} with the {args.strategy} strategy; "
        "lengths in the high twenties take hours and tens of gigabytes",
        file=sys.stderr,
    )
    start = time.perf_counter()
    if args.strategy == "quotient":
        outcome = quotient_bfs_search(X, args.max_len)
    else:
        outcome = balanced_collision_search(X, args.max_len)
    print(f"elapsed {time.perf_counter() - start:.1f}s", file=sys.stderr)
    return _report_verdict(outcome.to_verdict(), args.json)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="freekit", description="Freeness checks for finitely generated semigroups.")
    sub = ap.add_subparsers(dest="verb", required=True)

    cc = sub.add_parser("code-check", help="decide or semi-decide whether a finite set is a code")
    cc.add_argument("kind", choices=io.KINDS)
    cc.add_argument("file", help="input file, or - for stdin")
    cc.add_argument("--max-len", type=_positive, default=None, help="length bound for the searches")
    cc.add_argument("--depth", type=_positive, default=None, help="bound for the quotient search")
    cc.add_argument("--strategy", choices=STRATEGIES, default="auto")
    cc.add_argument("--json", action="store_true")
    cc.set_defaults(func=cmd_code_check)

    tor = sub.add_parser("torsion", help="decide whether a single element is torsion")
    tor.add_argument("target", choices=("matrix", "morphism", "algebraic"))
    tor.add_argument("file", nargs="?")
    tor.add_argument("--minpoly", help="ascending rational coefficients, e.g. 1,1,1 for z^2+z+1")
    tor.add_argument("--json", action="store_true")
    tor.set_defaults(func=cmd_torsion)

    fgp = sub.add_parser("fg", help="free group subsets")
    fgsub = fgp.add_subparsers(dest="fg_verb", required=True)
    fcc = fgsub.add_parser("code-check")
    fcc.add_argument("elements", nargs="+", help="group words; lowercase = generator, uppercase = inverse")
    fcc.add_argument("--json", action="store_true")
    fcc.set_defaults(func=cmd_fg)

    red = sub.add_parser("reduce", help="run one of the reductions")
    red.add_argument("target", choices=("claus-to-pairs", "pairs-to-mat3", "dim2x2"))
    red.add_argument("file")
    red.add_argument("--witness", help="for claus-to-pairs: a solution b w e to transport")
    red.set_defaults(func=cmd_reduce)

    gad = sub.add_parser("gadget", help="generator-count gadgets")
    gsub = gad.add_subparsers(dest="gadget_verb", required=True)
    gcd = gsub.add_parser("code-d", help="{x^d} u {x^r y}; x is the first element of the set")
    gcd.add_argument("--d", type=_positive, required=True)
    gcd.add_argument("--kind", choices=io.KINDS, default=None)
    gcd.add_argument("file")
    gcd.set_defaults(func=cmd_gadget)

    ver = sub.add_parser("verify", help="check a witness against a set")
    ver.add_argument("witness")
    ver.add_argument("set")
    ver.add_argument("--kind", choices=io.KINDS, default=None)
    ver.add_argument("--json", action="store_true")
    ver.set_defaults(func=cmd_verify)

    se = sub.add_parser("search", help="long opt-in search (defaults to D_2/3, T_3/5); length 27 takes hours")
    se.add_argument("file", nargs="?")
    se.add_argument("--kind", choices=io.KINDS, default="matrices")
    se.add_argument("--max-len", type=_positive, default=27)
    se.add_argument("--strategy", choices=("balanced", "quotient"), default="quotient")
    se.add_argument("--json", action="store_true")
    se.set_defaults(func=cmd_search)
    return ap


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return n


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else 0
    try:
        return args.func(args)
    except FreekitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
