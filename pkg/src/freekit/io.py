"""Text and JSON formats for generator sets, matrices and witnesses.

Text formats
------------
words       optional header ``alphabet: a b c``, then one word per line.
            Symbols are contiguous for single-character alphabets and
            space separated otherwise.
pairs       one pair per line, components separated by a comma: ``01, 101``.
matrices    one matrix per line, rows separated by ``;``: ``1/2 1; 0 1``.
freegroup   whitespace separated group words, ``abA`` meaning a b a^-1.
morphisms   one morphism per line: ``0->01 1->0``.
naturals    whitespace separated nonnegative integers.

JSON: ``{"kind": ..., "alphabet": [...], "elements": [...]}``. Matrices may
also be given as arrays of arrays of strings. Lines starting with ``#`` are
comments.
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction
from typing import Optional

from .algebra import Matrix, Polynomial, to_scalar
from .errors import ParseError
from .freegroup import FreeGroupElement
from .search import GeneratorSet
from .verdict import DoubleFactorization
from .words import BINARY, Alphabet, Morphism, Pair, Word

KINDS = ("words", "pairs", "matrices", "freegroup", "morphisms", "naturals")


def read_source(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _content_lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield no, raw, line


def looks_like_json(text: str) -> bool:
    s = text.lstrip()
    return s.startswith("{") or s.startswith("[")


def load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None


# -- words -------------------------------------------------------------------


def _col(raw: str, token: str) -> int:
    return raw.find(token) + 1 if token in raw else 1


def _header_alphabet(lines) -> Optional[Alphabet]:
    for no, raw, line in lines:
        if line.lower().startswith("alphabet:"):
            syms = line.split(":", 1)[1].split()
            if not syms:
                raise ParseError("empty alphabet declaration", no, 1)
            try:
                return Alphabet(tuple(syms))
            except ValueError as exc:
                raise ParseError(str(exc), no, 1) from None
        return None
    return None


def _word_from_text(alpha: Alphabet, text: str, no: int, raw: str) -> Word:
    syms = list(text.replace(" ", "")) if alpha.single_char else text.split()
    out = []
    for s in syms:
        try:
            out.append(alpha.index(s))
        except KeyError:
            raise ParseError(f"symbol {s!r} is not in the alphabet", no, _col(raw, s)) from None
    return Word(tuple(out), alpha)


def _infer_alphabet(texts) -> Alphabet:
    seen = []
    for t in texts:
        for ch in t.replace(" ", ""):
            if ch not in seen:
                seen.append(ch)
    return Alphabet(tuple(sorted(seen)))


def parse_words(text: str) -> GeneratorSet:
    lines = list(_content_lines(text))
    alpha = _header_alphabet(lines)
    body = lines[1:] if alpha is not None else lines
    if alpha is None:
        alpha = _infer_alphabet(line for _, _, line in body)
    ws = []
    for no, raw, line in body:
        w = _word_from_text(alpha, line, no, raw)
        if not len(w):
            raise ParseError("the empty word is not a generator", no, 1)
        if w in ws:
            raise ParseError(f"duplicate word {line!r}", no, 1)
        ws.append(w)
    if not ws:
        raise ParseError("no words given", None)
    return GeneratorSet(ws, kind="words")


# -- pairs -------------------------------------------------------------------


def parse_pairs(text: str) -> GeneratorSet:
    lines = list(_content_lines(text))
    alpha = _header_alphabet(lines)
    body = lines[1:] if alpha is not None else lines
    if alpha is None:
        comps = []
        for _, _, line in body:
            comps.extend(line.split(","))
        alpha = _infer_alphabet(comps)
        if set(alpha.symbols) <= {"0", "1"}:
            alpha = BINARY
    out = []
    for no, raw, line in body:
        parts = line.split(",")
        if len(parts) != 2:
            raise ParseError("a pair needs exactly one comma", no, 1)
        p = Pair(_word_from_text(alpha, parts[0].strip(), no, raw), _word_from_text(alpha, parts[1].strip(), no, raw))
        if p in out:
            raise ParseError("duplicate pair", no, 1)
        out.append(p)
    if not out:
        raise ParseError("no pairs given", None)
    return GeneratorSet(out, kind="pairs")


# -- matrices ----------------------------------------------------------------


def parse_matrix(text: str, line_no: Optional[int] = None) -> Matrix:
    rows = []
    pos = 0
    for chunk in text.replace("\n", ";").split(";"):
        stripped = chunk.strip()
        if not stripped:
            pos += len(chunk) + 1
            continue
        row = []
        for tok in stripped.split():
            try:
                if any(c in tok for c in ".eE"):
                    raise ValueError
                row.append(to_scalar(tok))
            except (ValueError, ZeroDivisionError):
                col = text.find(tok, pos) + 1
                raise ParseError(f"bad matrix entry {tok!r}", line_no or 1, col) from None
        rows.append(row)
        pos += len(chunk) + 1
    if not rows:
        raise ParseError("empty matrix", line_no or 1, 1)
    if any(len(r) != len(rows) for r in rows):
        raise ParseError(f"matrix is not square ({len(rows)} rows, row lengths {[len(r) for r in rows]})", line_no or 1, 1)
    return Matrix(rows)


def matrix_from_json(obj) -> Matrix:
    try:
        return Matrix([[to_scalar(str(x)) for x in r] for r in obj])
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ParseError(f"bad matrix: {exc}") from None


def parse_matrices(text: str) -> GeneratorSet:
    out = []
    for no, raw, line in _content_lines(text):
        m = parse_matrix(line, no)
        if m in out:
            raise ParseError("duplicate matrix", no, 1)
        out.append(m)
    if not out:
        raise ParseError("no matrices given", None)
    return GeneratorSet(out, kind="matrices")


def parse_single_matrix(text: str) -> Matrix:
    if looks_like_json(text):
        return matrix_from_json(load_json(text))
    lines = [line for _, _, line in _content_lines(text)]
    return parse_matrix(";".join(lines))


# -- free groups, naturals ---------------------------------------------------


def parse_freegroup(text: str) -> GeneratorSet:
    out = []
    for no, raw, line in _content_lines(text):
        for tok in line.split():
            try:
                e = FreeGroupElement.parse(tok)
            except ParseError as exc:
                raise ParseError(str(exc).split(": ", 1)[-1], no, _col(raw, tok)) from None
            if e in out:
                raise ParseError(f"duplicate element {tok!r}", no, _col(raw, tok))
            out.append(e)
    if not out:
        raise ParseError("no group elements given", None)
    return GeneratorSet(out, kind="freegroup")


def parse_naturals(text: str) -> GeneratorSet:
    out = []
    for no, raw, line in _content_lines(text):
        for tok in line.replace(",", " ").split():
            if not tok.isdigit():
                raise ParseError(f"not a natural number: {tok!r}", no, _col(raw, tok))
            n = int(tok)
            if n in out:
                raise ParseError(f"duplicate number {n}", no, _col(raw, tok))
            out.append(n)
    if not out:
        raise ParseError("no numbers given", None)
    return GeneratorSet(out, kind="naturals")


# -- morphisms ---------------------------------------------------------------


def _morphism_tokens(line: str, no: int, raw: str) -> dict:
    mapping = {}
    for tok in line.replace(",", " ").split():
        if "->" not in tok:
            raise ParseError(f"expected symbol->image, got {tok!r}", no, _col(raw, tok))
        a, im = tok.split("->", 1)
        if not a or a in mapping:
            raise ParseError(f"bad or repeated source symbol in {tok!r}", no, _col(raw, tok))
        mapping[a] = im
    return mapping


def _morphism_from_mapping(mapping: dict, alpha: Optional[Alphabet], no=None) -> Morphism:
    if alpha is None:
        alpha = Alphabet(tuple(mapping))
    missing = [s for s in alpha.symbols if s not in mapping]
    if missing:
        raise ParseError(f"no image for {missing}", no, 1)
    try:
        return Morphism.from_dict(alpha, alpha, mapping)
    except KeyError as exc:
        raise ParseError(str(exc).strip("'\""), no, 1) from None


def parse_morphisms(text: str) -> GeneratorSet:
    lines = list(_content_lines(text))
    alpha = _header_alphabet(lines)
    body = lines[1:] if alpha is not None else lines
    out = []
    for no, raw, line in body:
        m = _morphism_from_mapping(_morphism_tokens(line, no, raw), alpha, no)
        if alpha is None:
            alpha = m.domain
        if m in out:
            raise ParseError("duplicate morphism", no, 1)
        out.append(m)
    if not out:
        raise ParseError("no morphisms given", None)
    return GeneratorSet(out, kind="morphisms")


def parse_single_morphism(text: str) -> Morphism:
    if looks_like_json(text):
        obj = load_json(text)
        if not isinstance(obj, dict):
            raise ParseError("morphism JSON must be an object symbol -> image")
        alpha = Alphabet(tuple(obj["alphabet"])) if "alphabet" in obj else None
        mapping = obj.get("images", obj)
        return _morphism_from_mapping({str(k): str(v) for k, v in mapping.items() if k != "alphabet"}, alpha)
    ms = parse_morphisms(text)
    if len(ms) != 1:
        raise ParseError(f"expected one morphism, got {len(ms)}")
    return ms[0]


# -- JSON sets ---------------------------------------------------------------


def set_from_json(obj, kind: Optional[str] = None) -> GeneratorSet:
    if isinstance(obj, list):
        obj = {"elements": obj}
    kind = obj.get("kind", kind)
    if kind not in KINDS:
        raise ParseError(f"unknown or missing kind {kind!r}; expected one of {KINDS}")
    elems = obj.get("elements")
    if not isinstance(elems, list) or not elems:
        raise ParseError("'elements' must be a nonempty list")
    try:
        if kind == "words":
            alpha = Alphabet(tuple(obj["alphabet"])) if "alphabet" in obj else _infer_alphabet(
                e if isinstance(e, str) else "".join(e) for e in elems
            )
            out = [alpha.word(e) for e in elems]
        elif kind == "pairs":
            if "alphabet" in obj:
                alpha = Alphabet(tuple(obj["alphabet"]))
            else:
                alpha = _infer_alphabet(c for e in elems for c in e)
                if set(alpha.symbols) <= {"0", "1"}:
                    alpha = BINARY
            out = [Pair(alpha.word(u), alpha.word(v)) for u, v in elems]
        elif kind == "matrices":
            out = [matrix_from_json(e) if isinstance(e, list) else parse_matrix(e) for e in elems]
        elif kind == "freegroup":
            out = [FreeGroupElement.parse(e) for e in elems]
        elif kind == "morphisms":
            alpha = Alphabet(tuple(obj["alphabet"])) if "alphabet" in obj else None
            out = [_morphism_from_mapping({str(k): str(v) for k, v in e.items()}, alpha) for e in elems]
        else:
            out = [int(e) for e in elems]
            if any(n < 0 for n in out):
                raise ValueError("naturals must be nonnegative")
    except ParseError:
        raise
    except (KeyError, ValueError, TypeError) as exc:
        raise ParseError(f"bad {kind} element: {exc}") from None
    if len(set(out)) != len(out):
        raise ParseError("elements must be pairwise distinct")
    return GeneratorSet(out, kind=kind)


_TEXT_PARSERS = {
    "words": parse_words,
    "pairs": parse_pairs,
    "matrices": parse_matrices,
    "freegroup": parse_freegroup,
    "morphisms": parse_morphisms,
    "naturals": parse_naturals,
}


def parse_set(text: str, kind: Optional[str] = None) -> GeneratorSet:
    """Parse a generator set from JSON (kind may be embedded) or from text of the given kind."""
    if looks_like_json(text):
        return set_from_json(load_json(text), kind)
    if kind is None:
        raise ParseError("text input needs an explicit kind")
    return _TEXT_PARSERS[kind](text)


def parse_witness(text: str) -> DoubleFactorization:
    obj = load_json(text)
    try:
        w = DoubleFactorization.from_json(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad witness: {exc}") from None
    return w


def parse_coefficients(text: str) -> Polynomial:
    parts = [p for p in text.replace(" ", "").split(",") if p != ""]
    if not parts:
        raise ParseError("no coefficients given", 1, 1)
    coeffs = []
    pos = 0
    for p in parts:
        try:
            coeffs.append(Fraction(p))
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad coefficient {p!r}", 1, text.find(p, pos) + 1) from None
        pos = text.find(p, pos) + len(p)
    return Polynomial(coeffs)
