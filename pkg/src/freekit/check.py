"""One entry point that picks the right procedure for a generator set."""

from __future__ import annotations

from typing import Optional

from .algebra import Matrix
from .errors import PatternMismatch
from .freegroup import fg_code_check
from .search import (
    DEFAULT_DEPTH,
    DEFAULT_MAX_LEN,
    GeneratorSet,
    balanced_collision_search,
    det_zero_filter,
    quotient_bfs_search,
    sign_pattern_decide,
    verify_double_factorization,
)
from .torsion import matrix_is_torsion, morphism_is_torsion
from .verdict import DoubleFactorization, Verdict
from .words import Pair, Word, sardinas_patterson, tuple_two_code_check

STRATEGIES = ("auto", "balanced", "quotient")


def _singleton(X: GeneratorSet) -> Optional[Verdict]:
    x = X[0]
    cert = None
    if isinstance(x, Matrix):
        t = matrix_is_torsion(x)
        cert = t.certificate if t.torsion else None
    elif X.kind == "morphisms" and x.is_endomorphism():
        t = morphism_is_torsion(x)
        cert = t.certificate if t.torsion else None
    elif isinstance(x, int):
        cert = (1, 2) if x in (0, 1) else None
    elif isinstance(x, Pair) and isinstance(x.first, Word):
        cert = (1, 2) if not len(x.first) and not len(x.second) else None
    else:
        return None
    if cert is None:
        return Verdict.code(reason="not torsion")
    p, q = cert
    return Verdict.not_code(DoubleFactorization((0,) * p, (0,) * q), reason="torsion")


def code_check(
    X: GeneratorSet,
    strategy: str = "auto",
    max_len: Optional[int] = None,
    depth: Optional[int] = None,
) -> Verdict:
    """CODE / NOT_A_CODE with a verified witness / UNKNOWN(bound)."""
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    if X.kind == "words":
        return sardinas_patterson(X.elements)
    if X.kind == "freegroup":
        return fg_code_check(X.elements)
    # idempotent generators give x = x x at once
    for i, x in enumerate(X.elements):
        if x * x == x:
            return Verdict.not_code(DoubleFactorization((i,), (i, i)), reason="idempotent generator")
    if len(X) == 1:
        v = _singleton(X)
        if v is not None:
            return v
        return Verdict.unknown(None, reason="singleton of unsupported kind")

    if strategy == "auto":
        v = _fast_paths(X)
        if v is not None:
            return v
    if strategy == "quotient":
        bound = depth or max_len or DEFAULT_DEPTH
        outcome = quotient_bfs_search(X, bound)
    else:
        bound = max_len or DEFAULT_MAX_LEN
        outcome = balanced_collision_search(X, bound)
    v = outcome.to_verdict()
    if v.witness is not None and not verify_double_factorization(X, v.witness):
        raise AssertionError("search produced a witness that does not verify")
    return v


def _fast_paths(X: GeneratorSet) -> Optional[Verdict]:
    elems = X.elements
    if X.kind == "pairs" and len(X) == 2 and all(isinstance(e.first, Word) and isinstance(e.second, Word) for e in elems):
        a, b = elems
        return tuple_two_code_check((a.first, a.second), (b.first, b.second))
    if X.kind == "matrices" and all(m.dim == 2 for m in elems):
        w = det_zero_filter(X)
        if w is not None:
            return Verdict.not_code(w, reason="singular generator")
        if len(X) == 2:
            for xm, ym, swap in ((elems[0], elems[1], False), (elems[1], elems[0], True)):
                try:
                    v = sign_pattern_decide(xm, ym)
                except PatternMismatch:
                    continue
                if v.is_not_code and swap:
                    v = Verdict.not_code(_swap_indices(v.witness), **v.info)
                return v
    return None


def _swap_indices(w: DoubleFactorization) -> DoubleFactorization:
    return DoubleFactorization(tuple(1 - i for i in w.left), tuple(1 - i for i in w.right))
