"""Semi-decision engine for non-freeness over any semigroup with exact equality.

Elements only need ``*`` (the semigroup product), ``==`` and ``hash``. Words,
pairs, matrices, free-group elements, morphisms and plain ints all qualify.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

import sympy

from .algebra import Matrix, to_scalar
from .errors import DuplicateElements, IndexOutOfRange, NotInvertible, PatternMismatch
from .freegroup import FreeGroupElement
from .verdict import DoubleFactorization, SearchOutcome, Verdict
from .words import Additive, Morphism, Pair, Word, sardinas_patterson

DEFAULT_MAX_LEN = 12
DEFAULT_DEPTH = 24


class GeneratorSet:
    """An indexed finite family of pairwise distinct semigroup elements."""

    def __init__(self, elements: Sequence, kind: Optional[str] = None, allow_duplicates: bool = False):
        self.elements = tuple(elements)
        if not self.elements:
            raise ValueError("a generator set needs at least one element")
        if not allow_duplicates and len(set(self.elements)) != len(self.elements):
            raise DuplicateElements("generators must be pairwise distinct")
        self.kind = kind or _guess_kind(self.elements[0])

    def __len__(self):
        return len(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def __iter__(self):
        return iter(self.elements)

    def product(self, indices: Sequence[int]):
        """Product of the indexed elements; runs of one index use binary powering."""
        if not indices:
            raise ValueError("empty product")
        n = len(self.elements)
        for i in indices:
            if not 0 <= i < n:
                raise IndexOutOfRange(f"index {i} not in 0..{n - 1}")
        acc = None
        k = 0
        while k < len(indices):
            j = k
            while j < len(indices) and indices[j] == indices[k]:
                j += 1
            block = power(self.elements[indices[k]], j - k)
            acc = block if acc is None else acc * block
            k = j
        return acc

    def to_json(self) -> dict:
        return {"kind": self.kind, "elements": [_elem_json(e) for e in self.elements]}


def _elem_json(e):
    return e.to_json() if hasattr(e, "to_json") else e


def _guess_kind(e) -> str:
    if isinstance(e, Word):
        return "words"
    if isinstance(e, Pair):
        return "pairs"
    if isinstance(e, Matrix):
        return "matrices"
    if isinstance(e, FreeGroupElement):
        return "freegroup"
    if isinstance(e, Morphism):
        return "morphisms"
    if isinstance(e, int):
        return "naturals"
    return type(e).__name__


def power(x, n: int):
    if n < 1:
        raise ValueError("positive exponent required")
    result = None
    base = x
    while n:
        if n & 1:
            result = base if result is None else result * base
        n >>= 1
        if n:
            base = base * base
    return result


def as_generator_set(X) -> GeneratorSet:
    return X if isinstance(X, GeneratorSet) else GeneratorSet(X)


def verify_double_factorization(X, w: DoubleFactorization) -> bool:
    X = as_generator_set(X)
    if not w.left or not w.right or w.left == w.right:
        return False
    return X.product(w.left) == X.product(w.right)


def balanced_collision_search(X, L: int = DEFAULT_MAX_LEN) -> SearchOutcome:
    """Look for two distinct index words of equal length n <= L with equal products.

    Index words of each length are enumerated in lexicographic order; the first
    word whose product was already produced at that length ends the search.
    Any non-code with at least two generators has such a balanced witness,
    so the search is complete up to the bound.
    """
    X = as_generator_set(X)
    k = len(X)
    elems = X.elements
    for n in range(1, L + 1):
        seen = {}
        # iterative DFS in lexicographic order with prefix products
        stack = [(elems[i], (i,)) for i in range(k - 1, -1, -1)]
        while stack:
            value, word = stack.pop()
            if len(word) == n:
                prev = seen.get(value)
                if prev is not None:
                    return SearchOutcome.found(DoubleFactorization(prev, word))
                seen[value] = word
                continue
            for i in range(k - 1, -1, -1):
                stack.append((value * elems[i], word + (i,)))
    return SearchOutcome.exhausted(L)


def is_invertible(e) -> bool:
    """Whether the element lives in a group, or embeds in one together with its kind."""
    if isinstance(e, Matrix):
        return e.det() != 0
    if isinstance(e, (FreeGroupElement, Word)):
        return True
    if isinstance(e, Pair):
        return is_invertible(e.first) and is_invertible(e.second)
    if isinstance(e, int):
        return e != 0
    if isinstance(e, Additive):
        return True
    return False


def quotient_bfs_search(X, D: int = DEFAULT_DEPTH) -> SearchOutcome:
    """Breadth-first search for x u = y v over a cancellative generator set.

    Products are enumerated by increasing index-word length and deduplicated
    by value. In a group, the first repeated value gives (x u)^-1 (y v) = 1.
    ``D`` bounds the length of the longer side.
    """
    X = as_generator_set(X)
    if len(X) < 2:
        raise ValueError("at least two generators are required")
    _check_cancellative(X)
    elems = X.elements
    seen = {}
    frontier = []
    for i, e in enumerate(elems):
        seen[e] = (i,)
        frontier.append((e, (i,)))
    for _ in range(2, D + 1):
        nxt = []
        for value, word in frontier:
            for i, e in enumerate(elems):
                v = value * e
                w = word + (i,)
                prev = seen.get(v)
                if prev is not None:
                    return SearchOutcome.found(DoubleFactorization(prev, w))
                seen[v] = w
                nxt.append((v, w))
        frontier = nxt
    return SearchOutcome.exhausted(D)


def _check_cancellative(X: GeneratorSet) -> None:
    ms = [e for e in X.elements if isinstance(e, Morphism)]
    if ms:
        for i, m in enumerate(X.elements):
            imgs = [m.image(a) for a in range(len(m.domain))]
            if len(set(imgs)) != len(imgs) or not sardinas_patterson(imgs).is_code:
                raise NotInvertible(i, f"morphism {i} is not injective")
        return
    for i, e in enumerate(X.elements):
        if not is_invertible(e):
            raise NotInvertible(i)


# -- two-by-two matrix fast paths --------------------------------------------


def det_zero_filter(X) -> Optional[DoubleFactorization]:
    """Witness x0 x0 y x0 = x0 y x0 x0 from any singular 2x2 generator x0.

    x0^2 = tr(x0) x0 when det(x0) = 0, so both sides equal tr(x0) x0 y x0.
    """
    X = as_generator_set(X)
    if len(X) < 2:
        raise ValueError("at least two matrices are required")
    for i, m in enumerate(X.elements):
        if m.dim == 2 and m.det() == 0:
            j = 0 if i != 0 else 1
            return DoubleFactorization((i, i, j, i), (i, j, i, i))
    return None


def sign_pattern_decide(xm: Matrix, ym: Matrix) -> Verdict:
    """Decide {xm, ym} for xm = [[b1,b2],[a1,a2]], ym = [[a3,a4],[b3,b4]] with 0 <= a_i <= b_i."""
    (b1, b2), (a1, a2) = xm.rows
    (a3, a4), (b3, b4) = ym.rows
    for a, b in ((a1, b1), (a2, b2), (a3, b3), (a4, b4)):
        if not 0 <= a <= b:
            raise PatternMismatch(f"need 0 <= {a} <= {b}")
    if xm.det() != 0 and ym.det() != 0:
        return Verdict.code(reason="sign pattern")
    return Verdict.not_code(det_zero_filter([xm, ym]), reason="singular generator")


# -- the A_lambda / B_lambda family ------------------------------------------


def a_matrix(lam) -> Matrix:
    return Matrix([[1, lam], [0, 1]])


def b_matrix(lam) -> Matrix:
    return Matrix([[1, 0], [lam, 1]])


def ab_witness(m: int, n: int) -> DoubleFactorization:
    """B A^m B^n A = A B^n A^m B with A at index 0 and B at index 1."""
    return DoubleFactorization((1,) + (0,) * m + (1,) * n + (0,), (0,) + (1,) * n + (0,) * m + (1,))


def ab_solutions(lam, bound: Optional[int] = None) -> list:
    """All positive (m, n) with m n (1 - lam^2) = m + n + 1, sorted by m.

    With 1 - lam^2 = p/q in lowest terms the equation reads
    (p m - q)(p n - q) = q (p + q); both factors must be positive divisors.
    """
    lam = Fraction(to_scalar(lam))
    s = 1 - lam * lam
    if s <= 0:
        return []
    p, q = s.numerator, s.denominator
    target = q * (p + q)
    out = []
    for a in sympy.divisors(target):
        b = target // a
        if (a + q) % p == 0 and (b + q) % p == 0:
            m, n = (a + q) // p, (b + q) // p
            if bound is None or (m <= bound and n <= bound):
                out.append((m, n))
    return sorted(out)


def ab_family_check(lam, bound: Optional[int] = None) -> Verdict:
    lam = Fraction(to_scalar(lam))
    if abs(lam) >= 1:
        return Verdict.code(reason="|lambda| >= 1")
    if lam == 0:
        return Verdict.not_code(DoubleFactorization((0,), (0, 0)), reason="A = B = I")
    sols = [mn for mn in ab_solutions(lam, bound) if mn[0] >= mn[1]]
    if not sols:
        return Verdict.unknown(bound, reason="no (m, n) solution")
    m, n = min(sols)
    w = ab_witness(m, n)
    if not verify_double_factorization(GeneratorSet([a_matrix(lam), b_matrix(lam)]), w):
        raise AssertionError("family witness failed to verify")
    return Verdict.not_code(w, m=m, n=n)


def lambda_sequence(k: int) -> tuple:
    """(lam_k, n_{k+1}, n_k) from n_0 = 3, n_1 = 6, n_{j+2} = 6 n_{j+1} - n_j - 6."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    a, b = 3, 6
    for _ in range(k):
        a, b = b, 6 * b - a - 6
    if b * b + a * a - 6 * a * b + 6 * a + 6 * b + 9 != 0:
        raise AssertionError("recurrence left the conic")
    lam = 1 - Fraction(b + a + 3, 2 * b * a)
    return lam, b, a


def dt_family(lam, mu) -> GeneratorSet:
    """{D_lam, T_mu} with D_lam = [[lam,0],[0,1]] and T_mu = [[mu,1],[0,1]]."""
    return GeneratorSet([Matrix([[lam, 0], [0, 1]]), Matrix([[mu, 1], [0, 1]])])
