"""Constructions that move freeness questions between semigroups.

Gadgets that change the number of generators, scaling rational matrices to
integer ones, direct products with commutative factors, PCP and Claus
instances turned into sets of word pairs, the embedding of binary word pairs
into 3x3 matrices, and the reduction of 2k-1 generators to k 2x2 matrices.
"""

from __future__ import annotations

import math
import warnings
from collections import deque
from dataclasses import dataclass
from functools import reduce
from typing import Callable, Optional, Sequence

from .algebra import Matrix, lcm_of_denominators
from .errors import DecodeError, NotClausShaped, SingletonWarning, TrivialYes, WrongCardinality
from .search import GeneratorSet, power
from .verdict import DoubleFactorization, Verdict
from .words import BINARY, Additive, Alphabet, Morphism, Pair, Word, encode_morphism

# -- semi-Thue systems -------------------------------------------------------


@dataclass(frozen=True)
class SemiThueSystem:
    alphabet: Alphabet
    rules: tuple  # of (Word, Word)

    def successors(self, w: tuple):
        for lhs, rhs in self.rules:
            lhs, rhs = tuple(lhs.letters), tuple(rhs.letters)
            n = len(lhs)
            for i in range(len(w) - n + 1):
                if w[i : i + n] == lhs:
                    yield w[:i] + rhs + w[i + n :]


@dataclass(frozen=True)
class Accessibility:
    found: bool
    path: tuple = ()  # words from u to v inclusive when found
    expansions: int = 0


def semi_thue_bounded_accessibility(T: SemiThueSystem, u: Word, v: Word, max_expansions: int = 10_000) -> Accessibility:
    start, goal = tuple(u.letters), tuple(v.letters)
    parent = {start: None}
    queue = deque([start])
    expansions = 0
    while queue:
        w = queue.popleft()
        if w == goal:
            path = []
            while w is not None:
                path.append(Word(w, T.alphabet))
                w = parent[w]
            return Accessibility(True, tuple(reversed(path)), expansions)
        if expansions >= max_expansions:
            break
        expansions += 1
        for nxt in T.successors(w):
            if nxt not in parent:
                parent[nxt] = w
                queue.append(nxt)
    return Accessibility(False, (), expansions)


# -- PCP, MMPCP and Claus instances -----------------------------------------


@dataclass(frozen=True)
class PcpInstance:
    sigma: Morphism
    tau: Morphism

    def __post_init__(self):
        if self.sigma.domain != self.tau.domain or self.sigma.codomain != self.tau.codomain:
            raise ValueError("sigma and tau must share domain and codomain")

    @property
    def sigma_alphabet(self) -> Alphabet:
        return self.sigma.domain

    @property
    def delta_alphabet(self) -> Alphabet:
        return self.sigma.codomain


CLAUS_DELTA = ("0", "1", "b", "e", "d")


@dataclass(frozen=True)
class ClausInstance:
    pcp: PcpInstance
    b: str = "b"
    e: str = "e"

    @classmethod
    def from_json(cls, obj: dict) -> "ClausInstance":
        sigma_alpha = Alphabet(tuple(obj["sigma_alphabet"]))
        delta_alpha = Alphabet(tuple(obj.get("delta_alphabet", CLAUS_DELTA)))
        sigma = Morphism.from_dict(sigma_alpha, delta_alpha, obj["sigma"])
        tau = Morphism.from_dict(sigma_alpha, delta_alpha, obj["tau"])
        return cls(PcpInstance(sigma, tau), obj.get("b", "b"), obj.get("e", "e"))

    def to_json(self) -> dict:
        return {
            "sigma_alphabet": list(self.pcp.sigma_alphabet.symbols),
            "delta_alphabet": list(self.pcp.delta_alphabet.symbols),
            "sigma": self.pcp.sigma.to_json(),
            "tau": self.pcp.tau.to_json(),
            "b": self.b,
            "e": self.e,
        }


@dataclass(frozen=True)
class ClausCheck:
    ok: bool
    violation: Optional[str] = None

    def __bool__(self):
        return self.ok


def _in_blocks(w: str, blocks: tuple, allow_empty: bool) -> bool:
    if not w:
        return allow_empty
    if len(w) % 2:
        return False
    return all(w[i : i + 2] in blocks for i in range(0, len(w), 2))


def _image_str(m: Morphism, symbol: str) -> str:
    im = m.image(m.domain.index(symbol))
    return "".join(m.codomain.symbols[a] for a in im.letters)


def validate_claus(c: ClausInstance) -> ClausCheck:
    sigma, tau = c.pcp.sigma, c.pcp.tau
    syms = c.pcp.sigma_alphabet.symbols
    if c.b not in syms or c.e not in syms or c.b == c.e:
        return ClausCheck(False, "b and e must be two distinct letters of Sigma")
    if set(c.pcp.delta_alphabet.symbols) != set(CLAUS_DELTA) or len(c.pcp.delta_alphabet) != 5:
        return ClausCheck(False, "Delta must be {0, 1, b, e, d}")
    left, right = ("d0", "d1"), ("0d", "1d")
    for a in syms:
        if a in (c.b, c.e):
            continue
        if not _in_blocks(_image_str(sigma, a), left, False):
            return ClausCheck(False, f"sigma({a}) must lie in {{d0, d1}}+")
        if not _in_blocks(_image_str(tau, a), right, False):
            return ClausCheck(False, f"tau({a}) must lie in {{0d, 1d}}+")
    sb, tb = _image_str(sigma, c.b), _image_str(tau, c.b)
    se, te = _image_str(sigma, c.e), _image_str(tau, c.e)
    if not (sb.startswith("b") and _in_blocks(sb[1:], left, True)):
        return ClausCheck(False, "sigma(b) must lie in b{d0, d1}*")
    if not (se.endswith("de") and _in_blocks(se[:-2], left, True)):
        return ClausCheck(False, "sigma(e) must lie in {d0, d1}* de")
    if not (tb.startswith("bd") and _in_blocks(tb[2:], right, True)):
        return ClausCheck(False, "tau(b) must lie in bd{0d, 1d}*")
    if not (te.endswith("e") and _in_blocks(te[:-1], right, True)):
        return ClausCheck(False, "tau(e) must lie in {0d, 1d}* e")
    return ClausCheck(True)


def pcp_witness_check(p: PcpInstance, w: Word) -> bool:
    if not len(w):
        return False
    return p.sigma.apply(w) == p.tau.apply(w)


@dataclass(frozen=True)
class MmpcpChoice:
    letters: Word
    top: tuple  # entries "s" (sigma) or "t" (tau)
    bottom: tuple

    def __post_init__(self):
        object.__setattr__(self, "top", tuple(self.top))
        object.__setattr__(self, "bottom", tuple(self.bottom))
        n = len(self.letters)
        if n < 1 or len(self.top) != n or len(self.bottom) != n:
            raise ValueError("letters, top and bottom must have the same positive length")
        if not set(self.top + self.bottom) <= {"s", "t"}:
            raise ValueError("choices are 's' (sigma) or 't' (tau)")


def mmpcp_witness_check(p: PcpInstance, ch: MmpcpChoice) -> bool:
    if ch.top == ch.bottom:
        return False

    def side(choices):
        out = []
        for a, c in zip(ch.letters.letters, choices):
            m = p.sigma if c == "s" else p.tau
            out.extend(m.images[a])
        return tuple(out)

    return side(ch.top) == side(ch.bottom)


def mmpcp_pairs_set(p: PcpInstance) -> GeneratorSet:
    """{(sigma(a), a)} followed by {(tau(a), a)}, letters in declared order."""
    sig = p.sigma_alphabet
    for a in range(len(sig)):
        if p.sigma.images[a] == p.tau.images[a]:
            raise TrivialYes(sig.symbols[a])
    s_pairs = [Pair(p.sigma.image(a), Word((a,), sig)) for a in range(len(sig))]
    t_pairs = [Pair(p.tau.image(a), Word((a,), sig)) for a in range(len(sig))]
    return GeneratorSet(s_pairs + t_pairs, kind="pairs")


@dataclass(frozen=True)
class ClausReduction:
    """Y before encoding, Z after, and where each s_a / t_a sits in Y."""

    Y: GeneratorSet
    Z: GeneratorSet
    s_index: dict  # inner letter -> index in Y
    t_index: dict
    te_sb: int
    se_tb: int
    te_tb: int


def claus_reduction(c: ClausInstance) -> ClausReduction:
    check = validate_claus(c)
    if not check:
        raise NotClausShaped(check.violation)
    p = c.pcp
    sig, delta = p.sigma_alphabet, p.delta_alphabet
    for a in range(len(sig)):
        if p.sigma.images[a] == p.tau.images[a]:
            raise TrivialYes(sig.symbols[a])

    def s(a):
        return Pair(p.sigma.image(a), Word((a,), sig))

    def t(a):
        return Pair(p.tau.image(a), Word((a,), sig))

    ib, ie = sig.index(c.b), sig.index(c.e)
    elems, s_index, t_index = [], {}, {}
    for a in range(len(sig)):
        if a in (ib, ie):
            continue
        s_index[sig.symbols[a]] = len(elems)
        elems.append(s(a))
        t_index[sig.symbols[a]] = len(elems)
        elems.append(t(a))
    te_sb = len(elems)
    elems.append(t(ie) * s(ib))
    se_tb = len(elems)
    elems.append(s(ie) * t(ib))
    te_tb = len(elems)
    elems.append(t(ie) * t(ib))
    Y = GeneratorSet(elems, kind="pairs")
    psi, phi = encode_morphism(delta), encode_morphism(sig)
    Z = GeneratorSet([Pair(psi.apply(y.first), phi.apply(y.second)) for y in elems], kind="pairs")
    return ClausReduction(Y, Z, s_index, t_index, te_sb, se_tb, te_tb)


def claus_reduction_to_pairs(c: ClausInstance) -> GeneratorSet:
    """The binary-encoded pair set Z; Z is not a code iff the instance is a yes-instance."""
    return claus_reduction(c).Z


def claus_transport_witness(c: ClausInstance, w: Word) -> DoubleFactorization:
    """Turn a PCP solution b w' e into the equation (t_e s_b) s_w' (s_e t_b) = (t_e t_b) t_w' (t_e t_b)."""
    red = claus_reduction(c)
    sig = c.pcp.sigma_alphabet
    syms = [sig.symbols[a] for a in w.letters]
    if len(syms) < 2 or syms[0] != c.b or syms[-1] != c.e or c.b in syms[1:-1] or c.e in syms[1:-1]:
        raise ValueError("expected a solution of the form b w e with w free of b and e")
    inner = syms[1:-1]
    left = (red.te_sb,) + tuple(red.s_index[a] for a in inner) + (red.se_tb,)
    right = (red.te_tb,) + tuple(red.t_index[a] for a in inner) + (red.te_tb,)
    return DoubleFactorization(left, right)


# -- generator-count gadgets ---------------------------------------------------


def gadget_code_d(x, Y: Sequence, d: int) -> list:
    """[x^d] followed by x^r y for r = 0..d-1 and y in Y."""
    if d < 1:
        raise ValueError("d must be positive")
    if x in Y:
        raise ValueError("x must not belong to Y")
    out = [power(x, d)]
    for r in range(d):
        for y in Y:
            out.append(y if r == 0 else power(x, r) * y)
    return out


def gadget_prefix_recode(X: Sequence, s1, t1, s2, t2) -> list:
    """(X minus {s1, t1, s2, t2}) followed by t2 s1, s2 t1, t2 t1."""
    marked = [s1, t1, s2, t2]
    if len(set(marked)) != 4 or any(m not in X for m in marked):
        raise ValueError("the four designated elements must be distinct members of X")
    rest = [x for x in X if x not in marked]
    return rest + [t2 * s1, s2 * t1, t2 * t1]


_PAD = Morphism(BINARY, BINARY, ((1,), (1, 0)))  # 0 -> 1, 1 -> 10


def pad_pairs_generator(X: Sequence[Pair]) -> list:
    """Recode both components through 0 -> 1, 1 -> 10 and adjoin (100, 100)."""
    out = [Pair(_PAD.apply(p.first), _PAD.apply(p.second)) for p in X]
    w = BINARY.word("100")
    return out + [Pair(w, w)]


@dataclass(frozen=True)
class Padding:
    closed: bool
    elements: tuple
    added: object = None


def pad_generator_closure(X: Sequence) -> Padding:
    """Adjoin the first product x_i x_j (i, j in lexicographic order) missing from X."""
    X = list(X)
    members = set(X)
    for x in X:
        for y in X:
            s = x * y
            if s not in members:
                return Padding(False, tuple(X + [s]), s)
    return Padding(True, tuple(X))


# -- scaling and direct products ---------------------------------------------


def scale_to_integers(X: Sequence[Matrix]) -> tuple:
    X = list(X)
    if len(X) == 1:
        warnings.warn("codeness is only preserved by scaling for two or more matrices", SingletonWarning)
    n = reduce(math.lcm, (lcm_of_denominators(m.entries()) for m in X), 1)
    return n, [m.scale(n) for m in X]


def product_with_commutative(X: Sequence, y: Callable) -> list:
    """Pair each x with y(x) in (N, +)."""
    return [Pair(x, Additive(int(y(x)))) for x in X]


@dataclass(frozen=True)
class Projection:
    verdict: Optional[Verdict]
    elements: tuple


def project_commutative(Z: Sequence[Pair]) -> Projection:
    firsts = {}
    for i, z in enumerate(Z):
        j = firsts.get(z.first)
        if j is not None:
            return Projection(Verdict.not_code(DoubleFactorization((j, i), (i, j))), ())
        firsts[z.first] = i
    return Projection(None, tuple(z.first for z in Z))


# -- binary pairs as 3x3 matrices --------------------------------------------


def beta(u: Word) -> int:
    """Read u = a1 a2 ... an as the binary number an ... a2 a1."""
    return sum(1 << i for i, a in enumerate(u.letters) if a == 1)


def embed_pairs_to_mat3(p: Pair) -> Matrix:
    u, v = p.first, p.second
    return Matrix([[1 << len(u), 0, beta(u)], [0, 1 << len(v), beta(v)], [0, 0, 1]])


def _unbeta(length: int, value: int) -> Word:
    if value >= 1 << length or value < 0:
        raise DecodeError("value does not fit the length")
    return Word(tuple((value >> i) & 1 for i in range(length)), BINARY)


def decode_mat3(m: Matrix) -> Pair:
    if m.dim != 3:
        raise DecodeError("3x3 matrix expected")
    r = m.rows
    if r[0][1] != 0 or r[1][0] != 0 or r[2] != (0, 0, 1):
        raise DecodeError("not of the form Phi(u, v)")
    out = []
    for k in (0, 1):
        diag, b = r[k][k], r[k][2]
        if type(diag) is not int or type(b) is not int or diag < 1 or diag & (diag - 1):
            raise DecodeError("diagonal entry is not a power of two")
        out.append(_unbeta(diag.bit_length() - 1, b))
    return Pair(out[0], out[1])


# -- dimension reduction -----------------------------------------------------


def _block(entries, d: Optional[int]):
    """Assemble a 2x2 matrix whose entries are scalars (d None) or d x d matrices."""
    if d is None:
        return Matrix(entries)
    rows = []
    for bi in range(2):
        for r in range(d):
            row = []
            for bj in range(2):
                row.extend(entries[bi][bj].rows[r])
            rows.append(row)
    return Matrix(rows)


def dim_reduce_2x2(X: Sequence) -> GeneratorSet:
    """From 2k-1 elements x, y_1..y_{k-1}, z_1..z_{k-1} build M = [[0,x],[1,0]], N_i = [[0,z_i],[0,y_i]].

    Elements are naturals, or d x d matrices for the block version.
    """
    X = list(X)
    if len(X) < 3 or len(X) % 2 == 0:
        raise WrongCardinality(f"need 2k-1 elements with k >= 2, got {len(X)}")
    k = (len(X) + 1) // 2
    x, ys, zs = X[0], X[1:k], X[k:]
    if isinstance(x, Matrix):
        d = x.dim
        zero, one = Matrix.zero(d), Matrix.identity(d)
    else:
        d, zero, one = None, 0, 1
    mats = [_block([[zero, x], [one, zero]], d)]
    for y, z in zip(ys, zs):
        mats.append(_block([[zero, z], [zero, y]], d))
    return GeneratorSet(mats, kind="matrices")


def embed_pad_dimension(m: Matrix) -> Matrix:
    d = m.dim
    rows = [list(r) + [0] for r in m.rows]
    rows.append([0] * d + [1])
    return Matrix(rows)
