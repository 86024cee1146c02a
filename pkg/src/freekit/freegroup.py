"""Free groups: reduction, automata over signed letters, Benois saturation.

A letter is a nonzero int: +(g+1) for generator g and -(g+1) for its
inverse. In text, lowercase letters are generators and uppercase letters
their inverses, so ``abA`` is a b a^-1.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

from .errors import DuplicateElements, ParseError
from .verdict import DoubleFactorization, Verdict


def free_reduce(letters: Iterable[int]) -> tuple:
    stack = []
    for a in letters:
        if a == 0:
            raise ValueError("0 is not a letter")
        if stack and stack[-1] == -a:
            stack.pop()
        else:
            stack.append(a)
    return tuple(stack)


class FreeGroupElement:
    """A freely reduced word; ``*`` is the group product."""

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[int] = ()):
        self.letters = free_reduce(letters)

    @classmethod
    def _raw(cls, letters: tuple) -> "FreeGroupElement":
        e = cls.__new__(cls)
        e.letters = letters
        return e

    @classmethod
    def parse(cls, text: str) -> "FreeGroupElement":
        text = text.strip()
        if text in ("1", "e", "ε"):
            return cls()
        out = []
        for pos, ch in enumerate(text):
            if "a" <= ch <= "z":
                out.append(ord(ch) - ord("a") + 1)
            elif "A" <= ch <= "Z":
                out.append(-(ord(ch) - ord("A") + 1))
            else:
                raise ParseError(f"unexpected character {ch!r} in group word", 1, pos + 1)
        return cls(out)

    def __mul__(self, other: "FreeGroupElement") -> "FreeGroupElement":
        return fg_mul(self, other)

    def inverse(self) -> "FreeGroupElement":
        return fg_inv(self)

    def is_identity(self) -> bool:
        return not self.letters

    def __len__(self):
        return len(self.letters)

    def __eq__(self, other):
        return isinstance(other, FreeGroupElement) and self.letters == other.letters

    def __hash__(self):
        return hash(("fg", self.letters))

    def __str__(self):
        if not self.letters:
            return "1"
        return "".join(chr(ord("a") + a - 1) if a > 0 else chr(ord("A") - a - 1) for a in self.letters)

    def __repr__(self):
        return f"FreeGroupElement({str(self)!r})"

    def to_json(self):
        return str(self)


def fg(text: str) -> FreeGroupElement:
    return FreeGroupElement.parse(text)


def fg_mul(x: FreeGroupElement, y: FreeGroupElement) -> FreeGroupElement:
    a, b = x.letters, y.letters
    k = 0
    while k < len(a) and k < len(b) and a[-1 - k] == -b[k]:
        k += 1
    return FreeGroupElement._raw(a[: len(a) - k] + b[k:])


def fg_inv(x: FreeGroupElement) -> FreeGroupElement:
    return FreeGroupElement._raw(tuple(-a for a in reversed(x.letters)))


# -- automata ---------------------------------------------------------------


@dataclass(frozen=True)
class Edge:
    source: Hashable
    label: FreeGroupElement  # empty label means an epsilon move
    target: Hashable
    tag: object = None


@dataclass
class GroupAutomaton:
    states: set = field(default_factory=set)
    edges: list = field(default_factory=list)
    initial: set = field(default_factory=set)
    terminal: set = field(default_factory=set)

    def add_edge(self, p, label, q, tag=None):
        if isinstance(label, str):
            label = FreeGroupElement.parse(label) if label else FreeGroupElement()
        elif not isinstance(label, FreeGroupElement):
            label = FreeGroupElement(label)
        self.states.update((p, q))
        self.edges.append(Edge(p, label, q, tag))

    def transition_count(self) -> int:
        return len(self.edges)


def freeness_automaton(X: Sequence[FreeGroupElement]) -> GroupAutomaton:
    """Automaton recognising { x^-1 y v u^-1 : x != y in X, u, v in X+ }.

    It accepts the identity exactly when X is not a code. Edges reading a
    generator carry a tag (role, index) so that accepting paths can be turned
    back into an equation x u = y v.
    """
    k = len(X)
    if len(set(X)) != k:
        raise DuplicateElements("group elements must be pairwise distinct")
    A = GroupAutomaton()
    A.states.update(["I", "M", "N", "P", "T"])
    A.initial.add("I")
    A.terminal.add("T")
    eps = FreeGroupElement()
    for i, x in enumerate(X):
        for j, y in enumerate(X):
            if i != j:
                A.add_edge("I", x.inverse(), ("Q", i, j), ("x", i))
                A.add_edge(("Q", i, j), y, "M", ("y", j))
    for i, x in enumerate(X):
        A.add_edge("M", x, "N", ("v", i))
    A.add_edge("N", eps, "M")
    A.add_edge("N", eps, "P")
    for i, x in enumerate(X):
        A.add_edge("P", x.inverse(), "T", ("u", i))
    A.add_edge("T", eps, "P")
    return A


# Internal letter automaton. Every derived fact keeps a lazy derivation: an int
# names a base letter edge, a tuple is a concatenation of derivations.


class _LetterAutomaton:
    def __init__(self, n_states: int):
        self.n = n_states
        self.out = defaultdict(dict)  # p -> {(a, q): derivation}
        self.inc = defaultdict(dict)  # q -> {(a, p): derivation}
        self.initial = {}  # state -> derivation of a path from an original initial state
        self.terminal = {}  # state -> derivation of a path to an original terminal state

    def has(self, p, a, q) -> bool:
        return (a, q) in self.out[p]

    def add(self, p, a, q, deriv) -> bool:
        if (a, q) in self.out[p]:
            return False
        self.out[p][(a, q)] = deriv
        self.inc[q][(a, p)] = deriv
        return True

    def edges(self):
        for p, d in self.out.items():
            for (a, q), deriv in d.items():
                yield p, a, q, deriv


def _expand(A: GroupAutomaton):
    """Split labels into single letters. Returns base edges and the state numbering."""
    index = {}

    def sid(s):
        if s not in index:
            index[s] = len(index)
        return index[s]

    for s in sorted(A.states, key=repr):
        sid(s)
    base = []  # (p, letter or 0 for epsilon, q, edge position, is_last)
    for pos, e in enumerate(A.edges):
        p, q = sid(e.source), sid(e.target)
        letters = e.label.letters
        if not letters:
            base.append((p, 0, q, pos, True))
            continue
        cur = p
        for k, a in enumerate(letters):
            nxt = q if k == len(letters) - 1 else sid(("chain", pos, k))
            base.append((cur, a, nxt, pos, k == len(letters) - 1))
            cur = nxt
    return base, index


def _eliminate_epsilon(base, n_states, initial, terminal) -> _LetterAutomaton:
    eps = defaultdict(list)
    letter_edges = defaultdict(list)
    for eid, (p, a, q, _, _) in enumerate(base):
        if a == 0:
            eps[p].append((q, eid))
        else:
            letter_edges[p].append((a, q, eid))
    L = _LetterAutomaton(n_states)
    for p in range(n_states):
        # epsilon closure of p, each member with a derivation of its path
        closure = {p: ()}
        queue = deque([p])
        while queue:
            s = queue.popleft()
            for t, eid in eps[s]:
                if t not in closure:
                    closure[t] = (closure[s], eid)
                    queue.append(t)
        for s, path in closure.items():
            for a, q, eid in letter_edges[s]:
                L.add(p, a, q, (path, eid))
            if s in terminal and p not in L.terminal:
                L.terminal[p] = path
    for s in initial:
        L.initial[s] = ()
    return L


def _saturate(L: _LetterAutomaton) -> None:
    """Benois rules as a worklist fixpoint.

    For every cancelling pair q -a-> q' -a^-1-> q'':
      1. q initial      => q'' initial
      2. q'' terminal   => q terminal
      3. p -b-> q       => add p -b-> q''
      4. q'' -b-> p     => add q -b-> p
    """
    changed = True
    while changed:
        changed = False
        pairs = []
        for q in range(L.n):
            for (a, q1), d1 in list(L.out[q].items()):
                for (b, q2), d2 in list(L.out[q1].items()):
                    if b == -a:
                        pairs.append((q, q2, (d1, d2)))
        for q, q2, dpair in pairs:
            if q in L.initial and q2 not in L.initial:
                L.initial[q2] = (L.initial[q], dpair)
                changed = True
            if q2 in L.terminal and q not in L.terminal:
                L.terminal[q] = (dpair, L.terminal[q2])
                changed = True
            for (b, p), d0 in list(L.inc[q].items()):
                if L.add(p, b, q2, (d0, dpair)):
                    changed = True
            for (b, p), d3 in list(L.out[q2].items()):
                if L.add(q, b, p, (dpair, d3)):
                    changed = True


def _flatten(deriv) -> list:
    out = []
    stack = [deriv]
    while stack:
        d = stack.pop()
        if isinstance(d, int):
            out.append(d)
        else:
            stack.extend(reversed(d))
    return out


def _saturated(A: GroupAutomaton):
    base, index = _expand(A)
    initial = {index[s] for s in A.initial}
    terminal = {index[s] for s in A.terminal}
    L = _eliminate_epsilon(base, len(index), initial, terminal)
    _saturate(L)
    return L, base, index


def _accepts(L: _LetterAutomaton, g: FreeGroupElement) -> bool:
    current = set(L.initial)
    for a in g.letters:
        current = {q for p in current for (b, q) in L.out[p] if b == a}
        if not current:
            return False
    return any(q in L.terminal for q in current)


def eliminate_epsilon(A: GroupAutomaton) -> GroupAutomaton:
    """Equivalent automaton over single signed letters with no epsilon moves."""
    base, index = _expand(A)
    names = {v: k for k, v in index.items()}
    L = _eliminate_epsilon(base, len(index), {index[s] for s in A.initial}, {index[s] for s in A.terminal})
    return _to_group_automaton(L, names)


def benois_saturate(A: GroupAutomaton) -> GroupAutomaton:
    """Saturate a letter automaton; epsilon moves are eliminated first if present."""
    L, _, index = _saturated(A)
    names = {v: k for k, v in index.items()}
    return _to_group_automaton(L, names)


def _to_group_automaton(L: _LetterAutomaton, names: dict) -> GroupAutomaton:
    B = GroupAutomaton()
    B.states.update(names.values())
    for p, a, q, _ in L.edges():
        B.add_edge(names[p], FreeGroupElement._raw((a,)), names[q])
    B.initial = {names[s] for s in L.initial}
    B.terminal = {names[s] for s in L.terminal}
    return B


def fg_rational_member(A: GroupAutomaton, g: FreeGroupElement) -> bool:
    L, _, _ = _saturated(A)
    return _accepts(L, g)


def _singleton_automaton(x: FreeGroupElement) -> GroupAutomaton:
    A = GroupAutomaton()
    A.initial.add("I")
    A.terminal.add("T")
    A.add_edge("I", x, "T")
    A.add_edge("T", FreeGroupElement(), "I")
    return A


def fg_code_check(X: Sequence[FreeGroupElement]) -> Verdict:
    X = list(X)
    if not X:
        raise ValueError("empty set")
    if len(set(X)) != len(X):
        raise DuplicateElements("group elements must be pairwise distinct")
    if len(X) == 1:
        # {x}+ contains the identity iff x itself is the identity
        if fg_rational_member(_singleton_automaton(X[0]), FreeGroupElement()):
            return Verdict.not_code(DoubleFactorization((0,), (0, 0)))
        return Verdict.code()
    for i, x in enumerate(X):
        if x.is_identity():
            return Verdict.not_code(DoubleFactorization((i,), (i, i)))
    A = freeness_automaton(X)
    L, base, _ = _saturated(A)
    hit = next((s for s in sorted(L.initial) if s in L.terminal), None)
    if hit is None:
        return Verdict.code()
    path = _flatten((L.initial[hit], L.terminal[hit]))
    tags = [A.edges[base[eid][3]].tag for eid in path if base[eid][4]]
    tags = [t for t in tags if t is not None]
    x = [i for role, i in tags if role == "x"]
    y = [i for role, i in tags if role == "y"]
    v = [i for role, i in tags if role == "v"]
    u = [i for role, i in tags if role == "u"][::-1]
    if len(x) != 1 or len(y) != 1 or not u or not v:
        raise AssertionError(f"malformed accepting path {tags}")
    w = DoubleFactorization(tuple(x + u), tuple(y + v)).ordered()
    if not _verify(X, w):
        raise AssertionError("reconstructed witness does not verify")
    return Verdict.not_code(_shorten(X, w))


def _shorten(X, w: DoubleFactorization, budget: int = 20000) -> DoubleFactorization:
    """Replace a path-derived witness by the first equal-length one, when that is cheap.

    A witness with sides u, v always yields an equal-length one of length at
    most |u| + |v| + 1, so the scan below cannot come back empty-handed
    unless the budget cuts it short.
    """
    k = len(X)
    limit = len(w.left) + len(w.right) + 1
    level = [((), FreeGroupElement())]
    spent = 0
    for _ in range(limit):
        seen = {}
        nxt = []
        for word, value in level:
            for i in range(k):
                spent += 1
                if spent > budget:
                    return w
                wi, vi = word + (i,), value * X[i]
                prev = seen.get(vi)
                if prev is not None:
                    return DoubleFactorization(prev, wi)
                seen[vi] = wi
                nxt.append((wi, vi))
        level = nxt
    return w


def _verify(X, w: DoubleFactorization) -> bool:
    def prod(seq):
        acc = FreeGroupElement()
        for i in seq:
            acc = acc * X[i]
        return acc

    return w.left != w.right and prod(w.left) == prod(w.right)
