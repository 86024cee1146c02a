"""Verdicts, witnesses and search outcomes.

A witness of non-freeness is always a pair of distinct index sequences whose
products coincide. Everything here is plain immutable data.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

CODE = "CODE"
NOT_A_CODE = "NOT_A_CODE"
UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class DoubleFactorization:
    left: tuple
    right: tuple

    def __post_init__(self):
        object.__setattr__(self, "left", tuple(int(i) for i in self.left))
        object.__setattr__(self, "right", tuple(int(i) for i in self.right))

    def swapped(self) -> "DoubleFactorization":
        return DoubleFactorization(self.right, self.left)

    def ordered(self) -> "DoubleFactorization":
        """Return the same equation with the lexicographically smaller side on the left."""
        if self.right < self.left:
            return self.swapped()
        return self

    def to_json(self) -> dict:
        return {"left": list(self.left), "right": list(self.right)}

    @classmethod
    def from_json(cls, obj: Any) -> "DoubleFactorization":
        if isinstance(obj, dict) and "witness" in obj and "left" not in obj:
            obj = obj["witness"]
        return cls(tuple(obj["left"]), tuple(obj["right"]))


@dataclass(frozen=True)
class Verdict:
    status: str
    witness: Optional[DoubleFactorization] = None
    bound: Optional[int] = None
    info: dict = field(default_factory=dict, compare=False)

    @classmethod
    def code(cls, **info) -> "Verdict":
        return cls(CODE, info=info)

    @classmethod
    def not_code(cls, witness: DoubleFactorization, **info) -> "Verdict":
        return cls(NOT_A_CODE, witness=witness, info=info)

    @classmethod
    def unknown(cls, bound: Optional[int] = None, **info) -> "Verdict":
        return cls(UNKNOWN, bound=bound, info=info)

    @property
    def is_code(self) -> bool:
        return self.status == CODE

    @property
    def is_not_code(self) -> bool:
        return self.status == NOT_A_CODE

    @property
    def is_unknown(self) -> bool:
        return self.status == UNKNOWN

    def line(self) -> str:
        if self.status == UNKNOWN:
            return f"UNKNOWN({self.bound})" if self.bound is not None else "UNKNOWN"
        return self.status

    def to_json(self) -> dict:
        out: dict = {"verdict": self.status}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.bound is not None:
            out["bound"] = self.bound
        for k, v in self.info.items():
            out[k] = _jsonable(v)
        return out


WITNESS = "witness"
EXHAUSTED = "exhausted"
DECIDED_CODE = "decided_code"


@dataclass(frozen=True)
class SearchOutcome:
    kind: str
    witness: Optional[DoubleFactorization] = None
    bound: Optional[int] = None

    @classmethod
    def found(cls, witness: DoubleFactorization) -> "SearchOutcome":
        return cls(WITNESS, witness=witness)

    @classmethod
    def exhausted(cls, bound: int) -> "SearchOutcome":
        return cls(EXHAUSTED, bound=bound)

    @property
    def is_witness(self) -> bool:
        return self.kind == WITNESS

    @property
    def is_exhausted(self) -> bool:
        return self.kind == EXHAUSTED

    def to_verdict(self) -> Verdict:
        if self.kind == WITNESS:
            return Verdict.not_code(self.witness)
        if self.kind == DECIDED_CODE:
            return Verdict.code()
        return Verdict.unknown(self.bound)


def balance_witness(w: DoubleFactorization, n_generators: int) -> DoubleFactorization:
    """Turn any witness into one whose sides use every index equally often.

    If neither side is a prefix of the other, (uv, vu) works. Otherwise
    v = u a z and (u b v, v b u) works for any b != a.
    """
    u, v = w.left, w.right
    if len(u) > len(v):
        u, v = v, u
    if v[: len(u)] != u:
        return DoubleFactorization(u + v, v + u)
    if n_generators < 2:
        raise ValueError("balancing needs at least two generators")
    a = v[len(u)]
    b = 0 if a != 0 else 1
    return DoubleFactorization(u + (b,) + v, v + (b,) + u)


def parikh_of_indices(seq: Sequence[int], n: int) -> tuple:
    counts = [0] * n
    for i in seq:
        counts[i] += 1
    return tuple(counts)


def _jsonable(v):
    from fractions import Fraction

    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if hasattr(v, "to_json"):
        return v.to_json()
    return v
