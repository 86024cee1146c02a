"""Torsion of single matrices and substitutions.

A rational d x d matrix M is torsion iff M^d = M^(d + r(d)), where r(d) is
the lcm of all n with phi(n) <= d. A substitution is torsion iff its
incidence matrix is.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .algebra import Matrix, mat_mul, mat_pow, r_bound
from .words import Morphism

# The nine Jordan classes of rational 2x2 torsion matrices, plus diag(-j, -j^2)
# for characteristic polynomial z^2 - z + 1, the third degree-two cyclotomic
# polynomial (order-6 matrices such as [[1,-1],[1,0]]).
ZERO = "O"
NILPOTENT = "N2"
PROJ_PLUS = "diag(1,0)"
PROJ_MINUS = "diag(-1,0)"
IDENTITY = "I"
MINUS_IDENTITY = "-I"
REFLECTION = "diag(1,-1)"
CUBE_ROOTS = "diag(j,j^2)"
FOURTH_ROOTS = "diag(i,-i)"
SIXTH_ROOTS = "diag(-j,-j^2)"
NOT_TORSION = "NotTorsion"

TORSION_CLASSES = (
    ZERO,
    NILPOTENT,
    PROJ_PLUS,
    PROJ_MINUS,
    IDENTITY,
    MINUS_IDENTITY,
    REFLECTION,
    CUBE_ROOTS,
    FOURTH_ROOTS,
    SIXTH_ROOTS,
)


@dataclass(frozen=True)
class TorsionVerdict:
    torsion: bool
    certificate: Optional[tuple] = None

    def line(self) -> str:
        if self.torsion:
            p, q = self.certificate
            return f"TORSION ({p},{q})"
        return "NOT_TORSION"

    def to_json(self) -> dict:
        out = {"verdict": "TORSION" if self.torsion else "NOT_TORSION"}
        if self.certificate is not None:
            out["certificate"] = list(self.certificate)
        return out


def first_repeat(x, limit: Optional[int] = None):
    """Least q such that x^q equals an earlier power x^p; returns (p, q).

    Powers are x^1 = x, x^(n+1) = x^n * x. ``None`` if no repeat within ``limit``.
    """
    seen = {}
    cur = x
    n = 1
    while limit is None or n <= limit:
        p = seen.get(cur)
        if p is not None:
            return p, n
        seen[cur] = n
        cur = cur * x
        n += 1
    return None


def matrix_is_torsion(m: Matrix) -> TorsionVerdict:
    d = m.dim
    r = r_bound(d)
    md = mat_pow(m, d)
    if md != mat_mul(md, mat_pow(m, r)):
        return TorsionVerdict(False)
    cert = first_repeat(m, d + r)
    assert cert is not None
    return TorsionVerdict(True, cert)


def _rational_sqrt(x: Fraction) -> Optional[Fraction]:
    if x < 0:
        return None
    n, dd = x.numerator, x.denominator
    rn, rd = math.isqrt(n), math.isqrt(dd)
    if rn * rn == n and rd * rd == dd:
        return Fraction(rn, rd)
    return None


def classify_two_by_two(m: Matrix) -> str:
    """Jordan class of a torsion 2x2 rational matrix, from trace and determinant only."""
    if m.dim != 2:
        raise ValueError("2x2 matrix expected")
    t = Fraction(m.trace())
    delta = Fraction(m.det())
    if t == 0 and delta == 0:
        return ZERO if m == Matrix.zero(2) else NILPOTENT
    root = _rational_sqrt(t * t - 4 * delta)
    if root is not None:
        e1, e2 = (t + root) / 2, (t - root) / 2
        if e1 not in (-1, 0, 1) or e2 not in (-1, 0, 1):
            return NOT_TORSION
        if e1 == e2:
            # a repeated eigenvalue +-1 is torsion only for the scalar matrix itself
            if m == Matrix.identity(2).scale(e1):
                return IDENTITY if e1 == 1 else MINUS_IDENTITY
            return NOT_TORSION
        pair = {e1, e2}
        if pair == {1, 0}:
            return PROJ_PLUS
        if pair == {-1, 0}:
            return PROJ_MINUS
        return REFLECTION
    if delta == 1:
        if t == -1:
            return CUBE_ROOTS
        if t == 0:
            return FOURTH_ROOTS
        if t == 1:
            return SIXTH_ROOTS
    return NOT_TORSION


def incidence_matrix(sigma: Morphism) -> Matrix:
    """Entry (i, j) counts letter i in the image of letter j."""
    if not sigma.is_endomorphism():
        raise ValueError("incidence matrices are defined for endomorphisms")
    n = len(sigma.domain)
    rows = [[0] * n for _ in range(n)]
    for j, im in enumerate(sigma.images):
        for a in im:
            rows[a][j] += 1
    return Matrix(rows)


def morphism_is_torsion(sigma: Morphism) -> TorsionVerdict:
    if not incidence_verdict(sigma).torsion:
        return TorsionVerdict(False)
    # the set of powers is finite once the incidence matrix is torsion
    cert = first_repeat(sigma)
    return TorsionVerdict(True, cert)


def incidence_verdict(sigma: Morphism) -> TorsionVerdict:
    return matrix_is_torsion(incidence_matrix(sigma))


def verify_certificate(x, cert) -> bool:
    p, q = cert
    if not 0 < p < q:
        return False
    return _power(x, p) == _power(x, q)


def _power(x, n):
    if isinstance(x, Matrix):
        return mat_pow(x, n)
    result = x
    for _ in range(n - 1):
        result = result * x
    return result
