"""Exact scalars, dense matrices and polynomials over the rationals.

Nothing in here ever touches a float. Matrix entries are ints when integral
and ``Fraction`` otherwise, so equal matrices hash equally.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

import sympy

from .errors import DimensionMismatch, NotIrreducible, NotMonic


def to_scalar(x):
    """Normalise an int, Fraction or ``"p/q"`` string to an exact scalar."""
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, str):
        f = Fraction(x.strip())
        return f.numerator if f.denominator == 1 else f
    if isinstance(x, float):
        raise TypeError("floating point entries are not accepted")
    f = Fraction(x)
    return f.numerator if f.denominator == 1 else f


def _norm(x):
    if type(x) is Fraction and x.denominator == 1:
        return x.numerator
    return x


class Matrix:
    """Immutable square matrix with exact entries.

    ``A * B`` and ``A @ B`` are both the matrix product, so matrices can be
    fed to the generic search engine like any other semigroup element.
    """

    __slots__ = ("rows", "_hash")

    def __init__(self, rows: Iterable[Iterable]):
        rows = tuple(tuple(to_scalar(x) for x in r) for r in rows)
        d = len(rows)
        if d == 0 or any(len(r) != d for r in rows):
            raise DimensionMismatch("matrix must be square and nonempty")
        self.rows = rows
        self._hash = None

    @classmethod
    def _raw(cls, rows):
        m = cls.__new__(cls)
        m.rows = rows
        m._hash = None
        return m

    @classmethod
    def identity(cls, d: int) -> "Matrix":
        return cls._raw(tuple(tuple(1 if i == j else 0 for j in range(d)) for i in range(d)))

    @classmethod
    def zero(cls, d: int) -> "Matrix":
        return cls._raw(tuple((0,) * d for _ in range(d)))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __repr__(self):
        return f"Matrix({self.to_json()})"

    def __str__(self):
        return "; ".join(" ".join(str(x) for x in r) for r in self.rows)

    def to_json(self):
        return [[str(x) for x in r] for r in self.rows]

    def __mul__(self, other):
        if isinstance(other, Matrix):
            return mat_mul(self, other)
        return self.scale(other)

    __matmul__ = __mul__

    def __rmul__(self, c):
        return self.scale(c)

    def __add__(self, other):
        _same_dim(self, other)
        return Matrix._raw(
            tuple(tuple(_norm(a + b) for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows))
        )

    def __sub__(self, other):
        _same_dim(self, other)
        return Matrix._raw(
            tuple(tuple(_norm(a - b) for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows))
        )

    def __pow__(self, n):
        return mat_pow(self, n)

    def scale(self, c) -> "Matrix":
        c = to_scalar(c)
        return Matrix._raw(tuple(tuple(_norm(c * x) for x in r) for r in self.rows))

    def trace(self):
        return _norm(sum(self.rows[i][i] for i in range(self.dim)))

    def det(self):
        n = self.dim
        if n == 1:
            return self.rows[0][0]
        if n == 2:
            (a, b), (c, d) = self.rows
            return _norm(a * d - b * c)
        a = [[Fraction(x) for x in r] for r in self.rows]
        det = Fraction(1)
        for col in range(n):
            piv = next((r for r in range(col, n) if a[r][col] != 0), None)
            if piv is None:
                return 0
            if piv != col:
                a[col], a[piv] = a[piv], a[col]
                det = -det
            det *= a[col][col]
            for r in range(col + 1, n):
                f = a[r][col] / a[col][col]
                if f:
                    for c in range(col, n):
                        a[r][c] -= f * a[col][c]
        return _norm(det)

    def rank(self) -> int:
        return len(_row_reduce([list(r) for r in self.rows]))

    def inverse(self) -> "Matrix":
        n = self.dim
        aug = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self.rows)]
        for col in range(n):
            piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
            if piv is None:
                raise ZeroDivisionError("singular matrix")
            aug[col], aug[piv] = aug[piv], aug[col]
            p = aug[col][col]
            aug[col] = [x / p for x in aug[col]]
            for r in range(n):
                if r != col and aug[r][col] != 0:
                    f = aug[r][col]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
        return Matrix(row[n:] for row in aug)

    def is_integral(self) -> bool:
        return all(type(x) is int for r in self.rows for x in r)

    def entries(self):
        return [x for r in self.rows for x in r]


def _same_dim(a: Matrix, b: Matrix):
    if a.dim != b.dim:
        raise DimensionMismatch(f"{a.dim}x{a.dim} vs {b.dim}x{b.dim}")


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    _same_dim(a, b)
    n = a.dim
    if n == 2:
        (a00, a01), (a10, a11) = a.rows
        (b00, b01), (b10, b11) = b.rows
        return Matrix._raw(
            (
                (_norm(a00 * b00 + a01 * b10), _norm(a00 * b01 + a01 * b11)),
                (_norm(a10 * b00 + a11 * b10), _norm(a10 * b01 + a11 * b11)),
            )
        )
    cols = list(zip(*b.rows))
    return Matrix._raw(
        tuple(tuple(_norm(sum(x * y for x, y in zip(r, c))) for c in cols) for r in a.rows)
    )


def mat_pow(a: Matrix, n: int) -> Matrix:
    if n < 0:
        raise ValueError("negative exponent")
    result = Matrix.identity(a.dim)
    base = a
    while n:
        if n & 1:
            result = mat_mul(result, base)
        n >>= 1
        if n:
            base = mat_mul(base, base)
    return result


def _row_reduce(rows):
    """Echelon basis (as list of rows) of the span of ``rows``."""
    basis = []  # (pivot column, row)
    for r in rows:
        r = [Fraction(x) for x in r]
        for piv, b in basis:
            if r[piv]:
                f = r[piv]
                r = [x - f * y for x, y in zip(r, b)]
        lead = next((i for i, x in enumerate(r) if x), None)
        if lead is not None:
            p = r[lead]
            basis.append((lead, [x / p for x in r]))
    return basis


class Polynomial:
    """Univariate polynomial over Q, coefficients in ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [Fraction(to_scalar(x)) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def z(cls) -> "Polynomial":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def monic(self) -> "Polynomial":
        lc = self.lead()
        return Polynomial([x / lc for x in self.coeffs])

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial([other]) if isinstance(other, (int, Fraction)) else other
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return Polynomial([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return Polynomial([-x for x in self.coeffs])

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        other = _as_poly(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs) + 1
        if dq <= 0:
            return Polynomial(), Polynomial(rem)
        quot = [Fraction(0)] * dq
        lc = other.coeffs[-1]
        for k in range(dq - 1, -1, -1):
            f = rem[k + len(other.coeffs) - 1] / lc
            quot[k] = f
            if f:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= f * b
        return Polynomial(quot), Polynomial(rem[: len(other.coeffs) - 1])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other: "Polynomial") -> bool:
        return (other % self).is_zero()

    def __call__(self, x):
        """Horner evaluation at a scalar or a square matrix."""
        if isinstance(x, Matrix):
            d = x.dim
            acc = Matrix.zero(d)
            for c in reversed(self.coeffs):
                acc = mat_mul(acc, x) + Matrix.identity(d).scale(c)
            return acc
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return _norm(acc)

    def __repr__(self):
        return f"Polynomial({[str(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            sign = "-" if c < 0 else "+"
            if k == 0:
                body = str(mag)
            else:
                coef = "" if mag == 1 else f"{mag}*"
                body = coef + ("z" if k == 1 else f"z^{k}")
            terms.append((sign, body))
        first_sign, first = terms[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            s += f" {sign} {body}"
        return s


def _as_poly(x) -> Polynomial:
    return x if isinstance(x, Polynomial) else Polynomial([x])


def minimal_polynomial(m: Matrix) -> Polynomial:
    """First linear dependency among I, M, M^2, ... found by exact elimination."""
    d = m.dim
    basis = []  # (pivot, normalised row, combination of powers giving it)
    power = Matrix.identity(d)
    for k in range(d * d + 1):
        vec = [Fraction(x) for x in power.entries()]
        combo = [Fraction(0)] * (k + 1)
        combo[k] = Fraction(1)
        for piv, row, bcombo in basis:
            f = vec[piv]
            if f:
                vec = [x - f * y for x, y in zip(vec, row)]
                combo = [x - f * (bcombo[i] if i < len(bcombo) else 0) for i, x in enumerate(combo)]
        lead = next((i for i, x in enumerate(vec) if x), None)
        if lead is None:
            return Polynomial(combo).monic()
        p = vec[lead]
        basis.append((lead, [x / p for x in vec], [x / p for x in combo]))
        power = mat_mul(power, m)
    raise AssertionError("Cayley-Hamilton guarantees a dependency")


def characteristic_polynomial(m: Matrix) -> Polynomial:
    """det(zI - M) by the Faddeev-LeVerrier recursion."""
    n = m.dim
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    mk = Matrix.zero(n)
    ident = Matrix.identity(n)
    c = Fraction(1)
    for k in range(1, n + 1):
        mk = mat_mul(m, mk + ident.scale(c))
        c = -Fraction(mk.trace()) / k
        coeffs[n - k] = c
    return Polynomial(coeffs)


def companion_matrix(p: Polynomial) -> Matrix:
    """Companion matrix with ones on the subdiagonal and -coefficients in the last column."""
    if not p.is_monic():
        raise NotMonic(str(p))
    d = p.degree
    if d < 1:
        raise NotMonic("degree must be at least 1")
    rows = [[0] * d for _ in range(d)]
    for i in range(1, d):
        rows[i][i - 1] = 1
    for i in range(d):
        rows[i][d - 1] = -p.coeffs[i]
    return Matrix(rows)


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError("phi is defined for n >= 1")
    return int(sympy.totient(n))


def r_bound(d: int) -> int:
    """lcm of every n with phi(n) <= d. phi(n) >= sqrt(n/2) bounds the scan by 2d^2."""
    if d < 1:
        raise ValueError("d must be positive")
    return reduce(math.lcm, (n for n in range(1, 2 * d * d + 1) if euler_phi(n) <= d), 1)


def is_irreducible(p: Polynomial) -> bool:
    if p.degree < 1:
        return False
    z = sympy.Symbol("z")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * z**i for i, c in enumerate(p.coeffs))
    return bool(sympy.Poly(expr, z, domain="QQ").is_irreducible)


class AlgebraicNumber:
    """An element of Q[z]/(mu) for an irreducible monic mu.

    Without an explicit residue the number is the class of z, i.e. a root of mu.
    """

    def __init__(self, min_poly: Polynomial, residue: Polynomial | None = None, check: bool = True):
        if min_poly.degree < 1:
            raise NotIrreducible("minimal polynomial must have degree >= 1")
        if not min_poly.is_monic():
            raise NotMonic(str(min_poly))
        if check and not is_irreducible(min_poly):
            raise NotIrreducible(str(min_poly))
        self.min_poly = min_poly
        self.residue = (residue if residue is not None else Polynomial.z()) % min_poly

    @property
    def degree(self) -> int:
        return self.min_poly.degree

    def _wrap(self, r: Polynomial) -> "AlgebraicNumber":
        return AlgebraicNumber(self.min_poly, r, check=False)

    def __mul__(self, other: "AlgebraicNumber") -> "AlgebraicNumber":
        return self._wrap((self.residue * other.residue) % self.min_poly)

    def __pow__(self, n: int) -> "AlgebraicNumber":
        result = Polynomial([1]) % self.min_poly
        base = self.residue
        while n:
            if n & 1:
                result = (result * base) % self.min_poly
            n >>= 1
            if n:
                base = (base * base) % self.min_poly
        return self._wrap(result)

    def is_one(self) -> bool:
        return self.residue == Polynomial([1])

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraicNumber)
            and self.min_poly == other.min_poly
            and self.residue == other.residue
        )

    def __hash__(self):
        return hash((self.min_poly, self.residue))


def algebraic_is_root_of_unity(u: AlgebraicNumber) -> bool:
    return (u ** r_bound(u.degree)).is_one()


def lcm_of_denominators(values: Sequence) -> int:
    return reduce(math.lcm, (Fraction(v).denominator for v in values), 1)
