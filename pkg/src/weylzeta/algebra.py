"""Exact univariate arithmetic in the formal variable w.

Every generating function downstream is naturally a function of u = w**2
(one unit of geodesic length is one power of u), but half-integer
u-exponents occur along glide axes, so the whole stack computes in w and
only reinterprets even-exponent objects as functions of u at the
reporting layer.  Coefficients are exact rationals throughout; nothing
in this package touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, Union

Rat = Fraction
RatLike = Union[int, Fraction]


class NotPolynomialWithinBound(ValueError):
    """The reciprocal series has a nonzero coefficient above the bound."""

    def __init__(self, exponent: int):
        super().__init__(
            f"not polynomial within bound: nonzero coefficient at w^{exponent}"
        )
        self.exponent = exponent


def _frac(x: RatLike) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------


class Poly:
    """Dense univariate polynomial in w over the rationals.

    Trailing zero coefficients are stripped; the zero polynomial stores
    an empty tuple and reports degree -1.  Instances are immutable.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[RatLike] = ()):
        c = [_frac(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple = tuple(c)

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "Poly":
        return cls(())

    @classmethod
    def one(cls) -> "Poly":
        return cls((1,))

    @classmethod
    def monomial(cls, exponent: int, coefficient: RatLike = 1) -> "Poly":
        if exponent < 0:
            raise ValueError("negative exponent")
        return cls([0] * exponent + [coefficient])

    # -- basic queries ------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def constant_term(self) -> Fraction:
        return self.coeffs[0] if self.coeffs else Fraction(0)

    @property
    def leading_coefficient(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coefficient(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def is_even_in_w(self) -> bool:
        """True when only even powers of w occur (the object is a function of u)."""
        return all(c == 0 for c in self.coeffs[1::2])

    def is_integer(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def to_int_coeffs(self) -> list:
        if not self.is_integer():
            raise ValueError("polynomial has non-integer coefficients")
        return [c.numerator for c in self.coeffs]

    # -- arithmetic ---------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def scale(self, c: RatLike) -> "Poly":
        c = _frac(c)
        if c == 0:
            return Poly()
        return Poly([x * c for x in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        # Integer fast path: the heavy products in identity checks are
        # integer polynomials, where raw int convolution beats Fraction.
        if all(x.denominator == 1 for x in a) and all(x.denominator == 1 for x in b):
            ai = [x.numerator for x in a]
            bi = [x.numerator for x in b]
            if ai.count(0) < bi.count(0):
                ai, bi = bi, ai
            out = [0] * (len(ai) + len(bi) - 1)
            for i, av in enumerate(ai):
                if av:
                    for j, bv in enumerate(bi):
                        if bv:
                            out[i + j] += av * bv
            return Poly(out)
        out_f = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, av in enumerate(a):
            if av:
                for j, bv in enumerate(b):
                    if bv:
                        out_f[i + j] += av * bv
        return Poly(out_f)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    # -- variable substitutions ----------------------------------------

    def substitute_power(self, k: int) -> "Poly":
        """Replace w by w**k."""
        if k <= 0:
            raise ValueError("exponent multiplier must be positive")
        if not self.coeffs:
            return Poly()
        out = [Fraction(0)] * ((len(self.coeffs) - 1) * k + 1)
        for i, c in enumerate(self.coeffs):
            out[i * k] = c
        return Poly(out)

    def negate_w(self) -> "Poly":
        """Replace w by -w."""
        return Poly([-c if i % 2 else c for i, c in enumerate(self.coeffs)])

    def negate_u(self) -> "Poly":
        """Replace u by -u on an even-in-w polynomial (w**(2j) -> (-1)**j w**(2j))."""
        if not self.is_even_in_w():
            raise ValueError("u-negation requires an even-in-w polynomial")
        return Poly([-c if i % 4 == 2 else c for i, c in enumerate(self.coeffs)])

    def evaluate(self, x: RatLike) -> Fraction:
        x = _frac(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self):
        return f"Poly({[str(c) for c in self.coeffs]})"


def poly_divmod(num: Poly, den: Poly) -> tuple:
    """Long division over the rationals: num = q*den + r with deg r < deg den."""
    if den.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(num.coeffs)
    db = den.degree
    lead_inv = 1 / den.leading_coefficient
    q = [Fraction(0)] * max(len(r) - db, 0)
    while len(r) - 1 >= db:
        c = r[-1] * lead_inv
        k = len(r) - 1 - db
        if c != 0:
            q[k] = c
            for i, dcoef in enumerate(den.coeffs):
                r[i + k] -= c * dcoef
        r.pop()
    return Poly(q), Poly(r)


def poly_exact_div(num: Poly, den: Poly) -> Poly:
    q, r = poly_divmod(num, den)
    if not r.is_zero:
        raise ValueError("polynomial division is not exact")
    return q


def _int_content(c: Sequence[int]) -> int:
    g = 0
    for x in c:
        g = gcd(g, x)
        if g == 1:
            return 1
    return g


def _int_primitive(c: list) -> list:
    g = _int_content(c)
    if g > 1:
        return [x // g for x in c]
    return list(c)


def _int_prem(a: list, b: list) -> list:
    """Pseudo-remainder of a by b over the integers (gcd use only)."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    while r and len(r) - 1 >= db:
        lead = r[-1]
        if lead == 0:
            r.pop()
            continue
        k = len(r) - 1 - db
        if lb != 1:
            r = [lb * x for x in r]
        # after scaling, subtract lead * w^k * b: kills the top term
        for i in range(db + 1):
            r[i + k] -= lead * b[i]
        while r and r[-1] == 0:
            r.pop()
    return r


def _clear_denominators(p: Poly) -> list:
    den_lcm = 1
    for c in p.coeffs:
        den_lcm = den_lcm * c.denominator // gcd(den_lcm, c.denominator)
    return [int(c * den_lcm) for c in p.coeffs]


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Primitive integer gcd (positive leading coefficient) of two polynomials.

    Computed by a primitive pseudo-remainder sequence after clearing
    denominators; exact, no floating point, no coefficient explosion for
    the unit-leading-coefficient polynomials that dominate this package.
    """
    if a.is_zero or b.is_zero or a.degree == 0 or b.degree == 0:
        return Poly.one()
    x = _int_primitive(_clear_denominators(a))
    y = _int_primitive(_clear_denominators(b))
    if len(x) < len(y):
        x, y = y, x
    while y:
        r = _int_prem(x, y)
        x, y = y, _int_primitive(r)
    if x[-1] < 0:
        x = [-v for v in x]
    return Poly(x)


# ---------------------------------------------------------------------------
# Truncated power series
# ---------------------------------------------------------------------------


class Series:
    """Power series in w truncated at a fixed order (inclusive).

    Binary arithmetic truncates to the smaller of the two orders.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Iterable[RatLike], order: int):
        if order < 0:
            raise ValueError("series order must be nonnegative")
        c = [_frac(x) for x in coeffs]
        if len(c) < order + 1:
            c.extend([Fraction(0)] * (order + 1 - len(c)))
        self.order = order
        self.coeffs: tuple = tuple(c[: order + 1])

    @classmethod
    def zero(cls, order: int) -> "Series":
        return cls((), order)

    @classmethod
    def one(cls, order: int) -> "Series":
        return cls((1,), order)

    @classmethod
    def from_poly(cls, p: Poly, order: int) -> "Series":
        return cls(p.coeffs, order)

    def coefficient(self, k: int) -> Fraction:
        if 0 <= k <= self.order:
            return self.coeffs[k]
        raise IndexError(f"coefficient w^{k} beyond series order {self.order}")

    def truncate(self, order: int) -> "Series":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return Series(self.coeffs[: order + 1], order)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Series)
            and self.order == other.order
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __neg__(self):
        return Series([-c for c in self.coeffs], self.order)

    def _common(self, other: "Series") -> int:
        return min(self.order, other.order)

    def __add__(self, other: "Series") -> "Series":
        k = self._common(other)
        return Series(
            [self.coeffs[i] + other.coeffs[i] for i in range(k + 1)], k
        )

    def __sub__(self, other: "Series") -> "Series":
        k = self._common(other)
        return Series(
            [self.coeffs[i] - other.coeffs[i] for i in range(k + 1)], k
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Series([c * other for c in self.coeffs], self.order)
        k = self._common(other)
        out = [Fraction(0)] * (k + 1)
        for i, a in enumerate(self.coeffs[: k + 1]):
            if a:
                for j in range(k + 1 - i):
                    b = other.coeffs[j]
                    if b:
                        out[i + j] += a * b
        return Series(out, k)

    __rmul__ = __mul__

    def reciprocal(self) -> "Series":
        if self.coeffs[0] != 1:
            raise ValueError("reciprocal requires constant term 1")
        k = self.order
        nz = [(i, c) for i, c in enumerate(self.coeffs) if i >= 1 and c]
        out = [Fraction(0)] * (k + 1)
        out[0] = Fraction(1)
        for n in range(1, k + 1):
            s = Fraction(0)
            for i, c in nz:
                if i > n:
                    break
                if out[n - i]:
                    s += c * out[n - i]
            out[n] = -s
        return Series(out, k)

    def is_even_in_w(self) -> bool:
        return all(c == 0 for c in self.coeffs[1::2])

    def __repr__(self):
        return f"Series(order={self.order}, {[str(c) for c in self.coeffs]})"


def series_exp(s: Series) -> Series:
    """exp of a series with zero constant term, truncated to the same order."""
    if s.coeffs[0] != 0:
        raise ValueError("series_exp requires zero constant term")
    k = s.order
    # g' = f' g  =>  n g_n = sum_{i<=n} i f_i g_{n-i}
    weighted = [(i, i * c) for i, c in enumerate(s.coeffs) if i >= 1 and c]
    g = [Fraction(0)] * (k + 1)
    g[0] = Fraction(1)
    for n in range(1, k + 1):
        acc = Fraction(0)
        for i, ic in weighted:
            if i > n:
                break
            if g[n - i]:
                acc += ic * g[n - i]
        g[n] = acc / n
    return Series(g, k)


def series_log(s: Series) -> Series:
    """log of a series with constant term 1, truncated to the same order."""
    if s.coeffs[0] != 1:
        raise ValueError("series_log requires constant term 1")
    k = s.order
    h = [Fraction(0)] * (k + 1)
    for n in range(1, k + 1):
        acc = Fraction(0)
        # sum_{i=1}^{n-1} i h_i s_{n-i}, iterating over nonzero s terms
        for j in range(1, n):
            c = s.coeffs[j]
            if c:
                i = n - j
                if h[i]:
                    acc += i * h[i] * c
        h[n] = s.coeffs[n] - acc / n
    return Series(h, k)


# ---------------------------------------------------------------------------
# Integer matrices and det(I - wT)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IntMatrix:
    """Square matrix with arbitrary-precision integer entries, row-major."""

    dim: int
    entries: tuple

    def __post_init__(self):
        if self.dim < 0:
            raise ValueError("dimension must be nonnegative")
        if len(self.entries) != self.dim or any(
            len(row) != self.dim for row in self.entries
        ):
            raise ValueError("entries must form a square dim x dim matrix")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix":
        return cls(len(rows), tuple(tuple(int(x) for x in row) for row in rows))

    @classmethod
    def from_permutation(cls, successor: Sequence[int]) -> "IntMatrix":
        """0/1 matrix M with M[j][i] = 1 iff successor[i] = j."""
        n = len(successor)
        rows = [[0] * n for _ in range(n)]
        for i, j in enumerate(successor):
            rows[j][i] = 1
        return cls.from_rows(rows)


def det_identity_minus_wT(T: IntMatrix) -> Poly:
    """det(I - w*T) as an integer-coefficient polynomial.

    Division-free Berkowitz recursion on leading principal blocks; the
    coefficient vector of the characteristic polynomial (from the leading
    term) is exactly the coefficient list of det(I - wT).  Sparse rows are
    skipped, so permutation matrices cost O(n^2) rather than O(n^4).
    """
    n = T.dim
    if n == 0:
        return Poly.one()
    A = T.entries
    rows_nz = [tuple((j, v) for j, v in enumerate(row) if v) for row in A]
    vec = [1, -A[0][0]]
    for r in range(2, n + 1):
        m = r - 1
        d = A[m][m]
        row_nz = tuple((j, v) for j, v in rows_nz[m] if j < m)
        q = [1, -d]
        v = [A[i][m] for i in range(m)]
        q.append(-sum(val * v[j] for j, val in row_nz))
        for _ in range(m - 1):
            nxt = [0] * m
            for i in range(m):
                s = 0
                for j, val in rows_nz[i]:
                    if j < m:
                        s += val * v[j]
                nxt[i] = s
            v = nxt
            q.append(-sum(val * v[j] for j, val in row_nz))
        new = [0] * (r + 1)
        for i, qi in enumerate(q):
            if qi:
                top = r + 1 - i
                for j, vj in enumerate(vec[:top]):
                    if vj:
                        new[i + j] += qi * vj
        vec = new
    return Poly(vec)


# ---------------------------------------------------------------------------
# Reconstruction of a bounded-degree polynomial from its reciprocal series
# ---------------------------------------------------------------------------


def reconstruct_poly_from_series(s: Series, degree_bound: int) -> Poly:
    """Return P of degree <= degree_bound with P*s = 1 to the series order.

    Every coefficient of 1/s strictly above degree_bound must vanish up
    to s.order, otherwise NotPolynomialWithinBound is raised carrying the
    first offending exponent.  Requires s.order >= degree_bound + 8 so
    the vanishing tail is actually witnessed.
    """
    if degree_bound < 0:
        raise ValueError("degree bound must be nonnegative")
    if s.coeffs[0] != 1:
        raise ValueError("reconstruction requires constant term 1")
    if s.order < degree_bound + 8:
        raise ValueError(
            f"series order {s.order} too small: need at least {degree_bound + 8}"
        )
    r = s.reciprocal()
    for k in range(degree_bound + 1, s.order + 1):
        if r.coeffs[k] != 0:
            raise NotPolynomialWithinBound(k)
    return Poly(r.coeffs[: degree_bound + 1])


# ---------------------------------------------------------------------------
# Rational functions of w
# ---------------------------------------------------------------------------


class RationalFunctionW:
    """Quotient of polynomials in w, canonicalized.

    Canonical form: numerator and denominator share no factor and the
    denominator has constant term exactly 1, so the value at w = 0 is
    the numerator's constant term and equality of canonical forms is
    plain coefficient equality.  Equality testing nevertheless goes
    through cross-multiplication, which is independent of normalization.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1, *, _coprime: bool = False):
        num = num if isinstance(num, Poly) else Poly([num])
        den = den if isinstance(den, Poly) else Poly([den])
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        if den.constant_term == 0:
            raise ValueError("denominator must not vanish at w = 0")
        if num.is_zero:
            num, den = Poly.zero(), Poly.one()
        elif not _coprime:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num = poly_exact_div(num, g)
                den = poly_exact_div(den, g)
        c = den.constant_term
        if c != 1:
            inv = 1 / c
            num = num.scale(inv)
            den = den.scale(inv)
        self.num = num
        self.den = den

    @classmethod
    def one(cls) -> "RationalFunctionW":
        return cls(Poly.one(), Poly.one(), _coprime=True)

    @classmethod
    def reciprocal_of(cls, p: Poly) -> "RationalFunctionW":
        return cls(Poly.one(), p, _coprime=True)

    @property
    def is_one(self) -> bool:
        return self.num == Poly.one() and self.den == Poly.one()

    def value_at_zero(self) -> Fraction:
        return self.num.constant_term

    def is_even_in_w(self) -> bool:
        return self.num.is_even_in_w() and self.den.is_even_in_w()

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalFunctionW):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __mul__(self, other: "RationalFunctionW") -> "RationalFunctionW":
        # Cross-cancel first: with both factors canonical, the gcd of the
        # product splits across the two small cross-gcds.
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        n1 = poly_exact_div(self.num, g1) if g1.degree > 0 else self.num
        d2 = poly_exact_div(other.den, g1) if g1.degree > 0 else other.den
        n2 = poly_exact_div(other.num, g2) if g2.degree > 0 else other.num
        d1 = poly_exact_div(self.den, g2) if g2.degree > 0 else self.den
        return RationalFunctionW(n1 * n2, d1 * d2, _coprime=True)

    def inverse(self) -> "RationalFunctionW":
        if self.num.constant_term == 0:
            raise ValueError("inverse undefined: numerator vanishes at w = 0")
        return RationalFunctionW(self.den, self.num, _coprime=True)

    def __truediv__(self, other: "RationalFunctionW") -> "RationalFunctionW":
        return self * other.inverse()

    def __pow__(self, e: int) -> "RationalFunctionW":
        if e < 0:
            return self.inverse() ** (-e)
        result = RationalFunctionW.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def substitute(self, exponent_multiplier: int) -> "RationalFunctionW":
        """Replace w by w**k (u by u**k on even objects)."""
        return RationalFunctionW(
            self.num.substitute_power(exponent_multiplier),
            self.den.substitute_power(exponent_multiplier),
            _coprime=True,
        )

    def negate_w(self) -> "RationalFunctionW":
        return RationalFunctionW(
            self.num.negate_w(), self.den.negate_w(), _coprime=True
        )

    def negate_u(self) -> "RationalFunctionW":
        """Replace u by -u; defined only for even-in-w rational functions."""
        return RationalFunctionW(
            self.num.negate_u(), self.den.negate_u(), _coprime=True
        )

    def series(self, order: int) -> Series:
        return Series.from_poly(self.num, order) * Series.from_poly(
            self.den, order
        ).reciprocal()

    def __repr__(self):
        return f"RationalFunctionW(num={self.num!r}, den={self.den!r})"


def ratfunc_equal(f: RationalFunctionW, g: RationalFunctionW) -> bool:
    """Exact equality via cross-multiplied polynomial identity."""
    return f == g


def ratfunc_substitute(
    f: RationalFunctionW, exponent_multiplier: int
) -> RationalFunctionW:
    """Replace w by w**exponent_multiplier."""
    return f.substitute(exponent_multiplier)


def ratfunc_negate_variable(f: RationalFunctionW) -> RationalFunctionW:
    """Replace w by -w."""
    return f.negate_w()
