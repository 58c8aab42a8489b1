"""Exact univariate polynomials and rational functions over the rationals.

Coefficients are :class:`fractions.Fraction`.  A :class:`Poly` is a dense,
immutable coefficient tuple (lowest degree first) tagged with its variable
name; a :class:`RatFun` is a reduced quotient of two such polynomials with a
monic denominator, so equal rational functions have equal representations.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from numbers import Rational
from typing import Iterable, Sequence, Union

from .errors import NotDivisible

Scalar = Union[int, Fraction]

VARIABLES = ("x", "n")


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"cannot use {type(c).__name__} as an exact coefficient")


def _strip(coeffs: list) -> tuple:
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    return tuple(coeffs[:n])


class Poly:
    """Univariate polynomial with rational coefficients.

    >>> x = Poly.gen("x")
    >>> (4 * x**2 - 2).derivative()
    Poly([0, 8], 'x')
    """

    __slots__ = ("coeffs", "var", "_hash")

    def __init__(self, coeffs: Iterable = (), var: str = "x"):
        if var not in VARIABLES:
            raise ValueError(f"unknown variable tag {var!r}")
        self.coeffs = _strip([_frac(c) for c in coeffs])
        self.var = var
        self._hash = None

    @classmethod
    def _raw(cls, coeffs: tuple, var: str) -> "Poly":
        p = object.__new__(cls)
        p.coeffs = coeffs
        p.var = var
        p._hash = None
        return p

    @classmethod
    def gen(cls, name: str = "x") -> "Poly":
        """The variable itself as a polynomial."""
        return cls._raw((Fraction(0), Fraction(1)), name)

    @classmethod
    def const(cls, c: Scalar, var: str = "x") -> "Poly":
        return cls((c,), var)

    @classmethod
    def monomial(cls, degree: int, c: Scalar = 1, var: str = "x") -> "Poly":
        return cls([0] * degree + [c], var)

    # -- basic queries -------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def constant_term(self) -> Fraction:
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    # -- arithmetic ----------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.var != self.var:
                raise ValueError(f"mixing polynomials in {self.var} and {other.var}")
            return other
        if isinstance(other, (int, Fraction)):
            return Poly._raw(_strip([Fraction(other)]), self.var)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly._raw(_strip(out), self.var)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw(tuple(-c for c in self.coeffs), self.var)

    def __pos__(self) -> "Poly":
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Poly._raw((), self.var)
            return Poly._raw(tuple(c * other for c in self.coeffs), self.var)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly._raw((), self.var)
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        return Poly._raw(_strip(out), self.var)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly":
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Poly._raw((Fraction(1),), self.var)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("polynomial division by zero")
            inv = 1 / Fraction(other)
            return Poly._raw(tuple(c * inv for c in self.coeffs), self.var)
        if isinstance(other, Poly):
            return RatFun(self, other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return RatFun(Poly.const(other, self.var), self)
        return NotImplemented

    def __divmod__(self, other: "Poly"):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db = len(other.coeffs) - 1
        inv = 1 / other.coeffs[-1]
        if len(r) <= db:
            return Poly._raw((), self.var), self
        q = [Fraction(0)] * (len(r) - db)
        for k in range(len(r) - 1, db - 1, -1):
            c = r[k]
            if not c:
                continue
            c *= inv
            q[k - db] = c
            for i, bi in enumerate(other.coeffs):
                r[k - db + i] -= c * bi
        return Poly._raw(_strip(q), self.var), Poly._raw(_strip(r[:db]), self.var)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def div_exact(self, other: "Poly") -> "Poly":
        """Quotient ``self / other``; raise :class:`NotDivisible` on a remainder."""
        if isinstance(other, (int, Fraction)):
            return self / other
        q, r = divmod(self, other)
        if r:
            raise NotDivisible(self, other)
        return q

    def monic(self) -> "Poly":
        if not self.coeffs or self.coeffs[-1] == 1:
            return self
        return self / self.coeffs[-1]

    def gcd(self, other: "Poly") -> "Poly":
        """Monic greatest common divisor (zero if both are zero)."""
        a, b = self, self._coerce(other)
        while b:
            a, b = b, (a % b).monic()
        return a.monic()

    # -- calculus and substitution --------------------------------------

    def derivative(self, times: int = 1) -> "Poly":
        c = self.coeffs
        for _ in range(times):
            c = tuple(k * c[k] for k in range(1, len(c)))
        return Poly._raw(c, self.var)

    def integrate0(self) -> "Poly":
        """Antiderivative vanishing at 0."""
        if not self.coeffs:
            return self
        return Poly._raw(
            (Fraction(0),) + tuple(c / (k + 1) for k, c in enumerate(self.coeffs)),
            self.var,
        )

    def __call__(self, value):
        """Evaluate at a scalar, or compose with another polynomial."""
        if isinstance(value, Poly):
            result = Poly._raw((), value.var)
        else:
            value = _frac(value)
            result = Fraction(0)
        for c in reversed(self.coeffs):
            result = result * value + c
        return result

    def shift(self, k: Scalar) -> "Poly":
        """Return ``p(var + k)``."""
        if not k or len(self.coeffs) <= 1:
            return self
        return self(Poly._raw((_frac(k), Fraction(1)), self.var))

    def content(self) -> Fraction:
        """Positive rational ``c`` such that ``self / c`` has coprime integer
        coefficients (sign is not absorbed)."""
        if not self.coeffs:
            return Fraction(1)
        den = lcm(*(c.denominator for c in self.coeffs))
        num = 0
        for c in self.coeffs:
            num = gcd(num, c.numerator * (den // c.denominator))
        return Fraction(num, den)

    def with_var(self, var: str) -> "Poly":
        return Poly._raw(self.coeffs, var)

    # -- comparison ------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.var == other.var and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == _strip([Fraction(other)])
        if isinstance(other, RatFun):
            return other == self
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.var, self.coeffs))
        return self._hash

    def __repr__(self) -> str:
        cs = ", ".join(str(c) for c in self.coeffs)
        return f"Poly([{cs}], {self.var!r})"

    def __str__(self) -> str:
        from .render import poly_text

        return poly_text(self)

    def __reduce__(self):
        return (Poly, (self.coeffs, self.var))


def poly_derivative(p: Poly) -> Poly:
    return p.derivative()


def poly_integrate0(p: Poly) -> Poly:
    return p.integrate0()


def poly_div_exact(p: Poly, q: Poly) -> Poly:
    return p.div_exact(q)


def pochhammer(shift: int, count: int, var: str = "n") -> Poly:
    """Rising factorial ``(var + shift)_count`` as a polynomial."""
    if count < 0:
        raise ValueError("count must be nonnegative")
    result = Poly.const(1, var)
    for i in range(count):
        result = result * Poly((shift + i, 1), var)
    return result


class RatFun:
    """Reduced quotient ``num / den`` with ``den`` monic and coprime to ``num``."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None):
        if not isinstance(num, Poly):
            var = den.var if isinstance(den, Poly) else "n"
            num = Poly.const(num, var)
        if den is None:
            den = Poly.const(1, num.var)
        elif not isinstance(den, Poly):
            den = Poly.const(den, num.var)
        if num.var != den.var:
            raise ValueError(f"mixing polynomials in {num.var} and {den.var}")
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            den = Poly.const(1, num.var)
        elif den.degree > 0:
            g = num.gcd(den)
            if g.degree > 0:
                num, den = num // g, den // g
        lc = den.lc
        if lc != 1:
            num, den = num / lc, den / lc
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def _raw(cls, num: Poly, den: Poly) -> "RatFun":
        r = object.__new__(cls)
        r.num = num
        r.den = den
        r._hash = None
        return r

    @classmethod
    def from_poly(cls, p: Poly) -> "RatFun":
        return cls._raw(p, Poly._raw((Fraction(1),), p.var))

    @property
    def var(self) -> str:
        return self.num.var

    def is_poly(self) -> bool:
        return self.den.degree == 0

    def as_poly(self) -> Poly:
        if not self.is_poly():
            raise NotDivisible(self.num, self.den)
        return self.num

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self) -> bool:
        return bool(self.num)

    def _coerce(self, other):
        if isinstance(other, RatFun):
            if other.var != self.var:
                raise ValueError(f"mixing rational functions in {self.var} and {other.var}")
            return other
        if isinstance(other, Poly):
            if other.var != self.var:
                raise ValueError(f"mixing rational functions in {self.var} and {other.var}")
            return RatFun.from_poly(other)
        if isinstance(other, (int, Fraction)):
            return RatFun.from_poly(Poly.const(other, self.var))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            if self.den.degree == 0:
                return RatFun._raw(self.num + other.num, self.den)
            return RatFun(self.num + other.num, self.den)
        g = self.den.gcd(other.den)
        da, db = self.den // g, other.den // g
        return RatFun(self.num * db + other.num * da, self.den * db)

    __radd__ = __add__

    def __neg__(self) -> "RatFun":
        return RatFun._raw(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return RatFun.from_poly(Poly._raw((), self.var))
            return RatFun._raw(self.num * other, self.den)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.num or not other.num:
            return RatFun.from_poly(Poly._raw((), self.var))
        if self.den.degree == 0 and other.den.degree == 0:
            return RatFun._raw(self.num * other.num, self.den)
        # cross-cancel first so the final gcd works on smaller operands
        g1 = self.num.gcd(other.den)
        g2 = other.num.gcd(self.den)
        return RatFun._raw_reduced(
            (self.num // g1) * (other.num // g2),
            (self.den // g2) * (other.den // g1),
        )

    __rmul__ = __mul__

    @classmethod
    def _raw_reduced(cls, num: Poly, den: Poly) -> "RatFun":
        # operands are already coprime; only normalise the leading coefficient
        lc = den.lc
        if lc != 1:
            num, den = num / lc, den / lc
        return cls._raw(num, den)

    def inverse(self) -> "RatFun":
        if not self.num:
            raise ZeroDivisionError("inverse of the zero rational function")
        return RatFun._raw_reduced(self.den, self.num)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("rational function division by zero")
            return RatFun._raw(self.num / other, self.den)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, e: int) -> "RatFun":
        if e < 0:
            return self.inverse() ** (-e)
        return RatFun._raw(self.num**e, self.den**e)

    def derivative(self) -> "RatFun":
        if self.den.degree == 0:
            return RatFun._raw(self.num.derivative(), self.den)
        return RatFun(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def shift(self, k: int) -> "RatFun":
        """Return ``r(var + k)``; shifting preserves reducedness and monicity."""
        if not k:
            return self
        return RatFun._raw(self.num.shift(k), self.den.shift(k))

    def __call__(self, value) -> Fraction:
        d = self.den(value)
        if not d:
            raise ZeroDivisionError(f"pole at {value}")
        return self.num(value) / d

    def __eq__(self, other) -> bool:
        if isinstance(other, RatFun):
            return self.num == other.num and self.den == other.den
        if isinstance(other, Poly):
            return self.den.degree == 0 and self.num == other
        if isinstance(other, (int, Fraction)):
            return self.den.degree == 0 and self.num == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self.den.degree == 0:
                self._hash = hash(self.num)
            else:
                self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self) -> str:
        return f"RatFun({self.num!r}, {self.den!r})"

    def __str__(self) -> str:
        from .render import ratfun_text

        return ratfun_text(self)

    def __reduce__(self):
        return (RatFun._raw, (self.num, self.den))


def as_ratfun(c, var: str) -> RatFun:
    if isinstance(c, RatFun):
        if c.var != var:
            raise ValueError(f"expected a rational function in {var}, got one in {c.var}")
        return c
    if isinstance(c, Poly):
        if c.var != var:
            raise ValueError(f"expected a polynomial in {var}, got one in {c.var}")
        return RatFun.from_poly(c)
    return RatFun.from_poly(Poly.const(c, var))


def ratfun_arith(a: RatFun, b: RatFun, op: str) -> RatFun:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def integer_roots(p: Poly) -> list[int]:
    """All integer roots of ``p`` with multiplicity, in ascending order.

    Candidates are divisors of the constant term after scaling to integer
    coefficients; gives up (returns the roots found so far) on constant terms
    too large to enumerate.
    """
    roots: list[int] = []
    q = p
    while q.degree > 0 and not q.coeffs[0]:
        roots.append(0)
        q = Poly._raw(q.coeffs[1:], q.var)
    while q.degree > 0:
        a0 = abs(int(q.coeffs[0] / q.content()))
        found = None
        if a0 > 10**9:
            break
        for d in _divisors(a0):
            for r in (d, -d):
                if not q(r):
                    found = r
                    break
            if found is not None:
                break
        if found is None:
            break
        roots.append(found)
        q = q // Poly((-found, 1), q.var)
    return sorted(roots)


def _divisors(m: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= m:
        if m % d == 0:
            small.append(d)
            if d * d != m:
                large.append(m // d)
        d += 1
    return small + large[::-1]


def lcm_denominator(coeffs: Sequence[Fraction]) -> int:
    return lcm(*(c.denominator for c in coeffs)) if coeffs else 1
