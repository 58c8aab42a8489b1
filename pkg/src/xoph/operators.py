"""Differential operators in x and shift operators in n.

Both rings keep their elements in a normal form with coefficients on the
left: ``DiffOp`` is ``sum_j c_j(x) d^j`` and ``ShiftOp`` is
``sum_k a_k(n) Theta^k``.  Coefficients are stored as :class:`RatFun`, so
structural equality is operator equality.  Composition is spelled ``*``.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Callable, Iterable, Mapping

from .errors import DenominatorNotCleared, PoleAtIndex
from .exact import Poly, RatFun, as_ratfun

POLYNOMIAL = "polynomial"
RATIONAL = "rational"


class DiffOp:
    """Differential operator ``sum_j coeffs[j] * d^j`` in the variable x.

    ``ring`` is ``"polynomial"`` or ``"rational"``.  A polynomial-ring
    operator is checked on construction to have polynomial coefficients; a
    rational-ring operator may happen to have them too, and
    :meth:`to_polynomial` is the checked cast between the two.
    """

    __slots__ = ("coeffs", "ring")

    def __init__(self, coeffs: Iterable = (), ring: str | None = None):
        cs = [as_ratfun(c, "x") for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        if ring is None:
            ring = POLYNOMIAL if all(c.is_poly() for c in cs) else RATIONAL
        if ring not in (POLYNOMIAL, RATIONAL):
            raise ValueError(f"unknown ring {ring!r}")
        if ring == POLYNOMIAL and not all(c.is_poly() for c in cs):
            raise DenominatorNotCleared("polynomial-ring operator with rational coefficient")
        self.coeffs = tuple(cs)
        self.ring = ring

    @classmethod
    def identity(cls) -> "DiffOp":
        return cls([1])

    @classmethod
    def d(cls, order: int = 1) -> "DiffOp":
        return cls([0] * order + [1])

    @classmethod
    def mul(cls, c) -> "DiffOp":
        """Multiplication by ``c`` (a scalar, Poly or RatFun in x)."""
        return cls([c])

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, j: int) -> RatFun:
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        return RatFun(Poly((), "x"))

    def is_polynomial(self) -> bool:
        return all(c.is_poly() for c in self.coeffs)

    def poly_coeffs(self) -> list[Poly]:
        return [c.as_poly() for c in self.to_polynomial().coeffs]

    def to_polynomial(self) -> "DiffOp":
        if self.ring == POLYNOMIAL:
            return self
        for j, c in enumerate(self.coeffs):
            if not c.is_poly():
                raise DenominatorNotCleared(
                    f"coefficient of d^{j} keeps denominator {c.den}"
                )
        return DiffOp(self.coeffs, POLYNOMIAL)

    def as_rational(self) -> "DiffOp":
        if self.ring == RATIONAL:
            return self
        return DiffOp(self.coeffs, RATIONAL)

    def _join(self, other: "DiffOp") -> str:
        return POLYNOMIAL if self.ring == other.ring == POLYNOMIAL else RATIONAL

    def _coerce(self, other):
        if isinstance(other, DiffOp):
            return other
        if isinstance(other, (int, Fraction, Poly, RatFun)):
            return DiffOp.mul(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        m = max(len(self.coeffs), len(other.coeffs))
        return DiffOp([self.coeff(j) + other.coeff(j) for j in range(m)], self._join(other))

    __radd__ = __add__

    def __neg__(self) -> "DiffOp":
        return DiffOp([-c for c in self.coeffs], self.ring)

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
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return diffop_compose(self, other)

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return diffop_compose(other, self)

    def __pow__(self, e: int) -> "DiffOp":
        result = DiffOp.identity() if self.ring == POLYNOMIAL else DiffOp([1], RATIONAL)
        for _ in range(e):
            result = result * self
        return result

    def __call__(self, p):
        return diffop_apply(self, p)

    def __eq__(self, other) -> bool:
        if isinstance(other, DiffOp):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"DiffOp({list(self.coeffs)!r}, {self.ring!r})"

    def __str__(self) -> str:
        from .render import diffop_text

        return diffop_text(self)


def diffop_compose(q: DiffOp, r: DiffOp) -> DiffOp:
    """Normal form of ``q o r`` via ``d^i c = sum_m C(i,m) c^(m) d^(i-m)``."""
    out: dict[int, RatFun] = {}
    # derivatives of each coefficient of r, computed once per needed order
    derivs = [[c] for c in r.coeffs]
    for i, a in enumerate(q.coeffs):
        if not a:
            continue
        for j, row in enumerate(derivs):
            while len(row) <= i:
                row.append(row[-1].derivative())
            for m in range(i + 1):
                b = row[m]
                if not b:
                    continue
                term = a * b
                if m:
                    term = term * comb(i, m)
                k = i - m + j
                out[k] = out[k] + term if k in out else term
    order = max(out) + 1 if out else 0
    zero = RatFun(Poly((), "x"))
    return DiffOp([out.get(k, zero) for k in range(order)], q._join(r))


def diffop_apply(q: DiffOp, p: Poly):
    """Apply ``q`` to a polynomial in x.

    Polynomial-ring operators return a :class:`Poly`; rational-ring operators
    return a reduced :class:`RatFun`.
    """
    if q.ring == POLYNOMIAL:
        total = Poly((), "x")
        dp = p
        for c in q.coeffs:
            if dp.is_zero():
                break
            total = total + c.num * dp
            dp = dp.derivative()
        return total
    total = RatFun(Poly((), "x"))
    dp = p
    for c in q.coeffs:
        if dp.is_zero():
            break
        total = total + c * dp
        dp = dp.derivative()
    return total


class ShiftOp:
    """Difference operator ``sum_k terms[k](n) * Theta^k`` with Laurent support."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, object] | None = None):
        clean = {}
        for k, c in (terms or {}).items():
            c = as_ratfun(c, "n")
            if c:
                clean[int(k)] = c
        self.terms = dict(sorted(clean.items(), reverse=True))

    @classmethod
    def theta(cls, k: int = 1) -> "ShiftOp":
        return cls({k: 1})

    @classmethod
    def scalar(cls, c) -> "ShiftOp":
        return cls({0: c})

    @classmethod
    def identity(cls) -> "ShiftOp":
        return cls({0: 1})

    def offsets(self) -> list[int]:
        """Offsets in descending order."""
        return list(self.terms)

    def coeff(self, k: int) -> RatFun:
        return self.terms.get(k, RatFun(Poly((), "n")))

    def is_zero(self) -> bool:
        return not self.terms

    def _coerce(self, other):
        if isinstance(other, ShiftOp):
            return other
        if isinstance(other, (int, Fraction, Poly, RatFun)):
            return ShiftOp.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return ShiftOp(out)

    __radd__ = __add__

    def __neg__(self) -> "ShiftOp":
        return ShiftOp({k: -c for k, c in self.terms.items()})

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
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return shiftop_compose(self, other)

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return shiftop_compose(other, self)

    def __pow__(self, e: int) -> "ShiftOp":
        result = ShiftOp.identity()
        for _ in range(e):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, ShiftOp):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction, Poly, RatFun)):
            return self == ShiftOp.scalar(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(self.terms.items()))

    def __repr__(self) -> str:
        return f"ShiftOp({self.terms!r})"

    def __str__(self) -> str:
        from .render import shiftop_text

        return shiftop_text(self)


def shiftop_compose(q: ShiftOp, r: ShiftOp) -> ShiftOp:
    """Normal form of ``q o r`` using ``a Theta^j o b Theta^k = a b(n+j) Theta^(j+k)``."""
    out: dict[int, RatFun] = {}
    for j, a in q.terms.items():
        for k, b in r.terms.items():
            term = a * b.shift(j)
            s = j + k
            out[s] = out[s] + term if s in out else term
    return ShiftOp(out)


def shiftop_apply(q: ShiftOp, seq: Callable[[int], Poly], at: int) -> Poly:
    """``sum_k a_k(at) * seq(at + k)``; raises :class:`PoleAtIndex` on a pole."""
    total = Poly((), "x")
    for k, a in q.terms.items():
        d = a.den(at)
        if not d:
            raise PoleAtIndex(k, at)
        c = a.num(at) / d
        if c:
            total = total + seq(at + k) * c
    return total


def shiftop_conjugate(q: ShiftOp, m: int) -> ShiftOp:
    """``Theta^(-m) o q o Theta^m``."""
    if not m:
        return q
    return shiftop_compose(shiftop_compose(ShiftOp.theta(-m), q), ShiftOp.theta(m))
