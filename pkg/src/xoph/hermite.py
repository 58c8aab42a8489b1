"""Hermite polynomials, Hermite Wronskians and the exceptional Hermite family.

A :class:`Partition` ``lam`` fixes the seed degrees ``K = {lam_i + i - 1}``.
From it come the Wronskian ``eta``, the order-l intertwiners ``A`` and ``B``
(with their first-order factors), the second-order operators ``T_j`` and the
exceptional polynomials ``hhat(n) = A(h(n + l - N))``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .exact import Poly, RatFun
from .operators import RATIONAL, DiffOp

X = Poly.gen("x")


@lru_cache(maxsize=None)
def hermite(k: int) -> Poly:
    """Physicists' Hermite polynomial H_k; zero for negative k."""
    if k < 0:
        return Poly((), "x")
    prev, cur = Poly((), "x"), Poly((1,), "x")
    for i in range(k):
        prev, cur = cur, 2 * X * cur - 2 * i * prev
    return cur


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(a > b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"partition parts must be non-decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        return cls(tuple(parts))

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def size(self) -> int:
        """N, the number partitioned (also the number of missing degrees)."""
        return sum(self.parts)

    @property
    def K(self) -> tuple[int, ...]:
        return tuple(p + i for i, p in enumerate(self.parts))

    @property
    def shift(self) -> int:
        """N - l: the index offset between hhat and the classical family."""
        return self.size - self.length

    def truncate(self, j: int) -> "Partition":
        return Partition(self.parts[:j])

    def is_even(self) -> bool:
        p = self.parts
        return len(p) % 2 == 0 and all(p[i] == p[i + 1] for i in range(0, len(p), 2))

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


class DegreeSet:
    """The degrees ``n >= N - l`` with ``n + l - N`` not in K."""

    def __init__(self, lam: Partition):
        self.partition = lam
        self._shift = lam.shift
        self._K = frozenset(lam.K)

    def __contains__(self, n: int) -> bool:
        return n >= self._shift and (n - self._shift) not in self._K

    @property
    def missing(self) -> tuple[int, ...]:
        low = range(self._shift)
        return tuple(low) + tuple(k + self._shift for k in sorted(self._K))

    def up_to(self, n_max: int) -> list[int]:
        return [n for n in range(n_max + 1) if n in self]

    def __iter__(self) -> Iterator[int]:
        n = 0
        while True:
            if n in self:
                yield n
            n += 1

    def __repr__(self) -> str:
        return f"DegreeSet({self.partition}, missing={self.missing})"


def degree_set(lam: Partition) -> DegreeSet:
    return DegreeSet(lam)


def poly_det(rows: Sequence[Sequence[Poly]]) -> Poly:
    """Determinant of a square polynomial matrix (fraction-free Bareiss)."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return Poly((1,), "x")
    sign = 1
    prev = Poly((1,), "x")
    for k in range(n - 1):
        if not m[k][k]:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return Poly((), "x")
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]).div_exact(prev)
        prev = pivot
    return m[n - 1][n - 1] * sign


def _derivative_rows(ps: Sequence[Poly], nrows: int) -> list[list[Poly]]:
    rows = [list(ps)]
    for _ in range(nrows - 1):
        rows.append([p.derivative() for p in rows[-1]])
    return rows


def wronskian(ps: Sequence[Poly]) -> Poly:
    """Wronskian det[d^i p_j] with rows indexed by derivative order."""
    if not ps:
        return Poly((1,), "x")
    return poly_det(_derivative_rows(ps, len(ps)))


def _seeds(lam: Partition) -> list[Poly]:
    return [hermite(k) for k in lam.K]


@lru_cache(maxsize=None)
def _eta(parts: tuple[int, ...]) -> Poly:
    return wronskian([hermite(p + i) for i, p in enumerate(parts)])


def eta(lam: Partition, j: int | None = None) -> Poly:
    """Hermite Wronskian of the first ``j`` seeds (all of them by default)."""
    if j is None:
        j = lam.length
    if not 0 <= j <= lam.length:
        raise ValueError(f"truncation {j} outside 0..{lam.length}")
    return _eta(lam.parts[:j])


@lru_cache(maxsize=None)
def op_A(lam: Partition) -> DiffOp:
    """``A(y) = Wr{h(k_1), ..., h(k_l), y}`` expanded along the y column."""
    l = lam.length
    rows = _derivative_rows(_seeds(lam), l + 1)
    coeffs = []
    for i in range(l + 1):
        minor = rows[:i] + rows[i + 1:]
        c = poly_det(minor)
        coeffs.append(c if (i + l) % 2 == 0 else -c)
    return DiffOp(coeffs)


def A_factor(lam: Partition, j: int) -> DiffOp:
    """``A_j = (eta_j / eta_{j-1}) (d - eta_j' / eta_j)``."""
    ej, ej1 = eta(lam, j), eta(lam, j - 1)
    return DiffOp([RatFun(-ej.derivative(), ej1), RatFun(ej, ej1)], RATIONAL)


def B_factor(lam: Partition, j: int) -> DiffOp:
    """``B_j = (eta_{j-1} / eta_j) (d - 2x - eta_{j-1}' / eta_{j-1})``."""
    ej, ej1 = eta(lam, j), eta(lam, j - 1)
    zero_order = -(2 * X * ej1 + ej1.derivative())
    return DiffOp([RatFun(zero_order, ej), RatFun(ej1, ej)], RATIONAL)


def op_A_factored(lam: Partition) -> DiffOp:
    """``A_l o ... o A_1``, cast back to the polynomial ring."""
    result = DiffOp([1], RATIONAL)
    for j in range(1, lam.length + 1):
        result = A_factor(lam, j) * result
    return result.to_polynomial()


@lru_cache(maxsize=None)
def op_B(lam: Partition) -> DiffOp:
    """``B_1 o B_2 o ... o B_l`` (rational coefficients, leading term 1/eta)."""
    result = DiffOp([1], RATIONAL)
    for j in range(lam.length, 0, -1):
        result = B_factor(lam, j) * result
    return result


def op_T(lam: Partition | None = None, j: int | None = None) -> DiffOp:
    """``T_j(y) = y'' - 2(x + eta_j'/eta_j) y' + (eta_j''/eta_j + 2x eta_j'/eta_j) y``.

    ``j = 0`` (or no partition) is the classical ``y'' - 2x y'``; the default
    ``j = l`` is the exceptional operator.
    """
    if lam is None:
        lam, j = Partition(), 0
    if j is None:
        j = lam.length
    e = eta(lam, j)
    if e.degree <= 0:
        return DiffOp([0, -2 * X, 1])
    de = e.derivative()
    return DiffOp(
        [
            RatFun(de.derivative() + 2 * X * de, e),
            RatFun(-2 * (X * e + de), e),
            1,
        ],
        RATIONAL,
    )


def exceptional_hermite(lam: Partition, n: int) -> Poly:
    """``hhat(n) = A(h(n + l - N))``: degree n for n in the degree set, else 0."""
    return _hhat(lam, n)


@lru_cache(maxsize=4096)
def _hhat(lam: Partition, n: int) -> Poly:
    return op_A(lam)(hermite(n - lam.shift))


def exceptional_family(lam: Partition):
    """The map ``n -> hhat(n, x)`` for use with :func:`shiftop_apply`."""
    return lambda n: _hhat(lam, n)


def classical_family(n: int) -> Poly:
    return hermite(n)
