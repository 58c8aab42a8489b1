"""Recurrence relations for exceptional Hermite polynomials.

The map :func:`flat` sends ``x^i d^j`` to ``Gamma^j Delta^i`` where
``Delta = Theta/2 + n Theta^-1`` and ``Gamma = 2n Theta^-1``; an operator and
its image act identically on the classical Hermite family.  For a stabilizer
element ``f`` (``eta | f'``) the operator ``B o f o A`` has polynomial
coefficients, and conjugating ``flat(B o f o A) o 1/pi(n)`` by
``Theta^(N-l)`` yields a difference operator with ``hhat(n)`` as
eigenfunction and eigenvalue ``f(x)``.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .errors import DenominatorNotCleared, NotAStabilizer, NotDivisible
from .exact import Poly, RatFun, pochhammer
from .hermite import (
    Partition,
    degree_set,
    eta,
    exceptional_hermite,
    hermite,
    op_A,
    op_B,
)
from .operators import DiffOp, ShiftOp, shiftop_compose, shiftop_conjugate

N = Poly.gen("n")
DELTA = ShiftOp({1: Fraction(1, 2), -1: N})
GAMMA = ShiftOp({-1: 2 * N})


def poly_at_delta(p: Poly) -> ShiftOp:
    """``p(Delta)`` by Horner's scheme in the shift-operator ring."""
    acc = ShiftOp()
    for c in reversed(p.coeffs):
        acc = acc * DELTA + c
    return acc


def flat(q: DiffOp) -> ShiftOp:
    """Image of a polynomial-coefficient operator under ``x^i d^j -> Gamma^j Delta^i``."""
    if q.ring != "polynomial":
        raise TypeError("flat is only defined on polynomial-coefficient operators")
    result = ShiftOp()
    gamma_pow = ShiftOp.identity()
    for j, c in enumerate(q.coeffs):
        if j:
            gamma_pow = gamma_pow * GAMMA
        if c:
            result = result + gamma_pow * poly_at_delta(c.num)
    return result


def pi(lam: Partition) -> Poly:
    """Eigenvalue polynomial ``prod_i (2 k_i - 2n)`` of ``B o A`` on ``h(n)``."""
    result = Poly.const(1, "n")
    for k in lam.K:
        result = result * Poly((2 * k, -2), "n")
    return result


def is_stabilizer(lam: Partition, f: Poly) -> bool:
    """True when ``eta`` divides ``f'`` (sufficient for f to stabilize the span)."""
    try:
        f.derivative().div_exact(eta(lam))
    except NotDivisible:
        return False
    return True


def minimal_stabilizer(lam: Partition) -> Poly:
    """``integral_0^x eta``, the lowest-degree stabilizer element."""
    return eta(lam).integrate0()


def bfa(lam: Partition, f: Poly) -> DiffOp:
    """``B o f o A`` as a polynomial-coefficient operator."""
    if not is_stabilizer(lam, f):
        raise NotAStabilizer(f"f = {f} is not a stabilizer element for {lam}")
    fa = DiffOp([f * c.num for c in op_A(lam).coeffs])
    return (op_B(lam) * fa).to_polynomial()


@dataclass(frozen=True)
class Recurrence:
    """``f(x) hhat(n) = sum_k op[k](n) hhat(n + k)`` for a fixed partition."""

    partition: Partition
    f: Poly
    op: ShiftOp

    @property
    def offsets(self) -> list[int]:
        return self.op.offsets()

    def coeff(self, k: int) -> RatFun:
        return self.op.coeff(k)

    def __len__(self) -> int:
        return len(self.op.terms)


def recurrence(lam: Partition, f: Poly) -> Recurrence:
    """Assemble ``Theta^(l-N) o flat(B f A) o 1/pi(n) o Theta^(N-l)``."""
    flat_bfa = flat(bfa(lam, f))
    divided = shiftop_compose(flat_bfa, ShiftOp.scalar(RatFun(1, pi(lam))))
    return Recurrence(lam, f, shiftop_conjugate(divided, lam.shift))


def rising(shift: int, count: int) -> RatFun:
    """``(n + shift)_count`` for any integer count; negative counts give
    ``1 / ((n+shift-1) ... (n+shift+count))``."""
    if count >= 0:
        return RatFun(pochhammer(shift, count))
    return RatFun(1, pochhammer(shift + count, -count))


def one_step_recurrence(k: int) -> Recurrence:
    """Closed-form relation for ``lam = (k)`` and ``f = h(k+1)``."""
    if k < 1:
        raise ValueError("k must be positive")
    lead = Poly((1 - 2 * k, 1), "n")
    terms = {}
    for j in range(k + 2):
        c = rising(3 - k - j, j - 1) * (lead * (2**j * comb(k + 1, j)))
        terms[k + 1 - 2 * j] = c
    return Recurrence(Partition((k,)), hermite(k + 1), ShiftOp(terms))


def hermite_in_delta(k: int) -> ShiftOp:
    """``h(k, Delta) = sum_j 2^j C(k,j) (n-j+1)_j Theta^(k-2j)``."""
    return ShiftOp(
        {k - 2 * j: pochhammer(1 - j, j) * (2**j * comb(k, j)) for j in range(k + 1)}
    )


@dataclass
class VerificationReport:
    checked: list[int] = field(default_factory=list)
    failures: list[tuple[int, Poly, Poly]] = field(default_factory=list)
    poles: list[tuple[int, int]] = field(default_factory=list)

    @property
    def verified(self) -> bool:
        return not self.failures

    @property
    def clean(self) -> bool:
        """Verified and free of pole incidents."""
        return not self.failures and not self.poles


def _check_index(rec: Recurrence, n: int):
    poles = [(k, n) for k, a in rec.op.terms.items() if not a.den(n)]
    if poles:
        return n, None, poles
    got = Poly((), "x")
    for k, a in rec.op.terms.items():
        c = a(n)
        if c:
            got = got + exceptional_hermite(rec.partition, n + k) * c
    expected = rec.f * exceptional_hermite(rec.partition, n)
    return n, (None if got == expected else (n, expected, got)), []


def verify_recurrence(rec: Recurrence, n_max: int, workers: int | None = None) -> VerificationReport:
    """Check ``op hhat(n) == f hhat(n)`` exactly for every permitted ``n <= n_max``.

    With ``workers > 1`` the indices are checked in separate processes; the
    report is the same either way.
    """
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    indices = degree_set(rec.partition).up_to(n_max)
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_check_index, [rec] * len(indices), indices))
    else:
        results = [_check_index(rec, n) for n in indices]
    report = VerificationReport()
    for n, failure, poles in sorted(results, key=lambda r: r[0]):
        if poles:
            report.poles.extend(poles)
            continue
        report.checked.append(n)
        if failure is not None:
            report.failures.append(failure)
    return report


__all__ = [
    "DELTA",
    "GAMMA",
    "DenominatorNotCleared",
    "Recurrence",
    "VerificationReport",
    "bfa",
    "flat",
    "hermite_in_delta",
    "is_stabilizer",
    "minimal_stabilizer",
    "one_step_recurrence",
    "pi",
    "poly_at_delta",
    "recurrence",
    "rising",
    "verify_recurrence",
]
