from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _support import poly_diffops
from xoph.bispectral import (
    DELTA,
    GAMMA,
    Recurrence,
    bfa,
    flat,
    hermite_in_delta,
    is_stabilizer,
    minimal_stabilizer,
    one_step_recurrence,
    pi,
    poly_at_delta,
    recurrence,
    rising,
    verify_recurrence,
)
from xoph.errors import NotAStabilizer
from xoph.exact import Poly, RatFun, pochhammer
from xoph.hermite import (
    Partition,
    degree_set,
    exceptional_family,
    exceptional_hermite,
    hermite,
    op_A,
    op_B,
    op_T,
)
from xoph.operators import DiffOp, ShiftOp, shiftop_apply

x = Poly.gen("x")
n = Poly.gen("n")

PARTITIONS = [(), (1,), (2,), (3,), (1, 1), (1, 2), (2, 2), (1, 3), (2, 3), (1, 1, 2, 2)]


def expand_in_hhat(lam, p):
    """Coefficients of p in the hhat basis by peeling off leading terms."""
    ds = degree_set(lam)
    out = {}
    while p:
        d = p.degree
        assert d in ds, f"degree {d} is missing from the exceptional family"
        h = exceptional_hermite(lam, d)
        c = p.lc / h.lc
        out[d] = c
        p = p - h * c
    return out


def test_flat_of_x_is_delta():
    assert flat(DiffOp.mul(x)) == ShiftOp({1: F(1, 2), -1: n})
    assert flat(DiffOp.d()) == GAMMA


def test_flat_anti_homomorphism_example():
    d, X = DiffOp.d(), DiffOp.mul(x)
    assert flat(d * X) == ShiftOp({0: n + 1, -2: 2 * n * (n - 1)})
    assert flat(d * X) == DELTA * GAMMA == flat(X) * flat(d)


def test_flat_rejects_rational_operators():
    with pytest.raises(TypeError):
        flat(op_B(Partition.of(1)))


def test_flat_bfa_paper_example():
    lam = Partition.of(1, 1)
    got = flat(bfa(lam, x * (3 + 2 * x**2)))
    assert got == ShiftOp(
        {
            3: pochhammer(-2, 2),
            1: 6 * pochhammer(-2, 3),
            -1: 12 * pochhammer(-3, 4),
            -3: 8 * pochhammer(-5, 2) * pochhammer(-2, 3),
        }
    )


@settings(max_examples=100, deadline=None)
@given(poly_diffops(2, 3), poly_diffops(2, 3))
def test_flat_reverses_composition(q, r):
    assert flat(q * r) == flat(r) * flat(q)


@settings(max_examples=40, deadline=None)
@given(poly_diffops(3, 3))
def test_flat_acts_like_operator_on_hermite(q):
    image = flat(q)
    for m in range(16):
        assert q(hermite(m)) == shiftop_apply(image, hermite, m)


def test_pi_examples():
    assert pi(Partition()) == 1
    assert pi(Partition.of(1, 1)) == 4 * (n - 1) * (n - 2)
    assert pi(Partition.of(1, 1, 2, 2)) == 16 * (n - 1) * (n - 2) * (n - 4) * (n - 5)


def test_stabilizer_examples():
    lam = Partition.of(1, 1)
    assert not is_stabilizer(lam, x)
    assert is_stabilizer(lam, x * (3 + 2 * x**2))
    assert is_stabilizer(Partition(), x**5 - x)
    assert is_stabilizer(Partition(), Poly.const(3))


def test_minimal_stabilizer_examples():
    assert minimal_stabilizer(Partition()) == x
    assert minimal_stabilizer(Partition.of(2, 2)) == F(32, 5) * x**5 + 24 * x
    assert minimal_stabilizer(Partition.of(1, 1)) == 4 * x + F(8, 3) * x**3
    assert minimal_stabilizer(Partition.of(1, 1)) == F(4, 3) * x * (3 + 2 * x**2)


@pytest.mark.parametrize("parts", PARTITIONS)
def test_minimal_stabilizer_degree(parts):
    lam = Partition(parts)
    f = minimal_stabilizer(lam)
    assert f.degree == lam.size + 1
    assert is_stabilizer(lam, f)


def test_bfa_examples():
    assert bfa(Partition(), x) == DiffOp.mul(x)
    got = bfa(Partition.of(1, 1), x * (3 + 2 * x**2))
    assert got == DiffOp(
        [
            -x * (24 - 16 * x**2),
            x**2 * (24 - 16 * x**2),
            -x * (6 + 8 * x**2 - 8 * x**4),
            6 - 8 * x**4,
            x * (3 + 2 * x**2),
        ]
    )
    assert got.ring == "polynomial"


@pytest.mark.parametrize("k", range(1, 7))
def test_bfa_one_step_lemma(k):
    h = hermite
    expected = DiffOp([2 * k * (h(k + 1) - 2 * (k + 1) * h(k - 1)), -h(k + 2), h(k + 1)])
    assert bfa(Partition((k,)), h(k + 1)) == expected


def test_bfa_rejects_non_stabilizer():
    with pytest.raises(NotAStabilizer):
        bfa(Partition.of(1, 1), x)


@pytest.mark.parametrize("parts", PARTITIONS)
def test_flat_of_BA_gives_pi(parts):
    lam = Partition(parts)
    T = op_T()
    prod = DiffOp.identity()
    for k in lam.K:
        prod = prod * (T + 2 * k)
    BA = (op_B(lam) * op_A(lam)).to_polynomial()
    assert BA == prod
    image = flat(BA)
    assert image == flat(prod)
    p = pi(lam)
    for m in range(21):
        assert shiftop_apply(image, hermite, m) == p(m) * hermite(m)


def test_classical_recurrence():
    rec = recurrence(Partition(), x)
    assert rec.op == ShiftOp({1: F(1, 2), -1: n})
    for m in range(12):
        assert x * hermite(m) == hermite(m + 1) / 2 + m * hermite(m - 1)


def test_miki_tsujimoto_duran_relation():
    rec = recurrence(Partition.of(1, 1), x * (3 + 2 * x**2))
    four = {k: 4 * c for k, c in rec.op.terms.items()}
    assert four == {
        3: RatFun(pochhammer(-2, 2), pochhammer(1, 2)),
        1: RatFun(6 * (n - 2)),
        -1: RatFun(12 * pochhammer(-1, 2)),
        -3: RatFun(8 * pochhammer(-2, 3)),
    }


def test_two_step_relation():
    # Theta^-1 coefficient is 16 (n-4)^2 (n-2); the printed 16 (n-2)^2 (n-4)
    # disagrees with the basis-expansion oracle below.
    rec = recurrence(Partition.of(2, 2), 24 * x + F(32, 5) * x**5)
    assert rec.op == ShiftOp(
        {
            5: RatFun(F(1, 5) * pochhammer(-5, 2), pochhammer(0, 2)),
            3: RatFun(2 * pochhammer(-5, 2), n - 1),
            1: 8 * (n - 5) * (n - 3),
            -1: 16 * (n - 4) ** 2 * (n - 2),
            -3: 16 * pochhammer(-5, 4),
            -5: F(32, 5) * pochhammer(-6, 5),
        }
    )
    lam = Partition.of(2, 2)
    for m in (7, 8, 10, 13):
        gamma = expand_in_hhat(lam, rec.f * exceptional_hermite(lam, m))
        assert gamma[m - 1] == 16 * (m - 4) ** 2 * (m - 2)
        assert gamma[m - 1] != 16 * (m - 2) ** 2 * (m - 4)


def test_recurrence_at_index_three_matches_expansion():
    lam = Partition.of(1, 1)
    f = x * (3 + 2 * x**2)
    rec = recurrence(lam, f)
    got = shiftop_apply(rec.op, exceptional_family(lam), 3)
    assert got == f * exceptional_hermite(lam, 3)
    gamma = expand_in_hhat(lam, got)
    for k, c in rec.op.terms.items():
        if 3 + k in gamma:
            assert gamma[3 + k] == c(3)


@pytest.mark.parametrize("parts", PARTITIONS)
def test_recurrence_coefficients_match_basis_expansion(parts):
    lam = Partition(parts)
    f = minimal_stabilizer(lam)
    rec = recurrence(lam, f)
    for m in degree_set(lam).up_to(14):
        gamma = expand_in_hhat(lam, f * exceptional_hermite(lam, m))
        predicted = {m + k: c(m) for k, c in rec.op.terms.items() if (m + k) in degree_set(lam)}
        assert {d: c for d, c in predicted.items() if c} == gamma


@pytest.mark.parametrize("parts", PARTITIONS)
def test_recurrence_support_and_parity(parts):
    lam = Partition(parts)
    for f in (minimal_stabilizer(lam), minimal_stabilizer(lam) ** 2):
        rec = recurrence(lam, f)
        d = f.degree
        assert all(-d <= k <= d for k in rec.offsets)
        assert all((k - d) % 2 == 0 for k in rec.offsets)
        assert rec.offsets[0] == d and rec.offsets[-1] == -d


@pytest.mark.parametrize("parts", PARTITIONS)
def test_no_poles_on_degree_set(parts):
    lam = Partition(parts)
    rec = recurrence(lam, minimal_stabilizer(lam))
    for m in degree_set(lam).up_to(30):
        for c in rec.op.terms.values():
            assert c.den(m) != 0


def test_rising_with_negative_count():
    assert rising(2, -1) == RatFun(Poly.const(1, "n"), n + 1)
    assert rising(-2, 2) == RatFun(pochhammer(-2, 2))
    assert rising(5, 0) == 1


def test_one_step_leading_coefficient():
    rec = one_step_recurrence(1)
    assert rec.coeff(2) == RatFun(n - 1, n + 1)


@pytest.mark.parametrize("k", range(1, 7))
def test_one_step_closed_form(k):
    closed = one_step_recurrence(k)
    pipeline = recurrence(Partition((k,)), hermite(k + 1))
    assert closed.op == pipeline.op
    assert closed.f == pipeline.f


@pytest.mark.parametrize("k", range(1, 5))
def test_one_step_degree_bookkeeping(k):
    rec = one_step_recurrence(k)
    lam = rec.partition
    for m in degree_set(lam).up_to(12):
        lhs = rec.f * exceptional_hermite(lam, m)
        assert lhs.degree == m + k + 1
        assert shiftop_apply(rec.op, exceptional_family(lam), m) == lhs


def test_hermite_in_delta_examples():
    assert hermite_in_delta(0) == ShiftOp.identity()
    assert hermite_in_delta(1) == ShiftOp({1: 1, -1: 2 * n}) == DELTA * 2
    assert hermite_in_delta(2) == ShiftOp({2: 1, 0: 4 * n, -2: 4 * n * (n - 1)})
    assert hermite_in_delta(2) == 4 * DELTA * DELTA - 2


@pytest.mark.parametrize("k", range(9))
def test_hermite_in_delta_matches_horner(k):
    assert hermite_in_delta(k) == poly_at_delta(hermite(k))


def test_verify_classical():
    report = verify_recurrence(recurrence(Partition(), x), 10)
    assert report.verified and report.clean
    assert report.checked == list(range(11))


def test_verify_paper_examples():
    report = verify_recurrence(recurrence(Partition.of(1, 1), x * (3 + 2 * x**2)), 20)
    assert report.clean
    assert report.checked == degree_set(Partition.of(1, 1)).up_to(20)
    f = 105 * x + 70 * x**3 + 84 * x**5 + 24 * x**7
    assert verify_recurrence(recurrence(Partition.of(1, 1, 2, 2), f), 20).clean


def test_verify_detects_corruption():
    rec = recurrence(Partition.of(1, 1), x * (3 + 2 * x**2))
    bad = Recurrence(rec.partition, rec.f, rec.op + ShiftOp({1: F(1, 1000)}))
    report = verify_recurrence(bad, 12)
    assert not report.verified
    # at n = 0 the corrupted term multiplies hhat(1) = 0, so 3 is the first miss
    assert report.failures and report.failures[0][0] == 3


def test_verify_records_poles():
    rec = recurrence(Partition(), x)
    poled = Recurrence(rec.partition, rec.f, rec.op + ShiftOp({3: RatFun(Poly.const(1, "n"), n - 4)}))
    report = verify_recurrence(poled, 6)
    assert report.poles == [(3, 4)]
    assert 4 not in report.checked
    assert not report.clean


def test_parallel_verification_matches_serial():
    rec = recurrence(Partition.of(2, 2), minimal_stabilizer(Partition.of(2, 2)))
    serial = verify_recurrence(rec, 15)
    parallel = verify_recurrence(rec, 15, workers=2)
    assert parallel.checked == serial.checked
    assert parallel.failures == serial.failures == []


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 3), st.integers(1, 3))
def test_products_of_stabilizers_give_valid_recurrences(extra, power):
    lam = Partition.of(1, 2)
    f = minimal_stabilizer(lam) ** power + extra
    assert is_stabilizer(lam, f)
    assert verify_recurrence(recurrence(lam, f), 8).clean
