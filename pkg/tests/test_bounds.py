"""Global bound, inequality checkers, and the order sweep."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from compseries import (
    CapacityError,
    DomainError,
    InequalityParams,
    bound,
    check_induction_base,
    check_inequality_1,
    check_inequality_2,
    check_step4,
    lemma41_ratio_exceeds_one,
    sweep_theorem_43,
)
from compseries.bounds import (
    check_inequality_4,
    factor_exponents,
    factorial_ratio,
    ilog,
    spf_sieve,
    xy_ratio,
)
from compseries.formulas import is_prime


def grid_params():
    """The full inequality grid: p in {3,5,7,11,13}, alpha_r 1..6, alpha1 0..20."""
    for p in (3, 5, 7, 11, 13):
        for ar in range(1, 7):
            if p == 3 and ar == 1:
                continue
            for a1 in range(0, 21):
                yield InequalityParams.make(a1, ar, p)


# ---------------------------------------------------------------------------
# ilog / bound


def test_ilog_exact_powers():
    for k in range(61):
        assert ilog(2, 2**k) == k
    assert ilog(3, 80) == 3 and ilog(3, 81) == 4
    with pytest.raises(DomainError):
        ilog(1, 10)
    with pytest.raises(DomainError):
        ilog(2, 0)


@settings(max_examples=100, deadline=None)
@given(base=st.integers(2, 10), n=st.integers(1, 10**12))
def test_ilog_defining_property(base, n):
    e = ilog(base, n)
    assert base**e <= n < base ** (e + 1)


def test_bound_values():
    assert bound(64) == 615195
    assert bound(4) == 3  # (2-1)(2^2-1)
    assert bound(127) == 615195  # floor(log2) ties with 64
    assert bound(128) == 615195 * 127
    assert bound(256) == 615195 * 127 * 255


def test_bound_rejects_small_n():
    for n in (3, 2, 1, 0, -5):
        with pytest.raises(DomainError):
            bound(n)


# ---------------------------------------------------------------------------
# InequalityParams


def test_params_examples():
    p = InequalityParams.make(0, 1, 5)
    assert (p.k, p.s, p.a, p.b) == (2, 0, 0, 1)
    p = InequalityParams.make(1, 2, 3)
    assert p.k == 3 and p.b == 1


def test_params_excluded_case():
    with pytest.raises(DomainError):
        InequalityParams.make(0, 1, 3)


def test_params_validation():
    with pytest.raises(DomainError):
        InequalityParams(0, 1, 5, k=3, s=0, a=0, b=2)  # wrong k
    with pytest.raises(DomainError):
        InequalityParams(2, 1, 5, k=2, s=1, a=-1, b=1)  # a < 0
    with pytest.raises(DomainError):
        InequalityParams.make(0, 1, 4)  # p not prime
    with pytest.raises(DomainError):
        InequalityParams.make(-1, 1, 5)


# ---------------------------------------------------------------------------
# inequality (1)


def test_inequality_1_examples():
    assert check_inequality_1(9, 3)  # 7 > 4
    assert check_inequality_1(4, 3)  # 3 > 1
    assert check_inequality_1(125, 5)  # 63 > 31


def test_inequality_1_preconditions():
    with pytest.raises(DomainError):
        check_inequality_1(3, 3)
    with pytest.raises(DomainError):
        check_inequality_1(16, 2)
    with pytest.raises(DomainError):
        check_inequality_1(10, 11)  # needs p <= n


def test_inequality_1_boundary_reduction_to_1e5():
    """Holds for all 4 <= n <= 10^5 and odd primes p <= n.

    For fixed p and e = floor(log_p n), the right side is constant while the
    left side 2^floor(log2 n) - 1 is nondecreasing in n, so on each block
    n in [p^e, p^(e+1)) the minimum of LHS - RHS sits at the smallest
    admissible n.  Checking n = max(p^e, 4) for every block covers the whole
    range exactly.
    """
    limit = 10**5
    spf = spf_sieve(limit)
    odd_primes = [p for p in range(3, limit + 1, 2) if spf[p] == p]
    for p in odd_primes:
        e = 1
        pe = p
        while pe <= limit:
            assert check_inequality_1(max(pe, 4), p), (pe, p)
            e += 1
            pe *= p


def test_inequality_1_random_interior_sample():
    rng = random.Random(1234)
    spf = spf_sieve(10**5)
    odd_primes = [p for p in range(3, 10**5, 2) if spf[p] == p]
    for _ in range(3000):
        n = rng.randint(4, 10**5)
        p = rng.choice([q for q in (3, 5, 7, 11, 13) if q <= n] or [3])
        assert check_inequality_1(n, p), (n, p)
        big = rng.choice(odd_primes)
        if big <= n:
            assert check_inequality_1(n, big), (n, big)


# ---------------------------------------------------------------------------
# Lemma: the X/Y step ratio


def test_lemma_ratio_examples():
    assert lemma41_ratio_exceeds_one(InequalityParams.make(0, 1, 5))  # 7*1 > 1*2
    assert lemma41_ratio_exceeds_one(InequalityParams.make(1, 2, 3))  # 31*2 > 3*4


def test_lemma_ratio_full_grid():
    for params in grid_params():
        assert lemma41_ratio_exceeds_one(params), params


def test_xy_ratio_strictly_increasing_in_alpha1():
    """The exact rational X/Y strictly increases as alpha1 steps up."""
    for p in (3, 5, 7, 11, 13):
        for ar in range(1, 7):
            if p == 3 and ar == 1:
                continue
            vals = [xy_ratio(InequalityParams.make(a1, ar, p)) for a1 in range(22)]
            assert all(a < b for a, b in zip(vals, vals[1:])), (p, ar)


# ---------------------------------------------------------------------------
# inequality (2) and the a = 0 reduction


def test_inequality_2_worked_examples():
    # the three hand-evaluated instances: 6 > 2, 126 > 12, 252 > 48
    assert check_inequality_2(InequalityParams.make(0, 1, 5, s=0))
    assert check_inequality_2(InequalityParams.make(1, 1, 5, s=1))
    assert check_inequality_2(InequalityParams.make(0, 2, 3, s=0))


def test_inequality_2_full_grid():
    for params in grid_params():
        assert check_inequality_2(params), params


def test_inequality_2_with_positive_a():
    for p in (3, 5, 7):
        for ar in range(1, 5):
            if p == 3 and ar == 1:
                continue
            for a1 in range(0, 8):
                for a in range(0, 6):
                    params = InequalityParams.make(a1, ar, p, s=a1 + a)
                    assert check_inequality_2(params), params


def test_a0_reduction_agrees():
    """With a = 0 (s = alpha1), inequality (2) coincides with the reduced form."""
    for params in grid_params():  # make() uses s = alpha1, hence a = 0
        assert params.a == 0
        assert check_inequality_4(params) == check_inequality_2(params)


def test_factorial_ratio_monotone_in_a():
    for a1 in range(0, 7):
        for ar in range(1, 7):
            for b in range(1, 7):
                vals = [factorial_ratio(a1, ar, a, b) for a in range(0, 11)]
                assert all(x < y for x, y in zip(vals, vals[1:])), (a1, ar, b)


# ---------------------------------------------------------------------------
# induction base and step 4


def test_induction_base_examples():
    assert check_induction_base(5, 1)  # 5 > 4
    assert check_induction_base(3, 2)  # 9 > 6
    with pytest.raises(DomainError):
        check_induction_base(3, 1)  # exactly the excluded case (3 > 4 fails)
    with pytest.raises(DomainError):
        check_induction_base(2, 3)


def test_induction_base_grid():
    for p in (3, 5, 7, 11, 13):
        for ar in range(1, 7):
            if p == 3 and ar == 1:
                continue
            assert check_induction_base(p, ar), (p, ar)


def test_step4_examples_and_grid():
    assert check_step4(1)  # 4 > 3
    assert check_step4(2)  # 8 > 4
    assert check_step4(10)  # 2048 > 12
    for a1 in range(1, 61):
        assert check_step4(a1)
    with pytest.raises(DomainError):
        check_step4(0)


# ---------------------------------------------------------------------------
# sweep


def test_sweep_64():
    res = sweep_theorem_43(64)
    assert res.violations == []
    assert res.equality_attainers == [64]
    assert res.max_ratio == "1.000000"


def test_sweep_100_attainer_is_64():
    res = sweep_theorem_43(100)
    assert res.violations == [] and res.equality_attainers == [64]


def test_sweep_4():
    res = sweep_theorem_43(4)
    assert res.violations == [] and res.equality_attainers == [4]


def test_sweep_1000():
    res = sweep_theorem_43(1000)
    assert res.violations == [] and res.equality_attainers == [512]


def test_sweep_parallel_matches_serial():
    serial = sweep_theorem_43(50_000, jobs=1)
    parallel = sweep_theorem_43(50_000, jobs=4)
    assert serial.equality_attainers == parallel.equality_attainers == [32768]
    assert serial.violations == parallel.violations == []
    assert serial.max_ratio == parallel.max_ratio


def test_sweep_per_order_attainers():
    res = sweep_theorem_43(100, per_order=True)
    assert res.per_order_attainers == [4, 8, 16, 32, 64]


def test_sweep_report_json():
    obj = sweep_theorem_43(64).to_json_obj()
    assert obj["n"] == 64
    assert obj["violations"] == []
    assert obj["equality_attainers"] == [64]
    assert isinstance(obj["max_ratio"], str)
    assert isinstance(obj["elapsed_ms"], int)


def test_sweep_preconditions():
    with pytest.raises(DomainError):
        sweep_theorem_43(3)
    with pytest.raises(CapacityError):
        sweep_theorem_43(100, cap=50)


def test_factor_exponents_matches_trial_division():
    spf = spf_sieve(5000)
    from compseries.formulas import factorize

    for m in range(2, 5001):
        assert tuple(factor_exponents(m, spf)) == factorize(m).pairs
