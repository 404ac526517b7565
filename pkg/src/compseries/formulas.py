"""Closed-form counts: cyclic, elementary abelian, abelian, and maximal-subgroup
formulas.  Everything is exact integer arithmetic; every division asserts a
zero remainder."""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial, isqrt, prod

from .errors import DomainError


def is_prime(n):
    """Deterministic trial-division primality test (desk-scale inputs)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    d = 5
    while d <= isqrt(n):
        if n % d == 0 or n % (d + 2) == 0:
            return False
        d += 6
    return True


@dataclass(frozen=True)
class Factorization:
    """n as an ordered product of prime powers p_1^a_1 * ... * p_r^a_r."""

    pairs: tuple

    def __post_init__(self):
        pairs = tuple((int(p), int(a)) for p, a in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        prev = 1
        for p, a in pairs:
            if p <= prev:
                raise DomainError("primes must be strictly increasing")
            if not is_prime(p):
                raise DomainError(f"{p} is not prime")
            if a < 1:
                raise DomainError("exponents must be >= 1")
            prev = p

    def value(self):
        return prod(p**a for p, a in self.pairs)

    def primes(self):
        return [p for p, _ in self.pairs]

    def exponents(self):
        return [a for _, a in self.pairs]


def factorize(n):
    """Trial-division factorization; n = 1 gives the empty factorization."""
    if n < 1:
        raise DomainError("can only factorize positive integers")
    pairs = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            a = 0
            while n % d == 0:
                n //= d
                a += 1
            pairs.append((d, a))
        d += 1 if d == 2 else 2
    if n > 1:
        pairs.append((n, 1))
    return Factorization(tuple(pairs))


def exact_div(a, b):
    q, r = divmod(a, b)
    if r:
        raise AssertionError(f"division {a} / {b} is not exact")
    return q


def multinomial(exponents):
    """(sum a_i)! / prod a_i!, exactly."""
    exponents = [int(a) for a in exponents]
    if any(a < 0 for a in exponents):
        raise DomainError("exponents must be nonnegative")
    num = factorial(sum(exponents))
    den = prod(factorial(a) for a in exponents)
    return exact_div(num, den)


def count_cyclic(n):
    """Composition-series count of the cyclic group of order n (multinomial)."""
    if isinstance(n, int):
        n = factorize(n)
    return multinomial(n.exponents())


def gaussian_hyperplanes(p, k):
    """(p^k - 1) / (p - 1): lines (equally hyperplanes) of an F_p^k space."""
    return exact_div(p**k - 1, p - 1)


def count_elem_abelian(p, k):
    """Series count of the elementary abelian group of order p^k."""
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if k < 0:
        raise DomainError("exponent must be nonnegative")
    return prod(gaussian_hyperplanes(p, i) for i in range(1, k + 1))


def count_abelian(n, sylow_counts):
    """Series count of an abelian group from its Sylow subgroup counts t_i."""
    if isinstance(n, int):
        n = factorize(n)
    t = [int(x) for x in sylow_counts]
    if len(t) != len(n.pairs):
        raise DomainError(
            f"need {len(n.pairs)} Sylow counts (one per prime), got {len(t)}"
        )
    if any(x < 1 for x in t):
        raise DomainError("every Sylow series count is >= 1")
    return prod(t) * multinomial(n.exponents())


def count_abelian_elem_sylow(n):
    """Series count of the abelian group with elementary abelian Sylow subgroups."""
    if isinstance(n, int):
        n = factorize(n)
    t = [count_elem_abelian(p, a) for p, a in n.pairs]
    return count_abelian(n, t) if t else 1


def maximal_subgroup_count_formula(n):
    """sum_i (p_i^a_i - 1)/(p_i - 1) for the elementary-Sylow abelian group."""
    if isinstance(n, int):
        n = factorize(n)
    return sum(gaussian_hyperplanes(p, a) for p, a in n.pairs)
