"""The global bound prod(2^i - 1), the supporting inequality checkers, and the
exhaustive sweep comparing every order's best abelian candidate to the bound.

Every comparison is exact integer cross-multiplication; integer logs are
computed by repeated multiplication, never by floating point.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, prod

import numpy as np

from . import config
from .errors import CapacityError, DomainError
from .formulas import Factorization, exact_div, gaussian_hyperplanes, is_prime


def ilog(base, n):
    """Largest e with base**e <= n, by exact repeated multiplication."""
    if base < 2 or n < 1:
        raise DomainError("ilog needs base >= 2 and n >= 1")
    e = 0
    acc = base
    while acc <= n:
        e += 1
        acc *= base
    return e


def bound(n):
    """prod_{i=1..floor(log2 n)} (2^i - 1), the series-count upper bound."""
    if n < 4:
        raise DomainError("the bound is only stated for n >= 4")
    return prod(2**i - 1 for i in range(1, ilog(2, n) + 1))


@dataclass(frozen=True)
class InequalityParams:
    """Exponent/prime bookkeeping shared by the step-3 inequalities.

    alpha1 >= 0 and alpha_r >= 1 are the 2-part and odd-part exponents, p the
    odd prime, k = floor(log2 p^alpha_r), s the sum of the exponents below the
    top prime, a = s - alpha1 and b = k - alpha_r.  The pair (p=3, alpha_r=1)
    is the excluded degenerate case.
    """

    alpha1: int
    alpha_r: int
    p: int
    k: int
    s: int
    a: int
    b: int

    def __post_init__(self):
        if self.p < 3 or self.p % 2 == 0 or not is_prime(self.p):
            raise DomainError("p must be an odd prime")
        if self.alpha1 < 0 or self.alpha_r < 1:
            raise DomainError("need alpha1 >= 0 and alpha_r >= 1")
        if self.p == 3 and self.alpha_r == 1:
            raise DomainError("the case p = 3 with alpha_r = 1 is excluded")
        if self.k != ilog(2, self.p**self.alpha_r):
            raise DomainError("k must equal floor(log2 p^alpha_r)")
        if self.a != self.s - self.alpha1 or self.a < 0:
            raise DomainError("need a = s - alpha1 >= 0")
        if self.b != self.k - self.alpha_r or self.b < 1:
            raise DomainError("need b = k - alpha_r >= 1")

    @classmethod
    def make(cls, alpha1, alpha_r, p, s=None):
        if s is None:
            s = alpha1
        k = ilog(2, p**alpha_r)
        return cls(alpha1, alpha_r, p, k, s, s - alpha1, k - alpha_r)


def check_inequality_1(n, p):
    """2^floor(log2 n) - 1 > (p^floor(log_p n) - 1)/(p - 1) for odd prime p."""
    if n < 4:
        raise DomainError("inequality (1) is stated for n >= 4")
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise DomainError("p must be an odd prime")
    if p > n:
        raise DomainError("inequality (1) needs p <= n")
    lhs = 2 ** ilog(2, n) - 1
    rhs = gaussian_hyperplanes(p, ilog(p, n))
    return lhs > rhs


def lemma41_ratio_exceeds_one(params):
    """Step ratio of X/Y at alpha1 -> alpha1 + 1, by exact cross-multiplication."""
    a1, ar, k = params.alpha1, params.alpha_r, params.k
    return (2 ** (a1 + k + 1) - 1) * (a1 + 1) > (2 ** (a1 + 1) - 1) * (a1 + ar + 1)


def xy_ratio(params):
    """X/Y as an exact rational; strictly increasing in alpha1 per the lemma."""
    a1, ar, p, k = params.alpha1, params.alpha_r, params.p, params.k
    x = prod(2**i - 1 for i in range(a1 + 1, a1 + k + 1)) * factorial(a1) * factorial(ar)
    y = prod(gaussian_hyperplanes(p, j) for j in range(1, ar + 1)) * factorial(a1 + ar)
    return Fraction(x, y)


def check_inequality_2(params):
    """The step-3 comparison with the (k+s)! / (alpha1+k)! (alpha_r+s)! factors."""
    a1, ar, p, k, s = params.alpha1, params.alpha_r, params.p, params.k, params.s
    lhs = (
        prod(2**i - 1 for i in range(a1 + 1, a1 + k + 1))
        * factorial(k + s)
        * factorial(a1)
        * factorial(ar)
    )
    rhs = (
        prod(gaussian_hyperplanes(p, j) for j in range(1, ar + 1))
        * factorial(a1 + k)
        * factorial(ar + s)
    )
    return lhs > rhs


def check_inequality_4(params):
    """The a = 0 reduction: prod(2^i-1) a1! ar! > prod gauss * (a1+ar)!."""
    a1, ar, p, k = params.alpha1, params.alpha_r, params.p, params.k
    lhs = (
        prod(2**i - 1 for i in range(a1 + 1, a1 + k + 1))
        * factorial(a1)
        * factorial(ar)
    )
    rhs = prod(gaussian_hyperplanes(p, j) for j in range(1, ar + 1)) * factorial(
        a1 + ar
    )
    return lhs > rhs


def factorial_ratio(alpha1, alpha_r, a, b):
    """(a1+ar+a+b)! a1! ar! / ((a1+ar+a)! (a1+ar+b)!) as an exact rational."""
    return Fraction(
        factorial(alpha1 + alpha_r + a + b) * factorial(alpha1) * factorial(alpha_r),
        factorial(alpha1 + alpha_r + a) * factorial(alpha1 + alpha_r + b),
    )


def check_induction_base(p, alpha_r):
    """p^alpha_r > 2 alpha_r + 2 on the lemma's admissible domain."""
    if not is_prime(p) or p < 3:
        raise DomainError("p must be an odd prime")
    if alpha_r < 1 or (p == 3 and alpha_r < 2):
        raise DomainError("domain is p >= 5 with alpha_r >= 1, or p = 3 with alpha_r >= 2")
    return p**alpha_r > 2 * alpha_r + 2


def check_step4(alpha1):
    """2^(alpha1+1) > alpha1 + 2 for alpha1 >= 1."""
    if alpha1 < 1:
        raise DomainError("alpha1 must be >= 1")
    return 2 ** (alpha1 + 1) > alpha1 + 2


# ---------------------------------------------------------------------------
# the exhaustive order sweep


@dataclass(frozen=True)
class SweepRecord:
    m: int
    factorization: tuple
    candidate_count: int
    bound_value: int
    is_equality: bool

    def to_json_obj(self):
        return {
            "m": self.m,
            "factorization": [list(pa) for pa in self.factorization],
            "candidate_count": str(self.candidate_count),
            "bound_value": str(self.bound_value),
            "is_equality": self.is_equality,
        }


@dataclass
class SweepResult:
    n: int
    violations: list
    equality_attainers: list
    max_ratio: str
    elapsed_ms: int
    per_order_attainers: list = field(default_factory=list)

    def to_json_obj(self):
        obj = {
            "n": self.n,
            "violations": [v.to_json_obj() for v in self.violations],
            "equality_attainers": self.equality_attainers,
            "max_ratio": self.max_ratio,
            "elapsed_ms": self.elapsed_ms,
        }
        if self.per_order_attainers:
            obj["per_order_attainers"] = self.per_order_attainers
        return obj


def spf_sieve(n):
    """Smallest-prime-factor table 0..n (numpy, ~4 bytes per entry)."""
    spf = np.zeros(n + 1, dtype=np.int32)
    for i in range(2, n + 1):
        if spf[i] == 0:
            sl = spf[i::i]
            sl[sl == 0] = i
    return spf


def factor_exponents(m, spf):
    """[(p, a), ...] for m via the sieve, primes ascending."""
    out = []
    while m > 1:
        p = int(spf[m])
        a = 0
        while m % p == 0:
            m //= p
            a += 1
        out.append((p, a))
    return out


def _candidate_count(pairs, gauss_cache, fact):
    """Series count of the elementary-Sylow abelian group of this factorization."""
    acc = 1
    s = 0
    den = 1
    for p, a in pairs:
        key = (p, a)
        g = gauss_cache.get(key)
        if g is None:
            g = prod(gaussian_hyperplanes(p, j) for j in range(1, a + 1))
            gauss_cache[key] = g
        acc *= g
        s += a
        den *= fact[a]
    return acc * fact[s] // den


def _sweep_chunk(lo, hi, n, bound_n, spf):
    fact = [factorial(i) for i in range(ilog(2, n) + 2)]
    gauss_cache = {}
    violations = []
    attainers = []
    max_cand = 0
    for m in range(lo, hi):
        pairs = factor_exponents(m, spf)
        cand = _candidate_count(pairs, gauss_cache, fact)
        if cand > max_cand:
            max_cand = cand
        if cand >= bound_n:
            if cand == bound_n:
                attainers.append(m)
            else:
                violations.append(
                    SweepRecord(m, tuple(pairs), cand, bound_n, False)
                )
    return violations, attainers, max_cand


_WORKER_SPF = None
_WORKER_N = None


def _worker_init(n):
    global _WORKER_SPF, _WORKER_N
    _WORKER_SPF = spf_sieve(n)
    _WORKER_N = n


def _worker_chunk(args):
    lo, hi, n, bound_n = args
    return _sweep_chunk(lo, hi, n, bound_n, _WORKER_SPF)


def default_jobs():
    return os.cpu_count() or 1


def sweep_theorem_43(n, jobs=1, per_order=False, cap=None):
    """Compare every order 4..n against the fixed bound(n).

    Returns violations (expected none), the orders attaining equality
    (expected: only 2^floor(log2 n)), and the max candidate/bound ratio as an
    exact rational rendered to six decimals.  ``per_order`` additionally
    reports orders m with candidate(m) = bound(m).
    """
    if cap is None:
        cap = config.DEFAULT_SWEEP_CAP
    if n < 4:
        raise DomainError("sweep needs n >= 4")
    if n > cap:
        raise CapacityError(f"sweep limit {n} exceeds the cap {cap}")
    t0 = time.monotonic()
    bound_n = bound(n)
    if jobs is None:
        jobs = default_jobs()
    jobs = max(1, min(jobs, (n - 4) // 10000 + 1))
    if jobs == 1:
        spf = spf_sieve(n)
        chunks = [_sweep_chunk(4, n + 1, n, bound_n, spf)]
    else:
        bounds_ = np.linspace(4, n + 1, jobs + 1).astype(int)
        args = [(int(lo), int(hi), n, bound_n) for lo, hi in zip(bounds_, bounds_[1:])]
        with ProcessPoolExecutor(max_workers=jobs, initializer=_worker_init, initargs=(n,)) as ex:
            chunks = list(ex.map(_worker_chunk, args))
    violations = []
    attainers = []
    max_cand = 0
    for v, a, mc in chunks:
        violations.extend(v)
        attainers.extend(a)
        max_cand = max(max_cand, mc)
    violations.sort(key=lambda r: r.m)
    attainers.sort()
    # exact rational rendered half-up to six decimals
    scaled = (max_cand * 10**6 * 2 + bound_n) // (2 * bound_n)
    ratio = f"{scaled // 10**6}.{scaled % 10**6:06d}"
    result = SweepResult(
        n, violations, attainers, ratio, int((time.monotonic() - t0) * 1000)
    )
    if per_order:
        spf = spf_sieve(n)
        fact = [factorial(i) for i in range(ilog(2, n) + 2)]
        gauss_cache = {}
        cur_bound = None
        next_pow = 4
        for m in range(4, n + 1):
            if m == next_pow:
                cur_bound = bound(m)
                next_pow *= 2
            cand = _candidate_count(factor_exponents(m, spf), gauss_cache, fact)
            if cand == cur_bound:
                result.per_order_attainers.append(m)
    return result
