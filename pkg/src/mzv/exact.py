"""Exact integer/rational arithmetic and the classical number sequences.

Rationals are ``fractions.Fraction`` throughout: always in lowest terms with a
positive denominator, arithmetic closed and exact.  The Bernoulli numbers use
the convention B_1 = -1/2 (so 2*(2n)! * zeta(2n) = (-1)^(n+1) * (2*pi)^(2n) * B_2n),
the Euler numbers the secant convention (E_0 = 1, E_2 = -1, E_4 = 5).
"""
from __future__ import annotations

import math
import threading
from fractions import Fraction

Rational = Fraction

_bern_lock = threading.Lock()
_bern_cache: list[Fraction] = [Fraction(1)]

_euler_lock = threading.Lock()
_euler_cache: list[int] = [1]  # even-index Euler numbers E_0, E_2, E_4, ...


def binomial(n: int, k: int) -> int:
    """C(n, k), with the out-of-range convention C(n, k) = 0 for k < 0 or k > n."""
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def bernoulli(n: int) -> Fraction:
    """Exact Bernoulli number B_n (B_1 = -1/2).

    Filled via the defining convolution sum_{k=0}^{n} C(n+1, k) B_k = 0; computing
    B_n caches every lower index, so the table grows monotonically.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n < len(_bern_cache):
        return _bern_cache[n]
    with _bern_lock:
        while len(_bern_cache) <= n:
            m = len(_bern_cache)
            if m > 1 and m % 2 == 1:
                _bern_cache.append(Fraction(0))
                continue
            acc = Fraction(0)
            for k in range(m):
                bk = _bern_cache[k]
                if bk:
                    acc += math.comb(m + 1, k) * bk
            _bern_cache.append(-acc / (m + 1))
    return _bern_cache[n]


def euler_number(n: int) -> int:
    """Exact Euler number E_n; odd indices vanish.

    Even indices satisfy sum_{k=0}^{m} C(2m, 2k) E_2k = 0 for m >= 1.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n % 2 == 1:
        return 0
    m = n // 2
    if m < len(_euler_cache):
        return _euler_cache[m]
    with _euler_lock:
        while len(_euler_cache) <= m:
            j = len(_euler_cache)
            acc = 0
            for k in range(j):
                acc += math.comb(2 * j, 2 * k) * _euler_cache[k]
            _euler_cache.append(-acc)
    return _euler_cache[m]


def harmonic(n: int) -> Fraction:
    """H_n = sum_{k<=n} 1/k as an exact rational (H_0 = 0)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    acc = Fraction(0)
    for k in range(1, n + 1):
        acc += Fraction(1, k)
    return acc


def harmonic_power(n: int, b: int) -> Fraction:
    """Generalized harmonic number H_n^(b) = sum_{k<=n} k^-b."""
    acc = Fraction(0)
    for k in range(1, n + 1):
        acc += Fraction(1, k**b)
    return acc


def inv_binomial_sum(n: int, m: int) -> Fraction:
    """sum_{k=0}^{m} (-1)^k / C(n, k), exactly.

    For m = n the sum is 0 for odd n and 2(n+1)/(n+2) for even n.
    """
    if not 0 <= m <= n:
        raise ValueError("need 0 <= m <= n")
    acc = Fraction(0)
    for k in range(m + 1):
        term = Fraction(1, math.comb(n, k))
        acc += -term if k % 2 else term
    return acc


def alternating_binom_sum(n: int) -> int:
    """sum_{k=0}^{n} (-1)^k C(n+k, k); the finite-sum side of the 2F1 value below."""
    acc = 0
    for k in range(n + 1):
        t = math.comb(n + k, k)
        acc += -t if k % 2 else t
    return acc


def hyp2f1_special(n: int) -> Fraction:
    """2F1(1, 2n+2; n+2; -1) as an exact rational.

    Defined through the finite-sum characterization
    (-1)^(n+1) C(2n+1, n) F = 2^(-n-1) - sum_{k=0}^{n} (-1)^k C(n+k, k),
    never by summing the series at -1 (which is only Abel-convergent).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rhs = Fraction(1, 2 ** (n + 1)) - alternating_binom_sum(n)
    sign = 1 if (n + 1) % 2 == 0 else -1
    return sign * rhs / math.comb(2 * n + 1, n)
