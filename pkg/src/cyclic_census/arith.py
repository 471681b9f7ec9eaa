"""Elementary number theory on small integers."""
from __future__ import annotations

from functools import lru_cache
from math import gcd

import numpy as np


@lru_cache(maxsize=None)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization as sorted (prime, exponent) pairs."""
    if n < 1:
        raise ValueError(f"factorize expects n >= 1, got {n}")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == ((n, 1),)


def euler_phi(m: int) -> int:
    if m < 1:
        raise ValueError(f"euler_phi expects m >= 1, got {m}")
    result = 1
    for p, e in factorize(m):
        result *= (p - 1) * p ** (e - 1)
    return result


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def divisor_count(n: int) -> int:
    count = 1
    for _, e in factorize(n):
        count *= e + 1
    return count


def omega(n: int) -> int:
    return len(factorize(n))


def mobius(n: int) -> int:
    f = factorize(n)
    if any(e > 1 for _, e in f):
        return 0
    return -1 if len(f) % 2 else 1


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def primes_up_to(bound: int) -> list[int]:
    """Sieve of Eratosthenes."""
    if bound < 2:
        return []
    sieve = np.ones(bound + 1, dtype=bool)
    sieve[:2] = False
    for i in range(2, int(bound**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = False
    return [int(x) for x in np.flatnonzero(sieve)]


def prime_power_part(n: int, p: int) -> int:
    k = 1
    while n % p == 0:
        n //= p
        k *= p
    return k


def multiplicative_order(r: int, m: int) -> int:
    """Order of r in (Z/m)^*; m == 1 gives 1."""
    if m == 1:
        return 1
    if gcd(r, m) != 1:
        raise ValueError(f"{r} is not a unit mod {m}")
    k, x = 1, r % m
    while x != 1:
        x = x * r % m
        k += 1
    return k
