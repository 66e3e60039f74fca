"""Small integer helpers: factorisation, sieving, primitive roots, discrete logs."""

from functools import lru_cache
from math import gcd

import numpy as np


def factorize(n):
    """Return the prime factorisation of ``n >= 1`` as a sorted list of (p, k)."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            k = 0
            while n % d == 0:
                n //= d
                k += 1
            out.append((d, k))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def is_squarefree(n):
    return all(k == 1 for _, k in factorize(abs(n)))


def euler_phi(n):
    out = 1
    for p, k in factorize(n):
        out *= (p - 1) * p ** (k - 1)
    return out


def primes_up_to(n):
    """All primes ``<= n`` as an int64 array (sieve of Eratosthenes)."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    sieve[4::2] = False
    for p in range(3, int(n ** 0.5) + 1, 2):
        if sieve[p]:
            sieve[p * p::2 * p] = False
    return np.flatnonzero(sieve).astype(np.int64)


def first_primes(count):
    bound = 16
    while True:
        ps = primes_up_to(bound)
        if len(ps) >= count:
            return [int(p) for p in ps[:count]]
        bound *= 2


def valuation(n, p):
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@lru_cache(maxsize=None)
def primitive_root(p):
    """Smallest primitive root modulo an odd prime ``p`` that also generates mod p^2."""
    phi = p - 1
    qs = [q for q, _ in factorize(phi)]
    g = 2
    while True:
        if all(pow(g, phi // q, p) != 1 for q in qs) and pow(g, p - 1, p * p) != 1:
            return g
        g += 1


@lru_cache(maxsize=64)
def dlog_table(base, modulus, order):
    """Array ``t`` with ``t[base**k % modulus] = k`` for ``0 <= k < order``; -1 elsewhere."""
    table = np.full(modulus, -1, dtype=np.int64)
    x = 1
    for k in range(order):
        table[x] = k
        x = x * base % modulus
    table.flags.writeable = False
    return table


def crt_lift(residue, modulus, total):
    """The integer in [0, total) congruent to ``residue`` mod ``modulus`` and to 1 mod ``total // modulus``."""
    other = total // modulus
    if other == 1:
        return residue % modulus
    if gcd(modulus, other) != 1:
        raise ValueError("moduli must be coprime")
    inv = pow(other, -1, modulus)
    inv_m = pow(modulus, -1, other)
    return (residue * other * inv + 1 * modulus * inv_m) % total
