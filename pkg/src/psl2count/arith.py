"""Integer arithmetic helpers: primality, factorization, divisor counts, prime sieves.

Everything here is exact and deterministic.  Primality testing uses a fixed
witness set that is proven correct for all inputs below 2**64, so no function
in this module accepts larger arguments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

U64_MAX = 2**64 - 1

# Strong-pseudoprime witnesses covering every n < 2**64 (the seven-base set
# found by Sinclair; verified minimal for this range).
_WITNESSES = (2, 325, 9375, 28178, 450775, 9780504, 1795265022)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic primality test for 0 <= n <= 2**64 - 1.

    >>> is_prime(1), is_prime(43), is_prime(8191)
    (False, True, True)
    """
    if n < 0 or n > U64_MAX:
        raise ValueError("is_prime is only deterministic for 0 <= n < 2**64")
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for a in _WITNESSES:
        a %= n
        if a == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Factorization:
    """Prime factorization n = prod(p**e) with factors sorted by prime."""

    n: int
    factors: tuple[tuple[int, int], ...]

    def tau(self) -> int:
        out = 1
        for _, e in self.factors:
            out *= e + 1
        return out

    def big_omega(self) -> int:
        return sum(e for _, e in self.factors)

    def divisors(self) -> list[int]:
        divs = [1]
        for p, e in self.factors:
            pk = 1
            ext = []
            for _ in range(e):
                pk *= p
                ext.extend(d * pk for d in divs)
            divs.extend(ext)
        divs.sort()
        return divs


def _trial_primes(limit: int = 1000) -> tuple[int, ...]:
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = bytes(len(flags[p * p :: p]))
    return tuple(i for i in range(limit + 1) if flags[i])


_TRIAL = _trial_primes()


def _brent_rho(n: int) -> int:
    """Return a nontrivial factor of odd composite n (Brent's cycle variant).

    The polynomial offset c is retried deterministically, so the whole
    factorization pipeline is reproducible run to run.
    """
    for c in range(1, 64):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"rho failed to split {n}")  # unreachable for n < 2**64


def factorize(n: int) -> Factorization:
    """Factor a positive 64-bit integer.

    Trial division peels small primes, Brent's rho splits what remains.
    factorize(1) has an empty factor tuple.

    >>> factorize(18).factors
    ((2, 1), (3, 2))
    """
    if n < 1 or n > U64_MAX:
        raise ValueError("factorize requires 1 <= n < 2**64")
    counts: dict[int, int] = {}
    m = n
    for p in _TRIAL:
        if p * p > m:
            break
        while m % p == 0:
            counts[p] = counts.get(p, 0) + 1
            m //= p
    stack = [m] if m > 1 else []
    while stack:
        v = stack.pop()
        if v == 1:
            continue
        if is_prime(v):
            counts[v] = counts.get(v, 0) + 1
            continue
        d = _brent_rho(v)
        stack.append(d)
        stack.append(v // d)
    return Factorization(n, tuple(sorted(counts.items())))


def tau(n: int) -> int:
    """Number of positive divisors of n."""
    return factorize(n).tau()


def big_omega(n: int) -> int:
    """Number of prime factors of n counted with multiplicity."""
    return factorize(n).big_omega()


def divisors(n: int) -> list[int]:
    """Sorted list of all positive divisors of n."""
    return factorize(n).divisors()


def two_adic_valuation(n: int) -> int:
    """Exponent of the largest power of two dividing n (n >= 1)."""
    if n < 1:
        raise ValueError("two_adic_valuation requires n >= 1")
    return (n & -n).bit_length() - 1


def primes_in_range(lo: int, hi: int, *, segment_bytes: int = 64 * 1024 * 1024) -> list[int]:
    """All primes p with lo <= p <= hi, ascending.

    Segmented sieve over odd numbers only; each segment's mask stays below
    segment_bytes, so memory is bounded regardless of the span.
    """
    import numpy as np

    if lo > hi:
        raise ValueError("primes_in_range requires lo <= hi")
    if hi > U64_MAX:
        raise ValueError("primes_in_range requires hi < 2**64")
    if hi < 2:
        return []
    lo = max(lo, 2)
    out: list[int] = []
    if lo <= 2:
        out.append(2)

    root = math.isqrt(hi)
    base_mask = np.ones(root + 1, dtype=bool)
    base_mask[:2] = False
    for p in range(2, math.isqrt(root) + 1):
        if base_mask[p]:
            base_mask[p * p :: p] = False
    base = np.flatnonzero(base_mask)
    base_odd = [int(p) for p in base if p > 2]

    # Sieve only odd values; index i in a segment represents seg_lo + 2*i.
    seg_len = max(segment_bytes, 1 << 16)
    start = max(lo, 3) | 1
    while start <= hi:
        seg_hi = min(start + 2 * (seg_len - 1), hi)
        count = (seg_hi - start) // 2 + 1
        mask = np.ones(count, dtype=bool)
        for p in base_odd:
            first = max(p * p, ((start + p - 1) // p) * p)
            if first % 2 == 0:
                first += p
            if first > seg_hi:
                continue
            mask[(first - start) // 2 :: p] = False
        out.extend((start + 2 * np.flatnonzero(mask)).tolist())
        start = seg_hi + 2
    return out
