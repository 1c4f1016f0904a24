"""Integer number theory helpers: primality, prime lists, square roots mod p,
factorization.

Factorization is exact: trial division by small primes, a deterministic
strong-pseudoprime test on the cofactor, then Brent's variant of Pollard rho
to split whatever composite remains.
"""

from __future__ import annotations

import math
from collections import Counter
from functools import lru_cache

from .errors import DomainError, NotPrimeError

# Trial division stops here; beyond it cofactors go to Miller-Rabin / rho.
TRIAL_BOUND = 10_000

# Strong-pseudoprime bases that are deterministic for n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_DETERMINISTIC_LIMIT = 3_317_044_064_679_887_385_961_981


@lru_cache(maxsize=8)
def primes_up_to(n: int) -> tuple[int, ...]:
    """All primes p <= n, by a bytearray sieve of Eratosthenes."""
    if n < 2:
        return ()
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytes(len(range(p * p, n + 1, p)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def _strong_probable_prime(n: int, a: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    """Miller-Rabin with a fixed base set.

    Deterministic below 3.3e24, which covers every value this package
    produces at desk scale. Above that the answer is a strong probable prime
    to twelve bases.
    """
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    return all(_strong_probable_prime(n, a) for a in _MR_BASES)


def require_prime(n: int, what: str = "value") -> int:
    if not isinstance(n, int) or not is_prime(n):
        raise NotPrimeError(f"{what} must be prime, got {n!r}")
    return n


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p, in {-1, 0, 1}."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def sqrt_mod_prime(a: int, p: int) -> int | None:
    """A square root of a mod p (Tonelli-Shanks), or None if a is a nonresidue."""
    a %= p
    if p == 2 or a == 0:
        return a
    if legendre(a, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while legendre(z, p) != -1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def _brent_rho(n: int) -> int:
    """A nontrivial factor of the odd composite n."""
    if n % 2 == 0:
        return 2
    for c in range(1, n):
        y, r, q, g = 2, 1, 1, 1
        x = ys = y
        m = 128
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
    raise ArithmeticError(f"rho failed to split {n}")  # unreachable for composite n


def _split_large(n: int, out: Counter) -> None:
    if n == 1:
        return
    r = math.isqrt(n)
    if r * r == n:
        _split_large(r, out)
        _split_large(r, out)
        return
    if is_prime(n):
        out[n] += 1
        return
    f = _brent_rho(n)
    _split_large(f, out)
    _split_large(n // f, out)


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of |n| as an ascending {prime: exponent} dict."""
    if n == 0:
        raise DomainError("cannot factor 0")
    n = abs(n)
    out: Counter = Counter()
    for p in primes_up_to(TRIAL_BOUND):
        if p * p > n:
            break
        while n % p == 0:
            out[p] += 1
            n //= p
    if n > 1:
        if n <= TRIAL_BOUND * TRIAL_BOUND:
            out[n] += 1
        else:
            _split_large(n, out)
    return dict(sorted(out.items()))
