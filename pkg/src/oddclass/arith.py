"""Primality testing and integer factorization.

Below 2**64 primality is decided by Miller-Rabin with a fixed witness set
that is known to be exact in that range.  Above it we run a BPSW test
(strong base-2 test plus a strong Lucas test); the result is then only a
probable prime, which :func:`primality` reports.

Factoring is trial division by primes below ``TRIAL_BOUND`` followed by
Brent's variant of Pollard rho on whatever cofactor remains.
"""

from functools import lru_cache
from math import gcd, isqrt
import random

from . import _kernels
from .errors import FactorizationFailure

TRIAL_BOUND = 10**6
RHO_ITERATIONS = 10**5

_MR_BASES_64 = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


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


def _jacobi(a: int, n: int) -> int:
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _strong_lucas_probable_prime(n: int) -> bool:
    # Selfridge parameters: first D in 5, -7, 9, -11, ... with (D/n) = -1
    D = 5
    while True:
        j = _jacobi(D, n)
        if j == -1:
            break
        if j == 0 and abs(D) != n:
            return False
        D = -D - 2 if D > 0 else -D + 2
        if D == 13 and isqrt(n) ** 2 == n:
            return False
    P, Q = 1, (1 - D) // 4

    d, s = n + 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1

    def half(x):
        if x % 2:
            x += n
        return (x // 2) % n

    U, V, Qk = 1, P, Q % n
    for bit in bin(d)[3:]:
        U, V = U * V % n, (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if bit == "1":
            U, V = half(P * U + V), half(D * U + P * V)
            Qk = Qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        V = (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if V == 0:
            return True
    return False


def primality(n: int) -> tuple[bool, bool]:
    """Return ``(is_prime, proven)``.

    ``proven`` is False only for numbers at or above 2**64 that pass BPSW.
    """
    if n < 2:
        return False, True
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p, True
    if n < 1 << 64:
        return all(_strong_probable_prime(n, a) for a in _MR_BASES_64), True
    ok = _strong_probable_prime(n, 2) and _strong_lucas_probable_prime(n)
    return ok, not ok


def is_prime(n: int) -> bool:
    return primality(n)[0]


@lru_cache(maxsize=1)
def _trial_primes():
    return _kernels.prime_sieve(TRIAL_BOUND)


def _brent_rho(n: int, max_iter: int, rng: random.Random) -> int | None:
    """One nontrivial factor of the odd composite ``n``, or None if the budget runs out."""
    for _ in range(8):
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        used = 0
        while g == 1 and used < max_iter:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            used += r
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if 1 < g < n:
            return g
    return None


def factorize(n: int, rho_iterations: int = RHO_ITERATIONS) -> dict[int, int]:
    """Prime factorization of ``n >= 1`` as ``{prime: exponent}``.

    Raises FactorizationFailure when a composite cofactor survives the rho budget.
    """
    if n < 1:
        raise ValueError("factorize needs n >= 1")
    out: dict[int, int] = {}
    if n < _kernels.INT64_SAFE:
        found, n = _kernels.trial_divide(n, _trial_primes())
    else:
        found = []
        for p in _trial_primes().tolist():
            if p * p > n:
                break
            if n % p == 0:
                e = 0
                while n % p == 0:
                    n //= p
                    e += 1
                found.append((p, e))
    out.update(found)
    if n == 1:
        return out

    rng = random.Random(n)
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if m < TRIAL_BOUND * TRIAL_BOUND or is_prime(m):
            # no factor below TRIAL_BOUND survives, so m < TRIAL_BOUND**2 is prime
            out[m] = out.get(m, 0) + 1
            continue
        r = isqrt(m)
        if r * r == m:
            stack += [r, r]
            continue
        f = _brent_rho(m, rho_iterations, rng)
        if f is None:
            raise FactorizationFailure(f"could not split {m} within {rho_iterations} rho iterations")
        stack += [f, m // f]
    return dict(sorted(out.items()))


def divisors(n: int) -> list[int]:
    """All positive divisors of ``n`` in ascending order."""
    divs = [1]
    for p, e in factorize(n).items():
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def prime_factors(n: int) -> list[int]:
    return list(factorize(n)) if n > 1 else []


def is_squarefree(n: int) -> bool:
    return all(e == 1 for e in factorize(n).values())


def primes_up_to(limit: int) -> list[int]:
    return _kernels.prime_sieve(limit).tolist()
