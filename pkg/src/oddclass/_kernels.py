"""Hot integer kernels with a numba path and a pure-numpy fallback.

The backend is picked once at import time.  Set ``ODDCLASS_NO_NUMBA=1`` to
force the numpy implementations (useful for debugging and for the
benchmark).  Both implementations are always importable under explicit
names so tests can compare them.

All kernels work on int64 and the public wrappers reject inputs that could
overflow.
"""

import os

import numpy as np

INT64_SAFE = 1 << 62

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("ODDCLASS_NO_NUMBA", "") not in ("1", "true", "yes")
BACKEND = "numba" if USE_NUMBA else "numpy"


# --------------------------------------------------------------------------
# reduced form enumeration


def _reduced_forms_numpy(D):
    absd = -D
    amax = int(np.sqrt(absd / 3.0)) + 1
    while 3 * amax * amax > absd:
        amax -= 1
    par = D & 1
    chunks = []
    for a in range(1, amax + 1):
        # b in (-a, a], b = D mod 2
        start = -a + 1
        if (start - par) & 1:
            start += 1
        b = np.arange(start, a + 1, 2, dtype=np.int64)
        num = b * b - D
        four_a = 4 * a
        keep = num % four_a == 0
        b = b[keep]
        c = num[keep] // four_a
        ok = c >= a
        ok &= ~((c == a) & (b < 0))
        ok &= np.gcd(np.gcd(a, b), c) == 1
        if ok.any():
            rows = np.empty((int(ok.sum()), 3), dtype=np.int64)
            rows[:, 0] = a
            rows[:, 1] = b[ok]
            rows[:, 2] = c[ok]
            chunks.append(rows)
    if not chunks:
        return np.empty((0, 3), dtype=np.int64)
    return np.concatenate(chunks)


def _trial_divide_numpy(n, primes):
    """Divide out every prime of ``primes`` from ``n``; return (factors, exps, rest)."""
    lim = int(np.sqrt(float(n))) + 2
    cand = primes[: int(np.searchsorted(primes, lim, side="right"))]
    hits = cand[n % cand == 0]
    exps = np.zeros(len(hits), dtype=np.int64)
    for i, p in enumerate(hits.tolist()):
        while n % p == 0:
            n //= p
            exps[i] += 1
    return hits.astype(np.int64), exps, n


if USE_NUMBA:

    @numba.njit(cache=True, nogil=True)
    def _gcd(a, b):
        if a < 0:
            a = -a
        if b < 0:
            b = -b
        while b:
            a, b = b, a % b
        return a

    @numba.njit(cache=True, nogil=True)
    def _reduced_forms_numba(D):
        absd = -D
        amax = np.int64(np.sqrt(absd / 3.0)) + 1
        while 3 * amax * amax > absd:
            amax -= 1
        par = D & 1
        cap = 64
        out = np.empty((cap, 3), dtype=np.int64)
        h = 0
        for a in range(1, amax + 1):
            four_a = 4 * a
            start = -a + 1
            if (start - par) & 1:
                start += 1
            for b in range(start, a + 1, 2):
                num = b * b - D
                if num % four_a:
                    continue
                c = num // four_a
                if c < a or (c == a and b < 0):
                    continue
                if _gcd(_gcd(a, b), c) != 1:
                    continue
                if h == cap:
                    cap *= 2
                    grown = np.empty((cap, 3), dtype=np.int64)
                    grown[:h] = out[:h]
                    out = grown
                out[h, 0] = a
                out[h, 1] = b
                out[h, 2] = c
                h += 1
        return out[:h].copy()

    @numba.njit(cache=True, nogil=True)
    def _trial_divide_numba(n, primes):
        fac = np.empty(64, dtype=np.int64)
        exps = np.zeros(64, dtype=np.int64)
        cnt = 0
        for i in range(primes.shape[0]):
            p = primes[i]
            if p * p > n:
                break
            if n % p == 0:
                fac[cnt] = p
                while n % p == 0:
                    n //= p
                    exps[cnt] += 1
                cnt += 1
        return fac[:cnt].copy(), exps[:cnt].copy(), n

else:  # pragma: no cover
    _reduced_forms_numba = None
    _trial_divide_numba = None


def reduced_forms_array(D: int, backend: str | None = None) -> np.ndarray:
    """All primitive reduced forms of negative discriminant ``D`` as an (h, 3) array."""
    if not (0 < -D < INT64_SAFE):
        raise ValueError(f"discriminant {D} outside int64 kernel range")
    backend = backend or BACKEND
    if backend == "numba":
        if _reduced_forms_numba is None:
            raise RuntimeError("numba backend unavailable")
        return _reduced_forms_numba(np.int64(D))
    return _reduced_forms_numpy(int(D))


def trial_divide(n: int, primes: np.ndarray, backend: str | None = None):
    """Strip all factors from ``primes`` off ``n`` (``n`` must fit in int64)."""
    if not (0 < n < INT64_SAFE):
        raise ValueError("trial_divide kernel needs 0 < n < 2**62")
    backend = backend or BACKEND
    if backend == "numba":
        if _trial_divide_numba is None:
            raise RuntimeError("numba backend unavailable")
        fac, exps, rest = _trial_divide_numba(np.int64(n), primes)
    else:
        fac, exps, rest = _trial_divide_numpy(int(n), primes)
    return [(int(p), int(e)) for p, e in zip(fac, exps)], int(rest)


def prime_sieve(limit: int) -> np.ndarray:
    """Primes up to ``limit`` inclusive (int64)."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    sieve[4::2] = False
    for i in range(3, int(limit**0.5) + 1, 2):
        if sieve[i]:
            sieve[i * i :: 2 * i] = False
    return np.flatnonzero(sieve).astype(np.int64)
