import numpy as np
import pytest

from oddclass import _kernels
from oddclass.arith import is_prime

from conftest import brute_reduced_forms

DISCS = [-3, -4, -7, -8, -15, -20, -23, -84, -227, -420, -1155, -3299, -4 * 10007]


@pytest.mark.parametrize("D", DISCS)
def test_reduced_forms_match_brute_force(D, backend):
    rows = _kernels.reduced_forms_array(D, backend)
    assert {tuple(int(v) for v in r) for r in rows} == brute_reduced_forms(D)
    assert len(rows) == len({tuple(r) for r in rows.tolist()})


@pytest.mark.skipif(not _kernels.USE_NUMBA, reason="numba disabled")
@pytest.mark.parametrize("D", [-99999787, -4 * 24999997, -5000011])
def test_backends_agree_on_large_discriminants(D):
    a = _kernels.reduced_forms_array(D, "numba")
    b = _kernels.reduced_forms_array(D, "numpy")
    assert sorted(map(tuple, a.tolist())) == sorted(map(tuple, b.tolist()))


def test_kernel_rejects_overflow():
    with pytest.raises(ValueError):
        _kernels.reduced_forms_array(-(1 << 63))
    with pytest.raises(ValueError):
        _kernels.reduced_forms_array(5)


def test_prime_sieve():
    primes = _kernels.prime_sieve(1000).tolist()
    assert primes == [n for n in range(1001) if is_prime(n)]
    assert _kernels.prime_sieve(1).size == 0


@pytest.mark.parametrize("n", [1, 2, 97, 2**40 - 87, 124, 600851475143, 999983 * 999979, 2**61 - 1, 3**35])
def test_trial_divide(n, backend):
    primes = _kernels.prime_sieve(10**6)
    fac, rest = _kernels.trial_divide(n, primes, backend)
    prod = rest
    for p, e in fac:
        assert n % p == 0
        prod *= p**e
    assert prod == n
    # whatever is left has no factor below the bound, and is 1 or prime
    assert rest == 1 or is_prime(rest) or rest > 10**12


def test_backend_flag_is_reported():
    assert _kernels.BACKEND in ("numba", "numpy")
    assert isinstance(_kernels.trial_divide(12, np.array([2, 3], dtype=np.int64))[0], list)


def test_env_flag_selects_numpy():
    import os
    import subprocess
    import sys

    env = dict(os.environ, ODDCLASS_NO_NUMBA="1")
    r = subprocess.run([sys.executable, "-c", "import oddclass; print(oddclass.BACKEND)"],
                       capture_output=True, text=True, env=env)
    assert r.stdout.strip() == "numpy"
