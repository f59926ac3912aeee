from math import gcd
import threading

import pytest

from oddclass.arith import primes_up_to
from oddclass.diophantine import (
    CONSISTENT,
    VIOLATION,
    DioSolution,
    exception_report,
    fibonacci,
    in_set_F,
    in_set_G,
    in_set_H,
    in_set_S,
    ljunggren_check,
    lucas,
    lucas_square_scan,
    proposition_pb_verdict,
    solve_eq1,
)


def naive_solutions(d, k, p, y_max):
    out = []
    for y in range(1, y_max + 1):
        x = 1
        while d * x * x + k * k <= p**y:
            if d * x * x + k * k == p**y:
                out.append((x, y))
            x += 1
    return out


@pytest.mark.parametrize("args, want", [
    ((2, 1, 3, 20), [(1, 1), (2, 2), (11, 5)]),
    ((23, 2, 3, 20), [(1, 3)]),
    ((5, 1, 7, 10), []),
])
def test_solve_examples(args, want):
    assert [(s.x, s.y) for s in solve_eq1(*args)] == want


@pytest.mark.parametrize("args", [(2, 1, 3, 12), (23, 2, 3, 12), (7, 1, 2, 20), (6, 1, 7, 5),
                                  (11, 3, 5, 7), (2, 5, 3, 12), (19, 7, 5, 8), (1, 2, 5, 6)])
def test_solve_matches_double_loop(args):
    assert [(s.x, s.y) for s in solve_eq1(*args)] == naive_solutions(*args)


def test_fibonacci_lucas_values():
    assert fibonacci(6) == 8 and lucas(3) == 4
    assert fibonacci(0) == 0 and lucas(0) == 2
    assert fibonacci(10) == 55 and lucas(10) == 123
    assert fibonacci(1) == 1 and lucas(1) == 1
    with pytest.raises(ValueError):
        fibonacci(-1)


def test_fibonacci_lucas_identities():
    for n in range(1, 201):
        assert lucas(n) == fibonacci(n - 1) + fibonacci(n + 1)
    assert all(fibonacci(n) < fibonacci(n + 1) for n in range(2, 400))
    assert all(lucas(n) < lucas(n + 1) for n in range(1, 400))
    assert fibonacci(1000) == fibonacci(999) + fibonacci(998)


def test_memo_concurrent_extension():
    results = []

    def work(n):
        results.append((n, fibonacci(n), lucas(n)))

    threads = [threading.Thread(target=work, args=(n,)) for n in range(1500, 1540)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    for n, f, l in results:
        assert l == fibonacci(n - 1) + fibonacci(n + 1)
        assert f == fibonacci(n - 1) + fibonacci(n - 2)


def test_set_F():
    assert in_set_F(8, 4, 3) == (4, -1)
    assert in_set_F(1, 4, 3) is None
    assert in_set_F(0, 0, 0) is None
    # witness re-substitution over every triple the definition produces
    for ell in range(2, 40):
        for eps in (-1, 1):
            if ell - 2 * eps < 1:
                continue
            triple = (fibonacci(ell - 2 * eps), lucas(ell + eps), fibonacci(ell))
            w = in_set_F(*triple)
            assert w is not None
            l2, e2 = w
            assert (fibonacci(l2 - 2 * e2), lucas(l2 + e2), fibonacci(l2)) == triple


def test_set_G():
    assert in_set_G(1, 11, 3) == 1
    assert in_set_G(1, 35, 3) == 2
    assert in_set_G(2, 11, 3) is None
    assert in_set_G(1, 12, 3) is None
    for p in (3, 5, 7):
        for r in range(1, 6):
            assert in_set_G(1, 4 * p**r - 1, p) == r


def test_set_H():
    assert in_set_H(1, 2, 3, 1) == (1, 1)
    assert in_set_H(2, 1, 3, 1) is None
    assert in_set_H(13, 3, 2, 4) is None
    # generate members from (D1, s, lambda) and check re-substitution
    found = 0
    for lam in (1, 2, 4):
        for D1 in range(1, 30):
            for s in range(1, 20):
                for sign in (1, -1):
                    D2 = 3 * D1 * s * s - sign * lam
                    if D2 < 1 or gcd(D1, D2) != 1:
                        continue
                    total = D1 * s * s + D2
                    if total % lam:
                        continue
                    v = total // lam
                    for p in primes_up_to(200):
                        if v % p:
                            continue
                        r = 0
                        while v % p == 0:
                            v //= p
                            r += 1
                        if v != 1 or D2 % p == 0 or D1 % p == 0:
                            break
                        w = in_set_H(D1, D2, p, lam)
                        assert w is not None
                        r2, s2 = w
                        assert D1 * s2 * s2 + D2 == lam * p**r2
                        assert 3 * D1 * s2 * s2 - D2 in (lam, -lam)
                        assert s2 <= s
                        found += 1
                        break
    assert found > 10


def test_set_S():
    assert in_set_S(1, 2, 1, 3)
    assert in_set_S(4, 13, 3, 2)
    assert not in_set_S(1, 13, 3, 2)
    assert sum(in_set_S(l, a, b, p) for l in (1, 2, 4) for a in range(1, 15)
               for b in range(1, 15) for p in range(1, 15)) == 7


def test_ljunggren():
    assert ljunggren_check(3, 5) == 11
    assert ljunggren_check(3, 3) is None
    assert ljunggren_check(7, 3) is None
    hits = [(y, n) for y in range(2, 51) for n in range(3, 16, 2) if ljunggren_check(y, n) is not None]
    assert hits == [(3, 5)]


def test_lucas_square_scan():
    assert lucas_square_scan(30) == [1, 3]
    assert lucas_square_scan(0) == []
    assert lucas_square_scan(3) == [1, 3]


def test_pb_verdict_examples():
    v = proposition_pb_verdict(2, 1, 3, 20)
    assert v.verdict == CONSISTENT and len(v.solutions) == 3 and v.report.in_S
    v = proposition_pb_verdict(23, 2, 3, 20)
    assert v.verdict == CONSISTENT and v.solutions == [DioSolution(1, 3)]
    v = proposition_pb_verdict(8, 2, 3, 20)
    assert v.verdict == CONSISTENT and v.report.in_F == (4, -1)


def test_pb_statement_has_a_counterexample():
    # 6*1^2 + 1 = 7 and 6*20^2 + 1 = 7^4, and (6, 1, 7) is in no exceptional set
    v = proposition_pb_verdict(6, 1, 7, 25)
    assert [(s.x, s.y) for s in v.solutions] == [(1, 1), (20, 4)]
    assert not v.report.exceptional
    assert v.verdict == VIOLATION


def test_exception_report_parity_rule():
    # p = 2 only counts for G/H when lambda = 2
    assert exception_report(1, 3, 2, 1).in_H is None
    rep = exception_report(1, 2, 3, 1)
    assert rep.in_H == (1, 1) and rep.exceptional
    with pytest.raises(ValueError):
        exception_report(1, 2, 3, 3)
