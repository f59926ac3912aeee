from math import gcd

import pytest

from oddclass import _kernels


def brute_reduced_forms(D):
    """Reduced forms by scanning a, b, c directly (no use of the kernels)."""
    out = set()
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c < a or gcd(gcd(a, b), c) != 1:
                continue
            if b < 0 and (-b == a or a == c):
                continue
            out.add((a, b, c))
        a += 1
    return out


BACKENDS = ["numpy"] + (["numba"] if _kernels.USE_NUMBA else [])


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


ACCEPTANCE_LINES = []


def pytest_runtest_logreport(report):
    crit = getattr(report, "criterion", None) or dict(report.user_properties).get("criterion")
    if crit and report.when == "call":
        status = "PASS" if report.passed else "FAIL"
        ACCEPTANCE_LINES.append(f"[{status}] criterion {crit}")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
