"""Bounded solving of d x^2 + k^2 = p^y and the Bugeaud-Shorey exceptional sets.

lambda is always carried as ``lambda_sq`` in {1, 2, 4} so everything stays
integral.
"""

from dataclasses import dataclass, field
from math import gcd, isqrt
import threading

LAMBDA_SQ = (1, 2, 4)

# (lambda^2, D1, D2, p)
EXCEPTIONAL_S = frozenset({
    (4, 13, 3, 2),
    (2, 7, 11, 3),
    (1, 2, 1, 3),
    (4, 7, 1, 2),
    (2, 1, 1, 5),
    (2, 1, 1, 13),
    (4, 1, 3, 7),
})


def _is_square(v: int) -> bool:
    return v >= 0 and isqrt(v) ** 2 == v


@dataclass(frozen=True)
class DioSolution:
    x: int
    y: int


def solve_eq1(d: int, k: int, p: int, y_max: int) -> list[DioSolution]:
    """All positive (x, y) with d x^2 + k^2 = p^y and y <= y_max, ascending in y."""
    out = []
    py = 1
    for y in range(1, y_max + 1):
        py *= p
        rest = py - k * k
        if rest <= 0 or rest % d:
            continue
        q = rest // d
        if _is_square(q):
            out.append(DioSolution(isqrt(q), y))
    return out


class _SequenceTable:
    """Append-only memo of Fibonacci and Lucas numbers.

    Reads of already filled entries take no lock; extension is serialized.
    """

    def __init__(self, prefill=256):
        self._lock = threading.Lock()
        self._fib = [0, 1]
        self._luc = [2, 1]
        self._extend(prefill)

    def _extend(self, upto):
        with self._lock:
            fib, luc = self._fib, self._luc
            while len(fib) <= upto:
                fib.append(fib[-1] + fib[-2])
                luc.append(luc[-1] + luc[-2])

    def fib(self, n):
        if n >= len(self._fib):
            self._extend(n)
        return self._fib[n]

    def lucas(self, n):
        if n >= len(self._luc):
            self._extend(n)
        return self._luc[n]


_TABLE = _SequenceTable()


def fibonacci(n: int) -> int:
    if n < 0:
        raise ValueError("index must be >= 0")
    return _TABLE.fib(n)


def lucas(n: int) -> int:
    if n < 0:
        raise ValueError("index must be >= 0")
    return _TABLE.lucas(n)


def in_set_F(D1: int, D2: int, p: int) -> tuple[int, int] | None:
    """(l, eps) with F_{l-2eps} = D1, L_{l+eps} = D2, F_l = p, l >= 2; smallest l wins."""
    if p < 1:
        return None
    ell = 2
    while fibonacci(ell) <= p:
        if fibonacci(ell) == p:
            for eps in (-1, 1):
                j = ell - 2 * eps
                if j >= 1 and fibonacci(j) == D1 and lucas(ell + eps) == D2:
                    return ell, eps
        ell += 1
    return None


def in_set_G(D1: int, D2: int, p: int) -> int | None:
    """r >= 1 with D1 = 1 and D2 = 4 p^r - 1."""
    if D1 != 1 or p < 2 or (D2 + 1) % 4:
        return None
    v, r = (D2 + 1) // 4, 0
    while v > 1 and v % p == 0:
        v //= p
        r += 1
    return r if v == 1 and r >= 1 else None


def in_set_H(D1: int, D2: int, p: int, lambda_sq: int = 1,
             search_bound: int | None = None) -> tuple[int, int] | None:
    """Least (r, s) with D1 s^2 + D2 = lambda^2 p^r and 3 D1 s^2 - D2 = +-lambda^2."""
    if lambda_sq not in LAMBDA_SQ:
        raise ValueError("lambda_sq must be 1, 2 or 4")
    if min(D1, D2, p) < 1 or gcd(D1, D2) != 1 or gcd(D1, p) != 1 or gcd(D2, p) != 1:
        return None
    if p < 2:
        return None
    found = []
    for rhs in (D2 - lambda_sq, D2 + lambda_sq):
        if rhs <= 0 or rhs % (3 * D1):
            continue
        s2 = rhs // (3 * D1)
        if not _is_square(s2):
            continue
        s = isqrt(s2)
        if search_bound is not None and s > search_bound:
            continue
        total = D1 * s2 + D2
        if total % lambda_sq:
            continue
        v, r = total // lambda_sq, 0
        while v > 1 and v % p == 0:
            v //= p
            r += 1
        if v == 1 and r >= 1:
            found.append((s, r))
    if not found:
        return None
    s, r = min(found)
    return r, s


def in_set_S(lambda_sq: int, D1: int, D2: int, p: int) -> bool:
    return (lambda_sq, D1, D2, p) in EXCEPTIONAL_S


def ljunggren_check(y: int, n: int) -> int | None:
    """x with (y^n - 1)/(y - 1) = x^2, if there is one."""
    if y <= 1:
        raise ValueError("y must exceed 1")
    v = (y**n - 1) // (y - 1)
    return isqrt(v) if _is_square(v) else None


def lucas_square_scan(ell_max: int) -> list[int]:
    return [ell for ell in range(ell_max + 1) if _is_square(lucas(ell))]


@dataclass(frozen=True)
class ExceptionReport:
    D1: int
    D2: int
    p: int
    lambda_sq: int
    in_S: bool
    in_F: tuple[int, int] | None
    in_G: int | None
    in_H: tuple[int, int] | None

    @property
    def exceptional(self) -> bool:
        return self.in_S or any(w is not None for w in (self.in_F, self.in_G, self.in_H))

    def to_dict(self) -> dict:
        return {
            "triple": [self.D1, self.D2, self.p],
            "lambda_sq": self.lambda_sq,
            "in_S": self.in_S,
            "in_F": list(self.in_F) if self.in_F else None,
            "in_G": self.in_G,
            "in_H": list(self.in_H) if self.in_H else None,
            "exceptional": self.exceptional,
        }


def exception_report(D1: int, D2: int, p: int, lambda_sq: int = 1,
                     odd_p_required: bool | None = None) -> ExceptionReport:
    """Membership of (D1, D2, p) in every exceptional set for one lambda.

    G and H ask for an odd prime p unless lambda = 2; pass ``odd_p_required``
    to override that default.
    """
    if lambda_sq not in LAMBDA_SQ:
        raise ValueError("lambda_sq must be 1, 2 or 4")
    if odd_p_required is None:
        odd_p_required = lambda_sq != 4
    p_ok = not (odd_p_required and p % 2 == 0)
    return ExceptionReport(
        D1, D2, p, lambda_sq,
        in_S=in_set_S(lambda_sq, D1, D2, p),
        in_F=in_set_F(D1, D2, p),
        in_G=in_set_G(D1, D2, p) if p_ok else None,
        in_H=in_set_H(D1, D2, p, lambda_sq) if p_ok else None,
    )


CONSISTENT = "CONSISTENT"
VIOLATION = "VIOLATION"


@dataclass(frozen=True)
class PBVerdict:
    d: int
    k: int
    p: int
    y_max: int
    solutions: list[DioSolution] = field(default_factory=list)
    report: ExceptionReport | None = None
    verdict: str = CONSISTENT

    def to_dict(self) -> dict:
        return {
            "d": self.d, "k": self.k, "p": self.p, "y_max": self.y_max,
            "solutions": [[s.x, s.y] for s in self.solutions],
            "exceptional": self.report.to_dict() if self.report else None,
            "verdict": self.verdict,
        }


def proposition_pb_verdict(d: int, k: int, p: int, y_max: int) -> PBVerdict:
    """Check that d x^2 + k^2 = p^y has at most one solution unless (d, k^2, p) is exceptional."""
    sols = solve_eq1(d, k, p, y_max)
    report = exception_report(d, k * k, p, 1)
    ok = len(sols) <= 1 or report.exceptional
    return PBVerdict(d, k, p, y_max, sols, report, CONSISTENT if ok else VIOLATION)
