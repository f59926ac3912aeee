"""Field instances K = Q(sqrt(k^2 - p^n)) and arithmetic in their integer rings."""

from dataclasses import dataclass
from math import gcd, isqrt

from .arith import factorize, primality
from .errors import (
    DegenerateField,
    InternalInvariantViolation,
    InvalidK,
    InvalidN,
    InvalidP,
    NotCoprime,
    SizeViolation,
)
from .qform import QForm, fundamental_discriminant, reduce


@dataclass(frozen=True)
class FieldInstance:
    k: int
    p: int
    n: int
    N: int  # p^n - k^2 = m^2 d
    d: int
    m: int
    D: int
    probable_prime: bool = False

    @property
    def alpha(self) -> "AlgebraicInt":
        return AlgebraicInt(self.k, self.m, self.d)

    def as_dict(self) -> dict:
        return {"k": self.k, "p": self.p, "n": self.n, "d": self.d, "m": self.m, "D": self.D}


@dataclass(frozen=True)
class AlgebraicInt:
    """``x + y sqrt(-d)``, or ``(x + y sqrt(-d)) / 2`` when ``halved``."""

    x: int
    y: int
    d: int
    halved: bool = False

    def __post_init__(self):
        if self.halved and not (self.d % 4 == 3 and self.x % 2 == 1 and self.y % 2 == 1):
            raise ValueError("half-integral element needs d = 3 mod 4 and odd x, y")

    @classmethod
    def _from_doubled(cls, X, Y, d):
        # value (X + Y sqrt(-d)) / 2
        if X % 2 == 0 and Y % 2 == 0:
            return cls(X // 2, Y // 2, d)
        return cls(X, Y, d, True)

    def _doubled(self):
        return (self.x, self.y) if self.halved else (2 * self.x, 2 * self.y)

    def __mul__(self, other: "AlgebraicInt") -> "AlgebraicInt":
        if other.d != self.d:
            raise ValueError("elements of different fields")
        X1, Y1 = self._doubled()
        X2, Y2 = other._doubled()
        d = self.d
        return AlgebraicInt._from_doubled((X1 * X2 - d * Y1 * Y2) // 2, (X1 * Y2 + X2 * Y1) // 2, d)

    def __neg__(self):
        return AlgebraicInt(-self.x, -self.y, self.d, self.halved)

    def __str__(self):
        s = f"{self.x} + {self.y}*sqrt(-{self.d})"
        return f"({s})/2" if self.halved else s


def norm(z: AlgebraicInt) -> int:
    v = z.x * z.x + z.y * z.y * z.d
    return v // 4 if z.halved else v


def alg_pow(z: AlgebraicInt, e: int) -> AlgebraicInt:
    if e < 0:
        raise ValueError("negative exponent")
    result = AlgebraicInt(1, 0, z.d)
    while e:
        if e & 1:
            result = result * z
        e >>= 1
        if e:
            z = z * z
    return result


def squarefree_decompose(N: int) -> tuple[int, int]:
    """Split ``N`` as ``m^2 * d`` with ``d`` squarefree; returns ``(m, d)``."""
    if N < 1:
        raise ValueError("squarefree_decompose needs N >= 1")
    m = d = 1
    for q, e in factorize(N).items():
        m *= q ** (e // 2)
        if e % 2:
            d *= q
    return m, d


def build_instance(k: int, p: int, n: int) -> FieldInstance:
    """Validate ``(k, p, n)`` and derive ``d``, ``m`` and the discriminant."""
    p_is_prime, proven = primality(p)
    if p < 3 or not p_is_prime:
        raise InvalidP(f"p = {p} is not an odd prime")
    if n < 3 or n % 2 == 0:
        raise InvalidN(f"n = {n} must be odd and >= 3")
    if k < 1:
        raise InvalidK(f"k = {k} must be positive")
    if gcd(k, p) != 1:
        raise NotCoprime(f"gcd(k, p) = {gcd(k, p)}")
    N = p**n - k * k
    if N <= 0:
        raise SizeViolation(f"k^2 = {k * k} >= p^n = {p**n}")
    m, d = squarefree_decompose(N)
    if d <= 3:
        raise DegenerateField(f"squarefree part d = {d} <= 3 (N = {N} = {m}^2 * {d})")
    return FieldInstance(k, p, n, N, d, m, fundamental_discriminant(d), not proven)


def ideal_above_p(inst: FieldInstance) -> QForm:
    """Reduced form of the class of the ideal (p, k + m sqrt(-d)).

    In that ideal sqrt(-d) = -k/m mod p; the form (p, b, c) corresponds to the
    ideal pZ + ((-b + sqrt(D))/2)Z, so b must lift -2k/m (D even) or -k/m (D odd).
    """
    p, d, D = inst.p, inst.d, inst.D
    r = inst.k * pow(inst.m, -1, p) % p
    if (r * r + d) % p:
        raise InternalInvariantViolation(f"r^2 != -d mod p for {inst}")
    s = (-r) % p
    if D % 2 == 0:
        b = 2 * s
    else:
        b = s if s % 2 else s + p
    if (b * b - D) % (4 * p):
        raise InternalInvariantViolation(f"b = {b} is not a square root of D mod 4p")
    return reduce(QForm(p, b, (b * b - D) // (4 * p)))


def _elements_of_norm(P: int, d: int):
    """All ring integers of ``Q(sqrt(-d))`` with norm ``P``."""
    if d % 4 == 3:
        target = 4 * P
        for y in range(-isqrt(target // d), isqrt(target // d) + 1):
            rest = target - d * y * y
            x = isqrt(rest)
            if x * x != rest or (x - y) % 2:
                continue
            for sx in {x, -x}:
                yield AlgebraicInt._from_doubled(sx, y, d)
    else:
        for y in range(-isqrt(P // d), isqrt(P // d) + 1):
            rest = P - d * y * y
            x = isqrt(rest)
            if x * x == rest:
                for sx in {x, -x}:
                    yield AlgebraicInt(sx, y, d)


def qth_root(inst: FieldInstance, q: int) -> AlgebraicInt | None:
    """Some ``beta`` with ``beta^q = +-alpha``, found by exhausting norm p^(n/q)."""
    if inst.n % q:
        raise ValueError(f"q = {q} does not divide n = {inst.n}")
    alpha = inst.alpha
    targets = {alpha, -alpha}
    for beta in _elements_of_norm(inst.p ** (inst.n // q), inst.d):
        if alg_pow(beta, q) in targets:
            return beta
    return None


def is_qth_power(inst: FieldInstance, q: int) -> bool:
    return qth_root(inst, q) is not None
