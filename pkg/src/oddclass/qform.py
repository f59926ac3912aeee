"""Positive definite binary quadratic forms and the form class group.

The group of primitive reduced forms of a fundamental discriminant ``D < 0``
is the ideal class group of ``Q(sqrt(D))``; this module is the class-group
oracle the certifier is checked against.
"""

from dataclasses import dataclass
from math import gcd

from . import _kernels
from .arith import factorize, is_squarefree
from .errors import BoundExceeded, DiscriminantMismatch

DEFAULT_ENUMERATION_BOUND = 10**8


@dataclass(frozen=True, order=True)
class QForm:
    """The form ``a x^2 + b x y + c y^2``."""

    a: int
    b: int
    c: int

    def __post_init__(self):
        if self.a <= 0:
            raise ValueError(f"{self} is not positive definite")
        if self.b * self.b - 4 * self.a * self.c >= 0:
            raise ValueError(f"{self} has non-negative discriminant")
        if gcd(gcd(self.a, self.b), self.c) != 1:
            raise ValueError(f"{self} is not primitive")

    def __repr__(self):
        return f"QForm({self.a}, {self.b}, {self.c})"

    def __iter__(self):
        return iter((self.a, self.b, self.c))

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def inverse(self) -> "QForm":
        return reduce(QForm(self.a, -self.b, self.c))

    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not (abs(b) <= a <= c):
            return False
        return b >= 0 or (-b != a and a != c)

    def as_list(self) -> list[int]:
        return [self.a, self.b, self.c]


@dataclass(frozen=True)
class ClassGroup:
    D: int
    reduced_forms: tuple[QForm, ...]

    @property
    def h(self) -> int:
        return len(self.reduced_forms)

    def __contains__(self, f):
        return f in self._index

    @property
    def _index(self):
        # frozen dataclass: cache through object.__setattr__
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = {f: i for i, f in enumerate(self.reduced_forms)}
            object.__setattr__(self, "_idx", idx)
        return idx

    def index(self, f: QForm) -> int:
        return self._index[reduce(f)]


def is_fundamental_discriminant(D: int) -> bool:
    if D >= 0:
        return False
    if D % 4 == 1:
        return is_squarefree(-D)
    if D % 4 == 0:
        e = -D // 4
        return e % 4 in (1, 2) and is_squarefree(e)
    return False


def fundamental_discriminant(d: int) -> int:
    """Discriminant of ``Q(sqrt(-d))`` for squarefree ``d > 0``."""
    return -d if d % 4 == 3 else -4 * d


def _normalize(a, b, c):
    # bring b into (-a, a]
    r = (a - b) // (2 * a)
    return a, b + 2 * r * a, a * r * r + b * r + c


def reduce(f: QForm) -> QForm:
    """The reduced form equivalent to ``f``."""
    a, b, c = _normalize(f.a, f.b, f.c)
    while a > c or (a == c and b < 0):
        s = (c + b) // (2 * c)
        a, b, c = c, -b + 2 * s * c, c * s * s - b * s + a
    if a == c and b < 0:
        b = -b
    return QForm(a, b, c)


def identity(D: int) -> QForm:
    """The principal form of discriminant ``D``."""
    if D % 4 == 0:
        return QForm(1, 0, -D // 4)
    if D % 4 == 1:
        return QForm(1, 1, (1 - D) // 4)
    raise ValueError(f"{D} is not a discriminant")


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def compose(f1: QForm, f2: QForm) -> QForm:
    """Reduced representative of the Dirichlet composite of two forms."""
    D = f1.discriminant
    if f2.discriminant != D:
        raise DiscriminantMismatch(f"{f1} has D={D}, {f2} has D={f2.discriminant}")
    a1, b1, _ = f1
    a2, b2, _ = f2
    s = (b1 + b2) // 2
    # e = gcd(a1, a2, s) = x*a1 + y*a2 + z*s
    g, u, v = _xgcd(a1, a2)
    e, w, z = _xgcd(g, s)
    x, y = w * u, w * v
    A = a1 * a2 // (e * e)
    B = (x * a1 * b2 + y * a2 * b1 + z * (b1 * b2 + D) // 2) // e
    B %= 2 * A
    C = (B * B - D) // (4 * A)
    return reduce(QForm(A, B, C))


def pow_class(f: QForm, e: int) -> QForm:
    """Reduced representative of the ``e``-th power of the class of ``f``."""
    if e < 0:
        raise ValueError("negative exponent")
    result = identity(f.discriminant)
    base = reduce(f)
    while e:
        if e & 1:
            result = compose(result, base)
        e >>= 1
        if e:
            base = compose(base, base)
    return result


def enumerate_class_group(D: int, bound: int = DEFAULT_ENUMERATION_BOUND) -> ClassGroup:
    """All primitive reduced forms of the fundamental discriminant ``D``.

    Raises BoundExceeded when ``|D|`` is above ``bound``.
    """
    if not is_fundamental_discriminant(D):
        raise ValueError(f"{D} is not a negative fundamental discriminant")
    if -D > bound:
        raise BoundExceeded(f"|D| = {-D} exceeds enumeration bound {bound}")
    rows = _kernels.reduced_forms_array(D)
    forms = sorted((QForm(int(a), int(b), int(c)) for a, b, c in rows),
                   key=lambda f: (f.a, abs(f.b), -f.b))
    return ClassGroup(D, tuple(forms))


def class_order(f: QForm, exponent_bound: int | None = None,
                bound: int = DEFAULT_ENUMERATION_BOUND) -> int:
    """Order of the class of ``f``.

    With ``exponent_bound`` (a known multiple of the order, e.g. the ``n`` of
    a field instance) no enumeration is needed.  Otherwise the class number is
    enumerated and used as the multiple.  If ``f`` does not die at
    ``exponent_bound`` we fall back to the class number.
    """
    ident = identity(f.discriminant)
    M = None
    if exponent_bound is not None and exponent_bound >= 1:
        if pow_class(f, exponent_bound) == ident:
            M = exponent_bound
    if M is None:
        M = enumerate_class_group(f.discriminant, bound).h
    order = M
    for q in factorize(M):
        while order % q == 0 and pow_class(f, order // q) == ident:
            order //= q
    return order

