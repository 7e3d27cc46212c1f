"""Exact arithmetic over Q and real quadratic fields Q(sqrt d).

Rationals are :class:`fractions.Fraction`.  Elements of Q(sqrt d) are
:class:`QuadElem` values ``a + b*sqrt(d)`` read under the real embedding
with ``sqrt(d) > 0``; every sign, comparison and absolute value in the
package goes through that embedding.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from numbers import Rational
from typing import Optional, Union

__all__ = [
    "FactorizationError",
    "FieldDesc",
    "QQ",
    "QuadElem",
    "as_fraction",
    "factor_smooth",
    "is_positive_embedded",
    "is_square_rational",
    "qr_mod_p",
    "quad_arith",
    "sqrt_in_field",
    "squarefree_decomposition",
]

DEFAULT_FACTOR_BOUND = 10**6

Number = Union[int, Fraction, "QuadElem"]


class FactorizationError(ValueError):
    """Trial division left a cofactor that could not be proven prime."""

    def __init__(self, n: int, cofactor: int, bound: int):
        super().__init__(
            f"could not factor {n}: cofactor {cofactor} has no prime factor "
            f"<= {bound} and exceeds bound**2"
        )
        self.n = n
        self.cofactor = cofactor
        self.bound = bound


def as_fraction(q) -> Fraction:
    if isinstance(q, Fraction):
        return q
    if isinstance(q, (int, Rational)):
        return Fraction(q)
    if isinstance(q, str):
        return Fraction(q)
    raise TypeError(f"not an exact rational: {q!r}")


def factor_smooth(n: int, bound: int = DEFAULT_FACTOR_BOUND) -> list[tuple[int, int]]:
    """Factor ``n >= 1`` by trial division up to ``bound``.

    A leftover cofactor is accepted when trial division already passed its
    square root (it is then prime); otherwise :class:`FactorizationError`.

    >>> factor_smooth(507)
    [(3, 1), (13, 2)]
    """
    if n < 1:
        raise ValueError(f"factor_smooth needs n >= 1, got {n}")
    out: list[tuple[int, int]] = []
    m = n
    p = 2
    while p <= bound and p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if m > 1:
        if p * p > m:
            out.append((m, 1))
        else:
            raise FactorizationError(n, m, bound)
    return out


def squarefree_decomposition(n: int) -> tuple[int, int]:
    """Return ``(core, k)`` with ``n = core * k**2`` and ``core`` square-free (sign kept)."""
    if n == 0:
        raise ValueError("0 has no square-free part")
    sign = -1 if n < 0 else 1
    core, k = 1, 1
    for p, e in factor_smooth(abs(n)):
        if e % 2:
            core *= p
        k *= p ** (e // 2)
    return sign * core, k


def is_squarefree(n: int) -> bool:
    return n != 0 and all(e == 1 for _, e in factor_smooth(abs(n)))


def _is_odd_prime(p: int) -> bool:
    if p < 3 or p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def qr_mod_p(a: int, p: int) -> bool:
    """Euler's criterion: is ``a`` a nonzero square modulo the odd prime ``p``."""
    if not _is_odd_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    if a % p == 0:
        raise ValueError(f"{a} is divisible by {p}")
    return pow(a, (p - 1) // 2, p) == 1


def is_square_rational(q) -> Optional[Fraction]:
    q = as_fraction(q)
    if q < 0:
        return None
    num, den = q.numerator, q.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True)
class FieldDesc:
    """Either Q (``d is None``) or the real quadratic field Q(sqrt d)."""

    d: Optional[int] = None

    def __post_init__(self):
        if self.d is None:
            return
        if not isinstance(self.d, int) or self.d < 2 or not is_squarefree(self.d):
            raise ValueError(f"Q(sqrt {self.d}) needs a square-free d >= 2")

    @classmethod
    def real_quadratic(cls, d: int) -> "FieldDesc":
        """Q(sqrt d) with ``d`` reduced by its square part; a square ``d`` is an error."""
        core, _ = squarefree_decomposition(d)
        if core < 2:
            raise ValueError(f"sqrt({d}) does not generate a real quadratic field")
        return cls(core)

    @property
    def kind(self) -> str:
        return "Rationals" if self.d is None else "RealQuadratic"

    @property
    def is_rational(self) -> bool:
        return self.d is None

    def __call__(self, a=0, b=0) -> "QuadElem":
        return QuadElem(a, b, self)

    def sqrt_d(self) -> "QuadElem":
        if self.d is None:
            raise ValueError("Q has no distinguished square root")
        return QuadElem(0, 1, self)

    def __str__(self) -> str:
        return "Q" if self.d is None else f"Q(sqrt {self.d})"


QQ = FieldDesc()


def _join(f: FieldDesc, g: FieldDesc) -> FieldDesc:
    if f == g or g.is_rational:
        return f
    if f.is_rational:
        return g
    raise ValueError(f"field mismatch: {f} vs {g}")


class QuadElem:
    """``a + b*sqrt(d)`` with rational ``a``, ``b``.

    Rational elements (``b == 0``) mix freely with any field; mixing two
    different quadratic fields raises ``ValueError``.
    """

    __slots__ = ("a", "b", "field")

    def __init__(self, a=0, b=0, field: FieldDesc = QQ):
        a, b = as_fraction(a), as_fraction(b)
        if field.is_rational and b != 0:
            raise ValueError("an element of Q has no sqrt(d) part")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "field", field)

    def __setattr__(self, key, value):
        raise AttributeError("QuadElem is immutable")

    @classmethod
    def from_radical(cls, a, b, d: int) -> "QuadElem":
        """Build ``a + b*sqrt(d)`` for any nonsquare ``d >= 2``, pulling squares out of ``d``."""
        core, k = squarefree_decomposition(d)
        return cls(a, as_fraction(b) * k, FieldDesc.real_quadratic(core))

    @classmethod
    def coerce(cls, x, field: FieldDesc = QQ) -> "QuadElem":
        if isinstance(x, QuadElem):
            if x.field == field:
                return x
            return cls(x.a, x.b, _join(field, x.field))
        return cls(as_fraction(x), 0, field)

    @property
    def d(self) -> int:
        return 1 if self.field.d is None else self.field.d

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def to_fraction(self) -> Fraction:
        if self.b != 0:
            raise ValueError(f"{self} is not rational")
        return self.a

    def in_field(self, field: FieldDesc) -> "QuadElem":
        return QuadElem.coerce(self, field)

    def conjugate(self) -> "QuadElem":
        return QuadElem(self.a, -self.b, self.field)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def _other(self, other) -> Optional["QuadElem"]:
        if isinstance(other, QuadElem):
            return other
        if isinstance(other, (int, Fraction)):
            return QuadElem(other, 0, QQ)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return QuadElem(self.a + o.a, self.b + o.b, _join(self.field, o.field))

    __radd__ = __add__

    def __neg__(self):
        return QuadElem(-self.a, -self.b, self.field)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return QuadElem(self.a - o.a, self.b - o.b, _join(self.field, o.field))

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        field = _join(self.field, o.field)
        d = 1 if field.d is None else field.d
        return QuadElem(
            self.a * o.a + d * self.b * o.b,
            self.a * o.b + o.a * self.b,
            field,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadElem":
        nrm = self.norm()
        if nrm == 0:
            raise ZeroDivisionError("division by zero in " + str(self.field))
        return QuadElem(self.a / nrm, -self.b / nrm, self.field)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = QuadElem(1, 0, self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if self.a != o.a or self.b != o.b:
            return False
        return self.b == 0 or self.field == o.field

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.field.d))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def sign(self) -> int:
        if not self:
            return 0
        return 1 if is_positive_embedded(self) else -1

    def __lt__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() < 0

    def __le__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() <= 0

    def __gt__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() > 0

    def __ge__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __float__(self):
        # display only
        return float(self.a) + float(self.b) * self.d**0.5

    def __repr__(self):
        return f"QuadElem({self})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        rad = f"√{self.d}"
        if self.b.denominator == 1:
            coeff = "" if abs(self.b) == 1 else str(abs(self.b.numerator))
            surd = f"{coeff}{rad}"
        else:
            surd = f"{abs(self.b.numerator) if abs(self.b.numerator) != 1 else ''}{rad}/{self.b.denominator}"
        sgn = "-" if self.b < 0 else "+"
        if self.a == 0:
            return surd if sgn == "+" else "-" + surd
        return f"{self.a}{sgn}{surd}"


def quad_arith(x: QuadElem, y: QuadElem, op: str) -> QuadElem:
    """Dispatch ``op`` in {add, sub, mul, div}; both operands must share a field."""
    if isinstance(x, QuadElem) and isinstance(y, QuadElem) and x.field != y.field:
        raise ValueError(f"field mismatch: {x.field} vs {y.field}")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown op {op!r}")


def is_positive_embedded(x: QuadElem) -> bool:
    a, b = x.a, x.b
    if b == 0:
        return a > 0
    if a >= 0 and b > 0:
        return True
    if a <= 0 and b < 0:
        return False
    d = x.d
    if a > 0:  # b < 0
        return a * a > d * b * b
    return d * b * b > a * a  # a < 0 < b


def sqrt_in_field(x, K: Optional[FieldDesc] = None) -> Optional[QuadElem]:
    """Nonnegative square root of ``x`` inside ``K``, or ``None``.

    Writes ``x = a + b*sqrt(d)``. For ``b == 0`` either ``a`` or ``a/d`` is
    a rational square. Otherwise the norm ``a^2 - d b^2`` must be a square
    ``N^2`` and one of ``(a +- N)/2`` a square ``p^2``; then
    ``x = (p + q sqrt d)^2`` with ``q = b/(2p)``.
    """
    if not isinstance(x, QuadElem):
        x = QuadElem(x, 0, K or QQ)
    if K is None:
        K = x.field
    x = x.in_field(K)
    if x.sign() < 0:
        return None
    if K.is_rational:
        root = is_square_rational(x.a)
        return None if root is None else QuadElem(root, 0, K)
    d = K.d
    a, b = x.a, x.b
    if b == 0:
        root = is_square_rational(a)
        if root is not None:
            return QuadElem(root, 0, K)
        root = is_square_rational(a / d)
        if root is not None:
            return QuadElem(0, root, K)
        return None
    N = is_square_rational(a * a - d * b * b)
    if N is None:
        return None
    for half in ((a + N) / 2, (a - N) / 2):
        p = is_square_rational(half)
        if not p:
            continue
        q = b / (2 * p)
        if p * p + d * q * q == a:
            y = QuadElem(p, q, K)
            return y if y.sign() >= 0 else -y
    return None
