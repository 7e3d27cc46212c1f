"""The curves y^2 = x(x + (r+s)n)(x - (r-s)n) and their torsion.

Points carry no curve reference; every operation takes the curve
explicitly.  Curves are always in the shape ``y^2 = x^3 + A x^2 + B x``.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import gcd
from typing import Optional

from .field import (
    QQ,
    FieldDesc,
    QuadElem,
    is_squarefree,
    sqrt_in_field,
)
from .poly import PolyQ, rational_roots, roots_in_quadratic_field

__all__ = [
    "CurveParams",
    "INFINITY",
    "Point",
    "ThetaSlope",
    "TorsionGroup",
    "TorsionReport",
    "WeierstrassK",
    "build_curve",
    "certify_non_torsion",
    "ell_add",
    "four_torsion_in_K",
    "halve",
    "point_order",
    "psi3",
    "quadratic_twist",
    "scalar_mul",
    "three_torsion_in_K",
    "torsion_subgroup",
    "transport_twist_point",
]

EXCEPTIONAL_N = frozenset({1, 2, 3, 6})
TORSION_BOUND_Q = 12
TORSION_BOUND_QUADRATIC = 18


@dataclass(frozen=True)
class ThetaSlope:
    """cos(theta) = s/r in lowest terms, with |s| < r."""

    r: int
    s: int

    def __post_init__(self):
        if self.r < 1 or gcd(self.r, self.s) != 1 or abs(self.s) >= self.r:
            raise ValueError(f"invalid angle data r={self.r}, s={self.s}")

    @classmethod
    def parse(cls, text: str) -> "ThetaSlope":
        """Parse the cosine as an exact fraction ``"s/r"`` (``"-1/2"`` is 2*pi/3)."""
        try:
            q = Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot parse cos(theta) from {text!r}") from exc
        return cls(q.denominator, q.numerator)

    @property
    def cos(self) -> Fraction:
        return Fraction(self.s, self.r)

    def __str__(self):
        return f"{self.s}/{self.r}"


PI_OVER_3 = ThetaSlope(2, 1)
PI_OVER_2 = ThetaSlope(1, 0)
TWO_PI_OVER_3 = ThetaSlope(2, -1)


@dataclass(frozen=True)
class CurveParams:
    n: int
    theta: ThetaSlope

    def __post_init__(self):
        if self.n < 1 or not is_squarefree(self.n):
            raise ValueError(f"n must be a positive square-free integer, got {self.n}")

    @property
    def exceptional(self) -> bool:
        return self.n in EXCEPTIONAL_N

    @property
    def r(self) -> int:
        return self.theta.r

    @property
    def s(self) -> int:
        return self.theta.s


@dataclass(frozen=True)
class Point:
    """Affine point, or the point at infinity when both coordinates are ``None``."""

    x: Optional[QuadElem] = None
    y: Optional[QuadElem] = None

    @classmethod
    def affine(cls, x, y, K: FieldDesc = QQ) -> "Point":
        return cls(QuadElem.coerce(x, K), QuadElem.coerce(y, K))

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __neg__(self) -> "Point":
        return self if self.is_infinity else Point(self.x, -self.y)

    def __str__(self):
        return "O" if self.is_infinity else f"({self.x}, {self.y})"


INFINITY = Point()


@dataclass(frozen=True)
class WeierstrassK:
    """y^2 = x^3 + A x^2 + B x over ``field``."""

    A: QuadElem
    B: QuadElem
    field: FieldDesc = QQ

    def __post_init__(self):
        object.__setattr__(self, "A", QuadElem.coerce(self.A, self.field))
        object.__setattr__(self, "B", QuadElem.coerce(self.B, self.field))
        if not self.B or not (self.A * self.A - 4 * self.B):
            raise ValueError(f"singular curve A={self.A}, B={self.B}")

    @property
    def is_rational(self) -> bool:
        return self.A.is_rational and self.B.is_rational

    def rhs(self, x):
        return x * (x * (x + self.A) + self.B)

    def contains(self, P: Point) -> bool:
        if P.is_infinity:
            return True
        return P.y * P.y == self.rhs(P.x)

    def base_change(self, K: FieldDesc) -> "WeierstrassK":
        if K == self.field:
            return self
        return WeierstrassK(self.A.in_field(K), self.B.in_field(K), K)

    def coefficients(self) -> list[QuadElem]:
        """[a0, a1, a2, a3] of the cubic x^3 + A x^2 + B x, ascending."""
        return [QuadElem(0, 0, self.field), self.B, self.A, QuadElem(1, 0, self.field)]

    def two_torsion_x(self) -> list[QuadElem]:
        """x-coordinates of the points of order 2 defined over ``field``."""
        xs = [QuadElem(0, 0, self.field)]
        disc = self.A * self.A - 4 * self.B
        root = sqrt_in_field(disc, self.field)
        if root is not None:
            xs += [(-self.A + root) / 2, (-self.A - root) / 2]
        return xs

    def __str__(self):
        return f"y^2 = x^3 + ({self.A})x^2 + ({self.B})x over {self.field}"


def build_curve(p: CurveParams) -> WeierstrassK:
    n, r, s = p.n, p.r, p.s
    return WeierstrassK(QuadElem(2 * s * n), QuadElem(-(r * r - s * s) * n * n), QQ)


def _check(P: Point, E: WeierstrassK):
    if not E.contains(P):
        raise ValueError(f"{P} is not on {E}")


def _add(P: Point, Q: Point, E: WeierstrassK) -> Point:
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    if P.x == Q.x:
        if P.y + Q.y == 0:
            return INFINITY
        lam = (3 * P.x * P.x + 2 * E.A * P.x + E.B) / (2 * P.y)
    else:
        lam = (Q.y - P.y) / (Q.x - P.x)
    x3 = lam * lam - E.A - P.x - Q.x
    y3 = lam * (P.x - x3) - P.y
    return Point(x3, y3)


def ell_add(P: Point, Q: Point, E: WeierstrassK) -> Point:
    _check(P, E)
    _check(Q, E)
    return _add(P, Q, E)


def _mul(m: int, P: Point, E: WeierstrassK) -> Point:
    if m < 0:
        return _mul(-m, -P, E)
    result = INFINITY
    addend = P
    while m:
        if m & 1:
            result = _add(result, addend, E)
        addend = _add(addend, addend, E)
        m >>= 1
    return result


def scalar_mul(m: int, P: Point, E: WeierstrassK) -> Point:
    _check(P, E)
    return _mul(m, P, E)


def point_order(P: Point, E: WeierstrassK, bound: int) -> Optional[int]:
    """Exact order of ``P`` if it is at most ``bound``, else ``None``."""
    _check(P, E)
    Q = P
    for m in range(1, bound + 1):
        if Q.is_infinity:
            return m
        Q = _add(Q, P, E)
    return None


def psi3(E: WeierstrassK) -> PolyQ:
    """Third division polynomial 3x^4 + 4Ax^3 + 6Bx^2 - B^2."""
    if not E.is_rational:
        raise ValueError("psi3 needs a curve defined over Q")
    A, B = E.A.to_fraction(), E.B.to_fraction()
    return PolyQ([-B * B, 0, 6 * B, 4 * A, 3])


def _roots_in(p: PolyQ, K: FieldDesc) -> list[QuadElem]:
    if K.is_rational:
        return [QuadElem(x) for x in sorted(rational_roots(p), reverse=True)]
    return roots_in_quadratic_field(p, K.d)


def three_torsion_x_roots(E: WeierstrassK, K: FieldDesc) -> list[QuadElem]:
    return _roots_in(psi3(E), K)


def three_torsion_in_K(E: WeierstrassK, K: FieldDesc) -> Optional[Point]:
    """An order-3 point of E(K): a psi3 root whose cubic value is a square in K."""
    EK = E.base_change(K)
    for x0 in three_torsion_x_roots(E, K):
        y0 = sqrt_in_field(EK.rhs(x0), K)
        if y0 is None or not y0:
            continue
        P = Point(x0, y0)
        if _mul(3, P, EK).is_infinity:
            return P
    return None


def halve(P: Point, E: WeierstrassK) -> Optional[Point]:
    """Some Q in E(field) with 2Q = P, or ``None``.

    Needs full rational 2-torsion; then P is divisible by 2 exactly when
    every ``x(P) - e_i`` is a square, and ``x(Q) = x + a1 a2 + a1 a3 + a2 a3``
    for a suitable choice of signs of the roots ``a_i``.
    """
    K = E.field
    if P.is_infinity:
        return INFINITY
    es = E.two_torsion_x()
    if len(es) != 3:
        return None
    alphas = [sqrt_in_field(P.x - e, K) for e in es]
    if any(a is None for a in alphas):
        return None
    a1, a2, a3 = alphas
    for e2, e3 in itertools.product((1, -1), repeat=2):
        b2, b3 = e2 * a2, e3 * a3
        x = P.x + a1 * b2 + a1 * b3 + b2 * b3
        y = sqrt_in_field(E.rhs(x), K)
        if y is None:
            continue
        for Q in (Point(x, y), Point(x, -y)):
            if _add(Q, Q, E) == P:
                return Q
    return None


def two_r_r_minus_s(p: CurveParams) -> int:
    return 2 * p.r * (p.r - p.s)


def four_torsion_in_K(p: CurveParams, K: FieldDesc) -> Optional[Point]:
    """Order-4 point over K halving ((r-s)n, 0), gated on 2r(r-s) being a square in K.

    Over a real field the other two points of order 2 are never halvable
    (one of the differences is negative), so this is the only candidate.
    """
    if sqrt_in_field(QuadElem(two_r_r_minus_s(p), 0, K), K) is None:
        return None
    EK = build_curve(p).base_change(K)
    e = QuadElem((p.r - p.s) * p.n, 0, K)
    P = halve(Point(e, QuadElem(0, 0, K)), EK)
    if P is None:
        return None
    if _mul(4, P, EK).is_infinity and not _mul(2, P, EK).is_infinity:
        return P
    return None


class TorsionGroup(str, enum.Enum):
    Z2xZ2 = "Z2xZ2"
    Z2xZ4 = "Z2xZ4"
    Z2xZ6 = "Z2xZ6"
    Z2xZ8 = "Z2xZ8"
    Z2xZ12 = "Z2xZ12"


@dataclass(frozen=True)
class TorsionReport:
    group: TorsionGroup
    witnesses: tuple[Point, ...]
    complete: bool
    notes: tuple[str, ...] = dc_field(default=())


def torsion_subgroup(p: CurveParams, K: FieldDesc = QQ) -> TorsionReport:
    """Torsion of E_{n,theta}(K) from the 3-, 4- and 8-torsion probes.

    Over Q the probes are exhaustive (full 2-torsion leaves Z/2 x Z/2m with
    m in {1,2,3,4}). Over a quadratic field Z/2 x Z/10 is not probed, so
    the report is complete only when a 3- or 4-torsion witness rules it out.
    """
    E = build_curve(p)
    EK = E.base_change(K)
    notes = []
    witnesses = []

    P3 = three_torsion_in_K(E, K)
    if P3 is None:
        xs = three_torsion_x_roots(E, K)
        if xs:
            notes.append(
                "psi3 has roots " + ", ".join(map(str, xs)) + f" in {K} but no order-3 point"
            )
    else:
        witnesses.append(P3)

    P4 = four_torsion_in_K(p, K)
    P8 = None
    if P4 is not None:
        witnesses.append(P4)
        for T in [INFINITY] + [Point(e, QuadElem(0, 0, K)) for e in EK.two_torsion_x()]:
            Q = halve(_add(P4, T, EK), EK)
            if Q is not None:
                P8 = Q
                witnesses.append(Q)
                break
    elif sqrt_in_field(QuadElem(two_r_r_minus_s(p), 0, K), K) is not None:
        notes.append(f"2r(r-s) = {two_r_r_minus_s(p)} is a square in {K} but ((r-s)n, 0) is not halvable")

    if P8 is not None:
        group = TorsionGroup.Z2xZ8
    elif P4 is not None and P3 is not None:
        group = TorsionGroup.Z2xZ12
    elif P4 is not None:
        group = TorsionGroup.Z2xZ4
    elif P3 is not None:
        group = TorsionGroup.Z2xZ6
    else:
        group = TorsionGroup.Z2xZ2
    complete = K.is_rational or group is not TorsionGroup.Z2xZ2
    return TorsionReport(group, tuple(witnesses), complete, tuple(notes))


def quadratic_twist(E: WeierstrassK, d: int) -> WeierstrassK:
    """y^2 = x^3 + dA x^2 + d^2 B x."""
    if d in (0, 1) or not is_squarefree(d):
        raise ValueError(f"twist parameter must be square-free and not 0 or 1, got {d}")
    if not E.is_rational:
        raise ValueError("quadratic_twist needs a curve over Q")
    return WeierstrassK(E.A * d, E.B * d * d, QQ)


def transport_twist_point(P: Point, twisted: WeierstrassK, d: int) -> Point:
    """Send P on E^d(Q) to (x/d, y sqrt(d)/d^2) on E(Q(sqrt d))."""
    _check(P, twisted)
    if P.is_infinity:
        return INFINITY
    K = FieldDesc(d)
    E = WeierstrassK(twisted.A / d, twisted.B / (d * d), K)
    image = Point(P.x.in_field(K) / d, P.y.in_field(K) * K.sqrt_d() / (d * d))
    _check(image, E)
    return image


def certify_non_torsion(P: Point, E: WeierstrassK, K: Optional[FieldDesc] = None) -> bool:
    """True when no multiple up to the torsion bound of K vanishes (12 over Q, 18 otherwise)."""
    K = E.field if K is None else K
    EK = E.base_change(K)
    if P.is_infinity:
        return False
    P = Point(P.x.in_field(K), P.y.in_field(K))
    bound = TORSION_BOUND_Q if K.is_rational else TORSION_BOUND_QUADRATIC
    return point_order(P, EK, bound) is None
