"""Triangles with angle theta and area n*sqrt(r^2 - s^2) versus points on E_{n,theta}.

A triangle with sides u, v around the angle theta and opposite side w
satisfies ``uv = 2nr`` and ``w^2 = u^2 + v^2 - 4ns``.  Then

    ((u + v)/2)^2 = w^2/4 + (r + s)n,   ((u - v)/2)^2 = w^2/4 - (r - s)n,

so ``(w^2/4, w(u^2 - v^2)/8)`` lies on the curve.  Going back, ``x(2P)``
and ``x(2P) - e`` are squares for every 2-torsion abscissa ``e``, which is
why the inverse map passes through doubling.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .curve import CurveParams, Point, _check, build_curve
from .field import QQ, FieldDesc, QuadElem, sqrt_in_field

__all__ = [
    "TriangleCheck",
    "TriangleK",
    "phi_triangle_to_point",
    "psi_point_to_triangle",
    "same_triangle",
    "verify_triangle",
]


@dataclass(frozen=True)
class TriangleK:
    u: QuadElem
    v: QuadElem
    w: QuadElem
    params: CurveParams
    field: FieldDesc = QQ

    @classmethod
    def make(cls, u, v, w, params: CurveParams, field: FieldDesc = QQ) -> "TriangleK":
        """Coerce the sides into ``field`` and order the legs so that u >= v."""
        u, v, w = (QuadElem.coerce(t, field) for t in (u, v, w))
        if u < v:
            u, v = v, u
        return cls(u, v, w, params, field)

    def sides(self) -> tuple[QuadElem, QuadElem, QuadElem]:
        return self.u, self.v, self.w

    def __str__(self):
        return f"({self.u}, {self.v}, {self.w})"


@dataclass(frozen=True)
class TriangleCheck:
    ok: bool
    reason: str = "ok"

    def __bool__(self):
        return self.ok


def verify_triangle(T: TriangleK) -> TriangleCheck:
    """Exact check of positivity, leg order, law of cosines and the area condition ``uv = 2nr``."""
    u, v, w = T.u, T.v, T.w
    n, r, s = T.params.n, T.params.r, T.params.s
    try:
        u, v, w = (t.in_field(T.field) for t in (u, v, w))
    except ValueError:
        return TriangleCheck(False, "field")
    if not all(t.sign() > 0 for t in (u, v, w)):
        return TriangleCheck(False, "nonpositive-side")
    if u < v:
        return TriangleCheck(False, "leg-order")
    if u * v != 2 * n * r:
        return TriangleCheck(False, "area")
    if w * w != u * u + v * v - 2 * u * v * s / r:
        return TriangleCheck(False, "law-of-cosines")
    return TriangleCheck(True)


def same_triangle(T: TriangleK, sides) -> bool:
    """Compare with a tuple of sides given in either leg order."""
    u, v, w = (QuadElem.coerce(t, T.field) for t in sides)
    return w == T.w and {u, v} == {T.u, T.v}


def phi_triangle_to_point(T: TriangleK) -> Point:
    check = verify_triangle(T)
    if not check:
        raise ValueError(f"triangle {T} fails verification ({check.reason})")
    x = T.w * T.w / 4
    y = T.w * (T.u * T.u - T.v * T.v) / 8
    P = Point(x, y)
    _check(P, build_curve(T.params).base_change(T.field))
    return P


def psi_point_to_triangle(P: Point, params: CurveParams, K: Optional[FieldDesc] = None) -> TriangleK:
    """Triangle attached to an affine point P with y != 0 on E_{n,theta}(K)."""
    if P.is_infinity:
        raise ValueError("the point at infinity has no triangle")
    if K is None:
        K = P.x.field if not P.x.is_rational else P.y.field
    E = build_curve(params).base_change(K)
    P = Point(P.x.in_field(K), P.y.in_field(K))
    _check(P, E)
    if not P.y:
        raise ValueError(f"{P} has order 2 and no triangle")
    n, r, s = params.n, params.r, params.s
    numer = P.x * P.x + (r * r - s * s) * n * n
    w = abs(numer) / abs(P.y)
    X = (numer / (2 * P.y)) ** 2
    half_sum = sqrt_in_field(X + (r + s) * n, K)
    half_diff = sqrt_in_field(X - (r - s) * n, K)
    if half_sum is None or half_diff is None:
        raise ArithmeticError(f"halving identity failed at {P}; this is a bug")
    u = half_sum + half_diff
    v = half_sum - half_diff
    T = TriangleK.make(u, v, w, params, K)
    check = verify_triangle(T)
    if not check:
        raise ArithmeticError(f"psi produced an invalid triangle {T} ({check.reason})")
    return T
