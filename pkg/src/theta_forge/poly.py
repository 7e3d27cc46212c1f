"""Dense univariate polynomials over Q and quartic analysis.

The quartic machinery follows the usual route: depress to
``x^4 + p x^2 + q x + c``, take the resolvent cubic
``t^3 - p t^2 - 4c t + (4pc - q^2)`` whose roots are ``x1 x2 + x3 x4`` and
its conjugates, and read the Galois type off the resolvent and the
discriminant.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Sequence

from .field import (
    FieldDesc,
    QuadElem,
    as_fraction,
    factor_smooth,
    is_square_rational,
    qr_mod_p,
    sqrt_in_field,
    squarefree_decomposition,
)

__all__ = [
    "GaloisType",
    "ModSAnalysis",
    "Obstruction",
    "PolyQ",
    "QuarticReport",
    "build_f_quartic",
    "cubic_field_obstruction",
    "factor_low_degree",
    "mod_s_root_analysis",
    "quadratic_split",
    "quartic_analyze",
    "rational_roots",
    "roots_in_quadratic_field",
]

RESIDUE_ENUM_CAP = 10**5


class PolyQ:
    """Polynomial with Fraction coefficients, ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, key, value):
        raise AttributeError("PolyQ is immutable")

    @classmethod
    def from_descending(cls, *coeffs) -> "PolyQ":
        return cls(reversed(coeffs))

    @classmethod
    def x(cls) -> "PolyQ":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def _coerce(self, other) -> "PolyQ":
        if isinstance(other, PolyQ):
            return other
        return PolyQ([other])

    def __add__(self, other):
        o = self._coerce(other)
        n = max(len(self.coeffs), len(o.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = o.coeffs + (Fraction(0),) * (n - len(o.coeffs))
        return PolyQ([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return PolyQ([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        if self.is_zero() or o.is_zero():
            return PolyQ()
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(o.coeffs):
                out[i + j] += a * b
        return PolyQ(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = PolyQ([1])
        for _ in range(k):
            out = out * self
        return out

    def __divmod__(self, other):
        o = self._coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        quot = [Fraction(0)] * max(len(rem) - len(o.coeffs) + 1, 1)
        while len(rem) >= len(o.coeffs) and any(rem):
            shift = len(rem) - len(o.coeffs)
            factor = rem[-1] / o.lead
            quot[shift] = factor
            for i, c in enumerate(o.coeffs):
                rem[i + shift] -= factor * c
            rem.pop()
            while rem and rem[-1] == 0:
                rem.pop()
        return PolyQ(quot), PolyQ(rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def compose(self, other: "PolyQ") -> "PolyQ":
        acc = PolyQ()
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def monic(self) -> "PolyQ":
        return PolyQ([c / self.lead for c in self.coeffs])

    def derivative(self) -> "PolyQ":
        return PolyQ([i * c for i, c in enumerate(self.coeffs)][1:])

    def integer_primitive(self) -> list[int]:
        """Coefficients scaled to coprime integers (sign of the lead kept)."""
        den = lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        return [v // g for v in ints]

    def __eq__(self, other):
        if isinstance(other, PolyQ):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == PolyQ([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"PolyQ({self})"

    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                body = ("" if mag == 1 else str(mag)) + ("x" if i == 1 else f"x^{i}")
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def build_f_quartic(r: int, s: int) -> PolyQ:
    """The quartic x^4 - 6(3r^2+s^2)x^2 + 8s(9r^2-s^2)x - 3(3r^2+s^2)^2."""
    if r < 1 or gcd(r, s) != 1 or abs(s) >= r:
        raise ValueError(f"need r >= 1, gcd(r, s) = 1, |s| < r; got r={r}, s={s}")
    t = 3 * r * r + s * s
    return PolyQ([-3 * t * t, 8 * s * (9 * r * r - s * s), -6 * t, 0, 1])


def _divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factor_smooth(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def rational_roots(p: PolyQ) -> list[Fraction]:
    """Distinct rational roots, ascending, by the rational root theorem."""
    if p.is_zero():
        raise ValueError("the zero polynomial has every root")
    ints = p.integer_primitive()
    roots: set[Fraction] = set()
    low = 0
    while ints[low] == 0:
        low += 1
    if low:
        roots.add(Fraction(0))
    ints = ints[low:]
    if len(ints) > 1:
        lead, const = abs(ints[-1]), abs(ints[0])
        nums, dens = _divisors(const), _divisors(lead)
        for num in nums:
            for den in dens:
                if gcd(num, den) != 1:
                    continue
                for cand in (Fraction(num, den), Fraction(-num, den)):
                    if _int_eval(ints, cand) == 0:
                        roots.add(cand)
    return sorted(roots)


def _int_eval(ints: list[int], x: Fraction) -> int:
    # homogenised Horner keeps everything in Z
    num, den = x.numerator, x.denominator
    acc = 0
    power = 1
    for c in reversed(ints):
        acc = acc * num + c * power
        power *= den
    return acc


def _depress(p: PolyQ) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Return ``(shift, P, Q, C)`` with ``monic(p)(y - shift) = y^4 + P y^2 + Q y + C``."""
    m = p.monic()
    shift = m.coeffs[3] / 4
    dep = m.compose(PolyQ([-shift, 1]))
    c = list(dep.coeffs) + [Fraction(0)] * (5 - len(dep.coeffs))
    return shift, c[2], c[1], c[0]


def resolvent_cubic(p: PolyQ) -> PolyQ:
    _, P, Q, C = _depress(p)
    return PolyQ([4 * P * C - Q * Q, -4 * C, -P, 1])


def quartic_discriminant(p: PolyQ) -> Fraction:
    _, P, Q, C = _depress(p)
    disc_monic = (
        16 * P**4 * C
        - 4 * P**3 * Q**2
        - 128 * P**2 * C**2
        + 144 * P * Q**2 * C
        - 27 * Q**4
        + 256 * C**3
    )
    return p.lead**6 * disc_monic


def quadratic_split(p: PolyQ) -> Optional[tuple[PolyQ, PolyQ]]:
    """Factor a quartic into two rational quadratics, or ``None``.

    Each rational resolvent root ``t = v + w`` is tried against
    ``(y^2 + u y + v)(y^2 - u y + w)`` with ``u^2 = t - P``.
    """
    if p.degree != 4:
        raise ValueError("quadratic_split needs a quartic")
    shift, P, Q, C = _depress(p)
    for t in rational_roots(resolvent_cubic(p)):
        u = is_square_rational(t - P)
        if u is None:
            continue
        if u != 0:
            v = (t - Q / u) / 2
            w = (t + Q / u) / 2
            pairs = [(u, v, w)]
        else:
            if Q != 0:
                continue
            disc = is_square_rational(t * t - 4 * C)
            if disc is None:
                continue
            pairs = [(Fraction(0), (t - disc) / 2, (t + disc) / 2)]
        for u, v, w in pairs:
            if v * w != C:
                continue
            back = PolyQ([shift, 1])  # y = x + shift
            f1 = PolyQ([v, u, 1]).compose(back) * p.lead
            f2 = PolyQ([w, -u, 1]).compose(back)
            return f1, f2
    return None


def factor_low_degree(p: PolyQ) -> list[PolyQ]:
    """Split ``p`` (degree <= 4) into Q-irreducible factors; the product is ``p``.

    The leading coefficient rides on the first factor.
    """
    if p.is_zero() or p.degree > 4:
        raise ValueError("factor_low_degree handles nonzero polynomials of degree <= 4")
    factors: list[PolyQ] = []
    rest = p
    for root in rational_roots(p):
        lin = PolyQ([-root, 1])
        while True:
            q, rem = divmod(rest, lin)
            if not rem.is_zero():
                break
            factors.append(lin)
            rest = q
    if rest.degree == 4:
        split = quadratic_split(rest)
        if split is not None:
            factors = [split[0], split[1]]
            rest = PolyQ([1])
    if rest.degree >= 1:
        factors.append(rest)
        rest = PolyQ([1])
    if not factors:
        return [p]
    factors[0] = factors[0] * rest.coeffs[0]
    return factors


class GaloisType(str, enum.Enum):
    S4 = "S4"
    A4 = "A4"
    D4 = "D4"
    C4 = "C4"
    V4 = "V4"
    REDUCIBLE = "Reducible"


@dataclass(frozen=True)
class QuarticReport:
    irreducible_over_Q: bool
    rational_roots: tuple[Fraction, ...]
    quadratic_split: Optional[tuple[PolyQ, PolyQ]]
    resolvent: PolyQ
    discriminant: Fraction
    galois_type: GaloisType


def _splits_over(disc_poly: Fraction, field_disc: Fraction) -> bool:
    """Is a quadratic with discriminant ``disc_poly`` split over Q(sqrt field_disc)?"""
    if is_square_rational(disc_poly) is not None:
        return True
    core = field_disc
    if core > 0:
        # real quadratic field: solve inside it
        K = FieldDesc.real_quadratic(_squarefree_core(core))
        return sqrt_in_field(QuadElem(disc_poly, 0, K), K) is not None
    return is_square_rational(disc_poly * field_disc) is not None


def _squarefree_core(q: Fraction) -> int:
    core, _ = squarefree_decomposition(q.numerator * q.denominator)
    return core


def quartic_analyze(p: PolyQ) -> QuarticReport:
    if p.degree != 4:
        raise ValueError("quartic_analyze needs degree 4")
    disc = quartic_discriminant(p)
    if disc == 0:
        raise ValueError(f"{p} has a repeated root")
    resolvent = resolvent_cubic(p)
    roots = tuple(rational_roots(p))
    split = None if roots else quadratic_split(p)
    irreducible = not roots and split is None
    if not irreducible:
        gtype = GaloisType.REDUCIBLE
    else:
        disc_square = is_square_rational(disc) is not None
        res_roots = rational_roots(resolvent)
        if disc_square:
            gtype = GaloisType.V4 if len(res_roots) == 3 else GaloisType.A4
        elif not res_roots:
            gtype = GaloisType.S4
        else:
            # Kappe-Warren: C4 iff (x^2 - t x + C)(x^2 + P - t) splits over Q(sqrt disc)
            _, P, _, C = _depress(p)
            t = res_roots[0]
            both = _splits_over(t * t - 4 * C, disc) and _splits_over(4 * (t - P), disc)
            gtype = GaloisType.C4 if both else GaloisType.D4
    return QuarticReport(
        irreducible_over_Q=irreducible,
        rational_roots=roots,
        quadratic_split=split,
        resolvent=resolvent,
        discriminant=disc,
        galois_type=gtype,
    )


@dataclass(frozen=True)
class ModSAnalysis:
    qr3_holds: bool
    # None when |s| exceeds the enumeration cap
    residue_roots_exist: Optional[bool]


def mod_s_root_analysis(r: int, s: int) -> ModSAnalysis:
    """Solvability of k^4 - 18 r^2 k^2 - 27 r^4 = 0 (mod |s|).

    ``qr3_holds`` asks that 3 be a square modulo every prime factor of
    ``|s|`` other than 2 and 3 (the congruence is always solvable mod 3).
    """
    if s == 0 or gcd(r, s) != 1:
        raise ValueError(f"need s != 0 and gcd(r, s) = 1; got r={r}, s={s}")
    m = abs(s)
    qr3 = all(qr_mod_p(3, p) for p, _ in factor_smooth(m) if p > 3)
    if m > RESIDUE_ENUM_CAP:
        return ModSAnalysis(qr3, None)
    r2 = r * r % m
    c2 = 18 * r2 % m
    c0 = 27 * r2 * r2 % m
    exists = False
    for k in range(m):
        k2 = k * k % m
        if (k2 * k2 - c2 * k2 - c0) % m == 0:
            exists = True
            break
    return ModSAnalysis(qr3, exists)


def _solve_quadratic(f: PolyQ, K: FieldDesc) -> list[QuadElem]:
    c, b, a = f.coeffs
    root = sqrt_in_field(QuadElem(b * b - 4 * a * c, 0, K), K)
    if root is None:
        return []
    return [(-b + root) / (2 * a), (-b - root) / (2 * a)]


def roots_in_quadratic_field(p: PolyQ, d: int) -> list[QuadElem]:
    """Roots of ``p`` (degree <= 4) in Q(sqrt d), descending under the real embedding.

    Irreducible cubic or quartic factors contribute nothing (degree argument).
    """
    if p.is_zero() or p.degree > 4:
        raise ValueError("roots_in_quadratic_field handles degree 1..4")
    K = FieldDesc(d)
    found: set[QuadElem] = set()
    if p.degree == 0:
        return []
    for f in factor_low_degree(p):
        if f.degree == 1:
            found.add(QuadElem(-f.coeffs[0] / f.coeffs[1], 0, K))
        elif f.degree == 2:
            found.update(r.in_field(K) for r in _solve_quadratic(f, K))
    return sorted(found, reverse=True)


class Obstruction(str, enum.Enum):
    PROVEN = "ObstructionProven"
    INCONCLUSIVE = "Inconclusive"


def cubic_field_obstruction(r: int, s: int) -> Obstruction:
    """With no rational root, every root of f has degree 2 or 4, so none lies in a cubic field."""
    if rational_roots(build_f_quartic(r, s)):
        return Obstruction.INCONCLUSIVE
    return Obstruction.PROVEN
