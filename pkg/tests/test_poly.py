import random
from fractions import Fraction as F
from math import gcd

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from theta_forge.field import FieldDesc, QuadElem
from theta_forge.poly import (
    GaloisType,
    Obstruction,
    PolyQ,
    build_f_quartic,
    cubic_field_obstruction,
    factor_low_degree,
    mod_s_root_analysis,
    quadratic_split,
    quartic_analyze,
    rational_roots,
    resolvent_cubic,
    roots_in_quadratic_field,
)

# Frozen from an independent computation: sympy.discriminant / Poly.galois_group,
# and the resolvent rebuilt from 60-digit numeric roots y_i of the depressed monic
# quartic as prod(t - (y_i y_j + y_k y_l)). Coefficients ascending.
GALOIS_CORPUS = [
    ([1, 0, 0, 0, 1], "V4", 256, [0, -4, 0]),
    ([-2, 0, 0, 0, 1], "D4", -2048, [0, 8, 0]),
    ([1, 1, 0, 0, 1], "S4", 229, [-1, -4, 0]),
    ([12, 8, 0, 0, 1], "A4", 331776, [-64, -48, 0]),
    ([2, 0, 4, 0, 1], "C4", 2048, [32, -8, -4]),
    ([1, 0, -10, 0, 1], "V4", 147456, [-40, -4, 10]),
    ([5, 0, 5, 0, 1], "C4", 2000, [100, -20, -5]),
    ([-1, -1, 0, 0, 1], "S4", -283, [-1, 4, 0]),
    ([3, 3, 0, 0, 1], "D4", 4725, [-9, -12, 0]),
    ([1, 1, -4, 0, 1], "S4", 1957, [-17, -4, 4]),
    ([1, -4, 3, 2, 1], "D4", 432, [F(-117, 8), F(-57, 4), F(-3, 2)]),
    ([5, -3, 0, 0, 2], "S4", 247252, [F(-9, 4), -10, 0]),
]


def poly(*desc):
    return PolyQ.from_descending(*desc)


# -- build_f_quartic ------------------------------------------------------


def test_f_quartic_examples():
    assert build_f_quartic(2, 1) == poly(1, 0, -78, 280, -507)
    assert build_f_quartic(2, -1) == poly(1, 0, -78, -280, -507)
    assert build_f_quartic(1, 0) == poly(1, 0, -18, 0, -27)


def test_f_quartic_5_2():
    # 3r^2+s^2 = 79, 9r^2-s^2 = 221
    assert build_f_quartic(5, 2) == poly(1, 0, -474, 3536, -18723)


@pytest.mark.parametrize("r,s", [(2, 2), (1, 1), (0, 0), (3, -3), (4, 2)])
def test_f_quartic_rejects(r, s):
    with pytest.raises(ValueError):
        build_f_quartic(r, s)


# -- rational_roots -------------------------------------------------------


def test_rational_roots_examples():
    assert rational_roots(build_f_quartic(2, 1)) == []
    x = PolyQ.x()
    assert rational_roots(x * (x + 9) * (x - 3)) == [-9, 0, 3]
    assert rational_roots(poly(1, 0, F(-25, 4))) == [F(-5, 2), F(5, 2)]


def test_rational_roots_nonmonic_and_repeated():
    x = PolyQ.x()
    p = (3 * x - 2) ** 2 * (x + F(1, 7)) * (x * x + 1)
    assert rational_roots(p) == [F(-1, 7), F(2, 3)]


@settings(max_examples=50)
@given(st.lists(st.fractions(min_value=-20, max_value=20, max_denominator=6), min_size=1, max_size=4))
def test_rational_roots_vs_evaluation(roots):
    x = PolyQ.x()
    p = PolyQ([1])
    for r in roots:
        p = p * (x - r)
    p = p * (x * x + 2)
    found = rational_roots(p)
    assert set(found) == set(roots)
    rng = random.Random(len(roots))
    for _ in range(200):
        q = F(rng.randint(-400, 400), rng.randint(1, 40))
        assert (p(q) == 0) == (q in found)


def test_rational_roots_agree_with_sympy_on_random_quartics():
    rng = random.Random(7)
    X = sympy.symbols("x")
    for _ in range(100):
        cs = [rng.randint(-30, 30) for _ in range(4)] + [rng.choice([1, 2, 3, 6])]
        p = PolyQ(cs)
        expected = sorted(
            F(int(sympy.fraction(r)[0]), int(sympy.fraction(r)[1]))
            for r in sympy.Poly(list(reversed(cs)), X).ground_roots()
        )
        assert rational_roots(p) == expected


# -- quartic_analyze ------------------------------------------------------


@pytest.mark.parametrize("coeffs,gtype,disc,res", GALOIS_CORPUS)
def test_galois_corpus(coeffs, gtype, disc, res):
    p = PolyQ(coeffs)
    report = quartic_analyze(p)
    assert report.galois_type.value == gtype
    assert report.discriminant == disc
    assert report.resolvent == PolyQ(res + [1])
    assert report.irreducible_over_Q


def test_resolvent_discriminant_matches_quartic():
    # disc of the resolvent equals disc of the monic depressed quartic
    for coeffs, *_ in GALOIS_CORPUS:
        p = PolyQ(coeffs)
        res = resolvent_cubic(p)
        X = sympy.symbols("x")
        disc_res = sympy.discriminant(sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(res.coeffs)], X))
        assert disc_res == sympy.Rational(quartic_analyze(p).discriminant.numerator, quartic_analyze(p).discriminant.denominator) / (p.lead**6)


def test_f21_irreducible():
    report = quartic_analyze(build_f_quartic(2, 1))
    assert report.irreducible_over_Q
    assert report.rational_roots == ()
    assert report.quadratic_split is None


def test_reducible_reports():
    x = PolyQ.x()
    split = quartic_analyze((x * x - 2) * (x * x - 3))
    assert split.galois_type is GaloisType.REDUCIBLE
    assert split.quadratic_split[0] * split.quadratic_split[1] == (x * x - 2) * (x * x - 3)
    assert split.rational_roots == ()
    lin = quartic_analyze((x - 1) * (x**3 - 2))
    assert lin.rational_roots == (1,)
    assert lin.quadratic_split is None
    assert not lin.irreducible_over_Q


def test_repeated_roots_rejected():
    x = PolyQ.x()
    with pytest.raises(ValueError):
        quartic_analyze((x - 1) ** 2 * (x * x + 1))


@settings(max_examples=60)
@given(
    st.lists(st.integers(-9, 9), min_size=3, max_size=3),
    st.lists(st.integers(-9, 9), min_size=3, max_size=3),
)
def test_factors_multiply_back(a, b):
    a[2] = a[2] or 1
    b[2] = b[2] or 2
    p = PolyQ(a) * PolyQ(b)
    prod = PolyQ([1])
    for f in factor_low_degree(p):
        prod = prod * f
    assert prod == p
    split = quadratic_split(p) if not rational_roots(p) else None
    if split is not None:
        assert split[0] * split[1] == p


# -- mod_s_root_analysis --------------------------------------------------


def test_mod_s_examples():
    assert not mod_s_root_analysis(2, 5).qr3_holds
    assert not mod_s_root_analysis(3, 7).qr3_holds
    one = mod_s_root_analysis(7, 1)
    assert one.qr3_holds and one.residue_roots_exist


def test_mod_s_necessary_direction():
    for s in range(1, 300):
        for r in range(1, 12):
            if gcd(r, s) != 1:
                continue
            for sign in (1, -1):
                m = mod_s_root_analysis(r, sign * s)
                if not m.qr3_holds:
                    assert m.residue_roots_exist is False


def test_mod_s_rejects():
    with pytest.raises(ValueError):
        mod_s_root_analysis(2, 0)
    with pytest.raises(ValueError):
        mod_s_root_analysis(4, 2)


# -- roots_in_quadratic_field ---------------------------------------------


def test_roots_in_quadratic_field_examples():
    K3 = FieldDesc(3)
    assert roots_in_quadratic_field(poly(1, 0, -12), 3) == [QuadElem(0, 2, K3), QuadElem(0, -2, K3)]
    assert roots_in_quadratic_field(build_f_quartic(2, 1), 13) == []
    assert roots_in_quadratic_field(poly(1, 0, 1), 5) == []


def test_roots_in_quadratic_field_mixed_factors():
    x = PolyQ.x()
    p = (x - F(1, 2)) * (x * x - 2 * x - 4)  # 1 +- sqrt5
    K5 = FieldDesc(5)
    assert roots_in_quadratic_field(p, 5) == [QuadElem(1, 1, K5), QuadElem(F(1, 2), 0, K5), QuadElem(1, -1, K5)]
    assert roots_in_quadratic_field(p, 2) == [QuadElem(F(1, 2), 0, FieldDesc(2))]
    q = (x * x - 8) * (x * x - 3)
    assert set(roots_in_quadratic_field(q, 2)) == {QuadElem(0, 2, FieldDesc(2)), QuadElem(0, -2, FieldDesc(2))}


# -- cubic_field_obstruction ----------------------------------------------


@pytest.mark.parametrize("r,s", [(2, 1), (2, -1), (5, 2)])
def test_obstruction_examples(r, s):
    assert cubic_field_obstruction(r, s) is Obstruction.PROVEN


def test_rational_roots_of_f_sweep_against_sympy():
    # sympy finds rational roots of f only at (16, +-11) for r <= 20: f = (x -+ 49) * cubic
    X = sympy.symbols("x")
    hits = {}
    for r in range(2, 21):
        for s in range(-r + 1, r):
            if s == 0 or gcd(r, s) != 1:
                continue
            ours = rational_roots(build_f_quartic(r, s))
            f = X**4 - 6 * (3 * r * r + s * s) * X**2 + 8 * s * (9 * r * r - s * s) * X - 3 * (3 * r * r + s * s) ** 2
            assert ours == sorted(F(int(z)) for z in sympy.Poly(f, X).ground_roots())
            if ours:
                hits[(r, s)] = ours
    assert hits == {(16, -11): [F(-49)], (16, 11): [F(49)]}


@pytest.mark.parametrize("r,s", [(16, 11), (16, -11)])
def test_obstruction_fails_where_f_has_a_root(r, s):
    assert cubic_field_obstruction(r, s) is Obstruction.INCONCLUSIVE


def test_pretty_print():
    assert str(build_f_quartic(2, 1)) == "x^4 - 78x^2 + 280x - 507"
