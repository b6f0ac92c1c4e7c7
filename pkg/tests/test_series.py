import pytest
from hypothesis import given, strategies as st

from superbbw.series import (
    NonUnitDenominator, Poly, TruncatedSeries, parse_poly, poly_eval_signed, poly_prod,
    poly_substitute_power, render_poly, series_div_exact, series_from_generator_degrees,
)

polys = st.lists(st.integers(-20, 20), max_size=8).map(lambda c: Poly(tuple(c)))
ONE_T2 = Poly((1, 0, 1))


def test_add_examples():
    assert Poly((1, 1)) + ONE_T2 == Poly((2, 1, 1))
    assert ONE_T2 + Poly() == ONE_T2
    cube = Poly((1, 0, 3, 0, 3, 0, 1))
    assert cube + Poly(tuple(-c for c in cube.coeffs)) == Poly()


def test_trailing_zeros_trimmed():
    assert Poly((1, 2, 0, 0)).coeffs == (1, 2)
    assert Poly((0, 0)).coeffs == ()


def test_mul_examples():
    assert poly_prod([ONE_T2] * 3) == Poly((1, 0, 3, 0, 3, 0, 1))
    assert Poly((1, 1)) * Poly((1, 1, 1)) == Poly((1, 2, 2, 1))
    assert ONE_T2 * Poly.one() == ONE_T2


def test_substitute_power():
    assert poly_substitute_power(Poly((1, 1)), 2) == ONE_T2
    assert poly_substitute_power(Poly((1, 2, 2, 1)), 2) == Poly((1, 0, 2, 0, 2, 0, 1))
    with pytest.raises(ValueError):
        poly_substitute_power(ONE_T2, 0)


def test_eval_signed():
    assert poly_eval_signed(ONE_T2) == 2
    assert poly_eval_signed(Poly((1, 1))) == 0
    assert poly_eval_signed(Poly((1, 0, 3, 0, 3, 0, 1))) == 8


def test_generator_degrees():
    assert series_from_generator_degrees([2, 2], 4).coeffs == (1, 0, 2, 0, 3)
    assert series_from_generator_degrees([], 4).coeffs == (1, 0, 0, 0, 0)
    assert series_from_generator_degrees([4], 8).coeffs == (1, 0, 0, 0, 1, 0, 0, 0, 1)


def test_division():
    num = series_from_generator_degrees([2, 2], 6)
    den = series_from_generator_degrees([2, 4], 6)
    assert series_div_exact(num, den) == TruncatedSeries.from_poly(ONE_T2, 6)
    ratio = series_div_exact(TruncatedSeries.from_poly(Poly((1, 0, 0, 0, -1)), 10),
                             TruncatedSeries.from_poly(Poly((1, 0, -1)), 10))
    assert ratio.as_poly() == ONE_T2
    with pytest.raises(NonUnitDenominator):
        series_div_exact(num, TruncatedSeries.from_poly(Poly((2, 1)), 6))


def test_truncation_is_min_order():
    a = TruncatedSeries((1, 1, 1), 10)
    b = TruncatedSeries((1, 1), 4)
    assert (a * b).order == 4


def test_render_and_json():
    p = Poly((1, 0, 3, 0, 3, 0, 1))
    assert render_poly(p) == "1 + 3t^2 + 3t^4 + t^6"
    assert render_poly(Poly((0, -1, 2))) == "-t + 2t^2"
    assert render_poly(p, tex=True) == "1 + 3t^{2} + 3t^{4} + t^{6}"
    assert Poly.from_json(p.to_json()) == p
    assert p.to_json() == {"coeffs": [1, 0, 3, 0, 3, 0, 1]}


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c


@given(polys)
def test_render_parse_roundtrip(p):
    assert parse_poly(render_poly(p)) == p


@given(polys, st.integers(1, 5))
def test_substitution_preserves_count(p, s):
    assert poly_substitute_power(p, s)(1) == p(1)


@given(st.lists(st.integers(1, 6), max_size=4), st.lists(st.integers(1, 6), max_size=4),
       st.integers(0, 20))
def test_generator_series_multiplicative(d1, d2, n):
    whole = series_from_generator_degrees(d1 + d2, n)
    assert whole == series_from_generator_degrees(d1, n) * series_from_generator_degrees(d2, n)


@given(polys, st.lists(st.integers(-5, 5), max_size=6), st.integers(0, 15))
def test_division_inverts_multiplication(p, tail, n):
    den = TruncatedSeries((1,) + tuple(tail), n)
    num = TruncatedSeries.from_poly(p, n)
    assert series_div_exact(num * den, den) == num
