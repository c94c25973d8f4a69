from fractions import Fraction

import pytest

from conecalc.indicators import Sampler
from conecalc.periods import (Character, ExponentDatum, ToyFormData, eisenstein_correction_terms,
                              integrability, is_xi_regular, random_form, regularized_period,
                              solve_pole, truncated_period_expansion)
from conecalc.polynomial import Polynomial
from conecalc.relative import build_relative_fan, builtin_config
from conecalc.scalars import Gaussian, simplify


@pytest.fixture(scope="module")
def line_fan():
    return build_relative_fan(builtin_config("gl1_in_gl2_corner"))


@pytest.fixture(scope="module")
def plane_fan():
    return build_relative_fan(builtin_config("gl2_in_gl3_plane"))


def _positive_ray(fan):
    return next(c for c in fan.cells.values() if c.cone.dim == 1 and c.cone.rays[0][0] > 0)


def _single(fan, lam, q="1"):
    cell = _positive_ray(fan)
    d = ExponentDatum(cell.id, (Gaussian(lam),), Polynomial.parse(q, 1))
    return ToyFormData({cell.id: [d]})


def test_single_ray_value(line_fan):
    # μ = -2 + 1/2
    form = _single(line_fan, Fraction(-2))
    assert regularized_period(line_fan, form, Character.zero(1)) == Fraction(2, 3)
    pe = truncated_period_expansion(line_fan, form, Character.zero(1))
    assert simplify(pe.purely_polynomial_part().constant_term()) == Fraction(2, 3)
    assert integrability(line_fan, form, Character.zero(1))


def test_divergent_but_regular(line_fan):
    form = _single(line_fan, Fraction(3))
    assert is_xi_regular(line_fan, form, Character.zero(1))[0]
    assert not integrability(line_fan, form, Character.zero(1))
    assert regularized_period(line_fan, form, Character.zero(1)) == -1 / Fraction(7, 2)


def test_irregular_form_raises(line_fan):
    form = _single(line_fan, Fraction(-1, 2))
    ok, bad = is_xi_regular(line_fan, form, Character.zero(1))
    assert not ok and bad
    with pytest.raises(ValueError):
        regularized_period(line_fan, form, Character.zero(1))


def test_random_forms_constant_term(plane_fan):
    s = Sampler(5)
    xi = Character.zero(2)
    for _ in range(4):
        form = random_form(plane_fan, s, xi, complex_lambda=True)
        pp = truncated_period_expansion(plane_fan, form, xi).purely_polynomial_part()
        assert pp.degree() == 0
        assert simplify(pp.constant_term()) == regularized_period(plane_fan, form, xi)


def test_q_must_live_on_the_cell(plane_fan):
    # the ({1,2},{3}) cell is the diagonal ray, so H1 - H2 is transverse to it
    cell = plane_fan.cell("({1,2},{3})")
    d = ExponentDatum(cell.id, (Gaussian(-1), Gaussian(-1)), Polynomial.parse("H1 - H2", 2))
    with pytest.raises(ValueError):
        ToyFormData({cell.id: [d]}).validate(plane_fan)


def test_eisenstein_poles(plane_fan):
    terms, poles = eisenstein_correction_terms(plane_fan, Fraction(3, 2), None, (Fraction(1), Fraction(0)))
    assert len(terms) == 8
    # c_Q is 0 or 1/2 on this fan, so the shifts are 3/2 and 0
    assert poles == [Fraction(-3, 2), Fraction(0), Fraction(3, 2)]
    assert all(solve_pole(t) == [t.pole] for t in terms)


def test_eisenstein_needs_c_q(plane_fan):
    with pytest.raises(ValueError):
        eisenstein_correction_terms(plane_fan, Fraction(1), {}, None)
