from fractions import Fraction

import pytest

from conecalc.cones import Cone
from conecalc.scalars import Gaussian, simplify
from conecalc.transforms import (in_convergence_region, is_regular, laplace_cone, laplace_gamma,
                                 monte_carlo_cross_check)

lams = [(Fraction(-1), Fraction(-2)), (Fraction(3), Fraction(-5, 2)), (Fraction(1, 3), Fraction(7))]


@pytest.mark.parametrize("lam", lams)
def test_quadrant_closed_forms(quadrant, lam):
    assert laplace_cone(quadrant).evaluate(lam) == 1 / (lam[0] * lam[1])
    assert laplace_cone(quadrant, "H1").evaluate(lam) == -1 / (lam[0] ** 2 * lam[1])


def test_half_line_complex(half_line):
    lam = (Gaussian(-1, 2),)
    assert laplace_cone(half_line).evaluate(lam) == -1 / lam[0]


def test_non_simplicial_cone_is_triangulated():
    # a square pyramid splits into two simplicial cones; the sum is independent of the split
    c = Cone.from_generators(3, [(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1)])
    lam = (Fraction(1, 3), Fraction(-1, 5), Fraction(-2))
    a = laplace_cone(c).evaluate(lam)
    b = laplace_cone(c, reverse=True).evaluate(lam)
    assert a == b


def test_gram_volume_factor():
    # a ray of Euclidean length sqrt 2 scales the transform
    c = Cone.from_generators(2, [(1, 1)])
    v = laplace_cone(c).evaluate((Fraction(-1), Fraction(-1)))
    assert abs(complex(v) - 2 ** 0.5 / 2) < 1e-12


def test_regularity(quadrant):
    assert is_regular((Fraction(1), Fraction(2)), quadrant)
    assert not is_regular((Fraction(0), Fraction(2)), quadrant)
    assert in_convergence_region((Fraction(-1), Fraction(-2)), quadrant)
    assert not in_convergence_region((Fraction(1), Fraction(-2)), quadrant)


@pytest.mark.parametrize("q", [None, "H1", "H1*H2 - 2"])
def test_gamma_transform_constant_term(quadrant, q):
    lam = (Fraction(3, 2), Fraction(-1, 3))
    pe = laplace_gamma(quadrant, q, lam)
    pp = pe.purely_polynomial_part()
    assert pp.degree() == 0
    assert simplify(pp.constant_term()) == laplace_cone(quadrant, q).evaluate(lam)


def test_gamma_transform_value(quadrant):
    # box (0,1]^2 against e^{-H1 - 2 H2}
    import math

    pe = laplace_gamma(quadrant, None, (Fraction(-1), Fraction(-2)))
    want = (1 - math.exp(-1)) * (1 - math.exp(-2)) / 2
    assert abs(pe.evaluate((Fraction(1), Fraction(1))) - want) < 1e-12


def test_monte_carlo(quadrant):
    est = monte_carlo_cross_check(quadrant, None, (Fraction(-1), Fraction(-2)), samples=200_000)
    assert abs(est.value.real - 0.5) < 0.02


def test_irregular_lambda_raises(quadrant):
    with pytest.raises((ValueError, ZeroDivisionError)):
        laplace_cone(quadrant).evaluate((Fraction(0), Fraction(1)))
