from fractions import Fraction

import pytest

from conecalc.cones import Cone
from conecalc.indicators import (REGISTRY, IdentityContext, PointBatch, Sampler, gamma,
                                 gamma_support_certificate, sigma, validate_fan, verify_identity,
                                 verify_sigma_norm_bound)


def test_gamma_half_line_is_unit_interval(half_line):
    g = gamma(half_line, (Fraction(1),))
    assert [g.evaluate((Fraction(h, 4),)) for h in range(-2, 7)] == [0, 0, 0, 1, 1, 1, 1, 0, 0]


def test_gamma_quadrant_is_box(quadrant):
    t = (Fraction(2), Fraction(1))
    g = gamma(quadrant, t)
    assert g.evaluate((Fraction(1), Fraction(1, 2))) == 1
    assert g.evaluate((Fraction(3), Fraction(1, 2))) == 0
    assert g.evaluate((Fraction(0), Fraction(1, 2))) == 0


def test_batch_matches_pointwise(sampler, quadrant):
    t = (Fraction(3, 2), Fraction(2))
    g = gamma(Cone.from_generators(2, [(2, 1), (1, 3)]), t)
    pts = sampler.vectors(300, 2)
    batch = g.evaluate_batch(PointBatch([p + t for p in pts]))
    assert list(batch) == [g.evaluate(p) for p in pts]


def test_gamma_support_certificate(sampler):
    c = Cone.from_generators(2, [(1, 0), (1, 2)])
    t = (Fraction(2), Fraction(3))
    g, ball = gamma(c, t), gamma_support_certificate(c, t)
    for h in sampler.vectors(500, 2):
        if g.evaluate(h):
            assert ball.contains(h, c.inner)


@pytest.mark.parametrize("identity", ["euler", "bgs_angle", "bgs_dual", "langlands_1", "langlands_2",
                                      "gamma_duality", "gamma_decomposition",
                                      "gamma_dual_decomposition", "htau_tau_sigma", "sigma_support"])
@pytest.mark.parametrize("cone", [
    Cone(2, [(1, 0), (0, 1)]),
    Cone(3, [(1, 0, 0)]),
    Cone.from_generators(3, [(1, 0, 0), (1, 1, 0), (0, 1, 1), (1, 0, 1)]),
    Cone.subspace(2, [(1, 2)]),
], ids=["quadrant", "halfspace", "square-pyramid", "line"])
def test_identities(identity, cone):
    rep = verify_identity(identity, IdentityContext(cone=cone), Sampler(3), 150)
    assert rep.passed, rep.failures[:2]


def test_broken_identity_is_caught(quadrant, sampler):
    # σ of the top face is not the indicator of C: the comparison must fail
    from conecalc.indicators import Cell, Equation, SignedCellSum, check_equations

    top = quadrant.top_face
    eq = Equation("bogus", sigma(top, quadrant), SignedCellSum.of(Cell(quadrant)))
    pts = [p + (Fraction(0), Fraction(0)) for p in sampler.vectors(200, 2)]
    assert check_equations([eq], pts, 2)


def test_fan_refinement_and_validation(sampler):
    c = Cone(2, [(1, 0), (0, 1)])
    pieces = [Cone(2, [(1, -1), (0, 1)]), Cone(2, [(-1, 1), (1, 0)])]
    rep = verify_identity("gamma_fan_refinement", IdentityContext(cone=c, fan=pieces), sampler, 300)
    assert rep.passed
    with pytest.raises(ValueError):
        validate_fan(c, [Cone(2, [(1, -1), (0, 1)]), Cone(2, [(1, 0), (0, 1)])])


def test_sigma_norm_bound(quadrant, sampler):
    assert verify_sigma_norm_bound(IdentityContext(cone=quadrant), sampler, 200).passed


def test_registry_contents():
    import conecalc.relative  # noqa: F401  registers the relative identities

    assert {"euler", "gamma_fan_refinement", "relative_sigma_sum"} <= set(REGISTRY)
