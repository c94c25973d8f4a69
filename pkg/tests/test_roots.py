from fractions import Fraction

import pytest

from conecalc.roots import (Parabolic, RootDatum, check_basic_root_props, parabolics,
                            standard_borel, tilde_gamma, tilde_gamma_oracle, whole_group)


@pytest.mark.parametrize("n, count", [(1, 1), (2, 3), (3, 13), (4, 75)])
def test_parabolic_counts(n, count):
    # ordered set partitions (Fubini numbers)
    assert len(parabolics(RootDatum((n,)))) == count


def test_rho_and_nilradical():
    d = RootDatum((3,))
    b = standard_borel(d)
    assert b.rho == (1, 0, -1)
    assert b.dim_nilradical == 3
    p = Parabolic(d, [[[1, 2], [3]]])
    assert p.rho == (Fraction(1, 2), Fraction(1, 2), -1)
    assert p.dim_nilradical == 2
    assert whole_group(d).dim_nilradical == 0


def test_product_datum():
    d = RootDatum((2, 1))
    assert d.rank == 3
    assert len(parabolics(d)) == 3


def test_inclusion_order():
    d = RootDatum((3,))
    b = standard_borel(d)
    assert all(b <= p for p in parabolics(d, b))
    assert len(parabolics(d, b)) == 4


def test_chamber_is_open_cone_of_simple_roots():
    d = RootDatum((3,))
    c = standard_borel(d).chamber_cone()
    assert c.contains((2, 1, 0)) and not c.contains((0, 1, 2))


@pytest.mark.parametrize("n", [2, 3])
def test_basic_root_props(n):
    ps = parabolics(RootDatum((n,)))
    for p in ps:
        for q in ps:
            if p <= q:
                assert all(check_basic_root_props(p, q).values())


def test_tilde_gamma_matches_oracle(sampler):
    d = RootDatum((3,))
    b = standard_borel(d)
    t = (Fraction(2), Fraction(0), Fraction(-2))
    for p in parabolics(d, b):
        for h in sampler.vectors(40, 3):
            assert tilde_gamma(b, p, h, t) == tilde_gamma_oracle(b, p, h, t)


def test_datum_json_roundtrip():
    d = RootDatum((2, 2))
    assert RootDatum.from_json(d.to_json()) == d
    p = standard_borel(d)
    assert Parabolic.from_json(d, p.id) == p
