from fractions import Fraction

import pytest

from conecalc.indicators import Sampler
from conecalc.relative import (BUILTIN_CONFIGS, EmbeddingConfig, build_relative_fan, builtin_config,
                               c_coefficient, check_c_coefficients, check_coverage,
                               check_disjointness, check_face_bijection, check_witnesses,
                               maximal_cells, rho_underline, verify_cones_props)
from conecalc.roots import Parabolic, RootDatum, standard_borel


@pytest.fixture(scope="module")
def fans():
    return {name: build_relative_fan(builtin_config(name)) for name in BUILTIN_CONFIGS}


def test_line_splits_into_two_half_lines(fans):
    fan = fans["gl1_in_gl2_corner"]
    assert len(fan.cells) == 3
    assert sorted(c.cone.dim for c in fan.cells.values()) == [0, 1, 1]
    assert sorted(c.rho_underline[0] for c in fan.cells.values() if c.cone.dim) == [-Fraction(1, 2), Fraction(1, 2)]


def test_plane_has_three_chambers(fans):
    fan = fans["gl2_in_gl3_plane"]
    assert len(fan.cells) == 8
    assert sum(c.cone.dim == 2 for c in fan.cells.values()) == 3
    p = Parabolic(fan.config.ambient, [[[1, 2], [3]]])
    assert rho_underline(fan, p) == (Fraction(1, 2), Fraction(1, 2))


def test_c_coefficients(fans):
    fan = fans["gl2_in_gl3_plane"]
    got = {c.label: c_coefficient(fan, c.parabolic) for c in maximal_cells(fan)}
    assert got == {"({1},{2,3})": Fraction(1, 2), "({1,2},{3})": 0,
                   "({1,3},{2})": Fraction(1, 2), "({3},{1,2})": 0}
    diag = fans["gl2_diag_in_gl2xgl2"]
    (borel,) = maximal_cells(diag)
    assert c_coefficient(diag, borel.parabolic) == Fraction(1, 2)
    assert all(r["ok"] for r in check_c_coefficients(diag))


@pytest.mark.parametrize("name", list(BUILTIN_CONFIGS))
def test_fan_checks(fans, name):
    fan = fans[name]
    assert not fan.discrepancies
    assert not check_disjointness(fan)
    assert not check_face_bijection(fan)
    assert not check_witnesses(fan)
    assert not check_coverage(fan, Sampler(1), 500)["failures"]


def test_cones_props_small(fans):
    rep = verify_cones_props(fans["gl2_in_gl3_plane"], Sampler(2), 60)
    rep.pop("elapsed")
    assert all(not v["failures"] for v in rep.values())


def test_cell_lookup_by_label(fans):
    fan = fans["gl2_in_gl3_plane"]
    assert fan.cell("({1,2},{3})") is fan.cell("[[[1,2],[3]]]")
    with pytest.raises(ValueError):
        fan.cell("({1},{2})")


def test_config_json_roundtrip():
    cfg = builtin_config("gl2_in_gl3_plane")
    again = EmbeddingConfig.from_json(cfg.to_json())
    assert again.iota == cfg.iota and again.p0prime == cfg.p0prime


def test_bad_configs():
    amb, sub = RootDatum((2,)), RootDatum((1,))
    with pytest.raises(ValueError):
        EmbeddingConfig("degenerate", amb, sub, [[0], [0]], standard_borel(sub))
    with pytest.raises(ValueError):
        EmbeddingConfig("not-isometric", amb, sub, [[1], [0]], standard_borel(sub), gram=[[2]])
    with pytest.raises(ValueError):
        builtin_config("gl5_in_gl7")
