from fractions import Fraction

import pytest

from conecalc.cones import Cone
from conecalc.figures import FIGURES, emit_figure, gamma_figure


@pytest.mark.parametrize("name", FIGURES)
def test_figures_are_byte_stable(name):
    a = emit_figure(name)
    assert a.startswith(b"<?xml") and b"<svg" in a
    assert a == emit_figure(name)


def test_fig3_takes_parameters():
    c = Cone.from_generators(2, [(1, 0), (1, 1)])
    a = emit_figure("fig3", {"cone": c, "T": (Fraction(2), Fraction(1))})
    assert a != emit_figure("fig3")


def test_three_dimensional_scene_rejected():
    with pytest.raises(ValueError):
        gamma_figure(Cone(3, [(1, 0, 0)]), (1, 1, 1))
    with pytest.raises(ValueError):
        emit_figure("fig7", {"config": "gl3_in_gl4_corner"})


def test_unknown_figure():
    with pytest.raises(ValueError):
        emit_figure("fig99")
