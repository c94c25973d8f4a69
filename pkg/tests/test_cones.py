import pytest
from hypothesis import given, settings, strategies as st

from conecalc.cones import Cone, InnerProduct, angle_cone, dual_cone, euler_sum, intersect


def test_quadrant_faces(quadrant):
    dims = sorted(f.dim for f in quadrant.faces())
    assert dims == [0, 1, 1, 2]
    assert quadrant.is_pointed
    assert sorted(quadrant.rays) == [(0, 1), (1, 0)]


def test_halfspace_has_lineality():
    h = Cone(3, [(1, 0, 0)])
    assert h.lineality_dim == 2
    assert len(h.faces()) == 2
    assert dual_cone(h).dim == 1


def test_subspace_and_origin_are_duals():
    assert dual_cone(Cone.origin(3)) == Cone.full(3)
    line = Cone.subspace(2, [(1, 1)])
    assert dual_cone(line) == Cone.subspace(2, [(1, -1)])


def test_gram_changes_dual():
    g = InnerProduct([[2, 1], [1, 2]])
    c = Cone.from_generators(2, [(1, 0), (0, 1)], (), g)
    d = dual_cone(c)
    for r in d.rays:
        assert all(g.pair(r, x) >= 0 for x in c.rays)


def test_angle_cone_of_ray(quadrant):
    ray = next(f for f in quadrant.faces() if f.dim == 1 and f.rays == frozenset({quadrant.rays.index((1, 0))}))
    a = angle_cone(ray, quadrant)
    assert a.lineality_dim == 1
    assert a.contains((0, 1)) and not a.contains((0, -1))


def test_contains_and_rint(quadrant):
    assert quadrant.contains((0, 5))
    assert not quadrant.rint_contains((0, 5))
    assert quadrant.rint_contains(quadrant.rint_point)


def test_intersect():
    a = Cone(2, [(1, 0)])
    b = Cone(2, [(0, 1)])
    assert intersect(a, b) == Cone(2, [(1, 0), (0, 1)])


def test_inconsistent_input_rejected():
    with pytest.raises(ValueError):
        Cone(2, [(1, 0, 0)])


vec3 = st.lists(st.integers(-3, 3), min_size=3, max_size=3).filter(any)


@settings(max_examples=40, deadline=None)
@given(st.lists(vec3, min_size=1, max_size=5))
def test_double_dual(gens):
    c = Cone.from_generators(3, gens)
    assert dual_cone(dual_cone(c)) == c


@settings(max_examples=40, deadline=None)
@given(st.lists(vec3, min_size=1, max_size=5))
def test_euler_relation_pointed(gens):
    # alternating face sum vanishes unless C is a linear subspace
    c = Cone.from_generators(3, gens)
    if c.is_subspace:
        assert euler_sum(c) == 1
    else:
        assert euler_sum(c) == 0
