from fractions import Fraction

from hypothesis import given, strategies as st

from conecalc import linalg as la
from conecalc.scalars import Gaussian, Surd, simplify

small = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def test_rank_and_nullspace():
    rows = [(1, 2, 3), (2, 4, 6), (0, 1, 1)]
    assert la.rank(rows) == 2
    null = la.nullspace(rows, 3)
    assert len(null) == 1
    for v in null:
        assert all(la.dot(r, v) == 0 for r in la.mat(rows))


def test_inverse_roundtrip():
    m = la.mat([[2, 1], [1, 3]])
    assert la.mat_mul(m, la.inverse(m)) == la.identity(2)


@given(st.lists(small, min_size=3, max_size=3), st.lists(small, min_size=3, max_size=3))
def test_dot_is_bilinear(u, v):
    w = la.add(u, v)
    assert la.dot(w, w) == la.dot(u, u) + 2 * la.dot(u, v) + la.dot(v, v)


@given(small, small, small, small)
def test_gaussian_field(a, b, c, d):
    x, y = Gaussian(a, b), Gaussian(c, d)
    assert (x * y) - (y * x) == 0
    if y:
        assert (x / y) * y == x


def test_gaussian_str():
    assert str(Gaussian(Fraction(1, 2), -3)) in ("1/2-3*I", "1/2 - 3*I")


def test_surd_arithmetic():
    r2 = Surd.sqrt(2)
    assert simplify(r2 * r2) == 2
    assert simplify(Surd.sqrt(8)) == simplify(r2 * 2)
    assert abs(complex(r2 / 3) - 2 ** 0.5 / 3) < 1e-12
