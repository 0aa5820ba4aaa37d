import pytest
from hypothesis import given

from skein import S1, S2, K0Poly, SkeinElement, UniMatrix, apply_matrix, mirror
from skein.curves import IDENTITY
from skein.mcg import r_permutation

from conftest import curves, elements

R01, R10, R11 = (K0Poly.var(v) for v in ("R01", "R10", "R11"))


def test_s1_example():
    x = SkeinElement.curve(1, 0, R10)
    assert apply_matrix(x, S1) == SkeinElement.curve(1, 1, R11)


def test_identity_is_identity():
    x = SkeinElement({(3, 2): R01 + 1, (0, 0): R10})
    assert apply_matrix(x, IDENTITY) == x


def test_r_index_action_matches_generator_swaps():
    # slots: 0 = R01, 1 = R10, 2 = R11
    assert r_permutation(S1) == {0: 0, 1: 2, 2: 1}
    assert r_permutation(S2) == {0: 2, 1: 1, 2: 0}


def test_det_minus_one_rejected():
    with pytest.raises(ValueError):
        apply_matrix(SkeinElement.one(), UniMatrix(0, 1, 1, 0))


def test_base_identity_transported(engine):
    m = UniMatrix(0, 1, -1, 1)
    assert apply_matrix(engine.mul_basis((1, -1), (1, 1)), m) == engine.mul_basis((2, 1), (0, 1))


def test_mirror_examples(engine):
    p = engine.mul_basis((1, 0), (0, 1))
    assert mirror(p) == p
    assert mirror(SkeinElement.curve(3, 7)) == SkeinElement.curve(3, -7)


@given(elements())
def test_mirror_involution(x):
    assert mirror(mirror(x)) == x


@given(curves(4), curves(4))
def test_mirror_is_compatible_with_product(a, b):
    from skein.engine import default_engine

    e = default_engine()
    x, y = SkeinElement.curve(*a), SkeinElement.curve(*b)
    assert e.mul(mirror(x), mirror(y)) == mirror(e.mul(x, y))
