import random
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from skein import S1, Curve, UniMatrix, farey_parents, normalize, pair_det, reduce_pair
from skein.curves import IDENTITY


def test_normalize_examples():
    assert normalize(-2, 3) == Curve(2, -3)
    assert normalize(0, -1) == Curve(0, 1)
    c = normalize(4, -6)
    assert c == Curve(4, -6)
    assert c.multiplicity == 2
    assert c.slope == Curve(2, -3)


def test_pair_det_examples():
    assert pair_det(Curve(1, 0), Curve(0, 1)) == 1
    assert pair_det(Curve(2, 1), Curve(0, 1)) == 2
    assert pair_det(Curve(3, 7), Curve(1, 2)) == -1


@pytest.mark.parametrize(
    "c, parents",
    [((2, 1), ((1, 0), (1, 1))), ((5, 2), ((3, 1), (2, 1))), ((3, 1), ((1, 0), (2, 1)))],
)
def test_farey_parents_examples(c, parents):
    assert farey_parents(Curve(*c)) == parents


@pytest.mark.parametrize("bad", [(4, 2), (1, 0), (3, 3), (3, -1), (3, 4)])
def test_farey_parents_domain(bad):
    with pytest.raises(ValueError):
        farey_parents(Curve(*bad))


def test_farey_parents_all_reduced_fractions():
    for d in range(2, 60):
        for n in range(d):
            if gcd(d, n) != 1:
                continue
            p1, p2 = farey_parents(Curve(d, n))
            assert (p1.d + p2.d, p1.n + p2.n) == (d, n)
            assert abs(pair_det(p1, p2)) == 1
            assert min(p1 + p2) >= 0
            if d >= 3:
                assert p2.d >= 2


def test_reduce_pair_examples():
    rp = reduce_pair(Curve(3, 7), Curve(1, 2))
    assert (rp.first, rp.second) == (Curve(1, 0), Curve(0, 1))
    assert rp.transform == (S1 ** 3) @ UniMatrix(0, 1, -1, 2)

    rp = reduce_pair(Curve(2, 1), Curve(0, 3))
    assert (rp.first, rp.second, rp.transform) == (Curve(2, 1), Curve(0, 3), IDENTITY)

    rp = reduce_pair(Curve(1, 5), Curve(0, 1))
    assert (rp.first, rp.second) == (Curve(1, 0), Curve(0, 1))
    assert rp.transform == S1 ** -5

    rp = reduce_pair(Curve(2, 3), Curve(0, 0))
    assert (rp.first, rp.second, rp.transform) == (Curve(2, 3), Curve(0, 0), IDENTITY)


def test_reduce_pair_random_preserves_det():
    rng = random.Random(5)
    for _ in range(1000):
        a = normalize(rng.randint(-50, 50), rng.randint(-50, 50))
        b = normalize(rng.randint(-50, 50), rng.randint(-50, 50))
        if b.is_empty():
            continue
        rp = reduce_pair(a, b)
        assert abs(pair_det(rp.first, rp.second)) == abs(pair_det(a, b))
        assert rp.transform.det() == 1
        assert rp.transform.act(a) == rp.first
        assert rp.transform.act(b) == rp.second


def test_reduce_pair_first_in_range():
    for d1 in range(0, 21):
        for n1 in range(-20, 21):
            for b in [(0, 1), (1, 1), (3, -2), (5, 15), (7, 3)]:
                rp = reduce_pair(normalize(d1, n1), normalize(*b))
                if rp.first.d >= 1:
                    assert 0 <= rp.first.n < rp.first.d


@given(st.integers(1, 5), st.integers(-5, 5), st.integers(1, 5), st.integers(-5, 5), st.integers(1, 4), st.integers(1, 4))
def test_intersection_number_of_multicurves(d1, n1, d2, n2, c1, c2):
    # 2|det| of (c1 d1, c1 n1), (c2 d2, c2 n2) matches 2|c1 d1 c2 n2 - c1 n1 c2 d2|
    a, b = Curve(c1 * d1, c1 * n1), Curve(c2 * d2, c2 * n2)
    assert 2 * abs(pair_det(a, b)) == 2 * abs(c1 * d1 * c2 * n2 - c1 * n1 * c2 * d2)


def test_unimatrix_rejects_non_unimodular():
    with pytest.raises(ValueError):
        UniMatrix(2, 0, 0, 1)


def test_s1_fixes_vertical_and_shifts_slope():
    assert S1.act(Curve(0, 1)) == Curve(0, 1)
    assert S1.act(Curve(3, 2)) == Curve(3, 5)
