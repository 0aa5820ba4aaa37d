import random

from skein import Curve, LaurentA, TorusElement, fg_mul_basis, torus_curve, torus_verify_relations

A = LaurentA.monomial


def test_fg_examples():
    assert fg_mul_basis(Curve(1, 0), Curve(0, 1)) == TorusElement({(1, 1): A(1), (1, -1): A(-1)})
    assert fg_mul_basis(Curve(1, 0), Curve(1, 0)) == TorusElement({(2, 0): 1, (0, 0): 2})
    assert fg_mul_basis(Curve(2, 1), Curve(1, 1)) == TorusElement({(3, 2): A(1), (1, 0): A(-1)})


def test_fg_with_empty_is_twice():
    a = Curve(3, 2)
    assert fg_mul_basis(a, Curve(0, 0)) == TorusElement({a: 2})


def test_unit_and_small_products():
    x = torus_curve(3, -1)
    one = TorusElement.scalar(1)
    assert x * one == x
    assert one * x == x
    x, z, w = torus_curve(1, 0), torus_curve(0, 1), torus_curve(1, 1)
    assert x * (z * w) == (x * z) * w


def test_multicurve_times_curve():
    prod = torus_curve(2, 0) * torus_curve(0, 1)
    # (2,0) = (2,0)_T + 2
    expected = TorusElement({(2, 1): A(2), (2, -1): A(-2), (0, 1): 2})
    assert prod == expected


def test_relations_vanish():
    for name, residual in torus_verify_relations().items():
        assert residual.is_zero(), name


def _rand_curve(rng):
    while True:
        d, n = rng.randint(0, 6), rng.randint(-6, 6)
        if (d, n) != (0, 0):
            return torus_curve(d, n)


def test_order_swap_and_associativity():
    rng = random.Random(3)
    for _ in range(100):
        x, y, z = (_rand_curve(rng) for _ in range(3))
        assert y * x == (x * y).invert_A()
        assert (x * y) * z == x * (y * z)


def test_views_round_trip():
    x = torus_curve(4, 2) + torus_curve(0, 3).scale(A(5))
    assert TorusElement(x.mono_terms(), basis="mono") == x
    assert x.view("T") == x.terms
