import pytest
from hypothesis import given

from skein import (
    Curve,
    Engine,
    K0Poly,
    LaurentA,
    SkeinElement,
    TorusElement,
    closed_m0,
    closed_n1,
    decorated,
    fg_mul_basis,
    from_basis,
    mul_det0,
    mul_det1,
    mul_det2,
    quantum_int,
    specialize_torus,
    to_basis,
)
from skein.engine import ProductCache, RecursionContractError, SpecializationError

from conftest import curves, elements

A = K0Poly.A
R01, R10, R11, Y = (K0Poly.var(v) for v in ("R01", "R10", "R11", "y"))


def E(terms):
    return SkeinElement(terms)


def T(d, n, coeff=1):
    return decorated(Curve(d, n), "T", coeff)


def S(d, n, coeff=1):
    return decorated(Curve(d, n), "S", coeff)


# base products ---------------------------------------------------------------


def test_det0():
    assert mul_det0(Curve(0, 1), Curve(0, 1)) == E({(0, 2): 1})
    assert mul_det0(Curve(3, 2), Curve(0, 0)) == E({(3, 2): 1})
    assert mul_det0(Curve(2, 4), Curve(1, 2)) == E({(3, 6): 1})
    assert mul_det0(Curve(1, -1), Curve(2, -2)) == E({(3, -3): 1})
    with pytest.raises(ValueError):
        mul_det0(Curve(1, 0), Curve(0, 1))


def test_det1_three_cases():
    assert mul_det1(Curve(1, 0), Curve(1, 1)) == E({(2, 1): A(2), (0, 1): A(-2), (0, 0): R01})
    assert mul_det1(Curve(1, 0), Curve(0, 1)) == E({(1, 1): A(2), (1, -1): A(-2), (0, 0): R11})
    assert mul_det1(Curve(1, 1), Curve(0, 1)) == E({(1, 2): A(2), (1, 0): A(-2), (0, 0): R10})


def test_det1_negative_is_A_inverted():
    assert mul_det1(Curve(0, 1), Curve(1, 0)) == mul_det1(Curve(1, 0), Curve(0, 1)).invert_A()
    with pytest.raises(ValueError):
        mul_det1(Curve(2, 1), Curve(0, 1))


def test_det2_both_primitive():
    expected = T(2, 0, A(4)) + T(0, 2, A(-4)) + E({(0, 0): Y, (1, 0): A(2) * R10, (0, 1): A(-2) * R01})
    assert mul_det2(Curve(1, -1), Curve(1, 1)) == expected


def test_det2_hand_recursion_oracle(engine):
    # (2,1) = A^-2 (1,0)*(1,1) - A^-4 (0,1) - A^-2 R01, then multiply by (0,1)
    v = SkeinElement.curve(0, 1)
    left = engine.mul(engine.mul(SkeinElement.curve(1, 0), SkeinElement.curve(1, 1)), v).scale(A(-2))
    oracle = left - engine.mul(v, v).scale(A(-4)) - v.scale(A(-2) * R01)
    expected = T(2, 2, A(4)) + T(2, 0, A(-4)) + E({(0, 0): Y, (1, 1): A(2) * R11, (1, 0): A(-2) * R10})
    assert oracle == expected
    assert mul_det2(Curve(2, 1), Curve(0, 1)) == expected
    assert engine.mul_basis((2, 1), (0, 1)) == expected


def test_det2_multiplicity_two_cases():
    first = mul_det2(Curve(2, 0), Curve(0, 1))
    assert first == E({(2, 1): A(4), (2, -1): A(-4), (1, 0): R11, (0, 0): (A(2) + A(-2)) * R01})
    # second factor of multiplicity 2: (0,1) * (2,0)_T, determinant -2
    second = mul_det2(Curve(0, 1), Curve(2, 0))
    assert second == first.invert_A()
    with pytest.raises(ValueError):
        mul_det2(Curve(2, 0), Curve(0, 2))


def test_det2_t_reading_matches_engine(engine):
    v = SkeinElement.curve(0, 1)
    assert engine.mul(T(2, 0), v) == mul_det2(Curve(2, 0), Curve(0, 1))
    assert engine.mul(SkeinElement.curve(1, 1), T(0, 2)) == mul_det2(Curve(1, 1), Curve(0, 2))


# closed formulas ---------------------------------------------------------------


def test_closed_m0_small(engine):
    assert closed_m0(1) == mul_det1(Curve(1, 0), Curve(0, 1))
    assert closed_m0(2) == mul_det2(Curve(2, 0), Curve(0, 1))
    generic = Engine(use_closed_forms=False)
    assert closed_m0(3) == generic.mul(T(3, 0), SkeinElement.curve(0, 1))
    with pytest.raises(ValueError):
        closed_m0(0)


def test_closed_n1_small():
    assert closed_n1(0) == E({(0, 2): 1})
    expected = T(2, 2, A(4)) + T(2, 0, A(-4)) + E({(0, 0): Y, (1, 1): A(2) * R11, (1, 0): A(-2) * R10})
    assert closed_n1(2) == expected


def test_closed_n1_worked_example():
    q2, q3 = quantum_int(2), quantum_int(3)
    expected = (
        T(7, 2, A(14))
        + T(7, 0, A(-14))
        + (S(5, 0, A(-10)) + S(3, 0, A(-2)) + E({(1, 0): A(6)})).scale(Y)
        + E({(6, 1): R11, (5, 1): q2 * R01, (4, 1): q3 * R11, (3, 1): q3 * R01, (2, 1): q2 * R11, (1, 1): R01}).scale(A(2))
        + (E({(0, 0): A(12)}) + S(2, 0, A(4)) + S(4, 0, A(-4)) + S(6, 0, A(-12))).scale(R10)
        + (E({(0, 0): A(8)}) + S(2, 0) + S(4, 0, A(-8))).scale(R10 + R11 * R01)
        + (E({(1, 0): A(2)}) + S(3, 0, A(-6)) + E({(1, 0): A(-2) * 2})).scale(R11 * R11 + R01 * R01)
        + E({(0, 0): R01 * R11 * 5})
        + (S(2, 0, A(-4)) + E({(0, 0): A(4)})).scale(R01 * R11 * 3)
    )
    assert closed_n1(7) == expected
    assert Engine(use_closed_forms=False).mul_basis((7, 1), (0, 1)) == expected


def test_closed_forms_agree_with_recursion():
    generic = Engine(use_closed_forms=False)
    v = SkeinElement.curve(0, 1)
    for m in range(1, 13):
        assert closed_m0(m) == generic.mul(T(m, 0), v)
    for n in range(13):
        assert closed_n1(n) == generic.mul_basis((n, 1), (0, 1))


def test_n1_weights_are_unimodal():
    for n in range(2, 12):
        p = closed_n1(n)
        for i in range(1, n):
            k = p.coeff((i, 1))
            assert k == A(2) * quantum_int(min(i, n - i)) * K0Poly.R(n + i, 1)


# mul / mul_basis ---------------------------------------------------------------


def test_mul_basis_identity(engine):
    assert engine.mul_basis((5, 3), (0, 0)) == SkeinElement.curve(5, 3)
    assert engine.mul_basis((0, 0), (5, 3)) == SkeinElement.curve(5, 3)


def test_mul_examples(engine):
    x = SkeinElement.curve(4, -1, R10 + A(3))
    assert engine.mul(SkeinElement.one(), x) == x
    left = SkeinElement.curve(1, 0, R01)
    assert engine.mul(left, SkeinElement.curve(0, 1)) == mul_det1(Curve(1, 0), Curve(0, 1)).scale(R01)
    assert engine.mul(T(2, 0), SkeinElement.curve(0, 1)) == closed_m0(2)


def test_operator_uses_default_engine():
    x, z = SkeinElement.curve(1, 0), SkeinElement.curve(0, 1)
    assert x * z == mul_det1(Curve(1, 0), Curve(0, 1))
    assert 3 * x == x.scale(3)


def test_contract_error_on_bad_bound(engine):
    with pytest.raises(RecursionContractError):
        engine.mul_basis((3, 1), (0, 1), _bound=3)


def test_cache_counters_and_idempotence():
    e = Engine()
    e.mul_basis((1, 0), (0, 1))
    assert e.cache.calls == 1
    first = e.mul_basis((8, 3), (0, 1))
    hits = e.cache.hits
    again = e.mul_basis((8, 3), (0, 1))
    assert again is first
    assert e.cache.hits == hits + 1
    assert e.cache.max_depth >= 2


def test_cache_entries_rederive_identically():
    e = Engine()
    e.mul_basis((9, 4), (0, 2))
    for (a, b), value in list(e.cache.entries.items()):
        assert Engine().mul_basis(a, b) == value


def test_cache_merge_never_overwrites():
    cache = ProductCache()
    key = (Curve(1, 0), Curve(0, 1))
    original = SkeinElement.curve(1, 1)
    cache.put(key, original)
    assert cache.merge({key: SkeinElement.curve(2, 2), (Curve(1, 1), Curve(0, 1)): original}) == 1
    assert cache.entries[key] is original
    assert cache.put(key, SkeinElement.zero()) is original


@given(curves(5), curves(5))
def test_order_swap(a, b):
    from skein.engine import default_engine

    e = default_engine()
    assert e.mul_basis(b, a) == e.mul_basis(a, b).invert_A()


# bases -----------------------------------------------------------------------


def test_to_T_basis_examples():
    assert to_basis(SkeinElement.curve(0, 2), "T") == {Curve(0, 2): K0Poly.one(), Curve(0, 0): K0Poly.const(2)}
    assert to_basis(SkeinElement.curve(1, 1), "T") == {Curve(1, 1): K0Poly.one()}
    x = SkeinElement({(3, 6): 1, (1, 2): -2})
    assert to_basis(x, "S") == {Curve(3, 6): K0Poly.one()}


@given(elements())
def test_basis_round_trip(x):
    for kind in ("T", "S", "mono"):
        assert from_basis(to_basis(x, kind), kind) == x


# torus specialization ----------------------------------------------------------


def test_specialize_examples(engine):
    base = engine.mul_basis((1, 0), (0, 1))
    assert specialize_torus(base) == fg_mul_basis(Curve(1, 0), Curve(0, 1))
    base = engine.mul_basis((1, -1), (1, 1))
    assert specialize_torus(base) == TorusElement({(2, 0): LaurentA.monomial(2), (0, 2): LaurentA.monomial(-2)})
    assert specialize_torus(SkeinElement.scalar(Y)).is_zero()


def test_specialize_rejects_odd_powers():
    with pytest.raises(SpecializationError):
        specialize_torus(SkeinElement.curve(1, 0, A(3)))
