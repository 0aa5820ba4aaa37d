import pytest
from hypothesis import settings
from hypothesis import strategies as st

from skein import Curve, Engine, K0Poly, LaurentA, SkeinElement

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

small_int = st.integers(min_value=-4, max_value=4)

laurent = st.dictionaries(st.integers(-8, 8), st.integers(-5, 5), max_size=4).map(LaurentA)

k0_key = st.tuples(
    st.integers(0, 2), st.integers(0, 2), st.integers(0, 2), st.integers(0, 1), st.integers(-6, 6)
)
k0poly = st.dictionaries(k0_key, st.integers(-4, 4), max_size=4).map(K0Poly)


@st.composite
def curves(draw, max_entry=6, allow_empty=False):
    d = draw(st.integers(0, max_entry))
    if d == 0:
        return Curve(0, draw(st.integers(0 if allow_empty else 1, max_entry)))
    return Curve(d, draw(st.integers(-max_entry, max_entry)))


@st.composite
def elements(draw, max_entry=3, max_terms=3):
    terms = draw(st.dictionaries(curves(max_entry, allow_empty=True), k0poly, max_size=max_terms))
    return SkeinElement(terms)


@pytest.fixture(scope="session")
def engine() -> Engine:
    return Engine()


def C(d: int, n: int) -> Curve:
    return Curve(d, n)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
