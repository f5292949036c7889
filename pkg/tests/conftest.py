import pytest
from hypothesis import settings, strategies as st

from graded_kronecker.quiver import LineBundle, TorsionInfinity, TorsionZero

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

# filled by tests/test_acceptance.py, printed at the end of the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


nonzero_d = st.integers(-5, 5).filter(bool)


@st.composite
def labels(draw, k_max=6, shifts=(-3, 3)):
    family = draw(st.sampled_from(["lb", "tz", "ti"]))
    shift = draw(st.integers(*shifts))
    if family == "lb":
        return LineBundle(draw(st.integers(-k_max, k_max)), shift)
    k = draw(st.integers(1, k_max))
    return (TorsionZero if family == "tz" else TorsionInfinity)(k, shift)


def all_labels(k_max=8):
    out = [LineBundle(k) for k in range(-k_max, k_max + 1)]
    out += [TorsionZero(k) for k in range(1, k_max + 1)]
    out += [TorsionInfinity(k) for k in range(1, k_max + 1)]
    return out


@pytest.fixture
def fields():
    from graded_kronecker.linalg import ScalarField

    return [ScalarField.rationals(), ScalarField.prime(2), ScalarField.prime(5)]
