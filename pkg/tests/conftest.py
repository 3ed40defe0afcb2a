from fractions import Fraction

from hypothesis import strategies as st

from moddist.arith import QuadField

FIELD_RS = [1, 2, 3, 5, 6, 7, 10, 13]


def rationals(max_num=60, max_den=12):
    return st.builds(
        Fraction,
        st.integers(-max_num, max_num),
        st.integers(1, max_den),
    )


@st.composite
def qelems(draw, field=None, max_num=60, max_den=12):
    K = field if field is not None else QuadField(draw(st.sampled_from(FIELD_RS)))
    return K(draw(rationals(max_num, max_den)), draw(rationals(max_num, max_den)))


@st.composite
def field_pairs(draw, n=2):
    K = QuadField(draw(st.sampled_from(FIELD_RS)))
    return [draw(qelems(field=K)) for _ in range(n)]


# acceptance verdict lines, filled by tests/test_acceptance.py
ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[key])
