from math import gcd

from hypothesis import strategies as st


@st.composite
def point_params(draw, r_max: int = 60):
    """``(r, b)`` with ``2 <= r <= r_max`` and ``gcd(b, r) = 1``."""
    r = draw(st.integers(2, r_max))
    b = draw(st.sampled_from([b for b in range(1, r) if gcd(b, r) == 1]))
    return r, b


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
