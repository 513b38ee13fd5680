import numpy as np
from hypothesis import strategies as st

from sp4rep.cquat import CQuat

finite = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False, allow_infinity=False)
complex_unit = st.builds(complex, finite, finite)
cquats = st.builds(lambda w, a, b, c: CQuat(w, (a, b, c)), complex_unit, complex_unit, complex_unit, complex_unit)
seeds = st.integers(min_value=0, max_value=2**32 - 1)


def domain_vector(rng, radius):
    v = rng.normal(size=3) + 1j * rng.normal(size=3)
    return radius * rng.uniform() * v / np.linalg.norm(v)


def real_unit_quaternion(rng):
    x = rng.normal(size=4)
    x /= np.linalg.norm(x)
    return CQuat(x[3], tuple(x[:3]))


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
