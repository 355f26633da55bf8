import numpy as np
import pytest

from flopsrank.stats import MeasurementSet

# Half-widths of the inter-quantile interval for each default range, chosen so
# that the ranks per range reproduce the published rank table for six
# algorithms (alg0/alg1 centred at 10, alg3 at 20, alg2 at 21, alg4/alg5 at 30).
TABLE3_HALF_WIDTHS = {5: 6.0, 10: 4.75, 15: 4.6, 20: 4.0, 25: 3.5, 30: 3.0, 35: 0.4}
TABLE3_CENTRES = {"alg1": 10.0, "alg0": 10.0, "alg3": 20.0, "alg2": 21.0, "alg4": 30.0, "alg5": 30.0}
TABLE3_ORDER = ["alg1", "alg0", "alg3", "alg2", "alg4", "alg5"]


def table3_samples(centre, half_widths=TABLE3_HALF_WIDTHS, unit=1e-3):
    """21 samples whose k/20 order statistic is the (5k)-th percentile exactly."""
    s = [0.0] * 21
    s[0], s[20] = centre - 7.0, centre + 7.0
    for lo, w in half_widths.items():
        k = lo // 5
        s[k], s[20 - k] = centre - w, centre + w
    for k, off in zip(range(8, 13), (-0.3, -0.15, 0.0, 0.15, 0.3)):
        s[k] = centre + off
    assert s == sorted(s)
    return [unit * x for x in s]


@pytest.fixture
def table3_data():
    return {a: MeasurementSet(a, table3_samples(c)) for a, c in TABLE3_CENTRES.items()}


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


# one "PASS|FAIL criterion ..." line per acceptance criterion, echoed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
