import mpmath
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

mpmath.mp.dps = 30


def mp_K(k):
    """K(k) as a float from mpmath, via the AGM so that tiny k and k near 1 stay accurate."""
    k = mpmath.mpf(k)
    return float(mpmath.pi / (2 * mpmath.agm(1, mpmath.sqrt(1 - k * k))))


def mp_E(k):
    return float(mpmath.ellipe(mpmath.mpf(k) ** 2))


_ACCEPTANCE = pytest.StashKey()


@pytest.fixture
def criterion(request):
    """Record one acceptance line; the lines are printed in the terminal summary."""

    def report(number, title, ok, detail=""):
        line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}" + (f"  ({detail})" if detail else "")
        request.config.stash.setdefault(_ACCEPTANCE, []).append((number, line))
        return ok

    return report


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
