import os
import sys

from hypothesis import HealthCheck, settings, strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from oshlab.core import SetFamily  # noqa: E402

import oracles  # noqa: E402

settings.register_profile(
    "default", max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def families(draw, n_min=0, n_max=5):
    n = draw(st.integers(n_min, n_max))
    members = draw(st.sets(st.integers(0, (1 << n) - 1), max_size=1 << n))
    return SetFamily(n, members)


def as_frozen(f: SetFamily):
    return frozenset(oracles.from_mask(m) for m in f.members)


def of_sets(n, *sets) -> SetFamily:
    return SetFamily.from_sets(n, sets)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(results):
        terminalreporter.write_line(results[num])
