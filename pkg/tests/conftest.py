import os
import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", max_examples=150, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("quick", max_examples=30, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def pytest_terminal_summary(terminalreporter):
    """One line per acceptance criterion, in criterion order."""
    rows = {}
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            props = dict(getattr(rep, "user_properties", []))
            if "criterion" in props and rep.when == "call" or (outcome == "error" and "criterion" in props):
                rows[props["criterion"]] = ("PASS" if outcome == "passed" else "FAIL", props.get("title", ""),
                                            props.get("seconds"))
    if not rows:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for n in sorted(rows):
        status, title, secs = rows[n]
        timing = f" ({secs:.2f}s)" if secs is not None else ""
        terminalreporter.write_line(f"criterion {n:>2}: {status}  {title}{timing}")


@pytest.fixture
def criterion(record_property):
    """Tag an acceptance test: ``with criterion(3, "title", budget=30): ...``."""
    import time
    from contextlib import contextmanager

    @contextmanager
    def tag(number, title, budget=None):
        record_property("criterion", number)
        record_property("title", title)
        t0 = time.perf_counter()
        yield
        elapsed = time.perf_counter() - t0
        record_property("seconds", elapsed)
        if budget is not None:
            assert elapsed < budget, f"took {elapsed:.2f}s, budget {budget}s"

    return tag
