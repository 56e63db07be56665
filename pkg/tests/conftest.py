import pytest
from hypothesis import HealthCheck, settings

from ckde.pairing import generate_params, params_from_prime

settings.register_profile("default", deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("fast", max_examples=10, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def desk():
    """p = 59, q = 5, r = 1: small enough to brute force everything."""
    return params_from_prime(59)


@pytest.fixture(scope="session")
def mid():
    """A 64-bit instance where accidental collisions are negligible."""
    return generate_params(64, seed=2024)


def pytest_terminal_summary(terminalreporter):
    results = {}
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py" in nodeid and rep.when in ("call", "setup"):
                results.setdefault(nodeid, "PASS" if outcome == "passed" else "FAIL")
                if outcome != "passed":
                    results[nodeid] = "FAIL"
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid in sorted(results):
        name = nodeid.split("::")[-1]
        terminalreporter.write_line(f"[{results[nodeid]}] {name}")
