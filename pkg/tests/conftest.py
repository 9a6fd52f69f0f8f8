import os

from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", deadline=None, max_examples=400,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


# one summary line per acceptance criterion, taken from the real test outcome
ACCEPTANCE_TITLES = {
    1: "Tamari suite",
    2: "permutation suite",
    3: "zoo goldens through the CLI",
    4: "rho is lax and not strict",
    5: "multi-index appendix",
    6: "Comp and Comp_B series",
    7: "filtration suite",
    8: "hyperoctahedral and reversal equivariance",
}
_acceptance: dict = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rsplit("::", 1)[-1]
    if "test_acceptance.py" not in report.nodeid or not name.startswith("test_criterion_"):
        return
    k = int(name.split("_")[2])
    if report.failed or (report.when == "call" and report.skipped):
        _acceptance[k] = "fail" if report.failed else "skip"
    elif report.when == "call" and k not in _acceptance:
        _acceptance[k] = "pass"


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_acceptance):
        terminalreporter.write_line(f"criterion {k}: {_acceptance[k]}  ({ACCEPTANCE_TITLES.get(k, '')})")
