import collections

import pytest

CRITERIA = {
    1: "Z/7 {1,2,4}: golden bounds and indices, under 1 s",
    2: "family sweep 3<=n<=50, m<=min(6,n-1): beta_r = gamma_r = predicted, under 60 s",
    3: "500 random instances: gamma_r^m >= |G_eff| and gamma_r >= hard floor",
    4: "extremal characterization on (Z/d)^m and 200 non-extremal instances",
    5: "prod lambda_i <= m! det L on criteria 2-3; minkowski_rhs = p for m = 1, 2",
    6: "primes p <= 31, 100 supports with m >= 3: beta_r <= (p+3)/2",
    7: "all cyclic supports n <= 20, m <= 4 agree with the box-scan oracle",
    8: "inequality chain on every computed instance; violations are hard errors",
}

_outcomes = collections.defaultdict(list)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_runtest_logreport(report):
    if report.when == "call" or report.outcome != "passed":
        crit = getattr(report, "criterion", None)
        if crit is not None:
            _outcomes[crit].append(report.outcome)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        outcome.get_result().criterion = marker.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n, text in CRITERIA.items():
        results = _outcomes.get(n)
        if not results:
            status = "NOT RUN"
        elif all(r == "passed" for r in results):
            status = "PASS"
        else:
            status = "FAIL"
        tr.write_line(f"criterion {n}: {status:7s} {text}")
