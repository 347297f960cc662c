import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20181)


def random_unitary(rng, d):
    z = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_state_vector(rng, d):
    v = rng.normal(size=d) + 1j * rng.normal(size=d)
    return v / np.linalg.norm(v)


CRITERIA = {
    1: "decomposition equals the n-qubit phase gate",
    2: "worked example matches symbolic steps",
    3: "gate accounting for n=3..20",
    4: "closed form matches reduced-model evolution",
    5: "second-order coupling independent of photon number",
    6: "conditional phase and Rabi root round trip",
    7: "full-model infidelity strictly decreasing in detuning scale",
    8: "coupling-time identity is exact",
    9: "CLI outputs byte-identical across runs",
}
_acceptance = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.split("::")[-1]
    if "test_acceptance.py" not in report.nodeid or not name.startswith("test_criterion_"):
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        number = int(name.split("_")[2])
        _acceptance.setdefault(number, []).append(report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_acceptance):
        verdict = "PASS" if all(_acceptance[number]) else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {verdict}  {CRITERIA.get(number, '')}")
