import math
from dataclasses import dataclass, field

import pytest
from hypothesis import settings

from vibshock import models

settings.register_profile("default", derandomize=True, deadline=None, max_examples=60)
settings.load_profile("default")

RATE = models.DEFAULT_SAMPLE_RATE
DURATION = 10.0
A_C = 3.58e-6
F_C = 100.0


@pytest.fixture(scope="session")
def harmonic():
    return models.gen_harmonic(models.HarmonicParams(A_C, F_C), RATE, DURATION)


def make_pulses(T_p, duration=DURATION, rate=RATE):
    import warnings
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return models.gen_pulse_train(models.PulseTrainParams(F_C, T_p, A_C), rate, duration)


@pytest.fixture(scope="session")
def pulses():
    return make_pulses(0.1)


@pytest.fixture(scope="session")
def wgn():
    return models.gen_wgn(1.0, RATE, 20.0, seed=0)


# ---- acceptance bookkeeping -----------------------------------------------

@dataclass
class Check:
    criterion: str
    name: str
    value: float
    target: str
    passed: bool


@dataclass
class AcceptanceLog:
    titles: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)

    def record(self, criterion, name, value, target, passed):
        self.checks.append(Check(criterion, name, value, target, bool(passed)))
        return bool(passed)


_LOG = AcceptanceLog()


@pytest.fixture(scope="session")
def acceptance_log():
    return _LOG


def pytest_terminal_summary(terminalreporter):
    if not _LOG.checks:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for crit in sorted(_LOG.titles, key=lambda c: int(c[1:])):
        checks = [c for c in _LOG.checks if c.criterion == crit]
        if not checks:
            continue
        ok = all(c.passed for c in checks)
        tr.write_line(f"{crit} {'PASS' if ok else 'FAIL'}  {_LOG.titles[crit]}")
        for c in checks:
            value = f"{c.value:.6g}" if isinstance(c.value, float) and math.isfinite(c.value) else str(c.value)
            tr.write_line(f"    [{'ok' if c.passed else 'XX'}] {c.name}: {value}  (target {c.target})")
