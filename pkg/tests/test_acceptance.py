"""One test per acceptance criterion; each prints a single pass/fail line."""
import subprocess
import sys
import time

import pytest

from conftest import ACCEPTANCE_LINES
from ellbundles.acceptance import BUDGETS, CRITERIA, run_criterion

SEED = 0


def report(number, name, passed, elapsed=None, budget=None, note=""):
    timing = "" if elapsed is None else f" {elapsed:.2f}s/{budget:.0f}s"
    line = f"ACCEPTANCE {number} [{'PASS' if passed else 'FAIL'}] {name}{timing} {note}".rstrip()
    ACCEPTANCE_LINES.append(line)
    print("\n" + line)


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    t0 = time.perf_counter()
    res = run_criterion(number, SEED)
    elapsed = time.perf_counter() - t0
    budget = BUDGETS[number]
    ok = res.passed and elapsed < budget
    report(number, res.name, ok, elapsed, budget)
    assert res.passed, res.details
    assert elapsed < budget, f"runtime {elapsed:.2f}s over budget {budget}s"


def test_criterion_8_determinism():
    runs = [
        subprocess.run([sys.executable, "-m", "ellbundles.cli", "selftest", "--seed", str(SEED)],
                       capture_output=True, check=False)
        for _ in range(2)
    ]
    same = runs[0].stdout == runs[1].stdout and runs[0].returncode == 0
    report(8, "determinism (selftest JSON byte-identical)", same)
    assert runs[0].returncode == 0, runs[0].stderr.decode()
    assert runs[0].stdout == runs[1].stdout
