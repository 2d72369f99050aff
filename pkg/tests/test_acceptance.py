"""The eleven acceptance criteria at their stated tolerances and runtimes."""
import subprocess
import sys
import time

import pytest

from conftest import record_acceptance
from multcalc.acceptance import CRITERIA, DEFAULT_SEED, RUNTIME_BOUNDS


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    start = time.perf_counter()
    res = CRITERIA[number](DEFAULT_SEED)
    elapsed = time.perf_counter() - start
    bound = RUNTIME_BOUNDS.get(number)
    in_time = bound is None or elapsed < bound
    failed = [name for name, ok in res.checks.items() if not ok]
    if not in_time:
        failed.append(f"runtime {elapsed:.2f}s >= {bound}s")
    budget = f"< {bound:g} s" if bound is not None else "no bound"
    detail = f"{res.title}; {elapsed:.2f} s ({budget})" + (f"; failing: {', '.join(failed)}" if failed else "")
    record_acceptance(number, res.passed and in_time, detail)
    assert res.passed, f"failing checks {failed}; metrics {res.metrics}"
    assert in_time, f"runtime {elapsed:.2f}s exceeds {bound}s"


def _acceptance_all() -> tuple[int, bytes]:
    cmd = [sys.executable, "-m", "multcalc", "--scenario", "acceptance-all", "--seed", str(DEFAULT_SEED)]
    proc = subprocess.run(cmd, capture_output=True, check=False)
    return proc.returncode, proc.stdout


def test_criterion_11_determinism():
    code_a, out_a = _acceptance_all()
    code_b, out_b = _acceptance_all()
    same = out_a == out_b and code_a == code_b and len(out_a) > 0
    record_acceptance(11, same, f"determinism; {len(out_a)} bytes per acceptance-all report, exit code {code_a}")
    assert out_a, "acceptance-all produced no output"
    assert out_a == out_b
    assert code_a == code_b
