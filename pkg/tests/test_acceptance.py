"""Acceptance criteria 1-14, each under its stated time limit.

Every criterion prints one ``CRITERION n: PASS|FAIL`` line.  Failing
criteria are real disagreements between the computation and the claimed
value; see the project notes for the analysis.
"""

import subprocess
import sys
import time

import pytest

from wittgroup import suites
from wittgroup.cohomology import split_check
from wittgroup.extensions import quotient_extension
from wittgroup.structure_theorem import gr_extension


_capture = {}


@pytest.fixture(autouse=True)
def _uncaptured(capsys):
    _capture["capsys"] = capsys
    yield
    _capture.clear()


def _report(n, ok, elapsed, limit, detail=""):
    status = "PASS" if ok and elapsed <= limit else "FAIL"
    line = f"CRITERION {n}: {status} ({elapsed:.1f}s of {limit}s){' ' + detail if detail else ''}"
    with _capture["capsys"].disabled():
        print(f"\n{line}", flush=True)
    return status == "PASS"


def _run(n, limit, fn, select=None):
    t0 = time.perf_counter()
    recs = fn()
    if select is not None:
        recs = [r for r in recs if select(r["name"])]
    elapsed = time.perf_counter() - t0
    bad = [f"{r['name']}: expected {r['expected']}, computed {r['computed']}" for r in recs if not r["pass"]]
    assert recs
    ok = _report(n, not bad, elapsed, limit, "; ".join(bad))
    assert elapsed <= limit, f"took {elapsed:.1f}s"
    assert not bad, bad
    return ok


def test_criterion_01_h1_table():
    _run(1, 30, suites.h1_table, lambda name: ", M)" not in name)


def test_criterion_02_h1_full_matrices():
    _run(2, 30, suites.h1_table, lambda name: ", M)" in name)


def test_criterion_03_trivial_coefficients():
    _run(3, 300, suites.trivial_coefficients)


def test_criterion_04_submodules():
    _run(4, 120, suites.submodule_lemma)


def test_criterion_05_nonsplit_p_divides_n():
    def fn():
        ext, G, mods = gr_extension(2, 1, 2)
        out = []
        for label, E in (("kernel M_0", ext), ("kernel V", quotient_extension(ext))):
            r = split_check(E, seed=7, brute_force=True)
            verdict = "Split" if r.split else "NonSplit"
            out.append(suites.record(f"SL_2(GR(4,2)) -> SL_2(F_4), {label}, methods agree={r.brute_force}",
                                     "no section", "NonSplit", verdict, ok=(not r.split) and r.brute_force))
        return out

    _run(5, 120, fn)


def test_criterion_06_small_p_sections():
    _run(6, 300, suites.small_p_sections)


def test_criterion_07_theorem_trials():
    _run(7, 600, suites.theorem_trials)


def test_criterion_08_dual_trivializer():
    _run(8, 60, suites.dual_trivializer)


def test_criterion_09_f5_counterexample():
    _run(9, 60, suites.f5_counterexample)


def test_criterion_10_injectivity_and_descent():
    _run(10, 600, suites.injectivity_h2)


def test_criterion_11_p_divides_n():
    _run(11, 600, suites.p_divides_n)


def test_criterion_12_power_formula():
    _run(12, 120, suites.formula1)


def test_criterion_13_transgression():
    _run(13, 60, suites.transgression_checks)


def test_criterion_14_determinism(tmp_path):
    t0 = time.perf_counter()
    outs = []
    for i in range(2):
        path = tmp_path / f"all{i}.json"
        proc = subprocess.run([sys.executable, "-m", "wittgroup.cli", "suite", "all", "--seed", "7", "--compare",
                               "--output", str(path)], capture_output=True, text=True, timeout=45 * 60)
        assert proc.returncode in (0, 1), proc.stderr
        outs.append(path.read_bytes())
    elapsed = time.perf_counter() - t0
    same = outs[0] == outs[1]
    _report(14, same, elapsed, 45 * 60)
    assert same and elapsed <= 45 * 60
