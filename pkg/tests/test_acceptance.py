"""Acceptance suite: each criterion runs at its stated size and prints one
pass/fail line.  All checks are exact (discrete mathematics, zero
tolerance); two criteria also carry runtime targets which are asserted.
"""

import time

import pytest

from topolab import VerifyConfig, verify
from topolab.cli_io import (
    suite_closure_formula,
    suite_cofinite_example,
    suite_finite_collapse,
    suite_omega_chain,
    suite_product_theorems,
    suite_rudin_witness,
    suite_transfer,
    suite_universal_property,
)

CONFIG = VerifyConfig()  # the defaults are the acceptance sizes: 500 spaces
                         # for the collapse, 100/200/100/100 for the others


def _run(capsys, number, title, suite, time_limit=None):
    start = time.monotonic()
    result = suite(CONFIG)
    elapsed = time.monotonic() - start
    ok = result.ok() and (time_limit is None or elapsed <= time_limit)
    with capsys.disabled():
        status = "PASS" if ok else "FAIL"
        print(f"ACCEPTANCE {number} {status} [{elapsed:6.1f}s] {title}: "
              f"passed={result.passed} failed={result.failed} "
              f"skipped={result.skipped}")
        for note in result.notes[:5]:
            print(f"    {note}")
    assert result.failed == 0, result.notes[:5]
    if time_limit is not None:
        assert elapsed <= time_limit
    return result


def test_criterion_1_finite_collapse(capsys):
    result = _run(capsys, 1, "finite collapse over 500 spaces",
                  suite_finite_collapse, time_limit=60.0)
    # 500 samples, 4 family checks plus 2 checks per category each
    assert result.passed == CONFIG.samples * (4 + 2 * len(CONFIG.categories))


def test_criterion_2_cofinite_example(capsys):
    _run(capsys, 2, "cofinite space reproduction", suite_cofinite_example)


def test_criterion_3_omega_chain(capsys):
    _run(capsys, 3, "omega chain reflections", suite_omega_chain)


def test_criterion_4_universal_property(capsys):
    result = _run(capsys, 4, "universal property over the sober catalog",
                  suite_universal_property, time_limit=300.0)
    assert result.passed == CONFIG.universal_samples


def test_criterion_5_closure_formula(capsys):
    result = _run(capsys, 5, "closure formula on all subsets",
                  suite_closure_formula)
    assert result.passed == CONFIG.closure_samples


def test_criterion_6_product_theorems(capsys):
    _run(capsys, 6, "product reflection and K-space biconditional",
         suite_product_theorems)


def test_criterion_7_rudin_witness(capsys):
    result = _run(capsys, 7, "minimal-witness search", suite_rudin_witness)
    assert result.passed + result.skipped == CONFIG.rudin_instances


def test_criterion_8_transfer(capsys):
    _run(capsys, 8, "frame isomorphism, transfer, and Smyth checks",
         suite_transfer)


def test_criterion_9_mutation_self_test(capsys):
    config = VerifyConfig(samples=10, mutate=True)
    report = verify(config)
    ok = (not report.ok) and report.exit_code != 0
    baseline = verify(VerifyConfig(samples=10))
    ok = ok and baseline.ok and baseline.exit_code == 0
    with capsys.disabled():
        print(f"ACCEPTANCE 9 {'PASS' if ok else 'FAIL'} [   0.0s] "
              f"mutation mode exits non-zero while the baseline passes")
    assert report.exit_code == 1
    assert baseline.exit_code == 0
