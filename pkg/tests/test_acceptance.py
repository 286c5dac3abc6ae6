"""Acceptance criteria, one test per criterion.

Each test checks its criterion at the stated tolerance and prints a
pass/fail line (visible with -s). Wall-clock budgets are asserted when the
compiled kernel backend is active; the pure-Python fallback computes the
same values more slowly. The quoted homothety constant in criterion 7 does
not hold for the construction (the measured factor is 2k+1, not 2k): that
sub-check is a strict expected failure, everything else in the criterion
passes.
"""

import time

import pytest

from sepprof.kernels import backend_name
from sepprof.verify import EXPECTED_FAILURES, VerifyContext, run_suites

CTX = VerifyContext(seed=7, tol=0.05, budget=300_000)

_cache: dict = {}


def suite_rows(name):
    if name not in _cache:
        start = time.perf_counter()
        rows = run_suites([name], CTX)
        _cache[name] = (rows, time.perf_counter() - start)
    return _cache[name]


def check(criterion, suites, prefixes, budget_s, exclude=EXPECTED_FAILURES,
          timing_fn=None):
    """Assert the criterion's rows pass; enforce the wall budget.

    The budget is measured on the containing suites, or on ``timing_fn``
    when the suite bundles unrelated slower checks.
    """
    rows, elapsed = [], 0.0
    for name in suites:
        r, t = suite_rows(name)
        rows.extend(r)
        elapsed += t
    selected = [r for r in rows
                if any(r.check_id.startswith(p) for p in prefixes)
                and r.status != "skip" and r.check_id not in exclude]
    assert selected, f"criterion {criterion}: no checks matched {prefixes}"
    failed = [r for r in selected if r.status != "pass"]
    if timing_fn is not None:
        start = time.perf_counter()
        timing_fn()
        elapsed = time.perf_counter() - start
    status = "PASS" if not failed else "FAIL"
    print(f"ACCEPTANCE {criterion}: {status} "
          f"({len(selected)} checks, {elapsed:.2f}s)")
    for r in failed:
        print(f"  failed: {r.check_id} lhs={r.lhs} rhs={r.rhs}")
    assert not failed
    if backend_name() == "compiled":
        assert elapsed <= budget_s, (
            f"criterion {criterion} exceeded its {budget_s}s budget")


def test_criterion_01_fiedler_identity():
    check(1, ["cartesian_powers"], ["powers:fiedler:"], 1.0)


def test_criterion_02_cheeger_inequalities():
    def inequalities_only():
        from sepprof.cheeger import cheeger_combinatorial
        from sepprof.spectral import lambda2
        from sepprof.verify import _regular_small_graphs

        for _, G in _regular_small_graphs():
            h = float(cheeger_combinatorial(G).value_exact)
            lam = lambda2(G).lambda2
            D = G.max_degree()
            assert h * h / (2 * D) <= lam + 1e-9 <= 2 * D * h + 2e-9

    check(2, ["cheeger_sandwiches"], ["cheeger:ineq-"], 5.0,
          timing_fn=inequalities_only)


def test_criterion_03_power_sandwich():
    check(3, ["cartesian_powers"], ["powers:sandwich-"], 60.0)


def test_criterion_04_edge_power_bound():
    check(4, ["cartesian_powers"], ["powers:edge-lower:"], 60.0)


def test_criterion_05_cut_vs_cheeger():
    check(5, ["cuts_profiles"], ["cuts:cut-vs-cheeger:"], 30.0)


def test_criterion_06_profile_sandwiches():
    check(6, ["cuts_profiles"],
          ["profiles:poincare", "profiles:sep-eighth:"], 120.0)


def test_criterion_07_lamp_chain():
    check(7, ["lamp_embedding"], ["lamp:"], 120.0)


@pytest.mark.xfail(strict=True, reason="stated homothety constant 2k; the "
                   "defined graph gives 2k+1, see README")
def test_criterion_07_homothety_as_stated():
    rows, _ = suite_rows("lamp_embedding")
    row = next(r for r in rows if r.check_id == "lamp:homothety-stated-2k")
    assert row.status == "pass"


def test_criterion_08_coarsening_and_halving():
    check(8, ["coarsening"], ["coarsen:"], 60.0)


def test_criterion_09_analytic_suite():
    check(9, ["rescaling"], ["rescale:"], 180.0)


def test_criterion_10_cocycles():
    check(10, ["cocycles"], ["cocycle:"], 300.0)


def test_criterion_11_compression_bound():
    check(11, ["compression_bound"],
          ["bound:closed-form", "bound:dominates-profile:",
           "bound:embedding-lipschitz:", "bound:exponential-form:"], 120.0)


def test_criterion_12_rearrangement():
    check(12, ["compression_bound"], ["bound:rearrange-"], 10.0)


def test_criterion_13_determinism(tmp_path, capsys):
    from sepprof.cli import main

    start = time.perf_counter()
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for p in paths:
        code = main(["verify", "all", "--seed", "7", "--out", str(p)])
        assert code == 0
    identical = paths[0].read_bytes() == paths[1].read_bytes()
    print(f"ACCEPTANCE 13: {'PASS' if identical else 'FAIL'} "
          f"(2 runs, {time.perf_counter() - start:.2f}s)")
    assert identical
