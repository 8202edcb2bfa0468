"""One test per acceptance criterion; each records a PASS/FAIL line.

The lines are printed in the "acceptance criteria" section of the pytest
terminal summary. Criterion 10 (the whole battery is green and fast enough)
is computed there from the session results.
"""

import time

import numpy as np
import pytest

from conftest import qa, row_switch
from loopsmith import gf
from loopsmith.bruck import bruck_associate, verify_centers_theorem, verify_section4_suite
from loopsmith.gf import Mat2
from loopsmith.inner import commutative_identity_suite, is_automorphic, mlt_order
from loopsmith.iso import are_isomorphic, classify_qa
from loopsmith.loop import is_associative, is_commutative
from loopsmith.qa import QAParams, closed_form_mismatches, verify_degenerate_group, verify_prop_constr
from loopsmith.search import SearchConstraints, find_loops
from loopsmith.structure import center, upper_central_series

SUITE_NAMES = ("lem1", "lem1.5", "lem2", "laip", "Ds", "aip", "3.2", "lem3")


def _prop_constr_all(matrices, p):
    bad = []
    for A in matrices:
        rep = verify_prop_constr(QAParams(p, A))
        if not rep["ok"]:
            bad.append((A.format(), {k: v for k, v in rep["checks"].items() if not v}))
    return bad


def test_criterion_01_qa_structure(acceptance_log):
    t0 = time.monotonic()
    bad = _prop_constr_all(gf.anisotropic_matrices(2), 2) + _prop_constr_all(gf.anisotropic_matrices(3), 3)
    t_small = time.monotonic() - t0
    witnesses = [gf.type_witness(5, t) for t in (1, 2, 3)]
    pool = [A for A in gf.anisotropic_matrices(5) if A not in witnesses]
    rng = np.random.default_rng(20260)
    sample = [pool[i] for i in rng.choice(len(pool), size=20, replace=False)]
    t1 = time.monotonic()
    bad += _prop_constr_all(witnesses + sample, 5)
    t_five = time.monotonic() - t1
    ok = not bad and t_small < 60 and t_five < 600
    acceptance_log(1, ok, f"p<=3 exhaustive ({t_small:.1f} s), p=5 on 3 witnesses + 20 random "
                          f"({t_five:.0f} s), failures {len(bad)}")
    assert ok, bad


def test_criterion_02_closed_forms(acceptance_log):
    t0 = time.monotonic()
    mism = {text: closed_form_mismatches(QAParams(3, Mat2.parse(text, 3)))
            for text in ("0,1,2,0", "1,1,2,1")}
    elapsed = time.monotonic() - t0
    ok = all(not m for m in mism.values()) and elapsed < 30
    acceptance_log(2, ok, f"p=3 both witnesses, {27 + 2 * 27 * 27} generators each, "
                          f"mismatches {sum(map(len, mism.values()))}, {elapsed:.1f} s")
    assert ok, mism


def test_criterion_03_classification(acceptance_log):
    expected = {2: (1, {2}), 3: (2, {1, 3}), 5: (3, {1, 2, 3})}
    got = {}
    t0 = time.monotonic()
    for p in expected:
        classes = classify_qa(p)
        got[p] = (len(classes), {c.plane_type for c in classes})
    elapsed = time.monotonic() - t0
    ok = got == expected and elapsed < 1800
    acceptance_log(3, ok, "counts " + ", ".join(f"p={p}: {n} {sorted(t)}" for p, (n, t) in got.items())
                   + f", {elapsed:.0f} s")
    assert ok, got


@pytest.mark.xfail(strict=True, reason="for p = 4k+1 and a nonresidue the counts are (k, k+1)")
def test_criterion_04_perron(acceptance_log):
    t0 = time.monotonic()
    mismatches = []
    for p in gf.primes_below(100):
        if p == 2:
            continue
        expected = gf.perron_closed_form(p)
        mismatches += [(p, a) for a in range(1, p) if gf.perron_counts(p, a) != expected]
    elapsed = time.monotonic() - t0
    ok = not mismatches and elapsed < 5
    acceptance_log(4, ok, f"{len(mismatches)} (p, a) pairs differ from the closed form, "
                          f"first {mismatches[:3]}, {elapsed:.2f} s")
    assert ok


def test_criterion_05_type_table(acceptance_log):
    t0 = time.monotonic()
    wrong = []
    for p in gf.primes_below(50):
        for t in (1, 2, 3):
            w = gf.type_witness(p, t)
            expected = {1: p != 2, 2: p != 3, 3: p != 2}[t]
            if (w is not None) != expected or (w is not None and gf.plane_type(w) != t):
                wrong.append((p, t))
    elapsed = time.monotonic() - t0
    ok = not wrong and elapsed < 10
    acceptance_log(5, ok, f"all p < 50, wrong entries {wrong}, {elapsed:.2f} s")
    assert ok


def _main_theorem_checks(Q) -> dict:
    B = bruck_associate(Q)          # raises on Bol, AIP or power failure
    m = mlt_order(Q)
    while m % 3 == 0:
        m //= 3
    centers = verify_centers_theorem(Q, B)
    suite = verify_section4_suite(Q, B)
    return {
        "nonassociative": not is_associative(Q),
        "center_nontrivial": len(center(Q)) > 1,
        "series_reaches_Q": len(upper_central_series(Q)[-1]) == Q.n,
        "series_equal": centers["checks"]["series_equal"],
        "centers_theorem": centers["ok"],
        "section4_suite": suite["ok"] and not suite["vacuous"],
        "mlt_is_3_power": m == 1,
    }


def test_criterion_06_order_27(acceptance_log):
    c = SearchConstraints(order=27, commutative=True, automorphic=True, nonassociative=True,
                          time_budget=600)
    r = find_loops(c, limit=1)
    full = find_loops(SearchConstraints(order=27, commutative=True, automorphic=True,
                                        nonassociative=True, nontrivial_center=True,
                                        time_budget=600), limit=None)
    loops = r.loops + full.loops
    failures = [(i, k) for i, Q in enumerate(loops)
                for k, v in _main_theorem_checks(Q).items() if not v]
    ok = bool(r.loops) and not failures
    acceptance_log(6, ok, f"found {len(r.loops)} in {r.elapsed:.1f} s; all checks on "
                          f"{len(loops)} loops (incl. {len(full.loops)} from a complete "
                          f"central-frame run), failures {failures}")
    assert ok


def test_criterion_07_order_8(acceptance_log):
    t0 = time.monotonic()
    r = find_loops(SearchConstraints(order=8, commutative=True, automorphic=True,
                                     trivial_center=True, time_budget=300), limit=None)
    elapsed = time.monotonic() - t0
    iso = len(r.loops) == 1 and are_isomorphic(r.loops[0], qa(2, "0,1,1,1")) is not None
    ok = r.complete and iso and elapsed < 300
    acceptance_log(7, ok, f"complete={r.complete}, classes {len(r.loops)}, "
                          f"isomorphic to Q([[0,1],[1,1]]): {iso}, {elapsed:.1f} s")
    assert ok


def test_criterion_08_degenerate(acceptance_log):
    t0 = time.monotonic()
    rep = verify_degenerate_group(QAParams(5, Mat2(0, 1, 0, 0, 5)))
    elapsed = time.monotonic() - t0
    ok = rep["ok"] and elapsed < 10
    acceptance_log(8, ok, f"p=5 [[0,1],[0,0]]: {rep['checks']}, {elapsed:.1f} s")
    assert ok


def test_criterion_09_identity_suites(acceptance_log, commutative_automorphic_corpus):
    failing = {}
    for name, Q in commutative_automorphic_corpus.items():
        suite = commutative_identity_suite(Q)
        bad = [k for k in SUITE_NAMES if suite[k] is not None]
        if bad:
            failing[name] = bad
    detected, mutants = 0, 0
    for name, Q in commutative_automorphic_corpus.items():
        if not name.startswith(("ca", "qa")):
            continue
        M = row_switch(Q)
        if is_commutative(M) and is_automorphic(M):
            continue
        mutants += 1
        detected += any(v is not None for v in commutative_identity_suite(M).values())
    ok = not failing and mutants > 0 and detected == mutants
    acceptance_log(9, ok, f"{len(commutative_automorphic_corpus)} corpus loops, suite failures "
                          f"{failing}; mutants detected {detected}/{mutants}")
    assert ok
