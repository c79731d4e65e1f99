"""Acceptance criteria 1-7, all at exact equality.

Each criterion records one PASS/FAIL line in RESULTS; the terminal summary
hook in conftest prints them at the end of the run.
"""
import time
from math import comb

import pytest

from oshlab.core import SetFamily, complement_family, elements, is_downset, is_l_sperner, level, levels, prec_leq
from oshlab.errors import CriterionFails
from oshlab.shatter import extract_witness, order_shatters, osh_direct, sh_all, st_all
from oshlab.shift import check_stage_invariant, osh_via_shift, shift_full
from oshlab.sperner import (
    construct_sperner_witness,
    criterion_holds,
    criterion_sum,
    exhaustive_nonexistence,
    iter_l_sperner,
)
from oshlab.suites import random_corpus
from oshlab.twolevel import (
    TwoLevelParams,
    equal_prefix_check,
    even_prefix_length,
    membership,
    minimal_sets,
    osh_consecutive_levels,
    t_min,
    tmin_bound,
)

pytestmark = pytest.mark.acceptance

RESULTS: dict[int, str] = {}
SEED = 20240501
RANDOM_NS = range(5, 11)
RANDOM_TRIALS = 1000


def record(num, title, failures, checked, elapsed):
    verdict = "PASS" if not failures and checked else "FAIL"
    line = f"criterion {num} {verdict}: {title} ({checked} checks, {len(failures)} failures, {elapsed:.1f}s)"
    if failures:
        line += f"; first: {failures[0]}"
    RESULTS[num] = line
    print(line)
    return verdict == "PASS"


def family_corpus():
    for code in range(1 << 16):
        yield SetFamily(4, [x for x in range(16) if code >> x & 1], validate=False), ("n=4", code)
    for case in random_corpus(RANDOM_NS, RANDOM_TRIALS, SEED):
        yield case.family, (f"n={case.info['n']}", case.info["trial"])


@pytest.fixture(scope="module")
def family_runs():
    """One pass over the criterion 1 corpus; every law is evaluated per family."""
    out = {1: [], 2: [], "stage": []}
    counts = {1: 0, 2: 0, "stage": 0}
    times = {1: 0.0, 2: 0.0, "stage": 0.0}
    for f, tag in family_corpus():
        t0 = time.perf_counter()
        via_shift, direct = osh_via_shift(f), osh_direct(f)
        counts[1] += 1
        if via_shift != direct:
            out[1].append(tag)
        t1 = time.perf_counter()
        s, t = sh_all(f), st_all(f)
        laws = (
            len(direct) == len(f),
            t.issubset(direct) and direct.issubset(s),
            len(t) <= len(f) <= len(s),
            osh_direct(direct) == direct,
            osh_direct(complement_family(f)) == direct,
            is_downset(direct),
        )
        counts[2] += 1
        if not all(laws):
            out[2].append((tag, laws))
        t2 = time.perf_counter()
        trace = shift_full(f)
        for target in direct.members:
            counts["stage"] += 1
            w = extract_witness(f, target)
            if w is None or not check_stage_invariant(f, w, trace):
                out["stage"].append((tag, elements(target)))
        t3 = time.perf_counter()
        times[1] += t1 - t0
        times[2] += t2 - t1
        times["stage"] += t3 - t2
    return out, counts, times


def two_level_params(n_max=12):
    for n in range(2, n_max + 1):
        for d in range(2, n + 1):
            for a in range(0, n - d + 1):
                yield TwoLevelParams(n, a, d)


@pytest.fixture(scope="module")
def two_level_runs():
    out = {"closed": [], "minimal": [], "tmin": [], "gap": [], "prefix": []}
    counts = dict.fromkeys(out, 0)
    t0 = time.perf_counter()
    for p in two_level_params():
        fam = p.family()
        truth = osh_via_shift(fam)
        members = set(truth.members)
        for s in range(1 << p.n):
            counts["closed"] += 1
            if membership(s, p) != (s in members):
                out["closed"].append((p, elements(s)))
        for ms in minimal_sets(p):
            t = ms.realize()
            counts["minimal"] += 1
            if t not in members or any(
                o != t and o in members and prec_leq(o, t) for o in level(p.n, t.bit_count())
            ):
                out["minimal"].append((p, ms.label()))
        bound = tmin_bound(p)
        for s in members:
            if t_min(s) >= 1:
                counts["tmin"] += 1
                if t_min(s) > bound:
                    out["tmin"].append((p, elements(s)))
        if p.d > 2:
            for m in range((p.n + 1) // 2):
                one_gap = sum(1 << (2 * i - 1) for i in range(1, m + 1)) | (1 << (2 * m))
                if 2 * m + 1 <= p.n:
                    counts["gap"] += 1
                    if one_gap in members:
                        out["gap"].append((p, elements(one_gap)))
            for s in members:
                m = even_prefix_length(s)
                if m:
                    counts["prefix"] += 1
                    if not equal_prefix_check(extract_witness(fam, s), m):
                        out["prefix"].append((p, elements(s)))
    return out, counts, time.perf_counter() - t0


def test_criterion_1_shift_equals_osh(family_runs):
    out, counts, times = family_runs
    assert counts[1] == (1 << 16) + len(RANDOM_NS) * RANDOM_TRIALS
    assert record(1, "T(F) = osh(F) on all n=4 families and 1000 random per n=5..10",
                  out[1], counts[1], times[1])


def test_criterion_2_cardinality_and_sandwich(family_runs):
    out, counts, times = family_runs
    assert record(2, "|osh|=|F|, st <= osh <= sh, |st| <= |F| <= |sh|, idempotent, complement",
                  out[2], counts[2], times[2])


def test_criterion_3_sperner_construction():
    t0 = time.perf_counter()
    failures, checked = [], 0
    for ell in (1, 2, 3):
        for a in range(1 << 8):
            if not criterion_holds(a, ell):
                with pytest.raises(CriterionFails):
                    construct_sperner_witness(a, ell)
                continue
            w = construct_sperner_witness(a, ell)
            if w.n > 22:
                continue
            checked += 1
            ok = (
                w.target == a
                and len(w.family) == 1 << a.bit_count()
                and is_l_sperner(w.family, ell)
                and order_shatters(w.family, a)
            )
            if not ok:
                failures.append((elements(a), ell))
    assert record(3, "l-Sperner witness for every A in [8], l <= 3 meeting the criterion",
                  failures, checked, time.perf_counter() - t0)


def test_criterion_4_sperner_converse():
    t0 = time.perf_counter()
    failures, checked = [], 0
    antichains = sum(1 for _ in iter_l_sperner(5, 1))
    if antichains != 7581:
        failures.append(f"{antichains} antichains of P([5])")
    for a in range(1 << 5):
        if criterion_sum(a) >= 1:
            checked += 1
            if not exhaustive_nonexistence(a, 5, 1):
                failures.append(("l=1", elements(a)))
    for ell in (1, 2):
        for a in range(1 << 4):
            checked += 1
            found = not exhaustive_nonexistence(a, 4, ell)
            if found and not criterion_holds(a, ell):
                failures.append((f"l={ell}", elements(a), "found despite failing criterion"))
            if criterion_holds(a, ell) and construct_sperner_witness(a, ell).n <= 4 and not found:
                failures.append((f"l={ell}", elements(a), "constructed witness missed"))
    assert record(4, "no l-Sperner witness when the sum reaches l (7581 antichains of P([5]))",
                  failures, checked, time.perf_counter() - t0)


def test_criterion_5_consecutive_levels():
    t0 = time.perf_counter()
    failures, checked = [], 0
    for n in range(0, 13):
        for ell in range(1, 5):
            for k in range(ell - 1, n + 1):
                checked += 1
                ks = range(k - ell + 1, k + 1)
                got = osh_consecutive_levels(n, k, ell)
                if got != osh_via_shift(levels(n, ks)) or len(got) != sum(comb(n, j) for j in ks if j >= 0):
                    failures.append((n, k, ell))
    assert record(5, "consecutive-levels closed form for n <= 12, l <= 4",
                  failures, checked, time.perf_counter() - t0)


def test_criterion_6_two_level(two_level_runs):
    out, counts, elapsed = two_level_runs
    failures = out["closed"] + out["minimal"]
    assert record(6, "two-level membership equals T(F) for n <= 12, minimal sets are minimal",
                  failures, counts["closed"] + counts["minimal"], elapsed)


def test_criterion_7_structural_laws(family_runs, two_level_runs):
    fam_out, fam_counts, fam_times = family_runs
    out, counts, elapsed = two_level_runs
    failures = out["tmin"] + out["gap"] + out["prefix"] + fam_out["stage"]
    checked = counts["tmin"] + counts["gap"] + counts["prefix"] + fam_counts["stage"]
    assert min(counts["tmin"], counts["gap"], counts["prefix"], fam_counts["stage"]) > 0
    assert record(7, "t_min bound, one-gap exclusion, equal prefixes, stage invariant",
                  failures, checked, elapsed + fam_times["stage"])
