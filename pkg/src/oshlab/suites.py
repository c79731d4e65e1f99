"""Seeded verification suites behind ``oshlab verify``.

Each suite walks a deterministic corpus of cases and applies one check per
case.  A failing report carries the first counterexample in a form that
``replay`` can feed back through the same check.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .core import (
    SetFamily,
    complement_family,
    elements,
    is_downset,
    is_l_sperner,
    levels,
    prec_leq,
)
from .errors import InvalidParams
from .io import FamilyDocument
from .shatter import (
    extract_witness,
    order_shatters,
    osh_direct,
    sh_all,
    st_all,
    verify_standard_order,
)
from .shift import check_stage_invariant, osh_via_shift, shift_full
from .sperner import (
    construct_sperner_witness,
    criterion_holds,
    exhaustive_nonexistence,
)
from .twolevel import (
    TwoLevelParams,
    construct_B_mj,
    construct_S_mj,
    construct_Sprime_mr,
    equal_prefix_check,
    even_prefix_length,
    membership_family,
    minimal_sets,
    osh_consecutive_levels,
    t_min,
    tmin_bound,
)


@dataclass
class SuiteReport:
    suite: str
    params: dict
    passed: int = 0
    failed: int = 0
    counterexample: dict | None = None
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "params": self.params,
            "passed": self.passed,
            "failed": self.failed,
            "counterexample": self.counterexample,
            "wall_time": round(self.wall_time, 3),
        }


@dataclass
class Case:
    family: SetFamily | None = None
    info: dict = field(default_factory=dict)

    def describe(self, detail) -> dict:
        out = dict(self.info)
        if self.family is not None:
            out["family"] = FamilyDocument.from_family(self.family).to_json_obj()
        if isinstance(detail, dict):
            out.update(detail)
        elif detail is not None:
            out["detail"] = detail
        return out


# -- corpora --------------------------------------------------------------

def random_family(rng: random.Random, n: int, q: float | None = None) -> SetFamily:
    """Each subset of [n] kept independently with probability q; q itself is
    drawn uniformly from [0.05, 0.95] when not given."""
    if q is None:
        q = rng.uniform(0.05, 0.95)
    return SetFamily(n, [x for x in range(1 << n) if rng.random() < q], validate=False)


def random_corpus(ns: Iterable[int], trials: int, seed: int) -> Iterable[Case]:
    for n in ns:
        for i in range(trials):
            rng = random.Random(f"{seed}:{n}:{i}")
            yield Case(random_family(rng, n), {"n": n, "trial": i, "seed": seed})


def exhaustive_corpus(n: int) -> Iterable[Case]:
    size = 1 << n
    for code in range(1 << size):
        members = [x for x in range(size) if (code >> x) & 1]
        yield Case(SetFamily(n, members, validate=False), {"n": n, "code": code})


def family_corpus(params: dict) -> Iterable[Case]:
    ns = range(params["n_min"], params["n_max"] + 1)
    if params.get("exhaustive"):
        for n in ns:
            if n > 4:
                raise InvalidParams("exhaustive corpora stop at n = 4 (2^16 families)")
            yield from exhaustive_corpus(n)
    else:
        yield from random_corpus(ns, params["trials"], params["seed"])


# -- per-family checks ----------------------------------------------------
# Each returns None on success or a description of the failure.

def check_shift_equals_osh(f: SetFamily):
    a, b = osh_via_shift(f), osh_direct(f)
    if a != b:
        diff = sorted(set(a.members) ^ set(b.members))
        return {"target": elements(diff[0]), "detail": "T(F) and osh(F) differ"}
    return None


def check_cardinality(f: SetFamily):
    got = len(osh_direct(f))
    if got != len(f):
        return f"|osh(F)| = {got} but |F| = {len(f)}"
    return None


def check_sandwich(f: SetFamily):
    o, s, t = osh_direct(f), sh_all(f), st_all(f)
    if not (t.issubset(o) and o.issubset(s)):
        return "st <= osh <= sh fails"
    if not len(t) <= len(f) <= len(s):
        return "|st| <= |F| <= |sh| fails"
    if osh_direct(o) != o:
        return "osh is not idempotent"
    if osh_direct(complement_family(f)) != o:
        return "osh(F) != osh(F^c)"
    if not (is_downset(o) and is_downset(s) and is_downset(t)):
        return "a closure is not a downset"
    return None


def check_stage(f: SetFamily):
    trace = shift_full(f)
    for s in trace.final.members:
        w = extract_witness(f, s)
        if w is None or not verify_standard_order(w):
            return {"target": elements(s), "detail": "no standard-order witness"}
        if not check_stage_invariant(f, w, trace):
            return {"target": elements(s), "detail": "stage invariant fails"}
    return None


FAMILY_CHECKS: dict[str, Callable] = {
    "shift-equals-osh": check_shift_equals_osh,
    "cardinality-law": check_cardinality,
    "sandwich-laws": check_sandwich,
    "stage-invariant": check_stage,
}


# -- parameter sweeps -----------------------------------------------------

def consecutive_cases(params: dict) -> Iterable[Case]:
    for n in range(params["n_min"], params["n_max"] + 1):
        for ell in range(1, params.get("ell_max", 4) + 1):
            for k in range(ell - 1, n + 1):
                yield Case(None, {"n": n, "k": k, "ell": ell})


def check_consecutive(case: Case):
    n, k, ell = case.info["n"], case.info["k"], case.info["ell"]
    fam = levels(n, range(k - ell + 1, k + 1))
    got = osh_consecutive_levels(n, k, ell)
    if got != osh_via_shift(fam):
        return "closed form differs from T(F)"
    if len(got) != len(fam):
        return "cardinality differs from the level sizes"
    return None


def two_level_cases(params: dict, d_min: int = 1) -> Iterable[Case]:
    for n in range(params["n_min"], params["n_max"] + 1):
        for d in range(d_min, n + 1):
            for a in range(0, n - d + 1):
                yield Case(None, {"n": n, "a": a, "d": d})


def check_two_level(case: Case):
    p = TwoLevelParams(**case.info)
    truth = osh_via_shift(p.family())
    closed = membership_family(p)
    if truth != closed:
        diff = sorted(set(truth.members) ^ set(closed.members))
        return {"target": elements(diff[0]), "detail": "membership differs from T(F)"}
    members = set(truth.members)
    for ms in minimal_sets(p):
        t = ms.realize()
        for other in members:
            if other != t and other.bit_count() == t.bit_count() and prec_leq(other, t):
                return {"target": elements(t), "detail": f"{ms.label()} is not minimal"}
    return None


def check_two_level_structure(case: Case):
    """Upset law, t_min bound, one-gap exclusion, equal prefixes and the
    explicit constructions, all on one (n, a, d)."""
    p = TwoLevelParams(**case.info)
    fam = p.family()
    truth = osh_via_shift(fam)
    members = set(truth.members)
    for s in members:
        # one dominance step up: move an element to the next free slot
        for e in elements(s):
            if e < p.n and not (s >> e) & 1:
                up = s & ~(1 << (e - 1)) | (1 << e)
                if up not in members:
                    return {"target": elements(s), "detail": "not a dominance upset"}
    bound = tmin_bound(p)
    for s in members:
        if t_min(s) >= 1 and t_min(s) > bound:
            return {"target": elements(s), "detail": "t_min bound violated"}
    if p.d > 2:
        for m in range(p.n):
            one_gap = sum(1 << (2 * i - 1) for i in range(1, m + 1)) | (1 << (2 * m))
            if 2 * m + 1 <= p.n and one_gap in members:
                return {"target": elements(one_gap), "detail": "one-gap set is order shattered"}
        for s in members:
            m = even_prefix_length(s)
            w = extract_witness(fam, s)
            if m and not equal_prefix_check(w, m):
                return {"target": elements(s), "detail": "equal-prefix law fails"}
        for ms in minimal_sets(p):
            builder = {"SMJ": construct_S_mj, "SPRIME": construct_Sprime_mr,
                       "BMJ": construct_B_mj}.get(ms.kind)
            if builder is None:
                continue
            g = builder(p, *ms.params)
            t = ms.realize()
            if not (g.issubset(fam) and len(g) == 1 << t.bit_count() and order_shatters(g, t)):
                return {"target": elements(t), "detail": f"construction for {ms.label()} fails"}
    return None


def sperner_cases(params: dict) -> Iterable[Case]:
    for ell in range(1, params.get("ell_max", 3) + 1):
        for a in range(1 << params["n_max"]):
            yield Case(None, {"set": elements(a), "ell": ell})


def check_sperner_construct(case: Case):
    a = sum(1 << (e - 1) for e in case.info["set"])
    ell = case.info["ell"]
    if not criterion_holds(a, ell):
        return None
    w = construct_sperner_witness(a, ell)
    if w.target != a or not w.is_exact():
        return "witness has the wrong shape"
    if not is_l_sperner(w.family, ell):
        return "witness is not l-Sperner"
    if not order_shatters(w.family, a):
        return "witness does not order shatter the target"
    return None


def converse_cases(params: dict) -> Iterable[Case]:
    for ell, n in ((1, min(params["n_max"], 5)), (2, min(params["n_max"], 4))):
        for a in range(1 << n):
            yield Case(None, {"set": elements(a), "n": n, "ell": ell})


def check_sperner_converse(case: Case):
    a = sum(1 << (e - 1) for e in case.info["set"])
    none_found = exhaustive_nonexistence(a, case.info["n"], case.info["ell"])
    if none_found == criterion_holds(a, case.info["ell"]):
        return f"exhaustive search says {'no' if none_found else 'some'} witness exists"
    return None


CASE_SUITES: dict[str, tuple[Callable, Callable]] = {
    "consecutive-levels": (consecutive_cases, check_consecutive),
    "two-level-closed-form": (two_level_cases, check_two_level),
    "two-level-structure": (lambda params: two_level_cases(params, d_min=2), check_two_level_structure),
    "sperner-construct": (sperner_cases, check_sperner_construct),
    "sperner-converse": (converse_cases, check_sperner_converse),
}

SUITES = sorted(list(FAMILY_CHECKS) + list(CASE_SUITES))

DEFAULTS = {
    "shift-equals-osh": {"n_min": 1, "n_max": 8},
    "cardinality-law": {"n_min": 1, "n_max": 8},
    "sandwich-laws": {"n_min": 1, "n_max": 8},
    "stage-invariant": {"n_min": 1, "n_max": 8},
    "consecutive-levels": {"n_min": 0, "n_max": 10},
    "two-level-closed-form": {"n_min": 2, "n_max": 10},
    "two-level-structure": {"n_min": 2, "n_max": 10},
    "sperner-construct": {"n_min": 0, "n_max": 7},
    "sperner-converse": {"n_min": 0, "n_max": 5},
}


def run_suite(name: str, n: int | None = None, n_min: int | None = None,
              n_max: int | None = None, trials: int = 200, seed: int = 0,
              exhaustive: bool = False, ell_max: int | None = None) -> SuiteReport:
    if name not in SUITES:
        raise InvalidParams(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    params = dict(DEFAULTS[name])
    if n is not None:
        params["n_min"] = params["n_max"] = n
    if n_min is not None:
        params["n_min"] = n_min
    if n_max is not None:
        params["n_max"] = n_max
    if ell_max is not None:
        params["ell_max"] = ell_max
    if name in FAMILY_CHECKS:
        params.update(trials=trials, seed=seed, exhaustive=exhaustive)
        cases, check = family_corpus(params), (lambda c, f=FAMILY_CHECKS[name]: f(c.family))
    else:
        make, raw = CASE_SUITES[name]
        cases, check = make(params), raw
    report = SuiteReport(name, params)
    t0 = time.perf_counter()
    for case in cases:
        detail = check(case)
        if detail is None:
            report.passed += 1
        else:
            report.failed += 1
            if report.counterexample is None:
                report.counterexample = case.describe(detail)
    report.wall_time = time.perf_counter() - t0
    return report


def replay(report: SuiteReport) -> bool:
    """Re-run the check on the embedded counterexample; True if it still fails."""
    ce = report.counterexample
    if ce is None:
        return False
    if report.suite in FAMILY_CHECKS:
        f = FamilyDocument(ce["family"]["n"], tuple(map(tuple, ce["family"]["sets"]))).to_family()
        return FAMILY_CHECKS[report.suite](f) is not None
    _, check = CASE_SUITES[report.suite]
    keys = {"consecutive-levels": ("n", "k", "ell"), "sperner-converse": ("set", "n", "ell"),
            "sperner-construct": ("set", "ell")}.get(report.suite, ("n", "a", "d"))
    return check(Case(None, {k: ce[k] for k in keys})) is not None

