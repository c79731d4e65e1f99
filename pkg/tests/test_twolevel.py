from math import comb

import pytest
from hypothesis import given, strategies as st

import oracles
from conftest import as_frozen, of_sets
from oshlab.core import elements, from_elements, level, prec_leq
from oshlab.errors import BoundViolated, InvalidElement, InvalidParams
from oshlab.shatter import ShatterWitness, extract_witness, order_shatters
from oshlab.shift import osh_via_shift
from oshlab.twolevel import (
    MinimalSet,
    TwoLevelParams,
    construct_B_mj,
    construct_claim_even,
    construct_S_mj,
    construct_Sprime_mr,
    dominating_minimal,
    equal_prefix_check,
    is_t_ballot,
    is_t_ballot_counting,
    membership,
    membership_family,
    minimal_sets,
    osh_consecutive_levels,
    t_min,
    tmin_bound,
)

S = from_elements


def oracle_osh_levels(n, ks):
    return oracles.shift_all(oracles.level_union(n, set(ks)), n)[-1]


def all_params(n_max, d_min=1):
    for n in range(0, n_max + 1):
        for d in range(d_min, n + 1):
            for a in range(0, n - d + 1):
                yield TwoLevelParams(n, a, d)


# -- ballot sets ----------------------------------------------------------

def test_ballot_examples():
    assert is_t_ballot(S([2, 4, 6]), 0)
    assert not is_t_ballot(S([1]), 0) and is_t_ballot(S([1]), 1)
    assert all(is_t_ballot(0, t) for t in range(4))
    assert t_min(0) == 0 and t_min(S([2, 3])) == 1


def test_ballot_characterizations_agree_exhaustively():
    for n in range(0, 11):
        for s in range(1 << n):
            tm = t_min(s)
            for t in range(0, 5):
                a = is_t_ballot(s, t, n)
                assert a == is_t_ballot_counting(s, t, n) == oracles.ballot(oracles.from_mask(s), t)
                assert a == (t >= tm)


@given(st.integers(11, 14).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, (1 << n) - 1))),
       st.integers(0, 4))
def test_ballot_characterizations_agree_sampled(ns, t):
    n, s = ns
    assert is_t_ballot(s, t, n) == is_t_ballot_counting(s, t, n)


# -- consecutive levels ---------------------------------------------------

def test_consecutive_examples():
    got = osh_consecutive_levels(5, 2, 1)
    assert got == of_sets(5, [], [2], [3], [4], [5], [2, 4], [2, 5], [3, 4], [3, 5], [4, 5])
    assert osh_consecutive_levels(4, 4, 1) == of_sets(4, [])
    assert len(osh_consecutive_levels(6, 3, 2)) == comb(6, 2) + comb(6, 3)


def test_consecutive_matches_oracle():
    for n in range(0, 8):
        for ell in range(1, 5):
            for k in range(ell - 1, n + 1):
                got = osh_consecutive_levels(n, k, ell)
                want = oracle_osh_levels(n, range(k - ell + 1, k + 1))
                assert as_frozen(got) == want, (n, k, ell)


# -- two levels -----------------------------------------------------------

def test_params_validation():
    with pytest.raises(InvalidParams):
        TwoLevelParams(4, 2, 3)
    with pytest.raises(InvalidParams):
        TwoLevelParams(4, -1, 2)
    with pytest.raises(InvalidParams):
        TwoLevelParams(4, 1, 0)
    with pytest.raises(InvalidParams):
        tmin_bound(TwoLevelParams(4, 1, 1))


def test_tmin_bound_examples():
    assert tmin_bound(TwoLevelParams(9, 1, 3)) == 2
    assert tmin_bound(TwoLevelParams(6, 1, 2)) == 2
    assert tmin_bound(TwoLevelParams(4, 0, 3)) == 0


def test_minimal_sets_examples():
    got = [m.realize() for m in minimal_sets(TwoLevelParams(6, 1, 2))]
    assert got == [0, S([2]), S([2, 3]), S([2, 3, 4])]
    mins = minimal_sets(TwoLevelParams(9, 1, 3))
    ballot = [m for m in mins if m.kind in ("BM", "BMJ")]
    assert [m.params for m in ballot] == [(0,), (1,), (2,), (3,), (4,)]
    assert [m.realize() for m in ballot] == [S(range(2, 2 * m + 1, 2)) for m in range(5)]
    assert {m.label() for m in mins if m.kind == "SMJ"} == {"S_{0,0}", "S_{0,1}", "S_{1,0}"}


def test_tagged_shapes():
    assert MinimalSet("SMJ", (1, 2), 3).realize() == S([2, 5, 6, 7, 8, 9])
    assert t_min(MinimalSet("SMJ", (1, 2), 3).realize()) == 3
    assert MinimalSet("D2_SK", (3,)).realize() == S([2, 3, 4, 6])
    assert MinimalSet("SPRIME", (0, 1), 3).realize().bit_count() == 0 + 6 + 1


def test_smj_tmin_is_j_plus_one():
    for p in all_params(12, d_min=3):
        for m in minimal_sets(p):
            if m.kind == "SMJ":
                assert t_min(m.realize()) == m.params[1] + 1


def test_membership_examples():
    p = TwoLevelParams(6, 1, 2)
    assert membership(S([3, 5]), p)
    assert dominating_minimal(S([3, 5]), p).realize() == S([2, 3])
    assert not membership(S([1, 4]), p)
    for q in all_params(6):
        assert membership(0, q)
    with pytest.raises(InvalidElement):
        membership(S([7]), p)


def test_closed_form_matches_oracle():
    """Brute-force shift of C(n,a) + C(n,a+d) against the closed form."""
    for p in all_params(8):
        want = oracle_osh_levels(p.n, {p.a, p.a + p.d})
        assert as_frozen(membership_family(p)) == want, p


def test_minimal_sets_are_minimal():
    for p in all_params(9):
        truth = osh_via_shift(p.family())
        members = set(truth.members)
        for m in minimal_sets(p):
            t = m.realize()
            assert t in members
            # every strictly dominated set of the same size is outside osh
            for other in level(p.n, t.bit_count()):
                if other != t and prec_leq(other, t):
                    assert other not in members, (p, m.label())


def test_realized_sets_are_distinct():
    for p in all_params(12):
        got = [m.realize() for m in minimal_sets(p)]
        assert len(got) == len(set(got))
        assert all(max(elements(x), default=0) <= p.n for x in got)


# -- constructions --------------------------------------------------------

def test_even_prefix_construction_examples():
    assert construct_claim_even(0) == of_sets(0, [])
    assert construct_claim_even(1) == of_sets(2, [1], [2])
    g = construct_claim_even(2)
    assert g == of_sets(4, [1, 3], [1, 4], [2, 3], [2, 4])
    assert order_shatters(g, S([2, 4]))
    for m in range(6):
        g = construct_claim_even(m)
        assert len(g) == 2 ** m and order_shatters(g, S(range(2, 2 * m + 1, 2)))
        assert all(x.bit_count() == m for x in g.members)


def _construction_ok(p, g, t):
    fam = set(p.family().members)
    return all(x in fam for x in g.members) and len(g) == 2 ** t.bit_count() and order_shatters(g, t)


def test_construct_S_mj_examples():
    p = TwoLevelParams(9, 1, 3)
    g = construct_S_mj(p, 0, 0)
    assert len(g) == 8 and {x.bit_count() for x in g.members} <= {1, 4}
    assert order_shatters(g, S([3, 4, 5]))
    with pytest.raises(BoundViolated):
        construct_S_mj(p, 0, 2)


def test_construct_guards():
    with pytest.raises(InvalidParams):
        construct_S_mj(TwoLevelParams(6, 1, 2), 0, 0)
    p = TwoLevelParams(9, 3, 3)
    with pytest.raises(BoundViolated):
        construct_Sprime_mr(p, 0, 5)
    with pytest.raises(BoundViolated):
        construct_B_mj(TwoLevelParams(12, 4, 5), 0, 5)
    with pytest.raises(BoundViolated):
        construct_B_mj(TwoLevelParams(12, 4, 5), 0, 1)


def test_constructions_over_sweep():
    builders = {"SMJ": construct_S_mj, "SPRIME": construct_Sprime_mr, "BMJ": construct_B_mj}
    seen = {k: 0 for k in builders}
    for p in all_params(12, d_min=3):
        for m in minimal_sets(p):
            if m.kind in builders:
                g = builders[m.kind](p, *m.params)
                assert _construction_ok(p, g, m.realize()), (p, m.label())
                seen[m.kind] += 1
    assert all(seen.values()), seen


def test_sprime_smallest_instance():
    p = TwoLevelParams(9, 3, 3)
    g = construct_Sprime_mr(p, 0, 0)
    assert len(g) == 2 ** 6 and _construction_ok(p, g, MinimalSet("SPRIME", (0, 0), 3).realize())


# -- prefix law -----------------------------------------------------------

def test_equal_prefix_examples():
    p = TwoLevelParams(9, 1, 3)
    fam = p.family()
    w = extract_witness(fam, S([2, 4]))
    assert equal_prefix_check(w, 2)
    assert equal_prefix_check(w, 0)
    with pytest.raises(InvalidParams):
        equal_prefix_check(w, 3)


def test_equal_prefix_detects_imbalance():
    w = ShatterWitness(S([2]), (S([3]), S([2])), 3)
    assert not equal_prefix_check(w, 1)
    w = ShatterWitness(S([2]), (S([1]), S([2])), 2)
    assert equal_prefix_check(w, 1)


def test_upset_law_small():
    for p in all_params(8, d_min=1):
        members = set(osh_via_shift(p.family()).members)
        for s in members:
            for other in level(p.n, s.bit_count()):
                if prec_leq(s, other):
                    assert other in members
