import pytest
from hypothesis import given

import oracles
from conftest import as_frozen, families, of_sets
from oshlab.core import from_elements, power_set
from oshlab.errors import InvalidElement
from oshlab.shatter import ShatterWitness, extract_witness, osh_direct
from oshlab.shift import check_stage_invariant, osh_via_shift, shift_element, shift_final, shift_full

S = from_elements
F12 = of_sets(2, [1], [2])


def test_shift_element_examples():
    assert shift_element(F12, 1) == of_sets(2, [], [2])
    assert shift_element(of_sets(1, [], [1]), 1) == of_sets(1, [], [1])
    assert shift_element(of_sets(2, [1, 2]), 2) == of_sets(2, [1])
    with pytest.raises(InvalidElement):
        shift_element(F12, 3)
    with pytest.raises(InvalidElement):
        shift_element(F12, 0)


def test_shift_full_examples():
    t = shift_full(F12)
    assert t.stages == (F12, of_sets(2, [], [2]), of_sets(2, [], [2]))
    assert shift_full(of_sets(2, [1, 2])).final == of_sets(2, [])
    assert all(st == power_set(2) for st in shift_full(power_set(2)).stages)


def test_osh_via_shift_examples():
    assert osh_via_shift(F12) == of_sets(2, [], [2])
    assert osh_via_shift(of_sets(2, [1, 2])) == of_sets(2, [])
    assert osh_via_shift(power_set(3)) == power_set(3)


def test_stage_invariant_examples():
    assert check_stage_invariant(F12, ShatterWitness(S([2]), (S([1]), S([2])), 2))
    w = extract_witness(power_set(2), S([1, 2]))
    assert check_stage_invariant(power_set(2), w)


def test_stage_invariant_detects_foreign_member():
    # {1,2} is not in the family, so the h = 1 check already fails
    bad = ShatterWitness(S([2]), (S([1]), S([1, 2])), 2)
    assert not check_stage_invariant(F12, bad)


@given(families(n_max=5))
def test_shift_matches_oracle(f):
    F = as_frozen(f)
    stages = oracles.shift_all(F, f.n)
    trace = shift_full(f)
    assert [as_frozen(st) for st in trace.stages] == stages
    assert shift_final(f) == trace.final
    for st in trace.stages:
        assert len(st) == len(f)


@given(families(n_max=6))
def test_shift_equals_osh(f):
    # two independent routes to the same family
    assert osh_via_shift(f) == osh_direct(f)


@given(families(n_max=5))
def test_shift_is_idempotent(f):
    t = osh_via_shift(f)
    for j in range(1, f.n + 1):
        assert shift_element(t, j) == t


@given(families(n_max=5))
def test_stage_invariant_matches_oracle(f):
    F = as_frozen(f)
    trace = shift_full(f)
    for s in osh_direct(f).members:
        w = extract_witness(f, s)
        G = [oracles.from_mask(m) for m in w.ordered]
        assert oracles.stage_membership(F, G, oracles.from_mask(s), f.n)
        assert check_stage_invariant(f, w, trace)
