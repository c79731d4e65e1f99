"""l-Sperner families that order shatter a prescribed target set.

A target A = {a_1 < ... < a_k} is order shattered by some l-Sperner family
exactly when sum_i 2**-(a_i - i) < l.  The constructive direction is built
here block by block: a single run from scratch, then the last run of A is
created or reshaped by ``extend_with_gap`` / ``extend_consecutive``.  The
reverse operations ``shift_back`` / ``shift_back_by_gap`` are provided as
well and checked by the same witness contracts.

Every stage works on exact witnesses: a family of size 2**|target| living in
P([max target]), read in standard order.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from itertools import combinations

from .core import (
    DyadicRational,
    SetFamily,
    check_ground,
    elements,
    encode_blocks,
    fmt_set,
    interval,
    is_l_sperner,
    max_element,
    prefix_mask,
)
from .errors import (
    CriterionFails,
    GroundTooLarge,
    InvalidElement,
    InvalidParams,
    ShapeMismatch,
    WitnessNotNormalized,
)
from .shatter import extract_witness, order_shatters


@dataclass(frozen=True)
class SpernerWitness:
    target: int
    ell: int
    family: SetFamily

    @property
    def n(self) -> int:
        return self.family.n

    def is_exact(self) -> bool:
        return len(self.family) == 1 << self.target.bit_count()

    def is_normalized(self) -> bool:
        return self.family.n == max_element(self.target)

    def check(self) -> bool:
        """Both witness contracts plus exactness."""
        return (
            self.is_exact()
            and is_l_sperner(self.family, self.ell)
            and order_shatters(self.family, self.target)
        )

    def __str__(self) -> str:
        return f"target {fmt_set(self.target)}, ell={self.ell}, n={self.n}, |family|={len(self.family)}"


# -- criterion ------------------------------------------------------------

def criterion_sum(a: int) -> DyadicRational:
    total = DyadicRational(0)
    for i, x in enumerate(elements(a), start=1):
        total = total + DyadicRational.power(x - i)
    return total


def criterion_holds(a: int, ell: int) -> bool:
    if ell < 1:
        raise InvalidParams("ell must be >= 1")
    return criterion_sum(a) < ell


# -- helpers --------------------------------------------------------------

def ordered_subsets(mask: int) -> list[int]:
    """Subsets of ``mask`` by size descending, colex (numeric) ascending
    within a size.  Earlier sets are never contained in later ones."""
    bits = [1 << (e - 1) for e in elements(mask)]
    out = []
    for k in range(len(bits), -1, -1):
        out.extend(sorted(sum(c) for c in combinations(bits, k)))
    return out


def subsets_by_size(mask: int) -> list[list[int]]:
    bits = [1 << (e - 1) for e in elements(mask)]
    return [[sum(c) for c in combinations(bits, k)] for k in range(len(bits) + 1)]


def _ceil_div(x: int, y: int) -> int:
    return -(-x // y)


def _witness(target: int, ell: int, n: int, members) -> SpernerWitness:
    return SpernerWitness(target, ell, SetFamily(n, members))


def normalize(w: SpernerWitness) -> SpernerWitness:
    """Exact witness inside P([max target]): take the standard-order witness
    and strip the trace above max(target) that all its members share."""
    if w.is_exact() and w.is_normalized():
        return w
    got = extract_witness(w.family, w.target)
    if got is None:
        raise ShapeMismatch(f"family does not order shatter {fmt_set(w.target)}")
    top = max_element(w.target)
    keep = prefix_mask(top)
    return _witness(w.target, w.ell, top, (m & keep for m in got.ordered))


def restrict(w: SpernerWitness, sub: int) -> SpernerWitness:
    """Witness for a subset of the target (osh is a downset)."""
    if sub & ~w.target:
        raise InvalidElement(f"{fmt_set(sub)} is not a subset of {fmt_set(w.target)}")
    got = extract_witness(w.family, sub)
    if got is None:
        raise ShapeMismatch(f"family does not order shatter {fmt_set(sub)}")
    return normalize(SpernerWitness(sub, w.ell, got.family()))


def _standard_order(w: SpernerWitness) -> list[int]:
    got = extract_witness(w.family, w.target)
    return list(got.ordered)


def _prefix_chain_pick(values: list[int], p: int) -> list[int]:
    """Indices q of the prefix chain whose decoration is the first value
    (numerically) occurring at least p times; the first p of them."""
    for v in sorted(set(values)):
        hits = [q for q, x in enumerate(values) if x == v]
        if len(hits) >= p:
            return hits[:p]
    raise AssertionError("pigeonhole failed")  # unreachable for valid input


# -- one run from scratch -------------------------------------------------

def construct_single_block(g: int, ell: int, upto: int | None = None,
                           max_ground: int | None = None) -> SpernerWitness:
    """Target [g+1, g + ell*2**g - 1].  The subsets G_1, ..., G_{2**g} of [g]
    are paired with tails of size in [(i-1)*ell, i*ell - 1].  With ``upto``
    only members inside [upto] are emitted, which is the witness for the
    target cut to [upto]."""
    if g < 0 or ell < 1:
        raise InvalidParams("need g >= 0 and ell >= 1")
    end = g + ell * (1 << g) - 1
    if upto is None:
        upto = end
    if not g <= upto <= end:
        raise InvalidParams(f"upto must lie in [{g}, {end}]")
    check_ground(upto, max_ground)
    gs = ordered_subsets(interval(1, g))
    tails = subsets_by_size(interval(g + 1, upto))
    members = []
    for i, G in enumerate(gs, start=1):
        for k in range((i - 1) * ell, min(i * ell, len(tails))):
            members.extend(G | y for y in tails[k])
    return _witness(interval(g + 1, upto), ell, upto, members)


# -- growing the last run -------------------------------------------------

def extend_with_gap(w: SpernerWitness, g: int, upto: int | None = None,
                    max_ground: int | None = None) -> SpernerWitness:
    """Target A -> A + [a_t+g+1, a_t+g+2**g-1], a_t = max A.  The family must
    live in P([a_t])."""
    if g < 1:
        raise InvalidParams("gap must be >= 1")
    if not w.target:
        raise ShapeMismatch("target must be nonempty")
    at = max_element(w.target)
    if w.family.n != at:
        raise WitnessNotNormalized(f"family ground {w.family.n} != max target {at}")
    end = at + g + (1 << g) - 1
    if upto is None:
        upto = end
    if not at + g <= upto <= end:
        raise InvalidParams(f"upto must lie in [{at + g}, {end}]")
    check_ground(upto, max_ground)
    gs = ordered_subsets(interval(at + 1, at + g))
    tails = subsets_by_size(interval(at + g + 1, upto))
    members = []
    for i, G in enumerate(gs):
        if i >= len(tails):
            break
        for y in tails[i]:
            members.extend(s | G | y for s in w.family.members)
    return _witness(w.target | interval(at + g + 1, upto), w.ell, upto, members)


def _last_run(target: int) -> tuple[int, int, int]:
    """(gap before the last run, its first element, its length)."""
    if not target:
        raise ShapeMismatch("target must be nonempty")
    g, b = encode_blocks(target).pairs[-1]
    top = max_element(target)
    return g, top - b + 1, b


def shift_and_extend(w: SpernerWitness, g: int, upto: int | None = None,
                     max_ground: int | None = None) -> SpernerWitness:
    """A_1 + {a_t} + [a_t+g+1, a_t+g+r]  ->  A_1 + [a_t+g, a_t+g+(p+1)*2**g-2]
    with p = ceil((r+1) / 2**g)."""
    if g < 1:
        raise InvalidParams("gap must be >= 1")
    gap, start, r = _last_run(w.target)
    if gap != g or start - g - 1 < 1 or not (w.target >> (start - g - 2)) & 1:
        raise ShapeMismatch(
            f"{fmt_set(w.target)} does not end in a_t, gap {g}, then a run"
        )
    at = start - g - 1
    w = normalize(w)
    t = w.target.bit_count() - r
    order = _standard_order(w)

    low = prefix_mask(at - 1)
    mid = interval(at + 1, at + g)
    block, half = 1 << t, 1 << (t - 1)
    chain = [(1 << q) - 1 for q in range(r + 1)]   # C = first q run elements
    decor = [order[c * block] & mid for c in chain]
    p = _ceil_div(r + 1, 1 << g)
    picks = [chain[q] for q in _prefix_chain_pick(decor, p)]
    fams = [[m & low for m in order[c * block:c * block + half]] for c in picks]
    last = picks[-1]
    fams.append([m & low for m in order[last * block + half:(last + 1) * block]])

    end = at + g + (p + 1) * (1 << g) - 2
    if upto is None:
        upto = end
    if not at + g - 1 <= upto <= end:
        raise InvalidParams(f"upto must lie in [{at + g - 1}, {end}]")
    check_ground(upto, max_ground)
    gs = ordered_subsets(interval(at, at + g - 1))
    tails = subsets_by_size(interval(at + g, upto))
    members = []
    for j, G in enumerate(gs):
        for i, xs in enumerate(fams):
            k = j * (p + 1) + i
            if k >= len(tails):
                continue
            for y in tails[k]:
                members.extend(x | G | y for x in xs)
    a1 = w.target & low
    return _witness(a1 | interval(at + g, upto), w.ell, upto, members)


def extend_consecutive(w: SpernerWitness, g: int, r: int | None = None,
                       upto: int | None = None,
                       max_ground: int | None = None) -> SpernerWitness:
    """{..., a_t, a_t+1, ..., a_t+r}  ->  {..., a_t} + [a_t+g+1, a_t+g+(r+1)*2**g-1].

    ``r`` defaults to the whole final run minus its first element; a smaller
    r treats the earlier run elements as part of the fixed prefix."""
    if g < 1:
        raise InvalidParams("gap must be >= 1")
    _, start, length = _last_run(w.target)
    if r is None:
        r = length - 1
    if not 1 <= r <= length - 1:
        raise ShapeMismatch(
            f"{fmt_set(w.target)} does not end in a run of length {r + 1}"
        )
    at = max_element(w.target) - r
    end = at + g + (r + 1) * (1 << g) - 1
    if upto is None:
        upto = end
    check_ground(upto, max_ground)
    cur = extend_with_gap(normalize(w), g, max_ground=max_ground)
    for step in range(r):
        cur = shift_and_extend(cur, g, upto=upto if step == r - 1 else None,
                               max_ground=max_ground)
    return cur


# -- shrinking the gap ----------------------------------------------------

def shift_back(w: SpernerWitness, max_ground: int | None = None) -> SpernerWitness:
    """A_1 + [a_t+1, a_t+r]  ->  A_1 + {a_t} + [a_t+2, a_t+2p-2],
    p = ceil((r+1)/2), for r >= 2 and a_t not in the target."""
    _, start, r = _last_run(w.target)
    at = start - 1
    if r < 2 or at < 1:
        raise ShapeMismatch(
            f"{fmt_set(w.target)} must end in a run of length >= 2 after a gap"
        )
    w = normalize(w)
    t1 = w.target.bit_count() - r
    order = _standard_order(w)

    low = prefix_mask(at - 1)
    abit = 1 << (at - 1)
    block = 1 << t1
    chain = [(1 << q) - 1 for q in range(r + 1)]
    decor = [order[c * block] & abit for c in chain]
    p = _ceil_div(r + 1, 2)
    picks = [chain[q] for q in _prefix_chain_pick(decor, p)]
    fams = [[m & low for m in order[c * block:(c + 1) * block]] for c in picks]

    n = at + 2 * p - 2
    check_ground(n, max_ground)
    tails = subsets_by_size(interval(at + 2, n))
    nbit = 1 << at  # element a_t + 1
    members = []
    for i in range(1, p):
        lo_x, hi_x = fams[i - 1], fams[i]
        for y in tails[i - 1]:
            members.extend(x | nbit | y for x in lo_x)
            members.extend(x | abit | nbit | y for x in hi_x)
        for y in tails[p + i - 2]:
            members.extend(x | y for x in lo_x)
            members.extend(x | abit | y for x in hi_x)
    a1 = w.target & low
    return _witness(a1 | abit | interval(at + 2, n), w.ell, n, members)


def shift_back_by_gap(w: SpernerWitness, g: int,
                      max_ground: int | None = None) -> SpernerWitness:
    """A_1 + [a_t+g, a_t+g+r-1]  ->  A_1 + [a_t, a_t+ceil((r+1)/2**g)-2]
    for r >= 2**g and a gap of at least g before the run."""
    if g < 1:
        raise InvalidParams("gap must be >= 1")
    gap, _, r = _last_run(w.target)
    if gap < g or r < (1 << g):
        raise ShapeMismatch(
            f"{fmt_set(w.target)} needs a gap >= {g} and a final run >= {1 << g}"
        )
    cur = normalize(w)
    for _ in range(g):
        _, _, length = _last_run(cur.target)
        for _ in range(_ceil_div(length + 1, 2) - 1):
            cur = shift_back(cur, max_ground=max_ground)
        top = max_element(cur.target)
        cur = restrict(cur, cur.target & ~(1 << (top - 1)))
    return cur


# -- main construction ----------------------------------------------------

def construct_sperner_witness(a: int, ell: int,
                              max_ground: int | None = None) -> SpernerWitness:
    """Exact l-Sperner witness for ``a``, or CriterionFails."""
    if ell < 1:
        raise InvalidParams("ell must be >= 1")
    total = criterion_sum(a)
    if not total < ell:
        raise CriterionFails(a, ell, total)
    w = _build(a, ell, max_ground)
    if w.target != a:
        w = restrict(w, a)
    return normalize(w)


def _build(a: int, ell: int, max_ground) -> SpernerWitness:
    if not a:
        return _witness(0, ell, 0, [0])
    pairs = encode_blocks(a).pairs
    top = max_element(a)
    if len(pairs) == 1:
        g, b = pairs[0]
        return construct_single_block(g, ell, upto=g + b, max_ground=max_ground)
    g, b = pairs[-1]
    head = a & prefix_mask(top - b - g)
    head_top = max_element(head)
    if b <= (1 << g) - 1:
        w = _build(head, ell, max_ground)
        return extend_with_gap(normalize(w), g, upto=top, max_ground=max_ground)
    bb = _ceil_div(b + 1, 1 << g)
    grown = head | interval(head_top + 1, head_top + bb - 1)
    w = _build(grown, ell, max_ground)
    return extend_consecutive(w, g, r=bb - 1, upto=top, max_ground=max_ground)


# -- exhaustive converse oracle -------------------------------------------

ORACLE_LIMITS = {1: 5}
ORACLE_DEFAULT_LIMIT = 4


def iter_l_sperner(n: int, ell: int):
    """Every l-Sperner family in P([n]) as a sorted member tuple.

    Backtracking over subsets in (size, value) order, so all proper subsets of
    a candidate are decided before it; a candidate is kept only while the
    longest chain ending at it stays <= ell."""
    order = sorted(range(1 << n), key=lambda x: (x.bit_count(), x))
    below = [[y for y in order[:idx] if y & ~x == 0 and y != x] for idx, x in enumerate(order)]
    depth = [0] * (1 << n)
    chosen: list[int] = []

    def rec(idx):
        if idx == len(order):
            yield tuple(chosen)
            return
        yield from rec(idx + 1)
        x = order[idx]
        c = 1 + max((depth[y] for y in below[idx]), default=0)
        if c <= ell:
            depth[x] = c
            chosen.append(x)
            yield from rec(idx + 1)
            chosen.pop()
            depth[x] = 0

    yield from rec(0)


@functools.lru_cache(maxsize=None)
def _osh_union(n: int, ell: int) -> frozenset:
    got: set[int] = set()
    for members in iter_l_sperner(n, ell):
        if members:
            got.update(SetFamily(n, members, validate=False).packed.osh_all())
    return frozenset(got)


def exhaustive_nonexistence(a: int, n: int, ell: int) -> bool:
    """True iff no l-Sperner family inside P([n]) order shatters ``a``."""
    if ell < 1:
        raise InvalidParams("ell must be >= 1")
    limit = ORACLE_LIMITS.get(ell, ORACLE_DEFAULT_LIMIT)
    if n > limit:
        raise GroundTooLarge(n, limit)
    if a & ~prefix_mask(n):
        raise InvalidElement(f"{fmt_set(a)} not inside [{n}]")
    return a not in _osh_union(n, ell)
