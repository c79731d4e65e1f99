"""Order shattering for unions of complete levels of P([n]).

For such families osh(F) is an upset in the dominance order, so it is fully
described by its dominance-minimal members.  This module lists them in closed
form for l consecutive levels and for two levels C(n,a) + C(n,a+d), and
builds explicit witness families for the less obvious minimal sets.
"""
from __future__ import annotations

import functools
import logging
from dataclasses import dataclass
from itertools import combinations

from .core import (
    SetFamily,
    check_ground,
    elements,
    fmt_set,
    from_elements,
    interval,
    level,
    levels,
    max_element,
    prec_leq,
    prefix_mask,
)
from .errors import BoundViolated, InvalidElement, InvalidParams
from .shatter import ShatterWitness

log = logging.getLogger(__name__)


# -- ballot sets ----------------------------------------------------------

def is_t_ballot(s: int, t: int, n: int | None = None) -> bool:
    """i-th smallest element >= 2i - t for every i."""
    return all(x >= 2 * i - t for i, x in enumerate(elements(s), start=1))


def is_t_ballot_counting(s: int, t: int, n: int) -> bool:
    """Equivalent form: |S & [m]| <= floor((m + t) / 2) for every m in [n]."""
    count = 0
    for m in range(1, n + 1):
        count += (s >> (m - 1)) & 1
        if count > (m + t) // 2:
            return False
    return True


def t_min(s: int) -> int:
    return max([0] + [2 * i - x for i, x in enumerate(elements(s), start=1)])


def osh_consecutive_levels(n: int, k: int, ell: int,
                           max_ground: int | None = None) -> SetFamily:
    """osh of levels k-ell+1..k: the (ell-1)-ballot sets up to a size cut."""
    if not 0 <= ell - 1 <= k <= n:
        raise InvalidParams(f"need 0 <= ell-1 <= k <= n, got n={n} k={k} ell={ell}")
    check_ground(n, max_ground)
    cut = k if 2 * k < n + ell else n - k + ell - 1
    members = []
    for size in range(cut + 1):
        members.extend(x for x in level(n, size) if is_t_ballot(x, ell - 1))
    return SetFamily(n, members, validate=False)


# -- two levels -----------------------------------------------------------

@dataclass(frozen=True)
class TwoLevelParams:
    n: int
    a: int
    d: int

    def __post_init__(self):
        if self.a < 0 or self.d < 1 or self.a + self.d > self.n:
            raise InvalidParams(f"need 0 <= a < a+d <= n, got {self}")

    def family(self) -> SetFamily:
        return levels(self.n, (self.a, self.a + self.d))


def tmin_bound(p: TwoLevelParams) -> int:
    """min{d, a+1, n-a-d+1, n-2d+2}; meaningful for members with t_min >= 1."""
    if p.d < 2:
        raise InvalidParams("the t_min bound needs d >= 2")
    return min(p.d, p.a + 1, p.n - p.a - p.d + 1, p.n - 2 * p.d + 2)


def _evens(m: int) -> int:
    return from_elements(range(2, 2 * m + 1, 2))


@dataclass(frozen=True)
class MinimalSet:
    """Tagged dominance-minimal set.  ``d`` is the level gap where the shape
    depends on it."""

    kind: str
    params: tuple[int, ...] = ()
    d: int = 0

    def realize(self) -> int:
        k, p, d = self.kind, self.params, self.d
        if k == "BM":
            return _evens(p[0])
        if k == "BMJ":
            m, j = p
            return _evens(m) | interval(2 * m + d, 2 * m + d + j - 1)
        if k == "SMJ":
            m, j = p
            return _evens(m) | interval(2 * m + d, 2 * m + 2 * d + j - 1)
        if k == "SPRIME":
            m, r = p
            tail = from_elements(range(2 * m + 3 * d, 2 * m + 3 * d + 2 * r + 1, 2))
            return _evens(m) | interval(2 * m + d, 2 * m + 3 * d - 2) | tail
        if k == "D2_EMPTY":
            return 0
        if k == "D2_TWO":
            return 0b10
        if k == "D2_23":
            return 0b110
        if k == "D2_SK":
            return 0b110 | from_elements(range(4, 2 * p[0] + 1, 2))
        if k == "TBALLOT":
            t, size = p
            return from_elements(max(i, 2 * i - t) for i in range(1, size + 1))
        raise ValueError(f"unknown kind {k}")

    def label(self) -> str:
        names = {
            "BM": "B_{%d}", "BMJ": "B_{%d,%d}", "SMJ": "S_{%d,%d}",
            "SPRIME": "S'_{%d,%d}", "D2_SK": "S_%d", "TBALLOT": "T_{%d,%d}",
        }
        if self.kind in names:
            return names[self.kind] % self.params
        return {"D2_EMPTY": "empty", "D2_TWO": "{2}", "D2_23": "{2,3}"}[self.kind]


def _minimal_d1(p: TwoLevelParams) -> list[MinimalSet]:
    k = p.a + 1
    cut = k if 2 * k < p.n + 2 else p.n - k + 1
    return [MinimalSet("TBALLOT", (1, s)) for s in range(cut + 1)]


def _minimal_d2(p: TwoLevelParams) -> list[MinimalSet]:
    n, a = p.n, p.a
    if a + 1 > n - a - 1:
        a = n - a - 2  # complements: C(n,a)+C(n,a+2) <-> C(n,n-a-2)+C(n,n-a)
    out = [MinimalSet("D2_EMPTY"), MinimalSet("D2_TWO")]
    if n >= a + 3:
        out.append(MinimalSet("D2_23"))
    out.extend(MinimalSet("D2_SK", (k,)) for k in range(2, min(a + 1, n - a - 1) + 1))
    return out


def _minimal_wide(p: TwoLevelParams) -> list[MinimalSet]:
    n, a, d = p.n, p.a, p.d
    out = []
    big = max(min(a, n - a), min(a + d, n - a - d))
    out.extend(MinimalSet("BM", (m,), d) for m in range(big + 1))
    if 2 * a < n < 2 * (a + d):
        cut = max(a, n - a - d)
        for m in range(a + 1):
            for j in range(1, d):
                if m + j > cut and 2 * m + d + j - 1 <= n:
                    out.append(MinimalSet("BMJ", (m, j), d))
    for m in range(n + 1):
        for j in range(n + 1):
            if j + 1 <= min(d, a - m + 1, n - m - a - d + 1, n - 2 * m - 2 * d + 2):
                out.append(MinimalSet("SMJ", (m, j), d))
        for r in range(n + 1):
            if d <= min(a - m - r, n - m - r - a - d, n - 2 * m - 2 * r - 2 * d):
                out.append(MinimalSet("SPRIME", (m, r), d))
    return out


def minimal_sets(p: TwoLevelParams) -> list[MinimalSet]:
    """Dominance-minimal members of osh(C(n,a) + C(n,a+d)); realized sets
    reaching past n are dropped and repeated realizations are merged."""
    return list(_minimal_sets(p))


@functools.lru_cache(maxsize=256)
def _minimal_sets(p: TwoLevelParams) -> tuple[MinimalSet, ...]:
    if p.d == 1:
        raw = _minimal_d1(p)
    elif p.d == 2:
        raw = _minimal_d2(p)
    else:
        raw = _minimal_wide(p)
    seen: dict[int, MinimalSet] = {}
    for ms in raw:
        x = ms.realize()
        if max_element(x) > p.n:
            continue
        if x in seen:
            log.info("minimal set %s realized by both %s and %s",
                     fmt_set(x), seen[x].label(), ms.label())
            continue
        seen[x] = ms
    return tuple(seen.values())


def dominating_minimal(s: int, p: TwoLevelParams) -> MinimalSet | None:
    """A minimal set T with |T| = |s| and T <= s in dominance, if any."""
    if s < 0 or s & ~prefix_mask(p.n):
        raise InvalidElement(f"{fmt_set(s)} not inside [{p.n}]")
    size = s.bit_count()
    for ms in minimal_sets(p):
        t = ms.realize()
        if t.bit_count() == size and prec_leq(t, s):
            return ms
    return None


def membership(s: int, p: TwoLevelParams) -> bool:
    return dominating_minimal(s, p) is not None


def membership_family(p: TwoLevelParams) -> SetFamily:
    """Every S in [n] accepted by the closed form."""
    mins = [m.realize() for m in minimal_sets(p)]
    by_size: dict[int, list[int]] = {}
    for t in mins:
        by_size.setdefault(t.bit_count(), []).append(t)
    members = []
    for x in range(1 << p.n):
        if any(prec_leq(t, x) for t in by_size.get(x.bit_count(), ())):
            members.append(x)
    return SetFamily(p.n, members, validate=False)


# -- explicit witnesses ---------------------------------------------------

def _pair_transversals(pairs: list[tuple[int, int]]) -> list[int]:
    """All sets meeting every (x, y) pair in exactly one element."""
    out = [0]
    for x, y in pairs:
        bx, by = 1 << (x - 1), 1 << (y - 1)
        out = [s | b for s in out for b in (bx, by)]
    return out


def construct_claim_even(m: int) -> SetFamily:
    """The 2**m transversals of {1,2}, {3,4}, ..., {2m-1,2m}."""
    if m < 0:
        raise InvalidParams("m must be >= 0")
    return SetFamily(2 * m, _pair_transversals([(2 * i - 1, 2 * i) for i in range(1, m + 1)]))


def _lowest(lo: int, hi: int, count: int) -> int:
    return interval(lo, min(hi, lo + count - 1)) if count > 0 else 0


def _gap_fill(lo: int, hi: int, low_size: int, d: int):
    """G_I for every I inside [lo, hi]: the lowest elements of the gap
    interval, topping |G_I| + |I| up to low_size or low_size + d."""
    bits = [1 << (e - 1) for e in range(lo, hi + 1)]
    for k in range(len(bits) + 1):
        need = low_size - k if k <= low_size else low_size + d - k
        for combo in combinations(bits, k):
            yield sum(combo), need


def _require_wide(p: TwoLevelParams) -> None:
    if p.d <= 2:
        raise InvalidParams("construction needs d > 2")


def construct_S_mj(p: TwoLevelParams, m: int, j: int) -> SetFamily:
    _require_wide(p)
    n, a, d = p.n, p.a, p.d
    bound = min(d, a - m + 1, n - m - a - d + 1, n - 2 * m - 2 * d + 2)
    if m < 0 or j < 0 or j + 1 > bound:
        raise BoundViolated(f"S_{{{m},{j}}} needs j+1 <= {bound}")
    x = min(a - m, d - 1)
    y = a - m - x
    J = _lowest(2 * m + 2 * d + j, n, y)
    base = _pair_transversals([(2 * i - 1, 2 * i) for i in range(1, m + 1)])
    members = []
    for I, need in _gap_fill(2 * m + d, 2 * m + 2 * d + j - 1, x, d):
        G = _lowest(2 * m + 1, 2 * m + d - 1, need)
        members.extend(b | G | I | J for b in base)
    return SetFamily(n, members)


def construct_Sprime_mr(p: TwoLevelParams, m: int, r: int) -> SetFamily:
    _require_wide(p)
    n, a, d = p.n, p.a, p.d
    bound = min(a - m - r, n - m - r - a - d, n - 2 * m - 2 * r - 2 * d)
    if m < 0 or r < 0 or d > bound:
        raise BoundViolated(f"S'_{{{m},{r}}} needs d <= {bound}")
    x = min(a - m - r - 1, d - 1)
    y = a - m - r - 1 - x
    J = _lowest(2 * m + 3 * d + 2 * r + 1, n, y)
    head = _pair_transversals([(2 * i - 1, 2 * i) for i in range(1, m + 1)])
    tail = _pair_transversals(
        [(2 * m + 3 * d + 2 * i - 1, 2 * m + 3 * d + 2 * i) for i in range(r + 1)]
    )
    members = []
    for I, need in _gap_fill(2 * m + d, 2 * m + 3 * d - 2, x, d):
        G = _lowest(2 * m + 1, 2 * m + d - 1, need)
        members.extend(h | G | I | t | J for h in head for t in tail)
    return SetFamily(n, members)


def construct_B_mj(p: TwoLevelParams, m: int, j: int) -> SetFamily:
    _require_wide(p)
    n, a, d = p.n, p.a, p.d
    ok = (
        2 * a < n < 2 * (a + d)
        and 0 <= m <= a
        and j >= 1
        and m + j > max(a, n - a - d)
        and 2 * m + 2 * j <= 2 * m + d + j - 1 <= n
    )
    if not ok:
        raise BoundViolated(f"B_{{{m},{j}}} is outside the constructible range for {p}")
    base = _pair_transversals([(2 * i - 1, 2 * i) for i in range(1, m + 1)])
    members = []
    for I, need in _gap_fill(2 * m + d, 2 * m + d + j - 1, a - m, d):
        G = _lowest(2 * m + 1, 2 * m + d - 1, need)
        members.extend(b | G | I for b in base)
    return SetFamily(n, members)


def even_prefix_length(s: int) -> int:
    """Largest m with 2, 4, ..., 2m the m smallest elements of s."""
    m = 0
    for i, x in enumerate(elements(s), start=1):
        if x != 2 * i:
            break
        m = i
    return m


def equal_prefix_check(w: ShatterWitness, m: int) -> bool:
    """Every witness member meets [2m] in exactly m elements."""
    if even_prefix_length(w.target) < m:
        raise InvalidParams(f"target {fmt_set(w.target)} does not start with 2,4,...,{2 * m}")
    mask = prefix_mask(2 * m)
    return all((g & mask).bit_count() == m for g in w.ordered)
