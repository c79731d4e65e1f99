"""Ground-set vocabulary: element sets as bitmasks, canonical set families,
chains, the dominance order and the gap/block encoding of finite sets.

Element ``e`` of ``[n]`` is stored at bit ``e - 1``.  Everything user facing
(printing, parsing, CLI) is 1-based.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from . import kernels
from .errors import EmptySet, GroundTooLarge, InvalidElement, MalformedEncoding, OshError

MAX_BITS = 63
DEFAULT_MAX_GROUND = 24


def ground_cap(override: int | None = None) -> int:
    """Enumeration cap: explicit override, else ``OSHLAB_MAX_GROUND``, else 24."""
    if override is not None:
        return int(override)
    env = os.environ.get("OSHLAB_MAX_GROUND")
    if env:
        return int(env)
    return DEFAULT_MAX_GROUND


def check_ground(n: int, cap: int | None = None) -> None:
    cap = ground_cap(cap)
    if n > cap:
        raise GroundTooLarge(n, cap)


# -- element sets ---------------------------------------------------------

def from_elements(elems: Iterable[int]) -> int:
    mask = 0
    for e in elems:
        e = int(e)
        if e < 1 or e > MAX_BITS:
            raise InvalidElement(f"element {e} outside [1, {MAX_BITS}]")
        mask |= 1 << (e - 1)
    return mask


def elements(mask: int) -> list[int]:
    out = []
    e = 1
    while mask:
        if mask & 1:
            out.append(e)
        mask >>= 1
        e += 1
    return out


def interval(lo: int, hi: int) -> int:
    """Mask of the integer interval [lo, hi]; empty when hi < lo."""
    lo = max(lo, 1)
    if hi < lo:
        return 0
    return ((1 << (hi - lo + 1)) - 1) << (lo - 1)


def prefix_mask(n: int) -> int:
    return (1 << n) - 1 if n > 0 else 0


def max_element(mask: int) -> int:
    return mask.bit_length()


def fmt_set(mask: int) -> str:
    if not mask:
        return "∅"
    return "{" + ",".join(map(str, elements(mask))) + "}"


def subset_of(a: int, b: int) -> bool:
    return a & ~b == 0


def prec_leq(a: int, b: int) -> bool:
    """Dominance order: equal sizes and elementwise <= after sorting."""
    ea, eb = elements(a), elements(b)
    if len(ea) != len(eb):
        return False
    return all(x <= y for x, y in zip(ea, eb))


def canonical_key(mask: int):
    return (mask.bit_count(), mask)


# -- families -------------------------------------------------------------

class SetFamily:
    """Immutable, deduplicated family over [n] in (cardinality, value) order."""

    __slots__ = ("n", "members", "_packed", "_set")

    def __init__(self, n: int, members: Iterable[int] = (), *, validate: bool = True):
        n = int(n)
        if n < 0 or n > MAX_BITS:
            raise OshError(f"ground size {n} outside [0, {MAX_BITS}]")
        ms = set(members)
        if validate:
            full = prefix_mask(n)
            for m in ms:
                if m < 0 or m & ~full:
                    raise InvalidElement(f"member {fmt_set(m)} not inside [{n}]")
        self.n = n
        self.members: tuple[int, ...] = tuple(sorted(ms, key=canonical_key))
        self._packed = None
        self._set = None

    @classmethod
    def from_sets(cls, n: int, sets: Iterable[Iterable[int]]) -> "SetFamily":
        return cls(n, (from_elements(s) for s in sets))

    @property
    def packed(self):
        if self._packed is None:
            self._packed = kernels.PackedFamily(self.members, self.n)
        return self._packed

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, mask) -> bool:
        if self._set is None:
            self._set = frozenset(self.members)
        return mask in self._set

    def __eq__(self, other) -> bool:
        if not isinstance(other, SetFamily):
            return NotImplemented
        return self.n == other.n and self.members == other.members

    def __hash__(self) -> int:
        return hash((self.n, self.members))

    def __repr__(self) -> str:
        body = ", ".join(fmt_set(m) for m in self.members)
        return f"SetFamily(n={self.n}, [{body}])"

    def to_lists(self) -> list[list[int]]:
        return [elements(m) for m in self.members]

    def with_ground(self, n: int) -> "SetFamily":
        return SetFamily(n, self.members)

    def issubset(self, other: "SetFamily") -> bool:
        return all(m in other for m in self.members)


def power_set(n: int) -> SetFamily:
    return SetFamily(n, range(1 << n), validate=False)


def level(n: int, k: int) -> list[int]:
    """All k-subsets of [n] as masks, in increasing numeric order."""
    if k < 0 or k > n:
        return []
    out = []
    if k == 0:
        return [0]
    x = (1 << k) - 1
    limit = 1 << n
    while x < limit:
        out.append(x)
        # Gosper's hack: next mask with the same popcount
        c = x & -x
        r = x + c
        x = (((r ^ x) >> 2) // c) | r
    return out


def levels(n: int, ks: Iterable[int]) -> SetFamily:
    members: list[int] = []
    for k in sorted(set(ks)):
        members.extend(level(n, k))
    return SetFamily(n, members, validate=False)


def is_downset(f: SetFamily) -> bool:
    for m in f.members:
        x = m
        while x:
            low = x & -x
            if (m ^ low) not in f:
                return False
            x ^= low
    return True


def complement_family(f: SetFamily) -> SetFamily:
    full = prefix_mask(f.n)
    return SetFamily(f.n, (full ^ m for m in f.members), validate=False)


def longest_chain(f: SetFamily) -> int:
    return kernels.longest_chain(f.members, f.n)


def is_l_sperner(f: SetFamily, ell: int) -> bool:
    if ell < 1:
        raise OshError("ell must be >= 1")
    return longest_chain(f) <= ell


# -- exact dyadic values --------------------------------------------------

class DyadicRational:
    """Non-negative value numerator / 2**log2_denominator, kept in lowest terms."""

    __slots__ = ("numerator", "log2_denominator")

    def __init__(self, numerator: int = 0, log2_denominator: int = 0):
        if numerator < 0 or log2_denominator < 0:
            raise ValueError("dyadic values here are non-negative")
        while numerator and numerator % 2 == 0 and log2_denominator:
            numerator //= 2
            log2_denominator -= 1
        if numerator == 0:
            log2_denominator = 0
        self.numerator = numerator
        self.log2_denominator = log2_denominator

    @classmethod
    def power(cls, e: int) -> "DyadicRational":
        """2 ** -e."""
        return cls(1, e)

    @property
    def denominator(self) -> int:
        return 1 << self.log2_denominator

    def __add__(self, other: "DyadicRational") -> "DyadicRational":
        k = max(self.log2_denominator, other.log2_denominator)
        num = (self.numerator << (k - self.log2_denominator)) + (
            other.numerator << (k - other.log2_denominator)
        )
        return DyadicRational(num, k)

    def _cmp_int(self, value: int) -> int:
        lhs = self.numerator
        rhs = int(value) << self.log2_denominator
        return (lhs > rhs) - (lhs < rhs)

    def _coerce(self, other):
        if isinstance(other, DyadicRational):
            return other
        if isinstance(other, int):
            if other < 0:
                return None
            return DyadicRational(other, 0)
        return None

    def _cmp(self, other) -> int:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        k = max(self.log2_denominator, o.log2_denominator)
        a = self.numerator << (k - self.log2_denominator)
        b = o.numerator << (k - o.log2_denominator)
        return (a > b) - (a < b)

    def __eq__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c == 0

    def __lt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c >= 0

    def __hash__(self):
        return hash(self.as_fraction())

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}"

    def __repr__(self) -> str:
        return f"DyadicRational({self.numerator}, 2**{self.log2_denominator})"


# -- block encoding -------------------------------------------------------

@dataclass(frozen=True)
class BlockEncoding:
    """Gap/block pairs (g_1, b_1), ..., (g_j, b_j) of a nonempty finite set."""

    pairs: tuple[tuple[int, int], ...]

    def flat(self) -> tuple[int, ...]:
        return tuple(x for pair in self.pairs for x in pair)

    @classmethod
    def from_flat(cls, seq: Sequence[int]) -> "BlockEncoding":
        if len(seq) % 2 or not seq:
            raise MalformedEncoding("need a nonempty even-length sequence")
        return cls(tuple((int(seq[i]), int(seq[i + 1])) for i in range(0, len(seq), 2)))

    def __len__(self) -> int:
        return len(self.pairs)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.flat())) + ")"


def encode_blocks(mask: int) -> BlockEncoding:
    if not mask:
        raise EmptySet("the empty set has no block encoding")
    pairs = []
    x = mask
    while x:
        gap = 0
        while not x & 1:
            x >>= 1
            gap += 1
        run = 0
        while x & 1:
            x >>= 1
            run += 1
        pairs.append((gap, run))
    return BlockEncoding(tuple(pairs))


def decode_blocks(enc: BlockEncoding | Sequence[int]) -> int:
    if not isinstance(enc, BlockEncoding):
        enc = BlockEncoding.from_flat(enc)
    if not enc.pairs:
        raise MalformedEncoding("empty encoding")
    mask = 0
    pos = 0
    for i, (g, b) in enumerate(enc.pairs):
        if b < 1:
            raise MalformedEncoding(f"block length {b} < 1")
        if g < 0 or (i > 0 and g < 1):
            raise MalformedEncoding(f"gap {g} invalid at block {i + 1}")
        pos += g
        mask |= interval(pos + 1, pos + b)
        pos += b
    if pos > MAX_BITS:
        raise MalformedEncoding(f"encoded set exceeds {MAX_BITS}")
    return mask
