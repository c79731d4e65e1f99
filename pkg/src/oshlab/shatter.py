"""Shattered, strongly traced and order-shattered sets of a family, plus
standard-order witnesses for order shattering.

The empty family shatters, strongly traces and order shatters nothing (not
even the empty set), which keeps |osh(F)| = |F| exact at |F| = 0.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from .core import SetFamily, check_ground, fmt_set, prefix_mask
from .errors import InvalidElement


def _check_target(f: SetFamily, s: int) -> None:
    if s < 0 or s & ~prefix_mask(f.n):
        raise InvalidElement(f"target {fmt_set(s)} not inside [{f.n}]")


def shatters(f: SetFamily, s: int) -> bool:
    _check_target(f, s)
    full = 1 << s.bit_count()
    if len(f) < full:
        return False
    return len({m & s for m in f.members}) == full


def sh_all(f: SetFamily, max_ground: int | None = None) -> SetFamily:
    check_ground(f.n, max_ground)
    return SetFamily(f.n, f.packed.sh_all(), validate=False)


def strongly_traces(f: SetFamily, s: int) -> bool:
    _check_target(f, s)
    for b in f.members:
        if b & s:
            continue
        h = s
        while True:
            if (b | h) not in f:
                break
            if h == 0:
                return True
            h = (h - 1) & s
    return False


def st_all(f: SetFamily, max_ground: int | None = None) -> SetFamily:
    check_ground(f.n, max_ground)
    return SetFamily(f.n, f.packed.st_all(), validate=False)


def order_shatters(f: SetFamily, s: int) -> bool:
    _check_target(f, s)
    return f.packed.order_shatters(s)


def osh_direct(f: SetFamily, max_ground: int | None = None, prune: bool = False) -> SetFamily:
    """All order-shattered subsets of [n], one recursive check per subset.

    ``prune`` skips a subset as soon as one of its one-smaller subsets is
    known to fail (osh is a downset); the answer is the same either way.
    """
    check_ground(f.n, max_ground)
    return SetFamily(f.n, f.packed.osh_all(prune), validate=False)


@dataclass(frozen=True)
class ShatterWitness:
    """2**|target| sets listed in standard order: member j (0-based) meets the
    target exactly in the elements selected by the binary digits of j."""

    target: int
    ordered: tuple[int, ...]
    n: int

    def family(self) -> SetFamily:
        return SetFamily(self.n, self.ordered)

    def __str__(self) -> str:
        body = ", ".join(fmt_set(m) for m in self.ordered)
        return f"{fmt_set(self.target)} <- ({body})"


def extract_witness(f: SetFamily, s: int) -> ShatterWitness | None:
    """Deterministic witness: the lowest-trace class is tried first at every
    level of the recursion, and the smallest member is taken at the leaves."""
    _check_target(f, s)
    got = f.packed.witness(s)
    if got is None:
        return None
    return ShatterWitness(s, tuple(got), f.n)


def verify_standard_order(w: ShatterWitness) -> bool:
    return bool(kernels.verify_standard_order(list(w.ordered), w.target, w.n))

