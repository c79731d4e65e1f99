"""Down-shifts T_j and the shifted family T(F) = T_n(...T_1(F)...)."""
from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from .core import SetFamily
from .errors import InvalidElement
from .shatter import ShatterWitness


def shift_element(f: SetFamily, j: int) -> SetFamily:
    """T_j: B -> B minus j when j is in B and B minus j is not in f.
    Every image is decided against f itself, never against partial output."""
    if not 1 <= j <= f.n:
        raise InvalidElement(f"shift element {j} outside [1, {f.n}]")
    return SetFamily(f.n, f.packed.shift(j), validate=False)


@dataclass(frozen=True)
class ShiftTrace:
    """stages[h] is T_h(...T_1(F)...); stages[0] is the input."""

    stages: tuple[SetFamily, ...]

    @property
    def final(self) -> SetFamily:
        return self.stages[-1]


def shift_full(f: SetFamily) -> ShiftTrace:
    stages = [f]
    cur = f
    for j in range(1, f.n + 1):
        cur = shift_element(cur, j)
        stages.append(cur)
    return ShiftTrace(tuple(stages))


def shift_final(f: SetFamily) -> SetFamily:
    """Same result as ``shift_full(f).final`` keeping only the current stage."""
    members = f.members
    for j in range(1, f.n + 1):
        members = kernels.PackedFamily(members, f.n).shift(j)
    return SetFamily(f.n, members, validate=False)


def osh_via_shift(f: SetFamily) -> SetFamily:
    return shift_final(f)


def check_stage_invariant(f: SetFamily, w: ShatterWitness, trace: ShiftTrace | None = None) -> bool:
    """For every h in [n+1], each witness member cut down to the target
    elements below h plus everything from h on must lie in stage h-1."""
    if trace is None:
        trace = shift_full(f)
    packed = [stage.packed for stage in trace.stages]
    return bool(kernels.stage_invariant(packed, list(w.ordered), w.target, f.n))
