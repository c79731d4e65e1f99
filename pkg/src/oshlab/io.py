"""JSON family documents: {"n": 2, "sets": [[1], [2]]}, one per file,
UTF-8, compact, newline-terminated.  A ``"masks"`` list of integers is
accepted in place of ``"sets"`` (the --bitmask output form)."""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .core import MAX_BITS, SetFamily, elements, fmt_set
from .errors import (
    DuplicateSet,
    ElementOutOfRange,
    FamilyFormatError,
    NotStrictlyIncreasing,
    ParseError,
)


@dataclass(frozen=True)
class FamilyDocument:
    n: int
    sets: tuple[tuple[int, ...], ...]

    @classmethod
    def from_family(cls, f: SetFamily) -> "FamilyDocument":
        return cls(f.n, tuple(tuple(elements(m)) for m in f.members))

    def to_family(self) -> SetFamily:
        return SetFamily.from_sets(self.n, self.sets)

    def to_json_obj(self, bitmask: bool = False) -> dict:
        if bitmask:
            return {"n": self.n, "masks": [sum(1 << (e - 1) for e in s) for s in self.sets]}
        return {"n": self.n, "sets": [list(s) for s in self.sets]}


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def parse_family(text: str) -> SetFamily:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(obj, dict) or "n" not in obj:
        raise ParseError("expected an object with keys 'n' and 'sets'")
    n = obj["n"]
    if not _is_int(n) or not 0 <= n <= MAX_BITS:
        raise FamilyFormatError(f"'n' must be an integer in [0, {MAX_BITS}]")
    if "masks" in obj and "sets" not in obj:
        raw = obj["masks"]
        if not isinstance(raw, list) or not all(_is_int(x) for x in raw):
            raise FamilyFormatError("'masks' must be a list of integers")
        seen = set()
        for x in raw:
            if x < 0 or x >> n:
                raise ElementOutOfRange(f"mask {x} not inside [{n}]")
            if x in seen:
                raise DuplicateSet(f"duplicate set {fmt_set(x)}")
            seen.add(x)
        return SetFamily(n, raw)
    raw = obj.get("sets")
    if not isinstance(raw, list):
        raise FamilyFormatError("'sets' must be a list of lists")
    masks = []
    seen = set()
    for s in raw:
        if not isinstance(s, list) or not all(_is_int(e) for e in s):
            raise FamilyFormatError(f"set {s!r} is not a list of integers")
        for e in s:
            if not 1 <= e <= n:
                raise ElementOutOfRange(f"element {e} of {s} outside [1, {n}]")
        if any(x >= y for x, y in zip(s, s[1:])):
            raise NotStrictlyIncreasing(f"set {s} is not strictly increasing")
        m = sum(1 << (e - 1) for e in s)
        if m in seen:
            raise DuplicateSet(f"duplicate set {s}")
        seen.add(m)
        masks.append(m)
    return SetFamily(n, masks)


def dumps_family(f: SetFamily, bitmask: bool = False) -> str:
    obj = FamilyDocument.from_family(f).to_json_obj(bitmask)
    return json.dumps(obj, separators=(",", ":")) + "\n"


def load_family(path) -> SetFamily:
    return parse_family(Path(path).read_text(encoding="utf-8"))


def save_family(f: SetFamily, path, bitmask: bool = False) -> None:
    Path(path).write_text(dumps_family(f, bitmask), encoding="utf-8")
