"""Pure-Python kernels.  Same surface as the compiled ``_ckernel`` module.

Masks are plain ints; element ``e`` of ``[n]`` lives at bit ``e - 1``.
A :class:`PackedFamily` keeps its members sorted by numeric value, so the
members sharing a trace on ``[e + 1, n]`` (bits above ``e - 1``) always form
a contiguous run.  The order-shattering recursion walks those runs.
"""
from bisect import bisect_left


def _bits(s):
    out = []
    e = 0
    while s:
        if s & 1:
            out.append(e)
        s >>= 1
        e += 1
    return out


def _check(a, lo, hi, elems, k):
    if k == 0:
        return hi > lo
    need = 1 << (k - 1)
    if hi - lo < 2 * need:
        return False
    e = elems[k - 1]
    sh = e + 1
    bit = 1 << e
    i = lo
    while i < hi:
        base = (a[i] >> sh) << sh
        end = bisect_left(a, base + (1 << sh), i, hi)
        split = bisect_left(a, base | bit, i, end)
        if (
            split - i >= need
            and end - split >= need
            and _check(a, i, split, elems, k - 1)
            and _check(a, split, end, elems, k - 1)
        ):
            return True
        i = end
    return False


def _witness(a, lo, hi, elems, k, out, pos):
    if k == 0:
        if hi > lo:
            out[pos] = a[lo]
            return True
        return False
    need = 1 << (k - 1)
    if hi - lo < 2 * need:
        return False
    e = elems[k - 1]
    sh = e + 1
    bit = 1 << e
    i = lo
    while i < hi:
        base = (a[i] >> sh) << sh
        end = bisect_left(a, base + (1 << sh), i, hi)
        split = bisect_left(a, base | bit, i, end)
        if (
            split - i >= need
            and end - split >= need
            and _witness(a, i, split, elems, k - 1, out, pos)
            and _witness(a, split, end, elems, k - 1, out, pos + need)
        ):
            return True
        i = end
    return False


class PackedFamily:
    """Sorted member array plus the closure kernels over it."""

    def __init__(self, masks, n):
        self.n = n
        self._a = sorted(masks)
        self._set = frozenset(self._a)

    def __len__(self):
        return len(self._a)

    def masks(self):
        return list(self._a)

    def contains(self, x):
        return x in self._set

    def order_shatters(self, s):
        elems = _bits(s)
        return _check(self._a, 0, len(self._a), elems, len(elems))

    def witness(self, s):
        elems = _bits(s)
        k = len(elems)
        out = [0] * (1 << k)
        if _witness(self._a, 0, len(self._a), elems, k, out, 0):
            return out
        return None

    def osh_all(self, prune=False):
        a = self._a
        size = len(a)
        found = set()
        out = []
        for s in range(1 << self.n):
            if prune and s and not all((s & ~(1 << e)) in found for e in _bits(s)):
                continue
            elems = _bits(s)
            if _check(a, 0, size, elems, len(elems)):
                out.append(s)
                if prune:
                    found.add(s)
        return out

    def sh_all(self):
        a = self._a
        out = []
        for s in range(1 << self.n):
            full = 1 << bin(s).count("1")
            if len(a) >= full and len({m & s for m in a}) == full:
                out.append(s)
        return out

    def st_all(self):
        a = self._a
        members = self._set
        out = []
        for s in range(1 << self.n):
            if len(a) < 1 << bin(s).count("1"):
                continue
            for b in a:
                if b & s:
                    continue
                h = s
                ok = True
                while h:
                    if (b | h) not in members:
                        ok = False
                        break
                    h = (h - 1) & s
                if ok:
                    out.append(s)
                    break
        return out

    def shift(self, j):
        bit = 1 << (j - 1)
        members = self._set
        return [m ^ bit if m & bit and (m ^ bit) not in members else m for m in self._a]


def longest_chain(masks, n):
    masks = list(masks)
    size = len(masks)
    if size == 0:
        return 0
    if n <= 20 and (1 << n) * max(n, 1) < size * size:
        member = bytearray(1 << n)
        for m in masks:
            member[m] = 1
        best = bytearray(1 << n)
        for x in range(1 << n):
            top = 0
            y = x
            while y:
                low = y & -y
                v = best[x ^ low]
                if v > top:
                    top = v
                y ^= low
            best[x] = top + member[x]
        return best[(1 << n) - 1]
    ms = sorted(masks, key=lambda m: (bin(m).count("1"), m))
    best = []
    for i, x in enumerate(ms):
        top = 0
        for j in range(i):
            y = ms[j]
            if y & ~x == 0 and best[j] > top:
                top = best[j]
        best.append(top + 1)
    return max(best)


def verify_standard_order(ordered, s, n):
    elems = _bits(s)
    k = len(elems)
    if len(ordered) != 1 << k or len(set(ordered)) != len(ordered):
        return False
    for g in ordered:
        if g < 0 or g >> n:
            return False
    for j, g in enumerate(ordered):
        for i, e in enumerate(elems):
            if (g >> e) & 1 != (j >> i) & 1:
                return False
    for i in range(1, k + 1):
        sh = elems[i - 1] + 1
        block = 1 << i
        for start in range(0, len(ordered), block):
            high = ordered[start] >> sh
            for g in ordered[start + 1:start + block]:
                if g >> sh != high:
                    return False
    return True


def stage_invariant(stages, ordered, s, n):
    elems = _bits(s)
    for h in range(1, n + 2):
        prefix = 0
        for e in elems:
            if e + 1 < h:
                prefix |= 1 << e
        tail = ((1 << n) - 1) & ~((1 << (h - 1)) - 1)
        keep = prefix | tail
        stage = stages[h - 1]
        for g in ordered:
            if not stage.contains(g & keep):
                return False
    return True
