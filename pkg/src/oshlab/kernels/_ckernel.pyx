# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels.  Same surface as ``_pykernel``; members are uint64 masks
(element e at bit e-1), so ground sizes up to 63 fit."""
from libc.stdint cimport uint64_t, uint8_t, int64_t
from libc.stdlib cimport malloc, calloc, free, qsort
from libc.string cimport memset


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef int _cmp_u64(const void* pa, const void* pb) noexcept nogil:
    cdef uint64_t x = (<const uint64_t*>pa)[0]
    cdef uint64_t y = (<const uint64_t*>pb)[0]
    return (x > y) - (x < y)


cdef inline uint64_t _high(uint64_t x, int sh) noexcept nogil:
    if sh >= 64:
        return 0
    return x >> sh


cdef inline int _popcount(uint64_t x) noexcept nogil:
    return __builtin_popcountll(x)


cdef int _bits(uint64_t s, int* out) noexcept nogil:
    cdef int k = 0
    cdef int e = 0
    while s:
        if s & 1:
            out[k] = e
            k += 1
        s >>= 1
        e += 1
    return k


cdef uint64_t* _to_array(object masks, Py_ssize_t* size) except NULL:
    cdef Py_ssize_t m = len(masks)
    cdef uint64_t* a = <uint64_t*>malloc((m if m > 0 else 1) * sizeof(uint64_t))
    if a == NULL:
        raise MemoryError()
    cdef Py_ssize_t i = 0
    for x in masks:
        a[i] = <uint64_t>x
        i += 1
    size[0] = m
    return a


cdef bint _search(const uint64_t* a, Py_ssize_t size, uint64_t x) noexcept nogil:
    cdef Py_ssize_t lo = 0, hi = size, mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if a[mid] < x:
            lo = mid + 1
        else:
            hi = mid
    return lo < size and a[lo] == x


cdef bint _check(const uint64_t* a, Py_ssize_t lo, Py_ssize_t hi,
                 const int* elems, int k) noexcept nogil:
    if k == 0:
        return hi > lo
    cdef Py_ssize_t need = (<Py_ssize_t>1) << (k - 1)
    if hi - lo < 2 * need:
        return False
    cdef int sh = elems[k - 1] + 1
    cdef uint64_t bit = (<uint64_t>1) << elems[k - 1]
    cdef Py_ssize_t i = lo, j, split
    cdef uint64_t top
    while i < hi:
        top = _high(a[i], sh)
        j = i
        while j < hi and _high(a[j], sh) == top and not (a[j] & bit):
            j += 1
        split = j
        while j < hi and _high(a[j], sh) == top:
            j += 1
        if split - i >= need and j - split >= need:
            if _check(a, i, split, elems, k - 1) and _check(a, split, j, elems, k - 1):
                return True
        i = j
    return False


cdef bint _witness(const uint64_t* a, Py_ssize_t lo, Py_ssize_t hi,
                   const int* elems, int k, uint64_t* out) noexcept nogil:
    if k == 0:
        if hi > lo:
            out[0] = a[lo]
            return True
        return False
    cdef Py_ssize_t need = (<Py_ssize_t>1) << (k - 1)
    if hi - lo < 2 * need:
        return False
    cdef int sh = elems[k - 1] + 1
    cdef uint64_t bit = (<uint64_t>1) << elems[k - 1]
    cdef Py_ssize_t i = lo, j, split
    cdef uint64_t top
    while i < hi:
        top = _high(a[i], sh)
        j = i
        while j < hi and _high(a[j], sh) == top and not (a[j] & bit):
            j += 1
        split = j
        while j < hi and _high(a[j], sh) == top:
            j += 1
        if split - i >= need and j - split >= need:
            if (_witness(a, i, split, elems, k - 1, out)
                    and _witness(a, split, j, elems, k - 1, out + need)):
                return True
        i = j
    return False


cdef class PackedFamily:
    """Sorted member array plus the closure kernels over it."""
    cdef uint64_t* a
    cdef Py_ssize_t size
    cdef readonly int n

    def __cinit__(self, masks, int n):
        self.a = NULL
        self.n = n
        self.a = _to_array(masks, &self.size)
        qsort(self.a, self.size, sizeof(uint64_t), _cmp_u64)

    def __dealloc__(self):
        if self.a != NULL:
            free(self.a)

    def __len__(self):
        return self.size

    def masks(self):
        return [self.a[i] for i in range(self.size)]

    cdef bint _contains(self, uint64_t x) noexcept nogil:
        return _search(self.a, self.size, x)

    def contains(self, x):
        if x < 0 or x >= (1 << 64):
            return False
        return self._contains(<uint64_t>x)

    def order_shatters(self, s):
        cdef int elems[64]
        cdef int k = _bits(<uint64_t>s, elems)
        return _check(self.a, 0, self.size, elems, k)

    def witness(self, s):
        cdef int elems[64]
        cdef int k = _bits(<uint64_t>s, elems)
        if k > 40 or ((<Py_ssize_t>1) << k) > self.size:
            return None
        cdef Py_ssize_t total = (<Py_ssize_t>1) << k
        cdef uint64_t* out = <uint64_t*>malloc(total * sizeof(uint64_t))
        if out == NULL:
            raise MemoryError()
        cdef bint ok
        try:
            ok = _witness(self.a, 0, self.size, elems, k, out)
            if not ok:
                return None
            return [out[i] for i in range(total)]
        finally:
            free(out)

    def osh_all(self, bint prune=False):
        cdef int elems[64]
        cdef int k, e
        cdef uint64_t s, limit = (<uint64_t>1) << self.n
        cdef uint8_t* found = NULL
        cdef bint skip
        out = []
        if prune:
            found = <uint8_t*>calloc(limit, 1)
            if found == NULL:
                raise MemoryError()
        try:
            s = 0
            while s < limit:
                k = _bits(s, elems)
                skip = False
                if prune:
                    for e in range(k):
                        if not found[s & ~((<uint64_t>1) << elems[e])]:
                            skip = True
                            break
                if not skip and _check(self.a, 0, self.size, elems, k):
                    out.append(s)
                    if prune:
                        found[s] = 1
                s += 1
        finally:
            if found != NULL:
                free(found)
        return out

    def sh_all(self):
        cdef int elems[64]
        cdef int k, i
        cdef uint64_t s, limit = (<uint64_t>1) << self.n
        cdef uint64_t m, idx, full
        cdef Py_ssize_t t, count
        cdef int kmax = 0
        while ((<Py_ssize_t>1) << (kmax + 1)) <= self.size and kmax < self.n:
            kmax += 1
        cdef int64_t* stamp = <int64_t*>malloc(((<Py_ssize_t>1) << kmax) * sizeof(int64_t))
        if stamp == NULL:
            raise MemoryError()
        for t in range((<Py_ssize_t>1) << kmax):
            stamp[t] = -1
        out = []
        try:
            if self.size == 0:
                return out
            s = 0
            while s < limit:
                k = _bits(s, elems)
                if k <= kmax:
                    full = (<uint64_t>1) << k
                    count = 0
                    for t in range(self.size):
                        m = self.a[t]
                        idx = 0
                        for i in range(k):
                            if m & ((<uint64_t>1) << elems[i]):
                                idx |= (<uint64_t>1) << i
                        if stamp[idx] != <int64_t>s:
                            stamp[idx] = <int64_t>s
                            count += 1
                            if <uint64_t>count == full:
                                break
                    if <uint64_t>count == full:
                        out.append(s)
                s += 1
        finally:
            free(stamp)
        return out

    def st_all(self):
        cdef uint64_t s, limit = (<uint64_t>1) << self.n
        cdef uint64_t b, h
        cdef Py_ssize_t t
        cdef bint ok
        out = []
        s = 0
        while s < limit:
            if ((<uint64_t>1) << _popcount(s)) <= <uint64_t>self.size:
                for t in range(self.size):
                    b = self.a[t]
                    if b & s:
                        continue
                    ok = True
                    h = s
                    while h:
                        if not _search(self.a, self.size, b | h):
                            ok = False
                            break
                        h = (h - 1) & s
                    if ok:
                        out.append(s)
                        break
            s += 1
        return out

    def shift(self, int j):
        cdef uint64_t bit = (<uint64_t>1) << (j - 1)
        cdef uint64_t m
        cdef Py_ssize_t t
        out = []
        for t in range(self.size):
            m = self.a[t]
            if (m & bit) and not _search(self.a, self.size, m ^ bit):
                out.append(m ^ bit)
            else:
                out.append(m)
        return out


cdef int _cmp_card(const void* pa, const void* pb) noexcept nogil:
    cdef uint64_t x = (<const uint64_t*>pa)[0]
    cdef uint64_t y = (<const uint64_t*>pb)[0]
    cdef int cx = _popcount(x), cy = _popcount(y)
    if cx != cy:
        return (cx > cy) - (cx < cy)
    return (x > y) - (x < y)


def longest_chain(masks, int n):
    cdef Py_ssize_t size
    cdef uint64_t* a = _to_array(list(masks), &size)
    cdef Py_ssize_t i, j
    cdef uint64_t x, y, low, limit
    cdef uint8_t* member
    cdef uint8_t* best8
    cdef int* best
    cdef int top, result = 0
    try:
        if size == 0:
            return 0
        if n <= 26 and ((<uint64_t>1) << n) * (n if n > 0 else 1) < <uint64_t>size * <uint64_t>size:
            limit = (<uint64_t>1) << n
            member = <uint8_t*>calloc(limit, 1)
            best8 = <uint8_t*>calloc(limit, 1)
            if member == NULL or best8 == NULL:
                free(member)
                free(best8)
                raise MemoryError()
            for i in range(size):
                member[a[i]] = 1
            x = 0
            while x < limit:
                top = 0
                y = x
                while y:
                    low = y & (~y + 1)
                    if best8[x ^ low] > top:
                        top = best8[x ^ low]
                    y ^= low
                best8[x] = top + member[x]
                x += 1
            result = best8[limit - 1]
            free(member)
            free(best8)
            return result
        qsort(a, size, sizeof(uint64_t), _cmp_card)
        best = <int*>malloc(size * sizeof(int))
        if best == NULL:
            raise MemoryError()
        for i in range(size):
            x = a[i]
            top = 0
            for j in range(i):
                if (a[j] & ~x) == 0 and best[j] > top:
                    top = best[j]
            best[i] = top + 1
            if best[i] > result:
                result = best[i]
        free(best)
        return result
    finally:
        free(a)


def verify_standard_order(ordered, s, int n):
    cdef int elems[64]
    cdef int k = _bits(<uint64_t>s, elems)
    cdef Py_ssize_t size, j, start, total
    cdef int i, sh
    cdef uint64_t g, high
    if len(ordered) != (1 << k):
        return False
    for x in ordered:
        if x < 0 or (x >> n):
            return False
    if len(set(ordered)) != len(ordered):
        return False
    cdef uint64_t* a = _to_array(ordered, &size)
    try:
        for j in range(size):
            g = a[j]
            for i in range(k):
                if ((g >> elems[i]) & 1) != ((<uint64_t>j >> i) & 1):
                    return False
        for i in range(1, k + 1):
            sh = elems[i - 1] + 1
            total = (<Py_ssize_t>1) << i
            start = 0
            while start < size:
                high = _high(a[start], sh)
                for j in range(start + 1, start + total):
                    if _high(a[j], sh) != high:
                        return False
                start += total
        return True
    finally:
        free(a)


def stage_invariant(stages, ordered, s, int n):
    cdef int elems[64]
    cdef int k = _bits(<uint64_t>s, elems)
    cdef Py_ssize_t size, j
    cdef int h, i
    cdef uint64_t prefix, tail, keep, full
    cdef PackedFamily stage
    cdef uint64_t* a = _to_array(ordered, &size)
    full = ((<uint64_t>1) << n) - 1 if n < 64 else <uint64_t>(-1)
    try:
        for h in range(1, n + 2):
            prefix = 0
            for i in range(k):
                if elems[i] + 1 < h:
                    prefix |= (<uint64_t>1) << elems[i]
            tail = full & ~(((<uint64_t>1) << (h - 1)) - 1)
            keep = prefix | tail
            stage = stages[h - 1]
            for j in range(size):
                if not stage._contains(a[j] & keep):
                    return False
        return True
    finally:
        free(a)
