# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled search kernels.

Same contract as ``_kernels_py``: identical enumeration order, pruning and
tie-breaking, so results (including witnesses) agree bit for bit.
"""
from libc.stdint cimport int64_t, uint64_t
from libc.stdlib cimport free, malloc

cdef extern from *:
    """
    static inline int grass_popcount(unsigned long long x) { return __builtin_popcountll(x); }
    """
    int grass_popcount(unsigned long long x) nogil


cdef int64_t _fill_rows(const int64_t[::1] piv, int q, int k, int64_t* vals, int64_t* off, int64_t* cnt) noexcept nogil:
    """Write candidate row indices of every row into vals; return total count."""
    cdef int r = piv.shape[0]
    cdef int i, c, j, nfree
    cdef int64_t total = 0, t, n, idx, rem
    cdef int free_cols[64]
    cdef int64_t pw[64]
    cdef bint is_piv
    for c in range(k):
        pw[c] = 1 if c == 0 else pw[c - 1] * q
    for i in range(r):
        nfree = 0
        for c in range(piv[i] + 1, k):
            is_piv = False
            for j in range(r):
                if piv[j] == c:
                    is_piv = True
                    break
            if not is_piv:
                free_cols[nfree] = c
                nfree += 1
        n = 1
        for j in range(nfree):
            n *= q
        off[i] = total
        cnt[i] = n
        for t in range(n):
            # first free column is the most significant digit
            idx = pw[piv[i]]
            rem = t
            for j in range(nfree - 1, -1, -1):
                idx += (rem % q) * pw[free_cols[j]]
                rem //= q
            vals[total + t] = idx
        total += n
    return total


cdef int64_t _vals_size(const int64_t[::1] piv, int q, int k) noexcept nogil:
    cdef int r = piv.shape[0]
    cdef int i
    cdef int64_t total = 0, n
    for i in range(r):
        # free columns after pivot i: (k - 1 - piv[i]) - (r - 1 - i)
        n = 1
        for _ in range((k - 1 - piv[i]) - (r - 1 - i)):
            n *= q
        total += n
    return total


def min_support(const uint64_t[:, ::1] masks, int q, int k, int r,
                const int64_t[:, ::1] patterns, const int64_t[::1] ranks,
                int64_t incumbent, bint prune, int64_t budget):
    cdef int W = masks.shape[1]
    cdef int64_t P = patterns.shape[0]
    cdef int64_t best = incumbent, best_rank = -1
    cdef int64_t leaves = 0, nodes = 0
    cdef int64_t pi, sz, idx, pc
    cdef int depth, w
    cdef uint64_t t
    cdef bint exceeded = False
    cdef int64_t off[64]
    cdef int64_t cnt[64]
    cdef int64_t pos[64]
    cdef int64_t chosen[64]
    cdef int64_t best_rows[64]
    cdef uint64_t* acc = <uint64_t*> malloc((r + 1) * W * sizeof(uint64_t))
    cdef int64_t* vals
    if acc == NULL:
        raise MemoryError()
    for w in range(W):
        acc[w] = 0
    try:
        for pi in range(P):
            sz = _vals_size(patterns[pi], q, k)
            vals = <int64_t*> malloc(sz * sizeof(int64_t))
            if vals == NULL:
                raise MemoryError()
            with nogil:
                _fill_rows(patterns[pi], q, k, vals, off, cnt)
                depth = 0
                pos[0] = 0
                while True:
                    if pos[depth] == cnt[depth]:
                        if depth == 0:
                            break
                        depth -= 1
                        pos[depth] += 1
                        continue
                    idx = vals[off[depth] + pos[depth]]
                    chosen[depth] = idx
                    nodes += 1
                    pc = 0
                    for w in range(W):
                        t = acc[depth * W + w] | masks[idx, w]
                        acc[(depth + 1) * W + w] = t
                        pc += grass_popcount(t)
                    if depth == r - 1:
                        leaves += 1
                        if pc < best:
                            best = pc
                            best_rank = ranks[pi]
                            for w in range(r):
                                best_rows[w] = chosen[w]
                        pos[depth] += 1
                        if leaves > budget:
                            exceeded = True
                            break
                        continue
                    if prune and pc > best:
                        pos[depth] += 1
                        continue
                    depth += 1
                    pos[depth] = 0
            free(vals)
            if exceeded:
                break
    finally:
        free(acc)
    rows = tuple(best_rows[w] for w in range(r)) if best_rank >= 0 else None
    return best, rows, best_rank, leaves, nodes, exceeded


cdef inline int64_t _vadd(int64_t x, int64_t y, int q, int k, const int64_t* addt) noexcept nogil:
    cdef int64_t out = 0, p = 1
    cdef int c
    for c in range(k):
        out += addt[(x % q) * q + (y % q)] * p
        x //= q
        y //= q
        p *= q
    return out


cdef inline int64_t _vscale(int64_t lam, int64_t x, int q, int k, const int64_t* mult) noexcept nogil:
    cdef int64_t out = 0, p = 1
    cdef int c
    for c in range(k):
        out += mult[lam * q + (x % q)] * p
        x //= q
        p *= q
    return out


def max_weight(const int64_t[::1] weights, int64_t wmax, int q, int k, int dim,
               const int64_t[::1] addt, const int64_t[::1] mult,
               const int64_t[:, ::1] patterns, const int64_t[::1] ranks,
               int64_t best_init, bint prune, int64_t budget):
    cdef int64_t P = patterns.shape[0]
    cdef int64_t best = best_init, best_rank = -1
    cdef int64_t leaves = 0, nodes = 0
    cdef int64_t pi, sz, v, s, cur, base, i, j, y, x
    cdef int depth, lam, d
    cdef bint exceeded = False
    cdef int64_t off[64]
    cdef int64_t cnt[64]
    cdef int64_t pos[64]
    cdef int64_t chosen[64]
    cdef int64_t best_rows[64]
    cdef int64_t sums[65]
    cdef int64_t span_len[65]
    cdef int64_t scaled[16]
    cdef int64_t* vals
    span_len[0] = 0
    for d in range(1, dim + 1):
        span_len[d] = span_len[d - 1] * q + 1
    cdef int64_t* span = <int64_t*> malloc((span_len[dim] + 1) * sizeof(int64_t))
    if span == NULL:
        raise MemoryError()
    sums[0] = 0
    try:
        for pi in range(P):
            sz = _vals_size(patterns[pi], q, k)
            vals = <int64_t*> malloc(sz * sizeof(int64_t))
            if vals == NULL:
                raise MemoryError()
            with nogil:
                _fill_rows(patterns[pi], q, k, vals, off, cnt)
                depth = 0
                pos[0] = 0
                while True:
                    if pos[depth] == cnt[depth]:
                        if depth == 0:
                            break
                        depth -= 1
                        pos[depth] += 1
                        continue
                    v = vals[off[depth] + pos[depth]]
                    chosen[depth] = v
                    nodes += 1
                    base = span_len[depth]
                    span[base] = v
                    s = weights[v]
                    if q == 2:
                        for i in range(base):
                            y = span[i] ^ v
                            span[base + 1 + i] = y
                            s += weights[y]
                    else:
                        for lam in range(1, q):
                            scaled[lam] = _vscale(lam, v, q, k, &mult[0])
                        j = base + 1
                        for i in range(base):
                            x = span[i]
                            for lam in range(1, q):
                                y = _vadd(x, scaled[lam], q, k, &addt[0])
                                span[j] = y
                                j += 1
                                s += weights[y]
                    cur = sums[depth] + s
                    sums[depth + 1] = cur
                    if depth == dim - 1:
                        leaves += 1
                        if cur > best:
                            best = cur
                            best_rank = ranks[pi]
                            for d in range(dim):
                                best_rows[d] = chosen[d]
                        pos[depth] += 1
                        if leaves > budget:
                            exceeded = True
                            break
                        continue
                    if prune and cur + wmax * (span_len[dim] - span_len[depth + 1]) <= best:
                        pos[depth] += 1
                        continue
                    depth += 1
                    pos[depth] = 0
            free(vals)
            if exceeded:
                break
    finally:
        free(span)
    rows = tuple(best_rows[d] for d in range(dim)) if best_rank >= 0 else None
    return best, rows, best_rank, leaves, nodes, exceeded
