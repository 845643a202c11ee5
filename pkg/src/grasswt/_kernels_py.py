"""Pure-Python search kernels (fallback for the compiled ``_kernels``).

Both kernels walk r x k RREF matrices, one per r-dim subspace of F_q^k,
for a given list of pivot patterns.  Vectors are integer indices
``sum v_c q^c``.  Enumeration order, pruning and tie-breaking are
identical to the compiled module; the test suite checks this.
"""
from __future__ import annotations

from itertools import product


def row_values(pivots, q, k):
    """Candidate row indices for every row of a pivot pattern, in order."""
    ps = set(pivots)
    out = []
    for p in pivots:
        free = [c for c in range(p + 1, k) if c not in ps]
        base = q ** p
        weights = [q ** c for c in free]
        out.append([base + sum(d * w for d, w in zip(digits, weights))
                    for digits in product(range(q), repeat=len(free))])
    return out


def _vec_ops(q, k, add, mul):
    pows = [q ** c for c in range(k)]

    def vadd(x, y):
        out = 0
        for p in pows:
            out += add[x % q][y % q] * p
            x //= q
            y //= q
        return out

    def vscale(lam, x):
        out = 0
        for p in pows:
            out += mul[lam][x % q] * p
            x //= q
        return out

    return vadd, vscale


def min_support(masks, q, k, r, patterns, ranks, incumbent, prune, budget):
    """Minimum popcount of OR(masks[row]) over r-dim subspaces.

    ``masks[i]`` is the support bitmask (a Python int) of the codeword with
    message index i.  A branch is cut when its partial support already
    exceeds the incumbent.  Returns
    ``(best, rows, best_rank, leaves, nodes, exceeded)``.
    """
    best = incumbent
    best_rows = None
    best_rank = -1
    leaves = nodes = 0
    for piv, rank in zip(patterns, ranks):
        vals = row_values(piv, q, k)
        chosen = [0] * r
        # explicit stack of (depth, iterator, partial mask)
        stack = [(0, iter(vals[0]), 0)]
        while stack:
            depth, it, acc = stack[-1]
            v = next(it, None)
            if v is None:
                stack.pop()
                continue
            nodes += 1
            cur = acc | masks[v]
            chosen[depth] = v
            pc = cur.bit_count()
            if depth == r - 1:
                leaves += 1
                if pc < best:
                    best, best_rows, best_rank = pc, tuple(chosen), rank
                if leaves > budget:
                    return best, best_rows, best_rank, leaves, nodes, True
                continue
            if prune and pc > best:
                continue
            stack.append((depth + 1, iter(vals[depth + 1]), cur))
    return best, best_rows, best_rank, leaves, nodes, False


def max_weight(weights, wmax, q, k, dim, add, mul, patterns, ranks, best_init, prune, budget):
    """Maximum total weight of normalized nonzero vectors over dim-subspaces.

    Only vectors whose first nonzero coordinate is 1 are visited, so each
    projective point of a subspace is counted once.  A branch is cut when
    even full weight on every remaining point cannot beat the incumbent.
    """
    vadd, vscale = _vec_ops(q, k, add, mul)
    span_len = [(q ** d - 1) // (q - 1) for d in range(dim + 1)]
    best = best_init
    best_rows = None
    best_rank = -1
    leaves = nodes = 0
    for piv, rank in zip(patterns, ranks):
        vals = row_values(piv, q, k)
        chosen = [0] * dim
        span = [0] * span_len[dim]
        stack = [(0, iter(vals[0]), 0)]
        while stack:
            depth, it, acc = stack[-1]
            v = next(it, None)
            if v is None:
                stack.pop()
                continue
            nodes += 1
            chosen[depth] = v
            base = span_len[depth]
            span[base] = v
            s = weights[v]
            if q == 2:
                for i in range(base):
                    y = span[i] ^ v
                    span[base + 1 + i] = y
                    s += weights[y]
            else:
                scaled = [vscale(lam, v) for lam in range(1, q)]
                j = base + 1
                for i in range(base):
                    x = span[i]
                    for sv in scaled:
                        y = vadd(x, sv)
                        span[j] = y
                        j += 1
                        s += weights[y]
            cur = acc + s
            if depth == dim - 1:
                leaves += 1
                if cur > best:
                    best, best_rows, best_rank = cur, tuple(chosen), rank
                if leaves > budget:
                    return best, best_rows, best_rank, leaves, nodes, True
                continue
            if prune and cur + wmax * (span_len[dim] - span_len[depth + 1]) <= best:
                continue
            stack.append((depth + 1, iter(vals[depth + 1]), cur))
    return best, best_rows, best_rank, leaves, nodes, False
