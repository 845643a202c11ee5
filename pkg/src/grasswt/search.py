"""Subspace searches over F_q^k and selection of the kernel backend.

The compiled kernels (``grasswt._kernels``) are used when importable;
otherwise, or when ``GRASSWT_PURE_PYTHON`` is set, the pure-Python ones.
Work is partitioned across worker processes by pivot pattern; each worker
keeps its own incumbent and results are merged by value, then by the rank
of the pivot pattern, which reproduces the single-process witness.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _kernels_py
from .errors import EnumerationBudgetExceeded, SearchBudgetExceeded
from .gf import FieldSpec
from .linalg import gaussian_binomial, rref_patterns, vector_of

try:
    from . import _kernels as _compiled
except ImportError:  # pragma: no cover - exercised when the extension is absent
    _compiled = None

AVAILABLE_BACKENDS = ("cython", "python") if _compiled is not None else ("python",)
BACKEND = "python" if (_compiled is None or os.environ.get("GRASSWT_PURE_PYTHON")) else "cython"

DEFAULT_BUDGET_SUBSPACES = 2 * 10 ** 8
DEFAULT_BUDGET_CODEWORDS = 10 ** 7


@dataclass(frozen=True)
class SearchConfig:
    budget_subspaces: int = DEFAULT_BUDGET_SUBSPACES
    budget_codewords: int = DEFAULT_BUDGET_CODEWORDS
    prune: bool = True
    workers: int = 1
    backend: str | None = None

    def __post_init__(self):
        if self.budget_subspaces <= 0 or self.budget_codewords <= 0:
            raise ValueError("budgets must be positive")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.backend not in (None, *AVAILABLE_BACKENDS):
            raise ValueError(f"backend {self.backend!r} not available (have {AVAILABLE_BACKENDS})")

    @property
    def resolved_backend(self) -> str:
        return self.backend or BACKEND

    def settings(self) -> dict:
        """Settings that can change a search result or its cost."""
        return {"prune": self.prune, "budget_subspaces": self.budget_subspaces,
                "budget_codewords": self.budget_codewords}


DEFAULT_CONFIG = SearchConfig()


@dataclass(frozen=True)
class SearchResult:
    value: int
    rows: tuple[int, ...]
    q: int
    k: int
    leaves: int
    nodes: int
    backend: str

    @property
    def vectors(self) -> list[tuple[int, ...]]:
        return [vector_of(i, self.q, self.k) for i in self.rows]


def check_subspace_budget(k: int, r: int, q: int, config: SearchConfig) -> int:
    count = gaussian_binomial(k, r, q)
    if count > config.budget_subspaces:
        raise SearchBudgetExceeded(
            f"[{k},{r}]_{q} = {count} subspaces exceeds the budget of {config.budget_subspaces}",
            count, config.budget_subspaces)
    return count


def message_codewords(generator: Sequence[Sequence[int]], F: FieldSpec, config: SearchConfig = DEFAULT_CONFIG) -> np.ndarray:
    """All q^k codewords, row i being the codeword of message index i."""
    k = len(generator)
    n = len(generator[0]) if k else 0
    if F.q ** k > config.budget_codewords:
        raise EnumerationBudgetExceeded(
            f"{F.q}^{k} codewords exceeds the budget of {config.budget_codewords}",
            F.q ** k, config.budget_codewords)
    add = np.array(F.add_table, dtype=np.uint8)
    mul = np.array(F.mul_table, dtype=np.uint8)
    G = np.array(generator, dtype=np.uint8).reshape(k, n)
    cw = np.zeros((1, n), dtype=np.uint8)
    for c in range(k):
        blocks = [cw if a == 0 else add[cw, mul[a][G[c]][None, :]] for a in range(F.q)]
        cw = np.concatenate(blocks, axis=0)
    return cw


def pack_supports(codewords: np.ndarray) -> np.ndarray:
    """Support bitmasks as (rows, ceil(n/64)) uint64, bit i of word i//64."""
    nz = codewords != 0
    n = nz.shape[1]
    W = max(1, (n + 63) // 64)
    padded = np.zeros((nz.shape[0], W * 64), dtype=bool)
    padded[:, :n] = nz
    packed = np.packbits(padded, axis=1, bitorder="little")
    return np.ascontiguousarray(packed.view("<u8").astype(np.uint64))


def masks_as_ints(words: np.ndarray) -> list[int]:
    return [int.from_bytes(row.astype("<u8").tobytes(), "little") for row in words]


def _chunks(k: int, r: int, workers: int):
    pats = rref_patterns(k, r)
    ranks = list(range(len(pats)))
    if workers <= 1:
        return [(pats, ranks)]
    return [(pats[i::workers], ranks[i::workers]) for i in range(workers) if pats[i::workers]]


def _run_min(args):
    backend, masks, q, k, r, pats, ranks, incumbent, prune, budget = args
    if backend == "cython":
        P = np.array(pats, dtype=np.int64).reshape(len(pats), r)
        return _compiled.min_support(masks, q, k, r, P, np.array(ranks, dtype=np.int64),
                                     incumbent, prune, budget)
    return _kernels_py.min_support(masks, q, k, r, pats, ranks, incumbent, prune, budget)


def _run_max(args):
    backend, weights, wmax, q, k, dim, add, mul, pats, ranks, best_init, prune, budget = args
    if backend == "cython":
        P = np.array(pats, dtype=np.int64).reshape(len(pats), dim)
        return _compiled.max_weight(weights, wmax, q, k, dim,
                                    np.array(add, dtype=np.int64).ravel(), np.array(mul, dtype=np.int64).ravel(),
                                    P, np.array(ranks, dtype=np.int64), best_init, prune, budget)
    return _kernels_py.max_weight(weights, wmax, q, k, dim, add, mul, pats, ranks, best_init, prune, budget)


def _dispatch(fn, tasks, workers):
    if workers <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, tasks))


def min_support_search(words: np.ndarray, q: int, k: int, r: int, config: SearchConfig = DEFAULT_CONFIG) -> SearchResult:
    """Smallest support over r-dim subspaces of the message space.

    ``words`` is the packed support array from :func:`pack_supports`.
    """
    backend = config.resolved_backend
    check_subspace_budget(k, r, q, config)
    if r == 0:
        return SearchResult(0, (), q, k, 1, 0, backend)
    masks = words if backend == "cython" else masks_as_ints(words)
    n_bits = words.shape[1] * 64
    tasks = [(backend, masks, q, k, r, pats, ranks, n_bits + 1, config.prune, config.budget_subspaces)
             for pats, ranks in _chunks(k, r, config.workers)]
    results = _dispatch(_run_min, tasks, config.workers)
    leaves = sum(res[3] for res in results)
    nodes = sum(res[4] for res in results)
    if any(res[5] for res in results) or leaves > config.budget_subspaces:
        raise SearchBudgetExceeded(f"search visited more than {config.budget_subspaces} subspaces",
                                   leaves, config.budget_subspaces)
    best = min((res for res in results if res[1] is not None), key=lambda res: (res[0], res[2]))
    return SearchResult(int(best[0]), tuple(int(x) for x in best[1]), q, k, leaves, nodes, backend)


def max_weight_search(weights: np.ndarray, F: FieldSpec, k: int, dim: int,
                      config: SearchConfig = DEFAULT_CONFIG) -> SearchResult:
    """Largest total weight of normalized vectors over dim-subspaces of F_q^k.

    Weights should sit on normalized vectors (first nonzero coordinate 1);
    other entries are never read.
    """
    backend = config.resolved_backend
    q = F.q
    check_subspace_budget(k, dim, q, config)
    if dim == 0:
        return SearchResult(0, (), q, k, 1, 0, backend)
    w = np.ascontiguousarray(weights, dtype=np.int64)
    wmax = int(w.max()) if w.size else 0
    wts = w if backend == "cython" else w.tolist()
    tasks = [(backend, wts, wmax, q, k, dim, F.add_table, F.mul_table, pats, ranks, -1,
              config.prune, config.budget_subspaces)
             for pats, ranks in _chunks(k, dim, config.workers)]
    results = _dispatch(_run_max, tasks, config.workers)
    leaves = sum(res[3] for res in results)
    nodes = sum(res[4] for res in results)
    if any(res[5] for res in results) or leaves > config.budget_subspaces:
        raise SearchBudgetExceeded(f"search visited more than {config.budget_subspaces} subspaces",
                                   leaves, config.budget_subspaces)
    best = min((res for res in results if res[1] is not None), key=lambda res: (-res[0], res[2]))
    return SearchResult(int(best[0]), tuple(int(x) for x in best[1]), q, k, leaves, nodes, backend)


def normalized_indices(q: int, k: int) -> np.ndarray:
    """Boolean array over F_q^k marking vectors whose first nonzero coordinate is 1."""
    idx = np.arange(q ** k, dtype=np.int64)
    lead = np.zeros(q ** k, dtype=np.int64)
    found = np.zeros(q ** k, dtype=bool)
    rest = idx.copy()
    for _ in range(k):
        d = rest % q
        take = (~found) & (d != 0)
        lead[take] = d[take]
        found |= take
        rest //= q
    return lead == 1
