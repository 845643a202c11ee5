"""Linear [n, k]_q codes: supports, spectra and generalized Hamming weights.

Subcodes are enumerated as RREF bases of subspaces of the message space
F_q^k, so the codeword of message index ``i`` (``i = sum x_c q^c``) is the
row ``i`` of the codeword table.  Searches run in :mod:`grasswt.search`.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import ceil
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import BudgetExceeded, DependentBasis, InvalidDelta, NotInCode
from .gf import FieldSpec, field_from_q
from .linalg import Vector, index_of, mat_vec_left, normalize, rank, rref
from .search import (
    DEFAULT_CONFIG,
    SearchConfig,
    SearchResult,
    max_weight_search,
    message_codewords,
    min_support_search,
    normalized_indices,
    pack_supports,
)


@dataclass(frozen=True)
class Codeword:
    coords: Vector
    support_mask: int

    @classmethod
    def from_coords(cls, coords: Sequence[int]) -> "Codeword":
        coords = tuple(int(c) for c in coords)
        mask = 0
        for i, c in enumerate(coords):
            if c:
                mask |= 1 << i
        return cls(coords, mask)

    @property
    def norm(self) -> int:
        return self.support_mask.bit_count()

    @property
    def support(self) -> list[int]:
        return [i for i, c in enumerate(self.coords) if c]

    def __len__(self) -> int:
        return len(self.coords)


class LinearCode:
    """Code spanned by the rows of a full-row-rank k x n generator matrix."""

    def __init__(self, generator: Sequence[Sequence[int]], field: FieldSpec):
        rows = tuple(tuple(int(a) for a in row) for row in generator)
        if not rows:
            raise ValueError("generator needs at least one row")
        n = len(rows[0])
        if any(len(r) != n for r in rows):
            raise ValueError("generator rows differ in length")
        if any(not 0 <= a < field.q for r in rows for a in r):
            raise ValueError(f"entries must be field codes in [0, {field.q})")
        if rank(rows, field) != len(rows):
            raise DependentBasis("generator rows are linearly dependent")
        self.field = field
        self.generator = rows
        self._cache: dict = {}

    @property
    def n(self) -> int:
        return len(self.generator[0])

    @property
    def k(self) -> int:
        return len(self.generator)

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def nondegenerate(self) -> bool:
        return all(any(row[i] for row in self.generator) for i in range(self.n))

    def __repr__(self) -> str:
        return f"LinearCode([{self.n},{self.k}]_{self.q})"

    def encode(self, message: Sequence[int]) -> Codeword:
        return Codeword.from_coords(mat_vec_left(message, self.generator, self.field))

    def _solver(self):
        if "solver" not in self._cache:
            F, k, n = self.field, self.k, self.n
            aug = [row + tuple(int(i == j) for j in range(k)) for i, row in enumerate(self.generator)]
            R, piv = rref(aug, F)
            self._cache["solver"] = (R, piv)
        return self._cache["solver"]

    def message_of(self, c: Codeword | Sequence[int]) -> Vector:
        """The message x with xG = c."""
        coords = c.coords if isinstance(c, Codeword) else tuple(c)
        if len(coords) != self.n:
            raise NotInCode(f"word of length {len(coords)} for a code of length {self.n}")
        F, n, k = self.field, self.n, self.k
        R, piv = self._solver()
        x = [0] * k
        for row, p in zip(R, piv):
            a = coords[p]
            if a:
                mr = F.mul_table[a]
                x = [F.add_table[xi][mr[t]] for xi, t in zip(x, row[n:])]
        if mat_vec_left(x, self.generator, F) != coords:
            raise NotInCode("word is not a codeword")
        return tuple(x)

    def codeword_table(self, config: SearchConfig = DEFAULT_CONFIG) -> np.ndarray:
        if "table" not in self._cache:
            self._cache["table"] = message_codewords(self.generator, self.field, config)
        return self._cache["table"]

    def support_words(self, config: SearchConfig = DEFAULT_CONFIG) -> np.ndarray:
        if "words" not in self._cache:
            self._cache["words"] = pack_supports(self.codeword_table(config))
        return self._cache["words"]

    def weights(self, config: SearchConfig = DEFAULT_CONFIG) -> np.ndarray:
        if "weights" not in self._cache:
            self._cache["weights"] = np.count_nonzero(self.codeword_table(config), axis=1)
        return self._cache["weights"]

    def codewords(self, config: SearchConfig = DEFAULT_CONFIG) -> Iterable[Codeword]:
        for row in self.codeword_table(config):
            yield Codeword.from_coords(row.tolist())

    def save(self, path: str | Path) -> None:
        Path(path).write_text(dump_generator(self))

    @classmethod
    def load(cls, path: str | Path) -> "LinearCode":
        return parse_generator(Path(path).read_text())


def dump_generator(C: LinearCode) -> str:
    F = C.field
    lines = [f"{C.n} {C.k} {C.q}"]
    lines += [" ".join(F.format(a) for a in row) for row in C.generator]
    return "\n".join(lines) + "\n"


def parse_generator(text: str) -> LinearCode:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty generator file")
    try:
        n, k, q = (int(t) for t in lines[0].split())
    except ValueError as exc:
        raise ValueError(f"bad header {lines[0]!r}; expected 'n k q'") from exc
    F = field_from_q(q)
    if len(lines) - 1 != k:
        raise ValueError(f"header says k={k} but found {len(lines) - 1} rows")
    rows = []
    for ln in lines[1:]:
        toks = ln.split()
        if len(toks) != n:
            raise ValueError(f"row has {len(toks)} entries, expected {n}")
        rows.append([F.parse(t) for t in toks])
    return LinearCode(rows, F)


def subcode_norm(basis: Sequence[Codeword | Sequence[int]], F: FieldSpec | None = None) -> int:
    """Size of the union of the supports of independent codewords."""
    words = [b if isinstance(b, Codeword) else Codeword.from_coords(b) for b in basis]
    if not words:
        return 0
    if F is not None and rank([w.coords for w in words], F) != len(words):
        raise DependentBasis("subcode basis is linearly dependent")
    mask = 0
    for w in words:
        mask |= w.support_mask
    return mask.bit_count()


def weight_distribution(C: LinearCode, config: SearchConfig = DEFAULT_CONFIG) -> dict[int, int]:
    w, counts = np.unique(C.weights(config), return_counts=True)
    return {int(a): int(b) for a, b in zip(w, counts)}


def min_distance(C: LinearCode, config: SearchConfig = DEFAULT_CONFIG) -> int:
    nz = [w for w in weight_distribution(C, config) if w > 0]
    return min(nz)


def e_value(C: LinearCode, config: SearchConfig = DEFAULT_CONFIG) -> int:
    """Second-smallest nonzero weight, or d(C) for a one-weight code."""
    nz = sorted(w for w in weight_distribution(C, config) if w > 0)
    return nz[1] if len(nz) > 1 else nz[0]


def _witness(C: LinearCode, res: SearchResult) -> list[Codeword]:
    return [C.encode(v) for v in res.vectors]


def higher_weight_search(C: LinearCode, r: int, config: SearchConfig = DEFAULT_CONFIG) -> SearchResult:
    if not 0 <= r <= C.k:
        raise ValueError(f"need 0 <= r <= k={C.k}, got {r}")
    return min_support_search(C.support_words(config), C.q, C.k, r, config)


def higher_weight(C: LinearCode, r: int, config: SearchConfig = DEFAULT_CONFIG) -> tuple[int, list[Codeword]]:
    """d_r(C) with one r-dim subcode basis attaining it."""
    res = higher_weight_search(C, r, config)
    return res.value, _witness(C, res)


def delta_r_search(C: LinearCode, r: int, config: SearchConfig = DEFAULT_CONFIG) -> SearchResult:
    if not 1 <= r <= C.k:
        raise ValueError(f"need 1 <= r <= k={C.k}, got {r}")
    wts = C.weights(config)
    d = min_distance(C, config)
    marks = ((wts == d) & normalized_indices(C.q, C.k)).astype(np.int64)
    return max_weight_search(marks, C.field, C.k, r, config)


def delta_r(C: LinearCode, r: int, config: SearchConfig = DEFAULT_CONFIG) -> int:
    """Largest number of minimum-weight words in an r-dim subcode."""
    return delta_r_search(C, r, config).value * (C.q - 1)


def column_weights(C: LinearCode) -> np.ndarray:
    """Multiplicity of every projective point of F_q^k among the columns."""
    F = C.field
    out = np.zeros(C.q ** C.k, dtype=np.int64)
    for col in zip(*C.generator):
        if any(col):
            out[index_of(normalize(col, F), C.q)] += 1
    return out


def higher_weight_dual_search(C: LinearCode, r: int, config: SearchConfig = DEFAULT_CONFIG) -> SearchResult:
    """Most columns inside a codimension-r subspace of F_q^k; d_r = n - value."""
    if not 0 <= r <= C.k:
        raise ValueError(f"need 0 <= r <= k={C.k}, got {r}")
    res = max_weight_search(column_weights(C), C.field, C.k, C.k - r, config)
    # zero columns lie in every subspace
    zeros = sum(1 for col in zip(*C.generator) if not any(col))
    return replace(res, value=res.value + zeros) if zeros else res


def griesmer_wei_bound(d: int, q: int, r: int) -> int:
    if d < 1 or r < 1:
        raise ValueError("need d >= 1 and r >= 1")
    return sum(-(-d // q ** j) for j in range(r))


def generalized_bound(d: int, e: int, delta: int, q: int, r: int) -> Fraction:
    """(d*delta + e*(q^r - 1 - delta)) / (q^r - q^(r-1)), exactly."""
    if r < 1:
        raise ValueError("need r >= 1")
    if e < d:
        raise InvalidDelta(f"e={e} is smaller than d={d}")
    if not 0 <= delta <= q ** r - 1:
        raise InvalidDelta(f"delta={delta} outside [0, {q ** r - 1}]")
    return Fraction(d * delta + e * (q ** r - 1 - delta), q ** r - q ** (r - 1))


@dataclass
class WeightReport:
    n: int
    k: int
    q: int
    hierarchy: dict[int, int] = field(default_factory=dict)
    spectrum: dict[int, int] = field(default_factory=dict)
    delta_r: dict[int, int] = field(default_factory=dict)
    e_value: int | None = None
    min_distance: int | None = None
    witnesses: dict[int, list[Codeword]] = field(default_factory=dict)
    skipped: dict[int, str] = field(default_factory=dict)

    @property
    def partial(self) -> bool:
        return bool(self.skipped)

    def bounds(self) -> dict[int, dict]:
        out = {}
        d, e = self.min_distance, self.e_value
        if d is None:
            return out
        for r in sorted(self.hierarchy):
            if r == 0:
                continue
            row = {"griesmer_wei": griesmer_wei_bound(d, self.q, r)}
            if r in self.delta_r and e is not None:
                g = generalized_bound(d, e, self.delta_r[r], self.q, r)
                row["generalized"] = str(g)
                row["generalized_ceil"] = ceil(g)
            out[r] = row
        return out

    def to_json(self) -> dict:
        hier = {0: 0, **self.hierarchy}
        return {
            "n": self.n, "k": self.k, "q": self.q,
            "hierarchy": {str(r): hier[r] for r in sorted(hier)},
            "spectrum": {str(w): c for w, c in sorted(self.spectrum.items())},
            "min_distance": self.min_distance,
            "e_value": self.e_value,
            "delta_r": {str(r): v for r, v in sorted(self.delta_r.items())},
            "bounds": {str(r): b for r, b in self.bounds().items()},
            "witnesses": {str(r): [list(c.coords) for c in ws] for r, ws in sorted(self.witnesses.items())},
            "skipped": {str(r): why for r, why in sorted(self.skipped.items())},
            "partial": self.partial,
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["r", "d_r", "delta_r", "griesmer_wei", "generalized_ceil", "status"])
        bounds = self.bounds()
        for r in sorted({0, *self.hierarchy, *self.skipped}):
            if r in self.skipped:
                w.writerow([r, "", "", "", "", "SKIPPED"])
                continue
            b = bounds.get(r, {})
            w.writerow([r, 0 if r == 0 else self.hierarchy[r], self.delta_r.get(r, ""),
                        b.get("griesmer_wei", ""), b.get("generalized_ceil", ""), "OK"])
        return buf.getvalue()

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def weight_report(C: LinearCode, rs: Iterable[int] | None = None, *, deltas: Iterable[int] = (),
                  config: SearchConfig = DEFAULT_CONFIG) -> WeightReport:
    """Spectrum, hierarchy entries and Delta_r values, skipping over-budget searches."""
    rep = WeightReport(C.n, C.k, C.q)
    rep.spectrum = weight_distribution(C, config)
    rep.min_distance = min_distance(C, config)
    rep.e_value = e_value(C, config)
    for r in (range(1, C.k + 1) if rs is None else rs):
        try:
            rep.hierarchy[r], rep.witnesses[r] = higher_weight(C, r, config)
        except BudgetExceeded as exc:
            rep.skipped[r] = str(exc)
    for r in deltas:
        try:
            rep.delta_r[r] = delta_r(C, r, config)
        except BudgetExceeded as exc:
            rep.skipped.setdefault(r, str(exc))
    return rep
