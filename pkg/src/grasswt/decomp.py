"""Decomposable subspaces of exterior powers.

A subspace E of the degree-ell exterior power is decomposable when every
nonzero element is a pure wedge.  Such subspaces are exactly the "close"
ones: type I spans ``f_1^...^f_(ell-1)^g_i`` and type II spans
``u_1^...^u_(ell-r+1)^g_1^..(g_i omitted)..^g_r``.
"""
from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from math import comb
from typing import Sequence

from .errors import (
    AmbientTooSmall,
    DependentInput,
    EnumerationBudgetExceeded,
    NotDecomposableBasis,
    RankOverflow,
)
from .extalg import (
    ExteriorVector,
    annihilator,
    as_exterior,
    exterior_subspace,
    is_decomposable,
    rank2form,
    subspace_vectors,
    wedge_vectors,
)
from .gf import FieldSpec, field_from_q
from .linalg import Subspace, Vector, normalize, rank

DEFAULT_ENUMERATION_CAP = 10 ** 6


class CloseKind(str, enum.Enum):
    TYPE_I = "TypeI"
    TYPE_II = "TypeII"
    AMBIGUOUS = "Ambiguous"
    NOT_DECOMPOSABLE = "NotDecomposable"


@dataclass
class CloseWitness:
    kind: CloseKind
    vectors_f_or_u: list[Vector] = field(default_factory=list)
    vectors_g: list[Vector] = field(default_factory=list)
    counterexample: ExteriorVector | None = None
    exact: bool = True

    @property
    def is_close(self) -> bool:
        return self.kind is not CloseKind.NOT_DECOMPOSABLE

    def to_json(self, F: FieldSpec) -> dict:
        enc = (lambda row: [F.coeffs(c) for c in row]) if F.e > 1 else list
        return {
            "kind": self.kind.value,
            "f_or_u": [enc(v) for v in self.vectors_f_or_u],
            "g": [enc(v) for v in self.vectors_g],
            "counterexample": self.counterexample.to_json() if self.counterexample is not None else None,
            "exact": self.exact,
        }


def max_decomposable_dim(ell: int, m: int) -> int:
    if not 1 <= ell <= m:
        raise ValueError(f"need 1 <= ell <= m, got ell={ell}, m={m}")
    return max(ell, m - ell) + 1


def _decomposable_basis(E: Subspace) -> list[ExteriorVector]:
    vecs = subspace_vectors(E)
    for w in vecs:
        if not is_decomposable(w):
            raise NotDecomposableBasis(f"basis vector {w!r} is not decomposable")
    return vecs


def v_sub(E: Subspace) -> Subspace:
    """Intersection of the annihilators of a decomposable basis of E."""
    ell, m = E.grade
    vecs = _decomposable_basis(E)
    out = Subspace.whole(E.field, m)
    for w in vecs:
        out = out & annihilator(w)
    return out


def v_sup(E: Subspace) -> Subspace:
    """Sum of the annihilators of a decomposable basis of E."""
    ell, m = E.grade
    vecs = _decomposable_basis(E)
    out = Subspace.zero(E.field, m)
    for w in vecs:
        out = out + annihilator(w)
    return out


def _check_independent(vectors: Sequence[Sequence[int]], F: FieldSpec):
    if rank(vectors, F) != len(vectors):
        raise DependentInput("input vectors are linearly dependent")


def make_close_type1(f: Sequence[Sequence[int]], g: Sequence[Sequence[int]], F: FieldSpec) -> Subspace:
    """span{f_1 ^ ... ^ f_(ell-1) ^ g_i}."""
    f, g = [tuple(v) for v in f], [tuple(v) for v in g]
    if not g:
        raise ValueError("need at least one g vector")
    m = len(g[0])
    _check_independent(f + g, F)
    return exterior_subspace([wedge_vectors(F, f + [gi]) for gi in g])


def make_close_type2(u: Sequence[Sequence[int]], g: Sequence[Sequence[int]], F: FieldSpec,
                     ell: int | None = None) -> Subspace:
    """span{u_1 ^ ... ^ u_(ell-r+1) ^ g_1 ^ .. (g_i omitted) .. ^ g_r}."""
    u, g = [tuple(v) for v in u], [tuple(v) for v in g]
    r = len(g)
    if ell is None:
        ell = len(u) + r - 1
    if r > ell + 1:
        raise RankOverflow(f"type II needs r <= ell+1, got r={r}, ell={ell}")
    if len(u) != ell - r + 1:
        raise ValueError(f"type II with ell={ell}, r={r} needs {ell - r + 1} u-vectors")
    _check_independent(u + g, F)
    m = len(g[0])
    return exterior_subspace([wedge_vectors(F, u + g[:i] + g[i + 1:], m) for i in range(r)])


def _respan_type1(f, g, F, ell, m) -> Subspace:
    return exterior_subspace([wedge_vectors(F, list(f) + [gi], m) for gi in g], F, ell, m)


def _respan_type2(u, g, F, ell, m) -> Subspace:
    return exterior_subspace([wedge_vectors(F, list(u) + list(g[:i]) + list(g[i + 1:]), m)
                              for i in range(len(g))], F, ell, m)


def find_nondecomposable(E: Subspace, *, cap: int = DEFAULT_ENUMERATION_CAP,
                         rng: random.Random | None = None, samples: int = 20000) -> tuple[ExteriorVector | None, bool]:
    """First non-decomposable element of E in enumeration order.

    Returns ``(witness or None, exact)``.  When ``q^dim`` exceeds ``cap`` the
    scan falls back to ``samples`` uniform random elements; if a fraction
    ``f`` of E is non-decomposable the miss probability is ``(1-f)^samples``.
    """
    q = E.field.q
    if q ** E.dim <= cap:
        for coords in E.elements(normalized=True):
            w = as_exterior(E, coords)
            if not is_decomposable(w):
                return w, True
        return None, True
    rng = rng or random.Random(0)
    F = E.field
    for _ in range(samples):
        coeffs = [rng.randrange(q) for _ in range(E.dim)]
        if not any(coeffs):
            continue
        acc = [0] * E.ambient_dim
        for c, row in zip(coeffs, E.basis):
            if c:
                mc = F.mul_table[c]
                acc = [F.add_table[a][mc[b]] for a, b in zip(acc, row)]
        w = as_exterior(E, acc)
        if not is_decomposable(w):
            return w, False
    return None, False


def classify(E: Subspace, *, cap: int = DEFAULT_ENUMERATION_CAP, rng: random.Random | None = None) -> CloseWitness:
    """Decide whether E is decomposable and, if so, exhibit it as close."""
    if E.grade is None:
        raise ValueError("classify needs a subspace of an exterior power (grade set)")
    ell, m = E.grade
    F = E.field
    bad, exact = find_nondecomposable(E, cap=cap, rng=rng)
    if bad is not None:
        return CloseWitness(CloseKind.NOT_DECOMPOSABLE, counterexample=bad, exact=exact)
    r = E.dim
    if r == 0:
        return CloseWitness(CloseKind.AMBIGUOUS, exact=exact)
    vecs = subspace_vectors(E)
    anns = [annihilator(w) for w in vecs]
    VE = Subspace.whole(F, m)
    for a in anns:
        VE = VE & a

    def type1() -> CloseWitness:
        if r == 1:
            f, g = list(VE.basis[:-1]), [VE.basis[-1]]
        else:
            f = list(VE.basis)
            g = [a.complement_basis(VE)[0] for a in anns]
        assert _respan_type1(f, g, F, ell, m) == E, "type I witness does not re-span E"
        return CloseWitness(CloseKind.TYPE_I if r > 2 else CloseKind.AMBIGUOUS, f, g, exact=exact)

    if ell == m:
        # the top power is a line; the annihilator criterion does not apply
        return _top_line(E, F, m, exact)
    if r <= 2 or VE.dim == ell - 1:
        return type1()
    if VE.dim == ell - r + 1:
        u = list(VE.basis)
        g = []
        for i in range(r):
            others = Subspace.whole(F, m)
            for j, a in enumerate(anns):
                if j != i:
                    others = others & a
            g.append(others.complement_basis(VE)[0])
        assert _respan_type2(u, g, F, ell, m) == E, "type II witness does not re-span E"
        return CloseWitness(CloseKind.TYPE_II, u, g, exact=exact)
    raise AssertionError(f"decomposable subspace with dim V_E={VE.dim} fits neither close type")


def _top_line(E: Subspace, F: FieldSpec, m: int, exact: bool) -> CloseWitness:
    basis = [tuple(int(i == j) for j in range(m)) for i in range(m)]
    return CloseWitness(CloseKind.AMBIGUOUS, basis[:-1], basis[-1:], exact=exact)


def count_decomposable_in(E: Subspace, *, cap: int = DEFAULT_ENUMERATION_CAP) -> int:
    """Number of nonzero decomposable vectors of E, by full enumeration."""
    ell, m = E.grade
    q = E.field.q
    if q ** E.dim > cap:
        raise EnumerationBudgetExceeded(
            f"enumerating {q}^{E.dim} elements exceeds cap {cap}", q ** E.dim, cap)
    use_rank = m > 2 and (ell == 2 or ell == m - 2)
    count = 0
    for coords in E.elements(normalized=True):
        w = as_exterior(E, coords)
        if (rank2form(w) == 2) if use_rank else is_decomposable(w):
            count += 1
    return count * (q - 1)


def extremal_basis(m: int, F: FieldSpec) -> list[ExteriorVector]:
    """f^g_1, ..., f^g_mu, g_1^g_2 with f = e_1 and g_i = e_(i+1)."""
    mu = max_decomposable_dim(2, m)
    vecs = [ExteriorVector.basis(F, m, (1, i + 1)) for i in range(1, mu + 1)]
    vecs.append(ExteriorVector.basis(F, m, (2, 3)))
    return vecs


def build_extremal_subspace(m: int, q: int | FieldSpec) -> Subspace:
    """(mu+1)-dim subspace of the degree-2 power carrying the most decomposables."""
    if m <= 4:
        raise AmbientTooSmall(f"the extremal construction needs m > 4, got m={m}")
    F = q if isinstance(q, FieldSpec) else field_from_q(q)
    return exterior_subspace(extremal_basis(m, F))


def decomposable_subspaces(ell: int, m: int, F: FieldSpec, max_dim: int | None = None) -> dict[int, set[Subspace]]:
    """Every decomposable subspace, grouped by dimension.

    Built bottom-up: each decomposable subspace of dimension j+1 is a
    decomposable subspace of dimension j plus one decomposable vector, so
    extending every known space by every decomposable vector and keeping the
    decomposable results is complete.  Only feasible for tiny (q, m).
    """
    k = comb(m, ell)
    whole = Subspace.whole(F, k, grade=(ell, m))
    decs = [coords for coords in whole.elements(normalized=True)
            if any(coords) and is_decomposable(as_exterior(whole, coords))]
    dec_set = set(decs)
    out: dict[int, set[Subspace]] = {1: {exterior_subspace([as_exterior(whole, d)]) for d in decs}}
    j = 1
    while out[j] and (max_dim is None or j < max_dim):
        nxt: set[Subspace] = set()
        for E in out[j]:
            for d in decs:
                if E.contains(d):
                    continue
                E1 = E + Subspace.span([d], F, k, (ell, m))
                if E1 in nxt:
                    continue
                if all(normalize(c, F) in dec_set for c in E1.elements(normalized=True)):
                    nxt.add(E1)
        j += 1
        out[j] = nxt
    if not out[j]:
        del out[j]
    return out
