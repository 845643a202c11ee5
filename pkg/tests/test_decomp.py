import random
from itertools import product
from math import comb

import pytest

from grasswt.decomp import (
    CloseKind,
    build_extremal_subspace,
    classify,
    count_decomposable_in,
    decomposable_subspaces,
    max_decomposable_dim,
    make_close_type1,
    make_close_type2,
    v_sub,
    v_sup,
)
from grasswt.errors import AmbientTooSmall, DependentInput, EnumerationBudgetExceeded, NotDecomposableBasis, RankOverflow
from grasswt.extalg import ExteriorVector, as_exterior, exterior_subspace, is_decomposable, rank2form, wedge_vectors
from grasswt.gf import field_from_q
from grasswt.linalg import Subspace, enumerate_rref, normalize, rank


def e(m, i):
    return tuple(int(j == i - 1) for j in range(m))


def E(F, m, *alphas):
    return exterior_subspace([ExteriorVector.basis(F, m, a) for a in alphas])


def _independent(rng, F, m, count):
    while True:
        vs = [tuple(rng.randrange(F.q) for _ in range(m)) for _ in range(count)]
        if rank(vs, F) == count:
            return vs


def _pure_set(F, ell, m):
    out = set()
    for tup in product(product(range(F.q), repeat=m), repeat=ell):
        w = wedge_vectors(F, list(tup), m)
        if not w.is_zero():
            out.add(w.coords)
    return out


def _all_pure(E, pure):
    return all(c in pure for c in E.elements() if any(c))


def _count_pure(E, pure):
    return sum(1 for c in E.elements() if c in pure)


def test_max_decomposable_dim():
    assert max_decomposable_dim(2, 5) == 4
    assert max_decomposable_dim(2, 6) == 5
    assert max_decomposable_dim(1, 3) == 3
    assert max_decomposable_dim(2, 4) == 3
    with pytest.raises(ValueError):
        max_decomposable_dim(5, 3)


def test_v_sub_v_sup_examples():
    F = field_from_q(2)
    m = 4
    t1 = E(F, m, (1, 2), (1, 3))
    assert v_sub(t1) == Subspace.span([e(m, 1)], F, m)
    assert v_sup(t1) == Subspace.span([e(m, 1), e(m, 2), e(m, 3)], F, m)
    t2 = E(F, m, (2, 3), (1, 3), (1, 2))
    assert v_sub(t2).dim == 0
    assert v_sup(t2) == Subspace.span([e(m, 1), e(m, 2), e(m, 3)], F, m)
    one = E(F, m, (2, 4))
    assert v_sub(one) == v_sup(one) == Subspace.span([e(m, 2), e(m, 4)], F, m)
    with pytest.raises(NotDecomposableBasis):
        v_sub(exterior_subspace([ExteriorVector.basis(F, m, (1, 2)) + ExteriorVector.basis(F, m, (3, 4))]))


@pytest.mark.parametrize("q", [2, 3])
def test_annihilator_dims_of_close_spaces(q, rng):
    F = field_from_q(q)
    for m in range(3, 7):
        for ell in range(2, m):
            for r in range(1, m - ell + 2):
                vs = _independent(rng, F, m, ell - 1 + r)
                T = make_close_type1(vs[:ell - 1], vs[ell - 1:], F)
                assert T.dim == r
                assert v_sub(T).dim == (ell if r == 1 else ell - 1)
                assert v_sup(T).dim == ell + r - 1
            for r in range(2, ell + 2):
                vs = _independent(rng, F, m, ell + 1)
                T = make_close_type2(vs[:ell - r + 1], vs[ell - r + 1:], F, ell)
                assert T.dim == r
                assert v_sub(T).dim == ell - r + 1
                assert v_sup(T).dim == ell + 1


def test_constructor_examples():
    F = field_from_q(3)
    m = 4
    T = make_close_type1([e(m, 1)], [e(m, 2), e(m, 3), e(m, 4)], F)
    assert T == E(F, m, (1, 2), (1, 3), (1, 4))
    assert make_close_type1([e(5, 1)], [e(5, i) for i in range(2, 6)], F).dim == 4
    assert make_close_type1([e(m, 1)], [e(m, 2)], F) == make_close_type2([e(m, 1), e(m, 2)], [e(m, 3)], F, 2)
    T2 = make_close_type2([], [e(m, 1), e(m, 2), e(m, 3)], F)
    assert T2 == E(F, m, (2, 3), (1, 3), (1, 2))
    # a 2-dim type II space is also type I
    assert make_close_type2([e(m, 1)], [e(m, 2), e(m, 3)], F) == make_close_type1([e(m, 1)], [e(m, 3), e(m, 2)], F)
    assert make_close_type2([], [e(5, i) for i in range(1, 5)], F, 3).dim == 4
    with pytest.raises(DependentInput):
        make_close_type1([e(m, 1)], [e(m, 1)], F)
    with pytest.raises(DependentInput):
        make_close_type2([], [e(m, 1), e(m, 2), e(m, 2)], F)
    with pytest.raises(RankOverflow):
        make_close_type2([], [e(m, i) for i in range(1, 5)], F, 2)


@pytest.mark.parametrize("q", [2, 3])
def test_classify_round_trip(q, seed):
    rng = random.Random(seed + q)
    F = field_from_q(q)
    for m in range(3, 7):
        for ell in range(1, m):
            for r in range(1, m - ell + 2):
                vs = _independent(rng, F, m, ell - 1 + r)
                T = make_close_type1(vs[:ell - 1], vs[ell - 1:], F)
                w = classify(T)
                assert w.kind is (CloseKind.TYPE_I if r > 2 else CloseKind.AMBIGUOUS)
                f, g = w.vectors_f_or_u, w.vectors_g
                assert rank(f + g, F) == len(f) + len(g) == ell + r - 1
                assert make_close_type1(f, g, F) == T
            for r in range(3, ell + 2):
                vs = _independent(rng, F, m, ell + 1)
                T = make_close_type2(vs[:ell - r + 1], vs[ell - r + 1:], F, ell)
                w = classify(T)
                assert w.kind is CloseKind.TYPE_II
                u, g = w.vectors_f_or_u, w.vectors_g
                assert rank(u + g, F) == ell + 1
                assert make_close_type2(u, g, F, ell) == T


def test_classify_examples():
    F = field_from_q(2)
    assert classify(E(F, 4, (1, 2), (1, 3), (1, 4))).kind is CloseKind.TYPE_I
    assert classify(E(F, 4, (2, 3), (1, 3), (1, 2))).kind is CloseKind.TYPE_II
    for m in (4, 5, 6):
        w = classify(E(F, m, (1, 2), (3, 4)))
        assert w.kind is CloseKind.NOT_DECOMPOSABLE and not w.is_close
        want = ExteriorVector.basis(F, m, (1, 2)) + ExteriorVector.basis(F, m, (3, 4))
        assert w.counterexample == want
        assert w.to_json(F)["kind"] == "NotDecomposable"
    assert classify(E(F, 3, (1, 2, 3))).kind is CloseKind.AMBIGUOUS


def test_exhaustive_classification_wedge2_f2_4():
    F = field_from_q(2)
    ell, m = 2, 4
    k = comb(m, ell)
    pure = _pure_set(F, ell, m)
    close_by_dim = {}
    total = 0
    for r in range(k + 1):
        for rows in enumerate_rref(k, r, F):
            S = Subspace(F, k, tuple(rows), (ell, m))
            w = classify(S)
            assert w.is_close == _all_pure(S, pure)
            assert w.exact
            if w.is_close:
                close_by_dim[r] = close_by_dim.get(r, 0) + 1
            else:
                assert any(w.counterexample.coords) and w.counterexample.coords not in pure
                assert S.contains(w.counterexample.coords)
            total += 1
    assert total == 2825
    assert max(close_by_dim) == max_decomposable_dim(ell, m) == 3
    grown = decomposable_subspaces(ell, m, F)
    assert {d: len(s) for d, s in grown.items()} == {d: c for d, c in close_by_dim.items() if d > 0}


@pytest.mark.parametrize("m", [4, 5])
def test_no_decomposable_space_beyond_mu(m):
    F = field_from_q(2)
    mu = max_decomposable_dim(2, m)
    grown = decomposable_subspaces(2, m, F, max_dim=mu + 1)
    assert grown[mu]
    assert mu + 1 not in grown


def _random_decomposable(rng, F, ell, m):
    if rng.random() < 0.5 or ell + 1 > m:
        r = rng.randrange(1, m - ell + 2)
        vs = _independent(rng, F, m, ell - 1 + r)
        return make_close_type1(vs[:ell - 1], vs[ell - 1:], F)
    r = rng.randrange(2, ell + 2)
    vs = _independent(rng, F, m, ell + 1)
    return make_close_type2(vs[:ell - r + 1], vs[ell - r + 1:], F, ell)


@pytest.mark.parametrize("q,m,ell", [(2, 4, 2), (2, 5, 2), (3, 4, 2), (3, 5, 2), (2, 5, 3), (3, 5, 3)])
def test_extension_bounds(q, m, ell, seed):
    rng = random.Random(seed * 7 + q * 100 + m * 10 + ell)
    F = field_from_q(q)
    k = comb(m, ell)
    checked = 0
    while checked < 60:
        D = _random_decomposable(rng, F, ell, m)
        omega = tuple(rng.randrange(q) for _ in range(k))
        if D.contains(omega):
            continue
        D1 = D + Subspace.span([omega], F, k, (ell, m))
        if classify(D1).is_close:
            continue
        extra = count_decomposable_in(D1) - count_decomposable_in(D)
        assert extra <= q * q * (q - 1)
        if D.dim <= 2:
            assert extra <= q ** (D.dim - 1) * (q - 1)
        checked += 1


def test_extension_bound_equality_when_inside():
    # omega decomposable with annihilator inside the sum of annihilators of E
    F = field_from_q(2)
    m = 5
    T = make_close_type1([e(m, 1)], [e(m, i) for i in range(2, 6)], F)
    D1 = T + E(F, m, (2, 3))
    assert count_decomposable_in(D1) - count_decomposable_in(T) == 4


def test_counts_over_extensions_of_maximal_type1():
    # the maximal decomposable spaces of the degree-2 power of F_2^5 are f^V
    F = field_from_q(2)
    m, mu = 5, 4
    k = comb(m, 2)
    whole = Subspace.whole(F, k, (2, m))
    best = 0
    seen = 0
    for f in Subspace.whole(F, m).elements(normalized=True):
        if not any(f):
            continue
        comp = Subspace.whole(F, m).complement_basis(Subspace.span([f], F, m))
        T = make_close_type1([f], comp, F)
        assert T.dim == mu
        reps = {}
        for c in whole.elements(normalized=True):
            if any(c) and not T.contains(c):
                reps.setdefault((T + Subspace.span([c], F, k, (2, m))).basis, c)
        assert len(reps) == 63
        for c in reps.values():
            D1 = T + Subspace.span([c], F, k, (2, m))
            best = max(best, count_decomposable_in(D1))
            seen += 1
    assert seen == 31 * 63
    assert best == (2 ** mu - 1) + 4 * 1 == 19


def test_count_decomposable_examples():
    F = field_from_q(2)
    assert count_decomposable_in(E(F, 4, (1, 2), (3, 4))) == 2
    T = make_close_type1([e(5, 1)], [e(5, 2), e(5, 3)], F)
    assert count_decomposable_in(T) == 3
    F3 = field_from_q(3)
    T3 = make_close_type2([], [e(4, 1), e(4, 2), e(4, 3)], F3)
    assert count_decomposable_in(T3) == 26
    with pytest.raises(EnumerationBudgetExceeded):
        count_decomposable_in(Subspace.whole(F, 10, (2, 5)), cap=100)


@pytest.mark.parametrize("m,q,want", [(5, 2, 19), (6, 2, 35), (5, 3, 98)])
def test_extremal_subspace(m, q, want):
    F = field_from_q(q)
    mu = max_decomposable_dim(2, m)
    S = build_extremal_subspace(m, q)
    assert S.dim == mu + 1
    assert count_decomposable_in(S) == want == (q ** mu - 1) + q * q * (q - 1)
    # independent count through the brute-force wedge set
    if q ** m <= 64:
        assert _count_pure(S, _pure_set(F, 2, m)) == want
    rank4 = sum(1 for c in S.elements() if any(c) and rank2form(as_exterior(S, c)) == 4)
    assert rank4 == q ** (mu + 1) - 1 - want
    if (m, q) == (5, 2):
        assert rank4 == 12 == (q ** mu - q * q) * (q - 1)


def test_extremal_subspace_too_small():
    with pytest.raises(AmbientTooSmall):
        build_extremal_subspace(4, 2)
