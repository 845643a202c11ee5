import json
import random
from fractions import Fraction
from itertools import product
from math import ceil

import pytest

from grasswt.errors import DependentBasis, InvalidDelta, NotInCode, SearchBudgetExceeded
from grasswt.gf import field_from_q
from grasswt.linalg import enumerate_rref, mat_vec_left, rank, span_elements
from grasswt.lincode import (
    Codeword,
    LinearCode,
    delta_r,
    dump_generator,
    e_value,
    generalized_bound,
    griesmer_wei_bound,
    higher_weight,
    higher_weight_dual_search,
    min_distance,
    parse_generator,
    subcode_norm,
    weight_distribution,
    weight_report,
)
from grasswt.search import SearchConfig


def _random_code(rng, q, k, n, nondegenerate=True):
    F = field_from_q(q)
    while True:
        G = [[rng.randrange(q) for _ in range(n)] for _ in range(k)]
        if rank(G, F) < k:
            continue
        if nondegenerate and not all(any(G[i][j] for i in range(k)) for j in range(n)):
            continue
        return LinearCode(G, F)


def _weight(v):
    return sum(1 for a in v if a)


def _oracle_subcodes(C, r):
    """Every r-dim subcode as the full set of its codewords."""
    F = C.field
    for msgs in enumerate_rref(C.k, r, F):
        yield frozenset(mat_vec_left(x, C.generator, F) for x in span_elements(msgs, F))


def _oracle_dr(C, r):
    best = None
    for words in _oracle_subcodes(C, r):
        supp = {i for w in words for i, a in enumerate(w) if a}
        best = len(supp) if best is None else min(best, len(supp))
    return best


def _oracle_delta(C, r, d):
    return max(sum(1 for w in words if _weight(w) == d) for words in _oracle_subcodes(C, r))


def test_codeword_and_subcode_norm():
    c = Codeword.from_coords((0, 2, 1, 0))
    assert c.support == [1, 2] and c.norm == 2 and len(c) == 4
    assert c.support_mask == 0b110
    a = Codeword.from_coords((1, 1, 1, 0, 0, 0, 0))
    b = Codeword.from_coords((0, 0, 0, 1, 1, 1, 1))
    assert subcode_norm([a]) == 3
    assert subcode_norm([a, b]) == 7
    F = field_from_q(2)
    with pytest.raises(DependentBasis):
        subcode_norm([a, a], F)


@pytest.mark.parametrize("q", [2, 3, 4])
def test_norm_equals_averaged_weight_sum(q, seed):
    rng = random.Random(seed + q)
    done = 0
    while done < 200 // 3 + 1:
        k = rng.randrange(2, 5)
        C = _random_code(rng, q, k, rng.randrange(k, 10), nondegenerate=False)
        r = rng.randrange(1, k + 1)
        msgs = [tuple(rng.randrange(q) for _ in range(k)) for _ in range(r)]
        if rank(msgs, C.field) < r:
            continue
        basis = [C.encode(x) for x in msgs]
        total = sum(_weight(mat_vec_left(x, C.generator, C.field)) for x in span_elements(msgs, C.field))
        den = q ** r - q ** (r - 1)
        assert total % den == 0
        assert subcode_norm(basis, C.field) == total // den
        done += 1


@pytest.mark.parametrize("q,k,n", [(2, 3, 6), (2, 4, 8), (3, 3, 5), (4, 2, 5), (3, 4, 6)])
def test_hierarchy_matches_brute_force(q, k, n, seed):
    rng = random.Random(seed * 3 + q * 10 + k)
    for _ in range(3):
        C = _random_code(rng, q, k, n)
        prev = 0
        for r in range(1, k + 1):
            d, wit = higher_weight(C, r)
            assert d == _oracle_dr(C, r)
            assert subcode_norm(wit, C.field) == d
            assert len(wit) == r
            assert d > prev
            prev = d
            dual = higher_weight_dual_search(C, r)
            assert n - dual.value == d
        assert prev == n
        dist = min_distance(C)
        for r in range(1, k + 1):
            assert delta_r(C, r) == _oracle_delta(C, r, dist)


def test_dual_search_with_zero_and_repeated_columns():
    F = field_from_q(2)
    C = LinearCode([[1, 1, 0, 1, 0], [0, 1, 0, 1, 1]], F)
    for r in (1, 2):
        assert C.n - higher_weight_dual_search(C, r).value == higher_weight(C, r)[0] == _oracle_dr(C, r)


def test_pruned_and_unpruned_agree(seed):
    rng = random.Random(seed)
    off = SearchConfig(prune=False)
    for _ in range(5):
        C = _random_code(rng, 3, 4, 7)
        for r in range(1, 5):
            assert higher_weight(C, r) == higher_weight(C, r, off)
            assert delta_r(C, r) == delta_r(C, r, off)


def test_small_code_examples():
    F = field_from_q(2)
    rep = LinearCode([[1, 1, 1]], F)
    assert weight_distribution(rep) == {0: 1, 3: 1}
    assert min_distance(rep) == e_value(rep) == 3
    simplex = LinearCode([[1, 0, 0, 1, 1, 0, 1], [0, 1, 0, 1, 0, 1, 1], [0, 0, 1, 0, 1, 1, 1]], F)
    assert weight_distribution(simplex) == {0: 1, 4: 7}
    assert min_distance(simplex) == e_value(simplex) == 4
    assert [higher_weight(simplex, r)[0] for r in range(4)] == [0, 4, 6, 7]
    assert delta_r(simplex, 1) == 1
    assert delta_r(simplex, 3) == 2 ** 3 - 1
    F3 = field_from_q(3)
    C3 = LinearCode([[1, 0, 1, 1], [0, 1, 1, 2]], F3)
    assert delta_r(C3, 1) == 2
    assert higher_weight(simplex, 3)[0] == simplex.n


def test_budget_is_enforced():
    F = field_from_q(2)
    simplex = LinearCode([[1, 0, 0, 1, 1, 0, 1], [0, 1, 0, 1, 0, 1, 1], [0, 0, 1, 0, 1, 1, 1]], F)
    with pytest.raises(SearchBudgetExceeded):
        higher_weight(simplex, 1, SearchConfig(budget_subspaces=6))
    assert higher_weight(simplex, 1, SearchConfig(budget_subspaces=7))[0] == 4


def test_griesmer_wei_examples():
    assert griesmer_wei_bound(16, 2, 3) == 28
    assert griesmer_wei_bound(64, 2, 4) == 120
    assert griesmer_wei_bound(17, 3, 1) == 17
    assert griesmer_wei_bound(5, 2, 3) == 5 + 3 + 2
    with pytest.raises(ValueError):
        griesmer_wei_bound(0, 2, 1)


def test_generalized_bound_examples():
    assert generalized_bound(64, 80, 19, 2, 5) == 136
    assert generalized_bound(64, 80, 19, 2, 5) == Fraction(64 * 19 + 80 * 12, 16)
    for d, q, r in [(16, 2, 3), (27, 3, 2), (64, 2, 4)]:
        full = generalized_bound(d, d + 5, q ** r - 1, q, r)
        assert full == Fraction(d * (q ** r - 1), q ** r - q ** (r - 1))
        assert ceil(full) >= griesmer_wei_bound(d, q, r) - r
        for delta in range(q ** r):
            assert generalized_bound(d, d, delta, q, r) == full
    # ceil of the full-delta value is the Griesmer-Wei sum exactly when d is divisible by q^(r-1)
    assert ceil(generalized_bound(16, 20, 7, 2, 3)) == griesmer_wei_bound(16, 2, 3) == 28
    with pytest.raises(InvalidDelta):
        generalized_bound(64, 80, 32, 2, 5)
    with pytest.raises(InvalidDelta):
        generalized_bound(64, 60, 3, 2, 5)
    with pytest.raises(InvalidDelta):
        generalized_bound(64, 80, -1, 2, 5)


@pytest.mark.parametrize("q,k,n", [(2, 3, 7), (2, 4, 9), (3, 3, 6)])
def test_every_hierarchy_entry_respects_both_bounds(q, k, n, seed):
    rng = random.Random(seed + 99 * q + k)
    for _ in range(4):
        C = _random_code(rng, q, k, n)
        d, e = min_distance(C), e_value(C)
        for r in range(1, k + 1):
            dr = higher_weight(C, r)[0]
            assert dr >= ceil(generalized_bound(d, e, delta_r(C, r), q, r))
            assert dr >= griesmer_wei_bound(d, q, r)


def test_generator_file_round_trip(tmp_path, seed):
    rng = random.Random(seed)
    for q in (2, 3, 4, 8):
        C = _random_code(rng, q, 3, 6, nondegenerate=False)
        text = dump_generator(C)
        assert text.splitlines()[0] == f"6 3 {q}"
        D = parse_generator(text)
        assert D.generator == C.generator and D.field == C.field
        path = tmp_path / f"g{q}.txt"
        C.save(path)
        assert LinearCode.load(path).generator == C.generator
    with pytest.raises(ValueError):
        parse_generator("3 2 2\n1 0 1\n")


def test_message_of_and_errors():
    F = field_from_q(3)
    C = LinearCode([[1, 0, 2, 1], [0, 1, 1, 1]], F)
    for x in product(range(3), repeat=2):
        assert C.message_of(C.encode(x)) == x
    with pytest.raises(NotInCode):
        C.message_of((1, 1, 1, 1))
    with pytest.raises(NotInCode):
        C.message_of((1, 1))
    with pytest.raises(DependentBasis):
        LinearCode([[1, 2, 0], [2, 1, 0]], F)
    with pytest.raises(ValueError):
        LinearCode([[1, 3, 0]], F)
    assert not LinearCode([[1, 0, 0], [0, 1, 0]], F).nondegenerate


def test_weight_report_serialization():
    F = field_from_q(2)
    simplex = LinearCode([[1, 0, 0, 1, 1, 0, 1], [0, 1, 0, 1, 0, 1, 1], [0, 0, 1, 0, 1, 1, 1]], F)
    rep = weight_report(simplex, deltas=[1, 2, 3])
    js = json.loads(rep.dumps())
    assert js["hierarchy"] == {"0": 0, "1": 4, "2": 6, "3": 7}
    assert js["spectrum"] == {"0": 1, "4": 7}
    assert js["partial"] is False
    assert js["bounds"]["2"]["griesmer_wei"] == 6
    rows = rep.to_csv().splitlines()
    assert rows[0] == "r,d_r,delta_r,griesmer_wei,generalized_ceil,status"
    assert rows[1] == "0,0,,,,OK"
    assert rows[-1].startswith("3,7,7,7,7")
    small = weight_report(simplex, rs=[1, 3], config=SearchConfig(budget_subspaces=7))
    assert small.hierarchy == {1: 4, 3: 7}
    big = weight_report(simplex, rs=[2], config=SearchConfig(budget_subspaces=5))
    assert big.partial and 2 in big.skipped
    assert big.to_csv().splitlines()[-1] == "2,,,,,SKIPPED"
