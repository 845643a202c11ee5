from itertools import product

import pytest

from grasswt import gf
from grasswt.errors import DegreeZero, DivisionByZero, FieldTooLarge, MixedFields, NonPrimeCharacteristic
from grasswt.gf import FieldElement, field_from_q, field_new, parse_field

SMALL_Q = [2, 3, 4, 5, 7, 8, 9]


def _brute_irreducible(poly, p):
    """No factorization into two monic polynomials of positive degree."""
    e = len(poly) - 1

    def mul(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
        return out

    for d in range(1, e):
        for lo_a in product(range(p), repeat=d):
            for lo_b in product(range(p), repeat=e - d):
                if mul(list(lo_a) + [1], list(lo_b) + [1]) == list(poly):
                    return False
    return True


@pytest.mark.parametrize("q", SMALL_Q)
def test_field_axioms_exhaustive(q):
    F = field_from_q(q)
    E = range(q)
    add, mul = F.add, F.mul
    for a, b, c in product(E, E, E):
        assert add(add(a, b), c) == add(a, add(b, c))
        assert mul(mul(a, b), c) == mul(a, mul(b, c))
        assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))
    for a, b in product(E, E):
        assert add(a, b) == add(b, a)
        assert mul(a, b) == mul(b, a)
    for a in E:
        assert add(a, 0) == a and mul(a, 1) == a
        assert add(a, F.neg(a)) == 0
        if a:
            assert mul(a, F.inv(a)) == 1


@pytest.mark.parametrize("q", SMALL_Q)
def test_multiplicative_group_is_cyclic(q):
    F = field_from_q(q)
    orders = [F.multiplicative_order(a) for a in range(1, q)]
    assert max(orders) == q - 1
    assert all((q - 1) % o == 0 for o in orders)


@pytest.mark.parametrize("q", SMALL_Q)
def test_characteristic_and_frobenius(q):
    F = field_from_q(q)
    acc = 0
    for _ in range(F.p):
        acc = F.add(acc, 1)
    assert acc == 0

    def power(a, n):
        out = 1
        for _ in range(n):
            out = F.mul(out, a)
        return out

    for a, b in product(range(q), repeat=2):
        assert power(F.add(a, b), F.p) == F.add(power(a, F.p), power(b, F.p))


@pytest.mark.parametrize("p,e", [(2, 2), (2, 3), (2, 4), (3, 2)])
def test_modulus_is_smallest_irreducible(p, e):
    F = field_new(p, e)
    assert _brute_irreducible(F.modulus, p)
    # every monic polynomial ranked below it is reducible
    rank = sum(c * p ** i for i, c in enumerate(F.modulus[:-1]))
    for code in range(rank):
        low = [(code // p ** i) % p for i in range(e)]
        assert not _brute_irreducible(low + [1], p)


def test_known_moduli():
    assert field_new(2, 2).modulus == (1, 1, 1)
    assert field_new(2, 3).modulus == (1, 1, 0, 1)
    assert field_new(3, 2).modulus == (1, 0, 1)
    assert field_new(2, 4).modulus == (1, 1, 0, 0, 1)


def test_small_examples():
    F2, F3, F4 = field_from_q(2), field_from_q(3), field_from_q(4)
    assert F2.add(1, 1) == 0
    x = F4.code([0, 1])
    assert F4.coeffs(F4.mul(x, x)) == [1, 1]
    assert F3.inv(2) == 2
    assert [int(a) for a in gf.elements(F2)] == [0, 1]
    assert [int(a) for a in gf.elements(F3)] == [0, 1, 2]
    els = gf.elements(F4)
    assert len(els) == 4 and int(els[0]) == 0


def test_element_wrapper():
    F4 = field_from_q(4)
    x = F4([0, 1])
    assert x * x == F4([1, 1])
    assert x + x == F4.zero
    assert (x * x.inverse()) == F4.one
    assert gf.add(x, F4.one) == F4([1, 1])
    assert gf.mul(x, x) == F4([1, 1])
    assert gf.neg(x) == x
    assert gf.inv(F4([1, 1])) == x
    with pytest.raises(DivisionByZero):
        F4.zero.inverse()
    with pytest.raises(MixedFields):
        _ = F4.one + field_from_q(2).one


def test_construction_errors():
    with pytest.raises(NonPrimeCharacteristic):
        field_new(4, 1)
    with pytest.raises(NonPrimeCharacteristic):
        field_from_q(6)
    with pytest.raises(DegreeZero):
        field_new(2, 0)
    with pytest.raises(FieldTooLarge):
        field_from_q(32)
    assert field_from_q(32, max_q=32).q == 32


def test_parse_and_format_round_trip():
    for q in (3, 4, 9):
        F = field_from_q(q)
        for a in range(q):
            assert F.parse(F.format(a)) == a
    assert parse_field("q=4").q == 4
    assert parse_field("2^3").q == 8
    assert parse_field("5").q == 5
    with pytest.raises(ValueError):
        parse_field("four")


def test_elements_distinct_codes():
    F = field_from_q(9)
    coeffs = {tuple(FieldElement(F, c).coeffs) for c in range(9)}
    assert len(coeffs) == 9
