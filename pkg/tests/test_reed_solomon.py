import itertools
import random

import pytest

from flowering.field import PrimeField
from flowering.reed_solomon import (
    DimensionOutOfRangeError,
    DuplicatePointError,
    FieldTooSmallError,
    LengthMismatchError,
    Poly,
    RSCode,
)


@pytest.fixture(scope="module")
def rs_t1():
    return RSCode.with_default_points(PrimeField(5), 3, 2)


def test_rs_new_validation():
    f5 = PrimeField(5)
    code = RSCode(f5, [1, 2, 3], 2)
    assert code.n == 3 and code.k == 2
    with pytest.raises(DuplicatePointError):
        RSCode(f5, [1, 1, 3], 2)
    with pytest.raises(DimensionOutOfRangeError):
        RSCode(f5, [1, 2, 3], 0)
    with pytest.raises(DimensionOutOfRangeError):
        RSCode(f5, [1, 2, 3], 4)
    with pytest.raises(FieldTooSmallError):
        RSCode(PrimeField(3), [0, 1, 2], 2)


def test_interpolate_known_cases(rs_t1):
    # values (2,4,1) at (1,2,3) over F_5 come from P(X) = 2X
    poly = rs_t1.interpolate([2, 4, 1])
    assert poly.coeffs == (0, 2)
    assert rs_t1.evaluate(poly) == [2, 4, 1]

    const = rs_t1.interpolate([4, 4, 4])
    assert const.coeffs == (4,)

    # (1,1,2) needs degree 2: a degree-1 fit through the first two points
    # is the constant 1, which misses the third
    deg2 = rs_t1.interpolate([1, 1, 2])
    assert deg2.degree == 2
    assert rs_t1.evaluate(deg2) == [1, 1, 2]

    with pytest.raises(LengthMismatchError):
        rs_t1.interpolate([1, 2])


def test_is_codeword(rs_t1):
    assert rs_t1.is_codeword([1, 2, 3])  # identity polynomial, degree 1
    assert not rs_t1.is_codeword([1, 1, 2])
    assert rs_t1.is_codeword([0, 0, 0])  # zero polynomial


def test_is_codeword_against_bruteforce_enumeration(rs_t1):
    p, k = 5, 2
    codewords = set()
    for coeffs in itertools.product(range(p), repeat=k):
        poly = Poly.make(rs_t1.field, coeffs)
        codewords.add(tuple(rs_t1.evaluate(poly)))
    rng = random.Random(0)
    for _ in range(100):
        v = [rng.randrange(p) for _ in range(3)]
        assert rs_t1.is_codeword(v) == (tuple(v) in codewords)


def test_interpolation_round_trips():
    field = PrimeField(101)
    code = RSCode.with_default_points(field, 7, 3)
    rng = random.Random(3)
    for _ in range(25):
        values = [field.sample(rng) for _ in range(7)]
        assert code.evaluate(code.interpolate(values)) == values
        poly = Poly.make(field, [field.sample(rng) for _ in range(7)])
        assert code.interpolate(code.evaluate(poly)) == poly


def test_linearity_of_code():
    field = PrimeField(101)
    code = RSCode.with_default_points(field, 7, 3)
    rng = random.Random(4)
    for _ in range(25):
        u = code.random_codeword(rng)
        v = code.random_codeword(rng)
        a, b = field.sample(rng), field.sample(rng)
        combo = [(a * x + b * y) % field.p for x, y in zip(u, v)]
        assert code.is_codeword(combo)


def test_unit_interpolant_t1(rs_t1):
    # constraints L(2) = 1, L(3) = 0 give L = 3 + 4X, and L(1) = 2
    ell = rs_t1.unit_interpolant()
    assert ell.coeffs == (3, 4)
    assert [ell.evaluate(x) for x in rs_t1.points] == [2, 1, 0]


def test_unit_interpolant_edge_dimensions():
    field = PrimeField(11)
    # k = 1: the constraint list is just L(x_n) = 1, so L is the constant 1
    k1 = RSCode.with_default_points(field, 4, 1).unit_interpolant()
    assert k1.coeffs == (1,)
    # k = n: L is the Lagrange basis polynomial of x_1
    code = RSCode.with_default_points(field, 4, 4)
    kn = code.unit_interpolant()
    assert kn.degree == 3
    assert [kn.evaluate(x) for x in code.points] == [1, 0, 0, 0]


def test_parity_rows_match_membership():
    field = PrimeField(101)
    code = RSCode.with_default_points(field, 6, 4)
    rows = code.parity_rows()
    assert len(rows) == 2 and all(len(r) == 6 for r in rows)
    rng = random.Random(5)
    for _ in range(50):
        v = [field.sample(rng) for _ in range(6)]
        syndrome_zero = all(
            sum(c * x for c, x in zip(row, v)) % field.p == 0 for row in rows
        )
        assert syndrome_zero == code.is_codeword(v)
