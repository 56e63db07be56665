import pytest
from hypothesis import given, strategies as st
from sympy import primerange

from ckde.errors import FieldMismatch, NotPrime, ZeroInverse
from ckde.field import (
    PrimeField,
    QuadExtElement,
    fp2_inv,
    fp2_mul,
    fp2_pow,
    fp_arith,
    fp_inv,
    fp_sqrt,
)

F11 = PrimeField(11)
PRIMES_3MOD4 = [p for p in primerange(3, 1000) if p % 4 == 3]
BIG = PrimeField(2**127 - 1)


def test_arith_examples():
    assert fp_arith(F11(7), F11(8), "add") == F11(4)
    assert fp_arith(F11(5), F11(9), "mul") == F11(1)
    assert fp_arith(F11(3), F11(5), "sub") == F11(9)
    for a in F11.elements():
        assert fp_arith(a, F11.one, "mul") == a


def test_inverse_examples():
    assert fp_inv(F11(5)) == F11(9)
    assert fp_inv(F11(1)) == F11(1)
    with pytest.raises(ZeroInverse):
        fp_inv(F11(0))


def test_sqrt_examples():
    assert fp_sqrt(F11(9)) == F11(3)
    assert fp_sqrt(F11(0)) == F11(0)
    assert fp_sqrt(F11(2)) is None


def test_sqrt_needs_3_mod_4():
    with pytest.raises(ValueError):
        PrimeField(13)(4).sqrt()


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        F11(1) + PrimeField(7)(1)
    with pytest.raises(FieldMismatch):
        fp_arith(F11(1), PrimeField(7)(1), "add")


def test_not_prime():
    with pytest.raises(NotPrime):
        PrimeField(15)


def test_canonical_values():
    assert F11(-1).value == 10
    assert F11(123).value == 123 % 11
    assert (F11(3) - F11(5)).value == 9


def test_hex_serialization():
    assert F11(0).hex() == "0"
    assert F11(10).hex() == "a"
    assert PrimeField(65537)(4096).hex() == "1000"
    assert F11.from_hex("a") == F11(10)


@pytest.mark.parametrize("p", PRIMES_3MOD4)
def test_sqrt_of_squares_exhaustive(p):
    F = PrimeField(p)
    squares = {x * x % p for x in range(p)}
    for x in range(p):
        r = F(x * x).sqrt()
        assert r is not None and r.value in (x, (p - x) % p)
        assert r.value <= p - r.value or r.value == 0
    for a in range(p):
        assert (F(a).sqrt() is None) == (a not in squares)


elems = st.integers(min_value=0, max_value=BIG.p - 1).map(BIG)


@given(elems, elems, elems)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a - b == -(b - a)


@given(elems)
def test_inverse_property(a):
    if a.is_zero():
        return
    assert a * a.inverse() == BIG.one


# F_p^2 over p = 2^127 - 1 (which is 3 mod 4)
fp2 = st.tuples(elems, elems).map(lambda t: QuadExtElement(*t))


def test_i_squared():
    i = QuadExtElement.of(F11, 0, 1)
    assert i * i == QuadExtElement.of(F11, -1, 0)
    assert fp2_mul(QuadExtElement.of(F11, 1, 1), QuadExtElement.of(F11, 1, -1)) == QuadExtElement.of(F11, 2, 0)


def test_fp2_inv_zero():
    with pytest.raises(ZeroInverse):
        fp2_inv(QuadExtElement.of(F11))


def test_fp2_group_order_small():
    for re in range(11):
        for im in range(11):
            x = QuadExtElement.of(F11, re, im)
            if x.is_zero():
                continue
            assert fp2_pow(x, 11 * 11 - 1).is_one()
            assert x * fp2_inv(x) == QuadExtElement.of(F11, 1)


@given(fp2, fp2)
def test_norm_multiplicative(a, b):
    assert (a * b).norm() == a.norm() * b.norm()


@given(fp2, st.integers(min_value=0, max_value=400), st.integers(min_value=0, max_value=400))
def test_pow_adds_exponents(a, m, n):
    assert fp2_pow(a, m) * fp2_pow(a, n) == fp2_pow(a, m + n)


@given(fp2)
def test_fp2_group_order(a):
    if a.is_zero():
        return
    assert fp2_pow(a, BIG.p ** 2 - 1).is_one()


def test_fp2_hex():
    assert QuadExtElement.of(F11, 10, 3).hex() == "a+3i"
