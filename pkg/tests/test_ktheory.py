import random

import pytest
from hypothesis import given, settings, strategies as st

from hpgenus.arith import Sign, euler_criterion, legendre
from hpgenus.errors import ConstantTermError, DivisibilityError, EvenPrimeError, MismatchError, ZeroError
from hpgenus.ktheory import (
    CP_FILTRATION_PER_DEGREE,
    X_FILTRATION_PER_DEGREE,
    TruncatedSeries,
    adams_on_CP,
    adams_on_X,
    check_naturality,
    naturality_sides,
    pullback,
    rector_congruence_sign,
)
from oracles import naturality_coefficient_oracle, psi_series

ODD_PRIMES = [3, 5, 7, 11, 13]


def S(coeffs, n, m=None):
    return TruncatedSeries(tuple(coeffs), n, m)


def series(n, m=None, lo=-50, hi=50, constant=True):
    coeff = st.integers(lo, hi)
    return st.lists(coeff, min_size=n, max_size=n).map(
        lambda cs: S(cs if constant else [0] + cs[1:], n, m)
    )


def test_series_normalizes():
    s = S([1, 2], 4)
    assert s.coefficients == (1, 2, 0, 0)
    assert S([1, 2, 3, 4, 5], 3).coefficients == (1, 2, 3)
    assert S([-1, 10], 2, 9).coefficients == (8, 1)


def test_series_examples():
    x2 = TruncatedSeries.gen(2)
    assert (x2 + x2).coefficients == (0, 2)
    assert (x2 * x2).coefficients == (0, 0)
    x3 = TruncatedSeries.gen(3)
    assert ((1 + x3) ** 3).coefficients == (1, 3, 3)


def test_series_mismatch():
    with pytest.raises(MismatchError):
        S([1], 3) + S([1], 4)
    with pytest.raises(MismatchError):
        S([1], 3) * S([1], 3, 5)


def test_series_str():
    assert str(S([0, 1, -2, 3], 4)) == "x - 2x^2 + 3x^3 mod x^4"
    assert str(S([], 2, 9)) == "0 mod x^2, 9"


@settings(max_examples=60)
@given(series(8), series(8), series(8))
def test_ring_laws(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == TruncatedSeries.zero(8)


@settings(max_examples=60)
@given(series(6, 49), series(6, 49), series(6, 49))
def test_ring_laws_mod(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert (a + b) * c == a * c + b * c


@settings(max_examples=40)
@given(series(7), st.integers(0, 6), st.integers(0, 6))
def test_pow_laws(a, i, j):
    assert a ** (i + j) == a**i * a**j


def test_adams_examples():
    x = TruncatedSeries.gen(5)
    s = S([0, 3, -1, 4, 2], 5)
    assert adams_on_CP(1, s) == s
    assert adams_on_CP(2, TruncatedSeries.gen(3)).coefficients == (0, 2, 1)
    x10 = TruncatedSeries.gen(10)
    assert adams_on_CP(6, x10) == adams_on_CP(2, adams_on_CP(3, x10))
    assert adams_on_CP(6, x10).coefficients == tuple(psi_series(6, [0, 1] + [0] * 8, 10))
    with pytest.raises(ConstantTermError):
        adams_on_CP(2, 1 + x)


@settings(max_examples=40)
@given(st.integers(1, 9), series(9, constant=False))
def test_adams_matches_binomial_oracle(r, s):
    assert adams_on_CP(r, s).coefficients == tuple(psi_series(r, list(s.coefficients), 9))


@settings(max_examples=40)
@given(st.integers(1, 7), series(8, constant=False), series(8, constant=False))
def test_adams_is_ring_map(r, a, b):
    assert adams_on_CP(r, a * b) == adams_on_CP(r, a) * adams_on_CP(r, b)
    assert adams_on_CP(r, a + b) == adams_on_CP(r, a) + adams_on_CP(r, b)


def test_adams_composition_law_small():
    x = TruncatedSeries.gen(16)
    psi = {r: adams_on_CP(r, x) for r in range(1, 13)}
    for r in range(1, 13):
        for s in range(1, 13):
            assert adams_on_CP(r, psi[s]) == adams_on_CP(r * s, x)


def test_frobenius_congruence():
    for p in [2, *ODD_PRIMES]:
        for n in range(2, 17):
            lhs = adams_on_CP(p, TruncatedSeries.gen(n, p))
            rhs = TruncatedSeries.gen(n, p) ** p
            assert lhs == rhs, (p, n)


def test_filtration_constants():
    assert CP_FILTRATION_PER_DEGREE == 2 and X_FILTRATION_PER_DEGREE == 4
    for p in ODD_PRIMES:
        # x^(p+2) is the first monomial in filtration >= 2p + 3
        assert CP_FILTRATION_PER_DEGREE * (p + 1) < 2 * p + 3 <= CP_FILTRATION_PER_DEGREE * (p + 2)
        # on the X side y^((p+1)/2) survives and y^p does not
        assert X_FILTRATION_PER_DEGREE * (p + 1) // 2 < 2 * p + 3 <= X_FILTRATION_PER_DEGREE * p


def test_pullback():
    assert pullback(0, {}, 5) == TruncatedSeries.zero(5)
    assert pullback(1, {}, 5).coefficients == (0, 0, 1, 0, 0)
    assert pullback(3, {3: 7}, 6).coefficients == (0, 0, 3, 7, 0, 0)
    assert pullback(-4, {4: 20}, 5, 9).coefficients == (0, 0, 5, 0, 2)
    with pytest.raises(ValueError):
        pullback(1, {2: 1}, 5)
    with pytest.raises(ValueError):
        pullback(1, {}, 2)


def test_adams_on_X_examples():
    img = adams_on_X(3, +1)
    assert img.value.modulus == 9 and img.value.order == 5
    assert img.value.coefficients == (0, 0, 6, 0, 0)
    assert adams_on_X(3, -1).value.coefficients == (0, 0, 3, 0, 0)
    img = adams_on_X(5, +1)
    assert (img.value.modulus, img.value.order) == (25, 7)
    assert img.value.coefficients == (0, 0, 0, 10, 0, 0, 0)
    assert img.exponent == 3
    with pytest.raises(EvenPrimeError):
        adams_on_X(2, +1)


def test_check_naturality_examples():
    assert check_naturality(3, 1, +1, {})
    left, right = naturality_sides(3, 1, +1)
    assert left.coefficients == right.coefficients == (0, 0, 0, 0, 6)
    assert check_naturality(3, 2, -1, {})
    assert not check_naturality(3, 2, +1, {})
    for s in (+1, -1):
        assert check_naturality(5, 2, s, {3: 11, 4: -4}) == check_naturality(5, 2, s, {})


def test_naturality_sides_are_single_monomials():
    rng = random.Random(1)
    for p in ODD_PRIMES:
        for _ in range(10):
            k = rng.choice([k for k in range(-40, 41) if k % p])
            higher = {j: rng.randint(-100, 100) for j in range(3, p + 4)}
            left, right = naturality_sides(p, k, legendre(k, p), higher)
            assert left == right
            assert {j for j, c in enumerate(left.coefficients) if c} <= {p + 1}


def test_naturality_matches_list_oracle():
    rng = random.Random(2)
    for p in ODD_PRIMES:
        for k in [k for k in range(-15, 16) if k % p]:
            higher = {j: rng.randint(-50, 50) for j in range(3, p + 2)}
            for s in (1, -1):
                left, right = naturality_sides(p, k, s, higher)
                assert (left[p + 1], right[p + 1]) == naturality_coefficient_oracle(p, k, s, higher)


def test_naturality_errors():
    with pytest.raises(DivisibilityError):
        check_naturality(3, 6, 1)
    with pytest.raises(ZeroError):
        check_naturality(3, 0, 1)
    with pytest.raises(EvenPrimeError):
        check_naturality(2, 3, 1)


def test_congruence_sign_examples():
    assert rector_congruence_sign(3, 2) is Sign.MINUS
    # 24 s = 12 (mod 9) forces s = -1
    assert (24 * -1 - 12) % 9 == 0 and (24 - 12) % 9 != 0
    for p in ODD_PRIMES:
        assert rector_congruence_sign(p, 1) is Sign.PLUS
    assert rector_congruence_sign(7, 4) == euler_criterion(4, 7) == Sign.PLUS


def test_congruence_three_ways():
    for p in ODD_PRIMES:
        for k in range(-40, 41):
            if k % p:
                assert rector_congruence_sign(p, k) == euler_criterion(k, p) == legendre(k, p)
