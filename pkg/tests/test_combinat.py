from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, strategies as st

from dormant.combinat import (
    binom_mod,
    digits_base_p,
    leibniz_coeff,
    lucas_binom,
    q_decomp,
    structure_constants,
)

PRIMES = [3, 5, 7]


def test_lucas_examples():
    assert lucas_binom(7, 2, 5) == 1  # 21 mod 5
    assert lucas_binom(4, 0, 3) == 1
    assert lucas_binom(3, 4, 7) == 0


@given(st.integers(0, 400), st.integers(0, 60), st.sampled_from(PRIMES))
def test_lucas_matches_exact(ell, j, p):
    assert lucas_binom(ell, j, p) == comb(ell, j) % p


@given(st.integers(0, 200), st.integers(0, 40), st.sampled_from(PRIMES), st.integers(1, 4))
def test_lucas_digit_periodicity(ell, j, p, k):
    # period p^K once p^K > j
    K = 1
    while p**K <= j:
        K += 1
    assert lucas_binom(ell, j, p) == lucas_binom(ell + p ** (K + k - 1) * p, j, p)


def test_binom_mod_negative():
    # C(-2, 1) = -2 == 1 mod 3, via periodic extension
    assert binom_mod(-2, 1, 3) == 1
    # C(-1, j) = (-1)^j
    for j in range(10):
        assert binom_mod(-1, j, 5) == (-1) ** j % 5


def test_q_decomp_examples():
    assert q_decomp(7, 1, 3) == (2, 1, 2)
    assert q_decomp(9, 2, 3) == (1, 0, 1)
    p, m = 3, 1
    q, r, f = q_decomp(p ** (m + 1), m, p)
    assert (q, r, f) == (p, 0, 0)  # p! vanishes mod p


@given(st.integers(0, 300), st.integers(0, 2), st.sampled_from(PRIMES))
def test_q_decomp_factorial_unit_iff_below_top(j, m, p):
    q, r, f = q_decomp(j, m, p)
    assert j == p**m * q + r and 0 <= r < p**m
    assert (f != 0) == (q < p) == (j < p ** (m + 1))


@pytest.mark.parametrize("p", PRIMES)
@pytest.mark.parametrize("m", [0, 1])
def test_structure_constants_on_monomial_eigenvalues(p, m):
    # The product rule must reproduce eigenvalue products on the trivial
    # local structure: q_{j1}!C(l,j1) * q_{j2}!C(l,j2) = sum c_j q_j!C(l,j).
    top = p ** (m + 1)
    pm = p**m
    for j1 in range(top + 1):
        for j2 in range(top + 1 - j1):
            cs = dict(structure_constants(j1, j2, m, p))
            for ell in range(0, 2 * top, max(1, top // 4)):
                lhs = (
                    factorial(j1 // pm)
                    * comb(ell, j1)
                    * factorial(j2 // pm)
                    * comb(ell, j2)
                )
                rhs = sum(
                    c * (factorial(j // pm) % p) * comb(ell, j) for j, c in cs.items()
                )
                assert (lhs - rhs) % p == 0


def test_structure_constants_worked_cases():
    assert dict(structure_constants(1, 1, 0, 3)) == {1: 1, 2: 1}
    assert dict(structure_constants(1, 3, 1, 3)) == {4: 1}
    assert dict(structure_constants(j1=5, j2=0, m=1, p=3)) == {5: 1}


@given(
    st.sampled_from(PRIMES),
    st.integers(0, 2),
    st.integers(0, 120),
    st.integers(0, 120),
)
def test_leibniz_coeff_is_p_integral_ratio(p, m, j1, j2):
    j = j1 + j2
    pm = p**m
    c = Fraction(factorial(j // pm), factorial(j1 // pm) * factorial(j2 // pm))
    assert c.denominator % p != 0
    assert leibniz_coeff(j, j1, m, p) == c.numerator * pow(c.denominator, -1, p) % p


def test_digits_base_p():
    assert digits_base_p(17, 3, 3) == [2, 2, 1]
    assert digits_base_p(0, 5, 2) == [0, 0]
