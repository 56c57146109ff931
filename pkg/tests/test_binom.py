import itertools
from fractions import Fraction
from math import comb

import pytest
from hypothesis import assume, given, strategies as st

from jarden.arith import DensePoly, poly_eval
from jarden.binom import (
    GenBinomQuery,
    gaussian_binomial,
    genbinom,
    genbinom_limit,
    genbinom_pascal,
    genbinom_quotient,
    integrality_check,
    limit_polynomial,
    pascal_row,
    v_polys,
)
from jarden.errors import DegenerateDenominator
from jarden.sequences import u_term

from root_oracle import jarden_coeffs_from_roots, u_from_roots
from strategies import rationals


def quotient_oracle(p, q, r, k):
    """Product quotient straight from u-terms; only for u_1..u_k != 0."""
    num = den = Fraction(1)
    for j in range(k):
        num *= u_term(p, q, r - j)
        den *= u_term(p, q, j + 1)
    return num / den


def partitions_in_box(m, n):
    """Coefficient list of the Gaussian binomial by counting partitions in an m x n box."""
    counts = [0] * (m * n + 1)
    for parts in itertools.combinations_with_replacement(range(m + 1), n):
        counts[sum(parts)] += 1
    return counts


def test_binomial_with_vanishing_u3():
    q = GenBinomQuery(1, 1, 7, 3)
    assert genbinom_pascal(q) == 2
    assert genbinom_limit(q) == 2
    with pytest.raises(DegenerateDenominator):
        genbinom_quotient(q)


@pytest.mark.parametrize("p,q", [(1, 1), (3, 5), (0, 0), (Fraction(1, 2), -7)])
def test_k_zero_is_one(p, q):
    for r in range(6):
        assert genbinom(p, q, r, 0) == 1
        assert genbinom(p, q, r, 0, "quotient") == 1


def test_fibonomial_values():
    assert quotient_oracle(1, -1, 5, 2) == 15
    assert genbinom(1, -1, 5, 2) == 15
    assert genbinom(1, -1, 5, 2, "limit") == 15
    assert genbinom(1, -1, 5, 2, "quotient") == 15


def test_classical_specialization_value():
    assert genbinom(2, 1, 6, 2) == 15 == comb(6, 2)


def test_middle_coefficient_vanishes():
    assert genbinom(2, 4, 4, 2) == 0
    assert genbinom(2, 4, 4, 2, "limit") == 0


def test_limit_k_equals_r_is_one():
    for r in range(1, 7):
        poly, _ = limit_polynomial(3, 2, r, r)
        assert poly == DensePoly((1,))


def test_out_of_range_is_zero():
    assert genbinom(1, -1, 5, -1) == 0
    assert genbinom(1, -1, 5, 6) == 0


def test_v_polys_recurrence():
    vs = v_polys(Fraction(3), 10)
    z = DensePoly((0, 1))
    assert vs[0].is_zero() and vs[1] == DensePoly((1,))
    for r in range(2, 11):
        assert vs[r] == vs[r - 1] * 3 - z * vs[r - 2]


def test_limit_at_p_zero():
    # every even v_j(z) vanishes when p = 0; the route must still agree
    for r in range(11):
        for k in range(r + 1):
            assert genbinom(0, 3, r, k, "limit") == genbinom(0, 3, r, k)


def test_gaussian_binomial_examples():
    assert gaussian_binomial(1, 2) == DensePoly((1, 1, 1))
    assert gaussian_binomial(0, 5) == DensePoly((1,))
    assert gaussian_binomial(2, 2) == DensePoly((1, 1, 2, 1, 1))


@pytest.mark.parametrize("m,n", [(m, n) for m in range(6) for n in range(6)])
def test_gaussian_binomial_counts_partitions(m, n):
    g = gaussian_binomial(m, n)
    assert [int(c) for c in g.coeffs] == partitions_in_box(m, n)


@pytest.mark.parametrize("t", [Fraction(2), Fraction(-3), Fraction(1, 3)])
def test_gaussian_binomial_matches_product_formula(t):
    for m in range(5):
        for n in range(5):
            num = den = Fraction(1)
            for j in range(1, n + 1):
                num *= 1 - t ** (m + j)
                den *= 1 - t**j
            assert poly_eval(gaussian_binomial(m, n), t) == num / den


def test_integrality_examples():
    rep = integrality_check(1, -1, 12)
    assert rep.all_integral and len(rep.values) == 13
    assert list(rep.values) == [quotient_oracle(1, -1, 12, k) for k in range(13)]
    rep = integrality_check(1, 1, 7)
    assert rep.all_integral and rep.values[3] == 2
    assert integrality_check(0, 5, 6).all_integral


def test_integrality_rejects_rationals():
    with pytest.raises(ValueError):
        integrality_check(Fraction(1, 2), 1, 3)


@given(rationals, rationals, st.integers(0, 8))
def test_route_agreement_nondegenerate(p, q, r):
    assume(all(u_term(p, q, j) != 0 for j in range(1, r + 1)))
    for k in range(r + 1):
        qy = GenBinomQuery(p, q, r, k)
        expected = quotient_oracle(p, q, r, k)
        assert genbinom_pascal(qy) == genbinom_limit(qy) == genbinom_quotient(qy) == expected


@pytest.mark.parametrize("p,q", [(1, 1), (2, 4), (0, 3), (2, 2), (3, 3), (3, 9)])
def test_route_agreement_degenerate(p, q):
    assert any(u_term(p, q, j) == 0 for j in range(1, 11))
    for r in range(11):
        for k in range(r + 1):
            qy = GenBinomQuery(p, q, r, k)
            assert genbinom_pascal(qy) == genbinom_limit(qy)


@given(rationals, rationals, st.integers(0, 12))
def test_symmetry(p, q, r):
    row = pascal_row(p, q, r)
    assert row == row[::-1]


@given(rationals, rationals, st.integers(1, 12))
def test_edge_rows(p, q, r):
    row = pascal_row(p, q, r)
    assert row[0] == row[-1] == 1
    assert row[1] == u_term(p, q, r)


def test_classical_specialization():
    for r in range(21):
        assert list(pascal_row(2, 1, r)) == [comb(r, k) for k in range(r + 1)]


@given(rationals)
def test_q_zero_specialization(p):
    for r in range(13):
        assert list(pascal_row(p, 0, r)) == [p ** (k * (r - k)) for k in range(r + 1)]


@given(st.integers(-10, 10), st.integers(-10, 10), st.integers(0, 12))
def test_integrality_grid(p, q, r):
    assert integrality_check(p, q, r).all_integral


@pytest.mark.parametrize("p,q", [(1, 1), (2, 4), (0, 3), (2, 2), (3, 3), (Fraction(-1, 2), Fraction(7, 3))])
def test_degenerate_values_match_roots(p, q):
    # expanding prod (1 - sigma^i tau^(r-1-i) x) gives (-1)^k q^(k(k-1)/2) (r|k)_u
    for r in range(1, 10):
        coeffs = jarden_coeffs_from_roots(p, q, r - 1)
        for k in range(r + 1):
            scale = (-1) ** k * Fraction(q) ** (k * (k - 1) // 2)
            assert coeffs[k] == scale * genbinom(p, q, r, k)
            assert coeffs[k] == scale * genbinom(p, q, r, k, "limit")


@given(rationals, rationals)
def test_u_terms_match_roots(p, q):
    for r in range(12):
        assert u_term(p, q, r) == u_from_roots(p, q, r)
