import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from heisenberg_solenoid.errors import (IncompatibleOperandsError, InvalidRadixError,
                                        NotCauchyError, NotCoherentError)
from heisenberg_solenoid.rings import (ProductElement, RAdicInt, Residue, coherence_check,
                                       embed_q, first_disagreement, format_fraction,
                                       parse_fraction, radic_abs, radic_add, radic_dist,
                                       radic_from_cauchy, radic_mul, radic_neg, to_radic,
                                       ultrametric_rho, valuation)

from oracles import radic_abs as oracle_abs, trial_division_valuation

radices = st.integers(2, 12)
ints = st.integers(-10 ** 6, 10 ** 6)


# --- absolute value and distance -----------------------------------------

def test_abs_of_zero_is_zero():
    assert radic_abs(0, 5) == 0


@pytest.mark.parametrize("r", [2, 3, 6, 10])
def test_abs_of_radix(r):
    assert radic_abs(r, r) == Fraction(1, r)


def test_abs_12_base_2():
    assert radic_abs(12, 2) == Fraction(1, 4) == oracle_abs(12, 2)


@given(ints, radices)
def test_abs_matches_trial_division(a, r):
    assert radic_abs(a, r) == oracle_abs(a, r)
    assert valuation(a, r) == trial_division_valuation(a, r)


@pytest.mark.parametrize("a,b,r,expected", [
    (7, 7, 3, 0),
    (3, 7, 2, Fraction(1, 4)),
    (0, 9, 3, Fraction(1, 9)),
])
def test_dist_examples(a, b, r, expected):
    assert radic_dist(a, b, r) == expected


@given(ints, ints, ints, radices)
def test_dist_is_ultrametric(a, b, c, r):
    assert radic_dist(a, c, r) <= max(radic_dist(a, b, r), radic_dist(b, c, r))


@given(ints, ints, radices)
def test_abs_submultiplicative_and_symmetric(a, b, r):
    assert radic_abs(a * b, r) <= radic_abs(a, r) * radic_abs(b, r)
    assert radic_dist(a, b, r) == radic_dist(b, a, r)


@given(st.integers(1, 7))
def test_abs_is_multiplicative_for_prime(e):
    # For a prime radix the inequality is an equality.
    assert radic_abs(2 ** e * 3, 2) * radic_abs(6, 2) == radic_abs(2 ** e * 18, 2)


def test_composite_radix_is_only_submultiplicative():
    # |2|_6 = |3|_6 = 1 but |6|_6 = 1/6.
    assert radic_abs(6, 6) < radic_abs(2, 6) * radic_abs(3, 6)


@pytest.mark.parametrize("r", [1, 0, -3])
def test_bad_radix(r):
    with pytest.raises(InvalidRadixError):
        radic_abs(4, r)


# --- the product ring and q ------------------------------------------------

def test_embed_zero():
    assert all(v.value == 0 for v in embed_q(0, 3, 4).residues)


def test_embed_examples():
    assert [v.value for v in embed_q(5, 2, 4).residues] == [1, 1, 5, 5]
    assert [v.modulus for v in embed_q(5, 2, 4).residues] == [2, 4, 8, 16]
    assert [v.value for v in embed_q(-1, 3, 3).residues] == [2, 8, 26]


@given(ints, radices, st.integers(1, 6))
def test_embed_is_coherent(a, r, L):
    assert coherence_check(embed_q(a, r, L))


def test_coherence_counterexample():
    assert not coherence_check(ProductElement(2, [1, 2]))
    assert coherence_check(ProductElement(2, [0, 0, 0]))


@given(ints, ints, radices, st.integers(1, 5))
def test_embed_is_ring_homomorphism(a, b, r, L):
    assert embed_q(a, r, L) + embed_q(b, r, L) == embed_q(a + b, r, L)
    assert embed_q(a, r, L) * embed_q(b, r, L) == embed_q(a * b, r, L)
    assert -embed_q(a, r, L) == embed_q(-a, r, L)


def test_rho_examples():
    x = embed_q(5, 2, 3)
    assert ultrametric_rho(x, x) == 0
    assert ultrametric_rho(embed_q(0, 2, 3), embed_q(1, 2, 3)) == 1
    assert ultrametric_rho(embed_q(0, 2, 3), embed_q(2, 2, 3)) == Fraction(1, 2)
    assert first_disagreement(embed_q(0, 2, 3), embed_q(2, 2, 3)) == 2


@given(ints, ints, st.sampled_from([2, 3, 5, 10]), st.integers(1, 6))
def test_q_is_an_isometry_below_resolution(a, b, r, L):
    if a != b and abs(a - b) >= r ** L:
        b = a + (b % (r ** L - 1)) + 1
    assert ultrametric_rho(embed_q(a, r, L), embed_q(b, r, L)) == radic_dist(a, b, r)


@given(ints, ints, ints, radices, st.integers(1, 5))
def test_rho_is_ultrametric(a, b, c, r, L):
    x, y, z = embed_q(a, r, L), embed_q(b, r, L), embed_q(c, r, L)
    assert ultrametric_rho(x, z) <= max(ultrametric_rho(x, y), ultrametric_rho(y, z))


def test_product_mismatch():
    with pytest.raises(IncompatibleOperandsError):
        embed_q(1, 2, 3) + embed_q(1, 3, 3)
    with pytest.raises(IncompatibleOperandsError):
        embed_q(1, 2, 3) + embed_q(1, 2, 2)


def test_to_radic_rejects_incoherent():
    with pytest.raises(NotCoherentError):
        to_radic(ProductElement(2, [1, 2]))


@given(ints, radices, st.integers(1, 5))
def test_product_json_round_trip(a, r, L):
    x = embed_q(a, r, L)
    data = json.loads(json.dumps(x.to_json()))
    assert all(isinstance(d["value"], str) for d in data)
    assert ProductElement.from_json(data) == x


# --- RAdicInt ----------------------------------------------------------------

def test_radic_examples():
    assert radic_add(RAdicInt(3, 2, 4), RAdicInt(4, 2, 4)) == RAdicInt(7, 2, 4)
    assert radic_mul(RAdicInt(3, 2, 3), RAdicInt(5, 2, 3)).digit == 7
    assert radic_neg(RAdicInt(1, 2, 3)).digit == 7


def test_radic_precision_is_the_minimum():
    s = RAdicInt(13, 2, 4) + RAdicInt(1, 2, 2)
    assert (s.precision, s.digit) == (2, 2)


@given(ints, ints, st.sampled_from([2, 3]), st.integers(1, 4))
def test_radic_matches_product_levelwise(a, b, r, L):
    x, y = RAdicInt(a, r, L), RAdicInt(b, r, L)
    assert (x + y).to_product() == x.to_product() + y.to_product()
    assert (x * y).to_product() == x.to_product() * y.to_product()
    assert to_radic(x.to_product()) == x


def test_radic_digits():
    assert RAdicInt(11, 2, 5).digits() == [1, 1, 0, 1, 0]
    assert RAdicInt(11, 2, 2).residue(1) == Residue(1, 2)


def test_radic_radix_mismatch():
    with pytest.raises(IncompatibleOperandsError):
        RAdicInt(1, 2, 3) + RAdicInt(1, 3, 3)


def test_cauchy_examples():
    assert radic_from_cauchy([4, 4, 4], 2, 3) == RAdicInt(4, 2, 3)
    assert radic_from_cauchy([1, 3, 11, 11, 11], 2, 3).digit == 3
    with pytest.raises(NotCauchyError):
        radic_from_cauchy([1, 2, 4, 5], 2, 3)


def test_cauchy_partial_sums_of_minus_one():
    # 1 + 2 + 4 + ... converges to -1 in Z_2.
    seq = [2 ** (j + 1) - 1 for j in range(8)]
    assert radic_from_cauchy(seq, 2, 4) == RAdicInt(-1, 2, 4)


# --- Residue -----------------------------------------------------------------

def test_residue_arithmetic():
    a = Residue(5, 7)
    assert a + 4 == Residue(2, 7)
    assert a * a == Residue(4, 7)
    assert -a == Residue(2, 7)
    with pytest.raises(IncompatibleOperandsError):
        a + Residue(1, 6)


@given(st.fractions())
def test_fraction_round_trip(q):
    assert parse_fraction(format_fraction(q)) == q
