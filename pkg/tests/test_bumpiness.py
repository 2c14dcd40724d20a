import doctest
import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import permword.bumpiness
from permword.bounds import word_lower_bound
from permword.bumpiness import (
    VERY_BUMPY,
    BumpinessParams,
    bumpy_word_lower_bound,
    derivation_chain_bound,
    hard_permutation,
    is_bc_bumpy,
    is_very_bumpy,
    not_bumpy_count_bound,
    threshold_band,
    verify_hard_profile,
)
from permword.core import (
    DomainError,
    Permutation,
    compose,
    cyclic_distance,
    identity,
    make_tau,
)


def test_doctests():
    failures, _ = doctest.testmod(permword.bumpiness)
    assert failures == 0


def test_params_validation():
    BumpinessParams(Fraction(1, 8), Fraction(1, 4))
    BumpinessParams(Fraction(1, 3), Fraction(99, 100))
    with pytest.raises(DomainError):
        BumpinessParams(Fraction(1, 2), Fraction(1, 4))  # b too large
    with pytest.raises(DomainError):
        BumpinessParams(Fraction(0), Fraction(1, 4))  # b must be positive
    with pytest.raises(DomainError):
        BumpinessParams(Fraction(1, 8), Fraction(1, 2))  # c >= 4b
    with pytest.raises(DomainError):
        BumpinessParams(Fraction(1, 8), Fraction(0))


def test_hard_permutation_shapes():
    assert hard_permutation(5).images == (1, 3, 5, 2, 4)
    assert hard_permutation(6).images == (1, 3, 5, 2, 4, 6)
    assert hard_permutation(7).images == (1, 3, 5, 7, 2, 4, 6)
    assert hard_permutation(8).images == (1, 3, 5, 7, 2, 4, 6, 8)


def _brute_counts(p, b):
    n = p.n
    out = []
    for k in range(n):
        count = 0
        for i in range(1, n + 1):
            r = (k + p(i) - i) % n
            if Fraction(min(r, n - r)) >= b * n:
                count += 1
        out.append(count)
    return out


@settings(max_examples=80, deadline=None)
@given(
    st.integers(2, 24).flatmap(lambda n: st.permutations(list(range(1, n + 1)))),
    st.fractions(min_value="1/100", max_value="49/100"),
)
def test_counts_match_brute_force(images, b):
    p = Permutation(tuple(images))
    c = min(4 * b, Fraction(1)) / 2
    report = is_bc_bumpy(p, BumpinessParams(b, c))
    expected = _brute_counts(p, b)
    assert list(report.per_shift_counts) == expected
    assert report.worst_shift == expected.index(min(expected))
    assert report.is_bumpy == (min(expected) >= c * p.n)


def test_threshold_band():
    assert threshold_band(8, Fraction(1, 8)) == (1, 7)
    assert threshold_band(16, Fraction(1, 8)) == (2, 14)
    assert threshold_band(12, Fraction(1, 8)) == (2, 10)  # ceil(12/8) = 2
    assert threshold_band(4, Fraction(49, 100)) == (2, 2)  # only the antipode


def test_identity_and_tau_powers_not_bumpy():
    assert not is_very_bumpy(identity(8))
    tau = make_tau(8)
    p = identity(8)
    for _ in range(8):
        assert not is_very_bumpy(p)
        p = compose(tau, p)


def test_exactly_eight_non_bumpy_at_8():
    non_bumpy = [
        perm
        for perm in itertools.permutations(range(1, 9))
        if not is_very_bumpy(Permutation(perm))
    ]
    assert len(non_bumpy) == 8
    tau = make_tau(8)
    powers = set()
    p = identity(8)
    for _ in range(8):
        powers.add(p.images)
        p = compose(tau, p)
    assert set(non_bumpy) == powers


def test_hard_permutation_bumpy_across_sizes():
    # n = 2 gives the identity, the one small-size exception
    assert not is_very_bumpy(hard_permutation(2))
    for n in range(3, 16):
        assert is_very_bumpy(hard_permutation(n)), n
    for n in range(16, 513, 7):
        assert is_very_bumpy(hard_permutation(n)), n


def test_verify_hard_profile_range():
    for n in range(5, 201):
        assert verify_hard_profile(n), n
    with pytest.raises(DomainError):
        verify_hard_profile(2)


def test_report_json_shape():
    report = is_bc_bumpy(hard_permutation(8))
    doc = report.to_json_dict()
    assert set(doc) == {"n", "b", "c", "counts", "is_bumpy", "worst_shift"}
    assert doc["b"] == "1/8" and doc["c"] == "1/4"
    assert len(doc["counts"]) == 8


def test_bumpy_word_lower_bound():
    assert bumpy_word_lower_bound(hard_permutation(32)) == 29
    assert bumpy_word_lower_bound(hard_permutation(64)) == 125
    # small n clamp at zero
    assert bumpy_word_lower_bound(hard_permutation(3)) == 0
    with pytest.raises(DomainError):
        bumpy_word_lower_bound(identity(8))


def test_chain_bound_never_exceeds_generic_bound():
    for n in range(2, 8):
        for perm in itertools.permutations(range(1, n + 1)):
            p = Permutation(perm)
            if is_very_bumpy(p):
                assert derivation_chain_bound(p) <= word_lower_bound(p), perm


def test_counting_bound_values():
    bound, ratio = not_bumpy_count_bound(8)
    assert bound == 326592
    assert ratio == Fraction(326592, 40320)
    with pytest.raises(DomainError):
        not_bumpy_count_bound(3)


def test_counting_bound_dominates_true_count_at_8():
    # 8 non-bumpy permutations observed, bound must sit above that
    bound, _ = not_bumpy_count_bound(8)
    assert bound >= 8


def test_counting_ratio_decays():
    ratios = [not_bumpy_count_bound(n)[1] for n in range(4000, 8001, 400)]
    assert ratios[0] < 1
    assert all(a > b for a, b in zip(ratios, ratios[1:]))


@given(st.integers(2, 200))
def test_band_definition_matches_distance(n):
    b = Fraction(1, 8)
    lo, hi = threshold_band(n, b)
    for r in range(n):
        in_band = lo <= r <= hi
        assert in_band == (Fraction(cyclic_distance(1, (r % n) + 1, n)) >= b * n)
