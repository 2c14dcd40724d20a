"""Acceptance gate: one test per criterion, each printing its own verdict line.

Run with `pytest -v tests/test_acceptance.py` to get one PASSED/FAILED line
per criterion from pytest itself; each test also prints a PASS line with the
measured numbers so a captured log shows what was checked.
"""

import itertools
import json
import math
import os
import subprocess
import sys
import time
from fractions import Fraction

from permword.bounds import certify, word_lower_bound
from permword.bumpiness import (
    hard_permutation,
    is_very_bumpy,
    not_bumpy_count_bound,
    verify_hard_profile,
)
from permword.core import Permutation, compose, evaluate_word, identity, make_tau
from permword.oracle import unrank
from permword.stats import bumpy_fraction_estimate, exhaustive_bumpy_count
from permword.synthesis import synthesize, transposition_1l_word


def test_criterion_1_sandwich_soundness_exhaustive(tables):
    start = time.monotonic()
    checked = 0
    for n in range(3, 8):
        table = tables(n)
        budget = 3 * (n - 1) ** 2
        for r in range(math.factorial(n)):
            p = unrank(r, n)
            cert = certify(p)
            exact = table.exact_complexity(p)
            assert cert.best_lower_bound() <= exact, (n, p.images)
            assert exact <= cert.upper_len, (n, p.images)
            assert cert.upper_len <= budget, (n, p.images)
            checked += 1
    elapsed = time.monotonic() - start
    assert elapsed < 60.0
    print(
        f"PASS criterion 1: sandwich holds for all {checked} permutations, "
        f"n=3..7, {elapsed:.1f}s"
    )


def test_criterion_2_transposition_word_lengths():
    for n in range(3, 101):
        for l in range(2, n + 1):
            w = transposition_1l_word(n, l)
            expected = min(4 * l - 7, 4 * (n - l) + 3)
            assert len(w) == expected, (n, l)
            assert expected <= 2 * n - 3, (n, l)
            images = list(range(1, n + 1))
            images[0], images[l - 1] = images[l - 1], images[0]
            assert evaluate_word(w, n) == Permutation(tuple(images)), (n, l)
    print(
        "PASS criterion 2: first-column transposition words exact "
        "min{4l-7, 4(n-l)+3} <= 2n-3 for n=3..100"
    )


def test_criterion_3_hard_permutation_bound_dominates_formula():
    for n in range(9, 201):
        lhs = word_lower_bound(hard_permutation(n))
        rhs = math.ceil(Fraction(n * n - 2 * n - 7, 4))
        assert lhs >= rhs, (n, lhs, rhs)
    assert math.ceil(Fraction(11 * 11 - 2 * 11 - 7, 4)) == 23
    print(
        "PASS criterion 3: word_lower_bound(hard) >= ceil((n^2-2n-7)/4) "
        "for n=9..200 (n=11 rhs=23)"
    )


def test_criterion_4_hard_profile_check():
    for n in range(5, 201):
        assert verify_hard_profile(n), n
    print("PASS criterion 4: hard-permutation profile check true for n=5..200")


def test_criterion_5_exact_non_bumpy_census_at_8():
    bumpy = exhaustive_bumpy_count(8)
    assert bumpy == 40312
    non_bumpy = [
        images
        for images in itertools.permutations(range(1, 9))
        if not is_very_bumpy(Permutation(images))
    ]
    assert len(non_bumpy) == 8
    tau = make_tau(8)
    p = identity(8)
    powers = set()
    for _ in range(8):
        powers.add(p.images)
        p = compose(tau, p)
    assert set(non_bumpy) == powers
    print(
        "PASS criterion 5: exactly 8 non-bumpy permutations at n=8 "
        "(the tau powers), 40312 of 40320 bumpy"
    )


def test_criterion_6_bumpy_fraction_trend():
    start = time.monotonic()
    fractions = {}
    for n in (64, 128, 256, 512):
        res = bumpy_fraction_estimate(n, 2000, 7)
        fractions[n] = res.fraction
        assert res.fraction >= Fraction(99, 100), (n, res.fraction)
    res8 = bumpy_fraction_estimate(8, 100_000, 7)
    truth = Fraction(40312, 40320)
    assert res8.ci_low <= truth <= res8.ci_high
    elapsed = time.monotonic() - start
    assert elapsed < 120.0
    print(
        f"PASS criterion 6: fraction >= 0.99 at n=64..512 "
        f"({ {n: str(f) for n, f in fractions.items()} }), n=8 CI contains "
        f"40312/40320, {elapsed:.1f}s"
    )


def test_criterion_7_counting_bound():
    bound, _ = not_bumpy_count_bound(8)
    assert bound == 326592
    ratios = [not_bumpy_count_bound(n)[1] for n in range(4000, 8001, 400)]
    assert ratios[0] < 1
    for a, b in zip(ratios, ratios[1:]):
        assert b < a
    print(
        "PASS criterion 7: bound(8)=326592, ratio < 1 at n=4000 and "
        "decreasing through n=8000"
    )


def test_criterion_8_half_rotation_distance(tables):
    for n in (4, 6, 8, 10):
        table = tables(n)
        tau = make_tau(n)
        p = identity(n)
        for _ in range(n // 2):
            p = compose(tau, p)
        assert table.exact_complexity(p) == n // 2, n
    print("PASS criterion 8: exact_complexity(tau^(n/2)) = n/2 for n=4,6,8,10")


def test_criterion_9_fraction_cli_byte_determinism(tmp_path):
    env = dict(os.environ, PERMWORD_CACHE=str(tmp_path / "cache"))
    argv = [
        sys.executable,
        "-m",
        "permword.cli",
        "fraction",
        "--n",
        "32",
        "--samples",
        "1500",
        "--seed",
        "123",
        "--format",
        "json",
    ]
    first = subprocess.run(argv, capture_output=True, env=env, check=True)
    second = subprocess.run(argv, capture_output=True, env=env, check=True)
    assert first.stdout == second.stdout
    doc = json.loads(first.stdout)
    assert doc["seed"] == 123 and doc["samples"] == 1500
    print("PASS criterion 9: repeated seeded fraction runs byte-identical")
