"""Certified lower bounds on the word length needed to reach a permutation.

All bounds are measured against words over {sigma, tau, tau^-1} and are sound:
they never exceed the true geodesic length.  Two mechanisms are combined.

* Displacement: a single generator moves every point by at most one step of
  cyclic distance, so any word for p needs at least max_x d(x, p(x)) letters.
* Adjacent-swap counting: if a rotation tau^k of p factors into i adjacent
  swaps (the wrap swap (n 1) included), then i >= sum of the 2m largest
  displacements minus m^2, for every m.  A word of length t for p yields such
  a factorization with t >= 2i - 1 for *some* unknown shift k, so the sound
  certificate takes the minimum of the swap bound over all n shifts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import (
    DomainError,
    InternalCheckError,
    Permutation,
    _check_size,
    cyclic_distance,
    evaluate_word,
    format_permutation,
)
from .synthesis import synthesize


@dataclass(frozen=True)
class DisplacementProfile:
    """Multiset of cyclic displacements d(x, p(x)), sorted non-increasing."""

    n: int
    distances: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.distances) != self.n:
            raise DomainError("profile length must equal n")
        limit = self.n // 2
        prev = limit
        for d in self.distances:
            if not 0 <= d <= limit:
                raise DomainError(f"displacement {d} outside 0..{limit}")
            if d > prev:
                raise DomainError("profile must be non-increasing")
            prev = d


def _shift_profile_matrix(p: Permutation) -> np.ndarray:
    """Row k is the sorted (non-increasing) profile of tau^k after p.

    Entry (k, j) before sorting is d(k + p(i), i) for i = j+1; only the residue
    (k + p(i) - i) mod n matters, so rows are band lookups on one delta vector.
    """
    n = p.n
    delta = (np.array(p.images, dtype=np.int64) - np.arange(1, n + 1)) % n
    r = (np.arange(n, dtype=np.int64)[:, None] + delta[None, :]) % n
    d = np.minimum(r, n - r)
    d.sort(axis=1)
    return d[:, ::-1]


def _swap_bounds_by_shift(profiles: np.ndarray) -> np.ndarray:
    """Adjacent-swap lower bound for each row of a sorted-profile matrix."""
    n = profiles.shape[1]
    cs = np.cumsum(profiles, axis=1)
    ms = np.arange(1, n // 2 + 1, dtype=np.int64)
    vals = cs[:, 2 * ms - 1] - ms * ms
    return np.maximum(vals.max(axis=1), 0)


def displacement_profile(p: Permutation) -> DisplacementProfile:
    """
    >>> displacement_profile(Permutation((1, 3, 5, 2, 4))).distances
    (2, 2, 1, 1, 0)
    """
    ds = sorted(
        (cyclic_distance(x, p(x), p.n) for x in range(1, p.n + 1)), reverse=True
    )
    return DisplacementProfile(p.n, tuple(ds))


def displacement_lower_bound(p: Permutation) -> int:
    """Largest single-point displacement; a sound word-length lower bound."""
    return displacement_profile(p).distances[0]


def adjacent_transposition_lower_bound(p: Permutation) -> int:
    """Least number of adjacent swaps (wrap included) that can factor p.

    Equals max(0, max over m of: sum of the 2m largest displacements - m^2).

    >>> adjacent_transposition_lower_bound(Permutation((3, 4, 1, 2)))
    4
    """
    profile = np.array([displacement_profile(p).distances], dtype=np.int64)
    return int(_swap_bounds_by_shift(profile)[0])


def word_lower_bound(p: Permutation) -> int:
    """Sound lower bound on the length of any word evaluating to p.

    The swap-count argument applies to tau^k of p for a single k that the
    argument does not reveal, so only the minimum over all n shifts is sound;
    taking the maximum here would overshoot the true complexity.
    """
    profiles = _shift_profile_matrix(p)
    shift_min = int(_swap_bounds_by_shift(profiles).min())
    disp = int(profiles[0, 0])
    return max(disp, 2 * shift_min - 1, 0)


def hard_lower_bound_formula(n: int) -> Fraction:
    """(n^2 - 2n - 7)/4: closed-form bound met by hard_permutation(n)."""
    _check_size(n)
    return Fraction(n * n - 2 * n - 7, 4)


def very_bumpy_lower_bound_formula(n: int) -> Fraction:
    """n^2/32 - 3: closed-form bound valid for every very bumpy permutation."""
    _check_size(n)
    return Fraction(n * n, 32) - 3


def upper_bound_formula(n: int) -> int:
    """3(n-1)^2: the synthesis budget, an upper bound on every complexity."""
    _check_size(n)
    return 3 * (n - 1) ** 2


@dataclass(frozen=True)
class BoundsCertificate:
    """Lower and upper bounds bracketing the complexity of one permutation."""

    permutation: Permutation
    displacement_lb: int
    word_lb: int
    upper_len: int
    upper_formula: int
    exact: int | None = None

    @property
    def n(self) -> int:
        return self.permutation.n

    def best_lower_bound(self) -> int:
        return max(self.displacement_lb, self.word_lb)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "displacement_lb": self.displacement_lb,
            "word_lb": self.word_lb,
            "upper_len": self.upper_len,
            "upper_formula": self.upper_formula,
            "exact": self.exact,
            "permutation": format_permutation(self.permutation),
        }


def certify(p: Permutation, with_exact: bool = False, table=None) -> BoundsCertificate:
    """Bracket the complexity of p; optionally include the exact value.

    The synthesized witness is re-evaluated before its length is trusted.
    ``with_exact`` needs a full distance table, so it is subject to the oracle
    size limit; pass a prebuilt ``table`` to reuse one across calls.
    """
    word = synthesize(p)
    if evaluate_word(word, p.n) != p:
        raise InternalCheckError("synthesized word failed re-evaluation")
    exact = None
    if with_exact or table is not None:
        if table is None:
            from .oracle import build_table

            table = build_table(p.n)
        exact = table.exact_complexity(p)
    return BoundsCertificate(
        permutation=p,
        displacement_lb=displacement_lower_bound(p),
        word_lb=word_lower_bound(p),
        upper_len=len(word),
        upper_formula=upper_bound_formula(p.n),
        exact=exact,
    )
