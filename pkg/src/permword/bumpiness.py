"""Bumpiness diagnostics: displacement mass that survives every rotation.

For a permutation w and shift k, look at the cyclic displacements d(k + w(i), i)
with the shift applied to the image (this orientation is kept verbatim
everywhere).  w is (b,c)-bumpy when for every shift at least c*n indices are
displaced by at least b*n, and "very bumpy" means (b,c) = (1/8, 1/4).  Very
bumpy permutations admit the closed-form complexity lower bound
ceil(n^2/32 - 3); rotations tau^j are the canonical non-bumpy examples, since
the shift k = n - j cancels every displacement.

All thresholds are compared as exact rationals, never floats, so small-n
behavior is deterministic and the non-strict ">=" reads literally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .bounds import _shift_profile_matrix, very_bumpy_lower_bound_formula
from .core import DomainError, Permutation, _check_size, format_permutation


@dataclass(frozen=True)
class BumpinessParams:
    """Thresholds: displacement >= b*n counts, and >= c*n indices must count."""

    b: Fraction
    c: Fraction

    def __post_init__(self) -> None:
        b, c = Fraction(self.b), Fraction(self.c)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        if not 0 < b < Fraction(1, 2):
            raise DomainError(f"b must lie in (0, 1/2), got {b}")
        if not 0 < c < min(4 * b, Fraction(1)):
            raise DomainError(f"c must lie in (0, min(4b, 1)), got {c}")


VERY_BUMPY = BumpinessParams(Fraction(1, 8), Fraction(1, 4))


@dataclass(frozen=True)
class BumpinessReport:
    """Per-shift counts of far-displaced indices for one permutation."""

    n: int
    params: BumpinessParams
    per_shift_counts: tuple[int, ...]
    is_bumpy: bool
    worst_shift: int

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "b": str(self.params.b),
            "c": str(self.params.c),
            "counts": list(self.per_shift_counts),
            "is_bumpy": self.is_bumpy,
            "worst_shift": self.worst_shift,
        }


def hard_permutation(n: int) -> Permutation:
    """The odd-first interleaving permutation: odd images first, then evens.

    >>> hard_permutation(5).images
    (1, 3, 5, 2, 4)
    >>> hard_permutation(6).images
    (1, 3, 5, 2, 4, 6)
    """
    _check_size(n)
    if n % 2 == 1:
        images = tuple((2 * j - 2) % n + 1 for j in range(1, n + 1))
    else:
        half = n // 2
        images = tuple(range(1, n, 2)) + tuple(range(2, n + 1, 2))
        assert len(images) == n and images[half - 1] == n - 1 and images[-1] == n
    return Permutation(images)


def delta_residues(p: Permutation) -> np.ndarray:
    """(p(i) - i) mod n for each i; the only data bumpiness counting needs."""
    n = p.n
    return (np.array(p.images, dtype=np.int64) - np.arange(1, n + 1)) % n


def threshold_band(n: int, b: Fraction) -> tuple[int, int]:
    """Residue band [lo, hi] where the cyclic distance of r reaches b*n.

    d(r) >= b*n holds exactly for residues r with ceil(b*n) <= r <= n - ceil(b*n);
    the band is empty (lo > hi) when b*n exceeds the largest cyclic distance.
    """
    lo = -((-b.numerator * n) // b.denominator)
    return lo, n - lo


def is_bc_bumpy(p: Permutation, params: BumpinessParams = VERY_BUMPY) -> BumpinessReport:
    """Count, for each shift k, the indices displaced by at least b*n."""
    n = p.n
    hist = np.bincount(delta_residues(p), minlength=n)
    lo, hi = threshold_band(n, params.b)
    counts = _kernels.band_shift_counts(hist, lo, hi)
    worst = int(np.argmin(counts))
    bumpy = int(counts[worst]) * params.c.denominator >= params.c.numerator * n
    return BumpinessReport(
        n=n,
        params=params,
        per_shift_counts=tuple(int(c) for c in counts),
        is_bumpy=bool(bumpy),
        worst_shift=worst,
    )


def is_very_bumpy(p: Permutation) -> bool:
    """
    >>> is_very_bumpy(hard_permutation(32))
    True
    >>> is_very_bumpy(Permutation((1, 2, 3, 4, 5, 6, 7, 8)))
    False
    """
    return is_bc_bumpy(p, VERY_BUMPY).is_bumpy


def verify_hard_profile(n: int) -> bool:
    """Check the shifted-profile guarantee of the hard permutation.

    True iff for every shift k the sorted displacements of tau^k after the hard
    permutation satisfy d_(2m-1) >= n/2 - m and d_(2m) >= n/2 - m for all
    1 <= m <= floor(n/2), with n/2 read as an exact rational.
    """
    _check_size(n)
    if n < 3:
        raise DomainError(f"profile check needs n >= 3, got {n}")
    profiles = _shift_profile_matrix(hard_permutation(n))
    ms = np.arange(1, n // 2 + 1, dtype=np.int64)
    need = n - 2 * ms  # 2*(n/2 - m), kept integral
    odd_ok = (2 * profiles[:, 2 * ms - 2] >= need).all()
    even_ok = (2 * profiles[:, 2 * ms - 1] >= need).all()
    return bool(odd_ok and even_ok)


def bumpy_word_lower_bound(p: Permutation) -> int:
    """ceil(n^2/32 - 3), clamped at 0; only valid for very bumpy permutations.

    The generic bounds.word_lower_bound dominates this closed form; this one
    exists because it needs no per-permutation computation beyond the predicate.
    """
    if not is_very_bumpy(p):
        raise DomainError(
            f"permutation {format_permutation(p)} is not very bumpy; "
            "the closed-form bound does not apply"
        )
    return max(0, math.ceil(very_bumpy_lower_bound_formula(p.n)))


def derivation_chain_bound(p: Permutation) -> int:
    """The fixed-window variant behind the closed form, exposed for tests only.

    Uses the swap-count inequality at the single window m = floor(n/8) (instead
    of maximizing over m), then the shift reduction: min over shifts k of the
    window sum, doubled minus one, clamped at 0.  Never exceeds
    bounds.word_lower_bound, which maximizes over windows.
    """
    n = p.n
    m = n // 8
    if m == 0:
        return 0
    profiles = _shift_profile_matrix(p)
    sums = profiles[:, : 2 * m].sum(axis=1) - m * m
    return max(0, 2 * int(sums.min()) - 1)


def not_bumpy_count_bound(n: int) -> tuple[Fraction, Fraction]:
    """Upper bound on how many permutations are NOT very bumpy, with its n! ratio.

    The bound is n * C(n,p) * ((n+4)/4)^p * (n-p)! at p = n - ceil(n/4), evaluated
    in exact big-integer rational arithmetic.  It only bites for large n: the
    ratio drops below 1 around n = 4000 and decreases from there.
    """
    if n < 4:
        raise DomainError(f"counting bound needs n >= 4, got {n}")
    p = n - (-(-n // 4))
    bound = n * math.comb(n, p) * Fraction(n + 4, 4) ** p * math.factorial(n - p)
    ratio = bound / math.factorial(n)
    return Fraction(bound), ratio
