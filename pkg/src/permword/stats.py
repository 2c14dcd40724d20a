"""Sampling experiments: bumpy fractions with exact confidence intervals.

Randomness is counter-based: sample i of a run seeded with s draws from
Philox(key=s, counter=[0,0,0,i]), so each sample is its own reproducible
stream and results do not depend on evaluation order or batch size.

Confidence intervals are Wilson score intervals computed in exact rational
arithmetic with z = 49/25 (slightly above the usual 1.96), and the square
root is rounded outward, so the reported interval is conservative and the
arithmetic is reproducible across platforms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .bounds import certify, word_lower_bound
from .bumpiness import VERY_BUMPY, BumpinessParams, threshold_band
from .core import CapabilityError, DomainError, Permutation, format_permutation
from .oracle import DEFAULT_LIMIT, ComplexityTable, build_table
from .synthesis import synthesize

_EXHAUSTIVE_LIMIT = 9


def sample_stream(seed: int, index: int) -> np.random.Generator:
    """Independent generator for one sample: the index keys the Philox counter."""
    key = seed % 2**64
    return np.random.Generator(np.random.Philox(key=key, counter=[0, 0, 0, index]))


def random_permutation(n: int, rng: np.random.Generator) -> Permutation:
    """Uniform permutation of {1..n} drawn from the given stream."""
    return Permutation(tuple(int(v) + 1 for v in rng.permutation(n)))


def _sample_delta_matrix(n: int, samples: int, seed: int) -> np.ndarray:
    """(samples, n) matrix of displacement residues (p(i) - i) mod n."""
    positions = np.arange(1, n + 1, dtype=np.int64)
    deltas = np.empty((samples, n), dtype=np.int64)
    for i in range(samples):
        images = sample_stream(seed, i).permutation(n).astype(np.int64) + 1
        deltas[i] = (images - positions) % n
    return deltas


@dataclass(frozen=True)
class EstimateResult:
    """Outcome of one bumpy-fraction sampling run, all ratios exact."""

    n: int
    samples: int
    seed: int
    params: BumpinessParams
    bumpy_count: int
    fraction: Fraction
    ci_low: Fraction
    ci_high: Fraction

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "samples": self.samples,
            "seed": self.seed,
            "b": str(self.params.b),
            "c": str(self.params.c),
            "bumpy_count": self.bumpy_count,
            "fraction": str(self.fraction),
            "ci_low": str(self.ci_low),
            "ci_high": str(self.ci_high),
        }


def _sqrt_upper(x: Fraction) -> Fraction:
    """A rational upper bound on sqrt(x): round the scaled integer root up."""
    if x < 0:
        raise DomainError(f"square root of negative value {x}")
    a, b = x.numerator, x.denominator
    return Fraction(math.isqrt(a * b) + 1, b)


def wilson_interval(successes: int, total: int) -> tuple[Fraction, Fraction]:
    """Conservative exact-rational 95% Wilson score interval.

    The interval always contains successes/total, and the outward-rounded
    square root can only widen it.
    """
    if total <= 0:
        raise DomainError(f"interval needs a positive sample count, got {total}")
    if not 0 <= successes <= total:
        raise DomainError(f"successes {successes} outside [0, {total}]")
    z = Fraction(49, 25)
    z2 = z * z
    phat = Fraction(successes, total)
    denom = 1 + z2 / total
    center = phat + z2 / (2 * total)
    spread = z * _sqrt_upper(phat * (1 - phat) / total + z2 / (4 * total**2))
    low = max(Fraction(0), (center - spread) / denom)
    high = min(Fraction(1), (center + spread) / denom)
    return low, high


def exhaustive_bumpy_count(n: int, params: BumpinessParams = VERY_BUMPY) -> int:
    """Count bumpy permutations over all n! of them; refuses large n."""
    if not isinstance(n, int) or n < 2:
        raise DomainError(f"size must be an int >= 2, got {n!r}")
    if n > _EXHAUSTIVE_LIMIT:
        raise CapabilityError(
            f"exhaustive count over {n}! permutations exceeds the limit "
            f"of {_EXHAUSTIVE_LIMIT}"
        )
    lo, hi = threshold_band(n, params.b)
    return int(
        _kernels.count_bumpy_exhaustive(
            n, lo, hi, params.c.numerator, params.c.denominator
        )
    )


def bumpy_fraction_estimate(
    n: int,
    samples: int,
    seed: int,
    params: BumpinessParams = VERY_BUMPY,
) -> EstimateResult:
    """Monte Carlo estimate of the bumpy fraction with a Wilson interval."""
    if n < 2:
        raise DomainError(f"size must be >= 2, got {n}")
    if samples < 1:
        raise DomainError(f"need at least one sample, got {samples}")
    deltas = _sample_delta_matrix(n, samples, seed)
    lo, hi = threshold_band(n, params.b)
    mins = _kernels.min_band_counts(deltas, lo, hi)
    flags = mins * params.c.denominator >= params.c.numerator * n
    count = int(flags.sum())
    low, high = wilson_interval(count, samples)
    return EstimateResult(
        n=n,
        samples=samples,
        seed=seed,
        params=params,
        bumpy_count=count,
        fraction=Fraction(count, samples),
        ci_low=low,
        ci_high=high,
    )


@dataclass(frozen=True)
class GapRow:
    """One sampled permutation: lower bound vs synthesis length (vs exact)."""

    permutation: Permutation
    word_lb: int
    synth_len: int
    exact: int | None

    def to_json_dict(self) -> dict:
        return {
            "permutation": format_permutation(self.permutation),
            "word_lb": self.word_lb,
            "synth_len": self.synth_len,
            "exact": self.exact,
        }


def bound_gap_report(
    n: int,
    samples: int,
    seed: int,
    with_exact: bool | None = None,
    table: ComplexityTable | None = None,
) -> list[GapRow]:
    """Sample permutations and tabulate bound quality against synthesis length.

    The exact column is filled only when an oracle table is available: by
    default whenever n is within the oracle limit.  Every row satisfies
    word_lb <= exact <= synth_len when exact is present.
    """
    if samples < 1:
        raise DomainError(f"need at least one sample, got {samples}")
    if with_exact is None:
        with_exact = n <= DEFAULT_LIMIT
    if with_exact and table is None:
        table = build_table(n)
    rows = []
    for i in range(samples):
        p = random_permutation(n, sample_stream(seed, i))
        lb = word_lower_bound(p)
        cert = certify(p)
        exact = table.exact_complexity(p) if with_exact and table else None
        rows.append(
            GapRow(permutation=p, word_lb=lb, synth_len=cert.upper_len, exact=exact)
        )
    return rows


def gap_report_csv_lines(rows: list[GapRow]) -> list[str]:
    """Header plus one comma-separated line per sampled permutation."""
    out = ["permutation,word_lb,exact,synth_len"]
    for row in rows:
        exact = "" if row.exact is None else str(row.exact)
        perm = " ".join(str(v) for v in row.permutation.images)
        out.append(f"{perm},{row.word_lb},{exact},{row.synth_len}")
    return out
