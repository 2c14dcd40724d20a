"""Exact complexity oracle: BFS over the full Cayley graph at small n.

Ranks permutations by Lehmer code (identity has rank 0), stores one distance
byte per state, and derives parent letters after the fact so geodesic
reconstruction is deterministic: each state takes the first generator in
(sigma, tau, tau inverse) order that steps to a state one level closer.

Tables for n up to 10 (3.6M states) build in seconds with the compiled
backend; anything larger is refused with a memory estimate rather than
attempted.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .core import (
    CapabilityError,
    DomainError,
    Generator,
    InternalCheckError,
    ParseError,
    Permutation,
    Word,
    compose,
    evaluate_word,
    generator_permutation,
)

DEFAULT_LIMIT = 10

_MAGIC = b"PWC1"
_PARENT_MAGIC = b"PWP1"


def rank(p: Permutation) -> int:
    """Lehmer-code rank of p among all permutations of its size, identity -> 0.

    >>> rank(Permutation((1, 2, 3)))
    0
    >>> rank(Permutation((3, 2, 1)))
    5
    """
    n = p.n
    images = list(p.images)
    r = 0
    for i in range(n):
        smaller = sum(1 for j in range(i + 1, n) if images[j] < images[i])
        r = r * (n - i) + smaller
    return r


def unrank(r: int, n: int) -> Permutation:
    """Inverse of rank: the permutation of {1..n} with Lehmer rank r.

    >>> unrank(5, 3).images
    (3, 2, 1)
    """
    if not isinstance(r, int):
        raise DomainError(f"rank must be an int, got {type(r).__name__}")
    total = math.factorial(n)
    if not 0 <= r < total:
        raise DomainError(f"rank {r} out of range [0, {n}!) = [0, {total})")
    digits = []
    rem = r
    for base in range(1, n + 1):
        digits.append(rem % base)
        rem //= base
    digits.reverse()
    pool = list(range(1, n + 1))
    images = tuple(pool.pop(d) for d in digits)
    return Permutation(images)


@dataclass(frozen=True)
class ComplexityTable:
    """Distances (and optionally parent letters) for every permutation of size n."""

    n: int
    distances: np.ndarray
    parents: np.ndarray | None = None
    sphere_sizes: tuple[int, ...] = field(init=False)

    def __post_init__(self) -> None:
        total = math.factorial(self.n)
        if self.distances.shape != (total,) or self.distances.dtype != np.uint8:
            raise DomainError(
                f"distance table for n={self.n} must be uint8 of length {total}"
            )
        counts = np.bincount(self.distances)
        object.__setattr__(self, "sphere_sizes", tuple(int(c) for c in counts))

    @property
    def diameter(self) -> int:
        return len(self.sphere_sizes) - 1

    def exact_complexity(self, p: Permutation) -> int:
        """Length of a shortest word over {sigma, tau, tau inverse} evaluating to p."""
        if p.n != self.n:
            raise DomainError(f"table is for n={self.n}, permutation has n={p.n}")
        return int(self.distances[rank(p)])

    def geodesic_word(self, p: Permutation) -> Word:
        """A shortest word for p, reconstructed from stored parent letters.

        The result is deterministic: ties at each step resolve in
        (sigma, tau, tau inverse) order.
        """
        if p.n != self.n:
            raise DomainError(f"table is for n={self.n}, permutation has n={p.n}")
        if self.parents is None:
            raise CapabilityError(
                "table was built without parent tracking; rebuild with "
                "with_parents=True to reconstruct geodesics"
            )
        letters: list[Generator] = []
        current = p
        dist = self.exact_complexity(p)
        while dist > 0:
            g = Generator(int(self.parents[rank(current)]))
            # current = g . rest, so strip g on the left and record it up front
            letters.append(g)
            current = compose(generator_permutation(g.inverse, self.n), current)
            dist -= 1
        word = tuple(letters)
        if evaluate_word(word, self.n) != p:
            raise InternalCheckError(
                "geodesic reconstruction did not evaluate back to the input"
            )
        return word


def _memory_estimate(n: int) -> str:
    total = math.factorial(n)
    if total >= 2**30:
        size = f"{total / 2**30:.1f} GiB"
    else:
        size = f"{total / 2**20:.1f} MiB"
    return f"{total} states, about {size} of distance bytes"


def build_table(
    n: int, with_parents: bool = False, limit: int = DEFAULT_LIMIT
) -> ComplexityTable:
    """BFS the whole symmetric group of degree n; refuse past the size limit."""
    if not isinstance(n, int) or n < 2:
        raise DomainError(f"table size must be an int >= 2, got {n!r}")
    if n > limit:
        raise CapabilityError(
            f"exact table for n={n} exceeds the limit of {limit} "
            f"({_memory_estimate(n)})"
        )
    distances = _kernels.bfs_distances(n)
    parents = _kernels.parent_letters(n, distances) if with_parents else None
    return ComplexityTable(n=n, distances=distances, parents=parents)


def ensure_parents(table: ComplexityTable) -> ComplexityTable:
    """Return a table that can reconstruct geodesics, reusing the distances."""
    if table.parents is not None:
        return table
    parents = _kernels.parent_letters(table.n, table.distances)
    return ComplexityTable(n=table.n, distances=table.distances, parents=parents)


def export_table(table: ComplexityTable, path: str) -> None:
    """Write magic, size, then one distance byte per permutation in rank order."""
    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        fh.write(struct.pack("<Q", table.n))
        fh.write(table.distances.tobytes())


def import_table(path: str) -> ComplexityTable:
    """Read a table written by export_table; parents are not persisted."""
    with open(path, "rb") as fh:
        magic = fh.read(4)
        if magic != _MAGIC:
            raise ParseError(f"bad table header {magic!r}, expected {_MAGIC!r}")
        (n,) = struct.unpack("<Q", fh.read(8))
        n = int(n)
        if n < 2:
            raise ParseError(f"table header declares invalid size {n}")
        total = math.factorial(n)
        payload = fh.read()
    if len(payload) != total:
        raise ParseError(
            f"table body has {len(payload)} bytes, expected {n}! = {total}"
        )
    distances = np.frombuffer(payload, dtype=np.uint8).copy()
    return ComplexityTable(n=n, distances=distances)


def export_parents(table: ComplexityTable, path: str) -> None:
    """Persist parent letters alongside a distance table."""
    if table.parents is None:
        raise DomainError("table has no parent letters to export")
    with open(path, "wb") as fh:
        fh.write(_PARENT_MAGIC)
        fh.write(struct.pack("<Q", table.n))
        fh.write(table.parents.tobytes())


def import_parents(table: ComplexityTable, path: str) -> ComplexityTable:
    """Attach parent letters from a file written by export_parents."""
    with open(path, "rb") as fh:
        magic = fh.read(4)
        if magic != _PARENT_MAGIC:
            raise ParseError(f"bad parent header {magic!r}, expected {_PARENT_MAGIC!r}")
        (n,) = struct.unpack("<Q", fh.read(8))
        payload = fh.read()
    if int(n) != table.n:
        raise ParseError(f"parent file is for n={int(n)}, table has n={table.n}")
    if len(payload) != math.factorial(table.n):
        raise ParseError(f"parent file body has wrong length {len(payload)}")
    parents = np.frombuffer(payload, dtype=np.uint8).copy()
    return ComplexityTable(n=table.n, distances=table.distances, parents=parents)


def sphere_csv_lines(table: ComplexityTable) -> list[str]:
    """'distance,count' rows, distances ascending, matching the CLI export."""
    return [f"{d},{c}" for d, c in enumerate(table.sphere_sizes)]
