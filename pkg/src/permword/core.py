"""Permutations of {1, ..., n} and words over the gate set {sigma, tau, tau^-1}.

Conventions used throughout the package:

* Points are 1-indexed: a permutation of size n maps {1, ..., n} to itself.
* ``sigma`` swaps 1 and 2; ``tau`` sends k to k+1 and n to 1 (a cyclic shift).
* A word is a finite sequence of generators.  It evaluates to the composition
  with the *rightmost* letter applied first, so ``evaluate_word([a, b], n)``
  is the map x -> a(b(x)).
* Text form of a word is a string over {s, t, T} = {sigma, tau, tau^-1} whose
  leftmost character is the letter applied last.
* Text form of a permutation is its space-separated image list, e.g. "1 3 5 2 4".
"""

from __future__ import annotations

import enum
import operator
from dataclasses import dataclass
from typing import Iterable, Sequence


class PermwordError(Exception):
    """Base class for errors raised by this package."""


class DomainError(PermwordError, ValueError):
    """An argument is outside the documented domain of an operation."""


class ParseError(PermwordError, ValueError):
    """Malformed input.  ``position`` is the 0-based offending index when the
    input is text; None for structural problems in binary data."""

    def __init__(self, message: str, position: int | None = None):
        super().__init__(
            message if position is None else f"{message} (position {position})"
        )
        self.position = position


class CapabilityError(PermwordError, RuntimeError):
    """The request exceeds a configured resource limit or missing capability."""


class InternalCheckError(PermwordError, RuntimeError):
    """A self-check that must always hold has failed; report as a bug."""


class Generator(enum.IntEnum):
    """The three gates.  Integer values are stable and used by kernels."""

    SIGMA = 0
    TAU = 1
    TAU_INV = 2

    @property
    def char(self) -> str:
        return "stT"[self]

    @property
    def inverse(self) -> "Generator":
        if self is Generator.SIGMA:
            return Generator.SIGMA
        return Generator.TAU if self is Generator.TAU_INV else Generator.TAU_INV


# A word is a plain tuple of generators; () is the empty word.
Word = tuple[Generator, ...]

_CHAR_TO_GEN = {"s": Generator.SIGMA, "t": Generator.TAU, "T": Generator.TAU_INV}


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1, ..., n} stored as its image tuple.

    ``images[i - 1]`` is the image of i.  Instances are immutable and hashable.
    """

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        try:
            # normalize numpy integers and the like to plain ints
            imgs = tuple(operator.index(v) for v in self.images)
        except TypeError as exc:
            raise DomainError(f"images must be integers: {exc}") from None
        object.__setattr__(self, "images", imgs)
        n = len(imgs)
        if n < 2:
            raise DomainError(f"permutation needs at least 2 points, got {n}")
        seen = [False] * n
        for v in imgs:
            if not 1 <= v <= n:
                raise DomainError(f"image {v!r} outside 1..{n}")
            if seen[v - 1]:
                raise DomainError(f"repeated image {v}")
            seen[v - 1] = True

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        if not 1 <= x <= self.n:
            raise DomainError(f"point {x} outside 1..{self.n}")
        return self.images[x - 1]

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.images, start=1))


def identity(n: int) -> Permutation:
    """The identity permutation on n points.

    >>> identity(3).images
    (1, 2, 3)
    """
    _check_size(n)
    return Permutation(tuple(range(1, n + 1)))


def make_sigma(n: int) -> Permutation:
    """The swap of 1 and 2, fixing everything else."""
    _check_size(n)
    return Permutation((2, 1) + tuple(range(3, n + 1)))


def make_tau(n: int) -> Permutation:
    """The cyclic shift k -> k+1 (and n -> 1)."""
    _check_size(n)
    return Permutation(tuple(range(2, n + 1)) + (1,))


def make_tau_inv(n: int) -> Permutation:
    """The cyclic shift k -> k-1 (and 1 -> n)."""
    _check_size(n)
    return Permutation((n,) + tuple(range(1, n)))


def generator_permutation(g: Generator, n: int) -> Permutation:
    if g is Generator.SIGMA:
        return make_sigma(n)
    return make_tau(n) if g is Generator.TAU else make_tau_inv(n)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """The composition p after q: x -> p(q(x)).

    >>> compose(make_sigma(4), make_tau(4)).images
    (1, 3, 4, 2)
    """
    if p.n != q.n:
        raise DomainError(f"size mismatch: {p.n} vs {q.n}")
    pi = p.images
    return Permutation(tuple(pi[v - 1] for v in q.images))


def inverse(p: Permutation) -> Permutation:
    out = [0] * p.n
    for x, v in enumerate(p.images, start=1):
        out[v - 1] = x
    return Permutation(tuple(out))


def evaluate_word(word: Sequence[Generator], n: int) -> Permutation:
    """Evaluate a word to a permutation, rightmost letter applied first.

    Runs in O(len(word) + n): the prefix product is kept as a rotated image
    buffer, so appending a letter on the right is a rotation or a single swap.

    >>> format_permutation(evaluate_word(parse_word("tt"), 4))
    '3 4 1 2'
    """
    _check_size(n)
    # buf holds the current prefix product P as P(x) = buf[(x - 1 + off) % n].
    buf = list(range(1, n + 1))
    off = 0
    for g in word:
        if g is Generator.TAU:
            off += 1
        elif g is Generator.TAU_INV:
            off -= 1
        elif g is Generator.SIGMA:
            i, j = off % n, (off + 1) % n
            buf[i], buf[j] = buf[j], buf[i]
        else:
            raise DomainError(f"not a generator: {g!r}")
    off %= n
    return Permutation(tuple(buf[(i + off) % n] for i in range(n)))


def cyclic_distance(x: int, y: int, n: int) -> int:
    """Distance between x and y on the n-cycle 1 - 2 - ... - n - 1.

    >>> cyclic_distance(1, 10, 10)
    1
    """
    _check_size(n)
    if not 1 <= x <= n:
        raise DomainError(f"point {x} outside 1..{n}")
    if not 1 <= y <= n:
        raise DomainError(f"point {y} outside 1..{n}")
    d = abs(x - y)
    return min(d, n - d)


_CANCELS = {
    (Generator.SIGMA, Generator.SIGMA),
    (Generator.TAU, Generator.TAU_INV),
    (Generator.TAU_INV, Generator.TAU),
}


def free_reduce(word: Iterable[Generator]) -> Word:
    """Cancel adjacent inverse pairs (ss, tT, Tt) until none remain.

    The result evaluates to the same permutation and is a fixed point of this
    function.  Cancellation cascades: reducing "stTs" removes all four letters.

    >>> format_word(free_reduce(parse_word("stTst")))
    't'
    """
    stack: list[Generator] = []
    for g in word:
        if stack and (stack[-1], g) in _CANCELS:
            stack.pop()
        else:
            stack.append(g)
    return tuple(stack)


def parse_permutation(text: str) -> Permutation:
    """Parse a space-separated 1-indexed image list such as "1 3 5 2 4"."""
    tokens = text.split()
    if len(tokens) < 2:
        raise ParseError("permutation needs at least 2 images", 0)
    n = len(tokens)
    images: list[int] = []
    seen = [False] * n
    for idx, tok in enumerate(tokens):
        try:
            v = int(tok, 10)
        except ValueError:
            raise ParseError(f"not an integer: {tok!r}", idx) from None
        if not 1 <= v <= n:
            raise ParseError(f"image {v} outside 1..{n}", idx)
        if seen[v - 1]:
            raise ParseError(f"repeated image {v}", idx)
        seen[v - 1] = True
        images.append(v)
    return Permutation(tuple(images))


def format_permutation(p: Permutation) -> str:
    return " ".join(str(v) for v in p.images)


def parse_word(text: str) -> Word:
    """Parse a word over the alphabet {s, t, T}; the empty string is allowed."""
    out = []
    for idx, ch in enumerate(text):
        g = _CHAR_TO_GEN.get(ch)
        if g is None:
            raise ParseError(f"not a generator letter: {ch!r}", idx)
        out.append(g)
    return tuple(out)


def format_word(word: Sequence[Generator]) -> str:
    return "".join(g.char for g in word)


def _check_size(n: int) -> None:
    if not isinstance(n, int) or n < 2:
        raise DomainError(f"size must be an integer >= 2, got {n!r}")
