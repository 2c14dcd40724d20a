"""Explicit generator words for transpositions and arbitrary permutations.

A transposition (1 l) is routed around the cycle either anticlockwise through
2, 3, ..., l or clockwise through n, n-1, ..., l, whichever is shorter.  Each
route is a palindromic chain of adjacent swaps, every adjacent swap (j j+1)
being the conjugate tau^(j-1) sigma tau^-(j-1).  After free reduction the two
routes cost exactly 4l-7 and 4(n-l)+3 letters; their sum is 4n-4, so the
shorter one never exceeds 2n-3 letters and (both being odd) ties cannot occur.

General permutations decompose into cycles, cycles into transpositions, and
each transposition (k l) is the tau-conjugate of (1 l-k+1).  The total comes
out below 3(n-1)^2 letters, which is the package-wide synthesis budget.
"""

from __future__ import annotations

from functools import lru_cache

from .core import (
    DomainError,
    Generator,
    InternalCheckError,
    Permutation,
    Word,
    _check_size,
    free_reduce,
)

_S = Generator.SIGMA
_T = Generator.TAU
_TI = Generator.TAU_INV


def tau_power_word(n: int, k: int) -> Word:
    """The shorter spelling of tau^k: k letters t, or n-k letters T.

    >>> from .core import format_word
    >>> format_word(tau_power_word(10, 8))
    'TT'
    """
    _check_size(n)
    if not 0 <= k <= n - 1:
        raise DomainError(f"power {k} outside 0..{n - 1}")
    if k <= n - k:
        return (_T,) * k
    return (_TI,) * (n - k)


def _chain_up(l: int) -> list[Generator]:
    # (1 2)(2 3)...(l-1 l)(l-2 l-1)...(1 2) with (k k+1) = t^(k-1) s T^(k-1)
    word: list[Generator] = []
    for k in list(range(1, l)) + list(range(l - 2, 0, -1)):
        word += [_T] * (k - 1) + [_S] + [_TI] * (k - 1)
    return word


def _chain_down(n: int, l: int) -> list[Generator]:
    # same chain along the other arc: hops 1 -> n -> n-1 -> ... -> l, the i-th
    # hop being the wrap-aware adjacent swap T^i s t^i
    m = n - l + 1
    word: list[Generator] = []
    for i in list(range(1, m + 1)) + list(range(m - 1, 0, -1)):
        word += [_TI] * i + [_S] + [_T] * i
    return word


@lru_cache(maxsize=None)
def transposition_1l_word(n: int, l: int) -> Word:
    """A word for the transposition (1 l) of exactly min(4l-7, 4(n-l)+3) letters.

    >>> from .core import format_word
    >>> format_word(transposition_1l_word(10, 3))
    'stsTs'
    >>> format_word(transposition_1l_word(10, 10))
    'Tst'
    """
    _check_size(n)
    if not 2 <= l <= n:
        raise DomainError(f"target {l} outside 2..{n}")
    up_len = 4 * l - 7
    down_len = 4 * (n - l) + 3
    raw = _chain_up(l) if up_len <= down_len else _chain_down(n, l)
    word = free_reduce(raw)
    expected = min(up_len, down_len)
    if len(word) != expected:
        raise InternalCheckError(
            f"(1 {l}) word at n={n} reduced to {len(word)} letters, expected {expected}"
        )
    return word


def transposition_word(n: int, k: int, l: int) -> Word:
    """A word for the transposition (k l), at most 3(n-1) letters long.

    Built as tau^(k-1) (1 l-k+1) tau^-(k-1) with both conjugating powers spelled
    the shorter way around, then freely reduced.
    """
    _check_size(n)
    if not (1 <= k < l <= n):
        raise DomainError(f"need 1 <= k < l <= n, got k={k} l={l} n={n}")
    left = tau_power_word(n, (k - 1) % n)
    right = tau_power_word(n, (n - k + 1) % n)
    word = free_reduce(left + transposition_1l_word(n, l - k + 1) + right)
    if len(word) > 3 * (n - 1):
        raise InternalCheckError(
            f"({k} {l}) word at n={n} has {len(word)} letters, budget {3 * (n - 1)}"
        )
    return word


def cycle_decomposition(p: Permutation) -> list[tuple[int, ...]]:
    """Nontrivial cycles of p, each starting at its smallest element, ordered
    by that element.

    >>> cycle_decomposition(Permutation((1, 3, 5, 2, 4)))
    [(2, 3, 5, 4)]
    """
    seen = [False] * p.n
    cycles: list[tuple[int, ...]] = []
    for start in range(1, p.n + 1):
        if seen[start - 1]:
            continue
        cycle = [start]
        seen[start - 1] = True
        x = p(start)
        while x != start:
            cycle.append(x)
            seen[x - 1] = True
            x = p(x)
        if len(cycle) >= 2:
            cycles.append(tuple(cycle))
    return cycles


def synthesize(p: Permutation) -> Word:
    """A word evaluating to p with at most 3(n-1)^2 letters.

    Each cycle (x1 ... xm) is realized as (x1 x2)(x2 x3)...(x m-1 xm), leftmost
    factor applied last, matching the evaluation order of evaluate_word.
    """
    n = p.n
    letters: list[Generator] = []
    for cycle in cycle_decomposition(p):
        for a, b in zip(cycle, cycle[1:]):
            lo, hi = (a, b) if a < b else (b, a)
            letters.extend(transposition_word(n, lo, hi))
    word = free_reduce(letters)
    budget = 3 * (n - 1) ** 2
    if len(word) > budget:
        raise InternalCheckError(f"synthesized {len(word)} letters, budget {budget}")
    return word
