"""Hot numeric kernels with two interchangeable backends.

The heavy inner loops of this package live here: the breadth-first scan of
the full Cayley graph (up to 10! states), parent-letter derivation, and the
per-shift displacement band counting used by the bumpiness scans.  Each kernel
has a numba ``@njit`` implementation and a vectorized pure-numpy fallback that
produce identical outputs.

Backend selection happens once at import time via the environment variable
``PERMWORD_BACKEND``:

* unset or ``auto``: numba when importable, numpy otherwise
* ``numba``: require numba, fail the import if it is missing
* ``numpy``: force the fallback (numba is not imported at all)

``benchmarks/bench_kernels.py`` times the two backends against each other.

Internal representation: permutations are 0-indexed image arrays, states are
Lehmer-code ranks (identity has rank 0), and words act by left multiplication
(an edge s -> g∘s appends the letter g on the evaluation side).
"""

from __future__ import annotations

import math
import os

import numpy as np

from .core import DomainError, InternalCheckError

_UNSET = 255  # uint8 sentinel for "distance not assigned yet" / "no parent"

_env = os.environ.get("PERMWORD_BACKEND", "").strip().lower()
if _env in ("", "auto"):
    try:
        import numba  # noqa: F401

        BACKEND = "numba"
    except ImportError:
        BACKEND = "numpy"
elif _env == "numba":
    import numba  # noqa: F401  # let the ImportError surface

    BACKEND = "numba"
elif _env == "numpy":
    BACKEND = "numpy"
else:
    raise DomainError(f"PERMWORD_BACKEND must be auto, numba or numpy, got {_env!r}")


def factorials(n: int) -> np.ndarray:
    """[0!, 1!, ..., n!] as int64; n <= 20 keeps n! inside int64."""
    if n > 20:
        raise DomainError(f"factorial table overflows int64 for n={n}")
    out = np.empty(n + 1, dtype=np.int64)
    out[0] = 1
    for i in range(1, n + 1):
        out[i] = out[i - 1] * i
    return out


def _generator_value_maps(n: int) -> np.ndarray:
    """Value-remap tables for left multiplication, shape (3, n) uint8.

    Row g maps old image v to (g∘p)(x) given p(x) = v, all 0-indexed:
    sigma swaps values 0 and 1, tau adds 1 mod n, tau^-1 subtracts 1 mod n.
    """
    v = np.arange(n, dtype=np.int64)
    sigma = v.copy()
    sigma[0], sigma[1] = 1, 0
    tau = (v + 1) % n
    tau_inv = (v - 1) % n
    return np.stack([sigma, tau, tau_inv]).astype(np.uint8)


# ---------------------------------------------------------------------------
# pure-numpy backend
# ---------------------------------------------------------------------------


def unrank_batch_numpy(ranks: np.ndarray, n: int, facts: np.ndarray) -> np.ndarray:
    """Decode Lehmer-code ranks into 0-indexed image rows, shape (F, n)."""
    r = np.asarray(ranks, dtype=np.int64).copy()
    count = r.shape[0]
    out = np.empty((count, n), dtype=np.uint8)
    pool = np.broadcast_to(np.arange(n, dtype=np.uint8), (count, n)).copy()
    rows = np.arange(count)
    for i in range(n - 1):
        f = facts[n - 1 - i]
        q = r // f
        r -= q * f
        out[:, i] = pool[rows, q]
        width = n - i
        keep = np.arange(width, dtype=np.int64)[None, :] != q[:, None]
        pool = pool[keep].reshape(count, width - 1)
    out[:, n - 1] = pool[:, 0]
    return out


def rank_batch_numpy(perms: np.ndarray, facts: np.ndarray) -> np.ndarray:
    """Lehmer-code ranks of 0-indexed image rows, shape (F,) int64."""
    count, n = perms.shape
    r = np.zeros(count, dtype=np.int64)
    for i in range(n - 1):
        c = (perms[:, i + 1 :] < perms[:, i : i + 1]).sum(axis=1, dtype=np.int64)
        r += c * facts[n - 1 - i]
    return r


def bfs_distances_numpy(n: int, chunk: int = 1 << 17) -> np.ndarray:
    facts = factorials(n)
    size = int(facts[n])
    dist = np.full(size, _UNSET, dtype=np.uint8)
    dist[0] = 0
    maps = _generator_value_maps(n)
    d = 0
    while True:
        frontier = np.nonzero(dist == d)[0]
        if frontier.size == 0:
            break
        for start in range(0, frontier.size, chunk):
            perms = unrank_batch_numpy(frontier[start : start + chunk], n, facts)
            for g in range(3):
                ranks = rank_batch_numpy(maps[g][perms], facts)
                fresh = ranks[dist[ranks] == _UNSET]
                if fresh.size and d >= 254:
                    raise InternalCheckError("BFS distance exceeded byte storage")
                dist[fresh] = d + 1
        d += 1
    return dist


def parent_letters_numpy(n: int, dist: np.ndarray, chunk: int = 1 << 17) -> np.ndarray:
    facts = factorials(n)
    size = dist.shape[0]
    maps = _generator_value_maps(n)
    # stepping back along letter g applies g^-1 on the left
    inverse_of = (0, 2, 1)
    letters = np.full(size, _UNSET, dtype=np.uint8)
    for start in range(0, size, chunk):
        block = np.arange(start, min(start + chunk, size), dtype=np.int64)
        perms = unrank_batch_numpy(block, n, facts)
        dd = dist[block].astype(np.int16)
        got = dd == 0  # the identity keeps the sentinel
        for g in range(3):
            pred = rank_batch_numpy(maps[inverse_of[g]][perms], facts)
            ok = (~got) & (dist[pred].astype(np.int16) == dd - 1)
            letters[block[ok]] = g
            got |= ok
        if not got.all():
            raise InternalCheckError("state with no distance-decreasing letter")
    return letters


def band_shift_counts_numpy(hist: np.ndarray, lo: int, hi: int) -> np.ndarray:
    """counts[k] = sum of hist[r] over residues r with lo <= (k+r) mod n <= hi."""
    hist = np.ascontiguousarray(hist, dtype=np.int64)
    n = hist.shape[0]
    if hi < lo:
        return np.zeros(n, dtype=np.int64)
    pref = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(hist, out=pref[1:])
    k = np.arange(n)
    a = (lo - k) % n
    b = a + (hi - lo + 1)
    wrapped = pref[n] - pref[a] + pref[np.maximum(b - n, 0)]
    straight = pref[np.minimum(b, n)] - pref[a]
    return np.where(b > n, wrapped, straight).astype(np.int64)


def min_band_counts_numpy(deltas: np.ndarray, lo: int, hi: int) -> np.ndarray:
    """Per-row minimum over all n shifts of the band count; deltas is (S, n)."""
    deltas = np.ascontiguousarray(deltas, dtype=np.int64)
    samples, n = deltas.shape
    if hi < lo:
        return np.zeros(samples, dtype=np.int64)
    hist = np.zeros((samples, n), dtype=np.int64)
    np.add.at(hist, (np.arange(samples)[:, None], deltas), 1)
    pref = np.zeros((samples, n + 1), dtype=np.int64)
    np.cumsum(hist, axis=1, out=pref[:, 1:])
    k = np.arange(n)
    a = (lo - k) % n
    b = a + (hi - lo + 1)
    wrapped = pref[:, n][:, None] - pref[:, a] + pref[:, np.maximum(b - n, 0)]
    straight = pref[:, np.minimum(b, n)] - pref[:, a]
    counts = np.where((b > n)[None, :], wrapped, straight)
    return counts.min(axis=1)


def count_bumpy_exhaustive_numpy(
    n: int, lo: int, hi: int, c_num: int, c_den: int, chunk: int = 1 << 16
) -> int:
    facts = factorials(n)
    size = int(facts[n])
    positions = np.arange(n, dtype=np.int64)
    total = 0
    for start in range(0, size, chunk):
        block = np.arange(start, min(start + chunk, size), dtype=np.int64)
        perms = unrank_batch_numpy(block, n, facts).astype(np.int64)
        deltas = (perms - positions) % n
        mins = min_band_counts_numpy(deltas, lo, hi)
        total += int((mins * c_den >= c_num * n).sum())
    return total


# ---------------------------------------------------------------------------
# numba backend
# ---------------------------------------------------------------------------

if BACKEND == "numba":
    from numba import njit

    @njit(cache=True)
    def _unrank_into(r, n, facts, pool, out):  # pragma: no cover - jitted
        for i in range(n):
            pool[i] = i
        m = n
        for i in range(n):
            f = facts[n - 1 - i]
            q = r // f
            r -= q * f
            out[i] = pool[q]
            for j in range(q, m - 1):
                pool[j] = pool[j + 1]
            m -= 1

    @njit(cache=True)
    def _rank_of(perm, n, facts):  # pragma: no cover - jitted
        r = 0
        for i in range(n):
            c = 0
            pi = perm[i]
            for j in range(i + 1, n):
                if perm[j] < pi:
                    c += 1
            r += c * facts[n - 1 - i]
        return r

    @njit(cache=True)
    def _apply_left(g, perm, out, n):  # pragma: no cover - jitted
        if g == 0:
            for i in range(n):
                v = perm[i]
                out[i] = 1 - v if v < 2 else v
        elif g == 1:
            for i in range(n):
                v = perm[i] + 1
                out[i] = 0 if v == n else v
        else:
            for i in range(n):
                v = perm[i] - 1
                out[i] = n - 1 if v < 0 else v

    @njit(cache=True)
    def _bfs_numba(n, facts):  # pragma: no cover - jitted
        size = facts[n]
        dist = np.full(size, _UNSET, dtype=np.uint8)
        dist[0] = 0
        perm = np.empty(n, np.int64)
        succ = np.empty(n, np.int64)
        pool = np.empty(n, np.int64)
        d = 0
        while True:
            found = 0
            for s in range(size):
                if dist[s] != d:
                    continue
                _unrank_into(s, n, facts, pool, perm)
                for g in range(3):
                    _apply_left(g, perm, succ, n)
                    r = _rank_of(succ, n, facts)
                    if dist[r] == _UNSET:
                        if d >= 254:
                            raise ValueError("BFS distance exceeded byte storage")
                        dist[r] = d + 1
                        found += 1
            if found == 0:
                break
            d += 1
        return dist

    @njit(cache=True)
    def _parents_numba(n, facts, dist):  # pragma: no cover - jitted
        size = dist.shape[0]
        letters = np.full(size, _UNSET, dtype=np.uint8)
        perm = np.empty(n, np.int64)
        pred = np.empty(n, np.int64)
        pool = np.empty(n, np.int64)
        for s in range(size):
            ds = dist[s]
            if ds == 0:
                continue
            _unrank_into(s, n, facts, pool, perm)
            found = False
            for g in range(3):
                inv = 0 if g == 0 else (2 if g == 1 else 1)
                _apply_left(inv, perm, pred, n)
                r = _rank_of(pred, n, facts)
                if dist[r] == ds - 1:
                    letters[s] = g
                    found = True
                    break
            if not found:
                raise ValueError("state with no distance-decreasing letter")
        return letters

    @njit(cache=True)
    def _band_counts_numba(hist, lo, hi):  # pragma: no cover - jitted
        n = hist.shape[0]
        out = np.zeros(n, np.int64)
        if hi < lo:
            return out
        pref = np.empty(n + 1, np.int64)
        pref[0] = 0
        for i in range(n):
            pref[i + 1] = pref[i] + hist[i]
        w = hi - lo + 1
        for k in range(n):
            a = (lo - k) % n
            b = a + w
            if b <= n:
                out[k] = pref[b] - pref[a]
            else:
                out[k] = pref[n] - pref[a] + pref[b - n]
        return out

    @njit(cache=True)
    def _min_band_counts_numba(deltas, lo, hi):  # pragma: no cover - jitted
        samples, n = deltas.shape
        out = np.zeros(samples, np.int64)
        if hi < lo:
            return out
        w = hi - lo + 1
        hist = np.zeros(n, np.int64)
        pref = np.empty(n + 1, np.int64)
        for s in range(samples):
            for i in range(n):
                hist[i] = 0
            for i in range(n):
                hist[deltas[s, i]] += 1
            pref[0] = 0
            for i in range(n):
                pref[i + 1] = pref[i] + hist[i]
            best = np.int64(1) << 60
            for k in range(n):
                a = (lo - k) % n
                b = a + w
                if b <= n:
                    c = pref[b] - pref[a]
                else:
                    c = pref[n] - pref[a] + pref[b - n]
                if c < best:
                    best = c
            out[s] = best
        return out

    @njit(cache=True)
    def _count_bumpy_numba(n, facts, lo, hi, c_num, c_den):  # pragma: no cover
        size = facts[n]
        if hi < lo:
            return 0
        perm = np.empty(n, np.int64)
        pool = np.empty(n, np.int64)
        hist = np.zeros(n, np.int64)
        pref = np.empty(n + 1, np.int64)
        w = hi - lo + 1
        count = 0
        for s in range(size):
            _unrank_into(s, n, facts, pool, perm)
            for i in range(n):
                hist[i] = 0
            for i in range(n):
                hist[(perm[i] - i) % n] += 1
            pref[0] = 0
            for i in range(n):
                pref[i + 1] = pref[i] + hist[i]
            ok = True
            for k in range(n):
                a = (lo - k) % n
                b = a + w
                if b <= n:
                    c = pref[b] - pref[a]
                else:
                    c = pref[n] - pref[a] + pref[b - n]
                if c * c_den < c_num * n:
                    ok = False
                    break
            if ok:
                count += 1
        return count

    def bfs_distances_numba(n: int) -> np.ndarray:
        try:
            return _bfs_numba(n, factorials(n))
        except ValueError as exc:
            raise InternalCheckError(str(exc)) from None

    def parent_letters_numba(n: int, dist: np.ndarray) -> np.ndarray:
        try:
            return _parents_numba(n, factorials(n), dist)
        except ValueError as exc:
            raise InternalCheckError(str(exc)) from None

    def band_shift_counts_numba(hist: np.ndarray, lo: int, hi: int) -> np.ndarray:
        return _band_counts_numba(np.ascontiguousarray(hist, dtype=np.int64), lo, hi)

    def min_band_counts_numba(deltas: np.ndarray, lo: int, hi: int) -> np.ndarray:
        return _min_band_counts_numba(
            np.ascontiguousarray(deltas, dtype=np.int64), lo, hi
        )

    def count_bumpy_exhaustive_numba(
        n: int, lo: int, hi: int, c_num: int, c_den: int
    ) -> int:
        return int(_count_bumpy_numba(n, factorials(n), lo, hi, c_num, c_den))

    bfs_distances = bfs_distances_numba
    parent_letters = parent_letters_numba
    band_shift_counts = band_shift_counts_numba
    min_band_counts = min_band_counts_numba
    count_bumpy_exhaustive = count_bumpy_exhaustive_numba
else:
    bfs_distances = bfs_distances_numpy
    parent_letters = parent_letters_numpy
    band_shift_counts = band_shift_counts_numpy
    min_band_counts = min_band_counts_numpy
    count_bumpy_exhaustive = count_bumpy_exhaustive_numpy


def state_count(n: int) -> int:
    return math.factorial(n)
