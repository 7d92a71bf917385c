"""Occurrence-threaded working text with exact pair frequency accounting.

The working text lives in a fixed cell array; cell indices never move, so a
cell index doubles as an original-text coordinate.  Replacing a run collapses
it onto its first cell (which takes the new variable) and splices the active
doubly-linked list past the rest, so the symbol at an active cell ``i`` always
covers the original span ``[i, next_active(i) - 1]``.

Bookkeeping, in the style of the classic recursive-pairing structures:

* ``counts`` is exact at all times and counts self-overlapping occurrences
  (``aaa`` contains the pair (a, a) twice).
* frequency buckets map count -> pair set for counts >= 2, moved eagerly on
  every change, so the maximum non-trivial frequency is an O(1) pointer chase.
* per-pair candidate positions are min-heaps cleaned lazily: entries are only
  appended, and a popped entry is validated against the live cells before use.
* a further lazy heap over (position, pair) serves the default tie-break,
  "leftmost occurrence among the most frequent pairs", without scanning the
  whole bucket each step.

Replacement is greedy left-to-right; when a self-overlapping pair cannot be
fully replaced the overlapped occurrence is skipped (it fails liveness
validation once its first cell has been consumed).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from heapq import heapify, heappop, heappush, heapreplace
from array import array
from typing import Sequence

import numpy as np

_SHIFT = 32
_MASK = (1 << _SHIFT) - 1


def pair_key(a: int, b: int) -> int:
    return (a << _SHIFT) | b


def key_pair(key: int) -> tuple[int, int]:
    return key >> _SHIFT, key & _MASK


@dataclass(frozen=True)
class PairFreq:
    pair: tuple[int, int]
    count: int


class PairAbsentError(ValueError):
    pass


class RunReplaceError(ValueError):
    pass


class PairIndex:
    """Mutable compressor state for one run; not safe for concurrent mutation."""

    __slots__ = (
        "n", "syms", "alive", "nxt", "prv",
        "counts", "_positions", "_init_pos", "_buckets", "_maxfreq",
        "_tie_f", "_tie_heap", "n_active",
    )

    def __init__(self, text: Sequence[int]):
        n = len(text)
        self.n = n
        self.n_active = n
        if isinstance(text, np.ndarray):
            syms = array("q")
            syms.frombytes(text.astype("<i8", copy=False).tobytes())
            self.syms = syms
        else:
            self.syms = array("q", text)
        self.alive = bytearray(b"\x01") * n
        nxt = array("q", range(1, n + 1))
        if n:
            nxt[n - 1] = -1
        self.nxt = nxt
        self.prv = array("q", range(-1, n - 1))
        self.counts: dict[int, int] = {}
        self._positions: dict[int, list[int]] = {}
        self._init_pos: dict[int, np.ndarray] = {}
        self._buckets: dict[int, dict[int, None]] = {}
        self._maxfreq = 0
        self._tie_f = -1
        self._tie_heap: list[tuple[int, int]] = []
        if n >= 2:
            ids = np.frombuffer(self.syms, dtype=np.int64)
            keys = (ids[:-1] << _SHIFT) | ids[1:]
            order = np.argsort(keys, kind="stable")
            sk = keys[order]
            uniq, starts, cnts = np.unique(sk, return_index=True, return_counts=True)
            ukeys = uniq.tolist()
            ucnts = cnts.tolist()
            ustarts = starts.tolist()
            self.counts = dict(zip(ukeys, ucnts))
            init_pos = self._init_pos
            buckets = self._buckets
            mf = 0
            for i, key in enumerate(ukeys):
                c = ucnts[i]
                init_pos[key] = order[ustarts[i]:ustarts[i] + c]
                if c >= 2:
                    buckets.setdefault(c, {})[key] = None
                    if c > mf:
                        mf = c
            self._maxfreq = mf

    # -- position heaps ----------------------------------------------------

    def _heap(self, key: int) -> list[int]:
        lst = self._positions.get(key)
        if lst is None:
            arr = self._init_pos.pop(key, None)
            lst = arr.tolist() if arr is not None else []
            self._positions[key] = lst
        return lst

    def leftmost(self, key: int) -> int | None:
        """Leftmost live occurrence start of the pair, or None."""
        heap = self._heap(key)
        a, b = key >> _SHIFT, key & _MASK
        alive, syms, nxt = self.alive, self.syms, self.nxt
        while heap:
            i = heap[0]
            if alive[i] and syms[i] == a:
                j = nxt[i]
                if j != -1 and syms[j] == b:
                    return i
            heappop(heap)
        return None

    def occurrence_starts(self, key: int) -> list[int]:
        """All live occurrence starts of the pair, ascending (self-overlaps included)."""
        heap = self._heap(key)
        a, b = key >> _SHIFT, key & _MASK
        alive, syms, nxt = self.alive, self.syms, self.nxt
        out: list[int] = []
        last = -1
        while heap:
            i = heappop(heap)
            if i == last:
                continue
            if alive[i] and syms[i] == a:
                j = nxt[i]
                if j != -1 and syms[j] == b:
                    out.append(i)
                    last = i
        self._positions[key] = list(out)  # ascending list is a valid min-heap
        return out

    # -- counts and buckets ------------------------------------------------

    def _inc(self, key: int, pos: int) -> None:
        counts = self.counts
        c0 = counts.get(key, 0)
        c = c0 + 1
        counts[key] = c
        if c0 >= 2:
            del self._buckets[c0][key]
        if c >= 2:
            self._buckets.setdefault(c, {})[key] = None
            if c > self._maxfreq:
                self._maxfreq = c
            if c == self._tie_f:
                heappush(self._tie_heap, (pos, key))
        heappush(self._heap(key), pos)

    def _dec(self, key: int, by: int = 1) -> None:
        counts = self.counts
        c0 = counts[key]
        c = c0 - by
        counts[key] = c
        if c0 >= 2:
            del self._buckets[c0][key]
        if c >= 2:
            self._buckets.setdefault(c, {})[key] = None

    def max_nontrivial(self) -> int:
        """Highest pair frequency that is at least 2, else 0."""
        buckets = self._buckets
        mf = self._maxfreq
        while mf >= 2 and not buckets.get(mf):
            buckets.pop(mf, None)
            mf -= 1
        self._maxfreq = mf
        return mf if mf >= 2 else 0

    def most_frequent_keys(self) -> list[int]:
        """Pairs at the current non-trivial maximum, in no particular order."""
        f = self.max_nontrivial()
        if f < 2:
            return []
        return list(self._buckets[f])

    def leftmost_max_key(self) -> int | None:
        """The most frequent pair whose live occurrence is leftmost in the text."""
        f = self.max_nontrivial()
        if f < 2:
            return None
        if self._tie_f != f:
            self._tie_f = f
            heap = []
            for key in self._buckets[f]:
                pos = self.leftmost(key)
                if pos is not None:
                    heap.append((pos, key))
            heapify(heap)
            self._tie_heap = heap
        heap = self._tie_heap
        counts = self.counts
        while heap:
            pos, key = heap[0]
            if counts.get(key, 0) != f:
                heappop(heap)
                continue
            true_pos = self.leftmost(key)
            if true_pos is None:
                heappop(heap)
                continue
            if true_pos != pos:
                heapreplace(heap, (true_pos, key))
                continue
            return key
        return None

    # -- replacement -------------------------------------------------------

    def _apply_deltas(self, deltas: dict[int, int], pushes: dict[int, list[int]]) -> None:
        """Commit batched count changes (one bucket move per key) and position pushes."""
        counts, buckets = self.counts, self._buckets
        tie_f, tie_heap = self._tie_f, self._tie_heap
        for k, d in deltas.items():
            if d == 0:
                continue
            c0 = counts.get(k, 0)
            c = c0 + d
            counts[k] = c
            if c0 >= 2:
                del buckets[c0][k]
            if c >= 2:
                buckets.setdefault(c, {})[k] = None
                if c > self._maxfreq:
                    self._maxfreq = c
                if c == tie_f and d > 0:
                    heappush(tie_heap, (pushes[k][0], k))
        positions = self._positions
        for k, lst in pushes.items():
            heap = positions.get(k)
            if heap is None:
                heap = self._heap(k)
            for pos in lst:
                heappush(heap, pos)

    def replace_pair(self, a: int, b: int, v: int) -> tuple[int, list[tuple[int, int]]]:
        """Greedy left-to-right replacement of every occurrence of (a, b) by v.

        Returns (replaced_count, covered original interval per replacement).
        """
        key = (a << _SHIFT) | b
        if self.counts.get(key, 0) < 1:
            raise PairAbsentError(f"pair ({a}, {b}) does not occur")
        heap = self._heap(key)
        syms, alive, nxt, prv = self.syms, self.alive, self.nxt, self.prv
        n = self.n
        deltas: dict[int, int] = {}
        dget = deltas.get
        pushes: dict[int, list[int]] = {}
        intervals: list[tuple[int, int]] = []
        last = -1
        while heap:
            i = heappop(heap)
            if i == last:
                continue
            last = i
            if not alive[i] or syms[i] != a:
                continue
            j = nxt[i]
            if j == -1 or syms[j] != b:
                continue
            lp = prv[i]
            rn = nxt[j]
            span_end = rn - 1 if rn != -1 else n - 1
            deltas[key] = dget(key, 0) - 1
            if lp != -1:
                la = syms[lp]
                k1 = (la << _SHIFT) | a
                deltas[k1] = dget(k1, 0) - 1
                k2 = (la << _SHIFT) | v
                deltas[k2] = dget(k2, 0) + 1
                if k2 in pushes:
                    pushes[k2].append(lp)
                else:
                    pushes[k2] = [lp]
            if rn != -1:
                rb = syms[rn]
                k1 = (b << _SHIFT) | rb
                deltas[k1] = dget(k1, 0) - 1
                k2 = (v << _SHIFT) | rb
                deltas[k2] = dget(k2, 0) + 1
                if k2 in pushes:
                    pushes[k2].append(i)
                else:
                    pushes[k2] = [i]
            syms[i] = v
            alive[j] = 0
            nxt[i] = rn
            if rn != -1:
                prv[rn] = i
            intervals.append((i, span_end))
        self._apply_deltas(deltas, pushes)
        self.n_active -= len(intervals)
        return len(intervals), intervals

    def replace_occurrences(
        self,
        occs: Sequence[tuple[int, int]],
        rhs: Sequence[int],
        v: int,
    ) -> list[tuple[int, int]]:
        """Replace non-overlapping runs that all spell ``rhs``.

        ``occs`` holds (first_cell, last_cell) per run, ascending.  Interior
        pair counts are decremented in bulk (every run carries the same
        interior pairs), boundary pairs per run against the live neighbours.
        """
        syms, alive, nxt, prv = self.syms, self.alive, self.nxt, self.prv
        n = self.n
        length = len(rhs)
        nruns = len(occs)
        deltas: dict[int, int] = {}
        dget = deltas.get
        pushes: dict[int, list[int]] = {}
        for t in range(length - 1):
            k = (rhs[t] << _SHIFT) | rhs[t + 1]
            deltas[k] = dget(k, 0) - nruns
        first_sym = rhs[0]
        last_sym = rhs[-1]
        intervals: list[tuple[int, int]] = []
        prev_end = -1
        for s, e in occs:
            if s <= prev_end:
                raise RunReplaceError(f"run at cell {s} overlaps the previous replacement")
            lp = prv[s]
            rn = nxt[e]
            span_end = rn - 1 if rn != -1 else n - 1
            if lp != -1:
                la = syms[lp]
                k1 = (la << _SHIFT) | first_sym
                deltas[k1] = dget(k1, 0) - 1
                k2 = (la << _SHIFT) | v
                deltas[k2] = dget(k2, 0) + 1
                if k2 in pushes:
                    pushes[k2].append(lp)
                else:
                    pushes[k2] = [lp]
            if rn != -1:
                rb = syms[rn]
                k1 = (last_sym << _SHIFT) | rb
                deltas[k1] = dget(k1, 0) - 1
                k2 = (v << _SHIFT) | rb
                deltas[k2] = dget(k2, 0) + 1
                if k2 in pushes:
                    pushes[k2].append(s)
                else:
                    pushes[k2] = [s]
            syms[s] = v
            alive[s + 1:span_end + 1] = bytes(span_end - s)
            nxt[s] = rn
            if rn != -1:
                prv[rn] = s
            intervals.append((s, span_end))
            prev_end = span_end
        self._apply_deltas(deltas, pushes)
        self.n_active -= (length - 1) * nruns
        return intervals

    def replace_run(self, positions: Sequence[int], length: int, v: int) -> int:
        """Replace runs of ``length`` active cells starting at each position by v.

        Positions must be ascending starts of active, pairwise non-overlapping
        runs; violations raise RunReplaceError before any mutation.
        """
        if length < 2:
            raise RunReplaceError("run length must be at least 2")
        runs: list[tuple[int, int, tuple[int, ...]]] = []
        prev_last = -1
        for s in positions:
            if s <= prev_last:
                raise RunReplaceError(f"position {s} overlaps the previous run or is out of order")
            if not (0 <= s < self.n) or not self.alive[s]:
                raise RunReplaceError(f"position {s} is not an active cell")
            cells = [s]
            c = s
            for _ in range(length - 1):
                c = self.nxt[c]
                if c == -1:
                    raise RunReplaceError(f"run at {s} exceeds the active text")
                cells.append(c)
            runs.append((s, cells[-1], tuple(self.syms[c] for c in cells)))
            prev_last = cells[-1]
        for s, e, spelling in runs:
            self.replace_occurrences([(s, e)], spelling, v)
        return len(runs)

    # -- inspection ----------------------------------------------------------

    def active_sequence(self) -> list[int]:
        out = []
        if self.n == 0:
            return out
        syms, nxt = self.syms, self.nxt
        i = 0
        while i != -1:
            out.append(syms[i])
            i = nxt[i]
        return out

    def active_cells(self) -> list[int]:
        cells = []
        i = 0 if self.n else -1
        while i != -1:
            cells.append(i)
            i = self.nxt[i]
        return cells

    def pair_counts(self) -> Counter:
        """Live pair counts (exact, overlap-counted)."""
        return Counter({k: c for k, c in self.counts.items() if c > 0})

    def clone(self) -> "PairIndex":
        other = object.__new__(PairIndex)
        other.n = self.n
        other.n_active = self.n_active
        other.syms = array("q", self.syms)
        other.alive = bytearray(self.alive)
        other.nxt = array("q", self.nxt)
        other.prv = array("q", self.prv)
        other.counts = dict(self.counts)
        other._positions = {k: list(v) for k, v in self._positions.items()}
        other._init_pos = dict(self._init_pos)  # the arrays themselves are never mutated
        other._buckets = {c: dict(d) for c, d in self._buckets.items()}
        other._maxfreq = self._maxfreq
        other._tie_f = -1
        other._tie_heap = []
        return other


# -- module-level operation surface -----------------------------------------

def build_index(t: Sequence[int]) -> PairIndex:
    return PairIndex(t)


def most_frequent_pairs(idx: PairIndex) -> tuple[int, list[PairFreq]]:
    """Maximum pair frequency and the pairs attaining it, by first occurrence.

    Unlike the compressor loop this also reports frequency-1 pairs when no
    pair repeats; an empty or one-symbol text reports (0, []).
    """
    f = idx.max_nontrivial()
    if f >= 2:
        keys = idx.most_frequent_keys()
    else:
        live = [(k, c) for k, c in idx.counts.items() if c > 0]
        if not live:
            return 0, []
        f = max(c for _, c in live)
        keys = [k for k, c in live if c == f]
    ranked = []
    for k in keys:
        pos = idx.leftmost(k)
        if pos is not None:
            ranked.append((pos, k))
    ranked.sort()
    return f, [PairFreq(key_pair(k), f) for _, k in ranked]


def replace_pair(idx: PairIndex, p: tuple[int, int], v: int) -> int:
    count, _ = idx.replace_pair(p[0], p[1], v)
    return count


def replace_run(idx: PairIndex, positions: Sequence[int], length: int, v: int) -> int:
    return idx.replace_run(positions, length, v)
