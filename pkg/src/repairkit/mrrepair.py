"""Maximal-repeat extension and the two repeat-substituting compressors.

MR-RePair locates the most frequent maximal repeat by extending a most
frequent pair (the pair sits inside exactly one such repeat), trims one end
when the repeat's first and last symbols coincide, and substitutes every
occurrence at once.  The naive variant substitutes the globally most frequent
maximal repeat wholesale, skipping overlapped occurrences, and exists as an
analysis-scale reference point rather than a practical compressor.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .core import Grammar, intern_terminals, make_grammar
from .pairmodel import PairIndex, key_pair, pair_key
from .repair import TieBreak, _TieState


@dataclass(frozen=True)
class MaxRepeat:
    """A repeat whose every one-symbol extension is strictly less frequent.

    ``occurrences`` are start offsets in the index's backing cell array
    (original-text coordinates), ascending; overlapping occurrences are all
    counted, so freq == len(occurrences) >= 2.
    """

    string: tuple[int, ...]
    freq: int
    occurrences: tuple[int, ...]


@dataclass(frozen=True)
class MRSelection:
    repeat: MaxRepeat
    replaced: tuple[int, ...]
    intervals: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class MRPhase:
    freq: int
    selections: tuple[MRSelection, ...]


@dataclass(frozen=True)
class MRTrace:
    phases: tuple[MRPhase, ...]


def trim_if_bookended(r: Sequence[int], keep: str = "prefix") -> tuple[int, ...]:
    """Drop one end of ``r`` when it is longer than 2 and bookended.

    With ``keep="prefix"`` the last symbol goes; ``keep="suffix"`` drops the
    first instead.  Either way the occurrences of the result cannot overlap,
    which is what makes whole-repeat substitution safe.
    """
    r = tuple(r)
    if len(r) > 2 and r[0] == r[-1]:
        return r[:-1] if keep == "prefix" else r[1:]
    return r


def _extend(idx: PairIndex, key: int) -> tuple[tuple[int, ...], list[int], list[int]]:
    """Extend a pair to its maximal repeat; returns (string, left cells, right cells)."""
    starts = idx.occurrence_starts(key)
    syms, nxt, prv = idx.syms, idx.nxt, idx.prv
    lefts = list(starts)
    rights = [nxt[i] for i in starts]
    while True:
        p0 = prv[lefts[0]]
        if p0 == -1:
            break
        s0 = syms[p0]
        cand = [prv[i] for i in lefts]
        if any(c == -1 or syms[c] != s0 for c in cand):
            break
        lefts = cand
    while True:
        n0 = nxt[rights[0]]
        if n0 == -1:
            break
        s0 = syms[n0]
        cand = [nxt[j] for j in rights]
        if any(c == -1 or syms[c] != s0 for c in cand):
            break
        rights = cand
    string = []
    c = lefts[0]
    stop = rights[0]
    while True:
        string.append(syms[c])
        if c == stop:
            break
        c = nxt[c]
    return tuple(string), lefts, rights


def extend_to_maximal_repeat(idx: PairIndex, p: tuple[int, int]) -> MaxRepeat:
    """Maximal repeat containing a most frequent pair, at the pair's frequency.

    Extends left while every occurrence is preceded by the same symbol and
    none touches the text start, then right symmetrically.  Only sound when
    ``p`` is most frequent, where the containing maximal repeat is unique.
    """
    string, lefts, rights = _extend(idx, pair_key(*p))
    return MaxRepeat(string=string, freq=len(lefts), occurrences=tuple(lefts))


def mr_repair_compress(
    t: Sequence[int],
    tb: TieBreak = TieBreak(),
    trim: str = "prefix",
) -> tuple[Grammar, MRTrace]:
    """Compress by substituting most frequent maximal repeats, one per step.

    Returns the grammar and the full selection trace: per phase (one maximal
    run of equal pair frequency), the repeats as selected, the trimmed strings
    actually replaced, and the covered original intervals.
    """
    if len(t) == 0:
        raise ValueError("cannot compress an empty text")
    if trim not in ("prefix", "suffix"):
        raise ValueError("trim must be 'prefix' or 'suffix'")
    terminal_values, ids = intern_terminals(t)
    raw_to_code = {v: i for i, v in enumerate(terminal_values)}
    state = _TieState(tb, raw_to_code)
    idx = PairIndex(ids)
    next_var = len(terminal_values)
    body: list[tuple[int, ...]] = []
    phases: list[MRPhase] = []
    selections: list[MRSelection] = []
    phase_freq = 0
    nxt, prv = idx.nxt, idx.prv
    while True:
        f = idx.max_nontrivial()
        if f < 2:
            break
        if f != phase_freq:
            if selections:
                phases.append(MRPhase(phase_freq, tuple(selections)))
                selections = []
            phase_freq = f
        key = state.choose(idx)
        string, lefts, rights = _extend(idx, key)
        repeat = MaxRepeat(string=string, freq=len(lefts), occurrences=tuple(lefts))
        replaced = trim_if_bookended(string, keep=trim)
        v = next_var
        next_var += 1
        if len(replaced) == 2:
            a, b = replaced if len(string) == 2 else (
                (string[0], string[1]) if trim == "prefix" else (string[1], string[2])
            )
            _, intervals = idx.replace_pair(a, b, v)
        else:
            if len(replaced) == len(string):
                occs = list(zip(lefts, rights))
            elif trim == "prefix":
                occs = [(i, prv[j]) for i, j in zip(lefts, rights)]
            else:
                occs = [(nxt[i], j) for i, j in zip(lefts, rights)]
            intervals = idx.replace_occurrences(occs, replaced, v)
        body.append(replaced)
        selections.append(MRSelection(repeat, replaced, tuple(intervals)))
    if selections:
        phases.append(MRPhase(phase_freq, tuple(selections)))
    grammar = make_grammar(terminal_values, body, idx.active_sequence(), "mr")
    return grammar, MRTrace(tuple(phases))


def naive_mr_compress(t: Sequence[int], tb: TieBreak = TieBreak()) -> Grammar:
    """Substitute the globally most frequent maximal repeat, untrimmed.

    Overlapped occurrences are skipped greedily left to right, so bookended
    repeats lose replacements; the compressor exists to measure that loss.
    Analysis-scale only: per-step repeat search keeps this O(n^2)-ish.
    """
    if len(t) == 0:
        raise ValueError("cannot compress an empty text")
    terminal_values, ids = intern_terminals(t)
    raw_to_code = {v: i for i, v in enumerate(terminal_values)}
    policy = tb.policy
    tb_key = None
    if tb.pair is not None:
        a, b = tb.pair
        if a in raw_to_code and b in raw_to_code:
            tb_key = (raw_to_code[a], raw_to_code[b])
    script = deque(tb.script)
    idx = PairIndex(ids)
    next_var = len(terminal_values)
    body: list[tuple[int, ...]] = []
    nxt = idx.nxt
    while True:
        f = idx.max_nontrivial()
        if f < 2:
            break
        candidates: list[tuple[tuple[int, ...], list[int], list[int]]] = []
        seen: set[tuple[int, int]] = set()
        for key in idx.most_frequent_keys():
            string, lefts, rights = _extend(idx, key)
            ident = (lefts[0], len(string))
            if ident not in seen:
                seen.add(ident)
                candidates.append((string, lefts, rights))
        string, lefts, rights = _pick_repeat(candidates, policy, tb_key, script)
        v = next_var
        next_var += 1
        if len(string) == 2:
            idx.replace_pair(string[0], string[1], v)
        else:
            occs = []
            prev_end = -1
            for i, j in zip(lefts, rights):
                if i > prev_end:
                    occs.append((i, j))
                    prev_end = j
            idx.replace_occurrences(occs, string, v)
        body.append(string)
    grammar = make_grammar(terminal_values, body, idx.active_sequence(), "naive-mr")
    return grammar


def _contains_pair(string: tuple[int, ...], pair: tuple[int, int]) -> bool:
    return any((string[i], string[i + 1]) == pair for i in range(len(string) - 1))


def _pick_repeat(candidates, policy, tb_key, script):
    # tie chain: policy-specific filter, then first occurrence, then longest
    pool = candidates
    if policy == "lexicographic-min":
        return min(candidates, key=lambda c: c[0])
    if policy == "prefer" and tb_key is not None:
        hits = [c for c in candidates if _contains_pair(c[0], tb_key)]
        if hits:
            pool = hits
    elif policy == "defer" and tb_key is not None:
        rest = [c for c in candidates if not _contains_pair(c[0], tb_key)]
        if rest:
            pool = rest
    elif policy == "scripted" and script:
        wanted = script.popleft()
        hits = [c for c in candidates if _contains_pair(c[0], wanted)]
        if hits:
            pool = hits
    return min(pool, key=lambda c: (c[1][0], -len(c[0])))
