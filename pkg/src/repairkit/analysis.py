"""Brute-force oracles and executable checkers for the repeat-structure claims.

Everything here is desk-scale and deliberately independent of the linked-cell
compressor state: the repeat oracle works from a suffix array, and the phase
checkers replay pair replacement on plain lists.  That independence is the
point; the fast paths are tested against these.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .core import Grammar, SizeMetric, grammar_size, intern_terminals, isomorphic, make_grammar
from .generators import gen_gsdrp
from .mrrepair import MaxRepeat
from .repair import EnumerationLimitError, TieBreak, repair_compress


class AnalysisCapError(ValueError):
    pass


class AnalysisError(RuntimeError):
    pass


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    status: str  # "ok" | "skipped" | "failed"
    detail: str = ""


# -- maximal repeat oracle ----------------------------------------------------

def brute_maximal_repeats(t: Sequence[int], cap: int = 100_000) -> list[MaxRepeat]:
    """Every maximal repeat of length >= 2, most frequent first.

    A substring qualifies when it occurs at least twice (overlaps counted) and
    every one-symbol extension is strictly less frequent; the text boundary
    blocks extension.  Computed from a suffix array with an LCP-interval scan;
    exposed occurrence lists are ascending start offsets.
    """
    n = len(t)
    if n > cap:
        raise AnalysisCapError(f"text length {n} exceeds oracle cap {cap}")
    if n < 2:
        return []
    t = tuple(t)
    sa = _suffix_array(t)
    lcp = _lcp_kasai(t, sa)
    out: list[MaxRepeat] = []
    for ell, lb, rb in _lcp_intervals(lcp, n):
        if ell < 2:
            continue
        occs = sorted(sa[lb:rb + 1])
        if occs[0] == 0 or len({t[p - 1] for p in occs}) > 1:
            start = occs[0]
            out.append(MaxRepeat(string=t[start:start + ell], freq=len(occs), occurrences=tuple(occs)))
    out.sort(key=lambda r: (-r.freq, r.occurrences[0]))
    return out


def _suffix_array(t: tuple) -> list[int]:
    n = len(t)
    order = {v: i for i, v in enumerate(sorted(set(t)))}
    rank = [order[c] for c in t]
    sa = list(range(n))
    d = 1
    while True:
        def key(i, _r=rank, _d=d, _n=n):
            return (_r[i], _r[i + _d] if i + _d < _n else -1)

        sa.sort(key=key)
        new = [0] * n
        for pos in range(1, n):
            new[sa[pos]] = new[sa[pos - 1]] + (key(sa[pos]) != key(sa[pos - 1]))
        rank = new
        if rank[sa[-1]] == n - 1:
            break
        d *= 2
    return sa


def _lcp_kasai(t: tuple, sa: list[int]) -> list[int]:
    n = len(t)
    isa = [0] * n
    for pos, suf in enumerate(sa):
        isa[suf] = pos
    lcp = [0] * n
    h = 0
    for i in range(n):
        if isa[i] > 0:
            j = sa[isa[i] - 1]
            while i + h < n and j + h < n and t[i + h] == t[j + h]:
                h += 1
            lcp[isa[i]] = h
            if h:
                h -= 1
        else:
            h = 0
    return lcp


def _lcp_intervals(lcp: list[int], n: int):
    """Yield (depth, lb, rb): suffix ranks lb..rb share a prefix of that depth."""
    stack: list[tuple[int, int]] = []
    for i in range(1, n + 1):
        cur = lcp[i] if i < n else 0
        lb = i - 1
        while stack and stack[-1][0] > cur:
            ell, left = stack.pop()
            yield ell, left, i - 1
            lb = left
        if cur > 0 and (not stack or stack[-1][0] < cur):
            stack.append((cur, lb))


# -- pair / repeat correspondence checks --------------------------------------

def _pair_in_string(string: Sequence[int], pair: tuple[int, int]) -> int:
    return sum(1 for i in range(len(string) - 1) if (string[i], string[i + 1]) == pair)


def check_pair_mr_bijection(t: Sequence[int]) -> CheckResult:
    """Most frequent pairs and most frequent maximal repeats determine each other.

    Verifies that every most frequent pair occurs exactly once in exactly one
    most frequent maximal repeat, that every pair inside such a repeat is most
    frequent, and that the two maximum frequencies agree.  Vacuously ok when
    nothing repeats.
    """
    t = tuple(t)
    pair_counts = Counter(zip(t, t[1:]))
    if not pair_counts:
        return CheckResult(True, "ok", "no pairs")
    f = max(pair_counts.values())
    if f < 2:
        return CheckResult(True, "ok", "no repeated pair")
    mrs = brute_maximal_repeats(t)
    if not mrs:
        return CheckResult(False, "failed", "repeated pair but no maximal repeat")
    if mrs[0].freq != f:
        return CheckResult(False, "failed", f"max pair freq {f} != max repeat freq {mrs[0].freq}")
    top = [r for r in mrs if r.freq == f]
    for pair, c in pair_counts.items():
        if c != f:
            continue
        hits = [(r, _pair_in_string(r.string, pair)) for r in top]
        containing = [(r, k) for r, k in hits if k]
        if len(containing) != 1 or containing[0][1] != 1:
            return CheckResult(False, "failed", f"pair {pair} occurs in {containing!r}")
    for r in top:
        for i in range(len(r.string) - 1):
            q = (r.string[i], r.string[i + 1])
            if pair_counts[q] != f:
                return CheckResult(
                    False, "failed", f"pair {q} inside repeat {r.string!r} has frequency {pair_counts[q]}"
                )
    return CheckResult(True, "ok")


def check_overlap_bound(t: Sequence[int]) -> CheckResult:
    """No two occurrences of most frequent maximal repeats overlap in more than one position."""
    mrs = brute_maximal_repeats(t)
    if not mrs:
        return CheckResult(True, "ok", "no repeats")
    f = mrs[0].freq
    spans = []
    for r in mrs:
        if r.freq != f:
            continue
        L = len(r.string)
        spans.extend((s, s + L - 1) for s in r.occurrences)
    spans.sort()
    for i, (s1, e1) in enumerate(spans):
        for s2, e2 in spans[i + 1:]:
            if s2 > e1:
                break
            if (s1, e1) == (s2, e2):
                continue
            overlap = min(e1, e2) - s2 + 1
            if overlap > 1:
                return CheckResult(False, "failed", f"occurrences {(s1, e1)} and {(s2, e2)} overlap by {overlap}")
    return CheckResult(True, "ok")


# -- plain replay machine ------------------------------------------------------

class _Machine:
    """Pair replacement over plain lists, tracking original spans per symbol."""

    __slots__ = ("syms", "lo", "hi")

    def __init__(self, ids: Sequence[int]):
        self.syms = list(ids)
        self.lo = list(range(len(ids)))
        self.hi = list(range(len(ids)))

    def clone(self) -> "_Machine":
        other = object.__new__(_Machine)
        other.syms = list(self.syms)
        other.lo = list(self.lo)
        other.hi = list(self.hi)
        return other

    def max_freq(self) -> int:
        c = Counter(zip(self.syms, self.syms[1:]))
        return max(c.values(), default=0)

    def tied_pairs(self, f: int) -> list[tuple[int, int]]:
        c = Counter(zip(self.syms, self.syms[1:]))
        seen: dict[tuple[int, int], int] = {}
        for i in range(len(self.syms) - 1):
            p = (self.syms[i], self.syms[i + 1])
            if c[p] == f and p not in seen:
                seen[p] = i
        return sorted(seen, key=seen.get)

    def replace(self, pair: tuple[int, int], vid: int) -> int:
        a, b = pair
        syms, lo, hi = self.syms, self.lo, self.hi
        ns, nl, nh = [], [], []
        i, n, replaced = 0, len(syms), 0
        while i < n:
            if i + 1 < n and syms[i] == a and syms[i + 1] == b:
                ns.append(vid)
                nl.append(lo[i])
                nh.append(hi[i + 1])
                i += 2
                replaced += 1
            else:
                ns.append(syms[i])
                nl.append(lo[i])
                nh.append(hi[i])
                i += 1
        self.syms, self.lo, self.hi = ns, nl, nh
        return replaced


@dataclass(frozen=True)
class _PhaseTop:
    """Most frequent maximal repeats of a phase-start text, in original spans."""

    strings: tuple[tuple[int, ...], ...]
    occ_spans: tuple[tuple[tuple[int, int], ...], ...]


def _phase_top(machine: _Machine, f: int) -> _PhaseTop:
    mrs = brute_maximal_repeats(machine.syms)
    top = [r for r in mrs if r.freq == f]
    spans = []
    for r in top:
        L = len(r.string)
        spans.append(tuple((machine.lo[p], machine.hi[p + L - 1]) for p in r.occurrences))
    return _PhaseTop(tuple(r.string for r in top), tuple(spans))


def _consolidations(machine: _Machine, top: _PhaseTop):
    """Per repeat: the (left, right) original-width clipping of the variable that
    consolidated it at phase end, or None if it never consolidated; raises if
    occurrences disagree."""
    out = []
    symbol_spans = list(zip(machine.lo, machine.hi))
    for strings, spans in zip(top.strings, top.occ_spans):
        rel: object = "unset"
        for A, B in spans:
            best = None
            for lo, hi in symbol_spans:
                if lo >= A and hi <= B and hi > lo:
                    width = hi - lo
                    if best is None or width > best[0] or (width == best[0] and lo < best[1]):
                        best = (width, lo, hi)
            cur = None if best is None else (best[1] - A, B - best[2])
            if rel == "unset":
                rel = cur
            elif cur != rel:
                raise AnalysisError(
                    f"repeat {strings!r} consolidated inconsistently: {rel!r} vs {cur!r}"
                )
        out.append(rel if rel != "unset" else None)
    return out


def _reference_text(ids: Sequence[int], top: _PhaseTop, clips) -> list[int]:
    """The phase-start text with each consolidated repeat replaced by one fresh symbol."""
    spans = []
    for mi, (occ_spans, clip) in enumerate(zip(top.occ_spans, clips)):
        if clip is None:
            continue
        cl, cr = clip
        for A, B in occ_spans:
            spans.append((A + cl, B - cr, mi))
    spans.sort()
    for (s1, e1, _), (s2, _, _) in zip(spans, spans[1:]):
        if s2 <= e1:
            raise AnalysisError(f"consolidated spans overlap at {s2}")
    out: list[int] = []
    i, si = 0, 0
    n = len(ids)
    while i < n:
        if si < len(spans) and spans[si][0] == i:
            out.append(-1 - spans[si][2])
            i = spans[si][1] + 1
            si += 1
        else:
            out.append(ids[i])
            i += 1
    return out


def _phase_leaves(ids: Sequence[int], f: int, branch_limit: int) -> list[_Machine]:
    """All end-of-phase machines reachable by any tie order, capped by branch_limit."""
    leaves: list[_Machine] = []
    fresh = [min(min(ids, default=0), 0) - 10]

    def walk(m: _Machine) -> None:
        if m.max_freq() < f:
            leaves.append(m)
            if len(leaves) > branch_limit:
                raise EnumerationLimitError(len(leaves) - 1, ())
            return
        for pair in m.tied_pairs(f):
            branch = m.clone()
            fresh[0] -= 1
            branch.replace(pair, fresh[0])
            walk(branch)

    walk(_Machine(ids))
    return leaves


def _self_overlapping(top: _PhaseTop) -> tuple[int, ...] | None:
    for strings, spans in zip(top.strings, top.occ_spans):
        for (s1, e1), (s2, _e2) in zip(spans, spans[1:]):
            if s2 <= e1:
                return strings
    return None


def check_phase_isomorphism(t: Sequence[int], branch_limit: int = 3000) -> CheckResult:
    """Replacement-order independence of a phase, against whole-repeat substitution.

    For the first phase: under every tie order, the text left after all
    maximum-frequency pairs are gone must be isomorphic to the phase-start
    text with each most frequent maximal repeat consolidated to one fresh
    symbol (clipped exactly where an earlier repeat won an overlap).  Requires
    that no most frequent maximal repeat overlap itself; otherwise the check
    is skipped.  Later phases are re-checked the same way along the
    first-occurrence continuation.
    """
    seq = tuple(t)
    phase = 0
    while True:
        m0 = _Machine(seq)
        f = m0.max_freq()
        if f < 2:
            return CheckResult(True, "ok", f"checked {phase} phase(s)")
        top = _phase_top(m0, f)
        bad = _self_overlapping(top)
        if bad is not None:
            if phase == 0:
                return CheckResult(True, "skipped", f"repeat {bad!r} overlaps itself")
            return CheckResult(True, "ok", f"checked {phase} phase(s); later phase skipped")
        try:
            leaves = _phase_leaves(seq, f, branch_limit)
        except EnumerationLimitError:
            if phase == 0:
                return CheckResult(True, "skipped", "tie-order branch limit exceeded")
            return CheckResult(True, "ok", f"checked {phase} phase(s); later phase over budget")
        for leaf in leaves:
            try:
                clips = _consolidations(leaf, top)
                ref = _reference_text(seq, top, clips)
            except AnalysisError as exc:
                return CheckResult(False, "failed", str(exc))
            if not isomorphic(leaf.syms, ref):
                return CheckResult(
                    False, "failed",
                    f"phase {phase}: tie order gave {leaf.syms!r}, repeat substitution gave {ref!r}",
                )
        # continue along the deterministic first-occurrence run
        m = _Machine(seq)
        fresh = min(min(seq), -1_000_000) - 1
        while m.max_freq() == f:
            m.replace(m.tied_pairs(m.max_freq())[0], fresh)
            fresh -= 1
        seq = tuple(m.syms)
        phase += 1


# -- selection-order partition -------------------------------------------------

def partition_by_mr_order(
    t: Sequence[int], branch_limit: int = 10_000
) -> dict[tuple, list[Grammar]]:
    """Group every tie-break outcome of pair replacement by its selection order.

    The key records, phase by phase, which most frequent maximal repeats were
    consolidated and how they were clipped; outcomes in one class consolidated
    the same repeats the same way.  Returns class key -> grammars.
    """
    if len(t) == 0:
        raise ValueError("cannot analyse an empty text")
    terminal_values, ids = intern_terminals(t)
    k = len(terminal_values)
    classes: dict[tuple, dict[Grammar, None]] = {}
    leaves = 0

    def close_phase(machine: _Machine, top: _PhaseTop):
        clips = _consolidations(machine, top)
        return tuple(
            (top.occ_spans[i], clips[i]) for i in range(len(top.strings))
        )

    def walk(m: _Machine, body, next_var, phase_keys, cur_top, cur_f):
        nonlocal leaves
        f = m.max_freq()
        if cur_f is not None and f < cur_f:
            phase_keys = phase_keys + (close_phase(m, cur_top),)
            cur_top, cur_f = None, None
        if f < 2:
            leaves += 1
            if leaves > branch_limit:
                raise EnumerationLimitError(leaves - 1, ())
            g = make_grammar(terminal_values, body, list(m.syms), "repair")
            classes.setdefault(phase_keys, {})[g] = None
            return
        if cur_f is None:
            cur_f = f
            cur_top = _phase_top(m, f)
        for pair in m.tied_pairs(f):
            branch = m.clone()
            branch.replace(pair, next_var)
            walk(branch, body + [pair], next_var + 1, phase_keys, cur_top, cur_f)

    walk(_Machine(ids), [], k, (), None, None)
    return {key: list(gs) for key, gs in classes.items()}


# -- greatest size difference ---------------------------------------------------

@dataclass(frozen=True)
class GsdrpReport:
    f: int
    n: int
    g_prefer_xy: int
    g_defer_xy: int
    diff: int
    lower_bound_at_n: float


def gsdrp_lower_bound(n: int) -> float:
    """Lower bound on the greatest size difference achievable on a length-n text."""
    if n < 1:
        raise ValueError("n must be positive")
    return (math.sqrt(6 * n + 1) + 13) / 6


def gsdrp_measure(f: int) -> GsdrpReport:
    """Measure the size swing on the adversarial text for parameter f.

    Runs pair replacement once preferring and once deferring the pair (x, y)
    of the construction, reports both sizes (terminal rules excluded), and
    requires the difference to be exactly f + 2 on a text of length 6f^2 - 2f.
    """
    if f < 3:
        raise ValueError("f must be at least 3")
    t = gen_gsdrp(f)
    n = len(t)
    if n != 6 * f * f - 2 * f:
        raise AnalysisError(f"generator produced length {n}")
    xy = (0, 1)  # symbol ids of x and y in the construction
    g_prefer, _ = repair_compress(t, TieBreak.prefer(xy))
    g_defer, _ = repair_compress(t, TieBreak.defer(xy))
    gp = grammar_size(g_prefer, SizeMetric.WITHOUT_TERMINAL_RULES)
    gd = grammar_size(g_defer, SizeMetric.WITHOUT_TERMINAL_RULES)
    diff = gp - gd
    if diff != f + 2:
        raise AnalysisError(f"size difference {diff}, expected {f + 2}")
    return GsdrpReport(
        f=f, n=n, g_prefer_xy=gp, g_defer_xy=gd, diff=diff,
        lower_bound_at_n=gsdrp_lower_bound(n),
    )
