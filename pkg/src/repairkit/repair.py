"""RePair: iterative replacement of the most frequent adjacent pair.

Includes a pluggable tie-break policy for choosing among equally frequent
pairs, an exhaustive enumerator over all tie-break choice sequences, and a
replay mode that follows the maximal-repeat selection order recorded by an
MR-RePair run on the same text.
"""

from __future__ import annotations

import bisect
from collections import deque
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Sequence

from .core import Grammar, intern_terminals, make_grammar
from .pairmodel import PairIndex, key_pair, pair_key

if TYPE_CHECKING:
    from .mrrepair import MRTrace


@dataclass(frozen=True)
class TieBreak:
    """Policy for choosing among equally frequent pairs.

    ``pair`` (for prefer/defer) and the ``script`` entries are given in raw
    input symbol values; they are mapped to terminal codes when a compression
    run starts, so they can only name terminal pairs.  A scripted policy
    consumes one entry per step, using it when it is currently most frequent
    and falling back to first occurrence otherwise (also once exhausted).
    """

    policy: str = "first-occurrence"
    pair: tuple[int, int] | None = None
    script: tuple[tuple[int, int], ...] = ()

    @classmethod
    def first_occurrence(cls) -> "TieBreak":
        return cls()

    @classmethod
    def lexicographic(cls) -> "TieBreak":
        return cls(policy="lexicographic-min")

    @classmethod
    def prefer(cls, pair: tuple[int, int]) -> "TieBreak":
        return cls(policy="prefer", pair=pair)

    @classmethod
    def defer(cls, pair: tuple[int, int]) -> "TieBreak":
        return cls(policy="defer", pair=pair)

    @classmethod
    def scripted(cls, pairs: Sequence[tuple[int, int]]) -> "TieBreak":
        return cls(policy="scripted", script=tuple(tuple(p) for p in pairs))


@dataclass(frozen=True)
class RunStep:
    pair: tuple[int, int]
    freq: int
    replaced: int
    variable: int


@dataclass(frozen=True)
class RunLog:
    steps: tuple[RunStep, ...]

    def phases(self) -> list[list[RunStep]]:
        """Steps grouped by maximal runs of equal frequency (non-increasing)."""
        out: list[list[RunStep]] = []
        for step in self.steps:
            if out and out[-1][0].freq == step.freq:
                out[-1].append(step)
            else:
                out.append([step])
        return out


class _TieState:
    """Per-run tie-break state with pair names resolved to terminal codes."""

    def __init__(self, tb: TieBreak, raw_to_code: dict[int, int]):
        self.policy = tb.policy

        def resolve(p):
            if p is None:
                return None
            a, b = p
            if a in raw_to_code and b in raw_to_code:
                return pair_key(raw_to_code[a], raw_to_code[b])
            return None

        self.key = resolve(tb.pair)
        self.script = deque(resolve(p) for p in tb.script)

    def choose(self, idx: PairIndex) -> int:
        policy = self.policy
        if policy == "first-occurrence":
            key = idx.leftmost_max_key()
            if key is None:
                raise RuntimeError("no live occurrence among most frequent pairs")
            return key
        keys = idx.most_frequent_keys()
        if policy == "lexicographic-min":
            return min(keys, key=key_pair)
        if policy == "prefer" and self.key in keys:
            return self.key
        if policy == "defer" and self.key in keys and len(keys) > 1:
            keys = [k for k in keys if k != self.key]
        elif policy == "scripted" and self.script:
            wanted = self.script.popleft()
            if wanted in keys:
                return wanted
        return _leftmost_key(idx, keys)


def _leftmost_key(idx: PairIndex, keys: list[int]) -> int:
    best_key = -1
    best_pos = None
    for k in keys:
        pos = idx.leftmost(k)
        if pos is not None and (best_pos is None or pos < best_pos):
            best_pos, best_key = pos, k
    if best_pos is None:
        raise RuntimeError("no live occurrence among most frequent pairs")
    return best_key


def repair_compress(t: Sequence[int], tb: TieBreak = TieBreak()) -> tuple[Grammar, RunLog]:
    """Compress a non-empty terminal stream; every created rule has arity 2."""
    if len(t) == 0:
        raise ValueError("cannot compress an empty text")
    terminal_values, ids = intern_terminals(t)
    raw_to_code = {v: i for i, v in enumerate(terminal_values)}
    state = _TieState(tb, raw_to_code)
    idx = PairIndex(ids)
    k = len(terminal_values)
    next_var = k
    body: list[tuple[int, int]] = []
    steps: list[RunStep] = []
    while True:
        f = idx.max_nontrivial()
        if f < 2:
            break
        key = state.choose(idx)
        a, b = key_pair(key)
        v = next_var
        next_var += 1
        replaced, _ = idx.replace_pair(a, b, v)
        body.append((a, b))
        steps.append(RunStep((a, b), f, replaced, v))
    grammar = make_grammar(terminal_values, body, idx.active_sequence(), "repair")
    return grammar, RunLog(tuple(steps))


class EnumerationLimitError(RuntimeError):
    """Raised when the tie-break branch tree exceeds the caller's budget."""

    def __init__(self, count: int, partial: tuple[Grammar, ...]):
        super().__init__(f"branch limit exceeded after {count} completed runs")
        self.count = count
        self.partial = partial


def repair_enumerate(t: Sequence[int], branch_limit: int = 10_000) -> list[Grammar]:
    """All distinct grammars reachable by any most-frequent-pair choice order.

    Grammars are compared with variables numbered in creation order, the form
    in which alternative runs are counted; two runs that build the same rules
    in the same order collapse to one entry.
    """
    if len(t) == 0:
        raise ValueError("cannot compress an empty text")
    terminal_values, ids = intern_terminals(t)
    results: dict[Grammar, None] = {}
    leaves = 0

    def walk(idx: PairIndex, body: list[tuple[int, int]], next_var: int) -> None:
        nonlocal leaves
        f = idx.max_nontrivial()
        if f < 2:
            leaves += 1
            if leaves > branch_limit:
                raise EnumerationLimitError(leaves - 1, tuple(results))
            g = make_grammar(terminal_values, body, idx.active_sequence(), "repair")
            results[g] = None
            return
        keys = idx.most_frequent_keys()
        ranked = sorted((idx.leftmost(k), k) for k in keys)
        for _, key in ranked:
            a, b = key_pair(key)
            branch = idx.clone()
            branch.replace_pair(a, b, next_var)
            walk(branch, body + [(a, b)], next_var + 1)

    walk(PairIndex(ids), [], len(terminal_values))
    return list(results)


class TraceMismatchError(ValueError):
    """The supplied selection trace is inconsistent with the text."""


def repair_following_trace(t: Sequence[int], trace: "MRTrace") -> tuple[Grammar, RunLog]:
    """Run RePair constrained to the maximal-repeat selection order of a trace.

    At each step the chosen pair is the leftmost most-frequent pair having an
    occurrence inside the recorded replacement intervals of the earliest
    pending selection of the current phase, so the repeats are consolidated in
    exactly the traced order.
    """
    if len(t) == 0:
        raise ValueError("cannot compress an empty text")
    terminal_values, ids = intern_terminals(t)
    idx = PairIndex(ids)
    n = idx.n
    next_var = len(terminal_values)
    body: list[tuple[int, int]] = []
    steps: list[RunStep] = []

    def consolidated(intervals: Sequence[tuple[int, int]]) -> bool:
        for a, b in intervals:
            if not idx.alive[a]:
                return False
            rn = idx.nxt[a]
            end = rn - 1 if rn != -1 else n - 1
            if end != b:
                return False
        return True

    for phase in trace.phases:
        pending = deque(phase.selections)
        while pending:
            while pending and consolidated(pending[0].intervals):
                pending.popleft()
            if not pending:
                break
            f = idx.max_nontrivial()
            if f != phase.freq:
                raise TraceMismatchError(
                    f"expected max frequency {phase.freq}, found {f} with selections pending"
                )
            intervals = pending[0].intervals
            starts = [a for a, _ in intervals]
            key, pos = None, None
            for cand in idx.most_frequent_keys():
                for i in idx.occurrence_starts(cand):
                    j = idx.nxt[i]
                    rn = idx.nxt[j]
                    end = rn - 1 if rn != -1 else n - 1
                    slot = bisect.bisect_right(starts, i) - 1
                    if slot >= 0 and end <= intervals[slot][1]:
                        if pos is None or i < pos:
                            key, pos = cand, i
                        break
            if key is None:
                raise TraceMismatchError("no most-frequent pair occurs inside the pending selection")
            a, b = key_pair(key)
            v = next_var
            next_var += 1
            replaced, _ = idx.replace_pair(a, b, v)
            body.append((a, b))
            steps.append(RunStep((a, b), f, replaced, v))
    if idx.max_nontrivial() >= 2:
        raise TraceMismatchError("trace exhausted while repeated pairs remain")
    grammar = make_grammar(terminal_values, body, idx.active_sequence(), "repair")
    return grammar, RunLog(tuple(steps))
