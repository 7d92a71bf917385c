"""Symbols, rules, grammars, size accounting, expansion, and sequence isomorphism.

A grammar here is a straight-line program: every variable has exactly one
rule, rules only reference strictly earlier variables, and the start rule is
the last one.  The first ``alphabet_size`` rules are terminal rules; variable
``i < alphabet_size`` derives the single terminal with code ``i``, and
``terminals[i]`` holds the original symbol value behind that code.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Hashable, Iterable, Sequence

TERMINAL = "terminal"
VARIABLE = "variable"


@dataclass(frozen=True, slots=True)
class Symbol:
    kind: str
    id: int


def term(i: int) -> Symbol:
    return Symbol(TERMINAL, i)


def var(i: int) -> Symbol:
    return Symbol(VARIABLE, i)


@dataclass(frozen=True, slots=True)
class Rule:
    lhs: int
    rhs: tuple[Symbol, ...]


@dataclass(frozen=True)
class Grammar:
    """A deterministic acyclic grammar deriving exactly one string.

    ``rules[i].lhs == i`` for a valid grammar; ``start`` is the id of the
    start rule (always the last rule in compressor output).  ``algo`` tags
    which compressor produced it ("repair", "mr", or "naive-mr").
    """

    alphabet_size: int
    rules: tuple[Rule, ...]
    start: int
    terminals: tuple[int, ...]
    algo: str = "repair"


class SizeMetric(Enum):
    WITH_TERMINAL_RULES = "with-terminal-rules"
    WITHOUT_TERMINAL_RULES = "without-terminal-rules"


@dataclass(frozen=True)
class GrammarStats:
    """The four per-grammar numbers reported by the stats table.

    ``rule_count_excl_terminals`` counts rules other than terminal rules and
    the start rule.  ``total_size`` depends on the chosen metric: with
    terminal rules it adds one per alphabet symbol.
    """

    rule_count_excl_terminals: int
    rhs_total_excl_start_excl_terminals: int
    start_len: int
    total_size: int


class GrammarError(ValueError):
    """Raised when a grammar violates a structural invariant."""

    def __init__(self, reason: str, message: str):
        super().__init__(f"{reason}: {message}")
        self.reason = reason


def validate(g: Grammar) -> None:
    """Check every structural invariant; raise GrammarError at the first violation."""
    k = g.alphabet_size
    if k < 0:
        raise GrammarError("alphabet", "alphabet_size must be non-negative")
    if len(g.terminals) != k:
        raise GrammarError("alphabet", f"terminal table has {len(g.terminals)} entries, expected {k}")
    if len(set(g.terminals)) != k:
        raise GrammarError("alphabet", "terminal table has duplicate values")
    if not g.rules:
        raise GrammarError("start", "grammar has no rules")
    seen: set[int] = set()
    for idx, rule in enumerate(g.rules):
        if rule.lhs in seen:
            raise GrammarError("nondeterministic", f"two rules with lhs v_{rule.lhs}")
        seen.add(rule.lhs)
        if rule.lhs != idx:
            raise GrammarError("ordering", f"rule at position {idx} has lhs v_{rule.lhs}")
        if not rule.rhs:
            raise GrammarError("empty-rhs", f"rule v_{idx} has empty right-hand side")
        if idx < k:
            if rule.rhs != (Symbol(TERMINAL, idx),):
                raise GrammarError("terminal-rule", f"rule v_{idx} must derive terminal {idx} only")
            continue
        for s in rule.rhs:
            if s.kind == TERMINAL:
                raise GrammarError(
                    "terminal-placement",
                    f"rule v_{idx} references terminal {s.id} directly; only terminal rules may",
                )
            if s.id >= idx:
                raise GrammarError("ordering", f"rule v_{idx} references v_{s.id}, which is not earlier")
            if s.id < 0:
                raise GrammarError("ordering", f"rule v_{idx} references negative id {s.id}")
    if g.start != len(g.rules) - 1:
        raise GrammarError("start", f"start must be the last rule, got v_{g.start}")
    if g.start < k and k != 1:
        raise GrammarError("start", "start rule cannot be a terminal rule")


def grammar_size(g: Grammar, metric: SizeMetric = SizeMetric.WITH_TERMINAL_RULES) -> int:
    """Total length of all rule right-hand sides.

    Terminal rules contribute one symbol each and are counted only under
    ``WITH_TERMINAL_RULES``.
    """
    validate(g)
    body = sum(len(r.rhs) for r in g.rules[g.alphabet_size:])
    if metric is SizeMetric.WITH_TERMINAL_RULES:
        return body + g.alphabet_size
    return body


def grammar_stats(g: Grammar, metric: SizeMetric = SizeMetric.WITH_TERMINAL_RULES) -> GrammarStats:
    validate(g)
    k = g.alphabet_size
    body_rules = g.rules[k:-1]
    rhs_total = sum(len(r.rhs) for r in body_rules)
    start_len = len(g.rules[-1].rhs)
    total = rhs_total + start_len + (k if metric is SizeMetric.WITH_TERMINAL_RULES else 0)
    return GrammarStats(
        rule_count_excl_terminals=len(body_rules),
        rhs_total_excl_start_excl_terminals=rhs_total,
        start_len=start_len,
        total_size=total,
    )


def expand(g: Grammar, v: int) -> tuple[int, ...]:
    """Fully derive variable ``v`` down to terminal codes.

    Iterative (explicit stack), so deeply chained rules cannot hit the
    recursion limit.
    """
    if not 0 <= v < len(g.rules):
        raise GrammarError("ordering", f"no rule for v_{v}")
    out: list[int] = []
    stack: list[Symbol] = [Symbol(VARIABLE, v)]
    rules = g.rules
    while stack:
        s = stack.pop()
        if s.kind == TERMINAL:
            out.append(s.id)
        else:
            stack.extend(reversed(rules[s.id].rhs))
    return tuple(out)


def decompressed(g: Grammar) -> tuple[int, ...]:
    """Expand the start rule and map terminal codes back to original values."""
    table = g.terminals
    return tuple(table[c] for c in expand(g, g.start))


def isomorphic(t1: Sequence[Hashable], t2: Sequence[Hashable]) -> bool:
    """True iff the sequences are equal up to a bijective renaming of symbols.

    Decided by comparing first-occurrence patterns: positions i, j carry equal
    symbols in t1 exactly when they do in t2.
    """
    if len(t1) != len(t2):
        return False
    return _pattern(t1) == _pattern(t2)


def _pattern(t: Sequence[Hashable]) -> list[int]:
    first: dict[Hashable, int] = {}
    out = []
    for s in t:
        out.append(first.setdefault(s, len(first)))
    return out


def intern_terminals(text: Sequence[int]) -> tuple[tuple[int, ...], Sequence[int]]:
    """Map a raw symbol stream to terminal codes 0..k-1 in first-occurrence order.

    Returns (terminal value table, recoded text).
    """
    if len(text) >= 1 << 12:
        import numpy as np

        arr = np.asarray(text, dtype=np.int64)
        uniq, first, inv = np.unique(arr, return_index=True, return_inverse=True)
        by_first = np.argsort(first, kind="stable")
        codes = np.empty(len(uniq), dtype=np.int64)
        codes[by_first] = np.arange(len(uniq))
        return tuple(uniq[by_first].tolist()), codes[inv]
    table: dict[int, int] = {}
    ids = []
    for s in text:
        code = table.get(s)
        if code is None:
            code = len(table)
            table[s] = code
        ids.append(code)
    return tuple(table), ids


def make_grammar(
    terminal_values: tuple[int, ...],
    body: Iterable[Sequence[int]],
    start_rhs: Sequence[int],
    algo: str,
) -> Grammar:
    """Assemble a Grammar from id-space rule bodies.

    ``body`` holds the right-hand sides of the non-terminal rules in creation
    order; ids below ``len(terminal_values)`` reference terminal rules.
    """
    k = len(terminal_values)
    rules = [Rule(i, (Symbol(TERMINAL, i),)) for i in range(k)]
    for rhs in body:
        rules.append(Rule(len(rules), tuple(Symbol(VARIABLE, i) for i in rhs)))
    rules.append(Rule(len(rules), tuple(Symbol(VARIABLE, i) for i in start_rhs)))
    return Grammar(
        alphabet_size=k,
        rules=tuple(rules),
        start=len(rules) - 1,
        terminals=terminal_values,
        algo=algo,
    )
