"""Deterministic text generators: adversarial constructions and synthetic corpora.

All generators are pure functions of their parameters.  Symbols are emitted as
non-negative ints (32-bit safe); the size-difference construction needs far
more than 256 distinct symbols, which is why texts travel in the ``.sym``
container rather than as bytes.
"""

from __future__ import annotations

_M64 = (1 << 64) - 1
# xorshift64* constants: shifts 12/25/27, output multiplier below, and a
# splitmix-style seeding step so that seed 0 is usable.
_XS_MULT = 0x2545F4914F6CDD1D
_SEED_MULT = 0x9E3779B97F4A7C15
_SEED_ADD = 0x6A09E667F3BCC909


def gen_gsdrp(f: int) -> tuple[int, ...]:
    """Text of length 6f^2 - 2f on which tie-breaking swings the grammar size.

    Layout: a base block of f groups ``l_i x y r_i``, then f-1 copies of
    ``#l_1 x # l_2 x ... # l_f x``, then f-1 copies of ``# y r_1 ... # y r_f``,
    where every ``#`` is a globally fresh symbol.  The pairs ``x y``, each
    ``l_i x`` and each ``y r_i`` then all occur exactly f times, and replacing
    ``x y`` first or last changes the final size by exactly f + 2.

    Symbol ids: x=0, y=1, l_i=2..f+1, r_i=f+2..2f+1, fresh symbols from 2f+2.
    """
    if f < 2:
        raise ValueError("f must be at least 2")
    x, y = 0, 1
    ls = [2 + i for i in range(f)]
    rs = [2 + f + i for i in range(f)]
    fresh = 2 + 2 * f
    out: list[int] = []
    for i in range(f):
        out.extend((ls[i], x, y, rs[i]))
    for _ in range(f - 1):
        for i in range(f):
            out.append(fresh)
            fresh += 1
            out.extend((ls[i], x))
    for _ in range(f - 1):
        for i in range(f):
            out.append(fresh)
            fresh += 1
            out.extend((y, rs[i]))
    assert len(out) == 6 * f * f - 2 * f
    return tuple(out)


def gen_power(u: tuple[int, ...] | list[int], w: tuple[int, ...] | list[int], m: int) -> tuple[int, ...]:
    """The repeat-power text (u w)^(2^(m+1) - 1) u over distinct symbols.

    Requires |u| = 1 and all symbols of u and w pairwise distinct; the whole
    text then has a single most frequent maximal repeat, u w u, which overlaps
    itself at every join.
    """
    u = tuple(u)
    w = tuple(w)
    if m < 1:
        raise ValueError("m must be at least 1")
    if len(u) != 1:
        raise ValueError("u must be a single symbol")
    if len(set(u + w)) != 1 + len(w):
        raise ValueError("symbols of u and w must be distinct")
    reps = (1 << (m + 1)) - 1
    return (u + w) * reps + u


def gen_fibonacci(k: int) -> tuple[int, ...]:
    """k-th Fibonacci string over {a, b}: F1 = b, F2 = a, Fk = F(k-1) + F(k-2)."""
    if k < 1:
        raise ValueError("k must be at least 1")
    a, b = ord("a"), ord("b")
    if k == 1:
        return (b,)
    prev, cur = (b,), (a,)
    for _ in range(k - 2):
        prev, cur = cur, cur + prev
    return cur


def gen_repetitive(copies: int, patterns: int, patlen: int, sigma: int, seed: int) -> tuple[int, ...]:
    """``copies`` repetitions of a block of ``patterns`` random strings of length ``patlen``.

    Symbols are drawn from 0..sigma-1 by an xorshift64* generator (shifts
    12/25/27, multiplier 0x2545F4914F6CDD1D); the state is seeded with
    ``seed * 0x9E3779B97F4A7C15 + 0x6A09E667F3BCC909`` so byte-identical output
    only depends on the arguments.  Output length is copies*patterns*patlen.
    """
    if min(copies, patterns, patlen, sigma) < 1:
        raise ValueError("all parameters must be positive")
    state = (seed * _SEED_MULT + _SEED_ADD) & _M64
    if state == 0:
        state = _SEED_ADD
    block = []
    for _ in range(patterns * patlen):
        state ^= (state >> 12)
        state = (state ^ (state << 25)) & _M64
        state ^= (state >> 27)
        block.append((((state * _XS_MULT) & _M64) >> 32) % sigma)
    return tuple(block) * copies
