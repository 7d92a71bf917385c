"""Bit-exact grammar container (.grc) and raw symbol container (.sym).

Grammar container layout, all integers little-endian:

    magic   4 bytes  b"GRCF"
    version 1 byte   = 1
    algo    1 byte   0 = repair, 1 = mr, 2 = naive-mr
    k       u32      alphabet size
    table   k * u32  original symbol value per terminal code
    m       u32      number of non-terminal rules, start rule last
    rules   m times: uvarint arity L, then L uvarint symbol ids

A symbol id below k is a terminal code; id >= k references non-terminal rule
``id - k``, which must already have been read (forward references are a
distinct decode error).  Terminal rules are implicit in the table; decoding
re-materialises them, so decode(encode(g)) == g.  Varints are minimal-length
unsigned LEB128.

Symbol container: magic b"SYMT", u32 count, then count u32 symbol values.
"""

from __future__ import annotations

import struct
from typing import Sequence

from .core import Grammar, Symbol, TERMINAL, VARIABLE, decompressed, make_grammar, validate

GRC_MAGIC = b"GRCF"
GRC_VERSION = 1
SYM_MAGIC = b"SYMT"

ALGO_TAGS = {"repair": 0, "mr": 1, "naive-mr": 2}
TAG_ALGOS = {v: k for k, v in ALGO_TAGS.items()}


class CodecError(ValueError):
    pass


class BadMagicError(CodecError):
    pass


class BadVersionError(CodecError):
    pass


class TruncatedError(CodecError):
    pass


class ForwardReferenceError(CodecError):
    pass


def _write_uvarint(out: bytearray, x: int) -> None:
    while True:
        byte = x & 0x7F
        x >>= 7
        if x:
            out.append(byte | 0x80)
        else:
            out.append(byte)
            return


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, n: int) -> bytes:
        if self.pos + n > len(self.data):
            raise TruncatedError(f"needed {n} bytes at offset {self.pos}")
        chunk = self.data[self.pos:self.pos + n]
        self.pos += n
        return chunk

    def u32(self) -> int:
        return struct.unpack("<I", self.take(4))[0]

    def uvarint(self) -> int:
        shift = 0
        value = 0
        nbytes = 0
        while True:
            byte = self.take(1)[0]
            nbytes += 1
            value |= (byte & 0x7F) << shift
            if not byte & 0x80:
                if nbytes > 1 and byte == 0:
                    raise CodecError(f"non-minimal varint at offset {self.pos - nbytes}")
                return value
            shift += 7
            if shift > 63:
                raise CodecError("varint too long")


def encode(g: Grammar) -> bytes:
    """Serialise a valid grammar; byte-identical for equal grammars."""
    validate(g)
    k = g.alphabet_size
    out = bytearray()
    out += GRC_MAGIC
    out.append(GRC_VERSION)
    out.append(ALGO_TAGS.get(g.algo, 0))
    out += struct.pack("<I", k)
    for value in g.terminals:
        out += struct.pack("<I", value)
    body = g.rules[k:]
    out += struct.pack("<I", len(body))
    for rule in body:
        _write_uvarint(out, len(rule.rhs))
        for s in rule.rhs:
            _write_uvarint(out, s.id)
    return bytes(out)


def decode(b: bytes) -> Grammar:
    """Inverse of encode; malformed input raises a distinct CodecError subclass."""
    r = _Reader(b)
    if r.take(4) != GRC_MAGIC:
        raise BadMagicError("not a grammar container")
    version = r.take(1)[0]
    if version != GRC_VERSION:
        raise BadVersionError(f"unsupported version {version}")
    tag = r.take(1)[0]
    if tag not in TAG_ALGOS:
        raise CodecError(f"unknown algorithm tag {tag}")
    k = r.u32()
    terminals = tuple(r.u32() for _ in range(k))
    m = r.u32()
    if m < 1:
        raise CodecError("grammar has no start rule")
    body: list[list[int]] = []
    for j in range(m):
        arity = r.uvarint()
        if arity < 1:
            raise CodecError(f"rule {j} has arity 0")
        rhs = []
        for _ in range(arity):
            sid = r.uvarint()
            if sid >= k and sid - k >= j:
                raise ForwardReferenceError(f"rule {j} references rule {sid - k}")
            rhs.append(sid)
        body.append(rhs)
    if r.pos != len(b):
        raise CodecError(f"{len(b) - r.pos} trailing bytes")
    g = make_grammar(terminals, body[:-1], body[-1], TAG_ALGOS[tag])
    validate(g)
    return g


def decompress(b: bytes) -> tuple[int, ...]:
    """Decode and fully expand back to the original symbol stream."""
    return decompressed(decode(b))


def sym_encode(symbols: Sequence[int]) -> bytes:
    out = bytearray(SYM_MAGIC)
    out += struct.pack("<I", len(symbols))
    for s in symbols:
        out += struct.pack("<I", s)
    return bytes(out)


def sym_decode(data: bytes) -> tuple[int, ...]:
    r = _Reader(data)
    if r.take(4) != SYM_MAGIC:
        raise BadMagicError("not a symbol container")
    count = r.u32()
    payload = r.take(4 * count)
    if r.pos != len(data):
        raise CodecError(f"{len(data) - r.pos} trailing bytes")
    return tuple(struct.unpack(f"<{count}I", payload)) if count else ()
