"""Deterministic canonical Huffman coding over integer symbol counts."""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .errors import DecodeError, DomainError
from .seqcore import Histogram, Sequence, counts_of


@dataclass(frozen=True)
class CodeBook:
    """Symbol -> codeword (a string of '0'/'1'); only symbols that occur."""

    codewords: dict

    def __getitem__(self, symbol: int) -> str:
        return self.codewords[symbol]

    def __contains__(self, symbol) -> bool:
        return symbol in self.codewords

    def __len__(self) -> int:
        return len(self.codewords)

    def lengths(self) -> dict:
        return {s: len(w) for s, w in self.codewords.items()}

    def items(self):
        return sorted(self.codewords.items())


def code_lengths(counts) -> dict[int, int]:
    """Huffman code length per present symbol (1-based).

    Merges the two nodes with the smallest (weight, smallest contained symbol)
    until one tree remains. A lone symbol gets length 1.
    """
    heap = [(c, s, (s,)) for s, c in enumerate(counts, start=1) if c > 0]
    if not heap:
        raise DomainError("cannot build a code for an all-zero histogram")
    if len(heap) == 1:
        return {heap[0][1]: 1}
    heapq.heapify(heap)
    depth = {s: 0 for _, s, _ in heap}
    while len(heap) > 1:
        w1, s1, leaves1 = heapq.heappop(heap)
        w2, s2, leaves2 = heapq.heappop(heap)
        for s in leaves1 + leaves2:
            depth[s] += 1
        heapq.heappush(heap, (w1 + w2, min(s1, s2), leaves1 + leaves2))
    return depth


def canonical_code(lengths: dict[int, int]) -> CodeBook:
    """Assign codewords in (length, symbol) order."""
    code = 0
    prev = None
    words = {}
    for sym, ln in sorted(lengths.items(), key=lambda kv: (kv[1], kv[0])):
        if prev is not None:
            code = (code + 1) << (ln - prev)
        words[sym] = format(code, f"0{ln}b")
        prev = ln
    return CodeBook(words)


def build_code(hist: Histogram) -> CodeBook:
    return canonical_code(code_lengths(hist.counts))


def encode(seq: Sequence, code: CodeBook) -> str:
    try:
        return "".join(code.codewords[s] for s in seq.symbols)
    except KeyError as exc:
        raise DomainError(f"symbol {exc.args[0]} has no codeword") from None


def decode(bits: str, code: CodeBook, ns: int | None = None) -> Sequence:
    """Inverse of ``encode``. ``ns`` defaults to the largest coded symbol."""
    table = {w: s for s, w in code.codewords.items()}
    longest = max(len(w) for w in table)
    out = []
    word = ""
    for b in bits:
        if b not in "01":
            raise DecodeError(f"invalid bit {b!r}")
        word += b
        sym = table.get(word)
        if sym is not None:
            out.append(sym)
            word = ""
        elif len(word) >= longest:
            raise DecodeError(f"no codeword matches {word!r}")
    if word:
        raise DecodeError(f"dangling bits {word!r} at end of input")
    return Sequence(tuple(out), ns if ns is not None else max(code.codewords))


def encoded_length(counts) -> int:
    """Total Huffman-coded bits, sum(count * codeword length)."""
    return sum(counts[s - 1] * ln for s, ln in code_lengths(counts).items())


def self_encoded_length(seq: Sequence) -> int:
    """Bits needed to Huffman-code ``seq`` with a code built from its own counts."""
    if len(seq) == 0:
        raise DomainError("cannot encode an empty sequence")
    return encoded_length(counts_of(seq.symbols, seq.ns))
