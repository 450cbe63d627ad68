"""Sequences over the alphabet 1..ns, their histograms and coding limit."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .errors import DomainError

MAX_ALPHABET = 1 << 16


@dataclass(frozen=True)
class Sequence:
    """A finite string of symbols ``1..ns``."""

    symbols: tuple[int, ...]
    ns: int

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(int(s) for s in self.symbols))
        if not 1 <= self.ns <= MAX_ALPHABET:
            raise DomainError(f"alphabet size must be in 1..{MAX_ALPHABET}, got {self.ns}")
        for s in self.symbols:
            if not 1 <= s <= self.ns:
                raise DomainError(f"symbol {s} outside 1..{self.ns}")

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __str__(self) -> str:
        return format_symbols(self.symbols)

    @classmethod
    def parse(cls, text: str, ns: int) -> "Sequence":
        """Build a sequence from whitespace-separated integers."""
        try:
            symbols = tuple(int(tok) for tok in text.split())
        except ValueError as exc:
            raise DomainError(f"malformed sequence: {exc}") from None
        return cls(symbols, ns)


@dataclass(frozen=True)
class Histogram:
    """Per-symbol occurrence counts; ``counts[s - 1]`` is the count of symbol ``s``."""

    counts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "counts", tuple(int(c) for c in self.counts))
        if any(c < 0 for c in self.counts):
            raise DomainError("negative count in histogram")

    @property
    def n(self) -> int:
        return sum(self.counts)

    @property
    def ns(self) -> int:
        return len(self.counts)


def format_symbols(symbols: Iterable[int]) -> str:
    return " ".join(str(s) for s in symbols)


def counts_of(symbols: Iterable[int], ns: int) -> tuple[int, ...]:
    counts = [0] * ns
    for s in symbols:
        counts[s - 1] += 1
    return tuple(counts)


def empirical_histogram(seq: Sequence) -> Histogram:
    if len(seq) == 0:
        raise DomainError("histogram of an empty sequence")
    return Histogram(counts_of(seq.symbols, seq.ns))


def counts_coding_limit(counts: Iterable[int]) -> float:
    """Coding limit in bits of any sequence with these symbol counts.

    Zero counts contribute nothing. The summation order is fixed (symbol
    order) so every caller gets bit-identical results for the same counts.
    """
    counts = tuple(counts)
    n = sum(counts)
    if n <= 0:
        raise DomainError("coding limit of an empty histogram")
    bits = 0.0
    for c in counts:
        if c:
            bits -= c * math.log2(c / n)
    # -0.0 for constant sequences
    return bits + 0.0


def type_coding_limit(hist: Histogram) -> float:
    return counts_coding_limit(hist.counts)


def coding_limit(seq: Sequence) -> float:
    """Lc(x) = -sum_i log2 p(x_i) with p the in-sequence frequency."""
    return type_coding_limit(empirical_histogram(seq))
