"""Exact rank/unrank bijections between sequences and big-integer ranks."""

from __future__ import annotations

from .errors import DomainError
from .seqcore import Histogram, Sequence, counts_of
from .typespace import ShapedIndex, multinomial


def rank_lex(seq: Sequence) -> int:
    """Base-``ns`` value of the digits ``symbol - 1``, most significant first."""
    ns = seq.ns
    r = 0
    for s in seq.symbols:
        r = r * ns + (s - 1)
    return r


def unrank_lex(r: int, n: int, ns: int) -> Sequence:
    if not 0 <= r < ns**n:
        raise DomainError(f"rank {r} outside [0, {ns}**{n})")
    digits = [0] * n
    for i in range(n - 1, -1, -1):
        r, d = divmod(r, ns)
        digits[i] = d + 1
    return Sequence(tuple(digits), ns)


def _rank_symbols(symbols, counts) -> int:
    counts = list(counts)
    left = len(symbols)
    perms = multinomial(counts)
    r = 0
    for s in symbols:
        below = 0
        for t in range(s - 1):
            below += counts[t]
        if below:
            r += perms * below // left
        perms = perms * counts[s - 1] // left
        counts[s - 1] -= 1
        left -= 1
    return r


def rank_in_type(seq: Sequence) -> int:
    """Lexicographic rank of ``seq`` among the arrangements of its own histogram."""
    return _rank_symbols(seq.symbols, counts_of(seq.symbols, seq.ns))


def _unrank_symbols(r: int, counts) -> tuple[int, ...]:
    counts = list(counts)
    left = sum(counts)
    perms = multinomial(counts)
    out = []
    for _ in range(left):
        for t, c in enumerate(counts):
            if not c:
                continue
            block = perms * c // left
            if r < block:
                break
            r -= block
        out.append(t + 1)
        perms = block
        counts[t] -= 1
        left -= 1
    return tuple(out)


def unrank_in_type(r: int, hist: Histogram) -> Sequence:
    size = multinomial(hist.counts)
    if not 0 <= r < size:
        raise DomainError(f"rank {r} outside [0, {size}) for type {hist.counts}")
    return Sequence(_unrank_symbols(r, hist.counts), hist.ns)


def rank_shaped(seq: Sequence, index: ShapedIndex) -> int:
    """Global rank of ``seq`` in the shaping order of all length-``index.n`` strings."""
    if len(seq) != index.n or seq.ns != index.ns:
        raise DomainError(
            f"sequence of length {len(seq)} over {seq.ns} symbols does not match "
            f"index (n={index.n}, ns={index.ns})"
        )
    counts = counts_of(seq.symbols, seq.ns)
    return index.offset(counts) + _rank_symbols(seq.symbols, counts)


def unrank_shaped(r: int, index: ShapedIndex) -> Sequence:
    counts, within = index.locate(r)
    return Sequence(_unrank_symbols(within, counts), index.ns)
