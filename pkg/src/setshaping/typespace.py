"""Type classes of length-n strings and the entropy-ordered shaped index.

A type is a histogram ``h`` of length ``ns`` summing to ``n``. Types are
ordered by the exact weight ``W(h) = prod(c ** c)`` descending (equivalent to
coding limit ascending, since ``Lc = n log2 n - log2 W``), ties broken by the
histogram in descending lexicographic order. Inside a type, strings are in
ascending lexicographic order.

``W`` depends only on the multiset of counts, i.e. on the integer partition
of ``n`` obtained by sorting ``h``. The index therefore stores one group per
distinct weight, each holding the partitions with that weight. The types of a
group are the distinct permutations of its partitions, so positions and
cumulative class sizes inside a group are computed by multiset-permutation
counting instead of a materialized table.
"""

from __future__ import annotations

import bisect
import heapq
import itertools
import json
import math
import os
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Iterator

from .errors import BudgetExceeded, DomainError
from .seqcore import Histogram

DEFAULT_BUDGET = 20_000_000
CACHE_FORMAT = "setshaping-index"
CACHE_VERSION = 1


def default_budget() -> int:
    """Type budget, overridable with the ``SST_BUDGET`` environment variable."""
    raw = os.environ.get("SST_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        return int(raw)
    except ValueError:
        raise DomainError(f"SST_BUDGET must be an integer, got {raw!r}") from None


def type_count(n: int, ns: int) -> int:
    """Number of compositions of ``n`` into ``ns`` non-negative parts."""
    return math.comb(n + ns - 1, ns - 1)


def enumerate_types(n: int, ns: int) -> Iterator[tuple[int, ...]]:
    """Yield every composition of ``n`` into ``ns`` parts exactly once.

    Stars and bars: each choice of ``ns - 1`` bar positions among
    ``n + ns - 1`` slots is one composition.
    """
    if n < 1 or ns < 1:
        raise DomainError(f"need n >= 1 and ns >= 1, got n={n}, ns={ns}")
    slots = n + ns - 1
    for bars in itertools.combinations(range(slots), ns - 1):
        prev = -1
        parts = []
        for b in bars:
            parts.append(b - prev - 1)
            prev = b
        parts.append(slots - prev - 1)
        yield tuple(parts)


def multinomial(counts) -> int:
    """n! / prod(c!) computed as a product of binomials."""
    total = 0
    result = 1
    for c in counts:
        total += c
        result *= math.comb(total, c)
    return result


def type_class_size(hist: Histogram) -> int:
    return multinomial(hist.counts)


def weight_key(counts) -> int:
    """W = prod(c ** c) over non-zero counts, an exact big integer."""
    w = 1
    for c in counts:
        if c > 1:
            w *= c**c
    return w


def shaping_key(counts) -> tuple:
    """Ascending sort key realizing (W descending, histogram descending-lex)."""
    return (-weight_key(counts), tuple(-c for c in counts))


def partitions(n: int, max_parts: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of ``n`` into at most ``max_parts`` parts, non-increasing."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    if max_parts == 0:
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, max_parts - 1, first):
            yield (first,) + rest


def _perm_count(mult: dict[int, int]) -> int:
    return multinomial(mult.values())


def count_greater(mult: dict[int, int], target) -> int:
    """Number of distinct arrangements of the multiset ``mult`` that are
    lexicographically greater than ``target`` (which need not be one of them)."""
    rem = dict(mult)
    left = sum(rem.values())
    perms = _perm_count(rem)
    total = 0
    for x in target:
        for v, c in rem.items():
            if c and v > x:
                total += perms * c // left
        c = rem.get(x, 0)
        if not c:
            break
        perms = perms * c // left
        rem[x] = c - 1
        left -= 1
    return total


@dataclass(frozen=True)
class _Member:
    """One partition of a weight group, padded with zeros to ``ns`` parts."""

    parts: tuple[int, ...]
    mult: dict  # part value -> multiplicity, zeros included
    class_size: int
    arrangements: int


class _Group:
    __slots__ = ("weight", "members", "types", "sequences")

    def __init__(self, weight: int, members: list[_Member]):
        self.weight = weight
        self.members = members
        self.types = sum(m.arrangements for m in members)
        self.sequences = sum(m.class_size * m.arrangements for m in members)

    def sequences_before(self, counts) -> int:
        """Sum of class sizes of the group's types strictly before ``counts``."""
        return sum(m.class_size * count_greater(m.mult, counts) for m in self.members)

    def types_before(self, counts) -> int:
        return sum(count_greater(m.mult, counts) for m in self.members)

    def locate(self, r: int) -> tuple[tuple[int, ...], int]:
        """Type holding group-relative sequence offset ``r`` and the offset inside it."""
        ns = len(self.members[0].parts)
        state = [(m, dict(m.mult), m.arrangements) for m in self.members]
        left = ns
        chosen = []
        for _ in range(ns):
            values = sorted({v for _, rem, _ in state for v, c in rem.items() if c}, reverse=True)
            for v in values:
                weight = 0
                for m, rem, perms in state:
                    c = rem.get(v, 0)
                    if c:
                        weight += m.class_size * (perms * c // left)
                if r < weight:
                    break
                r -= weight
            else:  # pragma: no cover - r was range-checked by the caller
                raise AssertionError("offset beyond group")
            nxt = []
            for m, rem, perms in state:
                c = rem.get(v, 0)
                if c:
                    rem[v] = c - 1
                    nxt.append((m, rem, perms * c // left))
            state = nxt
            left -= 1
            chosen.append(v)
        return tuple(chosen), r

    def iter_types(self) -> Iterator[tuple[tuple[int, ...], int]]:
        streams = [_sized(_arrangements_desc(m.parts), m.class_size) for m in self.members]
        yield from heapq.merge(*streams, key=lambda e: e[0], reverse=True)


def _sized(types, size):
    for t in types:
        yield t, size


def _arrangements_desc(parts: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """Distinct permutations of ``parts`` in descending lexicographic order."""
    a = sorted(parts, reverse=True)
    k = len(a)
    while True:
        yield tuple(a)
        # previous permutation (mirror of next_permutation)
        i = k - 2
        while i >= 0 and a[i] <= a[i + 1]:
            i -= 1
        if i < 0:
            return
        j = k - 1
        while a[j] >= a[i]:
            j -= 1
        a[i], a[j] = a[j], a[i]
        a[i + 1:] = reversed(a[i + 1:])


class ShapedIndex:
    """All types of length-``n`` strings over ``ns`` symbols in shaping order,
    with exact cumulative class sizes.

    Immutable once built; safe to share across threads.
    """

    def __init__(self, n: int, ns: int, groups: list[_Group]):
        self.n = n
        self.ns = ns
        self._groups = groups
        self._seq_starts = [0]
        self._type_starts = [0]
        for g in groups:
            self._seq_starts.append(self._seq_starts[-1] + g.sequences)
            self._type_starts.append(self._type_starts[-1] + g.types)
        self._group_of_weight = {g.weight: i for i, g in enumerate(groups)}

    def __len__(self) -> int:
        return self._type_starts[-1]

    def __repr__(self) -> str:
        return f"ShapedIndex(n={self.n}, ns={self.ns}, types={len(self)}, groups={len(self._groups)})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, ShapedIndex):
            return NotImplemented
        return (self.n, self.ns, self.group_partitions()) == (other.n, other.ns, other.group_partitions())

    __hash__ = None

    @property
    def total(self) -> int:
        """Final cumulative value; equals ``ns ** n``."""
        return self._seq_starts[-1]

    @property
    def group_count(self) -> int:
        return len(self._groups)

    def group_partitions(self) -> list[list[tuple[int, ...]]]:
        return [[m.parts for m in g.members] for g in self._groups]

    def __iter__(self) -> Iterator[tuple[Histogram, int]]:
        """Yield ``(histogram, class_size)`` pairs in shaping order."""
        for g in self._groups:
            for counts, size in g.iter_types():
                yield Histogram(counts), size

    def _check(self, counts) -> tuple[int, ...]:
        counts = tuple(counts)
        if len(counts) != self.ns or sum(counts) != self.n or min(counts) < 0:
            raise DomainError(f"{counts} is not a type of length {self.n} over {self.ns} symbols")
        return counts

    def _group(self, counts) -> int:
        return self._group_of_weight[weight_key(counts)]

    def offset(self, counts) -> int:
        """Cumulative class size of all types strictly preceding ``counts``."""
        counts = self._check(counts)
        gi = self._group(counts)
        return self._seq_starts[gi] + self._groups[gi].sequences_before(counts)

    def position(self, counts) -> int:
        """0-based position of the type ``counts`` in shaping order."""
        counts = self._check(counts)
        gi = self._group(counts)
        return self._type_starts[gi] + self._groups[gi].types_before(counts)

    def locate(self, r: int) -> tuple[tuple[int, ...], int]:
        """Type containing global shaped rank ``r`` and the rank inside that type.

        Binary search over the cumulative group sizes, then a weighted descent
        inside the group.
        """
        if not 0 <= r < self.total:
            raise DomainError(f"rank {r} outside [0, {self.total})")
        gi = bisect.bisect_right(self._seq_starts, r) - 1
        return self._groups[gi].locate(r - self._seq_starts[gi])

    def save(self, path) -> None:
        """Write a versioned JSON cache of the index."""
        doc = {
            "format": CACHE_FORMAT,
            "version": CACHE_VERSION,
            "n": self.n,
            "ns": self.ns,
            "groups": [[list(p) for p in ps] for ps in self.group_partitions()],
        }
        Path(path).write_text(json.dumps(doc, separators=(",", ":")))

    @classmethod
    def load(cls, path) -> "ShapedIndex":
        doc = json.loads(Path(path).read_text())
        if doc.get("format") != CACHE_FORMAT or doc.get("version") != CACHE_VERSION:
            raise DomainError(f"unsupported index cache {doc.get('format')!r} v{doc.get('version')}")
        n, ns = doc["n"], doc["ns"]
        groups = [_make_group([tuple(p) for p in ps]) for ps in doc["groups"]]
        index = cls(n, ns, groups)
        if index.total != ns**n:
            raise DomainError("corrupt index cache: class sizes do not sum to ns**n")
        return index


def _make_group(parts_list: list[tuple[int, ...]]) -> _Group:
    members = []
    for parts in parts_list:
        mult = dict(Counter(parts))
        members.append(_Member(parts, mult, multinomial(parts), _perm_count(mult)))
    return _Group(weight_key(parts_list[0]), members)


def build_shaped_index(n: int, ns: int, budget: int | None = None) -> ShapedIndex:
    """Build the shaping-order index for length ``n`` over ``ns`` symbols.

    Raises BudgetExceeded when the number of types C(n+ns-1, ns-1) is larger
    than ``budget`` (default: ``default_budget()``).
    """
    if n < 1 or ns < 1:
        raise DomainError(f"need n >= 1 and ns >= 1, got n={n}, ns={ns}")
    if budget is None:
        budget = default_budget()
    count = type_count(n, ns)
    if count > budget:
        raise BudgetExceeded(
            f"{count} types for n={n}, ns={ns} exceeds budget {budget}"
        )
    by_weight: dict[int, list[tuple[int, ...]]] = {}
    for p in partitions(n, ns):
        padded = p + (0,) * (ns - len(p))
        by_weight.setdefault(weight_key(p), []).append(padded)
    groups = [_make_group(by_weight[w]) for w in sorted(by_weight, reverse=True)]
    index = ShapedIndex(n, ns, groups)
    assert len(index) == count and index.total == ns**n
    return index


@lru_cache(maxsize=32)
def cached_index(n: int, ns: int, budget: int) -> ShapedIndex:
    return build_shaped_index(n, ns, budget)
