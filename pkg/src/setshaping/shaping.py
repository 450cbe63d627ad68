"""The shaping transform X^N -> Y^(N+K) and its inverse, without a table.

``shape`` sends the lexicographic rank of ``x`` among length-``N`` strings to
the string of length ``N + K`` holding the same rank in shaping order, so the
image is the ``ns ** N`` lowest-coding-limit strings of the longer length.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DomainError, NotInShapedSet
from .ranking import rank_lex, rank_shaped, unrank_lex, unrank_shaped
from .seqcore import Sequence
from .typespace import ShapedIndex, cached_index, default_budget


@dataclass(frozen=True)
class ShapingParams:
    ns: int
    N: int
    K: int = 1
    budget: int = field(default_factory=default_budget)

    def __post_init__(self):
        if self.ns < 2:
            raise DomainError(f"ns must be >= 2, got {self.ns}")
        if self.N < 1:
            raise DomainError(f"N must be >= 1, got {self.N}")
        if self.K < 1:
            raise DomainError(f"K must be >= 1, got {self.K}")

    @property
    def out_len(self) -> int:
        return self.N + self.K

    def index(self) -> ShapedIndex:
        """Shared, cached index over strings of length ``N + K``."""
        return cached_index(self.out_len, self.ns, self.budget)


def shape(x: Sequence, params: ShapingParams, index: ShapedIndex | None = None) -> Sequence:
    if len(x) != params.N or x.ns != params.ns:
        raise DomainError(
            f"expected a length-{params.N} sequence over {params.ns} symbols, "
            f"got length {len(x)} over {x.ns}"
        )
    if index is None:
        index = params.index()
    return unrank_shaped(rank_lex(x), index)


def unshape(y: Sequence, params: ShapingParams, index: ShapedIndex | None = None) -> Sequence:
    if len(y) != params.out_len or y.ns != params.ns:
        raise DomainError(
            f"expected a length-{params.out_len} sequence over {params.ns} symbols, "
            f"got length {len(y)} over {y.ns}"
        )
    if index is None:
        index = params.index()
    r = rank_shaped(y, index)
    if r >= params.ns**params.N:
        raise NotInShapedSet(f"shaped rank {r} >= {params.ns}**{params.N}: {y}")
    return unrank_lex(r, params.N, params.ns)
