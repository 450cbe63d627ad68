"""Brute-force ground truth: the explicit correspondence table at tiny scale.

Nothing here goes through the shaped index or the ranking code. The table is
built by sorting every string of length ``N + K`` by its exact key, and the
exhaustive statistics walk the type classes in an order obtained by sorting
compositions directly.
"""

from __future__ import annotations

import csv
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from .errors import DomainError, NotInShapedSet, ScaleGuardError
from .huffman import encoded_length
from .seqcore import Sequence, counts_coding_limit

TABLE_MAX_INPUTS = 10**6
TABLE_MAX_OUTPUTS = 10**7
STATS_MAX_INPUTS = 10**7


def _guard_table(ns: int, N: int, K: int) -> None:
    if ns < 2 or N < 1 or K < 1:
        raise DomainError(f"need ns >= 2, N >= 1, K >= 1; got ns={ns}, N={N}, K={K}")
    if ns**N > TABLE_MAX_INPUTS or ns ** (N + K) > TABLE_MAX_OUTPUTS:
        raise ScaleGuardError(
            f"table for ns={ns}, N={N}, K={K} needs {ns}**{N} rows from {ns}**{N + K} "
            f"strings (limits {TABLE_MAX_INPUTS}, {TABLE_MAX_OUTPUTS})"
        )


@dataclass
class CorrespondenceTable:
    ns: int
    N: int
    K: int
    rows: list[tuple[tuple[int, ...], tuple[int, ...]]]
    outside: list[tuple[int, ...]] = field(repr=False, default_factory=list)

    def __len__(self) -> int:
        return len(self.rows)

    def write_csv(self, path) -> None:
        with Path(path).open("w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["x", "y"])
            for x, y in self.rows:
                w.writerow([" ".join(map(str, x)), " ".join(map(str, y))])


def build_table(ns: int, N: int, K: int = 1) -> CorrespondenceTable:
    """Pair X^N in lexicographic order with the first ns**N strings of length
    N + K in shaping order. ``outside`` keeps the remaining strings, in order."""
    _guard_table(ns, N, K)
    alphabet = range(1, ns + 1)
    ordered = sorted(itertools.product(alphabet, repeat=N + K), key=lambda s: sequence_key(s, ns))
    m = ns**N
    xs = itertools.product(alphabet, repeat=N)
    return CorrespondenceTable(ns, N, K, list(zip(xs, ordered[:m])), ordered[m:])


def sequence_key(seq: tuple[int, ...], ns: int) -> tuple:
    """Exact sort key of one string: (W desc, histogram desc-lex, string lex)."""
    counts = [0] * ns
    for s in seq:
        counts[s - 1] += 1
    w = 1
    for k in counts:
        w *= k**k
    return (-w, tuple(-k for k in counts), seq)


@dataclass
class VerificationReport:
    ns: int
    N: int
    K: int
    rows: int
    shape_mismatches: int
    unshape_mismatches: int
    rejected_outside: int
    outside: int

    @property
    def passed(self) -> bool:
        return (
            self.shape_mismatches == 0
            and self.unshape_mismatches == 0
            and self.rejected_outside == self.outside
        )


def verify_bijection(ns: int, N: int, K: int = 1, check_outside: bool = True) -> VerificationReport:
    """Check the table-free transform against the brute-force table, cell by cell.

    With ``check_outside`` every string outside the image must be rejected by
    ``unshape`` with NotInShapedSet.
    """
    from .shaping import ShapingParams, shape, unshape

    table = build_table(ns, N, K)
    params = ShapingParams(ns, N, K)
    index = params.index()
    bad_shape = bad_unshape = 0
    for x, y in table.rows:
        xs, ys = Sequence(x, ns), Sequence(y, ns)
        if shape(xs, params, index).symbols != y:
            bad_shape += 1
        try:
            if unshape(ys, params, index).symbols != x:
                bad_unshape += 1
        except NotInShapedSet:
            bad_unshape += 1
    rejected = 0
    outside = table.outside if check_outside else []
    for y in outside:
        try:
            unshape(Sequence(y, ns), params, index)
        except NotInShapedSet:
            rejected += 1
    return VerificationReport(ns, N, K, len(table.rows), bad_shape, bad_unshape, rejected, len(outside))


@dataclass
class ExhaustiveStats:
    ns: int
    N: int
    K: int
    mean_lc_x: float
    mean_lc_y: float
    mean_code_len_y: float
    successes: int
    inputs: int

    @property
    def delta(self) -> float:
        """Mean Lc over the shaped set minus mean Lc over X^N."""
        return self.mean_lc_y - self.mean_lc_x

    @property
    def success_fraction(self) -> Fraction:
        return Fraction(self.successes, self.inputs)

    def to_dict(self) -> dict:
        return {
            "ns": self.ns, "N": self.N, "K": self.K,
            "mean_lc_x": self.mean_lc_x, "mean_lc_y": self.mean_lc_y,
            "delta": self.delta, "mean_code_len_y": self.mean_code_len_y,
            "successes": self.successes, "inputs": self.inputs,
            "success_fraction": float(self.success_fraction),
        }


def _sorted_types(n: int, ns: int) -> list[tuple[int, ...]]:
    return sorted(_compositions(n, ns), key=lambda c: (-math.prod(k**k for k in c), tuple(-k for k in c)))


def _compositions(n: int, ns: int):
    if ns == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in _compositions(n - first, ns - 1):
            yield (first,) + rest


def exhaustive_stats(ns: int, N: int, K: int = 1) -> ExhaustiveStats:
    """Exact averages over all ns**N inputs under the uniform source.

    Lc and the Huffman length depend only on a string's type, so the image
    side is walked type class by type class (each class is a contiguous run
    of shaped ranks) and the input side is enumerated string by string in
    lexicographic order with numpy.
    """
    if ns < 2 or N < 1 or K < 1:
        raise DomainError(f"need ns >= 2, N >= 1, K >= 1; got ns={ns}, N={N}, K={K}")
    m = ns**N
    if m > STATS_MAX_INPUTS:
        raise ScaleGuardError(f"{m} inputs exceeds the limit {STATS_MAX_INPUTS}")
    # histograms of the inputs are packed base N+1 into one int64
    if (N + 1) ** ns >= 2**62:
        raise ScaleGuardError(f"histogram keys for N={N}, ns={ns} do not fit in 64 bits")

    # image side: type classes in shaping order until ns**N strings are covered
    sizes, y_lc, y_len = [], [], []
    covered = 0
    for c in _sorted_types(N + K, ns):
        size = math.factorial(N + K)
        for k in c:
            size //= math.factorial(k)
        take = min(size, m - covered)
        sizes.append(take)
        y_lc.append(counts_coding_limit(c))
        y_len.append(encoded_length(c))
        covered += take
        if covered == m:
            break
    sizes_arr = np.array(sizes, dtype=np.int64)
    code_len_by_rank = np.repeat(np.array(y_len, dtype=np.int64), sizes_arr)

    # input side: type id of every x in lexicographic order
    base = N + 1
    lc_by_key = {}
    for c in _compositions(N, ns):
        key = 0
        for i, k in enumerate(c):
            key += k * base**i
        lc_by_key[key] = counts_coding_limit(c)
    ranks = np.arange(m, dtype=np.int64)
    keys = np.zeros(m, dtype=np.int64)
    powers = np.array([base**i for i in range(ns)], dtype=np.int64)
    for _ in range(N):
        ranks, digit = np.divmod(ranks, ns)
        keys += powers[digit]
    uniq, inverse, counts = np.unique(keys, return_inverse=True, return_counts=True)
    lc_table = np.array([lc_by_key[int(k)] for k in uniq])
    lc_x = lc_table[inverse]

    successes = int(np.count_nonzero(code_len_by_rank < lc_x))
    mean_lc_x = math.fsum(float(lc) * int(n) for lc, n in zip(lc_table, counts)) / m
    mean_lc_y = math.fsum(lc * n for lc, n in zip(y_lc, sizes)) / m
    mean_len_y = math.fsum(ln * n for ln, n in zip(y_len, sizes)) / m
    return ExhaustiveStats(ns, N, K, mean_lc_x, mean_lc_y, mean_len_y, successes, m)


def brute_force_stats(ns: int, N: int, K: int = 1) -> ExhaustiveStats:
    """Same quantities as ``exhaustive_stats`` from the explicit table, row by row."""
    from .huffman import self_encoded_length
    from .seqcore import coding_limit

    table = build_table(ns, N, K)
    lx, ly, cl, wins = [], [], [], 0
    for x, y in table.rows:
        a = coding_limit(Sequence(x, ns))
        ys = Sequence(y, ns)
        b = self_encoded_length(ys)
        lx.append(a)
        ly.append(coding_limit(ys))
        cl.append(b)
        wins += b < a
    m = len(table.rows)
    return ExhaustiveStats(ns, N, K, math.fsum(lx) / m, math.fsum(ly) / m, math.fsum(cl) / m, wins, m)
