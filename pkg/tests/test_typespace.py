import itertools
import json
import math

import pytest
from hypothesis import given, strategies as st

from setshaping.errors import BudgetExceeded, DomainError
from setshaping.seqcore import Histogram, counts_coding_limit
from setshaping.typespace import (
    ShapedIndex,
    build_shaped_index,
    count_greater,
    enumerate_types,
    shaping_key,
    type_class_size,
    weight_key,
)

GRID = [(n, ns) for n in range(1, 9) for ns in range(1, 6)] + [(12, 3), (10, 4), (16, 5), (7, 7)]


def brute_types(n, ns):
    return [c for c in itertools.product(range(n + 1), repeat=ns) if sum(c) == n]


def brute_order(n, ns):
    return sorted(brute_types(n, ns), key=lambda c: (-math.prod(k**k for k in c), [-k for k in c]))


def factorial_size(counts):
    size = math.factorial(sum(counts))
    for k in counts:
        size //= math.factorial(k)
    return size


def test_enumerate_small_examples():
    assert sorted(enumerate_types(2, 2)) == [(0, 2), (1, 1), (2, 0)]
    assert len(list(enumerate_types(3, 3))) == 10


@pytest.mark.parametrize("n, ns", GRID)
def test_enumerate_yields_every_composition_once(n, ns):
    got = list(enumerate_types(n, ns))
    assert len(got) == len(set(got)) == math.comb(n + ns - 1, ns - 1)
    assert set(got) == set(brute_types(n, ns))


@pytest.mark.slow
def test_enumerate_count_at_experiment_scale():
    assert sum(1 for _ in enumerate_types(21, 10)) == 14_307_150 == math.comb(30, 9)


def test_enumerate_rejects_bad_arguments():
    with pytest.raises(DomainError):
        list(enumerate_types(0, 3))


def test_class_size_examples():
    assert type_class_size(Histogram((2, 0))) == 1
    assert type_class_size(Histogram((1, 1))) == 2
    assert type_class_size(Histogram((6, 2, 1, 1, 1))) == factorial_size((6, 2, 1, 1, 1)) == 27_720


@pytest.mark.parametrize("n, ns", GRID)
def test_index_order_matches_sorted_compositions(n, ns):
    index = build_shaped_index(n, ns)
    expected = brute_order(n, ns)
    got = [(h.counts, size) for h, size in index]
    assert [c for c, _ in got] == expected
    assert all(size == factorial_size(c) for c, size in got)
    assert len(index) == len(expected)
    assert index.total == ns**n


@pytest.mark.parametrize("n, ns", [(3, 3), (6, 4), (16, 5), (8, 3)])
def test_offsets_and_positions_are_prefix_sums(n, ns):
    index = build_shaped_index(n, ns)
    cum = 0
    for pos, (h, size) in enumerate(index):
        assert index.position(h.counts) == pos
        assert index.offset(h.counts) == cum
        assert index.locate(cum) == (h.counts, 0)
        assert index.locate(cum + size - 1) == (h.counts, size - 1)
        cum += size
    assert cum == index.total


def test_first_entries_for_three_symbols():
    entries = list(build_shaped_index(3, 3))
    assert [(h.counts, s) for h, s in entries[:3]] == [((3, 0, 0), 1), ((0, 3, 0), 1), ((0, 0, 3), 1)]
    assert (entries[3][0].counts, entries[3][1]) == ((2, 1, 0), 3)


def test_equal_weight_types_are_tie_broken_descending_lex():
    assert weight_key((8, 2, 2, 2, 2)) == weight_key((4, 4, 4, 4, 0)) == 2**32
    assert counts_coding_limit((8, 2, 2, 2, 2)) == pytest.approx(counts_coding_limit((4, 4, 4, 4, 0)))
    index = build_shaped_index(16, 5)
    assert index.position((8, 2, 2, 2, 2)) < index.position((4, 4, 4, 4, 0))
    # the equal-weight group mixes both partitions
    assert any(len(g) > 1 for g in index.group_partitions())
    assert [(8, 2, 2, 2, 2), (4, 4, 4, 4, 0)] in index.group_partitions()


@pytest.mark.parametrize("n, ns", [(21, 10), (30, 6), (12, 12)])
def test_total_is_exact_at_larger_scale(n, ns):
    index = build_shaped_index(n, ns)
    assert index.total == ns**n
    assert len(index) == math.comb(n + ns - 1, ns - 1)


def test_budget_exceeded():
    with pytest.raises(BudgetExceeded):
        build_shaped_index(81, 40)
    with pytest.raises(BudgetExceeded):
        build_shaped_index(5, 3, budget=20)
    assert len(build_shaped_index(5, 3, budget=21)) == 21


def test_budget_from_environment(monkeypatch):
    monkeypatch.setenv("SST_BUDGET", "5")
    with pytest.raises(BudgetExceeded):
        build_shaped_index(3, 3)


def test_out_of_range_rank_is_rejected():
    index = build_shaped_index(3, 3)
    with pytest.raises(DomainError):
        index.locate(27)
    with pytest.raises(DomainError):
        index.locate(-1)
    with pytest.raises(DomainError):
        index.offset((1, 1))


def test_cache_round_trip(tmp_path):
    index = build_shaped_index(16, 5)
    path = tmp_path / "idx.json"
    index.save(path)
    loaded = ShapedIndex.load(path)
    assert loaded == index
    assert [(h.counts, s) for h, s in loaded] == [(h.counts, s) for h, s in index]


def test_cache_version_is_checked(tmp_path):
    path = tmp_path / "idx.json"
    build_shaped_index(4, 3).save(path)
    doc = json.loads(path.read_text())
    doc["version"] = 999
    path.write_text(json.dumps(doc))
    with pytest.raises(DomainError):
        ShapedIndex.load(path)


@pytest.mark.parametrize("parts", [(2, 1, 0), (3, 3, 1, 0), (2, 2, 0, 0, 1)])
def test_count_greater_matches_enumeration(parts):
    perms = set(itertools.permutations(parts))
    mult = {v: parts.count(v) for v in set(parts)}
    for target in itertools.product(range(max(parts) + 2), repeat=len(parts)):
        assert count_greater(mult, target) == sum(p > target for p in perms)


compositions = st.integers(1, 6).flatmap(
    lambda ns: st.lists(st.integers(0, 9), min_size=ns, max_size=ns).filter(lambda c: sum(c) > 0)
)


@given(st.integers(1, 14), st.integers(2, 6), st.data())
def test_weight_order_agrees_with_float_coding_limit(n, ns, data):
    # two random types of the same length
    def draw():
        cuts = sorted(data.draw(st.lists(st.integers(0, n), min_size=ns - 1, max_size=ns - 1)))
        edges = [0] + cuts + [n]
        return tuple(b - a for a, b in zip(edges, edges[1:]))

    a, b = draw(), draw()
    la, lb = counts_coding_limit(a), counts_coding_limit(b)
    if abs(la - lb) > 1e-9:
        assert (weight_key(a) > weight_key(b)) == (la < lb)
    # Lc = n log2 n - log2 W
    assert la == pytest.approx(n * math.log2(n) - math.log2(weight_key(a)), abs=1e-9)


@given(st.lists(st.lists(st.integers(0, 6), min_size=4, max_size=4).map(tuple), min_size=3, max_size=3))
def test_shaping_key_is_a_strict_total_order(types):
    a, b, c = types
    ka, kb, kc = map(shaping_key, types)
    assert not ka < ka
    if a != b:
        assert (ka < kb) != (kb < ka)
    else:
        assert ka == kb
    if ka < kb and kb < kc:
        assert ka < kc
