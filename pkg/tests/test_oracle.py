import math

import pytest

from setshaping.errors import ScaleGuardError
from setshaping.oracle import (
    brute_force_stats,
    build_table,
    exhaustive_stats,
    sequence_key,
    verify_bijection,
)
from setshaping.typespace import weight_key


def test_table_for_three_symbols():
    t = build_table(3, 2, 1)
    assert len(t) == 9
    assert t.rows[0] == ((1, 1), (1, 1, 1))
    ys = [y for _, y in t.rows]
    assert all(sorted(y) != [1, 2, 3] for y in ys)
    assert len(set(ys)) == 9 and len({x for x, _ in t.rows}) == 9


def test_table_cardinality_for_binary():
    t = build_table(2, 3, 1)
    assert len(t) == 8
    assert len(t.outside) == 8


def test_y_column_keys_are_monotone():
    t = build_table(4, 3, 1)
    keys = [sequence_key(y, 4) for _, y in t.rows] + [sequence_key(y, 4) for y in t.outside]
    assert keys == sorted(keys)
    assert len(set(keys)) == len(keys)


def test_scale_guard():
    with pytest.raises(ScaleGuardError):
        build_table(10, 7, 1)
    with pytest.raises(ScaleGuardError):
        build_table(2, 20, 4)
    with pytest.raises(ScaleGuardError):
        exhaustive_stats(10, 8, 1)


@pytest.mark.parametrize("ns, N, K", [(3, 2, 1), (4, 4, 1), (2, 6, 1), (3, 3, 2)])
def test_verify_bijection_passes(ns, N, K):
    rep = verify_bijection(ns, N, K)
    assert rep.passed
    assert rep.rows == ns**N
    assert rep.outside == ns ** (N + K) - ns**N


def test_verify_reports_mismatches(monkeypatch):
    from setshaping import shaping
    from setshaping.seqcore import Sequence

    real = shaping.shape
    monkeypatch.setattr(shaping, "shape", lambda x, p, i=None: Sequence((1,) * p.out_len, p.ns)
                        if x.symbols == (2, 2) else real(x, p, i))
    rep = verify_bijection(3, 2, 1)
    assert not rep.passed
    assert rep.shape_mismatches == 1


def test_exhaustive_stats_tiny():
    st = exhaustive_stats(3, 2, 1)
    assert st.mean_lc_x == pytest.approx(4 / 3)
    # six strings of types (2,1,0), (2,0,1) plus three constants
    lc_21 = -2 * math.log2(2 / 3) - math.log2(1 / 3)
    assert st.mean_lc_y == pytest.approx(6 * lc_21 / 9)
    assert st.delta == pytest.approx(0.5033, abs=1e-4)
    assert st.successes == 0


@pytest.mark.parametrize("ns", [2, 3, 7])
def test_length_one_inputs_are_constant(ns):
    assert exhaustive_stats(ns, 1, 1).mean_lc_x == 0.0


@pytest.mark.parametrize("ns, N, K", [(2, 6, 1), (3, 4, 1), (4, 3, 1), (3, 3, 2), (5, 3, 1), (2, 8, 2)])
def test_vectorized_stats_match_row_by_row(ns, N, K):
    a, b = exhaustive_stats(ns, N, K), brute_force_stats(ns, N, K)
    assert a.successes == b.successes
    assert a.mean_lc_x == pytest.approx(b.mean_lc_x, abs=1e-12)
    assert a.mean_lc_y == pytest.approx(b.mean_lc_y, abs=1e-12)
    assert a.mean_code_len_y == pytest.approx(b.mean_code_len_y, abs=1e-12)


def test_table_csv(tmp_path):
    t = build_table(3, 2, 1)
    t.write_csv(tmp_path / "t.csv")
    lines = (tmp_path / "t.csv").read_text().splitlines()
    assert lines[0] == "x,y"
    assert lines[1] == "1 1,1 1 1"
    assert len(lines) == 10


def test_sequence_key_uses_exact_weight():
    assert sequence_key((1, 1, 2, 2), 3)[0] == -weight_key((2, 2, 0))
