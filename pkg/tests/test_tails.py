from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from aictools.tails import (StableModelSummary, TailConfig, TailError, config_genus_sum,
                            enumerate_configs, filter_by_quotient_genus, minimal_invariant_set,
                            table3, vc_check)

TABLE3 = [("{10/5}", 4), ("{6/5, 9/5}", 3), ("{7/5, 8/5}", 3), ("{6/5, 6/5, 8/5}", 2),
          ("{6/5, 7/5, 7/5}", 2), ("{6/5, 6/5, 6/5, 7/5}", 1), ("{6/5, 6/5, 6/5, 6/5, 6/5}", 0)]


def test_table3_configs():
    cfgs = enumerate_configs(range(6, 11), 5)
    assert [(str(c), config_genus_sum(c, 12, 1)) for c in cfgs] == TABLE3
    assert all(vc_check(c) for c in cfgs)


def test_table3_rows():
    rows = table3()
    assert [(r.size, len(r.configs), r.genus_sum) for r in rows] == [
        (1, 1, 4), (2, 2, 3), (3, 2, 2), (4, 1, 1), (5, 1, 0)]


def test_genus_filter():
    cfgs = enumerate_configs(range(6, 11), 5)
    assert [str(c) for c in filter_by_quotient_genus(cfgs, 12, 1, 4)] == ["{10/5}"]
    assert len(filter_by_quotient_genus(cfgs, 12, 1, 0)) == 7
    assert filter_by_quotient_genus(cfgs, 12, 1, 5) == []
    sm = StableModelSummary(cfgs, dominated_quotient_genus=4, d=12, t=1)
    assert [c.jumps for c in sm.surviving()] == [(10,)]
    with pytest.raises(TailError):
        StableModelSummary(cfgs, dominated_quotient_genus=4).surviving()


def test_minimal_invariants():
    assert minimal_invariant_set(True, 5, 11) == [Fraction(j, 5) for j in (6, 7, 8, 9, 10)]
    assert minimal_invariant_set(True, 1) == [2]
    with pytest.raises(TailError):
        minimal_invariant_set(False, 5)


@given(st.integers(1, 9), st.sets(st.integers(1, 12), min_size=1))
def test_enumeration_satisfies_vanishing_cycles(m, excess):
    js = [m + e for e in excess]
    cfgs = enumerate_configs(js, m)
    for c in cfgs:
        assert vc_check(c)
        assert set(c.jumps) <= set(js)
    assert len({c.new_tails for c in cfgs}) == len(cfgs)
    if m in excess:
        assert TailConfig.from_jumps([2 * m], m) in cfgs


def test_bad_configs():
    with pytest.raises(TailError):
        TailConfig((Fraction(1),), 5)
    with pytest.raises(TailError):
        TailConfig((Fraction(13, 10),), 5)
    with pytest.raises(TailError):
        enumerate_configs([5, 6], 5)
    with pytest.raises(TailError):
        vc_check(TailConfig((Fraction(2),), 5, primitive_count=2))
