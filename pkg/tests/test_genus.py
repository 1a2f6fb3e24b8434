from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from aictools.atlasio import alternating, construct_psl2, symmetric
from aictools.genus import (BranchData, BranchPoint, GenusError, IntermediateGenusInput, PointData,
                            genus_from_jump, intermediate_genus, intermediate_genus_by_elimination,
                            intermediate_genus_value, orbit_count_t, quotient_genus_cycletypes,
                            rh_cover_genus)
from aictools.lattice import SmallGroup
from eq3_helpers import formula_vs_oracle, generating_triples


def test_galois_genus():
    assert rh_cover_genus(60, 0, [2, 3, 5]) == 0          # icosahedral
    assert rh_cover_genus(168, 0, [2, 3, 7]) == 3         # Klein quartic
    assert rh_cover_genus(1, 1, []) == 1
    with pytest.raises(GenusError):
        rh_cover_genus(60, 0, [2, 2])
    with pytest.raises(GenusError):
        rh_cover_genus(60, 0, [7])


def test_jump_formula():
    assert genus_from_jump(8, 11, 0) == 3
    for j in range(6, 51):
        assert genus_from_jump(j, 11, 0) == j - 5
        assert genus_from_jump(j, 12, 1) == j - 6
    with pytest.raises(GenusError):
        genus_from_jump(8, 12, 0)
    with pytest.raises(GenusError):
        genus_from_jump(2, 12, 1)


def test_orbit_count():
    assert orbit_count_t([1], 12, 11) == 1
    assert orbit_count_t([], 11, 11) == 0
    with pytest.raises(GenusError):
        orbit_count_t([2], 12, 11)


def test_cycle_type_genus():
    pts = tuple(BranchPoint(11, (11, 1)) for _ in range(3))
    assert quotient_genus_cycletypes(12, BranchData(pts)) == 4
    with pytest.raises(GenusError):
        quotient_genus_cycletypes(12, BranchData((BranchPoint(11, (11,)),)))


def test_m11_degree12_configuration():
    # three points with inertia 11, |N_G(I)| = |N_H(I)| = 55, I inside H; H self-normalizing
    pt = PointData(11, 55, 55, 11)
    inp = IntermediateGenusInput(12, 1, (pt, pt, pt))
    assert intermediate_genus(inp) == 4
    oracle = quotient_genus_cycletypes(12, BranchData(tuple(BranchPoint(11, (11, 1)) for _ in range(3))))
    assert oracle == 4


@given(st.integers(1, 30), st.integers(1, 30), st.integers(1, 6), st.lists(
    st.tuples(st.integers(1, 12), st.integers(1, 40), st.integers(1, 40), st.integers(1, 12)),
    max_size=4))
def test_formula_equals_two_step_elimination(h, d, n, raw):
    pts = []
    for e, ng, nh, meet in raw:
        meet = next(k for k in range(meet, 0, -1) if e % k == 0)
        pts.append(PointData(e, ng, nh, meet))
    inp = IntermediateGenusInput(d, n, tuple(pts))
    assert intermediate_genus_value(inp) == intermediate_genus_by_elimination(d * h, h, n * h, inp)


def _cases():
    for G in (alternating(5), symmetric(4), construct_psl2(7), alternating(4)):
        sg = SmallGroup(G)
        subs = [s for s in sg.subgroups() if 1 < s.order < G.order]
        for s in subs[::max(1, len(subs) // 12)]:
            H = sg.to_group(s)
            for t in generating_triples(G, 3, s.bits % 1000):
                yield G, H, t


@pytest.fixture(scope="module")
def comparisons():
    out = []
    for G, H, t in _cases():
        ok, inp, bd, d = formula_vs_oracle(G, H, t)
        out.append((ok, intermediate_genus_value(inp), quotient_genus_cycletypes(d, bd)))
    return out


def test_closed_formula_agrees_with_oracle_under_hypotheses(comparisons):
    good = [(f, o) for ok, f, o in comparisons if ok]
    assert len(good) >= 20
    assert all(f == o for f, o in good)


def test_closed_formula_fails_outside_hypotheses(comparisons):
    # the formula is not a general identity: some configurations violating
    # the hypotheses disagree with the oracle, some even give non-integers
    bad = [(f, o) for ok, f, o in comparisons if not ok and f != o]
    assert bad
    assert any(Fraction(f).denominator != 1 for f, _ in bad)
    assert any(f < 0 for f, _ in bad)


def test_intermediate_genus_validates():
    with pytest.raises(GenusError):
        intermediate_genus(IntermediateGenusInput(3, 1, (PointData(2, 2, 1, 2),)))
    with pytest.raises(GenusError):
        PointData(4, 4, 4, 3)
