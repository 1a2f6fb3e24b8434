import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from aictools.atlasio import alternating, cyclic, dihedral, load_group, symmetric
from aictools.permcore import (DegreeMismatch, PermGroup, check_perm, conj, cycle_type, cycles,
                               element_order, format_cycles, from_cycles, identity, inv, mul, orbits,
                               power, sign)

perms = st.integers(min_value=1, max_value=8).flatmap(lambda n: st.permutations(range(n)).map(tuple))


def same_degree_pair(n=6):
    p = st.permutations(range(n)).map(tuple)
    return st.tuples(p, p, p)


@given(same_degree_pair())
def test_group_axioms(t):
    a, b, c = t
    assert mul(mul(a, b), c) == mul(a, mul(b, c))
    assert mul(a, inv(a)) == identity(len(a))
    assert conj(a, b) == mul(mul(inv(b), a), b)


@given(perms)
def test_order_is_lcm_of_cycle_lengths(g):
    assert element_order(g) == math.lcm(*cycle_type(g))
    assert power(g, element_order(g)) == identity(len(g))
    assert sum(cycle_type(g)) == len(g)


@given(perms)
def test_cycle_roundtrip(g):
    assert from_cycles(cycles(g), len(g)) == g
    assert sign(g) == (-1) ** sum(c - 1 for c in cycle_type(g))


def test_right_action_and_format():
    a, b = (1, 0, 2), (0, 2, 1)
    # right action: apply a first, then b
    assert mul(a, b) == (2, 0, 1)
    assert format_cycles(from_cycles([(0, 1, 2)], 4)) == "(1,2,3)"
    assert format_cycles(identity(3)) == "()"


def test_bad_input():
    with pytest.raises(ValueError):
        check_perm([0, 0, 1])
    with pytest.raises(DegreeMismatch):
        PermGroup([(1, 0), (0, 2, 1)])


@pytest.mark.parametrize("G,order", [(symmetric(5), 120), (alternating(6), 360), (cyclic(7), 7),
                                     (dihedral(9), 18)])
def test_small_orders(G, order):
    assert G.order == order


def _brute_force_order(G):
    seen = {G.identity()}
    frontier = [G.identity()]
    while frontier:
        nxt = []
        for x in frontier:
            for g in G.generators:
                y = mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return len(seen)


def test_chain_vs_enumeration_bundled():
    # every bundled group of order at most 5000 plus a spread of constructed ones
    groups = [load_group(n) for n in ("PSL2(11)", "PSL2(7)", "A5", "S5", "A6", "PSL2(13)")]
    for G in groups:
        assert G.order <= 5000
        assert _brute_force_order(G) == G.order
        assert len(set(G.elements())) == G.order


@settings(max_examples=25, deadline=None)
@given(st.lists(st.permutations(range(7)).map(tuple), min_size=1, max_size=3), st.integers(0, 10))
def test_chain_order_random(gens, seed):
    G = PermGroup(gens, seed=seed)
    assert G.order == _brute_force_order(G)
    assert all(G.contains(g) for g in gens)
    assert G.contains(G.random_element(seed))


def test_membership_m11():
    M11 = load_group("M11")
    assert M11.order == 7920
    S12 = symmetric(11)
    outside = next(g for g in itertools.islice(S12.elements(), 5000) if not M11.contains(g))
    assert not M11.contains(outside)
    assert M11.is_transitive() and not M11.is_abelian()


def test_orbits():
    g = from_cycles([(0, 1), (2, 3, 4)], 6)
    assert sorted(map(sorted, orbits([g], 6))) == [[0, 1], [2, 3, 4], [5]]
