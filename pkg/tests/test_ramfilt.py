import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from aictools.ramfilt import (FiltrationError, RamFiltration, breakpoints, herbrand_phi, herbrand_psi,
                              inertia_jump, lower_jumps, quotient, ram_invariant, upper_jumps)

M11_J8 = RamFiltration((55,) + (11,) * 8)


def test_m11_jump_8():
    assert ram_invariant(M11_J8) == Fraction(8, 5)
    assert inertia_jump(M11_J8) == 8
    assert upper_jumps(M11_J8) == [0, Fraction(8, 5)]
    assert herbrand_psi(M11_J8, Fraction(8, 5)) == 8
    h = breakpoints(M11_J8)
    assert h.breakpoints == ((0, 0), (8, Fraction(8, 5)))
    assert h.final_slope == Fraction(1, 55)


def test_wild_only_and_tame():
    f = RamFiltration((11, 11, 11))
    assert ram_invariant(f) == 2 and inertia_jump(f) == 2
    assert upper_jumps(RamFiltration((55,))) == [0]
    assert upper_jumps(RamFiltration((1,))) == []
    with pytest.raises(FiltrationError):
        ram_invariant(RamFiltration((55,)))


def test_from_jump_matches_sigma():
    for m, j in [(5, 8), (5, 6), (35, 71), (1, 2), (10, 13)]:
        f = RamFiltration.from_jump(11 if m != 35 else 71, m, j)
        assert ram_invariant(f) == Fraction(j, m)


@pytest.mark.parametrize("orders", [(), (6, 3, 2), (10, 3), (121, 11), (0,), (55, 25)])
def test_invalid(orders):
    with pytest.raises(FiltrationError):
        RamFiltration(orders)


def test_phi_psi_inverse_1000():
    rng = random.Random(20240)
    filts = [M11_J8, RamFiltration((11, 11, 11)), RamFiltration((24, 8, 8, 4, 4, 4, 2)),
             RamFiltration((9, 9, 9, 3))]
    for _ in range(1000):
        f = rng.choice(filts)
        t = Fraction(rng.randint(0, 10 ** 6), rng.randint(1, 10 ** 4))
        assert herbrand_phi(f, herbrand_psi(f, t)) == t
        assert herbrand_psi(f, herbrand_phi(f, t)) == t


@given(st.lists(st.sampled_from([1, 2, 4]), min_size=1, max_size=6), st.sampled_from([1, 3, 5]),
       st.fractions(min_value=0, max_value=50))
def test_phi_properties(chain, tame, s):
    # build |G_i| from a decreasing chain of 2-power orders
    orders, cur = [], 8
    for k in chain:
        cur = max(1, cur // k) if k > 1 else cur
        orders.append(cur)
    f = RamFiltration((8 * tame, 8) + tuple(orders), 2)
    phi = herbrand_phi(f, s)
    assert 0 <= phi <= s
    assert herbrand_psi(f, phi) == s
    assert lower_jumps(f) == sorted(lower_jumps(f))


def test_quotient_by_wild_part():
    # killing the whole wild part leaves the tame quotient
    q = quotient(M11_J8, [11] * 9)
    assert q.orders == (5,) and q.is_tame
    # trivial kernel is the identity
    assert quotient(M11_J8, [1]).orders == M11_J8.orders


def test_quotient_upper_numbering():
    # G_0 = G_1 = Z/4 with jumps 1 and 3 in lower numbering; kernel Z/2 = G_2 = G_3
    f = RamFiltration((4, 4, 2, 2), 2)
    assert upper_jumps(f) == [1, 2]
    q = quotient(f, [2, 2, 2, 2])
    assert q.orders == (2, 2)
    assert upper_jumps(q) == [1]


def test_quotient_non_integral():
    f = RamFiltration((4, 4, 2, 2, 2), 2)
    with pytest.raises(FiltrationError):
        quotient(f, [2, 1, 1, 1, 1])
