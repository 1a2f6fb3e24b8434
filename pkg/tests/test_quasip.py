import pytest

from aictools.atlasio import alternating, construct_psl2, frobenius, load_group, symmetric
from aictools.grouplib import sylow_p
from aictools.lattice import SmallGroup, literal_G_of_S
from aictools.quasip import G_of_S, analyze_quasip, facts_purity, is_quasi_p, p_part, p_weight


@pytest.mark.parametrize("G,p,expected", [(alternating(5), 5, True), (symmetric(5), 5, False),
                                          (construct_psl2(7), 7, True), (frobenius(11, 5), 11, False),
                                          (frobenius(11, 5), 5, True)])
def test_quasi_p(G, p, expected):
    assert is_quasi_p(G, p) is expected


def test_p_part_of_s5():
    assert p_part(symmetric(5), 5).order == 60
    assert p_part(symmetric(5), 3).order == 60


@pytest.mark.parametrize("G,p", [(construct_psl2(11), 11), (alternating(5), 5), (construct_psl2(7), 7),
                                 (alternating(6), 5), (construct_psl2(13), 13)])
def test_sylow_criterion_matches_literal_definition(G, p):
    S = sylow_p(G, p)
    lit_order, contrib = literal_G_of_S(SmallGroup(G), S, p)
    res = G_of_S(G, S, p)
    assert res.group.order == lit_order
    assert res.pure == (lit_order != G.order)


def test_literal_psl2_11_contributors():
    G = construct_psl2(11)
    order, contrib = literal_G_of_S(G, sylow_p(G, 11), 11)
    # only 11:5 and Z/11 contain S, neither is quasi-11 apart from Z/11 itself
    assert order == 11
    assert contrib == [11]


PURITY = [("M11", 11, True), ("M22", 11, True), ("M12", 11, False), ("M23", 11, False),
          ("M22", 7, False), ("M24", 11, False)]


@pytest.mark.parametrize("name,p,pure", PURITY)
def test_purity_matrix_computed(fb, name, p, pure):
    rep = analyze_quasip(name, p, fb)
    assert rep.method == "computed"
    assert rep.is_p_pure is pure
    assert rep.is_quasi_p


def test_m24_23_from_facts(fb):
    rep = analyze_quasip("M24", 23, fb, mode="facts")
    assert rep.method == "facts-derived"
    assert rep.is_p_pure is False
    assert facts_purity(fb, "M24", 23)[0] is False
    assert facts_purity(fb, "M11", 11)[0] is None


def test_m11_g_of_s_is_psl2_11():
    G = load_group("M11")
    res = G_of_S(G, sylow_p(G, 11), 11)
    assert res.pure and res.group.order == 660


def test_weights(fb):
    assert p_weight(load_group("M11"), 11) == 1
    assert p_weight(load_group("M12"), 11) == 2
    rep = analyze_quasip("M12", 11, fb, weight=True)
    assert rep.p_weight == 2 and rep.is_p_pure is False


def test_error_cases(fb):
    with pytest.raises(ValueError):
        analyze_quasip("M11", 7, fb)
    with pytest.raises(ValueError):
        analyze_quasip("trivial", 2, fb)
    G = alternating(5)
    with pytest.raises(ValueError):
        G_of_S(G, sylow_p(G, 2), 2)
