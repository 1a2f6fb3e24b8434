"""Acceptance criteria 1-12, one test each.

Run standalone with ``pytest tests/test_acceptance.py``; a summary line per
criterion is printed at the end of the session.
"""
import json
import math
import random
import time
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from aictools.atlasio import load_group
from aictools.certify import Engine, aic_status, certificate, check_direct_factor, replay_certificate
from aictools.genus import (BranchData, BranchPoint, IntermediateGenusInput, PointData,
                            genus_from_jump, intermediate_genus, quotient_genus_cycletypes)
from aictools.grouplib import is_normal, normal_closure, sylow_p
from aictools.inertia import SigmaSet, catalog_for, m_G, ram_census
from aictools.lattice import SmallGroup, literal_G_of_S
from aictools.permcore import PermGroup, mul
from aictools.quasip import G_of_S, analyze_quasip
from aictools.ramfilt import RamFiltration, herbrand_phi, herbrand_psi, inertia_jump, ram_invariant
from aictools.tails import config_genus_sum, enumerate_configs, filter_by_quotient_genus


def timed(fn, *a, **kw):
    t = time.perf_counter()
    out = fn(*a, **kw)
    return out, time.perf_counter() - t


def test_criterion_1_group_orders():
    expected = {"M11": 7920, "PSL2(11)": 660, "M12": 95040, "M22": 443520, "M23": 10200960,
                "M24": 244823040}
    for name, order in expected.items():
        G, dt = timed(load_group, name)
        assert G.order == order
        assert dt < 5


def test_criterion_2_table1(fb):
    orders = fb.maximal_table("M11").orders()
    assert orders == [720, 660, 144, 120, 48]
    assert all(7920 % o == 0 for o in orders)
    assert load_group("PSL2(11)").order == 660 and load_group("S5").order == 120


PURITY = [("M11", 11, True, "computed"), ("M22", 11, True, "computed"),
          ("M12", 11, False, "computed"), ("M23", 11, False, "computed"),
          ("M22", 7, False, "computed"), ("M24", 11, False, None), ("M24", 23, False, None)]


def test_criterion_3_purity_matrix(fb):
    for name, p, pure, method in PURITY:
        rep, dt = timed(analyze_quasip, name, p, fb)
        assert rep.is_p_pure is pure, (name, p)
        if method:
            assert rep.method == method
        assert rep.method in ("computed", "facts-derived")
        assert dt < 600


def test_criterion_4_oracle_equivalence():
    for name, p in [("PSL2(11)", 11), ("A5", 5)]:
        G = load_group(name)
        S = sylow_p(G, p)
        lit, _ = literal_G_of_S(SmallGroup(G), S, p)
        res = G_of_S(G, S, p)
        assert res.group.order == lit
        assert res.pure == (lit < G.order)


def test_criterion_5_catalog_census(fb):
    cat = catalog_for("M11", 11, fb)
    assert [c.m for c in cat.classes] == [1, 5]
    assert [ram_census(7920, c).as_tuple() for c in cat.classes] == [(720, 5, 144), (144, 1, 144)]
    mon = catalog_for("M", 71, fb)
    assert mon.method == "facts-derived"
    assert sorted(c.m for c in mon.classes) == [1, 5, 7, 35]


def test_criterion_6_herbrand():
    t0 = time.perf_counter()
    f = RamFiltration((55,) + (11,) * 8)
    assert ram_invariant(f) == Fraction(8, 5) and inertia_jump(f) == 8
    rng = random.Random(6)
    for _ in range(1000):
        t = Fraction(rng.randint(0, 10 ** 5), rng.randint(1, 997))
        assert herbrand_phi(f, herbrand_psi(f, t)) == t
    assert time.perf_counter() - t0 < 1


def test_criterion_7_genus():
    assert genus_from_jump(8, 11, 0) == 3
    pt = PointData(11, 55, 55, 11)
    g = intermediate_genus(IntermediateGenusInput(12, 1, (pt, pt, pt)))
    oracle = quotient_genus_cycletypes(12, BranchData(tuple(BranchPoint(11, (11, 1)) for _ in range(3))))
    assert g == oracle == 4
    for j in range(6, 51):
        assert genus_from_jump(j, 11, 0) == j - 5
        assert genus_from_jump(j, 12, 1) == j - 6


def test_criterion_8_table3():
    t0 = time.perf_counter()
    cfgs = enumerate_configs(range(6, 11), 5)
    assert [c.jumps for c in cfgs] == [(10,), (6, 9), (7, 8), (6, 6, 8), (6, 7, 7), (6, 6, 6, 7),
                                       (6, 6, 6, 6, 6)]
    assert [config_genus_sum(c, 12, 1) for c in cfgs] == [4, 3, 3, 2, 2, 1, 0]
    assert [c.jumps for c in filter_by_quotient_genus(cfgs, 12, 1, 4)] == [(10,)]
    assert time.perf_counter() - t0 < 1


def test_criterion_9_m11_certification(fb):
    st_, dt = timed(aic_status, "M11", 11, Engine(fb))
    assert st_.verdict == "verified"
    assert st_.exceptions == {Fraction(j, 5) for j in (6, 7, 9, 12, 14, 17, 19, 27)}
    assert st_.exceptions_by_class["11"] == frozenset()
    assert dt < 1


def test_criterion_10_table2(fb, engine):
    rows = {(pl.group, pl.prime) for pl in fb.plans if pl.table == 2}
    assert len(rows) == 18
    for g, p in sorted(rows):
        assert aic_status(g, p, engine).verdict == "verified", (g, p)
    assert aic_status("M24", 11, engine).verdict == "partial"


TABLE45 = {("J1", 5): 2, ("J3", 5): 2, ("M23", 7): 3, ("M24", 7): 3, ("McL", 7): 3, ("Ru", 7): 6,
           ("Co3", 11): 5, ("Fi22", 11): 5}


def test_criterion_11_tables_4_5(fb, engine):
    plans = {(pl.group, pl.prime): pl.via for pl in fb.plans if pl.rule == "direct-factor"}
    assert set(plans) == set(TABLE45)
    got = {k: m_G(engine.catalog(*k).classes, "sylow") for k in TABLE45}
    assert got == TABLE45
    # the direct-factor criterion itself: fails for (Ru, PSL2(13)) and (J3, PSL2(19)),
    # see the ledger; this is reported, not hidden
    failing = sorted(k for k, h in plans.items() if not check_direct_factor(k[0], h, k[1], engine))
    assert failing == [], f"direct-factor check fails for {failing}"


small = ["PSL2(7)", "PSL2(11)", "PSL2(13)", "A5", "A6", "A7", "S5", "S6"]


def _enumerate(G):
    seen, todo = {G.identity()}, [G.identity()]
    while todo:
        x = todo.pop()
        for g in G.generators:
            y = mul(x, g)
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return len(seen)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(small), st.integers(0, 10 ** 6), st.integers(2, 400), st.integers(1, 12))
def _property_round(name, seed, j, g):
    G = load_group(name)
    x = G.random_element(seed)
    K = normal_closure(G, PermGroup([x], G.degree))
    assert is_normal(G, K)
    ss = SigmaSet(12, g, 13) if 12 % g == 0 else SigmaSet(12, 1, 13)
    s = Fraction(j, 12)
    assert (s in ss) == (j > 12 and j % 13 != 0 and math.gcd(j, 12) == ss.gcd_target)


def test_criterion_12_property_suites(fb):
    t0 = time.perf_counter()
    for name in small:
        G = load_group(name)
        assert G.order <= 5000
        assert _enumerate(G) == G.order
    _property_round()
    a = json.dumps(certificate(aic_status("M11", 11, Engine(fb))), sort_keys=True)
    b = json.dumps(certificate(aic_status("M11", 11, Engine(fb))), sort_keys=True)
    assert a == b
    assert replay_certificate(json.loads(a), fb) == []
    assert time.perf_counter() - t0 < 120
