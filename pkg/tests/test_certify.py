import copy
import json
from fractions import Fraction

import pytest

from aictools.certify import (Engine, Fact, RuleError, aic_status, certificate, check_direct_factor,
                              class_witness, induction_check, direct_factor_detail, replay_certificate,
                              rule_conjugate_transport, rule_jump_shift, rule_quotient_scaling,
                              rule_same_group_patch, rule_subgroup_induction)

M11_EXCEPTIONS = {Fraction(j, 5) for j in (6, 7, 9, 12, 14, 17, 19, 27)}


def jf(j, cls="11:5", m=5, group="M11"):
    return Fact(group, 11, cls, m, "jump", j)


def test_fact_validation():
    with pytest.raises(ValueError):
        Fact("M11", 11, "11", 1, "jump")
    with pytest.raises(ValueError):
        Fact("M11", 11, "11", 1, "exists", 2)
    with pytest.raises(ValueError):
        Fact("M11", 11, "11", 1, "jump", 22)
    with pytest.raises(ValueError):
        Fact("M11", 11, "11", 1, "sometimes")


def test_jump_shift_and_patch():
    p = rule_jump_shift(jf(8))
    assert p.kind == "progression" and p.contains(13) and not p.contains(9) and not p.contains(3)
    assert rule_same_group_patch(jf(8), jf(8)).j == 16
    with pytest.raises(RuleError):
        rule_same_group_patch(jf(8), jf(2, "11", 1))
    with pytest.raises(RuleError):
        rule_same_group_patch(jf(8), Fact("M11", 11, "11:5", 5, "jump", 14))   # 22 = 2 * 11


def test_quotient_scaling(engine):
    f = rule_quotient_scaling(jf(8), 5, engine)
    assert (f.cls, f.m, f.j) == ("11", 1, 8)
    assert rule_quotient_scaling(jf(8), 1, engine) is not None
    with pytest.raises(RuleError):
        rule_quotient_scaling(rule_jump_shift(jf(8)), 5, engine)


def test_conjugate_transport(engine):
    w = class_witness(engine, "M11", 11, "11:5", "11:5")
    f = rule_conjugate_transport(jf(8), w)
    assert f.claim() == jf(8).claim()
    with pytest.raises(RuleError):
        rule_conjugate_transport(jf(8), None)


def test_m11_end_to_end(engine):
    st = aic_status("M11", 11, engine)
    assert st.verdict == "verified"
    assert st.exceptions == M11_EXCEPTIONS
    assert st.exceptions_by_class["11"] == frozenset()
    least = {r: f.j for r, f in st.classes["11:5"].progs.items()}
    assert least == {3: 8, 1: 16, 4: 24, 2: 32}


def test_induction_check_m11_from_psl2(engine):
    chk = induction_check(engine, "M11", "PSL2(11)", 11, "11:5")
    assert chk.failures() == []
    src = Fact("PSL2(11)", 11, chk.source, 5, "exists")
    f = rule_subgroup_induction(src, "M11", chk)
    assert f.group == "M11" and f.kind == "exists"


def test_induction_refuses_m24_11(engine):
    fails = induction_check(engine, "M24", "PSL2(11)", 11, "11:10").failures()
    assert any("|N(S)| differs" in s for s in fails)
    with pytest.raises(RuleError):
        rule_subgroup_induction(Fact("PSL2(11)", 11, "11:5", 5, "exists"), "M24",
                                induction_check(engine, "M24", "PSL2(11)", 11, "11:5"))


def test_m24_11_partial(engine):
    st = aic_status("M24", 11, engine)
    assert st.verdict == "partial"
    assert st.uncovered_classes == {"11:2", "11:5", "11:10"}
    assert st.notes


def test_direct_factor_passes(engine):
    for g, h, p in [("J1", "PSL2(11)", 5), ("M23", "PSL2(7)", 7), ("Co3", "PSL2(11)", 11)]:
        assert check_direct_factor(g, h, p, engine)


def test_direct_factor_ru_and_j3_fail(engine):
    ru = direct_factor_detail(engine, "Ru", "PSL2(13)", 7)
    assert not ru.ok and {k for k, v in ru.factorizations.items() if v is None} == {"7:3", "7:6"}
    j3 = direct_factor_detail(engine, "J3", "PSL2(19)", 5)
    assert j3.axiom is None and "cyclic complement" in j3.axiom_problem


def test_all_but_finitely_many_verdict(engine):
    st = aic_status("J1", 5, engine)
    assert st.verdict in ("verified", "all-but-finitely-many")
    assert any(f.rule == "direct-factor" for f in st.roots)


def test_certificate_replay(engine, fb):
    cert = certificate(aic_status("M11", 11, engine))
    assert replay_certificate(cert, fb) == []
    again = certificate(aic_status("M11", 11, Engine(fb)))
    assert json.dumps(cert, sort_keys=True) == json.dumps(again, sort_keys=True)
    assert cert["exceptions"] == ["6/5", "7/5", "9/5", "12/5", "14/5", "17/5", "19/5", "27/5"]


def test_tampered_certificate_detected(engine, fb):
    cert = certificate(aic_status("M11", 11, engine))
    bad = copy.deepcopy(cert)
    patch = next(n for n in bad["nodes"] if n["rule"] == "same_group_patch")
    patch["claim"]["j"] += 1
    assert replay_certificate(bad, fb)
    bad = copy.deepcopy(cert)
    ax = next(n for n in bad["nodes"] if n["rule"].startswith("axiom:"))
    ax["citation"] = "MR0000000"
    assert replay_certificate(bad, fb)
