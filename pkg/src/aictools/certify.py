"""Rule engine for realizability of inertia groups and jumps.

Facts say that some (G, I)-Galois cover of the affine line exists, optionally
with a concrete inertia jump j or a whole progression j + i*m.  Facts start
from cited axioms and grow under a fixed set of rules; every fact keeps its
premises, so a derivation can be exported and replayed.

Jump sets are kept per residue class mod m: the least concrete jump and the
least progression start.  Saturation therefore works in a finite lattice.
Nothing here ever asserts that a cover does not exist.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable

from .atlasio import Axiom, FactBase
from .grouplib import (conjugacy_witness, direct_factorization, metacyclic_structure,
                       multiplicative_order, sylow_generator)
from .inertia import (CatalogResult, InertiaClass, catalog_for, induced_census, patch_compatible,
                      sigma_set)
from .permcore import Perm, PermGroup, element_order, format_cycles, power

KINDS = ("exists", "jump", "progression", "cofinite")
VERDICTS = ("verified", "all-but-finitely-many", "partial", "unverified")


class RuleError(ValueError):
    pass


@dataclass(frozen=True)
class Assumption:
    """An external input that a rule relies on but does not check."""
    statement: str
    citation: str

    rule = "assumption"
    premises: tuple = ()


@dataclass(frozen=True)
class Fact:
    group: str
    p: int
    cls: str                 # inertia class label, "*" for a statement about all classes
    m: int
    kind: str
    j: int | None = None
    rule: str = "axiom"
    premises: tuple = ()
    citation: str | None = None
    params: tuple[tuple[str, Any], ...] = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown fact kind {self.kind!r}")
        if (self.j is None) != (self.kind in ("exists", "cofinite")):
            raise ValueError("jump and progression facts need j; the others must not have one")
        if self.j is not None and self.j % self.p == 0:
            raise ValueError("p divides the jump")

    @property
    def statement(self) -> str:
        head = f"({self.group}, {self.cls}) p={self.p}"
        if self.kind == "exists":
            return f"{head}: cover exists, jump unknown"
        if self.kind == "jump":
            return f"{head}: jump {self.j} occurs"
        if self.kind == "progression":
            return f"{head}: jumps {self.j} + {self.m}i occur, p not dividing"
        return f"{head}: all but finitely many invariants occur"

    def jump_set(self) -> str:
        return {"exists": "exists, unknown", "cofinite": "cofinite, unenumerated",
                "jump": f"{{{self.j}}}",
                "progression": f"{{{self.j} + {self.m}i : i >= 0}} minus {self.p}Z"}[self.kind]

    def contains(self, j: int) -> bool:
        if j % self.p == 0:
            return False
        if self.kind == "jump":
            return j == self.j
        if self.kind == "progression":
            return j >= self.j and (j - self.j) % self.m == 0
        return False

    def claim(self) -> dict:
        return {"group": self.group, "p": self.p, "class": self.cls, "m": self.m,
                "kind": self.kind, "j": self.j}


# ---------------------------------------------------------------------------
# Catalog access


class Engine:
    """Catalog cache plus rule application for one fact base."""

    def __init__(self, fb: FactBase, *, cent_mode: str = "sylow", seed: int = 0):
        self.fb = fb
        self.cent_mode = cent_mode
        self.seed = seed
        self._cats: dict[tuple[str, int], CatalogResult] = {}

    def catalog(self, group: str, p: int) -> CatalogResult:
        key = (self.fb.canonical(group), p)
        if key not in self._cats:
            self._cats[key] = catalog_for(key[0], p, self.fb, seed=self.seed)
        return self._cats[key]

    def cls(self, group: str, p: int, label: str) -> InertiaClass:
        try:
            return self.catalog(group, p).get(label)
        except StopIteration:
            raise RuleError(f"no class {label!r} in the catalog of ({group}, {p})") from None

    def admissible(self, cls: InertiaClass, j: int) -> bool:
        return Fraction(j, cls.m) in sigma_set(cls, self.cent_mode)


def _class_by_m(cat: CatalogResult, m: int) -> InertiaClass:
    hits = cat.by_m(m)
    if len(hits) != 1:
        raise RuleError(f"{len(hits)} classes with m={m} in ({cat.group}, {cat.p}); axiom is ambiguous")
    return hits[0]


def _top_class(cat: CatalogResult) -> InertiaClass:
    """The class of N_G(S) itself, when N_G(S) has the metacyclic shape."""
    top = [c for c in cat.classes if c.order == cat.normalizer.order]
    if len(top) != 1:
        raise RuleError(f"N_G(S) of ({cat.group}, {cat.p}) is not a candidate inertia group")
    return top[0]


def load_axioms(fb: FactBase, engine: Engine | None = None,
                sylow_groups: Iterable[tuple[str, int]] = ()) -> list[Fact]:
    """Axiom facts for every concrete axiom, plus Sylow-cover facts for ``sylow_groups``."""
    eng = engine or Engine(fb)
    out: list[Fact] = []
    for ax in fb.axioms:
        if ax.group == "*":
            continue
        out.extend(axiom_facts(eng, ax))
    for group, p in sylow_groups:
        ax = next((a for a in fb.axioms if a.kind == "sylow-cover"), None)
        if ax is not None:
            out.extend(axiom_facts(eng, ax, group, p))
    return out


def axiom_facts(eng: Engine, ax: Axiom, group: str | None = None, p: int | None = None) -> list[Fact]:
    if ax.citation not in eng.fb.citations:
        raise RuleError(f"axiom cites unknown key {ax.citation!r}")
    group = eng.fb.canonical(group or ax.group)
    p = p or ax.prime
    if p is None:
        raise RuleError("axiom needs a prime")
    cat = eng.catalog(group, p)
    tag = f"axiom:{ax.citation}"
    if ax.kind == "sylow-cover":
        c = _class_by_m(cat, 1)
        return [Fact(group, p, c.label, 1, "exists", rule=tag, citation=ax.citation)]
    if ax.kind == "aic":
        return [Fact(group, p, c.label, c.m, "exists", rule=tag, citation=ax.citation)
                for c in cat.classes]
    if ax.kind == "normalizer-cover":
        c = _top_class(cat)
        return [Fact(group, p, c.label, c.m, "exists", rule=tag, citation=ax.citation)]
    if ax.kind == "jump":
        c = _class_by_m(cat, ax.m)
        if not eng.admissible(c, ax.jump):
            raise RuleError(f"axiom jump {ax.jump} is not admissible for {c.label}")
        return [Fact(group, p, c.label, c.m, "jump", ax.jump, rule=tag, citation=ax.citation)]
    raise RuleError(f"unknown axiom kind {ax.kind!r}")


# ---------------------------------------------------------------------------
# Rules

PATCHING = Assumption("numerical conditions of the different-inertia patching theorem hold",
                      "MR2016596")
SHIFTING = Assumption("a realized jump j yields every larger j' congruent to j mod m", "MR2016596")


def rule_jump_shift(f: Fact) -> Fact:
    if f.kind not in ("jump", "progression"):
        raise RuleError("jump shift needs a concrete jump")
    if f.kind == "progression":
        return f
    return Fact(f.group, f.p, f.cls, f.m, "progression", f.j, "jump_shift", (f, SHIFTING))


def rule_same_group_patch(f1: Fact, f2: Fact) -> Fact:
    if f1.kind != "jump" or f2.kind != "jump":
        raise RuleError("patching needs two concrete jumps")
    if (f1.group, f1.p, f1.cls) != (f2.group, f2.p, f2.cls):
        raise RuleError("patching needs the same group and inertia class")
    j = f1.j + f2.j
    if j % f1.p == 0:
        raise RuleError(f"p divides j1 + j2 = {j}")
    return Fact(f1.group, f1.p, f1.cls, f1.m, "jump", j, "same_group_patch", (f1, f2, PATCHING))


@dataclass
class InductionCheck:
    g1: str
    g2: str
    p: int
    target: str | None                 # G1 class label
    source: str | None                 # G2 class label
    containment: str | None            # citation of G2 <= G1
    index_coprime: bool
    sylow_order_p: bool
    normalizer_orders: tuple[int, int]  # |N_G1(S)|, |N_G2(S)|
    census: tuple[int, int] | None     # induced class count vs G1 class count
    compatible: bool

    def failures(self) -> list[str]:
        out = []
        if self.containment is None:
            out.append(f"no containment fact {self.g2} <= {self.g1}")
        if not self.index_coprime:
            out.append(f"[{self.g1}:{self.g2}] is divisible by {self.p}")
        if not self.sylow_order_p:
            out.append(f"Sylow {self.p}-subgroups of {self.g1} are not of order {self.p}")
        if self.normalizer_orders[0] != self.normalizer_orders[1]:
            out.append(f"|N(S)| differs: {self.normalizer_orders[0]} in {self.g1}, "
                       f"{self.normalizer_orders[1]} in {self.g2}")
        if self.source is None:
            out.append(f"no compatible subgroup fact: {self.g2} has no class of type {self.target}")
        elif not self.compatible:
            out.append(f"census mismatch for {self.target}: induced {self.census[0]} "
                       f"vs {self.census[1]} classes")
        return out

    def to_params(self) -> tuple:
        return (("g2", self.g2), ("containment", self.containment),
                ("normalizer_orders", list(self.normalizer_orders)),
                ("census", list(self.census) if self.census else None))


def _iso_key(c: InertiaClass) -> tuple[int, int]:
    return (c.m, c.action_order)


def induction_check(eng: Engine, g1: str, g2: str, p: int, target: str) -> InductionCheck:
    fb = eng.fb
    g1, g2 = fb.canonical(g1), fb.canonical(g2)
    cat1, cat2 = eng.catalog(g1, p), eng.catalog(g2, p)
    cls1 = eng.cls(g1, p, target)
    cont = fb.containment(g1, g2)
    o1, o2 = cat1.group_order, cat2.group_order
    cands = [c for c in cat2.classes if _iso_key(c) == _iso_key(cls1)]
    cands.sort(key=lambda c: c.normalizer_order != cls1.normalizer_order)
    src = cands[0] if cands else None
    census = compatible = None
    if src is not None and o1 % o2 == 0:
        census = (induced_census(o1, o2, src), cls1.class_size)
        compatible = patch_compatible(o1, cls1, o2, src)
    return InductionCheck(
        g1, g2, p, target, src.label if src else None, cont.citation if cont else None,
        o1 % o2 == 0 and (o1 // o2) % p != 0, (o1 // p) % p != 0,
        (cat1.normalizer.order, cat2.normalizer.order), census, bool(compatible))


def rule_subgroup_induction(fG2: Fact, G1: str, checks: InductionCheck) -> Fact:
    if fG2.kind == "cofinite" or fG2.cls == "*":
        raise RuleError("induction needs a fact about one inertia class")
    if checks.g2 != fG2.group or checks.source not in (None, fG2.cls):
        raise RuleError("checks do not describe this fact")
    bad = checks.failures()
    if bad:
        raise RuleError("; ".join(bad))
    cont = Assumption(f"{checks.g2} is a subgroup of {checks.g1}", checks.containment)
    return Fact(checks.g1, fG2.p, checks.target, fG2.m, "exists", None, "subgroup_induction",
                (fG2, cont, PATCHING), params=checks.to_params())


def class_witness(eng: Engine, group: str, p: int, a: str, b: str) -> Perm | None:
    """Element conjugating the representative of class a onto that of class b."""
    ca, cb = eng.cls(group, p, a), eng.cls(group, p, b)
    return conjugacy_witness(eng.catalog(group, p).normalizer, ca.representative, cb.representative)


def rule_conjugate_transport(f: Fact, witness: Perm | None) -> Fact:
    if witness is None:
        raise RuleError("no conjugacy witness")
    return Fact(f.group, f.p, f.cls, f.m, f.kind, f.j, "conjugate_transport", (f,),
                params=(("witness", format_cycles(witness)),))


def _subgroup_of_order(I: PermGroup, p: int, m_sub: int) -> PermGroup:
    """The unique subgroup of I = S : C containing S with index m / m_sub."""
    m = I.order // p
    tau = sylow_generator(I, p)
    beta = next(g for g in sorted(I.elements()) if element_order(g) == m)
    return PermGroup([tau, power(beta, m // m_sub)], I.degree, known_order=p * m_sub)


def rule_quotient_scaling(f: Fact, d: int, eng: Engine) -> Fact:
    """Jump j on class I gives jump j*d/gcd(m, d) on the subclass of index gcd(m, d)."""
    if f.kind != "jump":
        raise RuleError("scaling needs a concrete jump")
    if d < 1:
        raise RuleError("d must be positive")
    g = math.gcd(f.m, d)
    j2 = f.j * d // g
    if j2 % f.p == 0:
        raise RuleError(f"p divides the scaled jump {j2}")
    if d == 1:
        return f
    cat = eng.catalog(f.group, f.p)
    I = eng.cls(f.group, f.p, f.cls)
    sub = _subgroup_of_order(I.representative, f.p, f.m // g)
    target = next((c for c in cat.by_m(f.m // g)
                   if conjugacy_witness(cat.normalizer, c.representative, sub) is not None), None)
    if target is None:
        raise RuleError(f"no catalog class for the subgroup of order {f.p * f.m // g}")
    if not eng.admissible(target, j2):
        raise RuleError(f"jump {j2} is not admissible for {target.label}")
    return Fact(f.group, f.p, target.label, target.m, "jump", j2, "quotient_scaling", (f,),
                params=(("d", d),))


# ---------------------------------------------------------------------------
# Direct-factor criterion


@dataclass
class DirectFactorResult:
    group: str
    via: str
    p: int
    factorizations: dict[str, tuple[str, int] | None]   # G class -> (H class, |D|)
    axiom: Fact | None
    axiom_problem: str | None = None

    @property
    def ok(self) -> bool:
        return self.axiom is not None and all(v is not None for v in self.factorizations.values())

    def __bool__(self) -> bool:
        return self.ok

    def failures(self) -> list[str]:
        out = [self.axiom_problem] if self.axiom_problem else []
        out += [f"{k} is not I' x D for a class I' of {self.via}"
                for k, v in self.factorizations.items() if v is None]
        return out


def _h_normalizer_fact(eng: Engine, H: str, p: int) -> tuple[Fact | None, str | None]:
    """The axiom fact for an (H, N_H(S))-cover, or the reason it cannot be used."""
    ax = next((a for a in eng.fb.axioms_for(H, p)
               if a.kind in ("normalizer-cover", "aic") and a.group != "*"), None)
    if ax is None:
        raise RuleError(f"no normalizer-cover axiom for ({H}, {p})")
    cat = eng.catalog(H, p)
    try:
        top = _top_class(cat)
    except RuleError:
        return None, (f"N_{H}(S) has order {cat.normalizer.order} but no cyclic complement to S, "
                      f"so it is not an inertia group and the cited axiom cannot apply to it")
    return next(f for f in axiom_facts(eng, ax) if f.cls == top.label), None


def direct_factor_detail(eng: Engine, G: str, H: str, p: int) -> DirectFactorResult:
    G, H = eng.fb.canonical(G), eng.fb.canonical(H)
    catG, catH = eng.catalog(G, p), eng.catalog(H, p)
    hkeys = {_iso_key(c): c.label for c in catH.classes}
    fac: dict[str, tuple[str, int] | None] = {}
    for c in catG.classes:
        I = c.representative
        fac[c.label] = None
        for m_sub in sorted((k for k in range(1, c.m + 1) if c.m % k == 0), reverse=True):
            Ip = _subgroup_of_order(I, p, m_sub)
            D = direct_factorization(I, Ip)
            if D is None:
                continue
            mp, ap = _metacyclic_key(Ip, p)
            if (mp, ap) in hkeys:
                fac[c.label] = (hkeys[(mp, ap)], D.order)
                break
    return DirectFactorResult(G, H, p, fac, *_h_normalizer_fact(eng, H, p))


def _metacyclic_key(I: PermGroup, p: int) -> tuple[int, int]:
    m, a = metacyclic_structure(I, p)
    return m, multiplicative_order(a, p)


def check_direct_factor(G: str, H: str, p: int, data: Engine | FactBase) -> bool:
    eng = data if isinstance(data, Engine) else Engine(data)
    return direct_factor_detail(eng, G, H, p).ok


def rule_direct_factor(res: DirectFactorResult) -> Fact:
    if not res.ok:
        raise RuleError("; ".join(res.failures()))
    scaling = Assumption("jump scaling and sub-inertia quotients of normalizer covers", "MR2003452")
    return Fact(res.group, res.p, "*", 1, "cofinite", None, "direct-factor", (res.axiom, SHIFTING, scaling),
                params=(("via", res.via),
                        ("factorizations", sorted((k, v[0], v[1]) for k, v in
                                                  res.factorizations.items()))))


# ---------------------------------------------------------------------------
# Saturation and status


@dataclass
class ClassState:
    cls: InertiaClass
    exists: Fact | None = None
    jumps: dict[int, Fact] = field(default_factory=dict)     # residue -> least concrete jump
    progs: dict[int, Fact] = field(default_factory=dict)     # residue -> least progression

    @property
    def realized(self) -> bool:
        return bool(self.exists or self.jumps or self.progs)

    def add(self, f: Fact) -> bool:
        if f.kind == "exists":
            if self.exists is None:
                self.exists = f
                return True
            return False
        r = f.j % f.m
        book = self.jumps if f.kind == "jump" else self.progs
        old = book.get(r)
        if f.kind == "jump" and r in self.progs and self.progs[r].j <= f.j:
            return False
        if old is None or f.j < old.j:
            book[r] = f
            return True
        return False


@dataclass
class AICStatus:
    group: str
    p: int
    verdict: str
    exceptions: frozenset[Fraction]
    exceptions_by_class: dict[str, frozenset[Fraction] | None]
    uncovered_classes: frozenset[str]
    classes: dict[str, ClassState]
    roots: list[Fact]
    notes: list[str] = field(default_factory=list)
    method: str = "computed"

    @property
    def exceptions_complete(self) -> bool:
        """True when every realized class has an enumerated exception set."""
        return all(v is not None for v in self.exceptions_by_class.values())


def _residue_exceptions(st: ClassState, eng: Engine) -> frozenset[Fraction] | None:
    ss = sigma_set(st.cls, eng.cent_mode)
    m = st.cls.m
    residues = [r for r in range(m) if math.gcd(r, m) == ss.gcd_target]
    if not residues or any(r not in st.progs for r in residues):
        return None
    top = max(f.j for f in st.progs.values())
    return frozenset(Fraction(j, m) for j in ss.jumps(Fraction(top, m))
                     if j < st.progs[j % m].j)


def saturate(eng: Engine, G: str, p: int, budget: int = 10000) -> tuple[dict[str, ClassState], list[Fact], list[str]]:
    fb = eng.fb
    G = fb.canonical(G)
    cat = eng.catalog(G, p)
    states = {c.label: ClassState(c) for c in cat.classes}
    group_facts: list[Fact] = []
    notes: list[str] = []
    seeds: list[Fact] = []
    for ax in fb.axioms_for(G, p):
        if ax.group == "*":
            seeds += axiom_facts(eng, ax, G, p)
        else:
            seeds += axiom_facts(eng, ax)
    for f in seeds:
        if f.group == G and f.p == p:
            states[f.cls].add(f)
    for plan in fb.plans_for(G, p):
        if plan.rule == "subgroup-induction":
            hf = {f.cls: f for ax in fb.axioms_for(plan.via, p) if ax.group != "*"
                  for f in axiom_facts(eng, ax)}
            for label in states:
                chk = induction_check(eng, G, plan.via, p, label)
                try:
                    src = hf.get(chk.source) if chk.source else None
                    if src is None and chk.source is not None:
                        raise RuleError(f"no fact for class {chk.source} of {plan.via}")
                    if src is None:
                        raise RuleError("; ".join(chk.failures()))
                    states[label].add(rule_subgroup_induction(src, G, chk))
                except RuleError as e:
                    notes.append(f"induction {plan.via} -> {G} for {label}: {e}")
        elif plan.rule == "direct-factor":
            try:
                group_facts.append(rule_direct_factor(direct_factor_detail(eng, G, plan.via, p)))
            except RuleError as e:
                notes.append(f"direct-factor criterion via {plan.via}: {e}")
    steps = 0
    changed = True
    while changed and steps < budget:
        changed = False
        for st in states.values():
            for f in list(st.jumps.values()):
                steps += 1
                changed |= st.add(rule_jump_shift(f))
            conc = sorted(st.jumps.values(), key=lambda f: f.j)
            for a in conc:
                for b in conc:
                    if b.j < a.j:
                        continue
                    steps += 1
                    try:
                        nf = rule_same_group_patch(b, a) if b.j > a.j else rule_same_group_patch(a, b)
                    except RuleError:
                        continue
                    if eng.admissible(st.cls, nf.j):
                        changed |= st.add(nf)
            for f in conc:
                for d in range(2, f.m + 1):
                    if f.m % d:
                        continue
                    steps += 1
                    try:
                        nf = rule_quotient_scaling(f, d, eng)
                    except RuleError:
                        continue
                    changed |= states[nf.cls].add(nf)
    if changed:
        notes.append(f"rule budget {budget} exhausted before saturation")
    return states, group_facts, notes


def aic_status(G: str, p: int, facts: FactBase | Engine, budget: int = 10000) -> AICStatus:
    eng = facts if isinstance(facts, Engine) else Engine(facts)
    name = eng.fb.canonical(G)
    states, group_facts, notes = saturate(eng, name, p, budget)
    by_class = {}
    for label, st in states.items():
        by_class[label] = _residue_exceptions(st, eng) if st.realized else None
    uncovered = frozenset(k for k, st in states.items() if not st.realized)
    full_residues = all(by_class[k] is not None for k in states)
    if not uncovered:
        verdict = "verified"
    elif group_facts or full_residues:
        verdict = "all-but-finitely-many"
    elif len(uncovered) < len(states):
        verdict = "partial"
    else:
        verdict = "unverified"
    exc = frozenset().union(*(v for v in by_class.values() if v is not None))
    roots = group_facts + [f for st in states.values()
                           for f in [st.exists, *st.jumps.values(), *st.progs.values()] if f]
    method = eng.catalog(name, p).method
    return AICStatus(name, p, verdict, exc, by_class, uncovered, states, roots, notes, method)


# ---------------------------------------------------------------------------
# Certificates


def _node_key(n) -> tuple:
    if isinstance(n, Assumption):
        return ("assumption", n.statement, n.citation)
    return (n.rule, json.dumps(n.claim(), sort_keys=True), n.citation,
            json.dumps(dict(n.params), sort_keys=True, default=str))


def certificate(status: AICStatus, cent_mode: str = "sylow") -> dict:
    nodes: list[dict] = []
    ids: dict[tuple, int] = {}

    def visit(n) -> int:
        prem = [visit(q) for q in n.premises]
        key = _node_key(n) + (tuple(prem),)
        if key in ids:
            return ids[key]
        rec = {"id": len(nodes), "statement": n.statement, "rule": n.rule,
               "premises": prem, "citation": n.citation}
        if isinstance(n, Fact):
            rec["claim"] = n.claim()
            rec["params"] = {k: v for k, v in n.params}
        nodes.append(rec)
        ids[key] = rec["id"]
        return rec["id"]

    roots = [visit(f) for f in sorted(status.roots, key=lambda f: (f.cls, f.kind, f.j or 0))]
    classes = []
    for label, st in status.classes.items():
        exc = status.exceptions_by_class[label]
        classes.append({
            "label": label, "m": st.cls.m, "realized": st.realized,
            "least_jump_by_residue": {str(r): f.j for r, f in sorted(st.progs.items())},
            "exceptions": None if exc is None else [str(s) for s in sorted(exc)]})
    return {"format": "aictools-certificate", "version": 1, "group": status.group,
            "p": status.p, "cent_mode": cent_mode, "method": status.method,
            "verdict": status.verdict, "uncovered_classes": sorted(status.uncovered_classes),
            "exceptions": [str(s) for s in sorted(status.exceptions)], "classes": classes,
            "nodes": nodes, "roots": roots, "notes": status.notes}


def replay_certificate(cert: dict, fb: FactBase) -> list[str]:
    """Re-check every node of a certificate; returns the problems found."""
    problems: list[str] = []
    nodes = cert["nodes"]
    axioms = {(fb.canonical(a.group), a.citation) for a in fb.axioms}
    wild = {a.citation for a in fb.axioms if a.group == "*"}
    for n in nodes:
        nid = n["id"]
        if any(q >= nid for q in n["premises"]):
            problems.append(f"node {nid}: premise does not precede it")
            continue
        prem = [nodes[q] for q in n["premises"]]
        pc = [q.get("claim") for q in prem if "claim" in q]
        c = n.get("claim")
        rule = n["rule"]
        if rule == "assumption":
            if n["citation"] not in fb.citations:
                problems.append(f"node {nid}: assumption cites unknown key")
        elif rule.startswith("axiom:"):
            key = (c["group"], n["citation"])
            if n["citation"] not in fb.citations or (key not in axioms and n["citation"] not in wild):
                problems.append(f"node {nid}: no such axiom {key}")
        elif rule == "jump_shift":
            if len(pc) != 1 or c["kind"] != "progression" or pc[0]["j"] != c["j"] \
                    or pc[0]["kind"] != "jump":
                problems.append(f"node {nid}: bad jump shift")
        elif rule == "same_group_patch":
            ok = (len(pc) == 2 and all(q["kind"] == "jump" for q in pc)
                  and pc[0]["class"] == pc[1]["class"] == c["class"]
                  and pc[0]["j"] + pc[1]["j"] == c["j"] and c["j"] % c["p"] != 0)
            if not ok:
                problems.append(f"node {nid}: bad patch")
        elif rule == "quotient_scaling":
            d = n["params"]["d"]
            q = pc[0] if len(pc) == 1 else None
            if q is None or c["m"] != q["m"] // math.gcd(q["m"], d) \
                    or c["j"] != q["j"] * d // math.gcd(q["m"], d):
                problems.append(f"node {nid}: bad scaling")
        elif rule == "subgroup_induction":
            if len(pc) != 1 or pc[0]["group"] != fb.canonical(n["params"]["g2"]) \
                    or fb.containment(c["group"], pc[0]["group"]) is None:
                problems.append(f"node {nid}: bad induction")
        elif rule == "direct-factor":
            if len(pc) != 1 or pc[0]["group"] != fb.canonical(n["params"]["via"]):
                problems.append(f"node {nid}: bad direct-factor step")
        elif rule == "conjugate_transport":
            if len(pc) != 1 or pc[0] != c:
                problems.append(f"node {nid}: bad transport")
        else:
            problems.append(f"node {nid}: unknown rule {rule}")
    return problems
