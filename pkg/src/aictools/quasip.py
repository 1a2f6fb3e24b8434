"""Quasi-p and p-purity predicates for groups whose order is divisible by p once.

With |S| = p every nontrivial quasi-p subgroup whose Sylow subgroup lies in S
contains S and is generated by its Sylow conjugates.  So G(S) is generated by
the conjugates S^g for which <S, S^g> is a proper subgroup, and the scan runs
over Sylow conjugates rather than over the subgroup lattice.
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from itertools import chain, combinations
from typing import Callable

from .atlasio import FactBase, can_load, load_group
from .grouplib import (Orbit, OutOfScope, cyclic_key, normal_closure, normalizer,
                       p_valuation, sylow_p)
from .permcore import Perm, PermGroup, conj, orbits

log = logging.getLogger(__name__)

Progress = Callable[[str], None]


def _quiet(msg: str) -> None:
    log.debug(msg)


def p_part(G: PermGroup, p: int, seed: int = 0) -> PermGroup:
    """p(G): the subgroup generated by the elements of p-power order."""
    if G.order % p:
        return PermGroup([], G.degree, name="1")
    if p_valuation(G.order, p) > 1:
        raise OutOfScope(f"{p}^2 divides |G|")
    return normal_closure(G, sylow_p(G, p, seed), seed)


def is_quasi_p(G: PermGroup, p: int, seed: int = 0) -> bool:
    return p_part(G, p, seed).order == G.order


@dataclass
class Contribution:
    """A Sylow conjugate S^g that lies with S in a proper subgroup."""
    generator: Perm
    proof: str          # "intransitive" or "order=<n>"


@dataclass
class GSResult:
    group: PermGroup                     # G(S), or G when a full generating set was certified
    pure: bool
    method: str                          # "random" or "exhaustive"
    contributions: list[Contribution] = field(default_factory=list)
    conjugates_scanned: int = 0


def _properness(G: PermGroup, x: Perm, y: Perm, seed: int) -> str | None:
    """Proof that <x, y> is a proper subgroup of G, or None if it is all of G."""
    orbs = orbits([x, y], G.degree)
    if len(orbits(G.generators, G.degree)) < len(orbs):
        return "intransitive"
    K = PermGroup([x, y], G.degree, seed=seed)
    if K.order < G.order:
        return f"order={K.order}"
    return None


def _orbit_union_stabilizers(G: PermGroup, S: PermGroup, seed: int,
                             orbit_limit: int = 100000) -> list[PermGroup]:
    """Setwise stabilizers in G of proper unions of S-orbits.

    Each contains S and is intransitive, so every pair <S, S^g> drawn from
    one of them is certified proper.  Unions whose G-orbit exceeds
    ``orbit_limit`` subsets are skipped.
    """
    orbs = orbits(S.generators, G.degree)
    out = []
    seen = set()
    for r in range(1, len(orbs)):
        for combo in combinations(orbs, r):
            U = frozenset(chain.from_iterable(combo))
            comp = frozenset(range(G.degree)) - U
            if U in seen or comp in seen:
                continue
            seen.add(U)
            try:
                orb = Orbit(G, U, lambda X, g: frozenset(g[i] for i in X), lambda X: X,
                            limit=orbit_limit)
            except OutOfScope:
                continue
            K = orb.stabilizer(seed)
            if K.order < G.order:
                out.append(K)
    return out


def G_of_S(G: PermGroup, S: PermGroup, p: int, *, seed: int = 0, random_budget: int = 300,
           exhaustive_limit: int = 20000, progress: Progress = _quiet) -> GSResult | None:
    """G(S) = <S^g : <S, S^g> != G>.

    A random phase accumulates certified contributions and stops once they
    generate G.  If that does not happen, every Sylow conjugate is examined,
    one representative per N_G(S)-orbit (properness is constant on those
    orbits because S^n = S).  Returns None when the conjugate count exceeds
    ``exhaustive_limit`` and the random phase was inconclusive.
    """
    if S.order != p or G.order % p or (G.order // p) % p == 0:
        raise ValueError("S must be a Sylow p-subgroup of order p")
    if not all(G.contains(s) for s in S.generators):
        raise ValueError("S is not contained in G")
    x = S.generators[0]
    rng = random.Random(seed)
    contribs: list[Contribution] = []
    jgens = [x]
    J = S

    def add(y: Perm, proof: str) -> None:
        nonlocal J
        contribs.append(Contribution(y, proof))
        jgens.append(y)
        J = PermGroup(jgens, G.degree, seed=seed)

    ambients = [G] + _orbit_union_stabilizers(G, S, seed)
    for t in range(random_budget):
        y = conj(x, ambients[t % len(ambients)].random_element(rng))
        if J.contains(y):
            continue
        proof = _properness(G, x, y, seed)
        if proof is None:
            continue
        add(y, proof)
        progress(f"G(S) scan: draw {t}, |J| = {J.order}")
        if J.order == G.order:
            return GSResult(G, False, "random", contribs, t + 1)

    N = normalizer(G, S, seed)
    n_conj = G.order // N.order
    if n_conj > exhaustive_limit:
        progress(f"G(S) scan: {n_conj} conjugates exceed the exhaustive limit")
        return None
    orb = Orbit(G, (x,), lambda o, g: (conj(o[0], g),), lambda o: cyclic_key(o[0]))
    assert len(orb) == n_conj
    seen: set = set()
    reps = 0
    for pt in orb.points:
        k = cyclic_key(pt[0])
        if k in seen:
            continue
        norb = Orbit(N, pt, lambda o, g: (conj(o[0], g),), lambda o: cyclic_key(o[0]))
        seen.update(norb.index)
        reps += 1
        y = pt[0]
        if k == cyclic_key(x) or J.contains(y):
            continue
        proof = _properness(G, x, y, seed)
        if proof is None:
            continue
        add(y, proof)
        # close J under N_G(S)
        grew = True
        while grew and J.order < G.order:
            grew = False
            for z in list(J.generators):
                for n in N.generators:
                    w = conj(z, n)
                    if not J.contains(w):
                        jgens.append(w)
                        J = PermGroup(jgens, G.degree, seed=seed)
                        grew = True
        progress(f"G(S) exhaustive: {reps} orbit representatives, |J| = {J.order}")
        if J.order == G.order:
            return GSResult(G, False, "exhaustive", contribs, len(seen))
    if J.order == G.order:
        return GSResult(G, False, "exhaustive", contribs, len(seen))
    if not is_normal_in(N, J):
        raise AssertionError("G(S) is not normalized by N_G(S)")
    J.name = "G(S)"
    return GSResult(J, True, "exhaustive", contribs, len(seen))


def is_normal_in(N: PermGroup, J: PermGroup) -> bool:
    return all(J.contains(conj(j, n)) for j in J.generators for n in N.generators)


def is_p_pure(G: PermGroup, S: PermGroup, p: int, **kw) -> bool | None:
    res = G_of_S(G, S, p, **kw)
    return None if res is None else res.pure


def p_weight(G: PermGroup, p: int, budget: int = 200, seed: int = 0,
             S: PermGroup | None = None) -> int | None:
    """Minimal number of p-pure quasi-p subgroups containing S that generate G.

    Candidates are the proper subgroups <S, S^g>, which are quasi-p by
    construction and contain S; their purity is decided recursively.  Search
    stops at three subgroups or when ``budget`` draws are spent.
    """
    S = S or sylow_p(G, p, seed)
    top = G_of_S(G, S, p, seed=seed)
    if top is None:
        return None
    if top.pure:
        return 1
    x = S.generators[0]
    rng = random.Random(seed + 1)
    cands: list[PermGroup] = []
    for _ in range(budget):
        y = conj(x, G.random_element(rng))
        if cyclic_key(y) == cyclic_key(x):
            continue
        K = PermGroup([x, y], G.degree, seed=seed)
        if K.order == G.order or any(K == C for C in cands):
            continue
        sub = G_of_S(K, S, p, seed=seed, random_budget=50)
        if sub is None or not sub.pure:
            continue
        cands.append(K)
        for k in (2, 3):
            for combo in combinations(cands, k):
                if combo[-1] is not K:
                    continue
                gens = [g for C in combo for g in C.generators]
                if PermGroup(gens, G.degree, seed=seed).order == G.order:
                    return k
    return None


# ---------------------------------------------------------------------------
# Facts mode


def facts_purity(fb: FactBase, group: str, p: int) -> tuple[bool | None, str]:
    """Purity from the maximal subgroups containing a Sylow p-subgroup.

    A maximal M contains S in |N_G(S)| / |N_M(S)| conjugates.  Two distinct
    quasi-p maximal overgroups generate G, so G is not pure; a single
    maximal overgroup bounds G(S) and G is pure.
    """
    gf = fb.get(group)
    if gf is None or p not in gf.overgroups or p not in gf.normalizers:
        return None, "no overgroup data"
    nG = gf.normalizers[p].realize().order
    counts = [(og, nG // og.sylow_normalizer) for og in gf.overgroups[p]]
    quasi = sum(c for og, c in counts if og.simple)
    total = sum(c for _, c in counts)
    desc = ", ".join(f"{og.label} x{c}" for og, c in counts)
    if quasi >= 2:
        return False, f"two quasi-{p} maximal overgroups of S ({desc})"
    if total == 1:
        return True, f"unique maximal overgroup of S ({desc})"
    return None, f"overgroups do not decide purity ({desc})"


@dataclass
class QuasiPReport:
    group: str
    p: int
    pG_order: int | None
    is_quasi_p: bool | None
    GS_order: int | None
    is_p_pure: bool | None
    p_weight: int | None
    method: str                 # "computed" or "facts-derived"
    order: int | None = None
    notes: list[str] = field(default_factory=list)

    def check(self) -> None:
        if self.is_quasi_p is not None and self.pG_order is not None and self.order:
            assert self.is_quasi_p == (self.pG_order == self.order)
        if self.is_p_pure and self.GS_order is not None and self.order:
            assert self.GS_order < self.order
        if self.p_weight is not None and self.is_p_pure is not None:
            assert (self.p_weight == 1) == self.is_p_pure


def analyze_quasip(group: str, p: int, fb: FactBase, *, seed: int = 0, budget: int = 300,
                   mode: str = "auto", weight: bool = False,
                   progress: Progress = _quiet) -> QuasiPReport:
    """Quasi-p report, computed from permutations when possible, else from facts.

    ``mode`` is "auto", "computed" or "facts".  In auto mode an inconclusive
    computation falls back to facts and the note records it.
    """
    name = fb.canonical(group)
    notes = ["G' ranges over subgroups containing the fixed Sylow subgroup S"] if weight else []
    if mode != "facts" and can_load(name):
        G = load_group(name)
        if G.order % p:
            raise ValueError(f"{p} does not divide |{name}| = {G.order}")
        pG = p_part(G, p, seed)
        S = sylow_p(G, p, seed)
        res = G_of_S(G, S, p, seed=seed, random_budget=budget, progress=progress)
        if res is not None:
            w = None
            if weight:
                w = 1 if res.pure else p_weight(G, p, budget=budget, seed=seed, S=S)
            notes.append(f"G(S) via {res.method} scan, {len(res.contributions)} certified conjugates")
            rep = QuasiPReport(name, p, pG.order, pG.order == G.order, res.group.order, res.pure,
                               w, "computed", G.order, notes)
            rep.check()
            return rep
        if mode == "computed":
            return QuasiPReport(name, p, pG.order, pG.order == G.order, None, None, None,
                                "computed", G.order, notes + ["scan inconclusive within budget"])
        notes.append("computed scan inconclusive; purity taken from facts")
        quasi = pG.order == G.order
        pg_order = pG.order
    else:
        gf = fb.get(name)
        if gf is None:
            raise LookupError(f"unknown group {group!r}")
        if gf.order % p:
            raise ValueError(f"{p} does not divide |{name}|")
        quasi = True if gf.simple else None
        pg_order = gf.order if gf.simple else None
        if gf.simple:
            notes.append("quasi-p because the group is simple and p divides its order")
    pure, why = facts_purity(fb, name, p)
    notes.append(why)
    order = fb.order(name)
    gs = order if pure is False else None
    rep = QuasiPReport(name, p, pg_order, quasi, gs, pure, 1 if pure else None,
                       "facts-derived", order, notes)
    rep.check()
    return rep
