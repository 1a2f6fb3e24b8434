"""Brute-force oracle for the genus of Y/H, used to probe the closed formula."""
import random

from aictools.genus import BranchData, BranchPoint, IntermediateGenusInput, PointData
from aictools.grouplib import normalizer
from aictools.permcore import PermGroup, conj, cycles, element_order, inv, mul


def coset_action(G, H, g):
    """Permutation of the right cosets Hx induced by right multiplication with g."""
    hs = sorted(H.elements())
    key, reps = {}, []
    for x in sorted(G.elements()):
        k = min(mul(h, x) for h in hs)
        if k not in key:
            key[k] = len(reps)
            reps.append(k)
    return tuple(key[min(mul(h, mul(r, g)) for h in hs)] for r in reps)


def generating_triples(G, n, seed):
    """Random (a, b, c) with abc = 1, all nontrivial, generating G."""
    rng = random.Random(seed)
    out = []
    for _ in range(20000):
        if len(out) == n:
            break
        a, b = G.random_element(rng), G.random_element(rng)
        c = inv(mul(a, b))
        if any(element_order(x) == 1 for x in (a, b, c)):
            continue
        if PermGroup([a, b], G.degree).order == G.order:
            out.append((a, b, c))
    return out


def _conjugates(G, I):
    seen = {}
    els = list(I.elements())
    for x in G.elements():
        seen.setdefault(frozenset(conj(y, x) for y in els), x)
    return seen


def formula_vs_oracle(G, H, triple):
    """(hypotheses hold, formula input, cycle-type branch data, degree).

    For each branch point the representative inertia group is the conjugate
    meeting H the most.  The hypotheses: H is self-normalizing, and the
    conjugates meeting H nontrivially all lie in H and form one H-class.
    """
    d = G.order // H.order
    ngh = normalizer(G, H).order
    ok = ngh == H.order
    hs = set(H.elements())
    pts, bps = [], []
    for g in triple:
        I = PermGroup([g], G.degree)
        cj = _conjugates(G, I)
        best = max(cj, key=lambda J: len(J & hs))
        Ic = PermGroup([conj(g, cj[best])], G.degree)
        NG = normalizer(G, Ic)
        nh = sum(1 for y in NG.elements() if y in hs)
        pts.append(PointData(Ic.order, NG.order, nh, len(best & hs)))
        inside = [J for J in cj if J <= hs]
        meeting = [J for J in cj if len(J & hs) > 1]
        if meeting and (len(meeting) != len(inside) or len(inside) * nh != H.order):
            ok = False
        ct = tuple(sorted(len(c) for c in cycles(coset_action(G, H, g))))
        bps.append(BranchPoint(I.order, ct))
    return ok, IntermediateGenusInput(d, ngh // H.order, tuple(pts)), BranchData(tuple(bps)), d
