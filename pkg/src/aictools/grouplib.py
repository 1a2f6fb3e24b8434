"""Subgroup-level algorithms on top of :mod:`aictools.permcore`.

Normalizers and centralizers come from orbit-stabilizer computations: the
orbit is enumerated exactly, the stabilizer order is ``|K| / |orbit|``, and
random Schreier generators are added until that order is reached.
"""
from __future__ import annotations

import logging
import math
import random
from math import comb
from typing import Callable, Hashable, Sequence

from .permcore import (Perm, PermGroup, certified_subgroup, conj, element_order,
                       fixed_points, inv, is_identity, mul, power)

log = logging.getLogger(__name__)


class NotContained(ValueError):
    pass


class OutOfScope(ValueError):
    """Raised for inputs outside the order-p Sylow regime handled here."""


def subgroup(G: PermGroup, gens: Sequence[Perm], *, name: str | None = None,
             known_order: int | None = None) -> PermGroup:
    """Subgroup of ``G`` generated by ``gens``; membership and Lagrange are checked."""
    for g in gens:
        if not G.contains(g):
            raise NotContained(f"generator {g} is not in {G!r}")
    H = PermGroup(gens, G.degree, name=name, known_order=known_order)
    if G.order % H.order:
        raise AssertionError(f"|H| = {H.order} does not divide |G| = {G.order}")
    return H


def trivial_subgroup(G: PermGroup) -> PermGroup:
    return PermGroup([], G.degree, name="1")


def _require_sub(G: PermGroup, H: PermGroup) -> None:
    if H.degree != G.degree or not all(G.contains(h) for h in H.generators):
        raise NotContained(f"{H!r} is not contained in {G!r}")


def p_valuation(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


# ---------------------------------------------------------------------------
# Orbit-stabilizer machinery


class Orbit:
    """An orbit of ``G`` on hashable keys with a transversal.

    ``points[i]`` is the object at position ``i``; ``reps[i]`` maps the seed
    object to it.
    """

    def __init__(self, G: PermGroup, seed_obj, act: Callable, key: Callable[..., Hashable],
                 *, stop_at: Hashable | None = None, limit: int | None = None):
        self.G = G
        self.act = act
        self.key = key
        k0 = key(seed_obj)
        self.index: dict[Hashable, int] = {k0: 0}
        self.points = [seed_obj]
        self.reps = [G.identity()]
        gens = G.generators
        found = k0 == stop_at
        i = 0
        while i < len(self.points) and not found:
            x, u = self.points[i], self.reps[i]
            for s in gens:
                y = act(x, s)
                ky = key(y)
                if ky not in self.index:
                    self.index[ky] = len(self.points)
                    self.points.append(y)
                    self.reps.append(mul(u, s))
                    if ky == stop_at:
                        found = True
                        break
                    if limit is not None and len(self.points) > limit:
                        raise OutOfScope(f"orbit exceeds {limit} points")
            i += 1
        self.complete = not found or i >= len(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def rep_of(self, k: Hashable) -> Perm | None:
        i = self.index.get(k)
        return None if i is None else self.reps[i]

    def schreier_generator(self, rng: random.Random) -> Perm:
        i = rng.randrange(len(self.points))
        s = rng.choice(self.G.generators)
        y = self.act(self.points[i], s)
        j = self.index[self.key(y)]
        return mul(mul(self.reps[i], s), inv(self.reps[j]))

    def all_schreier_generators(self):
        for i, x in enumerate(self.points):
            for s in self.G.generators:
                j = self.index[self.key(self.act(x, s))]
                yield mul(mul(self.reps[i], s), inv(self.reps[j]))

    def stabilizer(self, seed: int = 0, name: str | None = None) -> PermGroup:
        if self.G.order % len(self):
            raise AssertionError("orbit length does not divide the group order")
        target = self.G.order // len(self)
        rng = random.Random(seed)
        H = certified_subgroup(self.G.degree,
                               lambda k: [self.schreier_generator(rng) for _ in range(k)],
                               target, rng, self.all_schreier_generators)
        H.name = name
        return H


def setwise_stabilizer(G: PermGroup, points: Sequence[int], seed: int = 0) -> PermGroup:
    pts = frozenset(points)
    orb = Orbit(G, pts, lambda X, g: frozenset(g[x] for x in X), lambda X: X)
    return orb.stabilizer(seed)


# ---------------------------------------------------------------------------
# Conjugation action on subgroups


def cyclic_key(x: Perm) -> Perm:
    """Canonical generator of the cyclic group <x> (x of prime order).

    Among the powers of ``x``, pick the one sending the first moved point
    ``m`` to the least other point of the cycle through ``m``.
    """
    m = next(i for i, y in enumerate(x) if i != y)
    cyc = [m]
    y = x[m]
    while y != m:
        cyc.append(y)
        y = x[y]
    target = min(cyc[1:])
    return power(x, cyc.index(target))


def subgroup_key(H: PermGroup) -> Hashable:
    if H.order == 1:
        return ("trivial",)
    if len(H.generators) == 1 and _is_prime(H.order):
        return ("cyc", cyclic_key(H.generators[0]))
    return ("set", frozenset(H.elements()))


class _SubgroupImage:
    """A conjugate of a subgroup, carried by its generators and element set."""
    __slots__ = ("gens", "order", "_key")

    def __init__(self, gens: tuple, order: int, key):
        self.gens = gens
        self.order = order
        self._key = key


def _conj_action(H: PermGroup):
    cyclic = len(H.generators) == 1 and _is_prime(H.order)
    if cyclic:
        def key(obj):
            return ("cyc", cyclic_key(obj[0]))

        def act(obj, g):
            return (conj(obj[0], g),)
        return tuple(H.generators), act, key

    elts = frozenset(H.elements())

    def act(obj, g):
        gi = inv(g)
        return frozenset(mul(mul(gi, x), g) for x in obj)

    def key(obj):
        return ("set", obj)
    return elts, act, key


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % q for q in range(2, math.isqrt(n) + 1))


def conjugate_subgroup(H: PermGroup, g: Perm, name: str | None = None) -> PermGroup:
    return PermGroup([conj(h, g) for h in H.generators], H.degree,
                     known_order=H.order, name=name)


# ---------------------------------------------------------------------------
# Sylow subgroups, normalizers, centralizers


def sylow_p(G: PermGroup, p: int, seed: int = 0, tries: int = 20000,
            enumerate_below: int = 200000) -> PermGroup:
    """Sylow p-subgroup of ``G`` when p divides |G| exactly once."""
    if G.order % p:
        raise ValueError(f"{p} does not divide |G| = {G.order}")
    if G.order % (p * p) == 0:
        raise OutOfScope(f"{p}^2 divides |G|; only order-p Sylow subgroups are handled")

    def found(g):
        o = element_order(g)
        if o % p == 0:
            x = power(g, o // p)
            return PermGroup([x], G.degree, known_order=p, name=f"Syl{p}")
        return None

    rng = random.Random(seed)
    for _ in range(tries):
        S = found(G.random_element(rng))
        if S is not None:
            return S
    if G.order <= enumerate_below:
        for g in G.elements():
            S = found(g)
            if S is not None:
                return S
    raise RuntimeError(f"no element of order divisible by {p} found in {tries} draws")


def normalizer(G: PermGroup, H: PermGroup, seed: int = 0) -> PermGroup:
    """N_G(H) by orbit-stabilizer on the conjugation orbit of H.

    When H has fixed points, N_G(H) stabilizes that set, so the orbit is
    enumerated inside the setwise stabilizer when that is cheaper.
    """
    _require_sub(G, H)
    if H.order == G.order:
        return G
    if H.order == 1:
        return G
    K = G
    fix = set(range(G.degree))
    for h in H.generators:
        fix &= set(fixed_points(h))
    if 0 < len(fix) < G.degree and comb(G.degree, len(fix)) <= 5000:
        K = setwise_stabilizer(G, sorted(fix), seed)
    obj, act, key = _conj_action(H)
    orb = Orbit(K, obj, act, key)
    N = orb.stabilizer(seed, name=f"N({H.name or 'H'})")
    if G.order % N.order or N.order % H.order:
        raise AssertionError("normalizer order inconsistent with Lagrange")
    return N


def conjugation_orbit_length(G: PermGroup, H: PermGroup) -> int:
    """|{H^g : g in G}| computed directly (independent of :func:`normalizer`)."""
    obj, act, key = _conj_action(H)
    return len(Orbit(G, obj, act, key))


def centralizer_in(K: PermGroup, H: PermGroup, seed: int = 0) -> PermGroup:
    """C_K(H) for a group K normalizing H: stabilizer of H's generator tuple."""
    gens = tuple(H.generators)
    if not gens:
        return K
    orb = Orbit(K, gens, lambda t, g: tuple(conj(x, g) for x in t), lambda t: t)
    return orb.stabilizer(seed, name=f"C({H.name or 'H'})")


def centralizer(G: PermGroup, H: PermGroup, seed: int = 0) -> PermGroup:
    """C_G(H), computed inside N_G(H) which contains it."""
    _require_sub(G, H)
    N = normalizer(G, H, seed)
    C = centralizer_in(N, H, seed)
    if any(mul(c, h) != mul(h, c) for c in C.generators for h in H.generators):
        raise AssertionError("centralizer generator fails to commute")
    return C


def normal_closure(G: PermGroup, H: PermGroup, seed: int = 0) -> PermGroup:
    """Smallest normal subgroup of G containing H."""
    _require_sub(G, H)
    if H.order == 1:
        return H
    gens = list(H.generators)
    N = PermGroup(gens, G.degree, seed=seed)
    changed = True
    while changed and N.order < G.order:
        changed = False
        for x in list(N.generators):
            for g in G.generators:
                y = conj(x, g)
                if not N.contains(y):
                    gens.append(y)
                    N = PermGroup(gens, G.degree, seed=seed)
                    changed = True
    if N.order == G.order:
        N = G
    N.name = f"ncl({H.name or 'H'})"
    return N


def is_normal(G: PermGroup, H: PermGroup) -> bool:
    return all(H.contains(conj(h, g)) for h in H.generators for g in G.generators)


def conjugacy_witness(G: PermGroup, H1: PermGroup, H2: PermGroup) -> Perm | None:
    """Some g in G with H1^g = H2, or None.

    The conjugation orbit of H1 is searched breadth-first over the
    generators of G, so the witness returned is deterministic.
    """
    _require_sub(G, H1)
    _require_sub(G, H2)
    if H1.order != H2.order:
        return None
    obj, act, key = _conj_action(H1)
    if H1.order == 1:
        return G.identity()
    if isinstance(obj, tuple):
        target = ("cyc", cyclic_key(H2.generators[0])) if len(H2.generators) == 1 else None
        if target is None:
            target = ("cyc", cyclic_key(next(h for h in H2.elements() if not is_identity(h))))
    else:
        target = ("set", frozenset(H2.elements()))
    orb = Orbit(G, obj, act, key, stop_at=target)
    g = orb.rep_of(target)
    if g is not None:
        assert all(H2.contains(conj(h, g)) for h in H1.generators)
    return g


# ---------------------------------------------------------------------------
# Metacyclic and direct-product structure


def _sorted_elements(I: PermGroup) -> list[Perm]:
    return sorted(I.elements())


def sylow_generator(I: PermGroup, p: int) -> Perm:
    """A canonical element of order p in I (I has a normal Sylow of order p)."""
    cands = [g for g in _sorted_elements(I) if element_order(g) == p]
    if not cands:
        raise ValueError(f"no element of order {p}")
    return cyclic_key(cands[0])


def metacyclic_structure(I: PermGroup, p: int) -> tuple[int, int]:
    """(m, a) for I = Z/p : Z/m, where beta^-1 tau beta = tau^a.

    ``tau`` generates the normal Sylow p-subgroup; ``beta`` is the first
    element of order m in sorted element order.
    """
    if I.order % p or (I.order // p) % p == 0:
        raise ValueError(f"|I| = {I.order} is not p*m with gcd(p, m) = 1")
    m = I.order // p
    elts = _sorted_elements(I)
    ptype = [g for g in elts if element_order(g) == p]
    if len(ptype) != p - 1:
        raise ValueError("Sylow p-subgroup of I is not normal")
    tau = cyclic_key(ptype[0])
    beta = next((g for g in elts if element_order(g) == m), None)
    if beta is None:
        raise ValueError(f"I has no cyclic complement of order {m}")
    image = conj(tau, beta)
    a = next((k for k in range(1, p) if power(tau, k) == image), None)
    if a is None:
        raise ValueError("complement does not normalize the Sylow subgroup")
    if pow(a, m, p) != 1:
        raise AssertionError("action exponent does not satisfy a^m = 1 mod p")
    return m, a


def multiplicative_order(a: int, p: int) -> int:
    k, x = 1, a % p
    while x != 1:
        x = x * a % p
        k += 1
    return k


def direct_factorization(I: PermGroup, Ip: PermGroup) -> PermGroup | None:
    """D <= I with I = Ip x D, or None.

    D meets Ip trivially and centralizes it.  Here Ip contains the normal
    Sylow subgroup of I and I/O_p(I) is cyclic, so D is cyclic; the first
    suitable generator in sorted element order is used.
    """
    _require_sub(I, Ip)
    if I.order % Ip.order:
        raise AssertionError("Lagrange")
    k = I.order // Ip.order
    if k == 1:
        return PermGroup([], I.degree, name="1")
    ip_elts = set(Ip.elements())
    for d in _sorted_elements(I):
        if element_order(d) != k:
            continue
        if any(mul(d, x) != mul(x, d) for x in Ip.generators):
            continue
        powers = [power(d, e) for e in range(1, k)]
        if any(x in ip_elts for x in powers):
            continue
        return PermGroup([d], I.degree, known_order=k, name=f"Z/{k}")
    return None


def cyclic_subgroups(G: PermGroup, order_filter: Callable[[int], bool] = lambda n: True
                     ) -> list[PermGroup]:
    """All cyclic subgroups of a small group, each once, in sorted order."""
    seen: set = set()
    out = []
    for g in _sorted_elements(G):
        o = element_order(g)
        if not order_filter(o):
            continue
        elts = frozenset(power(g, e) for e in range(o))
        if elts in seen:
            continue
        seen.add(elts)
        out.append(PermGroup([g] if o > 1 else [], G.degree, known_order=o, name=f"Z/{o}"))
    return out


def join(G: PermGroup, *Hs: PermGroup, seed: int = 0) -> PermGroup:
    gens = [g for H in Hs for g in H.generators]
    return PermGroup(gens, G.degree, seed=seed)


# ---------------------------------------------------------------------------
# Maximal-subgroup descent


def indices_in_range(group: str, lo: int, hi: int, facts) -> set[int]:
    """Indices d in [lo, hi) of subgroups of ``group`` via maximal-subgroup tables.

    A subgroup of index d lies in some maximal M with [G:M] | d, so the
    search descends into M whenever a proper subgroup of M could still land
    below ``hi``.
    """
    out: set[int] = set()
    if lo <= 1 < hi:
        out.add(1)

    def descend(name: str, scale: int) -> None:
        table = facts.maximal_table(name)
        if table is None:
            raise LookupError(f"no maximal-subgroup table for {name!r}")
        for entry in table.entries:
            d = scale * entry.index
            if d >= hi:
                continue
            if d >= lo:
                out.add(d)
            if d * 2 < hi:
                descend(entry.label, d)

    if 2 < hi:
        descend(group, 1)
    return out
