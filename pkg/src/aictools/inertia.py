"""Potential inertia groups, admissible ramification invariants, and census arithmetic.

Every candidate inertia group has the form I = S : C with S the Sylow
p-subgroup (order p) and C cyclic of order prime to p.  S is characteristic
in I, so N_G(I), C_G(I) and G-conjugacy of such I all live inside
N = N_G(S).  The catalog therefore only needs N and the order of G, which is
what makes the facts-mode groups (given by N_G(S) alone) tractable.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .atlasio import FactBase, can_load, load_group
from .grouplib import (centralizer_in, conjugacy_witness, cyclic_subgroups, metacyclic_structure,
                       multiplicative_order, normal_closure, normalizer, sylow_p)
from .permcore import PermGroup

CENT_MODES = ("sylow", "inertia", "sylow-ambient")


@dataclass
class InertiaClass:
    label: str
    representative: PermGroup
    p: int
    m: int
    action_exponent: int
    normalizer_order: int          # |N_G(I)|
    class_size: int                # [G : N_G(I)]
    cent_I_order: int              # |C_G(I)|
    cent_S_order: int              # |C_G(S)|
    kernel_order: int              # |C_I(S)|
    group_order: int

    @property
    def order(self) -> int:
        return self.p * self.m

    @property
    def action_order(self) -> int:
        return multiplicative_order(self.action_exponent, self.p)

    def check(self) -> None:
        assert math.gcd(self.p, self.m) == 1
        assert self.class_size * self.normalizer_order == self.group_order
        assert self.m == self.action_order * (self.kernel_order // self.p)

    def to_dict(self) -> dict:
        return {"label": self.label, "order": self.order, "m": self.m,
                "action_exponent": self.action_exponent, "normalizer_order": self.normalizer_order,
                "class_size": self.class_size, "cent_I_order": self.cent_I_order,
                "cent_S_order": self.cent_S_order, "kernel_order": self.kernel_order}


def class_label(p: int, m: int, k: int) -> str:
    """Structure label: k is the order of the action of the complement on S."""
    d = m // k
    if m == 1:
        return f"{p}"
    if k == 1:
        return f"{p}x{m}"
    if d == 1:
        return f"{p}:{m}"
    if math.gcd(k, d) == 1:
        return f"({p}:{k})x{d}"
    return f"{p}:{m}[{k}]"


def inertia_catalog(G: PermGroup, p: int, *, ambient_order: int | None = None,
                    seed: int = 0) -> list[InertiaClass]:
    """One class per G-conjugacy class of I = S : C generating a normal closure of G.

    With ``ambient_order`` given, ``G`` is taken to be N_G(S) of a larger
    group of that order (facts mode); the caller vouches for quasi-p-ness.
    """
    order = ambient_order or G.order
    if order % p or (order // p) % p == 0:
        raise ValueError(f"{p} must divide |G| = {order} exactly once")
    S = sylow_p(G, p, seed)
    if ambient_order is None:
        if normal_closure(G, S, seed).order != G.order:
            return []
        N = normalizer(G, S, seed)
    else:
        N = G
        if not all(N.contains(s) for s in S.generators) or normalizer(N, S, seed).order != N.order:
            raise ValueError("facts-mode input must normalize its Sylow subgroup")
    cent_S = centralizer_in(N, S, seed).order
    found: list[PermGroup] = []
    seen_sets: set = set()
    for C in cyclic_subgroups(N, lambda o: o % p != 0):
        I = PermGroup(list(S.generators) + list(C.generators), N.degree,
                      known_order=p * C.order, seed=seed)
        key = frozenset(I.elements())
        if key in seen_sets:
            continue
        seen_sets.add(key)
        if any(J.order == I.order and conjugacy_witness(N, J, I) is not None for J in found):
            continue
        found.append(I)
    out = []
    for I in found:
        m, a = metacyclic_structure(I, p)
        NI = normalizer(N, I, seed)
        CI = centralizer_in(NI, I, seed)
        ker = centralizer_in(I, S, seed).order
        k = multiplicative_order(a, p)
        cls = InertiaClass(class_label(p, m, k), I, p, m, a, NI.order, order // NI.order,
                           CI.order, cent_S, ker, order)
        cls.check()
        out.append(cls)
    out.sort(key=lambda c: (c.m, c.kernel_order, c.label))
    labels = [c.label for c in out]
    for c in out:
        if labels.count(c.label) > 1:
            c.label += "#" + str(sum(1 for d in out[:out.index(c)] if d.label.split("#")[0] == c.label) + 1)
    return out


@dataclass
class CatalogResult:
    group: str
    p: int
    classes: list[InertiaClass]
    method: str                    # "computed" or "facts-derived"
    normalizer: PermGroup
    group_order: int
    notes: list[str] = field(default_factory=list)

    def by_m(self, m: int) -> list[InertiaClass]:
        return [c for c in self.classes if c.m == m]

    def get(self, label: str) -> InertiaClass:
        return next(c for c in self.classes if c.label == label)


def catalog_for(group: str, p: int, fb: FactBase, *, mode: str = "auto",
                seed: int = 0) -> CatalogResult:
    """Catalog from permutations when a representation is bundled, else from facts."""
    name = fb.canonical(group)
    nf = fb.normalizer(name, p)
    notes = []
    if mode != "facts" and can_load(name):
        G = load_group(name)
        S = sylow_p(G, p, seed)
        N = normalizer(G, S, seed)
        classes = inertia_catalog(G, p, seed=seed)
        if nf is not None:
            shape_order = nf.realize().order
            agree = "agrees" if shape_order == N.order else "DISAGREES"
            notes.append(f"computed |N_G(S)| = {N.order} {agree} with fact shape {nf.shape}")
        return CatalogResult(name, p, classes, "computed", N, G.order, notes)
    if mode == "computed":
        raise LookupError(f"no permutation representation for {name!r}")
    gf = fb.get(name)
    if gf is None or nf is None:
        raise LookupError(f"no normalizer fact for ({name}, {p})")
    if not gf.simple:
        raise ValueError(f"facts mode needs a simple group; {name} is not marked simple")
    N = nf.realize()
    classes = inertia_catalog(N, p, ambient_order=gf.order, seed=seed)
    notes.append(f"N_G(S) realized from shape {nf.shape} [{nf.citation}]")
    return CatalogResult(name, p, classes, "facts-derived", N, gf.order, notes)


# ---------------------------------------------------------------------------
# Admissible invariants


class InconsistentCentralizer(ValueError):
    pass


@dataclass(frozen=True)
class SigmaSet:
    m: int
    gcd_target: int
    p: int

    def __contains__(self, sigma) -> bool:
        s = Fraction(sigma)
        j = s * self.m
        if j.denominator != 1:
            return False
        j = int(j)
        return j > self.m and j % self.p != 0 and math.gcd(j, self.m) == self.gcd_target

    def jumps(self, limit: Fraction | int) -> Iterator[int]:
        top = math.floor(Fraction(limit) * self.m)
        for j in range(self.m + 1, top + 1):
            if j % self.p and math.gcd(j, self.m) == self.gcd_target:
                yield j

    def elements(self, limit: Fraction | int) -> list[Fraction]:
        return [Fraction(j, self.m) for j in self.jumps(limit)]

    def is_empty(self) -> bool:
        return self.m % self.gcd_target != 0

    @property
    def denominator(self) -> int:
        """Reduced denominator shared by every element."""
        return self.m // self.gcd_target


def gcd_target(cls: InertiaClass, cent_mode: str = "sylow") -> Fraction:
    if cent_mode == "sylow":
        c = cls.kernel_order
    elif cent_mode == "inertia":
        c = cls.cent_I_order
    elif cent_mode == "sylow-ambient":
        c = cls.cent_S_order
    else:
        raise ValueError(f"unknown cent_mode {cent_mode!r}; choose from {CENT_MODES}")
    return Fraction(c, cls.p)


def sigma_set(cls: InertiaClass, cent_mode: str = "sylow", limit=None) -> SigmaSet:
    """Admissible invariants j/m with j > m, p not dividing j, gcd(j, m) fixed.

    The gcd is |C|/p for the chosen centralizer C: ``sylow`` uses C_I(S)
    (the kernel of the action on S), ``inertia`` uses C_G(I), and
    ``sylow-ambient`` uses C_G(S).
    """
    if limit is not None and Fraction(limit) <= 1:
        raise ValueError("limit must exceed 1")
    t = gcd_target(cls, cent_mode)
    if t.denominator != 1 or t < 1:
        raise InconsistentCentralizer(
            f"{cls.label}: |C|/p = {t} is not a positive integer under cent_mode={cent_mode}")
    return SigmaSet(cls.m, int(t), cls.p)


def m_G(catalog: list[InertiaClass], cent_mode: str = "sylow", strict: bool = True) -> int:
    """Least common multiple of the reduced denominators over all admissible sets."""
    if not catalog:
        raise ValueError("empty catalog")
    dens = []
    for cls in catalog:
        ss = sigma_set(cls, cent_mode)
        if ss.is_empty():
            if strict:
                raise ValueError(f"{cls.label}: no admissible invariants under {cent_mode}")
            continue
        dens.append(ss.denominator)
    if not dens:
        raise ValueError("no admissible invariants in any class")
    return math.lcm(*dens)


# ---------------------------------------------------------------------------
# Census arithmetic


@dataclass(frozen=True)
class RamCensus:
    num_points: int
    points_per_class: int
    num_classes: int

    def __post_init__(self):
        assert self.num_points == self.points_per_class * self.num_classes

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.num_points, self.points_per_class, self.num_classes)


def ram_census(group_order: int, cls: InertiaClass) -> RamCensus:
    """([G:I], [N_G(I):I], [G:N_G(I)])."""
    return RamCensus(group_order // cls.order, cls.normalizer_order // cls.order,
                     group_order // cls.normalizer_order)


def induced_census(g1_order: int, g2_order: int, cls2: InertiaClass) -> int:
    """Class count [G1:G2] * [G2:N_G2(I2)] of a cover induced from G2 up to G1."""
    if g1_order % g2_order:
        raise ValueError("|G2| must divide |G1|")
    return (g1_order // g2_order) * (g2_order // cls2.normalizer_order)


def patch_compatible(g1_order: int, cls1: InertiaClass, g2_order: int, cls2: InertiaClass,
                     normalizers_match: bool | None = None) -> bool:
    """Census bijection test for patching a G2-cover into a G1-cover.

    The class counts must agree, and N_G1(I1), N_G1(I2) must be conjugate.
    When the caller does not supply that comparison, equal orders and
    structure labels of the two normalizer data stand in for it.
    """
    if g1_order % g2_order or cls1.p != cls2.p:
        raise ValueError("containment or prime mismatch")
    if normalizers_match is None:
        normalizers_match = (cls1.normalizer_order == cls2.normalizer_order
                             and cls1.label == cls2.label)
    return induced_census(g1_order, g2_order, cls2) == cls1.class_size and normalizers_match


def jump_residue_check(cls: InertiaClass, j: int) -> bool:
    """Whether the action exponent fits jump j.

    The complement acts on S through zeta^j for a primitive m-th root of
    unity zeta, so the exponent must have multiplicative order m / gcd(j, m).
    This agrees with the admissibility gcd under ``cent_mode="sylow"``.
    """
    if j % cls.p == 0:
        raise ValueError("p divides j")
    if cls.m == 1:
        return True
    return cls.action_order == cls.m // math.gcd(j, cls.m)
