"""Riemann-Hurwitz arithmetic for Galois covers and their quotients.

Every function returns exact values and refuses non-integral or negative
genera: those only arise from inconsistent inputs.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence


class GenusError(ValueError):
    pass


def _as_genus(two_g_minus_2: Fraction, what: str) -> int:
    g = Fraction(two_g_minus_2 + 2, 2)
    if g.denominator != 1:
        raise GenusError(f"{what}: non-integral genus {g}")
    if g < 0:
        raise GenusError(f"{what}: negative genus {g}")
    return int(g)


def rh_cover_genus(order_G: int, base_genus: int, inertia_orders: Sequence[int]) -> int:
    """Genus of a tame G-Galois cover of a curve of genus ``base_genus``."""
    if order_G < 1 or any(e < 1 or order_G % e for e in inertia_orders):
        raise GenusError("inertia orders must be positive divisors of |G|")
    rhs = order_G * (2 * base_genus - 2) + order_G * sum(Fraction(e - 1, e) for e in inertia_orders)
    return _as_genus(rhs, "rh_cover_genus")


@dataclass(frozen=True)
class PointData:
    inertia_order: int       # |I_i|
    norm_G_order: int        # |N_G(I_i)|
    norm_H_order: int        # |N_H(I_i)|
    meet_order: int          # |H meet I_i|

    def __post_init__(self):
        if min(self.inertia_order, self.norm_G_order, self.norm_H_order, self.meet_order) < 1:
            raise GenusError("orders must be positive")
        if self.inertia_order % self.meet_order:
            raise GenusError("|H meet I| must divide |I|")


@dataclass(frozen=True)
class IntermediateGenusInput:
    index_GH: int            # [G:H]
    index_NH: int            # [N_G(H):H]
    points: tuple[PointData, ...] = ()


def intermediate_genus_value(inp: IntermediateGenusInput) -> Fraction:
    """The quotient-genus expression over a genus 0 base, unvalidated."""
    d, n = inp.index_GH, inp.index_NH
    ram = sum((Fraction(pt.inertia_order - 1, pt.inertia_order) for pt in inp.points), Fraction(0))
    corr = sum((Fraction(pt.norm_G_order, pt.norm_H_order) * Fraction(pt.meet_order - 1, pt.meet_order)
                for pt in inp.points), Fraction(0))
    return -d + 1 + Fraction(d, 2) * ram - Fraction(n, 2) * corr


def intermediate_genus(inp: IntermediateGenusInput) -> int:
    """Genus of X = Y/H where Y -> P^1 is G-Galois and tamely branched."""
    g = intermediate_genus_value(inp)
    return _as_genus(2 * g - 2, "intermediate_genus")


def intermediate_genus_by_elimination(order_G: int, order_H: int, order_NGH: int,
                                      inp: IntermediateGenusInput) -> Fraction:
    """Same quantity, found by computing g(Y) over P^1 first and then over X."""
    two_gy = order_G * (-2) + order_G * sum(
        (Fraction(pt.inertia_order - 1, pt.inertia_order) for pt in inp.points), Fraction(0))
    corr = order_NGH * sum((Fraction(pt.norm_G_order, pt.norm_H_order)
                            * Fraction(pt.meet_order - 1, pt.meet_order) for pt in inp.points),
                           Fraction(0))
    return (two_gy - corr) / (2 * order_H) + 1


@dataclass(frozen=True)
class BranchPoint:
    inertia_order: int
    cycle_type: tuple[int, ...]


@dataclass(frozen=True)
class BranchData:
    points: tuple[BranchPoint, ...] = field(default_factory=tuple)


def quotient_genus_cycletypes(d: int, branch: BranchData) -> int:
    """Genus of a degree-d cover of P^1 from the cycle types of its monodromy."""
    total = -2 * d
    for pt in branch.points:
        if sum(pt.cycle_type) != d or any(c < 1 for c in pt.cycle_type):
            raise GenusError(f"cycle type {pt.cycle_type} is not a partition of {d}")
        if pt.inertia_order < 1:
            raise GenusError("inertia order must be positive")
        total += sum(c - 1 for c in pt.cycle_type)
    return _as_genus(Fraction(total), "quotient_genus_cycletypes")


def genus_from_jump(j: int, d: int, t: int) -> int:
    """(2j - t - d + 1)/2 for a degree-d quotient with t tame orbits over infinity."""
    num = 2 * j - t - d + 1
    if num % 2:
        raise GenusError(f"parity: 2*{j} - {t} - {d} + 1 is odd")
    if num < 0:
        raise GenusError(f"negative genus for j={j}, d={d}, t={t}")
    return num // 2


def orbit_count_t(theta_cycle_type: Sequence[int], d: int, p: int) -> int:
    """Number of orbits of the tame generator on the d - p points outside the p-cycle."""
    if sum(theta_cycle_type) != d - p or any(c < 1 for c in theta_cycle_type):
        raise GenusError(f"{list(theta_cycle_type)} is not a partition of {d - p}")
    return len(theta_cycle_type)
