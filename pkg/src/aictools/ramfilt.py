"""Lower and upper numbering of ramification filtrations.

A filtration is stored as the orders |G_0|, |G_1|, ..., |G_n| of the lower
numbering groups (|G_i| = 1 beyond the stored range).  Only the indices
[G_0 : G_i] enter the Herbrand function, so no subgroups are needed.
All arithmetic uses ``Fraction``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


class FiltrationError(ValueError):
    pass


def _prime_of(n: int) -> int | None:
    """The prime p when n is a power of p, None for n = 1."""
    if n == 1:
        return None
    q = next(d for d in range(2, n + 1) if n % d == 0)
    while n % q == 0:
        n //= q
    if n != 1:
        raise FiltrationError("|G_1| is not a prime power")
    return q


@dataclass(frozen=True)
class RamFiltration:
    orders: tuple[int, ...]
    p: int | None = None

    def __post_init__(self):
        orders = tuple(int(o) for o in self.orders)
        while len(orders) > 1 and orders[-1] == 1:
            orders = orders[:-1]
        object.__setattr__(self, "orders", orders)
        if not orders:
            raise FiltrationError("empty filtration; use (1,) for the trivial group")
        if any(o < 1 for o in orders):
            raise FiltrationError("orders must be positive")
        for i, (a, b) in enumerate(zip(orders, orders[1:])):
            if a % b:
                raise FiltrationError(f"|G_{i + 1}| = {b} does not divide |G_{i}| = {a}")
        q = _prime_of(self.order(1))
        if self.p is None:
            object.__setattr__(self, "p", q)
        elif q is not None and q != self.p:
            raise FiltrationError(f"wild part |G_1| = {self.order(1)} is not a power of {self.p}")
        if self.p is not None and (orders[0] // self.order(1)) % self.p == 0:
            raise FiltrationError("G_0/G_1 must have order prime to p")

    @classmethod
    def from_jump(cls, p: int, m: int, j: int) -> "RamFiltration":
        """The filtration of Z/p : Z/m with a single wild jump at j."""
        return cls((p * m,) + (p,) * j, p)

    def order(self, i: int) -> int:
        if i < 0:
            raise FiltrationError("lower index must be >= 0")
        return self.orders[i] if i < len(self.orders) else 1

    def index(self, i: int) -> int:
        """[G_0 : G_i]."""
        return self.orders[0] // self.order(i)

    @property
    def last(self) -> int:
        return len(self.orders) - 1

    @property
    def is_tame(self) -> bool:
        return self.order(1) == 1


@dataclass(frozen=True)
class HerbrandFn:
    breakpoints: tuple[tuple[Fraction, Fraction], ...]
    final_slope: Fraction


def _seg_slope(f: RamFiltration, i: int) -> Fraction:
    """Slope of the Herbrand function on (i-1, i]."""
    return Fraction(1, f.index(i))


def herbrand_phi(f: RamFiltration, s) -> Fraction:
    s = Fraction(s)
    if s < 0:
        raise FiltrationError("s must be >= 0")
    k = math.floor(s)
    t = sum((_seg_slope(f, i) for i in range(1, min(k, f.last) + 1)), Fraction(0))
    if k > f.last:
        t += (k - f.last) * _seg_slope(f, f.last + 1)
    if s > k:
        t += (s - k) * _seg_slope(f, k + 1)
    return t


def herbrand_psi(f: RamFiltration, t) -> Fraction:
    t = Fraction(t)
    if t < 0:
        raise FiltrationError("t must be >= 0")
    s, acc = 0, Fraction(0)
    while s < f.last:
        step = _seg_slope(f, s + 1)
        if acc + step >= t:
            return s + (t - acc) / step
        acc += step
        s += 1
    return s + (t - acc) / _seg_slope(f, s + 1)


def breakpoints(f: RamFiltration) -> HerbrandFn:
    """Points (s, H(s)) where the slope changes, starting at (0, 0)."""
    pts = [(Fraction(0), Fraction(0))]
    for i in lower_jumps(f):
        if i > 0:
            pts.append((Fraction(i), herbrand_phi(f, i)))
    return HerbrandFn(tuple(pts), _seg_slope(f, f.last + 1))


def lower_jumps(f: RamFiltration) -> list[int]:
    return [i for i in range(f.last + 1) if f.order(i) != f.order(i + 1)]


def upper_jumps(f: RamFiltration) -> list[Fraction]:
    return [herbrand_phi(f, i) for i in lower_jumps(f)]


def ram_invariant(f: RamFiltration) -> Fraction:
    if f.is_tame:
        raise FiltrationError("tame filtration has no wild jump")
    return max(upper_jumps(f))


def inertia_jump(f: RamFiltration) -> int:
    if f.is_tame:
        raise FiltrationError("tame filtration has no wild jump")
    return f.last


def quotient(f: RamFiltration, kernel_orders: Sequence[int]) -> RamFiltration:
    """Filtration of G_0/K from the orders |G_i meet K|, i = 0, 1, ....

    Upper numbering passes to quotients, so the quotient's upper groups are
    the images of G^v.  The quotient is rebuilt in lower numbering through
    its own psi function; a non-integral lower jump means the data cannot
    come from a real extension.
    """
    k = list(kernel_orders) + [1] * (f.last + 2 - len(kernel_orders))
    q_at = []                      # quotient orders at the lower indices of f
    for i in range(f.last + 2):
        if f.order(i) % k[i]:
            raise FiltrationError(f"|G_{i} meet K| = {k[i]} does not divide |G_{i}|")
        q_at.append(f.order(i) // k[i])
    # quotient upper filtration is constant between upper jumps of f
    ups = [(herbrand_phi(f, i), q_at[i + 1]) for i in range(f.last + 1) if q_at[i] != q_at[i + 1]]
    q0 = q_at[0]
    orders = [q0]
    v_prev, s_prev, cur = Fraction(0), Fraction(0), q0
    for v, nxt in ups:
        s = s_prev + (v - v_prev) * Fraction(q0, cur)
        if s.denominator != 1:
            raise FiltrationError(f"quotient lower jump {s} is not an integer")
        orders.extend([cur] * (int(s) - len(orders) + 1))
        v_prev, s_prev, cur = v, s, nxt
    if cur != 1:
        raise FiltrationError("kernel data leave a nontrivial quotient beyond the last jump")
    return RamFiltration(tuple(orders), f.p)
