"""Brute-force subgroup enumeration for small groups.

This is an oracle, not an engine: it exists to cross-check the Sylow-conjugate
shortcuts against literal definitions on groups of order at most a few
thousand.  Elements are indexed and subgroups are bitsets over the indices.
"""
from __future__ import annotations

from dataclasses import dataclass

from .permcore import PermGroup, element_order, inv, mul


@dataclass(frozen=True)
class SmallSubgroup:
    bits: int
    order: int
    gens: tuple[int, ...]


class SmallGroup:
    def __init__(self, G: PermGroup, limit: int = 5000):
        if G.order > limit:
            raise ValueError(f"group of order {G.order} is too large for brute force")
        self.G = G
        self.elts = sorted(G.elements())
        self.index = {g: i for i, g in enumerate(self.elts)}
        self.e = self.index[G.identity()]
        self.n = len(self.elts)
        self.full = (1 << self.n) - 1
        self.tab = [[self.index[mul(x, y)] for y in self.elts] for x in self.elts]
        self.orders = [element_order(g) for g in self.elts]
        # conjugation maps i -> s^-1 x_i s for the generators s of G
        self._conj = []
        for s in G.generators:
            si = self.index[inv(s)]
            j = self.index[s]
            self._conj.append([self.tab[self.tab[si][i]][j] for i in range(self.n)])
        self._subs: list[SmallSubgroup] | None = None

    def mul(self, a: int, b: int) -> int:
        return self.tab[a][b]

    def closure(self, start: list[int], gens: list[int]) -> int:
        bits = 0
        for x in start:
            bits |= 1 << x
        queue = list(start)
        tab = self.tab
        while queue:
            row = tab[queue.pop()]
            for g in gens:
                y = row[g]
                if not bits >> y & 1:
                    bits |= 1 << y
                    queue.append(y)
        return bits

    def join(self, hm: list[int], hbits: int, gens: list[int]) -> int:
        """<H, gens> as a union of right cosets of H (Dimino's method).

        Stops early with the whole group once more than half of it is reached.
        """
        bits = hbits
        size = len(hm)
        reps = [self.e]
        tab = self.tab
        i = 0
        while i < len(reps):
            row = tab[reps[i]]
            for s in gens:
                y = row[s]
                if bits >> y & 1:
                    continue
                for h in hm:
                    bits |= 1 << tab[h][y]
                size += len(hm)
                if 2 * size > self.n:
                    return self.full
                reps.append(y)
            i += 1
        return bits

    def members(self, bits: int) -> list[int]:
        out = []
        i = 0
        while bits:
            if bits & 1:
                out.append(i)
            bits >>= 1
            i += 1
        return out

    def cyclic(self, i: int) -> int:
        bits = 1 << self.e
        x = i
        while x != self.e:
            bits |= 1 << x
            x = self.tab[x][i]
        return bits

    def conjugates(self, bits: int) -> list[int]:
        seen = {bits}
        queue = [bits]
        while queue:
            m = self.members(queue.pop())
            for cm in self._conj:
                b = 0
                for i in m:
                    b |= 1 << cm[i]
                if b not in seen:
                    seen.add(b)
                    queue.append(b)
        return list(seen)

    def subgroups(self) -> list[SmallSubgroup]:
        """All subgroups, found by joining with cyclic subgroups of prime-power order.

        Every subgroup is generated by its prime-power cyclic subgroups, so
        repeated joins starting from the trivial group reach all of them.
        Joins commute with conjugation, so one subgroup per conjugacy class
        is expanded and its conjugates are recorded directly.
        """
        if self._subs is not None:
            return self._subs
        cyc: dict[int, int] = {}
        for i in range(self.n):
            o = self.orders[i]
            if o > 1 and _prime_power(o):
                cyc.setdefault(self.cyclic(i), i)
        gens_of: dict[int, tuple[int, ...]] = {}

        def record(bits: int, gens: tuple[int, ...]) -> None:
            for b in self.conjugates(bits):
                if b not in gens_of:
                    gens_of[b] = gens if b == bits else ()
        trivial = 1 << self.e
        record(trivial, ())
        frontier = [trivial]
        while frontier:
            nxt = []
            for H in frontier:
                hg = gens_of[H]
                hm = self.members(H)
                for C, c in cyc.items():
                    if C & ~H == 0:
                        continue
                    J = self.join(hm, H, list(hg) + [c])
                    if J not in gens_of:
                        record(J, hg + (c,))
                        nxt.append(J)
            frontier = nxt
        out = []
        for b, g in gens_of.items():
            if not g and b != trivial:
                g = tuple(self._generators(b))
            out.append(SmallSubgroup(b, bin(b).count("1"), g))
        out.sort(key=lambda s: (s.order, s.bits))
        self._subs = out
        return out

    def _generators(self, bits: int) -> list[int]:
        gens: list[int] = []
        cur = 1 << self.e
        for i in self.members(bits):
            if not cur >> i & 1:
                gens.append(i)
                cur = self.closure(self.members(cur), gens)
        return gens

    def to_group(self, sub: SmallSubgroup) -> PermGroup:
        return PermGroup([self.elts[i] for i in sub.gens], self.G.degree, known_order=sub.order)

    def p_elements(self, bits: int, p: int) -> list[int]:
        return [i for i in self.members(bits) if _is_power_of(self.orders[i], p)]

    def is_quasi_p(self, bits: int, p: int) -> bool:
        pe = self.p_elements(bits, p)
        return self.closure([self.e], pe) == bits

    def bits_of(self, H: PermGroup) -> int:
        b = 0
        for h in H.elements():
            b |= 1 << self.index[h]
        return b


def _prime_power(n: int) -> bool:
    q = next(d for d in range(2, n + 1) if n % d == 0)
    return _is_power_of(n, q)


def _is_power_of(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def literal_G_of_S(G: "PermGroup | SmallGroup", S: PermGroup, p: int) -> tuple[int, list[int]]:
    """Order of the group generated by the proper quasi-p subgroups with Sylow inside S.

    Returns that order and the sorted orders of the contributing subgroups.
    A nontrivial quasi-p subgroup has p dividing its order; since |S| = p,
    some Sylow subgroup of H lies in S exactly when S is contained in H.
    """
    sg = SmallGroup(G) if not isinstance(G, SmallGroup) else G
    G = sg.G
    sbits = sg.bits_of(S)
    contrib = []
    jgens: list[int] = []
    for H in sg.subgroups():
        if H.bits == sg.full or H.order == 1 or not sg.is_quasi_p(H.bits, p):
            continue
        if sbits & ~H.bits:
            continue
        contrib.append(H.order)
        jgens.extend(H.gens)
    J = sg.closure([sg.e], jgens)
    return bin(J).count("1"), sorted(contrib)
