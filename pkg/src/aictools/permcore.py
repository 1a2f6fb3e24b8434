"""Permutations on {0..n-1} and groups carried by a verified stabilizer chain.

A permutation is a plain tuple ``p`` with ``p[i]`` the image of ``i``.
Products act on the right: ``mul(g, h)`` applies ``g`` first, then ``h``,
so ``i^(gh) = (i^g)^h`` and conjugation is ``x^g = g^-1 x g``.
"""
from __future__ import annotations

import math
import random
import threading
from functools import reduce
from typing import Callable, Iterable, Iterator, Sequence

Perm = tuple  # tuple[int, ...]


class DegreeMismatch(ValueError):
    pass


def identity(n: int) -> Perm:
    return tuple(range(n))


def is_identity(g: Perm) -> bool:
    return all(i == x for i, x in enumerate(g))


def mul(g: Perm, h: Perm) -> Perm:
    """Apply ``g`` then ``h``."""
    return tuple(map(h.__getitem__, g))


def inv(g: Perm) -> Perm:
    out = [0] * len(g)
    for i, x in enumerate(g):
        out[x] = i
    return tuple(out)


def conj(x: Perm, g: Perm) -> Perm:
    """``x^g = g^-1 x g``."""
    return mul(mul(inv(g), x), g)


def power(g: Perm, k: int) -> Perm:
    n = len(g)
    if k < 0:
        g, k = inv(g), -k
    result = identity(n)
    base = g
    while k:
        if k & 1:
            result = mul(result, base)
        base = mul(base, base)
        k >>= 1
    return result


def check_perm(images: Sequence[int]) -> Perm:
    p = tuple(images)
    if len(p) < 1 or sorted(p) != list(range(len(p))):
        raise ValueError(f"not a permutation of 0..{len(p) - 1}: {p!r}")
    return p


def cycles(g: Perm) -> list[tuple[int, ...]]:
    seen = [False] * len(g)
    out = []
    for i in range(len(g)):
        if seen[i]:
            continue
        cyc = [i]
        seen[i] = True
        j = g[i]
        while j != i:
            seen[j] = True
            cyc.append(j)
            j = g[j]
        out.append(tuple(cyc))
    return out


def cycle_type(g: Perm) -> tuple[int, ...]:
    return tuple(sorted((len(c) for c in cycles(g)), reverse=True))


def element_order(g: Perm) -> int:
    """Least m >= 1 with g^m = 1, i.e. the lcm of the cycle lengths."""
    return reduce(math.lcm, (len(c) for c in cycles(g)), 1)


def sign(g: Perm) -> int:
    return -1 if sum(len(c) - 1 for c in cycles(g)) % 2 else 1


def fixed_points(g: Perm) -> list[int]:
    return [i for i, x in enumerate(g) if i == x]


def from_cycles(cycs: Iterable[Sequence[int]], n: int) -> Perm:
    """Build a permutation of degree ``n`` from 0-based disjoint cycles."""
    img = list(range(n))
    seen: set[int] = set()
    for c in cycs:
        for a in c:
            if not 0 <= a < n:
                raise ValueError(f"point {a} outside 0..{n - 1}")
            if a in seen:
                raise ValueError(f"point {a} repeated")
            seen.add(a)
        for a, b in zip(c, list(c[1:]) + [c[0]]):
            img[a] = b
    return tuple(img)


def format_cycles(g: Perm) -> str:
    """1-based disjoint cycle notation, ``()`` for the identity."""
    parts = ["(" + ",".join(str(a + 1) for a in c) + ")" for c in cycles(g) if len(c) > 1]
    return "".join(parts) or "()"


def orbit(point: int, gens: Sequence[Perm]) -> list[int]:
    out = [point]
    seen = {point}
    for x in out:
        for g in gens:
            y = g[x]
            if y not in seen:
                seen.add(y)
                out.append(y)
    return out


def orbits(gens: Sequence[Perm], n: int) -> list[list[int]]:
    seen: set[int] = set()
    out = []
    for i in range(n):
        if i not in seen:
            o = orbit(i, gens)
            seen.update(o)
            out.append(o)
    return out


class _Level:
    __slots__ = ("point", "gens", "trans", "tinv")

    def __init__(self, point: int):
        self.point = point
        self.gens: list[Perm] = []
        self.trans: dict[int, Perm] = {}
        self.tinv: dict[int, Perm] = {}

    def rebuild(self, n: int) -> None:
        e = identity(n)
        trans = {self.point: e}
        tinv = {self.point: e}
        queue = [self.point]
        for x in queue:
            u = trans[x]
            for s in self.gens:
                y = s[x]
                if y not in trans:
                    v = mul(u, s)
                    trans[y] = v
                    tinv[y] = inv(v)
                    queue.append(y)
        self.trans = trans
        self.tinv = tinv


class _Chain:
    """Mutable stabilizer chain used only while a group is being built."""

    def __init__(self, n: int, base_prefix: Sequence[int] = ()):
        self.n = n
        self.levels: list[_Level] = [_Level(b) for b in base_prefix]
        for lv in self.levels:
            lv.rebuild(n)

    def order(self) -> int:
        return math.prod(len(lv.trans) for lv in self.levels)

    def sift(self, g: Perm, start: int = 0) -> tuple[Perm, int]:
        for i in range(start, len(self.levels)):
            lv = self.levels[i]
            b = g[lv.point]
            t = lv.tinv.get(b)
            if t is None:
                return g, i
            g = mul(g, t)
        return g, len(self.levels)

    def add_strong(self, h: Perm, upto: int) -> int:
        """Insert ``h`` (fixing the first ``upto`` base points) as a strong generator.

        Returns the deepest level that changed.
        """
        if upto == len(self.levels):
            moved = next(i for i, x in enumerate(h) if i != x)
            self.levels.append(_Level(moved))
        for i in range(upto + 1):
            self.levels[i].gens.append(h)
        for i in range(upto + 1):
            self.levels[i].rebuild(self.n)
        return upto

    def schreier_sims(self, gens: Sequence[Perm]) -> None:
        """Deterministic Schreier-Sims completion (every Schreier generator sifts)."""
        for g in gens:
            h, j = self.sift(g)
            if not is_identity(h):
                self.add_strong(h, j)
        i = len(self.levels) - 1
        while i >= 0:
            lv = self.levels[i]
            restart = None
            for y, u in list(lv.trans.items()):
                for s in list(lv.gens):
                    z = s[y]
                    sch = mul(mul(u, s), lv.tinv[z])
                    if is_identity(sch):
                        continue
                    h, j = self.sift(sch, i + 1)
                    if not is_identity(h):
                        self.add_strong(h, j)
                        restart = j
                        break
                if restart is not None:
                    break
            if restart is None:
                i -= 1
            else:
                i = restart

    def random_fill(self, gens: Sequence[Perm], rng: random.Random,
                    target: int | None, patience: int = 12) -> None:
        """Random Schreier-Sims: sift random elements until ``target`` is hit
        or ``patience`` consecutive elements sift to the identity."""
        for g in gens:
            h, j = self.sift(g)
            if not is_identity(h):
                self.add_strong(h, j)
        if target is not None and self.order() == target:
            return
        pool = list(gens) + [identity(self.n)] * max(0, 10 - len(gens))
        acc = identity(self.n)
        for _ in range(50):
            _pr_step(pool, rng)
        quiet = 0
        while quiet < patience:
            acc = _pr_step(pool, rng, acc)
            h, j = self.sift(acc)
            if is_identity(h):
                quiet += 1
                continue
            quiet = 0
            self.add_strong(h, j)
            if target is not None and self.order() == target:
                return


def _pr_step(pool: list[Perm], rng: random.Random, acc: Perm | None = None) -> Perm:
    """One product-replacement step (with accumulator when ``acc`` is given)."""
    i, j = rng.sample(range(len(pool)), 2)
    if rng.random() < 0.5:
        pool[i] = mul(pool[i], pool[j] if rng.random() < 0.5 else inv(pool[j]))
    else:
        pool[i] = mul(pool[j] if rng.random() < 0.5 else inv(pool[j]), pool[i])
    if acc is None:
        return pool[i]
    return mul(acc, pool[i])


class PermGroup:
    """A permutation group with an exact stabilizer chain.

    Construction runs random Schreier-Sims followed by the deterministic
    Schreier-Sims completion, unless ``known_order`` is supplied by a caller
    who can prove the generated group is contained in a group of that order
    (orbit-stabilizer); hitting it then certifies the chain.
    """

    def __init__(self, gens: Sequence[Perm], degree: int | None = None, *,
                 base: Sequence[int] = (), known_order: int | None = None,
                 seed: int = 0, name: str | None = None, chain: _Chain | None = None):
        gens = [tuple(g) for g in gens]
        if degree is None:
            if not gens:
                raise ValueError("degree required for an empty generator list")
            degree = len(gens[0])
        if degree < 1:
            raise ValueError("degree must be >= 1")
        for g in gens:
            if len(g) != degree:
                raise DegreeMismatch(f"generator of degree {len(g)} in a group of degree {degree}")
        self.degree = degree
        self.name = name
        self.generators: tuple[Perm, ...] = tuple(g for g in gens if not is_identity(g))
        if chain is None:
            chain = _Chain(degree, base)
            rng = random.Random(seed)
            if self.generators:
                chain.random_fill(self.generators, rng, known_order)
                if known_order is None or chain.order() != known_order:
                    chain.schreier_sims(self.generators)
        self._base = tuple(lv.point for lv in chain.levels)
        self._gens_at = tuple(tuple(lv.gens) for lv in chain.levels)
        self._trans = tuple(lv.trans for lv in chain.levels)
        self._tinv = tuple(lv.tinv for lv in chain.levels)
        self.order = math.prod(len(t) for t in self._trans)
        if known_order is not None and self.order != known_order:
            raise AssertionError(f"chain order {self.order} != certified order {known_order}")
        self._lock = threading.Lock()
        self._memo: dict = {}

    # -- basic structure -------------------------------------------------
    @property
    def base(self) -> tuple[int, ...]:
        return self._base

    @property
    def basic_orbits(self) -> list[list[int]]:
        return [list(t) for t in self._trans]

    @property
    def strong_generators(self) -> list[Perm]:
        return list(self._gens_at[0]) if self._gens_at else []

    def identity(self) -> Perm:
        return identity(self.degree)

    def stabilizer_gens(self, depth: int) -> list[Perm]:
        """Generators of the pointwise stabilizer of the first ``depth`` base points."""
        if depth < len(self._gens_at):
            return list(self._gens_at[depth])
        return []

    def memo(self, key, compute):
        """Thread-safe per-group memoization."""
        with self._lock:
            if key in self._memo:
                return self._memo[key]
        val = compute()
        with self._lock:
            return self._memo.setdefault(key, val)

    # -- membership ------------------------------------------------------
    def sift(self, g: Perm) -> tuple[Perm, int]:
        for i, point in enumerate(self._base):
            t = self._tinv[i].get(g[point])
            if t is None:
                return g, i
            g = mul(g, t)
        return g, len(self._base)

    def contains(self, g: Perm) -> bool:
        if len(g) != self.degree:
            raise DegreeMismatch(f"element of degree {len(g)} vs group degree {self.degree}")
        h, _ = self.sift(tuple(g))
        return is_identity(h)

    __contains__ = contains

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return other.order % self.order == 0 and all(other.contains(g) for g in self.generators)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PermGroup):
            return NotImplemented
        return (self.degree == other.degree and self.order == other.order
                and all(other.contains(g) for g in self.generators))

    def __hash__(self):
        return hash((self.degree, self.order))

    def __repr__(self) -> str:
        label = f"{self.name}, " if self.name else ""
        return f"PermGroup({label}degree={self.degree}, order={self.order})"

    # -- elements --------------------------------------------------------
    def random_element(self, seed: int | random.Random) -> Perm:
        """Uniform random element: one random coset representative per level."""
        rng = seed if isinstance(seed, random.Random) else random.Random(seed)
        g = self.identity()
        for t in reversed(self._trans):
            g = mul(g, t[rng.choice(sorted(t))])
        return g

    def elements(self) -> Iterator[Perm]:
        """Enumerate every element once (product of transversal elements)."""
        def rec(i: int, g: Perm):
            if i < 0:
                yield g
                return
            for u in self._trans[i].values():
                yield from rec(i - 1, mul(g, u))
        yield from rec(len(self._trans) - 1, self.identity())

    def is_transitive(self) -> bool:
        return len(orbit(0, self.generators)) == self.degree

    def is_abelian(self) -> bool:
        gs = self.generators
        return all(mul(a, b) == mul(b, a) for i, a in enumerate(gs) for b in gs[i + 1:])


def build_group(gens: Sequence[Perm], degree: int | None = None, **kw) -> PermGroup:
    return PermGroup(gens, degree, **kw)


def random_element(G: PermGroup, seed: int) -> Perm:
    return G.random_element(seed)


def contains(G: PermGroup, g: Perm) -> bool:
    return G.contains(g)


def certified_subgroup(n: int, more_gens: Callable[[int], list[Perm]], target: int,
                       rng: random.Random, all_gens: Callable[[], Iterable[Perm]] | None = None,
                       rounds: int = 40) -> PermGroup:
    """Group of known order ``target`` generated by elements from ``more_gens``.

    Every element supplied must lie in a fixed group of order ``target``;
    the chain order is a lower bound for the generated group, so reaching
    ``target`` certifies equality.  ``all_gens`` is the exhaustive fallback.
    """
    chain = _Chain(n)
    gens: list[Perm] = []
    if target == 1:
        return PermGroup([], n, known_order=1, chain=chain)
    for _ in range(rounds):
        fresh = [g for g in more_gens(4) if not is_identity(g)]
        gens.extend(fresh)
        if not gens:
            continue
        chain.random_fill(gens, rng, target, patience=8)
        if chain.order() == target:
            return PermGroup(gens, n, known_order=target, chain=chain)
    if all_gens is not None:
        gens = [g for g in all_gens() if not is_identity(g)]
        chain = _Chain(n)
        chain.schreier_sims(gens)
        if chain.order() == target:
            return PermGroup(gens, n, known_order=target, chain=chain)
    raise RuntimeError(f"could not reach certified order {target} (got {chain.order()})")
