"""Combinatorics of new tails in the stable reduction of a three-point cover.

A configuration is the multiset of ramification invariants sigma = j/m on
the new tails.  With three primitive branch points the invariants satisfy
sum(sigma - 1) = 1, which bounds the enumeration.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .genus import genus_from_jump


class TailError(ValueError):
    pass


@dataclass(frozen=True)
class TailConfig:
    new_tails: tuple[Fraction, ...]
    m: int
    primitive_count: int = 3
    p_pure_connected: bool = True

    def __post_init__(self):
        tails = tuple(sorted(Fraction(s) for s in self.new_tails))
        object.__setattr__(self, "new_tails", tails)
        if any(s <= 1 for s in tails):
            raise TailError("every new-tail invariant must exceed 1")
        if any((s * self.m).denominator != 1 for s in tails):
            raise TailError(f"invariants must have denominator dividing m={self.m}")

    @classmethod
    def from_jumps(cls, jumps: Iterable[int], m: int, **kw) -> "TailConfig":
        return cls(tuple(Fraction(j, m) for j in jumps), m, **kw)

    @property
    def jumps(self) -> tuple[int, ...]:
        return tuple(int(s * self.m) for s in self.new_tails)

    def __str__(self) -> str:
        return "{" + ", ".join(f"{j}/{self.m}" for j in self.jumps) + "}"


def vc_check(cfg: TailConfig) -> bool:
    if cfg.primitive_count != 3:
        raise TailError("the vanishing-cycles constraint is only used with three primitive tails")
    return sum((s - 1 for s in cfg.new_tails), Fraction(0)) == 1


def enumerate_configs(admissible_j: Iterable[int], m: int) -> list[TailConfig]:
    """All multisets of jumps with sum(j/m - 1) = 1, by size and then lexicographically."""
    js = sorted(set(admissible_j))
    if any(j <= m for j in js):
        raise TailError("admissible jumps must exceed m")
    out: list[tuple[int, ...]] = []

    def rec(start: int, remaining: int, acc: list[int]) -> None:
        if remaining == 0:
            out.append(tuple(acc))
            return
        for k in range(start, len(js)):
            excess = js[k] - m
            if excess > remaining:
                break
            acc.append(js[k])
            rec(k, remaining - excess, acc)
            acc.pop()

    rec(0, m, [])
    out.sort(key=lambda c: (len(c), c))
    return [TailConfig.from_jumps(c, m) for c in out]


def config_genus_sum(cfg: TailConfig, d: int, t: int) -> int:
    return sum(genus_from_jump(j, d, t) for j in cfg.jumps)


def filter_by_quotient_genus(cfgs: Sequence[TailConfig], d: int, t: int, g: int) -> list[TailConfig]:
    """Configurations with a single tail carrying a quotient of genus at least g.

    When the cover is connected over one tail, a dominated quotient of genus
    g must already appear over that tail.
    """
    return [c for c in cfgs if any(genus_from_jump(j, d, t) >= g for j in c.jumps)]


def minimal_invariant_set(p_pure: bool, m: int, p: int | None = None) -> list[Fraction]:
    """Invariants that occur on some tail of some admissible configuration."""
    if not p_pure:
        raise TailError("the minimal-invariant bound needs a p-pure group")
    js = [j for j in range(m + 1, 2 * m + 1) if p is None or j % p]
    return sorted({s for c in enumerate_configs(js, m) for s in c.new_tails})


@dataclass
class StableModelSummary:
    configs: list[TailConfig]
    original_component: str = "Z"
    dominated_quotient_genus: int | None = None
    d: int | None = None
    t: int | None = None

    def surviving(self) -> list[TailConfig]:
        if self.dominated_quotient_genus is None:
            return list(self.configs)
        if self.d is None or self.t is None:
            raise TailError("d and t are needed to apply a genus constraint")
        return filter_by_quotient_genus(self.configs, self.d, self.t, self.dominated_quotient_genus)


@dataclass(frozen=True)
class Table3Row:
    size: int
    configs: tuple[TailConfig, ...]
    genus_sum: int


def table3(admissible_j: Iterable[int] = range(6, 11), m: int = 5, d: int = 12,
           t: int = 1) -> list[Table3Row]:
    """Configurations grouped by number of new tails, with the common genus sum."""
    rows: dict[int, list[TailConfig]] = {}
    for c in enumerate_configs(admissible_j, m):
        rows.setdefault(len(c.new_tails), []).append(c)
    out = []
    for size, cs in sorted(rows.items()):
        sums = {config_genus_sum(c, d, t) for c in cs}
        if len(sums) != 1:
            raise TailError(f"configurations with {size} tails have differing genus sums {sums}")
        out.append(Table3Row(size, tuple(cs), sums.pop()))
    return out
