"""Group files, the JSON fact base, and the built-in group constructors.

Group file grammar (points are 1-based)::

    file      := (comment | blank)* header (generator | comment | blank)*
    header    := NAME DEGREE [EXPECTED_ORDER]
    generator := "()" | cycle+
    cycle     := "(" INT ("," INT)* ")"
    comment   := "#" any text

The fact file is JSON; see ``FACT_SCHEMA_VERSION`` and :func:`parse_fact_file`.
"""
from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Any, Sequence

from .permcore import Perm, PermGroup, cycles, from_cycles

FACT_SCHEMA_VERSION = 1


class GroupFileError(ValueError):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col


class FactError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Group files


@dataclass(frozen=True)
class GroupFile:
    name: str
    degree: int
    generators: tuple[tuple[tuple[int, ...], ...], ...]  # 1-based cycles
    expected_order: int | None = None
    comments: tuple[str, ...] = ()

    def perms(self) -> list[Perm]:
        return [from_cycles([[x - 1 for x in c] for c in g], self.degree) for g in self.generators]

    def build(self, **kw) -> PermGroup:
        G = PermGroup(self.perms(), self.degree, name=self.name, **kw)
        if self.expected_order is not None and G.order != self.expected_order:
            raise GroupFileError(
                f"{self.name}: built order {G.order} != expected {self.expected_order}", 1, 1)
        return G


_CYCLE = re.compile(r"\(([^()]*)\)")


def _parse_generator(text: str, degree: int, lineno: int, col0: int) -> tuple[tuple[int, ...], ...]:
    s = text.strip()
    if s == "()":
        return ()
    pos = 0
    cycs = []
    seen: set[int] = set()
    while pos < len(s):
        if s[pos].isspace():
            pos += 1
            continue
        m = _CYCLE.match(s, pos)
        if not m:
            raise GroupFileError("expected '(' starting a cycle", lineno, col0 + pos + 1)
        body = m.group(1)
        parts = body.split(",")
        cyc = []
        off = m.start(1)
        for part in parts:
            tok = part.strip()
            if not tok.isdigit():
                raise GroupFileError(f"bad point {tok!r}", lineno, col0 + off + 1)
            x = int(tok)
            if not 1 <= x <= degree:
                raise GroupFileError(f"point {x} outside 1..{degree}", lineno, col0 + off + 1)
            if x in seen:
                raise GroupFileError(f"point {x} repeated", lineno, col0 + off + 1)
            seen.add(x)
            cyc.append(x)
            off += len(part) + 1
        if len(cyc) > 1:
            cycs.append(tuple(cyc))
        pos = m.end()
    return tuple(cycs)


def parse_group_file(text: str) -> GroupFile:
    header = None
    gens = []
    comments = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            comments.append(line[1:].strip())
            continue
        col0 = len(raw) - len(raw.lstrip())
        if header is None:
            toks = line.split()
            if len(toks) not in (2, 3) or not all(t.isdigit() for t in toks[1:]):
                raise GroupFileError("header must be 'name degree [expected_order]'", lineno, col0 + 1)
            degree = int(toks[1])
            if degree < 1:
                raise GroupFileError("degree must be positive", lineno, col0 + 1)
            header = (toks[0], degree, int(toks[2]) if len(toks) == 3 else None)
            continue
        gens.append(_parse_generator(line, header[1], lineno, col0))
    if header is None:
        raise GroupFileError("missing header line", 1, 1)
    return GroupFile(header[0], header[1], tuple(gens), header[2], tuple(comments))


def serialize_group_file(gf: GroupFile) -> str:
    out = [f"# {c}" if c else "#" for c in gf.comments]
    head = f"{gf.name} {gf.degree}"
    if gf.expected_order is not None:
        head += f" {gf.expected_order}"
    out.append(head)
    for g in gf.generators:
        out.append("".join("(" + ",".join(map(str, c)) + ")" for c in g) or "()")
    return "\n".join(out) + "\n"


def group_file_from_perms(name: str, gens: Sequence[Perm], degree: int,
                          expected_order: int | None = None) -> GroupFile:
    gs = tuple(tuple(tuple(x + 1 for x in c) for c in cycles(g)) for g in gens)
    return GroupFile(name, degree, gs, expected_order)


def bundled_group_names() -> list[str]:
    d = resources.files("aictools") / "data" / "groups"
    return sorted(p.name[:-4] for p in d.iterdir() if p.name.endswith(".txt"))


def read_bundled(name: str) -> GroupFile:
    path = resources.files("aictools") / "data" / "groups" / f"{name}.txt"
    return parse_group_file(path.read_text())


# ---------------------------------------------------------------------------
# Constructors


def is_prime(n: int) -> bool:
    return n >= 2 and all(n % q for q in range(2, math.isqrt(n) + 1))


def primitive_root(p: int) -> int:
    fs = {q for q in range(2, p) if (p - 1) % q == 0 and is_prime(q)}
    return next(g for g in range(2, p) if all(pow(g, (p - 1) // q, p) != 1 for q in fs))


def construct_psl2(q: int) -> PermGroup:
    """PSL2(q) on the projective line, points 0..q-1 and infinity = q."""
    if not is_prime(q):
        raise ValueError(f"construct_psl2 supports prime q only, got {q}")
    if q < 5:
        raise ValueError("q must be at least 5")
    inf = q
    lam = pow(primitive_root(q), 2, q)
    t = tuple((x + 1) % q for x in range(q)) + (inf,)
    d = tuple(lam * x % q for x in range(q)) + (inf,)

    def w(x):
        if x == inf:
            return 0
        if x == 0:
            return inf
        return (-pow(x, q - 2, q)) % q
    s = tuple(w(x) for x in range(q + 1))
    order = q * (q * q - 1) // 2
    return PermGroup([t, d, s], q + 1, known_order=order, name=f"PSL2({q})")


def alternating(n: int) -> PermGroup:
    if n < 3:
        return PermGroup([], max(n, 1), name=f"A{n}")
    gens = [from_cycles([[0, 1, 2]], n)]
    if n > 3:
        cyc = list(range(n)) if n % 2 else list(range(1, n))
        gens.append(from_cycles([cyc], n))
    return PermGroup(gens, n, known_order=math.factorial(n) // 2, name=f"A{n}")


def symmetric(n: int) -> PermGroup:
    if n < 2:
        return PermGroup([], max(n, 1), name=f"S{n}")
    gens = [from_cycles([[0, 1]], n), from_cycles([list(range(n))], n)]
    return PermGroup(gens, n, known_order=math.factorial(n), name=f"S{n}")


def cyclic(n: int) -> PermGroup:
    if n == 1:
        return PermGroup([], 1, name="1")
    return PermGroup([from_cycles([list(range(n))], n)], n, known_order=n, name=f"Z{n}")


def dihedral(n: int) -> PermGroup:
    """Dihedral group of order 2n on n points."""
    r = tuple((x + 1) % n for x in range(n))
    s = tuple((-x) % n for x in range(n))
    return PermGroup([r, s], n, known_order=2 * n, name=f"D{n}")


def frobenius(p: int, m: int) -> PermGroup:
    """Z/p : Z/m with Z/m acting faithfully, on p points."""
    if not is_prime(p) or (p - 1) % m:
        raise ValueError(f"no faithful action of Z/{m} on Z/{p}")
    a = pow(primitive_root(p), (p - 1) // m, p)
    t = tuple((x + 1) % p for x in range(p))
    gens = [t] if m == 1 else [t, tuple(a * x % p for x in range(p))]
    return PermGroup(gens, p, known_order=p * m, name=f"{p}:{m}")


def direct_product(*Gs: PermGroup) -> PermGroup:
    """Direct product acting on the disjoint union of the point sets."""
    n = sum(G.degree for G in Gs)
    gens = []
    off = 0
    for G in Gs:
        for g in G.generators:
            img = list(range(n))
            for i, x in enumerate(g):
                img[off + i] = off + x
            gens.append(tuple(img))
        off += G.degree
    return PermGroup(gens, n, known_order=math.prod(G.order for G in Gs))


_SHAPE_TOKEN = re.compile(r"\s*([()x:]|[A-Za-z]*\d+)")


def realize_shape(shape: str) -> PermGroup:
    """Build a permutation group from a structure string.

    Supported: ``n`` (cyclic), ``Dn`` (order 2n), ``Sn``, ``An``, ``p:m``
    (faithful Frobenius-type), ``x`` (direct product), parentheses.
    """
    toks = []
    pos = 0
    while pos < len(shape):
        m = _SHAPE_TOKEN.match(shape, pos)
        if not m:
            raise FactError(f"cannot parse shape {shape!r} at {pos}")
        toks.append(m.group(1))
        pos = m.end()
    i = 0

    def expr():
        nonlocal i
        parts = [term()]
        while i < len(toks) and toks[i] == "x":
            i += 1
            parts.append(term())
        return parts[0] if len(parts) == 1 else ("x", parts)

    def term():
        nonlocal i
        a = atom()
        if i < len(toks) and toks[i] == ":":
            i += 1
            b = atom()
            return (":", a, b)
        return a

    def atom():
        nonlocal i
        if i >= len(toks):
            raise FactError(f"unexpected end of shape {shape!r}")
        t = toks[i]
        i += 1
        if t == "(":
            e = expr()
            if i >= len(toks) or toks[i] != ")":
                raise FactError(f"unbalanced parentheses in {shape!r}")
            i += 1
            return e
        return t

    tree = expr()
    if i != len(toks):
        raise FactError(f"trailing tokens in shape {shape!r}")

    def build(node) -> PermGroup:
        if isinstance(node, str):
            kind, num = re.fullmatch(r"([A-Za-z]*)(\d+)", node).groups()
            n = int(num)
            if kind == "":
                return cyclic(n)
            if kind in ("D",):
                return dihedral(n)
            if kind == "S":
                return symmetric(n)
            if kind == "A":
                return alternating(n)
            if kind == "Z":
                return cyclic(n)
            raise FactError(f"unknown shape atom {node!r}")
        if node[0] == "x":
            return direct_product(*(build(c) for c in node[1]))
        _, a, b = node
        if isinstance(a, str) and isinstance(b, str) and a.isdigit() and b.isdigit():
            return frobenius(int(a), int(b))
        raise FactError(f"semidirect product {shape!r} needs explicit generators")

    G = build(tree)
    G.name = shape
    return G


_NAME_PATTERNS = [
    (re.compile(r"(?:PSL2|L2)\((\d+)\)"), lambda q: construct_psl2(int(q))),
    (re.compile(r"A(\d+)"), lambda n: alternating(int(n))),
    (re.compile(r"S(\d+)"), lambda n: symmetric(int(n))),
]


@lru_cache(maxsize=None)
def load_group(name: str) -> PermGroup:
    """Resolve a group id to a permutation group (bundled file or constructor)."""
    if name in ("1", "trivial"):
        return PermGroup([], 1, name="trivial")
    if name in bundled_group_names():
        return read_bundled(name).build()
    for pat, make in _NAME_PATTERNS:
        m = pat.fullmatch(name)
        if m:
            G = make(m.group(1))
            G.name = name
            return G
    raise LookupError(f"no permutation representation for {name!r}")


def can_load(name: str) -> bool:
    try:
        canonical = name in ("1", "trivial") or name in bundled_group_names()
        return canonical or any(p.fullmatch(name) for p, _ in _NAME_PATTERNS)
    except OSError:
        return False


# ---------------------------------------------------------------------------
# Fact base


@dataclass(frozen=True)
class MaxEntry:
    label: str
    order: int
    index: int
    classes: int = 1
    simple: bool = False


@dataclass(frozen=True)
class MaxSubgroupTable:
    group: str
    entries: tuple[MaxEntry, ...]

    def orders(self) -> list[int]:
        return [e.order for e in self.entries]


@dataclass(frozen=True)
class Overgroup:
    label: str
    sylow_normalizer: int
    simple: bool = False


@dataclass(frozen=True)
class NormalizerFact:
    prime: int
    shape: str
    citation: str
    generators: tuple[str, ...] | None = None
    degree: int | None = None

    def realize(self) -> PermGroup:
        if self.generators is not None:
            gf = parse_group_file(f"{self.shape} {self.degree}\n" + "\n".join(self.generators))
            G = gf.build()
            G.name = self.shape
            return G
        return realize_shape(self.shape)


@dataclass(frozen=True)
class Containment:
    subgroup: str
    citation: str


@dataclass(frozen=True)
class GroupFacts:
    name: str
    order: int
    simple: bool
    generators: str | None = None
    maximal: MaxSubgroupTable | None = None
    overgroups: dict[int, tuple[Overgroup, ...]] = field(default_factory=dict)
    normalizers: dict[int, NormalizerFact] = field(default_factory=dict)
    contains: tuple[Containment, ...] = ()
    class_labels: dict[int, tuple[str, ...]] = field(default_factory=dict)


@dataclass(frozen=True)
class Axiom:
    kind: str          # sylow-cover | aic | normalizer-cover | jump
    group: str
    citation: str
    prime: int | None = None
    m: int | None = None
    jump: int | None = None


@dataclass(frozen=True)
class Plan:
    rule: str          # subgroup-induction | direct-factor
    group: str
    prime: int
    via: str
    table: int | None = None


AXIOM_KINDS = ("sylow-cover", "aic", "normalizer-cover", "jump")
PLAN_RULES = ("subgroup-induction", "direct-factor")


@dataclass(frozen=True)
class FactBase:
    groups: dict[str, GroupFacts]
    axioms: tuple[Axiom, ...] = ()
    plans: tuple[Plan, ...] = ()
    citations: dict[str, str] = field(default_factory=dict)
    aliases: dict[str, str] = field(default_factory=dict)

    def canonical(self, name: str) -> str:
        return self.aliases.get(name, name)

    def get(self, name: str) -> GroupFacts | None:
        return self.groups.get(self.canonical(name))

    def order(self, name: str) -> int | None:
        gf = self.get(name)
        if gf is not None:
            return gf.order
        if can_load(self.canonical(name)):
            return load_group(self.canonical(name)).order
        return None

    def maximal_table(self, name: str) -> MaxSubgroupTable | None:
        gf = self.get(name)
        return None if gf is None else gf.maximal

    def normalizer(self, name: str, p: int) -> NormalizerFact | None:
        gf = self.get(name)
        return None if gf is None else gf.normalizers.get(p)

    def containment(self, big: str, small: str) -> Containment | None:
        gf = self.get(big)
        if gf is None:
            return None
        small = self.canonical(small)
        return next((c for c in gf.contains if self.canonical(c.subgroup) == small), None)

    def axioms_for(self, group: str, prime: int | None = None, kind: str | None = None):
        group = self.canonical(group)
        return [a for a in self.axioms
                if (a.group == group or a.group == "*")
                and (kind is None or a.kind == kind)
                and (prime is None or a.prime is None or a.prime == prime)]

    def plans_for(self, group: str, prime: int) -> list[Plan]:
        group = self.canonical(group)
        return [pl for pl in self.plans if pl.group == group and pl.prime == prime]


def _check_keys(obj: dict, allowed: set[str], where: str, required: set[str] = frozenset()):
    if not isinstance(obj, dict):
        raise FactError(f"{where}: expected an object")
    extra = set(obj) - allowed
    if extra:
        raise FactError(f"{where}: unknown field(s) {sorted(extra)}")
    missing = set(required) - set(obj)
    if missing:
        raise FactError(f"{where}: missing field(s) {sorted(missing)}")


def _order_from(obj: dict, where: str) -> int:
    order = obj.get("order")
    if "order_factors" in obj:
        n = math.prod(int(b) ** e for b, e in obj["order_factors"].items())
        if order is not None and order != n:
            raise FactError(f"{where}: order {order} disagrees with factorization {n}")
        order = n
    if not isinstance(order, int) or order < 1:
        raise FactError(f"{where}: missing or bad order")
    return order


def parse_fact_file(text: str) -> FactBase:
    doc = json.loads(text) if text.strip() else {"schema_version": FACT_SCHEMA_VERSION}
    _check_keys(doc, {"schema_version", "citations", "aliases", "groups", "axioms", "plans"},
                "top level", {"schema_version"})
    if doc["schema_version"] != FACT_SCHEMA_VERSION:
        raise FactError(f"unsupported schema_version {doc['schema_version']}")
    citations = dict(doc.get("citations", {}))
    groups: dict[str, GroupFacts] = {}
    for name, g in doc.get("groups", {}).items():
        where = f"groups.{name}"
        _check_keys(g, {"order", "order_factors", "simple", "generators", "maximal",
                        "overgroups", "normalizers", "contains", "class_labels"}, where)
        order = _order_from(g, where)
        maximal = None
        if "maximal" in g:
            entries = []
            for k, e in enumerate(g["maximal"]):
                w = f"{where}.maximal[{k}]"
                _check_keys(e, {"label", "order", "classes", "simple"}, w, {"label", "order"})
                if order % e["order"]:
                    raise FactError(f"{w}: order {e['order']} does not divide {order}")
                entries.append(MaxEntry(e["label"], e["order"], order // e["order"],
                                        e.get("classes", 1), e.get("simple", False)))
            maximal = MaxSubgroupTable(name, tuple(entries))
        overgroups = {}
        for p, lst in g.get("overgroups", {}).items():
            ogs = []
            for k, e in enumerate(lst):
                w = f"{where}.overgroups.{p}[{k}]"
                _check_keys(e, {"label", "sylow_normalizer", "simple"}, w,
                            {"label", "sylow_normalizer"})
                simple = e.get("simple")
                if simple is None and maximal is not None:
                    simple = any(x.simple for x in maximal.entries if x.label == e["label"])
                ogs.append(Overgroup(e["label"], e["sylow_normalizer"], bool(simple)))
            overgroups[int(p)] = tuple(ogs)
        normalizers = {}
        for p, e in g.get("normalizers", {}).items():
            w = f"{where}.normalizers.{p}"
            _check_keys(e, {"shape", "citation", "generators"}, w, {"shape", "citation"})
            gens = e.get("generators")
            if gens is not None:
                _check_keys(gens, {"degree", "cycles"}, w + ".generators", {"degree", "cycles"})
            nf = NormalizerFact(int(p), e["shape"], e["citation"],
                                None if gens is None else tuple(gens["cycles"]),
                                None if gens is None else gens["degree"])
            normalizers[int(p)] = nf
        contains = []
        for k, c in enumerate(g.get("contains", [])):
            _check_keys(c, {"subgroup", "citation"}, f"{where}.contains[{k}]",
                        {"subgroup", "citation"})
            contains.append(Containment(c["subgroup"], c["citation"]))
        labels = {int(p): tuple(v) for p, v in g.get("class_labels", {}).items()}
        groups[name] = GroupFacts(name, order, bool(g.get("simple", False)), g.get("generators"),
                                  maximal, overgroups, normalizers, tuple(contains), labels)
    axioms = []
    for k, a in enumerate(doc.get("axioms", [])):
        w = f"axioms[{k}]"
        _check_keys(a, {"kind", "group", "prime", "m", "jump", "citation"}, w, {"kind", "group"})
        if not a.get("citation"):
            raise FactError(f"{w}: axiom without citation key")
        if a["kind"] not in AXIOM_KINDS:
            raise FactError(f"{w}: unknown axiom kind {a['kind']!r}")
        if a["kind"] == "jump" and (a.get("m") is None or a.get("jump") is None
                                    or a.get("prime") is None):
            raise FactError(f"{w}: jump axiom needs prime, m and jump")
        axioms.append(Axiom(a["kind"], a["group"], a["citation"], a.get("prime"),
                            a.get("m"), a.get("jump")))
    plans = []
    for k, pl in enumerate(doc.get("plans", [])):
        w = f"plans[{k}]"
        _check_keys(pl, {"rule", "group", "prime", "via", "table"}, w,
                    {"rule", "group", "prime", "via"})
        if pl["rule"] not in PLAN_RULES:
            raise FactError(f"{w}: unknown rule {pl['rule']!r}")
        plans.append(Plan(pl["rule"], pl["group"], pl["prime"], pl["via"], pl.get("table")))
    fb = FactBase(groups, tuple(axioms), tuple(plans), citations, dict(doc.get("aliases", {})))
    _validate(fb)
    return fb


def _validate(fb: FactBase) -> None:
    for gf in fb.groups.values():
        for p, nf in gf.normalizers.items():
            if nf.citation not in fb.citations:
                raise FactError(f"{gf.name}: unknown citation {nf.citation!r}")
            if gf.order % p or (gf.order // p) % p == 0:
                raise FactError(f"{gf.name}: {p} does not divide the order exactly once")
            N = nf.realize()
            if gf.order % N.order:
                raise FactError(f"{gf.name}: normalizer {nf.shape} order {N.order} "
                                f"does not divide {gf.order}")
        for c in gf.contains:
            if c.citation not in fb.citations:
                raise FactError(f"{gf.name}: unknown citation {c.citation!r}")
            sub = fb.order(c.subgroup)
            if sub is not None and gf.order % sub:
                raise FactError(f"{gf.name}: contained {c.subgroup} has order not dividing")
        for p, ogs in gf.overgroups.items():
            nf = gf.normalizers.get(p)
            for og in ogs:
                if nf is not None and nf.realize().order % og.sylow_normalizer:
                    raise FactError(f"{gf.name}: overgroup {og.label} normalizer too large")
    for a in fb.axioms:
        if a.citation not in fb.citations:
            raise FactError(f"axiom for {a.group}: unknown citation key {a.citation!r}")


def load_facts(path: str | None = None) -> FactBase:
    if path is None:
        return default_facts()
    with open(path, encoding="utf-8") as fh:
        return parse_fact_file(fh.read())


@lru_cache(maxsize=1)
def default_facts() -> FactBase:
    text = (resources.files("aictools") / "data" / "facts.json").read_text()
    return parse_fact_file(text)


def fact_order_check(fb: FactBase) -> dict[str, Any]:
    """Built-in groups: stabilizer-chain order versus the fact-base order."""
    out = {}
    for name in bundled_group_names():
        G = load_group(name)
        gf = fb.get(name)
        out[name] = (G.order, None if gf is None else gf.order)
    return out
