"""Command-line interface: ``aictools <subcommand> ...``.

Every subcommand builds a plain dict report; ``--format json`` prints it
as JSON and ``--format table`` renders the same dict as text.  Exit codes:
0 success, 1 input error, 2 partial result (inconclusive scan, missing facts,
or a verdict short of "verified").
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any

from . import __version__
from .atlasio import FactError, can_load, default_facts, is_prime, load_facts, load_group
from .certify import Engine, aic_status, certificate, direct_factor_detail
from .genus import (BranchData, BranchPoint, GenusError, genus_from_jump, quotient_genus_cycletypes,
                    rh_cover_genus)
from .inertia import CENT_MODES, InconsistentCentralizer, catalog_for, m_G, ram_census, sigma_set
from .quasip import analyze_quasip
from .ramfilt import (FiltrationError, RamFiltration, breakpoints, inertia_jump, ram_invariant,
                      upper_jumps)
from .tails import config_genus_sum, enumerate_configs, filter_by_quotient_genus, table3

EXIT_OK, EXIT_INPUT, EXIT_PARTIAL = 0, 1, 2


class InputError(ValueError):
    pass


def _progress(args):
    if args.quiet:
        return lambda msg: None
    return lambda msg: print(msg, file=sys.stderr, flush=True)


def _facts(args):
    return load_facts(args.facts) if args.facts else default_facts()


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise InputError("missing " + ", ".join("--" + n.replace("_", "-") for n in missing))


def _frac(x: Fraction) -> str:
    return str(x)


# ---------------------------------------------------------------------------
# analyze / catalog


def _catalog_rows(cat, cent_mode: str, limit: Fraction) -> list[dict]:
    rows = []
    for c in cat.classes:
        row = {"label": c.label, "order": c.order, "m": c.m,
               "normalizer_order": c.normalizer_order, "census": list(ram_census(cat.group_order, c).as_tuple())}
        try:
            ss = sigma_set(c, cent_mode)
            row["gcd_target"] = ss.gcd_target
            row["sigma_preview"] = [_frac(s) for s in ss.elements(limit)]
        except InconsistentCentralizer as e:
            row["gcd_target"] = None
            row["sigma_preview"] = []
            row["note"] = str(e)
        rows.append(row)
    return rows


def cmd_catalog(args) -> tuple[dict, int]:
    _need(args, "group", "prime")
    fb = _facts(args)
    cat = catalog_for(args.group, args.prime, fb, seed=args.seed)
    rep = {"command": "catalog", "group": cat.group, "p": cat.p, "method": cat.method,
           "cent_mode": args.cent_mode, "normalizer_order": cat.normalizer.order,
           "classes": _catalog_rows(cat, args.cent_mode, args.limit), "notes": cat.notes}
    try:
        rep["m_G"] = m_G(cat.classes, args.cent_mode)
    except ValueError as e:
        rep["m_G"] = None
        rep["notes"].append(str(e))
    return rep, EXIT_OK if rep["m_G"] is not None else EXIT_PARTIAL


def cmd_analyze(args) -> tuple[dict, int]:
    _need(args, "group", "prime")
    fb = _facts(args)
    order = fb.order(args.group)
    if order is None:
        raise InputError(f"unknown group {args.group!r}")
    if order % args.prime:
        raise InputError(f"{args.prime} does not divide |{args.group}| = {order}")
    q = analyze_quasip(args.group, args.prime, fb, seed=args.seed, budget=args.budget,
                       weight=args.weight, progress=_progress(args))
    rep: dict[str, Any] = {"command": "analyze", "group": q.group, "p": q.p, "order": q.order,
                           "cent_mode": args.cent_mode,
                           "quasip": {"method": q.method, "is_quasi_p": q.is_quasi_p,
                                      "pG_order": q.pG_order, "GS_order": q.GS_order,
                                      "is_p_pure": q.is_p_pure, "p_weight": q.p_weight},
                           "notes": list(q.notes)}
    code = EXIT_OK if q.is_p_pure is not None else EXIT_PARTIAL
    try:
        cat = catalog_for(args.group, args.prime, fb, seed=args.seed)
        rep["catalog_method"] = cat.method
        rep["classes"] = _catalog_rows(cat, args.cent_mode, args.limit)
        rep["m_G"] = m_G(cat.classes, args.cent_mode, strict=False)
        rep["notes"] += cat.notes
    except (LookupError, ValueError) as e:
        rep["classes"], rep["m_G"] = [], None
        rep["notes"].append(f"catalog unavailable: {e}")
        code = EXIT_PARTIAL
    return rep, code


# ---------------------------------------------------------------------------
# certify


def _status_row(st) -> dict:
    return {"group": st.group, "p": st.p, "method": st.method, "verdict": st.verdict,
            "uncovered_classes": sorted(st.uncovered_classes),
            "exceptions": [_frac(s) for s in sorted(st.exceptions)],
            "exceptions_complete": st.exceptions_complete, "notes": st.notes}


def _plan_rows(fb, which: str) -> list[tuple[str, int]]:
    rows = []
    for pl in fb.plans:
        if which == "all" or str(pl.table) == which:
            if (pl.group, pl.prime) not in rows:
                rows.append((pl.group, pl.prime))
    if which == "all":
        rows += [("M11", 11)] if ("M11", 11) not in rows else []
    return rows


def cmd_certify(args) -> tuple[dict, int]:
    fb = _facts(args)
    eng = Engine(fb, cent_mode=args.cent_mode, seed=args.seed)
    if args.group:
        _need(args, "prime")
        pairs = [(fb.canonical(args.group), args.prime)]
    else:
        pairs = _plan_rows(fb, args.which or "all")
        if not pairs:
            raise InputError(f"no certification rows for --which {args.which}")
    rows, certs = [], []
    for g, p in pairs:
        _progress(args)(f"certifying ({g}, {p})")
        st = aic_status(g, p, eng, budget=args.budget)
        rows.append(_status_row(st))
        certs.append(certificate(st, args.cent_mode))
    rep = {"command": "certify", "cent_mode": args.cent_mode, "results": rows}
    if args.out:
        Path(args.out).write_text(json.dumps(certs if len(certs) > 1 else certs[0], indent=1) + "\n")
        rep["certificate"] = args.out
    ok = all(r["verdict"] == "verified" for r in rows)
    return rep, EXIT_OK if ok else EXIT_PARTIAL


# ---------------------------------------------------------------------------
# tables


def _table1(fb, args) -> dict:
    gf = fb.get("M11")
    rows = []
    for e in gf.maximal.entries:
        src = "facts"
        if can_load(e.label):
            if load_group(e.label).order != e.order:
                raise FactError(f"{e.label}: fact order {e.order} disagrees with the computed order")
            src = "facts+computed"
        rows.append({"label": e.label, "order": e.order, "index": e.index,
                     "divides": gf.order % e.order == 0 and gf.order // e.order == e.index,
                     "source": src})
    return {"title": "Maximal subgroups of M11", "columns": ["label", "order", "index", "divides", "source"],
            "rows": rows}


def _table2(fb, args) -> dict:
    eng = Engine(fb, cent_mode=args.cent_mode, seed=args.seed)
    by_p: dict[int, list[dict]] = {}
    for g, p in _plan_rows(fb, "2"):
        st = aic_status(g, p, eng, budget=args.budget)
        by_p.setdefault(p, []).append({"group": g, "verdict": st.verdict, "source": st.method})
    rows = [{"p": p, "groups": ", ".join(r["group"] for r in rs),
             "verdicts": ", ".join(r["verdict"] for r in rs),
             "source": ", ".join(r["source"] for r in rs)} for p, rs in sorted(by_p.items())]
    return {"title": "Inertia conjecture by subgroup induction",
            "columns": ["p", "groups", "verdicts", "source"], "rows": rows}


def _table3(fb, args) -> dict:
    rows = []
    for r in table3():
        rows.append({"tails": r.size, "configs": " or ".join(str(c) for c in r.configs),
                     "genus_sum": r.genus_sum, "source": "computed"})
    return {"title": "New-tail configurations (d=12, t=1)",
            "columns": ["tails", "configs", "genus_sum", "source"], "rows": rows}


def _safe_m_G(classes, cent_mode: str) -> int | None:
    try:
        return m_G(classes, cent_mode, strict=False)
    except ValueError:
        return None


def _table45(fb, args, which: int) -> dict:
    eng = Engine(fb, cent_mode=args.cent_mode, seed=args.seed)
    rows = []
    for pl in fb.plans:
        if pl.rule != "direct-factor" or pl.table != which:
            continue
        cat = eng.catalog(pl.group, pl.prime)
        res = direct_factor_detail(eng, pl.group, pl.via, pl.prime)
        nf = fb.normalizer(pl.group, pl.prime)
        rows.append({"p": pl.prime, "group": pl.group, "normalizer": nf.shape if nf else None,
                     "normalizer_order": cat.normalizer.order,
                     "m_G": _safe_m_G(cat.classes, args.cent_mode), "H": pl.via,
                     "direct_factor_check": res.ok, "source": cat.method,
                     "notes": res.failures()})
    return {"title": f"All but finitely many invariants (table {which})",
            "columns": ["p", "group", "normalizer", "m_G", "H", "direct_factor_check", "source"],
            "rows": rows,
            "caveat": f"m_G uses cent_mode={args.cent_mode}; other centralizer readings change it"}


def cmd_tables(args) -> tuple[dict, int]:
    fb = _facts(args)
    which = [int(args.which)] if args.which and args.which != "all" else [1, 2, 3, 4, 5]
    makers = {1: _table1, 2: _table2, 3: _table3, 4: lambda f, a: _table45(f, a, 4),
              5: lambda f, a: _table45(f, a, 5)}
    out = []
    for w in which:
        if w not in makers:
            raise InputError(f"no table {w}")
        t = makers[w](fb, args)
        t["table"] = w
        out.append(t)
    failed = any(r.get("direct_factor_check") is False for t in out for r in t["rows"])
    return {"command": "tables", "tables": out}, EXIT_PARTIAL if failed else EXIT_OK


# ---------------------------------------------------------------------------
# filtration / genus / tails


def _parse_orders(text: str) -> list[int]:
    out = []
    for tok in text.replace(",", " ").split():
        base, _, rep = tok.partition("x")
        try:
            out += [int(base)] * (int(rep) if rep else 1)
        except ValueError:
            raise InputError(f"bad order token {tok!r}; use N or NxK") from None
    if not out:
        raise InputError("empty order list")
    return out


def cmd_filtration(args) -> tuple[dict, int]:
    _need(args, "orders")
    f = RamFiltration(tuple(_parse_orders(args.orders)), args.prime)
    h = breakpoints(f)
    rep = {"command": "filtration", "orders": list(f.orders), "p": f.p,
           "breakpoints": [[_frac(s), _frac(t)] for s, t in h.breakpoints],
           "final_slope": _frac(h.final_slope),
           "upper_jumps": [_frac(u) for u in upper_jumps(f)], "tame": f.is_tame,
           "sigma": None if f.is_tame else _frac(ram_invariant(f)),
           "j": None if f.is_tame else inertia_jump(f)}
    return rep, EXIT_OK


def cmd_genus(args) -> tuple[dict, int]:
    rep: dict[str, Any] = {"command": "genus"}
    if args.jump is not None:
        _need(args, "degree", "t")
        rep.update(formula="jump", j=args.jump, d=args.degree, t=args.t,
                   genus=genus_from_jump(args.jump, args.degree, args.t))
    elif args.cycle_types:
        _need(args, "degree")
        pts = tuple(BranchPoint(1, tuple(int(x) for x in ct.split("+"))) for ct in args.cycle_types)
        rep.update(formula="cycle-types", d=args.degree, cycle_types=args.cycle_types,
                   genus=quotient_genus_cycletypes(args.degree, BranchData(pts)))
    elif args.group_order is not None:
        inert = [int(x) for x in (args.inertia or "").replace(",", " ").split()]
        rep.update(formula="galois", group_order=args.group_order, inertia=inert,
                   genus=rh_cover_genus(args.group_order, args.base_genus, inert))
    else:
        raise InputError("give --jump, --cycle-types, or --group-order")
    return rep, EXIT_OK


def _parse_jumps(text: str) -> list[int]:
    out = []
    for tok in text.replace(",", " ").split():
        lo, _, hi = tok.partition("-")
        try:
            out += list(range(int(lo), int(hi) + 1)) if hi else [int(lo)]
        except ValueError:
            raise InputError(f"bad jump token {tok!r}") from None
    return out


def cmd_tails(args) -> tuple[dict, int]:
    js = _parse_jumps(args.jumps)
    if args.prime:
        js = [j for j in js if j % args.prime]
    cfgs = enumerate_configs(js, args.m)
    rows = [{"config": str(c), "jumps": list(c.jumps),
             "genus_sum": config_genus_sum(c, args.degree, args.t)} for c in cfgs]
    rep = {"command": "tails", "m": args.m, "d": args.degree, "t": args.t, "configs": rows}
    if args.genus is not None:
        rep["surviving"] = [str(c) for c in filter_by_quotient_genus(cfgs, args.degree, args.t, args.genus)]
    return rep, EXIT_OK


# ---------------------------------------------------------------------------
# rendering


def _render_rows(rows: list[dict], cols: list[str]) -> list[str]:
    cells = [[str(r.get(c, "")) for c in cols] for r in rows]
    widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(cols)]
    out = ["  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip()]
    out.append("  ".join("-" * w for w in widths))
    out += ["  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() for row in cells]
    return out


def render(rep: dict) -> str:
    lines: list[str] = []
    cmd = rep["command"]
    if cmd == "tables":
        for t in rep["tables"]:
            lines.append(f"Table {t['table']}: {t['title']}")
            lines += _render_rows(t["rows"], t["columns"])
            for r in t["rows"]:
                for n in r.get("notes", []):
                    lines.append(f"  note [{r.get('group', '')}]: {n}")
            if "caveat" in t:
                lines.append(f"  caveat: {t['caveat']}")
            lines.append("")
        return "\n".join(lines).rstrip() + "\n"
    scalars = {k: v for k, v in rep.items() if not isinstance(v, (list, dict)) and k != "command"}
    lines.append(f"[{cmd}] " + "  ".join(f"{k}={v}" for k, v in scalars.items()))
    if "quasip" in rep:
        lines.append("  " + "  ".join(f"{k}={v}" for k, v in rep["quasip"].items()))
    if rep.get("classes"):
        cols = ["label", "order", "m", "normalizer_order", "census", "gcd_target", "sigma_preview"]
        lines += ["  " + s for s in _render_rows(rep["classes"], cols)]
    if "results" in rep:
        lines += ["  " + s for s in _render_rows(
            rep["results"], ["group", "p", "method", "verdict", "uncovered_classes", "exceptions"])]
        for r in rep["results"]:
            lines += [f"  note [{r['group']}]: {n}" for n in r["notes"]]
    if "configs" in rep:
        lines += ["  " + s for s in _render_rows(rep["configs"], ["config", "genus_sum"])]
    for key in ("breakpoints", "upper_jumps", "surviving", "cycle_types", "inertia"):
        if key in rep:
            lines.append(f"  {key}: {rep[key]}")
    lines += [f"  note: {n}" for n in rep.get("notes", [])]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# argument parsing


def _prime(text: str) -> int:
    p = int(text)
    if not is_prime(p):
        raise argparse.ArgumentTypeError(f"{p} is not prime")
    return p


def _limit(text: str) -> Fraction:
    q = Fraction(text)
    if q <= 1:
        raise argparse.ArgumentTypeError("limit must exceed 1")
    return q


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group")
    common.add_argument("--prime", type=_prime)
    common.add_argument("--facts", metavar="PATH", help="fact file (default: bundled)")
    common.add_argument("--cent-mode", choices=CENT_MODES, default="sylow")
    common.add_argument("--limit", type=_limit, default=Fraction(3), help="sigma preview bound")
    common.add_argument("--format", choices=("table", "json"), default="table")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=_positive, default=300)
    common.add_argument("--which")
    common.add_argument("--quiet", action="store_true", help="no progress on stderr")

    ap = argparse.ArgumentParser(prog="aictools", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)
    a = sub.add_parser("analyze", parents=[common], help="quasi-p, purity, catalog, m_G")
    a.add_argument("--weight", action="store_true", help="also compute the p-weight")
    sub.add_parser("catalog", parents=[common], help="inertia classes and census")
    c = sub.add_parser("certify", parents=[common], help="saturate facts, print verdicts")
    c.add_argument("--out", metavar="PATH", help="write certificate JSON here")
    sub.add_parser("tables", parents=[common], help="reproduce tables 1-5")
    f = sub.add_parser("filtration", parents=[common], help="Herbrand function and jumps")
    f.add_argument("--orders", help="|G_0|,|G_1|,...; NxK repeats N K times")
    g = sub.add_parser("genus", parents=[common], help="genus formulas")
    g.add_argument("--jump", type=int)
    g.add_argument("--degree", type=int)
    g.add_argument("--t", type=int)
    g.add_argument("--cycle-types", nargs="+", help="one partition per branch point, e.g. 11+1")
    g.add_argument("--group-order", type=int)
    g.add_argument("--inertia", help="inertia orders, comma separated")
    g.add_argument("--base-genus", type=int, default=0)
    t = sub.add_parser("tails", parents=[common], help="new-tail configurations")
    t.add_argument("--jumps", default="6-10")
    t.add_argument("--m", type=int, default=5)
    t.add_argument("--degree", type=int, default=12)
    t.add_argument("--t", type=int, default=1)
    t.add_argument("--genus", type=int)
    return ap


COMMANDS = {"analyze": cmd_analyze, "catalog": cmd_catalog, "certify": cmd_certify,
            "tables": cmd_tables, "filtration": cmd_filtration, "genus": cmd_genus,
            "tails": cmd_tails}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        rep, code = COMMANDS[args.command](args)
    except (InputError, FactError, FiltrationError, GenusError, LookupError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    if args.format == "json":
        print(json.dumps(rep, indent=1, sort_keys=True))
    else:
        print(render(rep), end="")
    return code


if __name__ == "__main__":
    sys.exit(main())
