"""Command line: comparisons, column maps, crystal operators, graph export, verify.

    sibruhat sib leq --type B --rank 3 --i 2 --lhs "1,2@0" --rhs "2,-3@1"
    sibruhat tab split --type B --rank 9 --col "2,3,0,-9,-3,!0,!0"
    sibruhat crystal apply --type C --rank 3 --ops "f1,f0,e2" --elem "1,-2@0"
    sibruhat export qbg --type C --rank 2 --i 1 --format dot
    sibruhat verify

A verify budget file (pointed to by SIBRUHAT_BUDGET, or passed with
--budget) holds ``key = value`` lines; ``#`` starts a comment:

    families = A4, B3, C3, D4     # family and largest rank, smallest rank is the family minimum
    window = 4                    # c-gap of the semi-infinite order sweeps
    suites = qbg, sib, deodhar, bijection, crystal, maya
    seed = 0                      # only used when sample > 0
    sample = 0                    # start elements per sweep, 0 for all
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import asdict, dataclass, field
from typing import Sequence

from . import checks
from . import crystal as cr
from .affine import parse_affine
from .columns import (
    column_segments_and_maya,
    d_coefficient,
    enumerate_qkn,
    make_path,
    parse_column,
    parse_letters,
    qkn_of_qls,
    qkn_split,
    qls_of_qkn,
)
from .cst import column_of_window, enumerate_columns, format_column
from .qbg import QUANTUM, enumerate_edges
from .siborder import (
    TabVertex,
    covers,
    deodhar_leq,
    deodhar_report,
    parse_vertex,
    sib_leq_bruteforce,
    tableau_leq,
)
from .weyl import _MIN_RANK as MIN_RANK
from .weyl import FAMILIES, RootDatum, WeylError, format_vector

BUDGET_ENV = "SIBRUHAT_BUDGET"
SUITES = ("qbg", "sib", "deodhar", "bijection", "crystal", "maya")
MAX_RANK = {"A": 6, "B": 5, "C": 5, "D": 6}
# The Deodhar sweep compares every pair in a box of (W^J)_af for every J, so
# it is only run for Weyl groups of order at most this, with coordinates in [0, 2).
DEODHAR_MAX_ORDER = 48
DEODHAR_WIDTH = 2


# -- parsing ------------------------------------------------------------------------


def parse_element(datum: RootDatum, text: str, i: int | None = None):
    """``"2,3,0,-9,-3,!0,!0"`` gives a Column, ``"1,-2@3"`` an affinized one.

    The shape defaults to the number of letters.
    """
    body, sep, c = text.strip().partition("@")
    letters = parse_letters(body)
    col = parse_column(datum, len(letters) if i is None else i, body)
    if not sep:
        return col
    try:
        return cr.AffElem(col, int(c))
    except ValueError as exc:
        raise WeylError(f"cannot parse c={c!r} after '@'") from exc


def format_element(b) -> str:
    return "none" if b is None else str(b)


def _ints(text: str) -> tuple[int, ...]:
    return tuple(int(tok) for tok in text.replace("[", "").replace("]", "").split(",")
                 if tok.strip())


# -- verify -------------------------------------------------------------------------


@dataclass
class VerifyBudget:
    """Largest rank per family, c window, suites and sampling for ``verify``."""

    ranks: dict[str, int] = field(default_factory=lambda: {"A": 4, "B": 3, "C": 3, "D": 4})
    c_window: int = 4
    suites: tuple[str, ...] = SUITES
    seed: int = 0
    sample: int = 0

    def __post_init__(self):
        self.suites = tuple(self.suites)
        for fam, n in self.ranks.items():
            if fam not in FAMILIES:
                raise WeylError(f"unknown family {fam!r}")
            if not MIN_RANK[fam] <= n <= MAX_RANK[fam]:
                raise WeylError(f"rank {n} for {fam} outside the supported range "
                                f"[{MIN_RANK[fam]}, {MAX_RANK[fam]}]")
        if self.c_window < 1:
            raise WeylError("the c window must be at least 1")
        unknown = set(self.suites) - set(SUITES)
        if unknown:
            raise WeylError(f"unknown suites {sorted(unknown)}; choose from {list(SUITES)}")
        if self.sample < 0:
            raise WeylError("sample must be non-negative")

    @property
    def families(self) -> tuple[str, ...]:
        return tuple(sorted(self.ranks))

    def data(self) -> list[RootDatum]:
        return [RootDatum(fam, n) for fam in self.families
                for n in range(MIN_RANK[fam], self.ranks[fam] + 1)]


def _parse_families(text: str) -> dict[str, int]:
    out = {}
    for tok in text.replace(" ", "").split(","):
        if not tok:
            continue
        fam, rank = tok[0].upper(), tok[1:]
        if not rank.isdigit():
            raise WeylError(f"expected a family and rank like B3, got {tok!r}")
        out[fam] = int(rank)
    return out


def _split_list(text: str) -> tuple[str, ...]:
    return tuple(t.strip() for t in text.split(",") if t.strip())


def parse_budget(text: str, base: VerifyBudget | None = None) -> VerifyBudget:
    """Read ``key = value`` lines over ``base`` (the default budget if omitted)."""
    values = asdict(base or VerifyBudget())
    for num, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip().lower(), value.strip()
        if not sep:
            raise WeylError(f"budget line {num}: expected key = value")
        try:
            if key == "families":
                values["ranks"] = _parse_families(value)
            elif key == "window":
                values["c_window"] = int(value)
            elif key == "suites":
                values["suites"] = _split_list(value)
            elif key in ("seed", "sample"):
                values[key] = int(value)
            else:
                raise WeylError(f"budget line {num}: unknown key {key!r}")
        except ValueError as exc:
            raise WeylError(f"budget line {num}: {exc}") from exc
    return VerifyBudget(**values)


def load_budget(path: str | None = None) -> VerifyBudget:
    """The budget in ``path``, else the file named by SIBRUHAT_BUDGET, else the default."""
    path = path or os.environ.get(BUDGET_ENV)
    if not path:
        return VerifyBudget()
    with open(path, encoding="utf-8") as fh:
        return parse_budget(fh.read())


@dataclass
class VerifyReport:
    budget: VerifyBudget
    results: list[checks.SweepResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def text(self, shown: int = 10) -> str:
        lines = []
        for r in self.results:
            lines.append(r.summary())
            for bad in r.failures[:shown]:
                lines.append(f"    {bad}")
            if len(r.failures) > shown:
                lines.append(f"    ... {len(r.failures) - shown} more")
        total = sum(r.checked for r in self.results)
        failed = sum(not r.passed for r in self.results)
        lines.append(f"{'PASS' if self.passed else 'FAIL'}: {len(self.results)} sweeps, "
                     f"{total} checks, {failed} failing sweeps")
        return "\n".join(lines)

    def json(self) -> str:
        return json.dumps({
            "passed": self.passed,
            "budget": asdict(self.budget),
            "sweeps": [{"name": r.name, "passed": r.passed, "checked": r.checked,
                        "failures": r.failures} for r in self.results],
        }, indent=2)


def _suite_jobs(suite: str, datum: RootDatum, budget: VerifyBudget, rng: random.Random):
    fam, n = datum.family, datum.n
    I = datum.index_set
    if suite == "qbg":
        yield lambda: checks.sweep_qbg(datum)
    elif suite == "sib":
        for i in I:
            window = max(budget.c_window, i + 2)
            yield lambda i=i, w=window: checks.sweep_sib(datum, i, w, budget.sample, rng)
    elif suite == "deodhar":
        if len(datum.elements()) <= DEODHAR_MAX_ORDER:
            yield lambda: checks.sweep_deodhar(datum, DEODHAR_WIDTH, budget.sample, rng)
    elif suite == "bijection":
        for i in I:
            yield lambda i=i: checks.sweep_bijection(datum, i)
        if fam != "A":
            yield lambda: checks.sweep_split(datum)
    elif suite == "crystal":
        for i in I:
            yield lambda i=i: checks.sweep_crystal(datum, i)
    elif suite == "maya" and fam != "A":
        yield lambda: checks.sweep_maya(fam, n)


def run_verify(budget: VerifyBudget | None = None, progress=None) -> VerifyReport:
    """Run every suite of the budget on every (family, rank); deterministic per budget."""
    budget = budget or VerifyBudget()
    rng = random.Random(budget.seed)
    report = VerifyReport(budget)
    for suite in budget.suites:
        for datum in budget.data():
            for job in _suite_jobs(suite, datum, budget, rng):
                res = job()
                report.results.append(res)
                if progress:
                    progress(res)
    return report


# -- graph export -------------------------------------------------------------------


def _graph(kind: str, datum: RootDatum, i: int, window: int, mode: str):
    """(vertex labels, edges as dicts) in a canonical order."""
    if kind == "qbg":
        verts = [format_column(c) for c in enumerate_columns(datum, i)]
        edges = [{"src": format_column(column_of_window(e.source, i)),
                  "dst": format_column(column_of_window(e.target, i)),
                  "kind": e.kind, "root": format_vector(e.root.vector),
                  **({"clause": e.clause} if e.clause else {})}
                 for e in enumerate_edges(datum, i, mode)]
    elif kind == "sib":
        cols = enumerate_columns(datum, i)
        vs = [TabVertex(c, k) for k in range(window + 1) for c in cols]
        verts = [str(v) for v in vs]
        edges = []
        for v in vs:
            for e in covers(datum, i, v, mode):
                if e.target.c <= window:
                    edges.append({"src": str(v), "dst": str(e.target),
                                  "kind": QUANTUM if e.target.c > v.c else "bruhat",
                                  "clause": e.clause})
    elif kind == "crystal":
        elems = enumerate_qkn(datum, i)
        verts = [str(b) for b in elems]
        edges = [{"src": str(b), "dst": str(x), "kind": "f", "root": j}
                 for b, j, x in cr.crystal_edges(elems, cr.affine_indices(datum))]
    else:
        raise WeylError(f"unknown graph kind {kind!r}; choose qbg, sib or crystal")
    order = {v: k for k, v in enumerate(verts)}
    edges.sort(key=lambda e: (order[e["src"]], order[e["dst"]], str(e.get("root", "")),
                              e.get("clause", "")))
    return verts, edges


def export_graph(kind: str, datum: RootDatum, i: int, fmt: str = "json", window: int = 2,
                 mode: str = "classified") -> str:
    """The qbg, sib (c in [0, window]) or crystal graph as json, dot or text."""
    datum.check_index(i)
    if datum.family == "A" and mode == "classified" and kind == "qbg":
        mode = "generic"
    verts, edges = _graph(kind, datum, i, window, mode)
    if fmt == "json":
        return json.dumps({"family": datum.family, "rank": datum.n, "shape": i,
                           "vertices": verts, "edges": edges}, indent=2)
    if fmt == "dot":
        lines = [f'digraph "{kind} {datum} i={i}" {{']
        lines += [f'  "{v}";' for v in verts]
        for e in edges:
            label = e.get("clause") or e.get("root")
            if kind == "crystal":
                label = e["root"]
            style = ", style=dashed" if e["kind"] == QUANTUM else ""
            lines.append(f'  "{e["src"]}" -> "{e["dst"]}" [label="{label}"{style}];')
        lines.append("}")
        return "\n".join(lines)
    if fmt == "text":
        lines = [f"{kind} {datum} i={i}: {len(verts)} vertices, {len(edges)} edges"]
        for e in edges:
            label = e.get("root") if kind == "crystal" else e.get("clause") or e.get("root")
            lines.append(f"{e['src']} -> {e['dst']} {e['kind']} {label}")
        return "\n".join(lines)
    raise WeylError(f"unknown format {fmt!r}")


# -- commands -----------------------------------------------------------------------


def _datum(args) -> RootDatum:
    return RootDatum(args.type.upper(), args.rank)


def _emit(obj) -> None:
    print(json.dumps(obj) if not isinstance(obj, str) else obj)


def cmd_sib(args) -> int:
    datum = _datum(args)
    if args.action == "covers":
        v = parse_vertex(datum, args.i, args.vertex)
        for e in covers(datum, args.i, v, args.mode):
            print(f"{e.target} {e.clause}")
        return 0
    if args.action == "deodhar":
        J = _ints(args.J)
        x, y = parse_affine(datum, args.x), parse_affine(datum, args.y)
        if args.report:
            for i, ok in deodhar_report(J, x, y).items():
                print(f"i={i}: {str(ok).lower()}")
        print(str(deodhar_leq(J, x, y)).lower())
        return 0
    a, b = parse_vertex(datum, args.i, args.lhs), parse_vertex(datum, args.i, args.rhs)
    if args.action == "oracle" or args.oracle:
        ok = sib_leq_bruteforce(datum, args.i, a, b)
    else:
        ok = tableau_leq(datum, args.i, a, b)
    print(str(ok).lower())
    return 0


def cmd_tab(args) -> int:
    datum = _datum(args)
    if args.action == "qls2qkn":
        v, w = _ints(args.v), _ints(args.w)
        p = make_path(datum, args.i or len(v), v, w)
        print(qkn_of_qls(p))
        return 0
    col = parse_element(datum, args.col, args.i)
    if args.action == "split":
        s = qkn_split(col)
        _emit({"I": list(s.I), "J": list(s.J), "K": list(s.K), "r": list(s.r), "l": list(s.l)})
        return 0
    p = qls_of_qkn(col)
    segs, mr = column_segments_and_maya(p.v)
    _, ml = column_segments_and_maya(p.w)
    _emit({"v": list(p.v), "w": list(p.w), "segments": [list(s) for s in segs.segments],
           "maya_v": [sorted(x) for x in mr.parts], "maya_w": [sorted(x) for x in ml.parts],
           "d": d_coefficient(p)})
    return 0


def cmd_crystal(args) -> int:
    datum = _datum(args)
    if args.action == "graph":
        print(export_graph("crystal", datum, args.i, args.format))
        return 0
    b = parse_element(datum, args.elem, args.i)
    out = cr.apply_ops(cr.parse_ops(args.ops), b)
    print(format_element(out))
    return 0


def cmd_export(args) -> int:
    datum = _datum(args)
    print(export_graph(args.kind, datum, args.i, args.format, args.window, args.mode))
    return 0


def cmd_verify(args) -> int:
    budget = load_budget(args.budget)
    changes = asdict(budget)
    if args.families:
        changes["ranks"] = _parse_families(args.families)
    if args.window is not None:
        changes["c_window"] = args.window
    if args.suites:
        changes["suites"] = _split_list(args.suites)
    if args.seed is not None:
        changes["seed"] = args.seed
    if args.sample is not None:
        changes["sample"] = args.sample
    budget = VerifyBudget(**changes)
    progress = None
    if args.format == "text" and args.verbose:
        progress = lambda r: print(r.summary(), file=sys.stderr, flush=True)  # noqa: E731
    report = run_verify(budget, progress)
    print(report.json() if args.format == "json" else report.text())
    return 0 if report.passed else 1


def _common(p: argparse.ArgumentParser, need_i: bool = True) -> None:
    p.add_argument("--type", required=True, choices=list("ABCDabcd"), help="root system family")
    p.add_argument("--rank", type=int, required=True, help="n (number of letters in type A)")
    p.add_argument("--i", type=int, required=need_i, default=None, help="shape (node of varpi_i)")
    p.add_argument("--seed", type=int, default=None, help="accepted for uniformity; unused")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sibruhat", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sib = sub.add_parser("sib", help="semi-infinite Bruhat order on tableaux")
    sib_sub = sib.add_subparsers(dest="action", required=True)
    for name in ("leq", "oracle"):
        p = sib_sub.add_parser(name, help="compare two vertices 'column@c'"
                               + (" by search" if name == "oracle" else ""))
        _common(p)
        p.add_argument("--lhs", required=True)
        p.add_argument("--rhs", required=True)
        p.add_argument("--oracle", action="store_true", help="search instead of the closed form")
    p = sib_sub.add_parser("covers", help="list the covers of a vertex")
    _common(p)
    p.add_argument("--vertex", required=True)
    p.add_argument("--mode", choices=("classified", "generic"), default="classified")
    p = sib_sub.add_parser("deodhar", help="compare x, y in (W^J)_af, '[window];[coords]'")
    _common(p, need_i=False)
    p.add_argument("--J", default="", help="comma-separated subset of I")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--report", action="store_true", help="print each maximal comparison")
    sib.set_defaults(func=cmd_sib)

    tab = sub.add_parser("tab", help="splitting and the column/path bijection")
    tab_sub = tab.add_subparsers(dest="action", required=True)
    for name in ("split", "qkn2qls"):
        p = tab_sub.add_parser(name)
        _common(p, need_i=False)
        p.add_argument("--col", required=True, help="letters like 2,3,0,-9,-3,!0,!0")
    p = tab_sub.add_parser("qls2qkn")
    _common(p, need_i=False)
    p.add_argument("--v", required=True)
    p.add_argument("--w", required=True)
    tab.set_defaults(func=cmd_tab)

    crys = sub.add_parser("crystal", help="crystal operators on columns")
    crys_sub = crys.add_subparsers(dest="action", required=True)
    p = crys_sub.add_parser("apply", help="apply operators left to right")
    _common(p, need_i=False)
    p.add_argument("--ops", required=True, help='e.g. "f1,f0,e2"')
    p.add_argument("--elem", required=True, help='column, optionally with "@c"')
    p = crys_sub.add_parser("graph", help="the crystal graph of all columns of one shape")
    _common(p)
    p.add_argument("--format", choices=("text", "json", "dot"), default="text")
    crys.set_defaults(func=cmd_crystal)

    exp = sub.add_parser("export", help="write a graph as json, dot or text")
    exp.add_argument("kind", choices=("qbg", "sib", "crystal"))
    _common(exp)
    exp.add_argument("--format", choices=("text", "json", "dot"), default="json")
    exp.add_argument("--window", type=int, default=2, help="largest c for sib")
    exp.add_argument("--mode", choices=("classified", "generic"), default="classified")
    exp.set_defaults(func=cmd_export)

    ver = sub.add_parser("verify", help="run the oracle sweeps")
    ver.add_argument("--budget", default=None, help=f"budget file (default: ${BUDGET_ENV})")
    ver.add_argument("--families", default=None, help="e.g. A4,B3,C3,D4")
    ver.add_argument("--window", type=int, default=None)
    ver.add_argument("--suites", default=None, help=",".join(SUITES))
    ver.add_argument("--seed", type=int, default=None)
    ver.add_argument("--sample", type=int, default=None)
    ver.add_argument("--format", choices=("text", "json"), default="text")
    ver.add_argument("-v", "--verbose", action="store_true", help="print sweeps as they finish")
    ver.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (WeylError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
