"""Command line front end.

Four commands: ``build`` dumps the lattice elements, ``analyze`` runs every
criterion on one configuration, ``scan`` sweeps a graph family and compares
criteria against brute-force oracles, ``export-dot`` writes the Hasse
diagram.  Identical inputs produce byte-identical output.

Exit codes: 0 success, 2 usage or parse failure, 3 size cap exceeded,
4 criterion/oracle disagreement outside conjecture scans.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Optional

from .crosslattice import CrossSectionLattice
from .diagram import (
    CYCLE_KIND,
    PATH_KINDS,
    CoxeterGraph,
    build_custom_graph,
    build_cycle_diagram,
    build_path_diagram,
    format_nodeset,
    parse_nodeset,
)
from .errors import (
    CrossLatError,
    PreconditionError,
    SizeLimitError,
    UnsupportedGraphError,
)
from .flags import MAX_DEGREE, is_flag_symmetric
from .theorem_suite import (
    SCAN_FUNCTIONS,
    charpoly_formula,
    combinatorially_smooth_typeA,
    construct_m_chain,
    distributivity_criterion,
    stanley_factorization,
    supersolvability_criterion,
)

# Scans whose disagreements are proved-theorem violations, hence defects.
THEOREM_SCANS = frozenset({"theorems", "supersolvable", "circuit", "distributive-count"})

# Notes marking rows outside a statement's hypothesis; such rows are
# reported but never counted as disagreements.
HYPOTHESIS_FLAGS = frozenset({"no-adjacent-free-pair", "single-free-node"})

# Scans that leave out the degenerate full-j0 configuration (one per n).
SCANS_SKIPPING_DEGENERATE = frozenset(
    {"charpoly", "chains", "distributive-count", "inner-product", "circuit"})

SCAN_MIN_N = {"circuit": 3}

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CAP = 3
EXIT_BREACH = 4


def parse_graph_literal(text: str) -> CoxeterGraph:
    """Build a graph from `path A 5`, `cycle 6`, or `custom 4: 1-2,2-3`."""
    words = text.strip().split(None, 2)
    if not words:
        raise CrossLatError("empty graph spec")
    head = words[0].lower()
    if head == "path":
        if len(words) != 3:
            raise CrossLatError(f"path spec needs a series and a size: {text!r}")
        series = words[1].upper()
        if f"path_{series}" not in PATH_KINDS:
            raise CrossLatError(f"unknown path series {words[1]!r}")
        return build_path_diagram(series, _parse_int(words[2]))
    if head == "cycle":
        if len(words) != 2:
            raise CrossLatError(f"cycle spec needs a size: {text!r}")
        return build_cycle_diagram(_parse_int(words[1]))
    if head == "custom":
        rest = text.strip()[len("custom"):].strip()
        if ":" not in rest:
            raise CrossLatError(f"custom spec needs `custom N: a-b,...`: {text!r}")
        size_part, edge_part = rest.split(":", 1)
        n = _parse_int(size_part.strip())
        edges = []
        edge_part = edge_part.strip()
        if edge_part:
            for item in edge_part.split(","):
                item = item.strip()
                if "-" not in item:
                    raise CrossLatError(f"bad edge {item!r} in {text!r}")
                a, b = item.split("-", 1)
                edges.append((_parse_int(a.strip()), _parse_int(b.strip())))
        return build_custom_graph(n, edges)
    raise CrossLatError(f"unknown graph kind {words[0]!r}")


def parse_family_literal(text: str) -> str:
    """Family name for scans: `path A` -> path_A, `cycle` -> cycle."""
    words = text.strip().split()
    if len(words) == 2 and words[0].lower() == "path":
        kind = f"path_{words[1].upper()}"
        if kind not in PATH_KINDS:
            raise CrossLatError(f"unknown path series {words[1]!r}")
        return kind
    if len(words) == 1 and words[0].lower() == "cycle":
        return CYCLE_KIND
    raise CrossLatError(f"unknown graph family {text!r}")


def graph_literal(g: CoxeterGraph) -> str:
    if g.kind in PATH_KINDS:
        return f"path {g.kind[-1]} {g.n}"
    if g.kind == CYCLE_KIND:
        return f"cycle {g.n}"
    edge_text = ",".join(f"{a}-{b}" for a, b in sorted(g.edges))
    return f"custom {g.n}: {edge_text}"


def _parse_int(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise CrossLatError(f"expected an integer, got {text!r}") from None


def _read_config_file(path: str) -> dict[str, str]:
    allowed = {"graph", "family", "j0", "n-max", "format", "out", "jobs"}
    values: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise CrossLatError(f"{path}:{lineno}: expected key=value")
            key, value = line.split("=", 1)
            key = key.strip()
            if key not in allowed:
                raise CrossLatError(f"{path}:{lineno}: unknown key {key!r}")
            values[key] = value.strip()
    return values


def _apply_config_defaults(args: argparse.Namespace) -> None:
    if not getattr(args, "config", None):
        return
    conf = _read_config_file(args.config)
    mapping = {
        "graph": "graph", "family": "family", "j0": "j0", "n-max": "n_max",
        "format": "format", "out": "out", "jobs": "jobs",
    }
    for key, attr in mapping.items():
        if key in conf and getattr(args, attr, None) is None:
            if attr in ("n_max", "jobs"):
                setattr(args, attr, _parse_int(conf[key]))
            else:
                setattr(args, attr, conf[key])


class _Output:
    """Routes data to stdout or a file, and the summary to the other one."""

    def __init__(self, out_path: Optional[str]):
        self.out_path = out_path

    def write_data(self, text: str) -> None:
        if self.out_path:
            with open(self.out_path, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)

    def write_summary(self, line: str) -> None:
        stream = sys.stdout if self.out_path else sys.stderr
        stream.write(line + "\n")


def _build_lattice(args: argparse.Namespace) -> CrossSectionLattice:
    if not args.graph:
        raise CrossLatError("--graph is required")
    g = parse_graph_literal(args.graph)
    j0 = parse_nodeset(args.j0) if args.j0 is not None else 0
    return CrossSectionLattice(g, j0)


def cmd_build(args: argparse.Namespace) -> int:
    lat = _build_lattice(args)
    fmt = args.format or "text"
    rows = [
        {"rank": lat.rank(m), "mask": f"0x{m:x}", "members": format_nodeset(m)}
        for m in lat.elements
    ]
    if fmt == "text":
        body = "".join(f"{r['rank']}\t{r['mask']}\t{r['members']}\n" for r in rows)
    elif fmt == "json":
        body = json.dumps(rows, indent=2) + "\n"
    elif fmt == "csv":
        body = _csv_text(["rank", "mask", "members"], [
            [str(r["rank"]), r["mask"], r["members"]] for r in rows])
    else:
        raise CrossLatError(f"build does not support format {fmt!r}")
    out = _Output(args.out)
    out.write_data(body)
    out.write_summary(f"{len(rows)} elements")
    return EXIT_OK


def _analyze_report(lat: CrossSectionLattice) -> tuple[dict, bool]:
    """Full per-configuration report and whether a theorem was breached."""
    g = lat.graph
    poset = lat.to_poset()
    degenerate = lat.is_degenerate()
    breach = False

    report: dict = {
        "graph": graph_literal(g),
        "n": g.n,
        "j0": format_nodeset(lat.j0),
        "j0_mask": f"0x{lat.j0:x}",
        "size": len(lat),
        "degenerate": degenerate,
        "atoms": [format_nodeset(m) for m in lat.atoms()],
        "join_irreducibles": [
            format_nodeset(lat.elements[i]) for i in poset.join_irreducibles()
        ],
    }

    try:
        crit_distributive = distributivity_criterion(lat)
    except PreconditionError:
        crit_distributive = None
    engine_distributive = poset.is_distributive_lattice()
    # the free-connected test is a theorem on trees only; elsewhere the
    # criterion value is reported without an agreement claim
    is_tree = len(g.edges) == g.n - 1
    agree = None
    if crit_distributive is not None and is_tree:
        agree = crit_distributive == engine_distributive
    report["distributive"] = {
        "criterion": crit_distributive,
        "engine": engine_distributive,
        "agree": agree,
    }
    if agree is False:
        breach = True

    direct = poset.characteristic_polynomial()
    formula = charpoly_formula(lat)
    report["charpoly"] = {
        "direct": str(direct),
        "formula": str(formula),
        "agree": direct == formula,
        "note": "degenerate j0: the product form presumes a nonempty free set"
                if degenerate else "",
    }

    supersolvable = None
    try:
        crit_ss = supersolvability_criterion(lat)
    except UnsupportedGraphError:
        crit_ss = None
    if crit_ss is not None:
        brute_ss, witness = poset.is_supersolvable_bruteforce()
        if crit_ss != brute_ss:
            breach = True
        entry = {
            "criterion": crit_ss,
            "bruteforce": brute_ss,
            "agree": crit_ss == brute_ss,
            "witness": None if witness is None else [
                format_nodeset(lat.elements[i]) for i in witness],
            "m_chain": None,
            "stanley": None,
        }
        if crit_ss:
            chain = construct_m_chain(lat)
            entry["m_chain"] = [format_nodeset(m) for m in chain]
            stanley = stanley_factorization(lat, chain)
            entry["stanley"] = str(stanley)
            if not degenerate and not (stanley == direct == formula):
                breach = True
        supersolvable = entry
    report["supersolvable"] = supersolvable

    partition_type = None
    if engine_distributive:
        fact = poset.chain_product_factorization()
        if fact is not None:
            partition_type = list(fact)
    report["partition_type"] = partition_type

    try:
        smooth = combinatorially_smooth_typeA(lat)
    except UnsupportedGraphError:
        smooth = None
    if smooth and not engine_distributive:
        breach = True
    report["combinatorially_smooth"] = smooth

    report["flag_symmetric"] = (
        is_flag_symmetric(poset) if poset.rank_of_top() <= MAX_DEGREE else None)
    return report, breach


def _flatten(prefix: str, value, lines: list[str]) -> None:
    if isinstance(value, dict):
        for key in value:
            _flatten(f"{prefix}.{key}" if prefix else key, value[key], lines)
    elif isinstance(value, list):
        lines.append(f"{prefix}: {', '.join(str(v) for v in value) if value else '(none)'}")
    else:
        lines.append(f"{prefix}: {_scalar_text(value)}")


def _scalar_text(value) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return str(value).lower()
    return str(value)


def cmd_analyze(args: argparse.Namespace) -> int:
    lat = _build_lattice(args)
    report, breach = _analyze_report(lat)
    fmt = args.format or "text"
    if fmt == "json":
        body = json.dumps(report, indent=2) + "\n"
    elif fmt == "text":
        lines: list[str] = []
        _flatten("", report, lines)
        body = "".join(line + "\n" for line in lines)
    else:
        raise CrossLatError(f"analyze does not support format {fmt!r}")
    out = _Output(args.out)
    out.write_data(body)
    out.write_summary("breach detected" if breach else "ok")
    return EXIT_BREACH if breach else EXIT_OK


def _scan_chunk(scan_name: str, kind: str, n: int) -> list:
    return SCAN_FUNCTIONS[scan_name](kind, n, n_min=n)


def cmd_scan(args: argparse.Namespace) -> int:
    if not args.family:
        raise CrossLatError("--family is required")
    kind = parse_family_literal(args.family)
    if args.n_max is None:
        raise CrossLatError("--n-max is required")
    n_max = args.n_max
    n_min = SCAN_MIN_N.get(args.scan_name, 1)
    jobs = args.jobs or 1

    if jobs > 1 and n_max >= n_min:
        chunks = list(range(n_min, n_max + 1))
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_scan_chunk, [args.scan_name] * len(chunks),
                                  [kind] * len(chunks), chunks))
        rows = [r for part in parts for r in part]
    else:
        rows = SCAN_FUNCTIONS[args.scan_name](kind, n_max, n_min=n_min)

    dicts = [r.to_row() for r in rows]
    fmt = args.format or "text"
    fields = ["graph", "n", "j0_mask", "criterion", "value", "oracle", "agree", "note"]
    if fmt == "json":
        body = json.dumps(dicts, indent=2) + "\n"
    elif fmt == "csv":
        body = _csv_text(fields, [
            [_scalar_text(d[f]) for f in fields] for d in dicts])
    elif fmt == "text":
        body = "".join(
            "\t".join(_scalar_text(d[f]) for f in fields) + "\n" for d in dicts)
    else:
        raise CrossLatError(f"scan does not support format {fmt!r}")

    agree = sum(1 for d in dicts if d["agree"])
    flagged = sum(1 for d in dicts if d["note"] in HYPOTHESIS_FLAGS)
    disagree = sum(
        1 for d in dicts if not d["agree"] and d["note"] not in HYPOTHESIS_FLAGS)
    skipped = (n_max - n_min + 1) if args.scan_name in SCANS_SKIPPING_DEGENERATE else 0
    out = _Output(args.out)
    out.write_data(body)
    out.write_summary(
        f"rows={len(dicts)} agree={agree} disagree={disagree} "
        f"flagged={flagged} degenerate-skipped={skipped}")
    if disagree and args.scan_name in THEOREM_SCANS:
        return EXIT_BREACH
    return EXIT_OK


def cmd_export_dot(args: argparse.Namespace) -> int:
    if args.format not in (None, "dot"):
        raise CrossLatError(f"export-dot only writes dot, got {args.format!r}")
    lat = _build_lattice(args)
    lines = ["digraph crosslattice {", "  rankdir=BT;"]
    for i, mask in enumerate(lat.elements):
        lines.append(f'  e{i} [label="{format_nodeset(mask)}"];')
    edges = []
    for i, mask in enumerate(lat.elements):
        for upper in lat.covers(mask):
            edges.append((i, lat.index(upper)))
    edges.sort()
    for a, b in edges:
        lines.append(f"  e{a} -> e{b};")
    lines.append("}")
    out = _Output(args.out)
    out.write_data("".join(line + "\n" for line in lines))
    out.write_summary(f"{len(lat)} nodes, {len(edges)} cover edges")
    return EXIT_OK


def _csv_text(fields: list[str], rows: list[list[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(fields)
    writer.writerows(rows)
    return buf.getvalue()


def _add_common(parser: argparse.ArgumentParser, *, family: bool) -> None:
    if family:
        parser.add_argument("--family", help='graph family, e.g. "path A" or "cycle"')
        parser.add_argument("--n-max", dest="n_max", type=int, help="largest node count")
        parser.add_argument("--jobs", type=int, help="worker processes")
    else:
        parser.add_argument("--graph", help='graph spec, e.g. "path A 5"')
        parser.add_argument("--j0", help='marked node set, e.g. "{1,2,5}"')
    parser.add_argument("--format", choices=["json", "csv", "dot", "text"])
    parser.add_argument("--out", help="write output to a file instead of stdout")
    parser.add_argument("--config", help="key=value defaults file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crosslat",
        description="Cross section lattices over Coxeter graph nodes.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build", help="list the lattice elements")
    _add_common(p_build, family=False)
    p_build.set_defaults(func=cmd_build)

    p_analyze = sub.add_parser("analyze", help="run every criterion on one configuration")
    _add_common(p_analyze, family=False)
    p_analyze.set_defaults(func=cmd_analyze)

    p_scan = sub.add_parser("scan", help="sweep a family against brute-force oracles")
    p_scan.add_argument("scan_name", choices=sorted(SCAN_FUNCTIONS))
    _add_common(p_scan, family=True)
    p_scan.set_defaults(func=cmd_scan)

    p_dot = sub.add_parser("export-dot", help="write the Hasse diagram as DOT")
    _add_common(p_dot, family=False)
    p_dot.set_defaults(func=cmd_export_dot)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _apply_config_defaults(args)
        return args.func(args)
    except SizeLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except CrossLatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
