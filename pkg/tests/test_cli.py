"""Command line behavior: formats, exit codes, config handling."""

import json

import pytest

from crosslat import cli
from crosslat.cli import (
    EXIT_BREACH,
    EXIT_CAP,
    EXIT_OK,
    EXIT_USAGE,
    graph_literal,
    main,
    parse_family_literal,
    parse_graph_literal,
)
from crosslat.errors import CrossLatError
from crosslat.theorem_suite import CriterionReport


# -- literal parsing ----------------------------------------------------------


def test_parse_graph_literal_forms():
    g = parse_graph_literal("path A 5")
    assert g.kind == "path_A" and g.n == 5
    assert parse_graph_literal("cycle 6").kind == "cycle"
    g = parse_graph_literal("custom 4: 1-2,2-3")
    assert g.n == 4 and g.edges == frozenset({(1, 2), (2, 3)})


def test_parse_graph_literal_errors():
    for bad in ["", "path A", "path Z 3", "cycle", "custom 3 1-2",
                "custom 3: 1+2", "tree 5", "path A five"]:
        with pytest.raises(CrossLatError):
            parse_graph_literal(bad)


def test_parse_family_literal():
    assert parse_family_literal("path A") == "path_A"
    assert parse_family_literal("path b") == "path_B"
    assert parse_family_literal("cycle") == "cycle"
    with pytest.raises(CrossLatError):
        parse_family_literal("hexagon")


def test_graph_literal_round_trip():
    for text in ["path A 5", "cycle 6", "custom 4: 1-2,2-3"]:
        assert graph_literal(parse_graph_literal(text)) == text


# -- build --------------------------------------------------------------------


def test_build_text_output(capsys):
    assert main(["build", "--graph", "path A 3", "--j0", "{2}"]) == EXIT_OK
    cap = capsys.readouterr()
    lines = cap.out.splitlines()
    assert len(lines) == 7
    assert lines[0] == "0\t0x0\t{}"
    assert lines[-1] == "3\t0x7\t{1,2,3}"
    assert cap.err.strip() == "7 elements"


def test_build_json_output(capsys):
    assert main(["build", "--graph", "path A 2", "--format", "json"]) == EXIT_OK
    rows = json.loads(capsys.readouterr().out)
    assert len(rows) == 4
    assert rows[0] == {"rank": 0, "mask": "0x0", "members": "{}"}


def test_build_csv_output(capsys):
    assert main(["build", "--graph", "path A 2", "--format", "csv"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "rank,mask,members"
    assert lines[1] == "0,0x0,{}"


def test_build_cycle_matches_path_cut(capsys):
    # cutting the cycle between two adjacent free vertices gives a path
    assert main(["build", "--graph", "cycle 5", "--j0", "{3}"]) == EXIT_OK
    assert capsys.readouterr().err.strip() == "28 elements"
    assert main(["build", "--graph", "path A 5", "--j0", "{3}"]) == EXIT_OK
    assert capsys.readouterr().err.strip() == "28 elements"


def test_build_out_file(tmp_path, capsys):
    target = tmp_path / "rows.txt"
    code = main(["build", "--graph", "path A 3", "--j0", "{2}",
                 "--out", str(target)])
    assert code == EXIT_OK
    cap = capsys.readouterr()
    # with --out, the summary moves to stdout and the data leaves it
    assert cap.out.strip() == "7 elements"
    assert cap.err == ""
    assert target.read_text().splitlines()[0] == "0\t0x0\t{}"


def test_build_requires_graph(capsys):
    assert main(["build"]) == EXIT_USAGE
    assert "error:" in capsys.readouterr().err


def test_build_rejects_dot_format(capsys):
    assert main(["build", "--graph", "path A 2", "--format", "dot"]) == EXIT_USAGE


def test_build_single_size_cap(capsys):
    assert main(["build", "--graph", "path A 25"]) == EXIT_CAP


def test_build_rejects_out_of_range_node(capsys):
    assert main(["build", "--graph", "path A 3", "--j0", "{7}"]) == EXIT_USAGE


# -- analyze ------------------------------------------------------------------

ANALYZE_PATH3_LINES = [
    "graph: path A 3",
    "n: 3",
    "j0: {2}",
    "j0_mask: 0x2",
    "size: 7",
    "degenerate: false",
    "atoms: {1}, {3}",
    "join_irreducibles: {1}, {3}, {1,2}, {2,3}",
    "distributive.criterion: false",
    "distributive.engine: false",
    "distributive.agree: true",
    "charpoly.direct: x^3 - 2x^2 + x",
    "charpoly.formula: x^3 - 2x^2 + x",
    "charpoly.agree: true",
    "charpoly.note: ",
    "supersolvable.criterion: true",
    "supersolvable.bruteforce: true",
    "supersolvable.agree: true",
    "supersolvable.witness: {}, {1}, {1,3}, {1,2,3}",
    "supersolvable.m_chain: {}, {1}, {1,3}, {1,2,3}",
    "supersolvable.stanley: x^3 - 2x^2 + x",
    "partition_type: null",
    "combinatorially_smooth: false",
    "flag_symmetric: false",
]


def test_analyze_text_golden(capsys):
    assert main(["analyze", "--graph", "path A 3", "--j0", "{2}"]) == EXIT_OK
    cap = capsys.readouterr()
    assert cap.out == "".join(line + "\n" for line in ANALYZE_PATH3_LINES)
    assert cap.err.strip() == "ok"


def test_analyze_json_keys_and_values(capsys):
    assert main(["analyze", "--graph", "path A 4", "--j0", "{1,2}",
                 "--format", "json"]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert list(report) == [
        "graph", "n", "j0", "j0_mask", "size", "degenerate", "atoms",
        "join_irreducibles", "distributive", "charpoly", "supersolvable",
        "partition_type", "combinatorially_smooth", "flag_symmetric",
    ]
    assert report["distributive"] == {
        "criterion": True, "engine": True, "agree": True}
    assert report["supersolvable"]["agree"] is True
    assert report["partition_type"] == [3, 1]
    assert report["combinatorially_smooth"] is True
    assert report["flag_symmetric"] is True


def test_analyze_degenerate(capsys):
    assert main(["analyze", "--graph", "path A 2", "--j0", "{1,2}",
                 "--format", "json"]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["degenerate"] is True
    assert report["size"] == 1
    assert report["charpoly"]["direct"] == "1"
    # the product form x^n is honest about not covering the empty lattice
    assert report["charpoly"]["agree"] is False
    assert "degenerate" in report["charpoly"]["note"]
    assert report["supersolvable"]["m_chain"] == ["{}"]
    assert report["supersolvable"]["stanley"] == "1"


def test_analyze_cycle_skips_path_only_criteria(capsys):
    assert main(["analyze", "--graph", "cycle 4", "--j0", "{1}",
                 "--format", "json"]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["supersolvable"] is None
    assert report["combinatorially_smooth"] is None
    # connected free set yet not distributive: the tree criterion does not
    # transfer to the circuit, so no agreement is claimed there
    assert report["distributive"] == {
        "criterion": True, "engine": False, "agree": None}


# -- scan ---------------------------------------------------------------------


def test_scan_csv_golden(capsys):
    code = main(["scan", "distributive-count", "--family", "path A",
                 "--n-max", "3", "--format", "csv"])
    assert code == EXIT_OK
    cap = capsys.readouterr()
    lines = cap.out.splitlines()
    assert lines[0] == "graph,n,j0_mask,criterion,value,oracle,agree,note"
    assert lines[1] == ("path_A,1,0x0,distributive_class_count,1,1,true,"
                        "partitions=1;nonproduct_classes=0")
    assert lines[3] == ("path_A,3,0x0,distributive_class_count,3,3,true,"
                        "partitions=3;nonproduct_classes=1")
    assert cap.err.strip() == (
        "rows=3 agree=3 disagree=0 flagged=0 degenerate-skipped=3")


def test_scan_requires_family_and_nmax(capsys):
    assert main(["scan", "charpoly", "--n-max", "3"]) == EXIT_USAGE
    assert main(["scan", "charpoly", "--family", "path A"]) == EXIT_USAGE


def test_scan_cap(capsys):
    assert main(["scan", "charpoly", "--family", "path A",
                 "--n-max", "13"]) == EXIT_CAP


def test_scan_parallel_output_is_identical(capsys):
    args = ["scan", "charpoly", "--family", "path A", "--n-max", "5",
            "--format", "csv"]
    assert main(args) == EXIT_OK
    seq = capsys.readouterr()
    assert main(args + ["--jobs", "3"]) == EXIT_OK
    par = capsys.readouterr()
    assert par.out == seq.out
    assert par.err == seq.err


def test_scan_circuit_starts_at_three(capsys):
    assert main(["scan", "circuit", "--family", "cycle",
                 "--n-max", "3", "--format", "csv"]) == EXIT_OK
    cap = capsys.readouterr()
    rows = cap.out.splitlines()[1:]
    assert rows and all(r.split(",")[1] == "3" for r in rows)
    # the three lone-free-vertex configurations disagree but carry the flag
    assert "flagged=3" in cap.err and "disagree=0" in cap.err


def fake_scan(rows):
    def run(kind, n_max, n_min=1):
        return rows
    return run


def test_scan_breach_exit_code(monkeypatch, capsys):
    bad = CriterionReport("path_A", 2, 0, "x", "a", "b", False)
    monkeypatch.setitem(cli.SCAN_FUNCTIONS, "theorems", fake_scan([bad]))
    code = main(["scan", "theorems", "--family", "path A", "--n-max", "2"])
    assert code == EXIT_BREACH
    assert "disagree=1" in capsys.readouterr().err


def test_scan_conjecture_disagreement_still_exits_zero(monkeypatch, capsys):
    bad = CriterionReport("path_A", 2, 0, "x", "a", "b", False)
    monkeypatch.setitem(cli.SCAN_FUNCTIONS, "charpoly", fake_scan([bad]))
    code = main(["scan", "charpoly", "--family", "path A", "--n-max", "2"])
    assert code == EXIT_OK
    assert "disagree=1" in capsys.readouterr().err


def test_scan_hypothesis_flag_shields_breach(monkeypatch, capsys):
    flagged = CriterionReport("cycle", 4, 7, "x", "a", "b", False,
                              note="no-adjacent-free-pair")
    monkeypatch.setitem(cli.SCAN_FUNCTIONS, "circuit", fake_scan([flagged]))
    code = main(["scan", "circuit", "--family", "cycle", "--n-max", "4"])
    assert code == EXIT_OK
    assert "flagged=1" in capsys.readouterr().err


def test_scan_informational_note_does_not_shield(monkeypatch, capsys):
    bad = CriterionReport("path_A", 3, 0, "x", "a", "b", False,
                          note="partitions=3;nonproduct_classes=1")
    monkeypatch.setitem(cli.SCAN_FUNCTIONS, "distributive-count", fake_scan([bad]))
    code = main(["scan", "distributive-count", "--family", "path A",
                 "--n-max", "3"])
    assert code == EXIT_BREACH


# -- export-dot ---------------------------------------------------------------

DOT_PATH3 = """\
digraph crosslattice {
  rankdir=BT;
  e0 [label="{}"];
  e1 [label="{1}"];
  e2 [label="{3}"];
  e3 [label="{1,2}"];
  e4 [label="{1,3}"];
  e5 [label="{2,3}"];
  e6 [label="{1,2,3}"];
  e0 -> e1;
  e0 -> e2;
  e1 -> e3;
  e1 -> e4;
  e2 -> e4;
  e2 -> e5;
  e3 -> e6;
  e4 -> e6;
  e5 -> e6;
}
"""


def test_export_dot_golden(capsys):
    assert main(["export-dot", "--graph", "path A 3", "--j0", "{2}"]) == EXIT_OK
    cap = capsys.readouterr()
    assert cap.out == DOT_PATH3
    assert cap.err.strip() == "7 nodes, 9 cover edges"


def test_export_dot_larger_graph(capsys):
    assert main(["export-dot", "--graph", "path A 4", "--j0", "{2,3}"]) == EXIT_OK
    assert capsys.readouterr().err.strip() == "11 nodes, 16 cover edges"


def test_export_dot_rejects_other_formats(capsys):
    assert main(["export-dot", "--graph", "path A 3",
                 "--format", "json"]) == EXIT_USAGE


# -- config files -------------------------------------------------------------


def test_config_file_defaults(tmp_path, capsys):
    conf = tmp_path / "run.conf"
    conf.write_text("# sample\ngraph = path A 3\nj0 = {2}\n")
    assert main(["build", "--config", str(conf)]) == EXIT_OK
    assert capsys.readouterr().err.strip() == "7 elements"


def test_config_flag_wins_over_file(tmp_path, capsys):
    conf = tmp_path / "run.conf"
    conf.write_text("graph = path A 3\nj0 = {2}\n")
    assert main(["build", "--config", str(conf), "--j0", "{}"]) == EXIT_OK
    assert capsys.readouterr().err.strip() == "8 elements"


def test_config_rejects_unknown_key(tmp_path, capsys):
    conf = tmp_path / "run.conf"
    conf.write_text("verbosity = 3\n")
    assert main(["build", "--config", str(conf)]) == EXIT_USAGE
    assert "unknown key" in capsys.readouterr().err


def test_config_rejects_bare_line(tmp_path, capsys):
    conf = tmp_path / "run.conf"
    conf.write_text("just words\n")
    assert main(["build", "--config", str(conf)]) == EXIT_USAGE


def test_config_scan_settings(tmp_path, capsys):
    conf = tmp_path / "scan.conf"
    conf.write_text("family = path A\nn-max = 3\nformat = csv\njobs = 2\n")
    assert main(["scan", "charpoly", "--config", str(conf)]) == EXIT_OK
    cap = capsys.readouterr()
    assert cap.out.splitlines()[0] == (
        "graph,n,j0_mask,criterion,value,oracle,agree,note")
    assert "rows=11" in cap.err
