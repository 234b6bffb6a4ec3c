"""Command-line front end: subcommands, report formats, exit codes."""

import json

from dowker import Relation, betti_gf2
from dowker import cli
from _util import FAN_TOPLEXES, fan_relation

FAN_TEXT = "".join(" ".join(t) + "\n" for t in FAN_TOPLEXES)


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def gen_file(tmp_path, name, *args):
    out = tmp_path / name
    assert cli.main(["gen", *args, "--output", str(out)]) == 0
    return str(out)


# ----------------------------------------------------------------------
# gen

def test_gen_torus_file(tmp_path):
    path = gen_file(tmp_path, "t.toplex", "torus", "--m", "4", "--n", "4")
    lines = open(path).read().splitlines()
    assert len(lines) == 32


def test_gen_simplex_boundary(tmp_path):
    path = gen_file(tmp_path, "b.toplex", "simplex-boundary", "--n", "2")
    lines = open(path).read().splitlines()
    assert len(lines) == 4
    assert all(len(l.split()) == 3 for l in lines)


def test_gen_uv_sphere_to_stdout(capsys):
    assert cli.main(["gen", "sphere-uv", "--slices", "24", "--stacks", "21"]) == 0
    out = capsys.readouterr().out
    assert len(out.splitlines()) == 960


def test_gen_bad_params():
    assert cli.main(["gen", "torus", "--m", "1", "--n", "4"]) == 1


# ----------------------------------------------------------------------
# reduce

def test_reduce_sphere_with_betti_check(tmp_path, capsys):
    src = gen_file(tmp_path, "sphere.toplex", "sphere-cube")
    out = tmp_path / "reduced.rel"
    log = tmp_path / "steps.log"
    code = cli.main(["reduce", "--input", src, "--format", "toplex",
                     "--check-betti", "--output", str(out), "--log", str(log)])
    assert code == 0
    report = capsys.readouterr().out
    assert "input: 8 rows 12 cols" in report
    assert "betti-before: 1 0 1" in report
    assert "betti-after: 1 0 1" in report
    assert "betti: preserved" in report
    reduced = Relation.from_text(out.read_text())
    assert reduced.is_column_irreducible()
    assert betti_gf2(reduced.toplexes(), 2) == (1, 0, 1)
    steps = log.read_text().splitlines()
    assert len(steps) == 8 - reduced.nrows
    assert all(l.startswith("STEP ") and " merge " in l for l in steps)


def test_reduce_single_toplex(tmp_path, capsys):
    src = write(tmp_path, "one.toplex", "a b c\n")
    out = tmp_path / "r.rel"
    assert cli.main(["reduce", "--input", src, "--format", "toplex",
                     "--output", str(out)]) == 0
    reduced = Relation.from_text(out.read_text())
    assert reduced.shape == (1, 1)


def test_reduce_simplex_boundary_unchanged(tmp_path, capsys):
    src = gen_file(tmp_path, "b.toplex", "simplex-boundary", "--n", "2")
    assert cli.main(["reduce", "--input", src, "--format", "toplex"]) == 0
    report = capsys.readouterr().out
    assert "steps: 0" in report
    assert "output: 4 rows 4 cols" in report


def test_reduce_json_report(tmp_path, capsys):
    src = gen_file(tmp_path, "s.toplex", "sphere-cube")
    assert cli.main(["reduce", "--input", src, "--format", "toplex",
                     "--check-betti", "--json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["rows_before"] == 8 and report["cols_before"] == 12
    assert report["betti_preserved"] is True
    assert report["tests"] <= report["budget"]


def test_reduce_accepts_rel_format(tmp_path, capsys):
    src = write(tmp_path, "fan.rel", fan_relation().to_text())
    assert cli.main(["reduce", "--input", src, "--format", "rel",
                     "--check-betti"]) == 0
    assert "betti: preserved" in capsys.readouterr().out


def test_reduce_accepts_off_format(tmp_path, capsys):
    off = ("OFF\n4 4 6\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n"
           "3 0 1 2\n3 0 1 3\n3 0 2 3\n3 1 2 3\n")
    src = write(tmp_path, "tetra.off", off)
    code = cli.main(["reduce", "--input", src, "--format", "off", "--check-betti"])
    assert code == 0
    report = capsys.readouterr().out
    assert "input: 4 rows 4 cols" in report
    assert "steps: 0" in report
    assert "betti: preserved" in report


def test_reduce_normalizes_reducible_input(tmp_path, capsys):
    # a column contained in another is dropped before reducing
    src = write(tmp_path, "red.rel",
                Relation(["a", "b"], ["p", "q"], [[0, 1], [1]]).to_text())
    assert cli.main(["reduce", "--input", src, "--format", "rel"]) == 0
    assert "input: 2 rows 1 cols" in capsys.readouterr().out


def test_reduce_outputs_are_byte_identical(tmp_path, capsys):
    src = gen_file(tmp_path, "t.toplex", "torus", "--m", "4", "--n", "4")
    outs, logs, reports = [], [], []
    for tag in ("a", "b"):
        out, log = tmp_path / f"{tag}.rel", tmp_path / f"{tag}.log"
        assert cli.main(["reduce", "--input", src, "--format", "toplex",
                         "--output", str(out), "--log", str(log)]) == 0
        reports.append(capsys.readouterr().out)
        outs.append(out.read_bytes())
        logs.append(log.read_bytes())
    assert outs[0] == outs[1]
    assert logs[0] == logs[1]
    assert reports[0].splitlines()[:5] == reports[1].splitlines()[:5]  # all but time


def test_reduce_betti_mismatch_exits_2(tmp_path, capsys, monkeypatch):
    calls = []

    def lying_oracle(tops, max_dim, size_cap=None):
        calls.append(1)
        return (1, 0, 0) if len(calls) == 1 else (2, 0, 0)

    monkeypatch.setattr(cli, "betti_gf2", lying_oracle)
    src = write(tmp_path, "one.toplex", "a b\n")
    code = cli.main(["reduce", "--input", src, "--format", "toplex", "--check-betti"])
    assert code == 2
    assert "betti: CHANGED" in capsys.readouterr().out


# ----------------------------------------------------------------------
# betti

def test_betti_torus(tmp_path, capsys):
    src = gen_file(tmp_path, "t.toplex", "torus", "--m", "4", "--n", "4")
    assert cli.main(["betti", "--input", src]) == 0
    assert capsys.readouterr().out.strip() == "1 2 1"


def test_betti_point_default_dim(tmp_path, capsys):
    src = write(tmp_path, "p.toplex", "a\n")
    assert cli.main(["betti", "--input", src]) == 0
    assert capsys.readouterr().out.strip() == "1 0 0"


def test_betti_max_dim_override(tmp_path, capsys):
    src = write(tmp_path, "p.toplex", "a\n")
    assert cli.main(["betti", "--input", src, "--max-dim", "0"]) == 0
    assert capsys.readouterr().out.strip() == "1"


def test_betti_preserved_for_fan(tmp_path, capsys):
    src = write(tmp_path, "fan.toplex", FAN_TEXT)
    out = tmp_path / "fan.rel"
    assert cli.main(["reduce", "--input", src, "--format", "toplex",
                     "--output", str(out)]) == 0
    capsys.readouterr()
    assert cli.main(["betti", "--input", src]) == 0
    before = capsys.readouterr().out.strip()
    assert cli.main(["betti", "--input", str(out), "--format", "rel"]) == 0
    after = capsys.readouterr().out.strip()
    assert before == after == "1 2 0"


# ----------------------------------------------------------------------
# check

def test_check_cone(tmp_path, capsys):
    src = write(tmp_path, "cone.toplex", "a b c d\n")
    assert cli.main(["check", "--input", src]) == 0
    out = capsys.readouterr().out
    assert "column-irreducible: yes" in out
    assert "strong-collapsible: yes (core 1x1)" in out


def test_check_simplex_boundary(tmp_path, capsys):
    src = gen_file(tmp_path, "b.toplex", "simplex-boundary", "--n", "2")
    assert cli.main(["check", "--input", src]) == 0
    assert "strong-collapsible: no (core 4x4)" in capsys.readouterr().out


def test_check_fan_star_submatrix(tmp_path, capsys):
    r = fan_relation()
    sub = r.restrict_to_columns(set(r.row(2)) | set(r.row(3))).relation
    src = write(tmp_path, "star.rel", sub.to_text())
    assert cli.main(["check", "--input", src, "--format", "rel"]) == 0
    assert "strong-collapsible: yes" in capsys.readouterr().out


def test_check_reducible_relation(tmp_path, capsys):
    src = write(tmp_path, "red.rel",
                Relation(["a", "b"], ["p", "q"], [[0, 1], [1]]).to_text())
    assert cli.main(["check", "--input", src, "--format", "rel"]) == 0
    assert "column-irreducible: no" in capsys.readouterr().out


# ----------------------------------------------------------------------
# exit codes

def test_missing_file_exits_1(capsys):
    assert cli.main(["betti", "--input", "/nonexistent/x.toplex"]) == 1


def test_parse_error_exits_1(tmp_path, capsys):
    src = write(tmp_path, "bad.toplex", "a b\n\n")
    assert cli.main(["betti", "--input", src]) == 1
    assert "error:" in capsys.readouterr().err


def test_bad_rel_exits_1(tmp_path, capsys):
    src = write(tmp_path, "bad.rel", "not a relation\n")
    assert cli.main(["betti", "--input", src, "--format", "rel"]) == 1


def test_size_cap_exits_3(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("DOWKER_SIZE_CAP", "5")
    src = write(tmp_path, "big.toplex", "a b c d e f g\n")
    assert cli.main(["betti", "--input", src]) == 3
    assert "error:" in capsys.readouterr().err
