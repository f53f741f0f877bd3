from __future__ import annotations

import json

import pytest

from treesync.cli import main
from treesync.errors import ConfigError, ParseError
from treesync.fixtures import fixture_path
from treesync.io import (
    format_graph,
    parse_beta,
    parse_classes,
    parse_field,
    parse_graph,
    parse_pack,
    parse_vector,
    read_graph,
)

FIXTURES = ["asymmetric7", "tree10", "binary7", "frucht", "path5", "path4", "path2", "star3"]


def fx(name: str) -> str:
    return str(fixture_path(name))


def run_json(capsys, *argv) -> tuple[int, dict]:
    code = main([*argv, "--json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


# --- GraphFile -------------------------------------------------------------------


def test_parse_with_comments_and_blank_lines():
    g = parse_graph("# a path\n\n3 2  # header\n1 2\n\n2 3\n")
    assert g.n == 3 and sorted(g.edges) == [(0, 1), (1, 2)]


@pytest.mark.parametrize(
    "text, line, words",
    [
        ("", None, "missing header"),
        ("3\n1 2\n", 1, "two integers"),
        ("3 2\n1 2\n", 2, "2 edges but 1"),
        ("3 1\n1 2\n2 3\n", 3, "1 edges but 2"),
        ("3 2\n1 2\n1 x\n", 3, "non-integer"),
        ("3 1\n1 4\n", 2, "outside"),
        ("3 1\n2 2\n", 2, "self-loop"),
        ("3 2\n1 2\n2 1\n", 3, "duplicate"),
        ("0 0\n", 1, "positive"),
    ],
)
def test_parse_errors(text, line, words):
    with pytest.raises(ParseError) as err:
        parse_graph(text)
    assert err.value.line == line
    assert words in str(err.value)
    if line is not None:
        assert str(err.value).startswith(f"line {line}: ")


@pytest.mark.parametrize("name", FIXTURES)
def test_round_trip(name):
    g = read_graph(fixture_path(name))
    h = parse_graph(format_graph(g, "copy"))
    assert h.n == g.n and sorted(h.edges) == sorted(g.edges)


def test_missing_file():
    with pytest.raises(ParseError):
        read_graph("/nonexistent/x.graph")


def test_flag_parsers():
    assert parse_classes("1 2|3 4 5 6", 7) == [[0, 1], [2, 3, 4, 5]]
    with pytest.raises(ConfigError):
        parse_classes("1 2|2 3", 4)
    with pytest.raises(ConfigError):
        parse_classes("1 9", 4)
    assert parse_beta(["1=1", "2=0.5,3=-2"]) == {1: 1.0, 2: 0.5, 3: -2.0}
    with pytest.raises(ConfigError):
        parse_beta(["1:1"])
    with pytest.raises(ConfigError):
        parse_beta(["1=nan"])
    assert parse_field("linear:alpha=0,beta1=1") == ("linear", {"alpha": 0.0, "beta1": 1.0})
    assert parse_field("example-nonlinear") == ("example-nonlinear", {})
    with pytest.raises(ConfigError):
        parse_field("linear:alpha")
    assert parse_pack("2:4,5;3:6,7", 7) == [(1, [3, 4]), (2, [5, 6])]
    with pytest.raises(ConfigError):
        parse_pack("2-4,5", 7)
    with pytest.raises(ConfigError):
        parse_pack("", 7)
    assert parse_vector("1 2,3", 3) == [1.0, 2.0, 3.0]
    with pytest.raises(ConfigError):
        parse_vector("1 2", 3)


# --- commands ---------------------------------------------------------------------


def test_analyze_asymmetric_tree(capsys):
    code, r = run_json(capsys, "analyze", fx("asymmetric7"))
    assert code == 0 and r["command"] == "analyze" and r["version"] == "0.1.0"
    assert r["is_tree"] and r["aut_order"] == 1 and r["is_asymmetric"]
    assert r["coarsest_balanced"]["discrete"]
    assert r["classification"]["kind"] == "Trivial"


def test_analyze_frucht(capsys):
    code, r = run_json(capsys, "analyze", fx("frucht"))
    assert code == 0 and not r["is_tree"] and r["aut_order"] == 1
    assert r["coarsest_balanced"]["num_classes"] == 1
    assert r["classification"]["kind"] == "Exotic"


def test_analyze_k2(capsys):
    code, r = run_json(capsys, "analyze", fx("path2"))
    assert code == 0 and r["aut_order"] == 2
    assert r["coarsest_balanced"]["classes"] == [[1, 2]]
    assert r["classification"]["kind"] == "FixedPoint"
    assert r["classification"]["realizer"] == "(1 2)"


def test_colorings_tree10(capsys):
    code, r = run_json(capsys, "colorings", fx("tree10"))
    assert code == 0
    kinds = {c["kind"] for c in r["colorings"]}
    assert "Exotic" not in kinds
    target = [c for c in r["colorings"] if c["classes"] == [[1, 2], [3, 4, 5, 6], [7, 8, 9, 10]]]
    assert len(target) == 1
    assert target[0]["kind"] == "FixedPoint" and target[0]["realizer"] == "(1 2)(3 5 4 6)(7 9 8 10)"


def test_colorings_text_output(capsys):
    assert main(["colorings", fx("path2")]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "2 balanced colorings"


def test_quotient_and_prune(capsys):
    code, r = run_json(capsys, "quotient", fx("binary7"), "--classes", "1|2 3|4 5 6 7")
    assert code == 0 and r["mult"] == [[0, 2, 0], [1, 0, 2], [0, 1, 0]]
    assert r["simplified_is_tree"] and r["tree_law"]
    code, r = run_json(capsys, "prune", fx("tree10"), "--classes", "1 2|3 4 5 6|7 8 9 10")
    assert code == 0 and r["survivors"] == [1, 2]
    assert r["layers"][0] == [7, 8, 9, 10]
    assert r["restricted_classes"][-1] == [[1, 2]]
    assert main(["quotient", fx("binary7"), "--classes", "1 2|3 4 5 6 7", "--json"]) == 2


def test_spectrum_binary(capsys):
    code, r = run_json(capsys, "spectrum", fx("binary7"), "--alpha", "0", "--beta", "1=1", "2=1", "3=2")
    am = r["alpha_multiplicity"]
    assert code == 0 and am["bound"] == 3 and am["observed"] == 3
    assert r["weyl"]["contained"] and r["symmetric_about_alpha"]


def test_spectrum_perfect_matching(capsys):
    code, r = run_json(capsys, "spectrum", fx("path4"), "--alpha", "0.5", "--beta", "1=1", "2=1")
    am = r["alpha_multiplicity"]
    assert code == 0 and am["perfect_matching"] and am["bound"] == 0 and am["observed"] == 0
    assert r["alpha_distance"] > 0.1


def test_spectrum_missing_beta(capsys):
    assert main(["spectrum", fx("binary7"), "--beta", "1=1"]) == 2
    assert "error" in capsys.readouterr().err


def test_simulate_pack_pass(capsys, tmp_path):
    fig = tmp_path / "decay.png"
    code, r = run_json(
        capsys, "simulate", fx("binary7"), "--field", "example-nonlinear", "--pack", "2:4,5;3:6,7",
        "--rate-bound", "-1", "--x0", "0.3 -0.2 0.4 1 -1 0.5 0.2", "--t-end", "2", "--figure", str(fig),
    )
    assert code == 0 and r["verdict"] == "PASS"
    assert r["decay"]["fitted_rate"] <= -2 + 1e-6
    assert fig.exists() and fig.stat().st_size > 0


def test_simulate_linear_polydiagonal(capsys):
    code, r = run_json(
        capsys, "simulate", fx("binary7"), "--field", "linear:alpha=-0.3,beta1=1,beta2=1,beta3=2",
        "--classes", "2 3|4 5 6 7", "--t-end", "2", "--dt", "0.01",
    )
    assert code == 0 and r["max_deviation"] < 1e-8


def test_simulate_contracting_leaf_star(capsys, tmp_path):
    csv = tmp_path / "traj.csv"
    code, r = run_json(
        capsys, "simulate", fx("star3"), "--field", "contracting-leaf:kappa=2", "--pack", "1:2,3,4",
        "--rate-bound", "-2", "--t-end", "1", "--out", str(csv),
    )
    assert code == 0 and r["verdict"] == "PASS"
    lines = csv.read_text().splitlines()
    assert lines[0].startswith("t,x0,") and len(lines) == r["samples"] + 1


def test_simulate_csv_to_stdout(capsys):
    assert main(["simulate", fx("path2"), "--field", "zero", "--x0", "1 2", "--t-end", "0.2", "--dt", "0.1", "--out", "-"]) == 0
    assert capsys.readouterr().out.splitlines() == ["t,x0,x1", "0.0,1.0,2.0", "0.1,1.0,2.0", "0.2,1.0,2.0"]


def test_simulate_input_errors(capsys):
    base = ["simulate", fx("binary7")]
    assert main(base + ["--field", "nope"]) == 2
    assert main(base + ["--field", "linear:gamma=1"]) == 2
    assert main(base + ["--field", "contracting-leaf:kappa=-1"]) == 2
    assert main(base + ["--field", "example-nonlinear", "--pack", "2:4,5"]) == 2
    assert main(base + ["--field", "example-nonlinear", "--pack", "2:4,6", "--rate-bound", "-1"]) == 2
    assert main(base + ["--field", "example-nonlinear", "--x0", "1 2"]) == 2
    assert main(["simulate", fx("tree10"), "--field", "example-nonlinear", "--pack", "3:7,8", "--rate-bound", "-1"]) == 2


def test_study_command(capsys, tmp_path):
    fig = tmp_path / "study.png"
    code, r = run_json(capsys, "study", "--count", "5", "--n-min", "8", "--n-max", "10", "--figure", str(fig))
    assert code == 0 and r["mode"] == "er-asymmetric" and len(r["trials"]) == 5
    assert fig.exists()
    code, r = run_json(capsys, "study", "--mode", "random-tree", "--count", "5", "--n-min", "6", "--n-max", "9")
    assert code == 0 and r["exotic_count"] == 0


def test_exit_codes(capsys, tmp_path):
    assert main([]) == 2
    assert main(["analyze"]) == 2
    assert main(["analyze", "/nonexistent.graph"]) == 2
    bad = tmp_path / "bad.graph"
    bad.write_text("3 1\n1 5\n")
    assert main(["analyze", str(bad)]) == 2
    assert "line 2" in capsys.readouterr().err
    assert main(["colorings", fx("frucht"), "--max-n", "8"]) == 3
    assert main(["study", "--count", "0"]) == 2


def test_json_is_deterministic(capsys, tmp_path):
    outs = []
    for _ in range(2):
        main(["simulate", fx("binary7"), "--field", "contracting-leaf", "--t-end", "0.5", "--json", "--seed", "7"])
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]
    rep = tmp_path / "r.json"
    main(["spectrum", fx("tree10"), "--beta", "1=1", "2=-1", "3=0.5", "--report", str(rep)])
    text = capsys.readouterr().out
    assert json.loads(rep.read_text())["command"] == "spectrum" and text


def test_spectrum_figure(capsys, tmp_path):
    fig = tmp_path / "spec.png"
    assert main(["spectrum", fx("binary7"), "--beta", "1=1", "2=1", "3=2", "--figure", str(fig)]) == 0
    assert fig.exists() and fig.stat().st_size > 0
