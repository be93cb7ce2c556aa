"""
End-to-end tests of the reconf command line.
Each test calls main.main(argv) in-process and inspects exit code and output.
"""

import csv
import json

import pytest

import main
from services.bench import CSV_COLUMNS

# Test data
TEST_DATA = {
    "k4": "p edge 4 6\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n",
    "p4": "c path\np edge 4 3\ne 1 2\ne 2 3\ne 3 4\n",
    "p3": "p edge 3 2\ne 1 2\ne 2 3\n",
    "k2": "p edge 2 1\ne 1 2\n",
    "c4": "p edge 4 4\ne 1 2\ne 2 3\ne 3 4\ne 4 1\n",
    "malformed": "p edge 3 2\ne 1 2\ne 2 9\n",
    "alpha_p3": "1 2 1\n",
    "beta_p3": "2 1 2\n",
}


def run(argv, capsys):
    code = main.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def files(write_file):
    return {name: write_file(name, text) for name, text in TEST_DATA.items()}


def test_mad_complete_graph(files, capsys):
    code, out, _ = run(["mad", files["k4"]], capsys)
    assert code == 0
    assert out.splitlines() == ["mad = 3", "subset = 1 2 3 4"]


def test_mad_path(files, capsys):
    code, out, _ = run(["mad", files["p4"]], capsys)
    assert code == 0
    assert out.splitlines()[0] == "mad = 3/2"


def test_mad_json(files, capsys):
    code, out, _ = run(["mad", files["k4"], "--format", "json"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["mad"] == "3"
    assert payload["density"] == "3/2"
    assert (payload["n"], payload["m"]) == (4, 6)


def test_mad_malformed_file(files, capsys):
    code, out, err = run(["mad", files["malformed"]], capsys)
    assert code == 1
    assert out == ""
    assert "line 3" in err


def test_missing_file_is_input_error(tmp_path, capsys):
    code, _, err = run(["mad", str(tmp_path / "absent.col")], capsys)
    assert code == 1
    assert err.startswith("error:")


def test_usage_error_exits_one(capsys):
    with pytest.raises(SystemExit) as info:
        main.main(["recolor"])
    assert info.value.code == 1


def test_peel_path(files, capsys):
    code, out, _ = run(["peel", files["p3"], "--k", "3"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "d = 2, epsilon = 2/3, layers = 2"
    assert lines[1].startswith("1 3 |")
    assert lines[2].startswith("2 |")
    assert "size_bound_met=yes" in lines[1]


def test_recolor_then_verify(files, tmp_path, capsys):
    sequence = str(tmp_path / "p3.seq")
    code, out, _ = run(
        ["recolor", files["p3"], files["alpha_p3"], files["beta_p3"], "--k", "3", "--output", sequence],
        capsys,
    )
    assert code == 0
    lines = (tmp_path / "p3.seq").read_text().splitlines()
    assert lines[0] == "s 5"
    assert len(lines) == 7
    assert lines[-1].startswith("c length=5 bound=")

    code, out, _ = run(["verify", files["p3"], files["alpha_p3"], files["beta_p3"], sequence, "--k", "3"], capsys)
    assert code == 0
    assert out.strip() == "ok"


def test_recolor_to_stdout_json(files, capsys):
    code, out, _ = run(
        ["recolor", files["p3"], files["alpha_p3"], files["beta_p3"], "--k", "3", "--format", "json"], capsys
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["length"] == 5
    assert payload["length"] <= payload["bound"]
    assert (payload["d"], payload["epsilon"], payload["k"]) == (2, "2/3", 3)
    assert payload["steps"][0] == {"vertex": 1, "colour": 3}


def test_recolor_identity(files, capsys):
    code, out, _ = run(["recolor", files["p3"], files["alpha_p3"], files["alpha_p3"], "--k", "3"], capsys)
    assert code == 0
    assert out.splitlines()[0] == "s 0"


def test_recolor_infeasible(files, write_file, capsys):
    alpha = write_file("k4_alpha", "1 2 3 1\n")
    code, _, err = run(["recolor", files["k4"], alpha, alpha, "--k", "3"], capsys)
    assert code == 2
    assert "infeasible" in err


def test_recolor_overrides(files, capsys):
    code, out, _ = run(
        ["recolor", files["p3"], files["alpha_p3"], files["beta_p3"], "--k", "4", "--d", "3", "--format", "json"],
        capsys,
    )
    assert code == 0
    assert json.loads(out)["epsilon"] == "5/3"

    code, _, _ = run(["recolor", files["p3"], files["alpha_p3"], files["beta_p3"], "--k", "3", "--d", "3"], capsys)
    assert code == 2

    code, _, err = run(
        ["recolor", files["p3"], files["alpha_p3"], files["beta_p3"], "--k", "3", "--eps", "half"], capsys
    )
    assert code == 1
    assert "rational" in err


def test_recolor_improper_alpha(files, write_file, capsys):
    improper = write_file("improper", "1 1 2\n")
    code, _, err = run(["recolor", files["p3"], improper, files["beta_p3"], "--k", "3"], capsys)
    assert code == 1
    assert "not a proper colouring" in err


def test_verify_reports_failure(files, write_file, capsys):
    bad = write_file("bad.seq", "s 1\n1 2\n")
    code, out, _ = run(["verify", files["p3"], files["alpha_p3"], files["beta_p3"], bad, "--k", "3"], capsys)
    assert code == 3
    assert out.startswith("failure at step 0: creates a monochromatic edge")

    empty = write_file("empty.seq", "s 0\n")
    code, out, _ = run(["verify", files["p3"], files["alpha_p3"], files["beta_p3"], empty, "--k", "3"], capsys)
    assert code == 3
    assert out.startswith("failure: final colouring differs")


def test_oracle_distance(files, write_file, capsys):
    code, out, _ = run(["oracle", "distance", files["p3"], files["alpha_p3"], files["beta_p3"], "--k", "3"], capsys)
    assert code == 0
    assert out.strip() == "distance = 4"

    a, b = write_file("k2a", "1 2\n"), write_file("k2b", "2 1\n")
    code, out, _ = run(["oracle", "distance", files["k2"], a, b, "--k", "2"], capsys)
    assert code == 0
    assert out.strip() == "distance = unreachable"


def test_oracle_summary_with_csv(files, tmp_path, capsys):
    target = tmp_path / "oracle.csv"
    code, out, _ = run(["oracle", "summary", files["c4"], "--k", "2", "--csv", str(target)], capsys)
    assert code == 0
    assert "components = 2" in out
    assert "frozen = 2" in out
    run(["oracle", "summary", files["k2"], "--k", "3", "--csv", str(target)], capsys)
    rows = list(csv.reader(target.open()))
    assert rows[0] == main.ORACLE_CSV_COLUMNS
    assert rows[1] == ["4", "2", "2", "2", "0", ""]
    assert rows[2] == ["2", "3", "6", "1", "3", ""]


def test_oracle_check(files, capsys):
    code, out, _ = run(["oracle", "check", files["k2"], "--k", "3"], capsys)
    assert code == 0
    assert "diameter = 3" in out
    assert "holds = yes" in out


def test_oracle_size_guard(write_file, capsys):
    big = write_file("big", "p edge 12 0\n")
    code, _, err = run(["oracle", "summary", big, "--k", "5"], capsys)
    assert code == 1
    assert "oracle limit" in err


def test_bench_empty_range_writes_header_only(capsys):
    code, out, _ = run(["bench", "forest_union", "--k", "3"], capsys)
    assert code == 0
    assert out.splitlines() == [",".join(CSV_COLUMNS)]


def test_bench_forest_union_csv(tmp_path, capsys):
    target = tmp_path / "bench.csv"
    code, _, _ = run(
        ["bench", "forest_union", "--n", "8", "16", "--k", "3", "--seeds", "2", "--seed", "5", "--csv", str(target)],
        capsys,
    )
    assert code == 0
    rows = list(csv.reader(target.open()))
    assert rows[0] == CSV_COLUMNS
    records = [dict(zip(CSV_COLUMNS, row)) for row in rows[1:-1]]
    assert [r["n"] for r in records] == ["8", "8", "16", "16"]
    for record in records:
        assert int(record["length"]) <= int(record["bound"])
        assert record["bounds_met"] == "True"
        assert record["oracle_distance"] == ""
    assert rows[-1][0] == "#slope"


def test_bench_cycle_with_oracle(capsys):
    code, out, _ = run(["bench", "cycle", "--n", "4", "6", "--k", "4", "--oracle"], capsys)
    assert code == 0
    rows = list(csv.reader(out.splitlines()))
    records = [dict(zip(CSV_COLUMNS, row)) for row in rows[1:-1]]
    assert len(records) == 2
    for record in records:
        assert record["mad"] == "2" and record["d"] == "3" and record["epsilon"] == "1"
        assert int(record["oracle_distance"]) <= int(record["length"])


def test_bench_rejects_descending_sizes(capsys):
    code, _, err = run(["bench", "grid", "--n", "16", "9", "--k", "5"], capsys)
    assert code == 1
    assert "ascending" in err


def test_generate_grid(capsys):
    code, out, _ = run(["generate", "grid", "2", "3"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "c grid 2 3"
    assert lines[1] == "p edge 6 7"


def test_generate_then_mad(tmp_path, capsys):
    target = tmp_path / "forest.col"
    code, _, _ = run(["generate", "forest_union", "30", "2", "--seed", "3", "--output", str(target)], capsys)
    assert code == 0
    code, out, _ = run(["mad", str(target), "--format", "json"], capsys)
    assert code == 0
    assert json.loads(out)["n"] == 30


def test_colour_then_recolor(files, tmp_path, capsys):
    alpha, beta = str(tmp_path / "alpha.txt"), str(tmp_path / "beta.txt")
    code, out, _ = run(["colour", files["c4"], "--k", "4", "--seed", "1", "-o", alpha], capsys)
    assert code == 0
    colours = [int(c) for c in out.split()]
    assert len(colours) == 4
    assert all(colours[i] != colours[(i + 1) % 4] for i in range(4))
    run(["colour", files["c4"], "--k", "4", "--seed", "2", "-o", beta], capsys)

    sequence = str(tmp_path / "c4.seq")
    code, _, _ = run(["recolor", files["c4"], alpha, beta, "--k", "4", "-o", sequence], capsys)
    assert code == 0
    code, out, _ = run(["verify", files["c4"], alpha, beta, sequence, "--k", "4"], capsys)
    assert (code, out.strip()) == (0, "ok")


def test_colour_needs_more_colours_than_degeneracy(files, capsys):
    code, _, err = run(["colour", files["k4"], "--k", "3"], capsys)
    assert code == 1
    assert "degeneracy" in err


def test_mad_reads_utf8_comments(tmp_path, capsys):
    graph = tmp_path / "accents.col"
    graph.write_bytes("c graphe à trois sommets\np edge 3 2\ne 1 2\ne 2 3\n".encode("utf-8"))
    code, out, _ = run(["mad", str(graph)], capsys)
    assert code == 0
    assert out.splitlines()[0] == "mad = 4/3"
