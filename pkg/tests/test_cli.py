import csv
import io
import json
from fractions import Fraction

import pytest
from click.testing import CliRunner

from pentagram import io as state_io
from pentagram.cli import main
from pentagram.dynamics import MapShape, XYState
from pentagram.sampling import random_xy, rng_for


@pytest.fixture
def runner():
    return CliRunner()


def _rows(text):
    return list(csv.reader(io.StringIO(text)))


def test_orbit_is_deterministic(runner):
    args = ["orbit", "--k", "3", "--n", "5", "--steps", "4", "--seed", "7"]
    a = runner.invoke(main, args)
    b = runner.invoke(main, args)
    assert a.exit_code == 0
    assert a.output == b.output
    assert runner.invoke(main, args[:-1] + ["8"]).output != a.output


def test_orbit_integrals_constant(runner):
    out = runner.invoke(main, ["orbit", "--k", "3", "--n", "5", "--steps", "10"])
    rows = _rows(out.output)
    header, body = rows[0], rows[1:]
    assert len(body) == 11
    cols = [j for j, h in enumerate(header) if h.startswith("I_")]
    assert cols
    for j in cols:
        assert len({r[j] for r in body}) == 1


def test_zero_steps_gives_one_row(runner, tmp_path):
    path = tmp_path / "orbit.csv"
    out = runner.invoke(main, ["orbit", "--k", "2", "--n", "4", "--steps", "0", "--out", str(path)])
    assert out.exit_code == 0 and out.output == ""
    rows = _rows(path.read_text())
    assert len(rows) == 2 and rows[1][0] == "0"


def test_exact_columns(runner):
    out = runner.invoke(main, ["orbit", "--k", "3", "--n", "5", "--steps", "1", "--exact-csv"])
    header, first = _rows(out.output)[:2]
    assert "x_1_exact" in header
    assert "/" in first[header.index("x_1_exact")] or first[header.index("x_1_exact")].lstrip("-").isdigit()


@pytest.mark.parametrize("mode", ["pq", "corner", "polygon", "leapfrog"])
def test_orbit_modes(runner, mode):
    out = runner.invoke(main, ["orbit", "--mode", mode, "--k", "3", "--n", "6", "--steps", "2"])
    assert out.exit_code == 0, out.output
    assert len(_rows(out.output)) == 4


def test_pq_level_is_kept(runner):
    out = runner.invoke(main, ["orbit", "--mode", "pq", "--k", "3", "--n", "5", "--steps", "3",
                               "--level", "-2/3", "--exact-csv"])
    assert out.exit_code == 0
    header, *body = _rows(out.output)
    for row in body:
        prod = Fraction(1)
        for name in [f"p_{i}_exact" for i in range(1, 6)] + [f"q_{i}_exact" for i in range(1, 6)]:
            prod *= Fraction(row[header.index(name)])
        assert prod == Fraction(-2, 3)
    assert not any(h.startswith("I_") for h in header)


@pytest.mark.parametrize("args", [
    ["orbit", "--k", "6", "--n", "5"],
    ["orbit", "--k", "1", "--n", "5"],
    ["orbit", "--steps", "-1"],
    ["orbit", "--mode", "nope"],
    ["rank", "--k", "4", "--n", "6"],
])
def test_bad_input_exit_2(runner, args):
    assert runner.invoke(main, args).exit_code == 2


def test_singular_input_state(runner, tmp_path):
    path = tmp_path / "s.json"
    state_io.dump(XYState.of(3, [1, 2, 3, 4, 5], [-1, 1, 1, 1, 1]), path)
    out = runner.invoke(main, ["orbit", "--in", str(path), "--steps", "1"])
    assert out.exit_code == 2


def test_malformed_state_file(runner, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"mode": "xy", "k": 3, "x": ["1"], "y": ["1"], "extra": 0}')
    out = runner.invoke(main, ["state", "convert", "--in", str(path)])
    assert out.exit_code == 2
    assert "extra" in out.output
    path.write_text('{"mode":\n  }')
    out = runner.invoke(main, ["state", "convert", "--in", str(path)])
    assert out.exit_code == 2 and "line 2" in out.output


def test_state_convert_roundtrip(runner, tmp_path):
    s = random_xy(MapShape(3, 5), rng_for(0, "cli-conv"))
    src, poly, back = tmp_path / "s.json", tmp_path / "p.json", tmp_path / "b.json"
    state_io.dump(s, src)
    assert runner.invoke(main, ["state", "convert", "--in", str(src), "--out", str(poly), "--mode", "polygon"]).exit_code == 0
    assert runner.invoke(main, ["state", "convert", "--in", str(poly), "--out", str(back), "--mode", "xy"]).exit_code == 0
    assert state_io.load(back) == s
    assert back.read_text() == src.read_text()


def test_integrals_and_rank(runner):
    out = runner.invoke(main, ["integrals", "--k", "3", "--n", "5", "--steps", "5"])
    assert out.exit_code == 0
    doc = json.loads(out.output)
    assert doc["conserved"] is True and doc["integrals"]["0,0"] == "1"
    out = runner.invoke(main, ["rank", "--k", "3", "--n", "6"])
    assert out.exit_code == 0
    doc = json.loads(out.output)
    assert doc["rank"] == doc["expected"] == 8 and len(doc["casimirs"]) == 4


def test_verify_single_criterion(runner):
    out = runner.invoke(main, ["verify", "--criteria", "2", "--k", "3", "--n", "5"])
    assert out.exit_code == 0
    assert "[PASS]" in out.output
