import json
import subprocess
import sys

import pytest

from wittgroup.cli import GroupSpec, ModuleSpec, main, parse_spec
from wittgroup.errors import ParseError


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_ring_specs():
    R = parse_spec("gr:2,2,2")
    assert R.size == 16 and R.residue_field.size == 4
    assert parse_spec("dual:5,1").size == 25
    assert parse_spec("zmod:9").size == 9


def test_parse_group_and_module_specs():
    g = parse_spec("sl2:gr:2,1,2")
    assert g == GroupSpec(2, "gr:2,1,2") and g.ring.size == 4
    assert parse_spec("m0^2") == ModuleSpec("m0", 1, 2)
    assert parse_spec("trivial:3") == ModuleSpec("trivial", 3, 1)
    assert parse_spec("V") == ModuleSpec("v")


@pytest.mark.parametrize("bad", ["sl2:gr:2,x,2", "ss2:gf:2,2", "gr:2,1", "m1"])
def test_parse_errors(bad):
    with pytest.raises(ParseError) as e:
        parse_spec(bad)
    assert e.value.position is not None


def test_group_order_json(capsys):
    code, out, _ = run(["group", "order", "--ring", "gr:2,2,2", "--compare"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["pass"]
    assert rep["schema"] == 1 and "timestamp" not in rep
    assert rep["records"][0]["computed"] == 3840
    assert set(rep["records"][0]) >= {"name", "paper_anchor", "expected", "computed", "pass"}


def test_timestamp_present_without_compare(capsys):
    _, out, _ = run(["group", "order", "--ring", "gf:2,2"], capsys)
    assert set(json.loads(out)["timestamp"]) == {"started", "wall_time_s"}


def test_cohomology_command(capsys):
    code, out, _ = run(["cohomology", "h1", "--group", "sl2:gf:5,1", "--module", "m0", "--format", "json"], capsys)
    assert code == 0
    assert json.loads(out)["result"]["dim_H"] == 1


def test_csv_and_text_formats(capsys):
    _, out, _ = run(["group", "order", "--ring", "gf:2,2", "--format", "csv"], capsys)
    assert out.splitlines()[0].startswith("name,")
    _, out, _ = run(["group", "order", "--ring", "gf:2,2", "--format", "text"], capsys)
    assert "PASS" in out or "pass" in out


def test_exit_codes(capsys):
    assert run(["cohomology", "h1", "--group", "sl2:gq:2", "--module", "m0"], capsys)[0] == 2
    assert run(["bogus"], capsys)[0] == 2
    assert run(["group", "order", "--ring", "gr:2,3,3", "--cap", "100"], capsys)[0] == 3


def test_parse_error_message_has_position(capsys):
    code, _, err = run(["cohomology", "h1", "--group", "sl2:gr:2,x,2", "--module", "m0"], capsys)
    assert code == 2 and "position" in err


def test_split_check_reports(capsys):
    code, out, _ = run(["extension", "split-check", "--ext", "gr:2,2,2->gf:2,2", "--no-brute-force"], capsys)
    assert code == 0 and json.loads(out)["result"]["verdict"] == "NonSplit"


def test_cocycle_file_round_trip(tmp_path, capsys):
    path = tmp_path / "x.txt"
    code, out, _ = run(["extension", "build", "--group", "sl2:gf:2,2", "--module", "m0",
                        "--dump-cocycle", str(path)], capsys)
    derived = json.loads(out)["result"]
    assert code == 0 and derived["order"] == 3840 and any(derived["class_coords"])
    code, out, _ = run(["extension", "build", "--group", "sl2:gf:2,2", "--module", "m0",
                        "--cocycle", str(path)], capsys)
    assert code == 0 and json.loads(out)["result"]["class_coords"] == derived["class_coords"]
    lines = path.read_text().splitlines()
    lines[1] = "1" + lines[1][1:] if not lines[1].startswith("1") else "0" + lines[1][1:]
    path.write_text("\n".join(lines) + "\n")
    code, _, _ = run(["extension", "build", "--group", "sl2:gf:2,2", "--module", "m0", "--cocycle", str(path)],
                     capsys)
    assert code == 2


def test_shared_flags_after_subcommand(tmp_path, capsys):
    out = tmp_path / "r.json"
    code, _, _ = run(["formula1", "--k", "gf:2,2", "--trials", "5", "--output", str(out), "--seed", "3"], capsys)
    rep = json.loads(out.read_text())
    assert code == 0 and rep["seed"] == 3 and "--output" not in rep["command"]


def test_byte_identical_reports(tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        subprocess.run([sys.executable, "-m", "wittgroup.cli", "formula1", "--k", "gf:3,1", "--trials", "10",
                        "--compare", "--output", str(p)], check=True)
    assert paths[0].read_bytes() == paths[1].read_bytes()
