import io
import json
from pathlib import Path

import jsonschema
import pytest

from hypertoric import fixtures
from hypertoric.arrangement import load, serialize
from hypertoric.cli import load_schema, run

ROOT = Path(__file__).resolve().parent.parent
FIRST_MAP = "u1->u1+u2,u2->u2+u3+x,u3->u3,u4->u2+u4,x->x"


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def fig2a_file(tmp_path):
    path = tmp_path / "fig2a.json"
    path.write_text(serialize(fixtures.fig2a()))
    return path


def test_validate_file(fig2a_file):
    code, out, _ = cli("validate", fig2a_file)
    assert code == 0 and out == "simple: yes, smooth: yes\n"


def test_validate_non_simple_exits_2(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"dimension": 2, "hyperplanes": [{"normal": [1,0], "offset": "0"}, '
                    '{"normal": [0,1], "offset": "0"}, {"normal": [1,1], "offset": "0"}]}')
    code, out, _ = cli("validate", path)
    assert code == 2 and out.startswith("simple: no, smooth: no")
    code, _, err = cli("regions", path)
    assert code == 2 and "not simple" in err


def test_missing_file_exits_1():
    code, _, err = cli("ring", "missing.json", "--which", "td")
    assert code == 1 and "file not found" in err


def test_parse_error_exits_1(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{")
    code, _, err = cli("validate", path)
    assert code == 1 and "invalid JSON" in err


@pytest.mark.parametrize("argv", [["bogus"], ["validate"], ["ring", "@fig2a"], ["regions", "@fig2a", "--nope"], []])
def test_usage_errors_exit_1(argv):
    code, _, err = cli(*argv)
    assert code == 1 and "usage" in err


def test_unknown_fixture_exits_1():
    code, _, err = cli("validate", "@nope")
    assert code == 1 and "unknown fixture" in err


def test_resource_caps_exit_3():
    assert cli("regions", "@fig2a", "--cap", "2")[0] == 3
    assert cli("--pair-cap", "1", "hilbert", "@fig2a", "--which", "tds1")[0] == 3
    # the cap does not leak into later runs
    assert cli("hilbert", "@fig2a", "--which", "tds1")[0] == 0


def test_ring_tds1_q(fig2a_file):
    code, out, _ = cli("ring", fig2a_file, "--which", "tds1", "--field", "q")
    assert code == 0
    assert out.splitlines()[1:] == ["u2*u3", "u1*u4*x - u1*u2*u4  # u1*(x-u2)*u4", "u1*u3*u4"]


def test_distinguish_message():
    code, out, err = cli("distinguish", "@fig2a", "@fig2c", "--which", "tds1")
    assert code == 0 and out == "DISTINGUISHED: annihilator profile {1} at class u2 present only in A\n"
    assert "surrogate" in err


def test_iso_message_and_note():
    code, out, err = cli("iso", "@fig2a", "@fig2c", "--which", "z2os", "--map", FIRST_MAP)
    assert code == 0 and out == "ISOMORPHISM VERIFIED\n"
    assert "H_b" in err
    code, out, _ = cli("iso", "@fig2a", "@fig2c", "--which", "z2os", "--map", "u1->u1")
    assert code == 0 and out.startswith("NOT VERIFIED")


def test_flip_writes_fig2b(fig2a_file, tmp_path):
    out_path = tmp_path / "fig2b.json"
    code, _, _ = cli("flip", fig2a_file, "--index", 2, "-o", out_path)
    assert code == 0 and load(out_path) == fixtures.fig2b()
    back = tmp_path / "back.json"
    cli("flip", out_path, "--index", 2, "-o", back)
    assert back.read_text() == fig2a_file.read_text()


def test_translate_roundtrip(fig2a_file, tmp_path):
    there, back = tmp_path / "t.json", tmp_path / "b.json"
    assert cli("translate", fig2a_file, "--by", "5,-7/3", "-o", there)[0] == 0
    assert cli("translate", there, "--by", "-5,7/3", "-o", back)[0] == 0
    assert back.read_text() == fig2a_file.read_text()
    assert cli("translate", fig2a_file, "--by", "1,x")[0] == 1


def test_scan_ann_rejects_q():
    code, _, err = cli("scan-ann", "@fig2a", "--which", "tds1", "--field", "q")
    assert code == 1 and "F2" in err


def test_hilbert_output():
    code, out, _ = cli("hilbert", "@fig2a", "--which", "os2")
    assert code == 0
    assert "series: 1 + 4t + 5t^2" in out and "total: 10" in out


def test_core_output():
    code, out, _ = cli("core", "@fig2c")
    assert code == 0
    assert out.splitlines()[:2] == [
        "bounded regions: 2, fixed components: 2, core components: 2",
        "injective: yes, bijective: yes, smooth: yes",
    ]


JSON_RUNS = [
    ["validate", "@fig2a"],
    ["circuits", "@fig2a5", "--split"],
    ["regions", "@fig2a", "--vertices"],
    ["core", "@fig2a"],
    ["fixed", "@fig2c"],
    ["ring", "@fig2a", "--which", "z2os"],
    ["ring", "@fig2a", "--which", "tds1", "--format", "json"],
    ["hilbert", "@fig2a", "--which", "tds1"],
    ["ann", "@fig2a", "--which", "tds1", "--element", "u2"],
    ["scan-ann", "@fig2a", "--which", "tds1"],
    ["iso", "@fig2a", "@fig2c", "--which", "z2os", "--map", FIRST_MAP],
    ["distinguish", "@fig2a", "@fig2c", "--which", "tds1"],
    ["flip", "@fig2a", "--index", "2"],
    ["translate", "@fig2a", "--by", "1,2"],
]


@pytest.mark.parametrize("argv", JSON_RUNS, ids=lambda a: a[0])
def test_json_reports_validate(argv):
    schema = load_schema()
    for args in (["--json", *argv], [*argv, "--json"]):
        code, out, _ = cli(*args)
        assert code == 0
        report = json.loads(out)
        jsonschema.validate(report, schema)
        assert report["verb"] == argv[0]


def test_json_carries_human_figures():
    _, human, _ = cli("regions", "@fig2a")
    _, js, _ = cli("--json", "regions", "@fig2a")
    data = json.loads(js)["result"]
    assert f"feasible: {data['feasible']}, bounded: {data['bounded']}" in human
    _, human, _ = cli("hilbert", "@fig2a", "--which", "tds1")
    data = json.loads(cli("--json", "hilbert", "@fig2a", "--which", "tds1")[1])["result"]
    assert data["series"] in human and " ".join(map(str, data["dims"])) in human


def test_schema_copies_identical():
    assert json.loads((ROOT / "schemas" / "report.json").read_text()) == load_schema()


def test_repeated_runs_identical():
    outs = {cli("--json", "core", "@fig2a5")[1] for _ in range(3)}
    assert len(outs) == 1


@pytest.mark.parametrize("name", sorted(fixtures.FIXTURES))
def test_data_files_match_fixtures(name):
    assert load(ROOT / "data" / f"{name}.json") == fixtures.get(name)


def test_flip_data_file_gives_fig2b(tmp_path):
    out_path = tmp_path / "fig2b.json"
    assert cli("flip", ROOT / "data" / "fig2a.json", "--index", 2, "-o", out_path)[0] == 0
    assert load(out_path) == load(ROOT / "data" / "fig2b.json")
