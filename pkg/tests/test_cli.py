from __future__ import annotations

import json
import subprocess
import sys

import pytest

from mhc_ore import cli
from mhc_ore.io import InputError, build, fixture_names, load_fixture, validate



def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, doc, name="in.json"):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


def test_bundled_fixtures_validate():
    names = fixture_names()
    for required in ["example-3-6-2-c2", "example-3-6-2-s3", "example-3-6-2-moufang12",
                     "star-trivial-shift", "iso-s3-conjugation", "mutation-pack"]:
        assert required in names
    for n in names:
        validate(load_fixture(n))


@pytest.mark.parametrize("name,code", [
    ("star-trivial-shift", 0), ("iso-s3-conjugation", 0), ("iso-c2-shift", 0), ("mutation-pack", 0),
    ("star-lambda-i", 1), ("star-shifted-negative", 1), ("non-ip-loop", 1),
])
def test_demo_exit_codes(name, code, capsys):
    assert run(["demo", name], capsys)[0] == code


def test_lambda_i_text_witness(capsys):
    code, out, _ = run(["demo", "star-lambda-i"], capsys)
    assert code == 1
    assert "Thm3.9(3): 0-1i != 0+1i at (1,e) [r]; r* != r at (1,e)" in out


def test_json_report_shape_and_determinism(tmp_path, capsys):
    path = write(tmp_path, load_fixture("star-shifted-negative"))
    code, a, _ = run(["verify", path, "--format", "json"], capsys)
    _, b, _ = run(["verify", path, "--format", "json"], capsys)
    assert code == 1 and a == b
    rep = json.loads(a)
    assert rep["schema_version"] == cli.SCHEMA_VERSION
    assert rep["config"] == {"suites": ["star"], "radius": 2, "maxdeg": 2}
    assert "timing" not in rep
    fails = [l for s in rep["suites"] for l in s["laws"] if l["status"] == "fail"]
    assert fails and all("witness" in l for l in fails)
    w = rep["witnesses"][0]
    assert w["law"] == "Thm3.9(1)" and w["suite"] == "star" and w["note"] == "(*tau)^2(e(0,e)) = e(4,e)"


def test_timing_is_opt_in(tmp_path, capsys):
    path = write(tmp_path, load_fixture("star-lambda-i"))
    _, out, _ = run(["verify", path, "--format", "json", "--timing"], capsys)
    assert "star" in json.loads(out)["timing"]


def test_overrides(tmp_path, capsys):
    path = write(tmp_path, load_fixture("example-3-6-2-c2"))
    code, out, _ = run(["verify", path, "--suites", "loop,mhc", "--radius", "1", "--maxdeg", "0",
                        "--format", "json"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["config"] == {"suites": ["loop", "mhc"], "radius": 1, "maxdeg": 0}


def test_skipped_suites_do_not_fail(tmp_path, capsys):
    path = write(tmp_path, load_fixture("example-3-6-2-c2"))
    code, out, _ = run(["verify", path, "--suites", "iso,star", "--radius", "1"], capsys)
    assert code == 0 and "iso: skipped" in out and "star: skipped" in out


def test_functional_character_refuses_extension(tmp_path, capsys):
    doc = load_fixture("mutation-pack")["pack"][0]["document"]
    doc["suites"] = ["extension"]
    code, out, _ = run(["verify", write(tmp_path, doc), "--radius", "1"], capsys)
    assert code == 1 and "extension: refused" in out


def test_missing_character_is_an_input_error(tmp_path, capsys):
    doc = load_fixture("example-3-6-2-c2")
    del doc["ore"]["character"]
    code, out, err = run(["verify", write(tmp_path, doc)], capsys)
    assert code == 2 and out == ""
    assert err.strip() == "input error at /ore: 'character' is a required property"


@pytest.mark.parametrize("mutate,path", [
    (lambda d: d["ore"]["r"].update(power=[2.5]), "/ore/r/power/0"),
    (lambda d: d["ore"]["character"]["point"].update(elem="zz"), "/ore/character/point"),
    (lambda d: d["ore"]["r"].update(power=["2x"]), "/ore/r/power/0"),
    (lambda d: d["ore"]["r"].update(power=["2", "3"]), "/ore/r/power"),
    (lambda d: d.update(grading_rank=-1), "/grading_rank"),
    (lambda d: d.update(suites=["everything"]), "/suites/0"),
    (lambda d: d["loop"].update(builtin="Z7"), "/loop/builtin"),
    (lambda d: d.update(loop={"elements": ["e", "a"], "table": [["e", "a"], ["a", "a"]]}), "/loop"),
])
def test_schema_and_semantic_errors(mutate, path, tmp_path, capsys):
    doc = load_fixture("example-3-6-2-c2")
    mutate(doc)
    code, _, err = run(["verify", write(tmp_path, doc)], capsys)
    assert code == 2
    assert err.startswith(f"input error at {path}:")


def test_other_config_errors(tmp_path, capsys):
    path = write(tmp_path, load_fixture("example-3-6-2-c2"))
    assert run(["verify", path, "--suites", "bogus"], capsys)[0] == 2
    assert run(["verify", path, "--radius", "-1"], capsys)[0] == 2
    assert run(["verify", str(tmp_path / "missing.json")], capsys)[0] == 2
    assert run(["demo", "nope"], capsys)[0] == 2
    assert run(["frobnicate"], capsys)[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["verify", str(bad)], capsys)[0] == 2


def test_build_rejects_pack():
    with pytest.raises(InputError):
        build(load_fixture("mutation-pack"))


def test_mutation_pack_members(capsys):
    code, out, _ = run(["demo", "mutation-pack", "--format", "json"], capsys)
    rep = json.loads(out)
    assert code == 0
    assert [e["name"][0] for e in rep["pack"]] == list("abcde")
    for e in rep["pack"]:
        assert e["status"] == "pass" and e["failed"] == e["expected"] and e["witnesses_refail"]


def test_list_and_module_entry(capsys):
    code, out, _ = run(["list"], capsys)
    assert code == 0 and "mutation-pack" in out.split()
    proc = subprocess.run([sys.executable, "-m", "mhc_ore", "demo", "star-lambda-i"], capture_output=True, text=True)
    assert proc.returncode == 1 and "Thm3.9(3)" in proc.stdout
