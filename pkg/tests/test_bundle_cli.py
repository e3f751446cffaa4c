import json
import subprocess
import sys
from pathlib import Path

import pytest

from moorecat.bundle import (BundleError, dumps_bundle, fixture_bundle, fixture_text, load_fixture,
                             loads_bundle, path_from_json, path_to_json, pmorphism_from_json,
                             pmorphism_to_json)
from moorecat.cli import main
from moorecat.fixtures import SHIPPED, walking_weq, walking_weq_pmorphisms
from moorecat.report import Report, loads_report
from moorecat.space import format_rational

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# -- bundles ---------------------------------------------------------------------------

@pytest.mark.parametrize("name", SHIPPED)
def test_shipped_file_matches_builder(name):
    assert fixture_text(name) == dumps_bundle(fixture_bundle(name))


@pytest.mark.parametrize("name", SHIPPED)
def test_round_trip(name):
    text = fixture_text(name)
    assert dumps_bundle(loads_bundle(text)) == text


def test_unknown_fixture():
    with pytest.raises(BundleError):
        load_fixture("no-such-thing")


@pytest.mark.parametrize("mutate", [
    lambda d: d.pop("format"),
    lambda d: d["categories"]["walking-weq"].pop("homs"),
    lambda d: d["categories"]["walking-weq"]["pmorphisms"]["alpha"]["path"]["steps"].append(["D", "0.5"]),
    lambda d: d["categories"]["walking-weq"]["pmorphisms"]["alpha"].update(length="7/8"),
    lambda d: d["categories"]["walking-weq"]["pmorphisms"]["alpha"]["path"]["steps"].append(["T", "zz", "+", "1"]),
])
def test_malformed_bundles(mutate):
    d = json.loads(fixture_text("walking-weq"))
    mutate(d)
    with pytest.raises(BundleError):
        loads_bundle(json.dumps(d))


def test_rationals_reduced_on_output():
    d = json.loads(fixture_text("walking-weq"))
    d["categories"]["walking-weq"]["pmorphisms"]["alpha"]["path"]["steps"][0][3] = "2/4"
    assert '"1/2"' in dumps_bundle(loads_bundle(json.dumps(d)))


def test_pmorphism_round_trip():
    C = walking_weq()
    for m in walking_weq_pmorphisms(C).values():
        assert pmorphism_from_json(C, pmorphism_to_json(m)) == m
        assert path_from_json(path_to_json(m.path), C.edge) == m.path


# -- CLI ------------------------------------------------------------------------------------

@pytest.mark.parametrize("name", SHIPPED)
def test_validate_shipped(capsys, name):
    code, out, _ = run(capsys, "validate", "--bundle", name)
    assert code == 0 and ": ok" in out


def test_validate_truncated_file(capsys, tmp_path):
    p = tmp_path / "cut.json"
    text = fixture_text("walking-weq")
    p.write_text(text[: len(text) // 2])
    code, _, err = run(capsys, "validate", "--bundle", str(p))
    assert code == 2 and "JSON" in err


def test_validate_broken_comp(capsys, tmp_path):
    d = json.loads(fixture_text("walking-weq"))
    comp = d["categories"]["walking-weq"]["comp"]
    row = next(r for r in comp if r[:2] == ["ab", "ab"])
    row[2] = "idy"
    p = tmp_path / "broken.json"
    p.write_text(json.dumps(d))
    code, out, _ = run(capsys, "validate", "--bundle", str(p))
    assert code == 1
    assert "[associativity]" in out and "ab" in out


def test_missing_bundle_flag(capsys):
    code, _, err = run(capsys, "validate")
    assert code == 2 and "--bundle" in err


def test_compose_prints_five_sixths(capsys):
    code, out, _ = run(capsys, "pathobj", "compose", "alpha", "beta", "--bundle", "walking-weq")
    assert code == 0 and out.rstrip().endswith("length 5/6")


def test_compose_from_files(capsys, tmp_path):
    ms = walking_weq_pmorphisms()
    files = []
    for n in ("alpha", "beta"):
        f = tmp_path / f"{n}.json"
        f.write_text(json.dumps(pmorphism_to_json(ms[n])))
        files.append(str(f))
    code, out, _ = run(capsys, "pathobj", "compose", *files, "--bundle", "walking-weq")
    assert code == 0 and "length 5/6" in out


def test_compose_wrong_order_fails(capsys):
    code, _, err = run(capsys, "pathobj", "compose", "beta", "alpha", "--bundle", "walking-weq")
    assert code == 1 and err


def test_identity_has_length_zero(capsys):
    code, out, _ = run(capsys, "pathobj", "identity", "--object", "idx", "--bundle", "walking-weq")
    assert code == 0 and out.rstrip().endswith(f"length {format_rational(0)}")


def test_objects_listed(capsys):
    code, out, _ = run(capsys, "pathobj", "objects", "--bundle", "walking-weq")
    assert code == 0 and len(out.splitlines()) == 6


def test_lift(capsys):
    code, out, _ = run(capsys, "pathobj", "lift", "--w1", "a", "--w2", "a", "--object", "idy",
                       "--bundle", "walking-weq")
    assert code == 0 and '"morphism": "lift(a,a)"' in out


def test_es_witness(capsys):
    code, out, _ = run(capsys, "pathobj", "es-witness", "--bundle", "walking-weq")
    assert code == 0 and out.count('"morphism"') == 6


@pytest.mark.parametrize("name", ["walking-arrow", "walking-weq", "cylinder"])
def test_ff_check_forest(capsys, name):
    code, out, _ = run(capsys, "pathobj", "ff-check", "--bundle", name)
    assert code == 0 and "bijection" in out and "not a bijection" not in out


def test_ff_check_skips_non_forest(capsys):
    code, out, _ = run(capsys, "pathobj", "ff-check", "--bundle", "interchange-default")
    assert code == 0 and "skipped" in out


@pytest.mark.parametrize("name,code", [("cmonoid-C3", 0), ("ncmonoid-S3", 1)])
def test_check_symmetric(capsys, name, code):
    got, out, _ = run(capsys, "check", "symmetric", "--bundle", name)
    assert got == code
    if code:
        assert "[sym-exists]" in out


@pytest.mark.parametrize("name", ["cmonoid-C3", "ncmonoid-S3"])
def test_operad_S_agrees_with_symmetric(capsys, name):
    a, _, _ = run(capsys, "check", "symmetric", "--bundle", name)
    b, _, _ = run(capsys, "check", "operad:S", "--bundle", name)
    assert a == b


@pytest.mark.parametrize("name", ["cmonoid-C3", "ncmonoid-S3"])
def test_monoidal_passes(capsys, name):
    assert run(capsys, "check", "monoidal", "--bundle", name)[0] == 0
    assert run(capsys, "check", "operad:M", "--bundle", name)[0] == 0


def test_check_algebra(capsys):
    assert run(capsys, "check", "algebra", "--variant", "S", "--bundle", "cmonoid-C3")[0] == 0
    assert run(capsys, "check", "algebra", "--variant", "S", "--bundle", "ncmonoid-S3")[0] == 1
    assert run(capsys, "check", "algebra", "--variant", "M", "--bundle", "ncmonoid-S3")[0] == 0


def test_check_monad_laws(capsys):
    code, out, _ = run(capsys, "check", "monad-laws", "--max-len", "2", "--bundle", "cmonoid-C3")
    assert code == 0 and "ok" in out


def test_check_interchange(capsys):
    code, out, _ = run(capsys, "check", "interchange", "--bundle", "interchange-default")
    assert code == 1 and "[interchange]" in out


def test_check_missing_section(capsys):
    code, _, err = run(capsys, "check", "symmetric", "--bundle", "walking-weq")
    assert code == 2 and "fincats" in err


def test_unknown_operad(capsys):
    assert run(capsys, "check", "operad:Q", "--bundle", "cmonoid-C3")[0] == 2


def test_dot_one_node_per_vertex(capsys):
    code, out, _ = run(capsys, "export", "dot", "--bundle", "walking-weq")
    C = walking_weq()
    nodes = [l for l in out.splitlines() if l.strip().endswith(";") and "->" not in l]
    assert code == 0 and len(nodes) == len(C.vertices())
    assert out.count("digraph") == sum(1 for sp in C.homs.values() if sp.vertices)


def test_report_json_round_trip_golden(capsys):
    code, out, _ = run(capsys, "check", "symmetric", "--format", "json", "--bundle", "ncmonoid-S3")
    assert code == 1
    assert out == (GOLDEN / "ncmonoid_symmetric_report.json").read_text(encoding="utf-8")
    rep = loads_report(out)
    assert isinstance(rep, Report) and not rep.ok
    assert rep.dumps() == out


def test_report_ok_flag_checked():
    with pytest.raises(ValueError):
        Report.from_json({"title": "t", "ok": True, "violations": [{"check": "c", "witness": []}]})


def test_export_report_json_deterministic(capsys):
    outs = [run(capsys, "export", "report-json", "--bundle", "walking-weq")[1] for _ in range(2)]
    assert outs[0] == outs[1]
    assert json.loads(outs[0])["ok"] is True


def test_interchange_demo(capsys):
    code, out, _ = run(capsys, "interchange-demo")
    assert code == 0
    assert out == (GOLDEN / "interchange_sweep.json").read_text(encoding="utf-8")


def test_console_script_exit_code():
    res = subprocess.run([sys.executable, "-m", "moorecat.cli", "validate", "--bundle", "cylinder"],
                         capture_output=True, text=True)
    assert res.returncode == 0
