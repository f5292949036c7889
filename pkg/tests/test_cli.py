import json

import pytest

from graded_kronecker.cli import main
from graded_kronecker.document import dumps, loads
from graded_kronecker.quiver import LineBundle, TorsionInfinity, direct_sum, normal_form, zero_rep


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def ti_file(tmp_path):
    path = tmp_path / "ti.json"
    path.write_text(dumps(normal_form(TorsionInfinity(1), -1)))
    return str(path)


def test_classify(capsys, ti_file):
    code, out, _ = run(capsys, "classify", ti_file)
    assert code == 0 and out.strip() == "TorsionInfinity k=1 shift=0"


def test_classify_decomposable(capsys, tmp_path):
    path = tmp_path / "sum.json"
    rep = direct_sum(normal_form(TorsionInfinity(1), -1), normal_form(LineBundle(0), -1))
    path.write_text(dumps(rep))
    code, _, err = run(capsys, "classify", str(path))
    assert code == 1
    assert "LineBundle k=0" in err and "TorsionInfinity k=1" in err


def test_decompose_zero(capsys, tmp_path):
    path = tmp_path / "zero.json"
    path.write_text(dumps(zero_rep(-1)))
    code, out, _ = run(capsys, "decompose", str(path))
    assert code == 0 and out.startswith("0 summands")


def test_decompose_json(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, out, _ = run(capsys, "random", "--labels", "TorsionZero:2,LineBundle:-1:1", "--d", "-2", "--seed", "4", "--scramble")
    path.write_text(out)
    code, out, _ = run(capsys, "decompose", str(path), "--json")
    report = json.loads(out)
    assert code == 0 and report["verified"] is True
    got = sorted((s["family"], s["k"], s["shift"], s["multiplicity"]) for s in report["summands"])
    assert got == [("LineBundle", -1, 1, 1), ("TorsionZero", 2, 0, 1)]


def test_scan_manifolds(capsys):
    code, out, _ = run(capsys, "scan-manifolds", "--n", "2", "--kmax", "6")
    assert code == 0
    lines = out.splitlines()
    assert "# admissible: 1" in lines
    i = lines.index("# admissible: 1")
    assert lines[i + 1].startswith("TorsionInfinity k=1")
    assert lines[i + 1].endswith("cohomology 1,0,1")


def test_scan_with_fewer_checks(capsys):
    code, out, _ = run(capsys, "scan-manifolds", "--n", "2", "--checks", "support,connected,top_class,duality", "--json")
    admissible = [(r["family"], r["k"]) for r in json.loads(out)["admissible"]]
    assert set(admissible) == {("TorsionZero", 2), ("TorsionInfinity", 1)}


def test_ext(capsys, ti_file):
    code, out, _ = run(capsys, "ext", ti_file, "--json", "--f0-raw")
    report = json.loads(out)
    assert code == 0 and report["total"] == {"0": 1, "2": 1}
    assert "f0_raw" in report


def test_random_is_deterministic(capsys):
    args = ("random", "--profile", "0=2,1=1/0=1,1=2", "--d", "-1", "--seed", "9", "--scramble")
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert a == b
    assert dumps(loads(a)) == a


def test_normal_form_command(capsys):
    code, out, _ = run(capsys, "normal-form", "--label", "LineBundle:2", "--d", "3", "--field", "Fp:5")
    assert code == 0 and loads(out) == normal_form(LineBundle(2), 3, loads(out).field)


def test_check(capsys):
    code, out, _ = run(capsys, "check", "--max-dim", "2", "--window", "2", "--json")
    report = json.loads(out)
    assert code == 0 and report["ok"] and report["instances"] == 53


def test_invalid_inputs(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"d": 0, "field": "Q", "V": {}, "W": {}, "alpha": [], "beta": []}')
    code, _, err = run(capsys, "decompose", str(bad))
    assert code == 1 and "d must be nonzero" in err
    code, _, err = run(capsys, "random", "--labels", "Sheaf:1", "--d", "-1")
    assert code == 1
    code, _, err = run(capsys, "decompose", str(tmp_path / "missing.json"))
    assert code == 1


def test_reports_are_byte_identical(capsys, ti_file):
    _, a, _ = run(capsys, "decompose", ti_file)
    _, b, _ = run(capsys, "decompose", ti_file)
    assert a == b
