import json
import subprocess
import sys

import pytest

from smalehom.cli import main, parse_k_range
from smalehom.invariants import ReportDocument


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_list(capsys):
    code, out, _ = run(capsys, "list")
    assert code == 0
    assert "O3_6" in out and "N3_4" in out and "Z/4 (+) Z/4" in out


def test_list_json(capsys):
    code, out, _ = run(capsys, "list", "--format", "json")
    names = [m["name"] for m in json.loads(out)]
    assert len(names) == 14 and names[0] == "S1"


def test_show(capsys):
    code, out, _ = run(capsys, "show", "--manifold", "K")
    assert code == 0
    assert "H^2 = Z/2" in out
    assert "K^0 = Z (+) Z/2, K^1 = Z" in out
    assert "special degree (|F|+1)^d = 9" in out


def test_show_partial(capsys):
    code, out, _ = run(capsys, "show", "--manifold", "O3_6", "--format", "json")
    doc = json.loads(out)
    assert doc["cohomology"]["2"] == "Z/4 (+) Z/4"
    assert doc["K_cohomology"] == {"0": "Z (+) Z/4 (+) Z/4", "1": "Z"}


def test_show_needs_manifold(capsys):
    code, _, err = run(capsys, "show")
    assert code == 2 and "--manifold" in err


def test_compute_klein(capsys):
    code, out, _ = run(capsys, "compute", "--endo", "klein9", "--format", "json")
    assert code == 0
    g = json.loads(out)["gradeds"]
    assert list(g["stable_homology"].values()) == ["Z[1/3]", "Z[1/3]", "Z/2"]
    assert list(g["unstable_homology"].values()) == ["Z[1/3]", "Z[1/3] (+) Z/2", "0"]
    assert list(g["cech_X"].values()) == ["Z", "Z[1/3]", "Z/2"]


@pytest.mark.parametrize("endo", ["circle2", "circle3", "torus23", "klein9", "o36x125"])
def test_compute_round_trip(capsys, endo):
    code, out, _ = run(capsys, "compute", "--endo", endo, "--format", "json")
    assert code == 0
    assert ReportDocument.from_json(out).to_json() == out


def test_compute_text(capsys):
    code, out, _ = run(capsys, "compute", "--endo", "klein9")
    assert "(= Z[1/9])" in out


def test_periodic(capsys):
    code, out, _ = run(capsys, "periodic", "--endo", "o36x125", "--k", "1..3", "--format", "json")
    rows = json.loads(out)["periodic"]
    assert [r["bounds"] for r in rows] == [[125 ** k - 1, 125 ** k + 1] for k in (1, 2, 3)]
    assert all(r["value"] in r["bounds"] for r in rows)


def test_periodic_insufficient(capsys):
    code, out, _ = run(capsys, "periodic", "--endo", "torus23", "--k", "2")
    assert code == 0 and "insufficient data" in out


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--depth", "4")
    assert code == 0
    assert out.rstrip().endswith("passed")
    assert "fail" not in out.split()


def test_unknown_endo(capsys):
    code, _, err = run(capsys, "compute", "--endo", "nope")
    assert code == 2 and "unknown builtin" in err


def test_bad_depth(capsys):
    assert run(capsys, "verify", "--depth", "0")[0] == 2


def test_k_range():
    assert parse_k_range("1..3") == [1, 2, 3]
    assert parse_k_range("2,5") == [2, 5]
    assert parse_k_range("4") == [4]
    with pytest.raises(Exception):
        parse_k_range("0..2")


ENDO_FILE = """\
name: torus-2-3
manifold: T2
degree: 6
top_sign: 1
induced_homology:
  - [[1]]
  - [[2, 0], [0, 3]]
  - [[6]]
"""


def test_endo_file(capsys, tmp_path):
    path = tmp_path / "t.yaml"
    path.write_text(ENDO_FILE)
    code, out, _ = run(capsys, "compute", "--endo", str(path), "--format", "json")
    assert code == 0
    assert json.loads(out)["gradeds"]["unstable_homology"]["1"] == "Z[1/2] (+) Z[1/3]"


def test_endo_file_invalid(capsys, tmp_path):
    path = tmp_path / "t.yaml"
    path.write_text(ENDO_FILE.replace("degree: 6", "degree: 5").replace("[[6]]", "[[5]]"))
    code, _, err = run(capsys, "compute", "--endo", str(path))
    assert code == 2 and "det" in err


def test_user_manifold_file(capsys, tmp_path):
    mf = tmp_path / "circle.yaml"
    mf.write_text("name: C\ndim: 1\norientable: true\nholonomy_order: 1\nhomology: [Z, Z]\n")
    ef = tmp_path / "e.yaml"
    ef.write_text("manifold: C\ndegree: 4\ntop_sign: -1\ninduced_homology: [null, null]\n")
    code, out, _ = run(capsys, "periodic", "--endo", str(ef), "--manifold", str(mf),
                       "--k", "1..3", "--format", "json")
    assert code == 0
    assert [r["value"] for r in json.loads(out)["periodic"]] == [5, 15, 65]
    code, out, _ = run(capsys, "list", "--manifold", str(mf))
    assert "\nC " in out


def test_invalid_manifold_file(capsys, tmp_path):
    mf = tmp_path / "bad.yaml"
    mf.write_text("name: B\ndim: 1\norientable: true\nholonomy_order: 1\nhomology: [Z, Z/3]\n")
    code, _, err = run(capsys, "show", "--manifold", str(mf))
    assert code == 2 and "B" in err


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "smalehom", "compute", "--endo", "circle2",
                          "--format", "json"], capture_output=True, text=True, check=True)
    assert json.loads(out.stdout)["degree"] == 2
