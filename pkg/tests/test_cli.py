import csv
import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from toric_poisson import charts as C
from toric_poisson import documents as Doc
from toric_poisson import polytope as P
from toric_poisson.cli import main


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_validate_simplex():
    code, out, _ = run("validate", "cp2")
    assert code == 0 and out.count(" ok") == 3


def test_validate_stretched_triangle(data_dir):
    code, out, _ = run("validate", str(data_dir / "stretched-triangle.json"))
    assert code == 1
    assert "|det| = 2 FAIL" in out


def test_validate_malformed(data_dir):
    code, _, err = run("validate", str(data_dir / "malformed.json"))
    assert code == 2 and "line 3" in err


@pytest.mark.parametrize(
    "doc, location",
    [
        ({"name": "x", "dim": 2, "representation": "h-rep", "normals": [[1, 0]]}, "$"),
        ({"name": "x", "dim": 1, "representation": "h-rep", "normals": [[1], [-1]], "offsets": ["1/2", "0.5"]},
         "$.offsets[1]"),
        ({"name": "x", "dim": 2, "representation": "h-rep", "normals": [[1, 0], [0, 1], [-1]],
          "offsets": ["0", "0", "1"]}, "$.normals[2]"),
        ({"name": "x", "dim": 1, "representation": "h-rep", "normals": [[2], [-1]], "offsets": ["0", "1"]},
         "$.representation"),
    ],
)
def test_schema_errors_report_location(tmp_path, doc, location):
    path = tmp_path / "doc.json"
    path.write_text(json.dumps(doc))
    code, _, err = run("validate", str(path))
    assert code == 2 and location in err


def test_missing_file():
    code, _, err = run("validate", "no-such-document.json")
    assert code == 2


@pytest.mark.parametrize("name", Doc.BUNDLED)
def test_bundled_documents_are_delzant(name):
    assert run("validate", name)[0] == 0


def test_atlas_cp2():
    code, out, _ = run("atlas", "cp2")
    records = json.loads(out)["charts"]
    assert code == 0 and len(records) == 3
    assert all(r["B"] == [[2, 1], [1, 2]] and r["detB"] == 3 for r in records)


def test_atlas_cp1_and_square():
    cp1 = json.loads(run("atlas", "cp1")[1])["charts"]
    assert [r["B"] for r in cp1] == [[[2]], [[2]]]
    sq = json.loads(run("atlas", "square")[1])["charts"]
    assert len(sq) == 4 and all(r["B"] == [[2, 0], [0, 2]] for r in sq)


@pytest.mark.parametrize("name", Doc.BUNDLED)
def test_atlas_round_trip(name):
    doc = Doc.load_document(name)
    records = json.loads(run("atlas", name)[1])["charts"]
    assert tuple(C.chart_from_record(r) for r in records) == C.atlas(doc.polytope)


def test_atlas_refuses_non_delzant(data_dir):
    code, _, err = run("atlas", str(data_dir / "stretched-triangle.json"))
    assert code == 1 and "|det| = 2" in err


def test_poisson_output():
    code, out, _ = run("poisson", "cp1", "--samples", "2", "--seed", "3")
    data = json.loads(out)
    assert code == 0 and data["charts"][0]["B"] == [[2]]
    sample = data["charts"][0]["samples"][0]
    x, y = sample["x"]
    assert sample["P"][0][1] == pytest.approx(x * x + y * y, rel=1e-15)


def read_csv(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_modular_cp1():
    code, out, _ = run("modular", "--cpn", "1")
    rows = read_csv(out)
    assert code == 0 and [r["labels"] for r in rows] == ["{}", "{1}", "{2}"]
    assert rows[0]["centroid"] == "0"


def test_modular_cp2():
    code, out, _ = run("modular", "--cpn", "2")
    rows = read_csv(out)
    assert code == 0 and len(rows) == 7
    assert all(float(r["residual"]) < 1e-10 for r in rows)
    for r in rows:
        exact = [Fraction(x) for x in r["centroid"].split()]
        image = [float(x) for x in r["image"].split()]
        assert image == pytest.approx([float(x) for x in exact], abs=1e-15)


def test_modular_from_document_matches_cpn():
    assert run("modular", "cp2")[1] == run("modular", "--cpn", "2")[1]


def test_modular_square_needs_experimental():
    code, _, err = run("modular", "square")
    assert code == 1 and "--experimental" in err


def test_modular_experimental_square():
    code, out, err = run("modular", "square", "--experimental")
    rows = read_csv(out)
    assert code == 0 and "WARNING" in err
    assert "discrepancy" in rows[0] and len(rows) == 9


def test_modular_figure_output(tmp_path):
    code, _, _ = run("modular", "--cpn", "2", "--figure", str(tmp_path))
    assert code == 0
    rows = read_csv((tmp_path / "modular-cp2.csv").read_text())
    assert sum(r["kind"] == "centroid" for r in rows) == 7
    assert sum(r["kind"] == "line" for r in rows) == 6
    png = (tmp_path / "modular-cp2.png").read_bytes()
    assert png[:8] == b"\x89PNG\r\n\x1a\n"


def test_verify_cp2_seed_42_passes_and_replays():
    code, first, _ = run("verify", "cp2", "--seed", "42", "--samples", "60")
    _, second, _ = run("verify", "cp2", "--seed", "42", "--samples", "60")
    reports = json.loads(first)
    assert code == 0 and first == second
    assert all(r["verdict"] == "pass" and r["seed"] == 42 for r in reports)


def test_verify_refuses_non_delzant(data_dir):
    code, out, err = run("verify", str(data_dir / "stretched-triangle.json"))
    assert code == 1 and out == "" and "refusing" in err


def test_verify_seed_from_environment(monkeypatch):
    monkeypatch.setenv("TORIC_POISSON_SEED", "9")
    reports = json.loads(run("verify", "cp1", "--samples", "20")[1])
    assert {r["seed"] for r in reports} == {9}


def test_verify_tolerance_scale_can_fail():
    code, _, err = run("verify", "cp1", "--samples", "20", "--tolerance-scale", "1e-30")
    assert code == 1 and "FAIL" in err


def test_float_formatting():
    assert Doc.format_float(0.1) == "0.10000000000000001"
    assert Doc.to_json({"a": Fraction(1, 3), "b": [0.5, 2]}) == '{\n  "a": "1/3",\n  "b": [0.5, 2]\n}'
    assert json.loads(Doc.to_json([{"x": float("inf")}])) == [{"x": "inf"}]


def test_document_round_trip():
    p = P.hirzebruch(2)
    doc = Doc.parse_document(Doc.polytope_to_document(p))
    assert doc.polytope.normals == p.normals and doc.polytope.offsets == p.offsets
    assert doc.h == 1 and not doc.kappa_factor


def test_v_rep_cp3_matches_h_rep():
    doc = Doc.load_document("cp3")
    assert sorted(zip(doc.polytope.normals, doc.polytope.offsets)) == sorted(
        zip(P.simplex(3).normals, P.simplex(3).offsets)
    )


def test_module_entry_point():
    result = subprocess.run([sys.executable, "-m", "toric_poisson", "atlas", "cp1"], capture_output=True, text=True)
    assert result.returncode == 0 and json.loads(result.stdout)["polytope"] == "cp1"
