import json
import subprocess
import sys

import numpy as np
import pytest

from exception_curves import export
from exception_curves.cli import main
from exception_curves.curve_analysis import ParamPoint


def test_certify_json(tmp_path, capsys):
    out = tmp_path / "cert.json"
    assert main(["certify", "--s", "+---+", "--t", "-++--", "--json", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["pair"] == {"s": "+---+", "t": "-++--"}
    assert data["sd"] > 1 > data["sd_hat"]
    assert "certified" in capsys.readouterr().out


def test_certify_stdout(capsys):
    assert main(["certify", "--s=+---+", "--t=-++--"]) == 0
    assert json.loads(capsys.readouterr().out)["in_R"] is True


@pytest.mark.parametrize(
    "argv, code",
    [
        (["certify", "--s", "++-", "--t", "-+-"], 2),
        (["certify", "--s", "+-+", "--t", "+-+"], 2),
        (["certify", "--s", "+-+", "--t", "-++"], 3),
        (["curve", "--s", "+x+", "--t", "-++"], 2),
        (["sample", "--beta1", "1.5", "--beta2", "0.5", "--p", "0.5", "--seed", "1"], 2),
        (["catalog", "--n-min", "3", "--n-max", "13"], 2),
    ],
)
def test_exit_codes(argv, code, capsys):
    assert main(argv) == code
    assert capsys.readouterr().err


def test_curve_exports(tmp_path, capsys):
    svg, csv = tmp_path / "c.svg", tmp_path / "p.csv"
    assert main(["curve", "--s", "+---+", "--t", "-++--", "--svg", str(svg), "--csv", str(csv)]) == 0
    out = capsys.readouterr().out
    assert "2x^2y^3 + x^2y^2 - x^2y - xy^3 - xy^2 - 2xy + x + y" in out
    lines = csv.read_text().splitlines()
    assert lines[0] == "beta1,beta2,residual,in_R"
    b1, b2, res, flag = lines[1].split(",")
    assert float(res) <= 1e-9 and flag in ("true", "false")
    text = svg.read_text()
    assert text.startswith("<svg") and 'width="800"' in text and "stroke-dasharray" in text
    assert "<polyline" in text


def test_catalog_outputs(tmp_path, capsys):
    js, csv = tmp_path / "c.json", tmp_path / "c.csv"
    assert main(["catalog", "--n-min", "3", "--n-max", "5", "--json", str(js), "--csv", str(csv)]) == 0
    out = capsys.readouterr().out
    assert "n=5: ordered=220 classes=55 degenerate=0 meet_R=1" in out
    data = json.loads(js.read_text())
    assert [s["intersecting"] for s in data["summary"]] == [0, 0, 1]
    rows = csv.read_text().splitlines()
    assert len(rows) == 1 + 3 + 15 + 55


def test_dims(tmp_path, capsys):
    js = tmp_path / "d.json"
    assert main(["dims", "--beta1", "0.8", "--beta2", "0.4", "--s", "+---+", "--t", "-++--",
                 "--p-grid", "1000", "--json", str(js)]) == 0
    rows = capsys.readouterr().out.splitlines()
    assert rows[0] == "p,sd,sdhat,exception" and len(rows) == 1001
    p, sd, sdhat, _ = map(float, rows[500].split(","))
    assert sdhat < sd
    data = json.loads(js.read_text())
    assert data["profile"] is None and "NotOnCurve" in data["profile_error"]


def test_dims_on_curve(tmp_path, capsys):
    cert = tmp_path / "cert.json"
    main(["certify", "--s", "+---+", "--t", "-++--", "--json", str(cert)])
    c = json.loads(cert.read_text())
    js = tmp_path / "d.json"
    assert main(["dims", "--beta1", repr(c["beta1"]), "--beta2", repr(c["beta2"]), "--s", "+---+",
                 "--t", "-++--", "--json", str(js), "--out", str(tmp_path / "grid.csv")]) == 0
    prof = json.loads(js.read_text())["profile"]
    assert prof["witness_p"] == pytest.approx(c["witness_p"], abs=1e-12)


def test_sample_output(tmp_path):
    out = tmp_path / "s.txt"
    argv = ["sample", "--beta1", "0.9", "--beta2", "0.6", "--p", "0.2", "--n", "1000", "--seed", "42"]
    assert main(argv + ["--out", str(out)]) == 0
    first = out.read_text()
    assert main(argv + ["--out", str(out)]) == 0
    assert out.read_text() == first
    vals = np.array([float(v) for v in first.split()])
    assert len(vals) == 1000 and np.all((vals >= -1.5) & (vals <= 9.0))


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "exception_curves", "certify", "--s", "+---+", "--t", "-++--"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["sd"] > 1


def test_float_format():
    assert export.fmt(0.1) == "0.10000000000000001"
    assert export.dumps({"a": [1, 0.5, None, True]}) == '{\n  "a": [\n    1,\n    0.5,\n    null,\n    true\n  ]\n}\n'
    with pytest.raises(ValueError):
        export.dumps(float("nan"))


def test_points_csv_digits():
    text = export.points_csv([ParamPoint(0.75, 1 / 3, 1e-13, True)])
    assert text.splitlines()[1] == "0.75,0.33333333333333331,1e-13,true"
