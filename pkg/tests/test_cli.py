import json

import pytest

from remez_lab.cli import EXIT_OK, EXIT_USAGE, main
from remez_lab.data.poly_io import save_poly
from remez_lab.polynomials.poly import Poly


@pytest.fixture
def poly_file(tmp_path, mixed_support_poly):
    return str(save_poly(mixed_support_poly, tmp_path / "f.json"))


def _output(capsys) -> dict:
    return json.loads(capsys.readouterr().out)


def test_lift_at_origin(capsys):
    assert main(["lift", "--K", "3"]) == EXIT_OK
    payload = _output(capsys)
    assert payload["probs"] == pytest.approx([1 / 6] * 6, abs=1e-14)


def test_lift_outside_radius(capsys):
    assert main(["lift", "--K", "3", "--z-re", "0.5"]) == EXIT_USAGE


def test_norm(poly_file, capsys):
    assert main(["norm", "--in", poly_file, "--torus", "--restarts", "2", "--samples", "64"]) == EXIT_OK
    payload = _output(capsys)
    assert payload["grid_order"] == 3
    assert payload["coeff_l1"] == pytest.approx(5)
    assert payload["torus"]["torus_lower"] <= payload["coeff_l1"] + 1e-12


def test_project_iterate(poly_file, capsys):
    assert main(["project", "--in", poly_file, "--iterate", "2"]) == EXIT_OK
    payload = _output(capsys)
    assert payload["part"]["terms"] == [{"alpha": [1, 2], "re": pytest.approx(27), "im": pytest.approx(0, abs=1e-9)}]


def test_project_bounded_set(poly_file, tmp_path, capsys):
    S = tmp_path / "S.json"
    S.write_text("[[1, 2]]")
    assert main(["project", "--in", poly_file, "--S", str(S)]) == EXIT_OK
    payload = _output(capsys)
    assert payload["class_bound"] > 0


def test_project_rejects_partial_class(tmp_path, capsys):
    path = save_poly(Poly(2, 3, {(1, 0): 1.0, (0, 1): 1.0}), tmp_path / "g.json")
    S = tmp_path / "S.json"
    S.write_text("[[1, 0]]")
    assert main(["project", "--in", str(path), "--S", str(S)]) == EXIT_USAGE


def test_decompose_with_recovery(poly_file, capsys):
    assert main(["decompose", "--in", poly_file, "--recover"]) == EXIT_OK
    payload = _output(capsys)
    assert [cls["support_size"] for cls in payload["classes"]] == [1, 2]
    assert payload["recovery_gap"] <= 1e-10


def test_reduce(poly_file, capsys):
    assert main(["reduce", "--in", poly_file]) == EXIT_OK
    payload = _output(capsys)
    assert payload["g_at_sqrt_omega"] == pytest.approx(payload["norm_2k"])


def test_certify(capsys):
    assert main(["certify", "--d", "0", "--K", "3"]) == EXIT_OK
    assert _output(capsys)["C"] == pytest.approx(1)


def test_certify_instance(poly_file, capsys):
    assert main(["certify", "--in", poly_file]) == EXIT_OK
    assert [level["ell"] for level in _output(capsys)["levels"]] == [1, 2]


def test_certify_out_of_range():
    assert main(["certify", "--d", "9"]) == EXIT_USAGE


def test_bh(poly_file, capsys):
    assert main(["bh", "--in", poly_file]) == EXIT_OK
    payload = _output(capsys)
    assert payload["d"] == 3
    assert payload["p"] == pytest.approx(1.5)


def test_missing_input_file(tmp_path):
    assert main(["norm", "--in", str(tmp_path / "absent.json")]) == EXIT_USAGE


def test_cap_override(poly_file, monkeypatch):
    monkeypatch.setenv("REMEZ_LAB_CAP", "4")
    assert main(["norm", "--in", poly_file]) == EXIT_USAGE
    monkeypatch.setenv("REMEZ_LAB_CAP", "many")
    assert main(["norm", "--in", poly_file]) == EXIT_USAGE


def test_sweep_writes_report(tmp_path):
    out = tmp_path / "report.json"
    csv = tmp_path / "report.csv"
    argv = ["sweep", "--suite", "dk-bound", "--trials", "2", "--no-progress", "--out", str(out), "--csv", str(csv)]
    assert main(argv) == EXIT_OK
    report = json.loads(out.read_text())
    assert report["aggregates"]["violation_count"] == 0
    assert csv.exists()


def test_sweep_from_config(tmp_path):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"suite": "roundtrip", "n_values": [2], "trials": 1}))
    out = tmp_path / "report.json"
    assert main(["sweep", "--config", str(config), "--no-progress", "--out", str(out)]) == EXIT_OK
    assert json.loads(out.read_text())["suite"] == "roundtrip"


def test_sweep_needs_a_suite():
    assert main(["sweep"]) == EXIT_USAGE


def test_unknown_command_exits_with_usage():
    with pytest.raises(SystemExit) as excinfo:
        main(["frobnicate"])
    assert excinfo.value.code == 2
