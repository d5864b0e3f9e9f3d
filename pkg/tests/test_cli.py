import csv
import json

import pytest

from wmwdesign.cli import main

NORMAL_SHIFTED = '{"family":"normal","params":{"mean":0.75,"sd":1}}'
NORMAL_STD = '{"family":"normal","params":{"mean":0,"sd":1}}'


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_power_subcommand(capsys):
    code, out, _ = run(
        capsys, "power", "--f-spec", NORMAL_SHIFTED, "--g-spec", NORMAL_STD,
        "--n", "50", "--omega", "0.5",
    )
    assert code == 0
    data = json.loads(out)
    assert data["design"] == {"m": 25, "n": 25, "omega": 0.5}
    assert data["method"] == "wmw_normal_approx"
    assert 0.80 < data["approx_power"] < 0.83


def test_power_with_explicit_group_sizes(capsys):
    code, out, _ = run(
        capsys, "power", "--f-spec", NORMAL_SHIFTED, "--g-spec", NORMAL_STD,
        "--m", "20", "--n2", "30",
    )
    assert code == 0
    assert json.loads(out)["design"]["m"] == 20


def test_power_rejects_malformed_spec(capsys):
    code, _, err = run(
        capsys, "power", "--f-spec", '{"family":"normal","params":{"mean":0}}',
        "--g-spec", NORMAL_STD,
    )
    assert code == 1
    assert "params.sd" in err


def test_optimal_design_subcommand(tmp_path, capsys):
    curve = tmp_path / "curve.csv"
    code, out, _ = run(
        capsys, "optimal-design", "--f-spec", NORMAL_SHIFTED, "--g-spec", NORMAL_STD,
        "--n", "50", "--out", str(curve),
    )
    assert code == 0
    data = json.loads(out)
    assert data["optimal"]["m"] == 25
    assert data["deficiency_at_half"] == 0.0
    with open(curve) as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["omega", "m", "n", "power"]
    assert len(rows) == 1 + 41  # m from 5 to 45


def test_power_curve_with_monte_carlo_columns(tmp_path, capsys):
    out_path = tmp_path / "pc.csv"
    code, _, _ = run(
        capsys, "power-curve", "--f-spec", NORMAL_SHIFTED, "--g-spec", NORMAL_STD,
        "--n", "50", "--grid", "0.3,0.5,0.7", "--mc-trials", "2000",
        "--seed", "4", "--out", str(out_path),
    )
    assert code == 0
    with open(out_path) as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["omega", "m", "n", "power_approx", "power_mc", "mc_se"]
    assert len(rows) == 4
    for row in rows[1:]:
        assert abs(float(row[3]) - float(row[4])) < 0.05


def test_deficiency_symmetric(capsys):
    code, out, _ = run(capsys, "deficiency", "--omega", "0.25")
    assert code == 0
    data = json.loads(out)
    assert data["deficiency"] == pytest.approx(1 / 3, abs=1e-9)
    assert data["method"] == "symmetric_closed_form"


def test_deficiency_general(capsys):
    code, out, _ = run(
        capsys, "deficiency", "--omega", "0.5", "--f-spec", NORMAL_SHIFTED,
        "--g-spec", NORMAL_STD, "--n", "50",
    )
    assert code == 0
    assert json.loads(out)["deficiency"] == 0.0


def test_exact_null_subcommand(tmp_path, capsys):
    pmf_path = tmp_path / "pmf.csv"
    code, out, _ = run(
        capsys, "exact-null", "--m", "3", "--n", "2", "--out", str(pmf_path),
    )
    assert code == 0
    data = json.loads(out)
    assert data["mean"] == 3.0
    assert data["variance"] == 3.0
    with open(pmf_path) as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["u", "probability"]
    assert len(rows) == 8
    assert sum(float(r[1]) for r in rows[1:]) == pytest.approx(1.0, abs=1e-12)


def test_exact_null_resource_limit(capsys):
    code, _, err = run(capsys, "exact-null", "--m", "2000", "--n", "2000")
    assert code == 3
    assert "resource limit" in err


def test_simulate_subcommand(capsys):
    code, out, _ = run(
        capsys, "simulate", "--f-spec", NORMAL_STD, "--g-spec", NORMAL_STD,
        "--n", "20", "--trials", "2000", "--seed", "8",
    )
    assert code == 0
    data = json.loads(out)
    assert data["test_used"] == "wmw_exact"
    assert abs(data["rejection_rate"] - 0.05) < 0.03


def test_check_identities_subcommand(capsys):
    code, out, _ = run(
        capsys, "check-identities", "--f-spec", NORMAL_SHIFTED, "--g-spec", NORMAL_STD,
    )
    assert code == 0
    data = json.loads(out)
    assert data["complement_residual"] < 1e-7
    assert data["nested_residual"] < 1e-7


def test_reproduce_deficiency_csv(tmp_path, capsys):
    out_path = tmp_path / "d.csv"
    code, _, _ = run(capsys, "reproduce", "--figure", "deficiency", "--out", str(out_path))
    assert code == 0
    with open(out_path) as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["omega", "deficiency"]
    assert len(rows) == 100
    values = {float(r[0]): float(r[1]) for r in rows[1:]}
    assert values[0.5] == 0.0
    # monotone away from 0.5 on both sides
    left = [values[i / 100] for i in range(1, 51)]
    right = [values[i / 100] for i in range(50, 100)]
    assert all(a >= b for a, b in zip(left, left[1:]))
    assert all(b >= a for a, b in zip(right, right[1:]))


def test_reproduce_epping(capsys):
    code, out, _ = run(capsys, "reproduce", "--figure", "epping")
    assert code == 0
    data = json.loads(out)
    assert 0.40 <= data["optimal"]["omega"] <= 0.50
    assert data["deficiency_at_half"] <= 0.02


def test_reproduce_is_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        code, _, _ = run(
            capsys, "reproduce", "--figure", "panel-h", "--trials", "500",
            "--seed", "12", "--out", str(path),
        )
        assert code == 0
    assert a.read_bytes() == b.read_bytes()


def test_spec_file_input(tmp_path, capsys):
    spec_path = tmp_path / "f.json"
    spec_path.write_text(NORMAL_SHIFTED)
    code, out, _ = run(
        capsys, "power", "--f-spec", str(spec_path), "--g-spec", NORMAL_STD,
        "--n", "50", "--omega", "0.5",
    )
    assert code == 0
    assert 0.80 < json.loads(out)["approx_power"] < 0.83


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["power"])  # missing required flags
    assert exc.value.code == 1
