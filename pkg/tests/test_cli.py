import json
import subprocess
import sys

from gammalab import cli


def run_main(args, capsys):
    code = cli.main(args)
    out = capsys.readouterr().out
    return code, out


def test_gamma_all_regular_q3_n2(capsys):
    code, out = run_main(["gamma", "--q", "3", "--n", "2",
                          "--theta", "all-regular"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["schema"] == "gammalab/1"
    rows = data["rows"]
    assert len(rows) == 3  # three Galois orbits of regular characters
    for row in rows:
        if not row["shalika"]:
            assert abs(row["abs_gamma"] - 1) < 1e-8
            assert row["max_route_delta"] < 1e-7
        else:
            assert "L" in row and "eps" in row and "gamma" in row


def test_gamma_single_theta_shalika_row(capsys):
    code, out = run_main(["gamma", "--q", "3", "--n", "2", "--theta", "2"],
                         capsys)
    assert code == 0
    row = json.loads(out)["rows"][0]
    assert row["shalika"]
    # L = 1/(1 - X) at c = 1
    assert row["L"]["den"] == [[1.0, 0.0], [-1.0, 0.0]]
    assert row["modified_fe_residual"] < 1e-9


def test_gamma_q2_n3(capsys):
    code, out = run_main(["gamma", "--q", "2", "--n", "3", "--theta", "1"],
                         capsys)
    assert code == 0
    row = json.loads(out)["rows"][0]
    assert abs(row["abs_gamma"] - 1) < 1e-8
    assert set(row["routes"]) == {"ratio", "torus", "closed_form"}


def test_exit_code_on_non_regular_theta(capsys):
    code, _ = run_main(["gamma", "--q", "3", "--n", "2", "--theta", "0"],
                       capsys)
    assert code == cli.EXIT_PRECONDITION


def test_exit_code_on_route_disagreement(capsys):
    # an absurd tolerance forces the disagreement path
    code, out = run_main(["gamma", "--q", "3", "--n", "2", "--theta", "1",
                          "--tol", "1e-30"], capsys)
    assert code == cli.EXIT_ROUTE_DISAGREEMENT
    assert json.loads(out)["rows"]  # report still emitted


def test_verify_green(capsys):
    code, out = run_main(["verify", "--q", "2", "--n", "2"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["failed"] == 0
    assert all(line.startswith("PASS") for line in data["checks"])


def test_csv_format(capsys):
    code, out = run_main(["gamma", "--q", "2", "--n", "2",
                          "--theta", "all-regular", "--format", "csv"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "# schema gammalab/1"
    assert "theta" in lines[1]


def test_export_roundtrip(tmp_path, capsys):
    out_dir = tmp_path / "exp"
    code, _ = run_main(["export", "--q", "2", "--n", "3", "--out", str(out_dir)],
                       capsys)
    assert code == 0
    sweep = json.loads((out_dir / "gamma_sweep_q2_n3.json").read_text())
    assert sweep["schema"] == "gammalab/1"
    assert len(sweep["rows"]) == 2
    csv_files = sorted(out_dir.glob("bessel_*.csv"))
    assert len(csv_files) == 2
    first = csv_files[0].read_text().splitlines()
    assert first[0].startswith("# schema gammalab/1")
    assert first[1] == "composition,scalars,re,im"


def test_byte_determinism_across_processes(tmp_path):
    cmd = [sys.executable, "-m", "gammalab.cli", "gamma", "--q", "2", "--n", "2",
           "--theta", "all-regular", "--seed", "7"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a


def test_psi_inverse_flag(capsys):
    code, out = run_main(["gamma", "--q", "3", "--n", "2", "--theta", "1",
                          "--psi-inverse"], capsys)
    assert code == 0
    row = json.loads(out)["rows"][0]
    assert abs(row["abs_gamma"] - 1) < 1e-8
