import json

import pytest

from irs_ee.cli import main


def write(tmp_path, obj, name="cfg.json"):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


def test_solve_default_bnb(tmp_path, capsys):
    cfg = write(tmp_path, {"n_elements": 8, "seed": 3})
    out = tmp_path / "out.json"
    assert main(["solve", cfg, "--json-out", str(out)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["status"] == "Feasible" and doc["algo"] == "bnb"
    assert len(doc["x"]) == 8 and doc["ee"] > 0
    assert json.loads(out.read_text()) == doc


@pytest.mark.parametrize("algo", ["ao", "oreo", "opa", "mparea"])
def test_solve_each_algo(tmp_path, capsys, algo):
    cfg = write(tmp_path, {"n_elements": 6})
    assert main(["solve", cfg, "--algo", algo]) == 0
    assert json.loads(capsys.readouterr().out)["algo"] == algo


def test_solve_explicit_amplitudes(tmp_path, capsys):
    cfg = write(tmp_path, {"n_elements": 2, "alpha_hat": [1e-5, 2e-5, 1e-6], "xi": 5e-7, "gamma_min": 10.0})
    assert main(["solve", cfg, "--algo", "mparea"]) == 0
    assert json.loads(capsys.readouterr().out)["x"] == "11"


def test_solve_infeasible_exit_code(tmp_path, capsys):
    cfg = write(tmp_path, {"n_elements": 2, "alpha_hat": [1e-7, 1e-7, 1e-7], "gamma_min": 1e9})
    assert main(["solve", cfg]) == 2
    assert json.loads(capsys.readouterr().out)["status"] == "Infeasible"


@pytest.mark.parametrize(
    "cfg, message",
    [
        ("{not json", "malformed JSON"),
        ({"eta": 1.5}, "amp_efficiency out of (0,1]"),
        ({"alpha_hat": [1e-5, 1e-6], "xi": 1e-5, "n_elements": 1}, "xi exceeds alpha_min"),
        ({"chi": 2.0}, "chi"),
        ({"n_elements": 2.5}, "n_elements"),
    ],
)
def test_solve_input_errors(tmp_path, capsys, cfg, message):
    assert main(["solve", write(tmp_path, cfg)]) == 1
    assert message in capsys.readouterr().err


def test_missing_file(tmp_path, capsys):
    assert main(["solve", str(tmp_path / "absent.json")]) == 1


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["solve"])
    assert exc.value.code == 1


def test_verify(capsys):
    assert main(["verify", "--n", "5", "--trials", "5"]) == 0
    assert "failures=0" in capsys.readouterr().out


def test_verify_default_size(capsys):
    assert main(["verify", "--n", "8", "--trials", "100", "--eps", "1e-6"]) == 0
    out = capsys.readouterr().out
    assert "failures=0" in out and "worst_gap=" in out


def test_verify_rejects_large_n(capsys):
    assert main(["verify", "--n", "15"]) == 1
    assert "n exceeds oracle cap" in capsys.readouterr().err
    assert main(["verify", "--trials", "0"]) == 1


def test_sweep_writes_csv(tmp_path):
    cfg = write(tmp_path, {"n_grid": [4], "trials": 2, "n_elements": 4})
    out = tmp_path / "vs_n.csv"
    assert main(["sweep", cfg, "--kind", "vs_N", "--out", str(out), "--seed", "1"]) == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("N,trial,tau,scheme")
    assert len(lines) == 1 + 2 * 2 * 5


def test_sweep_trace_to_stdout(tmp_path, capsys):
    cfg = write(tmp_path, {"n_elements": 6})
    assert main(["sweep", cfg, "--kind", "bnb_trace"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "iter,p_l,p_u,ub,lb,incumbent,q,action"
    assert lines[1].endswith(",1,start")
