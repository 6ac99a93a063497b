import json

from frechet_moe.cli import main


def test_constants(capsys):
    assert main(["constants", "--alpha", "0.3888888889", "--p", "0.1", "--delta", "0.05"]) == 0
    out = capsys.readouterr().out
    assert "k=11" in out.splitlines()
    assert "psi=0.2915882625" in out


def test_constants_domain_error(capsys):
    assert main(["constants", "--alpha", "0.6", "--p", "0.1", "--delta", "0.05"]) == 1


def test_run_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["run", "--experiment", "spider5", "--sims", "10", "--seed", "42", "--out", str(a)]) == 0
    assert main(["run", "--experiment", "spider5", "--sims", "10", "--seed", "42", "--out", str(b), "--threads", "2"]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert (tmp_path / "a.csv.summary").read_bytes() == (tmp_path / "b.csv.summary").read_bytes()
    assert len(a.read_text().splitlines()) == 11


def test_k_larger_than_n(tmp_path, capsys):
    code = main(["run", "--experiment", "spider5", "--n", "50", "--k", "80", "--out", str(tmp_path / "x.csv")])
    assert code == 1
    err = capsys.readouterr().err
    assert "80" in err and "50" in err


def test_unknown_flag(capsys):
    assert main(["run", "--experiment", "spider5", "--bogus"]) == 1
    assert "usage" in capsys.readouterr().err


def test_missing_experiment(capsys):
    assert main(["run", "--sims", "2"]) == 1


def test_io_error(tmp_path):
    assert main(["run", "--experiment", "spider5", "--sims", "1", "--out", str(tmp_path / "no" / "x.csv")]) == 2
    assert main(["run", "--config", str(tmp_path / "absent.json")]) == 2


def test_config_file_and_override(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"schema": 1, "experiment": "spider5", "sims": 3, "k": 5, "master_seed": 1}))
    out = tmp_path / "o.csv"
    assert main(["run", "--config", str(cfg), "--k", "4", "--out", str(out)]) == 0
    summary = (tmp_path / "o.csv.summary").read_text().splitlines()[1].split(",")
    assert summary[:4] == ["spider5", "100", "4", "3"]


def test_bad_config_content(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"schema": 1, "experiment": "spider5", "colour": "red"}))
    assert main(["run", "--config", str(cfg)]) == 1
    cfg.write_text("{not json")
    assert main(["run", "--config", str(cfg)]) == 1


def test_sweep(tmp_path, capsys):
    out = tmp_path / "sweep.csv"
    code = main(["sweep", "--experiment", "spider5", "--sims", "4", "--k-list", "1,5", "--alpha-list", "0.1,0.3", "--out", str(out)])
    assert code == 0
    rows = out.read_text().splitlines()
    assert rows[0].startswith("experiment,n,k,sims,alpha,nu,mse_base,mse_fmoe")
    assert len(rows) == 5
    assert [r.split(",")[2] for r in rows[1:]] == ["1", "5", "1", "5"]
