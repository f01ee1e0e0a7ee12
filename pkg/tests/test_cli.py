import csv
import io

import pytest

from altrecon.bench import CSV_COLUMNS, read_csv
from altrecon.cli import build_parser, load_config, main


def test_help_lists_flags(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["run", "--help"])
    assert exc.value.code == 0
    out = capsys.readouterr().out
    for flag in ("--config", "--n1", "--n2", "--rank", "--xi", "--smnr", "--trials",
                 "--seed", "--algos", "--structured", "--out"):
        assert flag in out


def test_run_writes_csv(tmp_path, capsys):
    out = tmp_path / "r.csv"
    code = main(["run", "--n1", "5", "--n2", "5", "--rank", "1", "--xi", "0.6", "--smnr", "20",
                 "--trials", "2", "--seed", "4", "--algos", "als,ale", "--k-max", "20",
                 "--out", str(out)])
    assert code == 0
    recs = read_csv(out)
    assert len(recs) == 4
    assert {r.algo for r in recs} == {"als", "ale"}
    assert "median" in capsys.readouterr().out


def test_run_from_config(tmp_path):
    cfg = tmp_path / "c.toml"
    out = tmp_path / "r.csv"
    cfg.write_text(
        'n1 = 5\nn2 = 5\nr = 1\nxi_grid = [0.6]\nsmnr_grid_db = [15.0, 25.0]\n'
        'trials = 1\nmaster_seed = 9\nalgos = ["adls"]\nmu = 5.0\nk_max = 15\n'
        f'output_path = "{out}"\n'
    )
    assert main(["run", "--config", str(cfg)]) == 0
    recs = read_csv(out)
    assert [r.smnr_db for r in recs] == [15.0, 25.0]
    assert all(r.iterations <= 15 for r in recs)
    # command-line flags override the file
    assert main(["run", "--config", str(cfg), "--trials", "2"]) == 0
    assert len(read_csv(out)) == 4


def test_run_to_stdout(capsys):
    assert main(["run", "--n1", "4", "--n2", "4", "--rank", "1", "--xi", "0.75", "--smnr", "20",
                 "--trials", "1", "--algos", "als", "--structured", "false"]) == 0
    captured = capsys.readouterr()
    rows = list(csv.reader(io.StringIO(captured.out)))
    assert tuple(rows[0]) == CSV_COLUMNS
    assert len(rows) == 2


def test_bad_config_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.toml"
    bad.write_text("frobnicate = 3\n")
    assert main(["run", "--config", str(bad)]) != 0
    assert main(["run", "--config", str(tmp_path / "missing.toml")]) != 0
    assert main(["run", "--trials", "0"]) != 0
    assert main(["run", "--n1", "4", "--n2", "4", "--rank", "1", "--xi", "0.5", "--smnr", "10",
                 "--trials", "1", "--algos", "als", "--out", str(tmp_path / "no" / "dir.csv")]) != 0


def test_trace(tmp_path, capsys):
    out = tmp_path / "t.csv"
    assert main(["trace", "--algo", "adls", "--n1", "6", "--n2", "6", "--rank", "1",
                 "--xi", "0.5", "--smnr", "20", "--k-max", "12", "--out", str(out)]) == 0
    rows = list(csv.DictReader(out.open()))
    assert 1 <= len(rows) <= 12
    assert {"iteration", "residual", "primal_R", "primal_L"} <= set(rows[0])
    assert "srer_db" in capsys.readouterr().err


def test_load_config_splits_keys(tmp_path):
    p = tmp_path / "c.toml"
    p.write_text("n1 = 7\nlam = 0.25\n")
    sweep, opts = load_config(p)
    assert sweep == {"n1": 7}
    assert opts == {"lam": 0.25}


def test_parser_requires_subcommand():
    with pytest.raises(SystemExit):
        build_parser().parse_args([])
