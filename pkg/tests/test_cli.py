import math

import pytest

from spinhardy import cli, load_distribution_csv, load_distribution_text, load_instance


def test_parse_angle():
    assert cli.parse_angle("0.5pi") == pytest.approx(math.pi / 2)
    assert cli.parse_angle("pi") == math.pi
    assert cli.parse_angle("-pi") == -math.pi
    assert cli.parse_angle("2pi") == pytest.approx(2 * math.pi)
    assert cli.parse_angle("1.25") == 1.25
    assert cli.parse_angle(" 0.5PI ") == pytest.approx(math.pi / 2)
    with pytest.raises(ValueError):
        cli.parse_angle("half a turn")


def test_dmatrix_writes_csv(tmp_path):
    out = tmp_path / "d.csv"
    assert cli.main(["dmatrix", "--twice-spin", "1", "--beta", "0.5pi", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "# command = dmatrix"
    header = next(line for line in lines if not line.startswith("#"))
    assert header == "twice_alpha,1,-1"
    first_data = lines[lines.index(header) + 1].split(",")
    assert float(first_data[1]) == pytest.approx(math.cos(math.pi / 4))


def test_joint_csv_and_text(tmp_path):
    out_csv = tmp_path / "j.csv"
    out_txt = tmp_path / "j.txt"
    args = ["joint", "--twice-spin", "1", "--angles", "0.5pi", "pi"]
    assert cli.main(args + ["--out", str(out_csv)]) == 0
    assert cli.main(args + ["--format", "text", "--out", str(out_txt)]) == 0
    from_csv = load_distribution_csv(out_csv)
    from_txt = load_distribution_text(out_txt)
    assert from_csv.plan == from_txt.plan
    assert from_csv.table == from_txt.table
    assert math.fsum(from_csv.table.values()) == pytest.approx(1.0, abs=1e-10)


def test_search_then_eval_then_lhv(tmp_path, capsys):
    inst_path = tmp_path / "inst.txt"
    history = tmp_path / "hist.csv"
    code = cli.main(
        [
            "hardy-max",
            "--twice-spin",
            "1",
            "--n",
            "2",
            "--out",
            str(inst_path),
            "--history",
            str(history),
        ]
    )
    assert code == 0
    printed = capsys.readouterr().out
    assert "p = 0.25" in printed
    assert "unprimed = " in printed and "primed = " in printed
    assert history.exists()
    inst = load_instance(inst_path)
    assert inst.n == 2

    report_path = tmp_path / "report.csv"
    assert cli.main(
        ["hardy-eval", "--instance", str(inst_path), "--out", str(report_path)]
    ) == 0
    printed = capsys.readouterr().out
    assert "is_hardy_point = True" in printed
    assert report_path.read_text().startswith("# command = hardy-eval")

    witness = tmp_path / "witness.csv"
    assert cli.main(
        ["lhv-check", "--instance", str(inst_path), "--witness", str(witness)]
    ) == 0
    printed = capsys.readouterr().out
    assert "LHV max success = 0" in printed
    assert "# contradiction = True" in witness.read_text()


def test_scan_output_is_reproducible(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["scan", "--twice-spin", "2", "--n", "2", "--l", "2", "--grid-points", "9"]
    assert cli.main(args + ["--out", str(a)]) == 0
    assert cli.main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert a.read_text().startswith("# command = scan")


def test_reproduce_table(tmp_path, capsys):
    out = tmp_path / "table.csv"
    assert cli.main(["reproduce", "--out", str(out)]) == 0
    printed = capsys.readouterr().out
    assert "twice_spin  n  p_max" in printed
    assert "0.0901099" in printed
    text = out.read_text()
    assert "sequence,1,2,0.25" in text
    assert "sequence,4,4,0.00390625" in text
    assert "bipartite_reference,,,0.0901099" in text


def test_validation_exit_code(tmp_path, capsys):
    assert cli.main(["hardy-eval", "--instance", str(tmp_path / "nope.txt")]) == 2
    assert "error:" in capsys.readouterr().err
    assert cli.main(["dmatrix", "--twice-spin", "0", "--beta", "1", "--out", str(tmp_path / "x.csv")]) == 2
    assert cli.main(["nonsense"]) == 2
    assert cli.main([]) == 2
    assert cli.main(["--help"]) == 0


def test_cap_exit_code(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv(cli.CAP_ENV_VAR, "2")
    code = cli.main(
        ["joint", "--twice-spin", "1", "--angles", "1", "2", "--out", str(tmp_path / "j.csv")]
    )
    assert code == 3
    assert "exceeds cap" in capsys.readouterr().err


def test_bad_cap_value_is_validation_error(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv(cli.CAP_ENV_VAR, "soon")
    code = cli.main(
        ["joint", "--twice-spin", "1", "--angles", "1", "--out", str(tmp_path / "j.csv")]
    )
    assert code == 2
    assert cli.CAP_ENV_VAR in capsys.readouterr().err


def test_internal_error_exit_code(monkeypatch, capsys):
    monkeypatch.setitem(cli._HANDLERS, "reproduce", lambda manifest: 1 / 0)
    assert cli.main(["reproduce"]) == 4
    assert "internal error" in capsys.readouterr().err
