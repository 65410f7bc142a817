import json

import pytest

from serival.lab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_loja_writes_reports(tmp_path, capsys):
    code, out, _ = run(capsys, "loja", "--poly", "X^2 - T1^3*Y^2", "--field", "f2", "--prec", "4",
                       "--mode", "exhaustive", "--out", str(tmp_path))
    assert code == 0
    csv = (tmp_path / "loja.csv").read_text().splitlines()
    assert csv[0] == "min_ord,max_ordP,witness_x,witness_y,pairs"
    data = json.loads((tmp_path / "loja.json").read_text())
    assert data["schema"] == 1 and data["fit"]["slope"] == 2
    assert (tmp_path / "loja.dat").read_text().startswith("# loja")
    assert "envelope: value <= 2 * key + 3" in out


def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "g.cfg"
    cfg.write_text("# greenberg run\npoly = Z^2 - T1^3\nfield = f3\nnvars = 1\nprec = 5\ni_max = 2\n")
    code, out, _ = run(capsys, "greenberg", "--config", str(cfg), "--out", str(tmp_path), "--i-max", "3")
    assert code == 0
    rows = (tmp_path / "greenberg.csv").read_text().splitlines()
    assert len(rows) == 1 + 4


def test_malformed_config(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("poly = Z\nwidth = 3\n")
    code, _, err = run(capsys, "roots", "--config", str(cfg))
    assert code == 1 and f"{cfg}:2" in err and "unknown key" in err


def test_missing_poly(capsys, tmp_path):
    code, _, err = run(capsys, "loja", "--out", str(tmp_path))
    assert code == 1 and "no polynomial" in err


def test_roots(capsys, tmp_path):
    code, out, _ = run(capsys, "roots", "--poly", "Z^2-(T1^2+T2^3)", "--tprec", "8", "--field", "q",
                       "--out", str(tmp_path))
    assert code == 0
    assert "(t1)*TN + ((1/2)/t1)*TN^2" in out and "@8" in out


def test_rational_target_is_not_applicable(capsys, tmp_path):
    code, out, _ = run(capsys, "dioph", "--poly", "T2*Z - T1", "--root", "t1 @12", "--field", "q",
                       "--prec", "3", "--tprec", "12", "--out", str(tmp_path), "--quiet")
    assert code == 3 and out.strip() == "NOT-APPLICABLE"


def test_swap_vars(capsys, tmp_path):
    code, out, _ = run(capsys, "loja", "--poly", "X^2 - T2^3*Y^2", "--field", "f2", "--prec", "3",
                       "--swap-vars", "--out", str(tmp_path), "--quiet")
    assert code == 0
    assert json.loads((tmp_path / "loja.json").read_text())["extra"]["poly"] == "(T1^3)*Y^2 + X^2"


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest")
    assert code == 0 and "7/7 checks passed" in out


def test_sampled_runs_are_byte_identical(tmp_path, capsys):
    args = ["dioph", "--poly", "Z^2 - (T1^2 + T2^3)", "--root", "t1*TN", "--field", "q",
            "--prec", "4", "--mode", "sampled", "--samples", "60", "--seed", "11", "--tprec", "16"]
    assert main(args + ["--out", str(tmp_path / "a")]) == 0
    assert main(args + ["--out", str(tmp_path / "b"), "--workers", "2"]) == 0
    capsys.readouterr()
    for ext in ("csv", "json", "dat"):
        assert (tmp_path / "a" / f"dioph.{ext}").read_bytes() == (tmp_path / "b" / f"dioph.{ext}").read_bytes()


def test_unknown_command():
    with pytest.raises(SystemExit):
        main(["frobnicate"])
