import csv
import math
import os

import pytest

from polybergman import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def rows(text):
    return list(csv.reader(text.splitlines()))


def test_gamma_row_count(tmp_path, capsys):
    out = tmp_path / "g.csv"
    code, _, _ = run(capsys, "gamma", "--n", "3", "--symbol", "indicator:1:2",
                     "--grid", "log:0.01:20:100", "--out", str(out))
    assert code == 0
    data = rows(out.read_text())
    assert len(data) == 101 and data[0][:2] == ["x", "gamma_1_1"]


def test_gamma_constant_symbol(capsys):
    code, out, _ = run(capsys, "gamma", "--n", "1", "--symbol", "const:1", "--grid", "lin:0.5:5:4")
    assert code == 0
    assert all(r[1] == "1" for r in rows(out)[1:])


def test_gamma_indicator_value(capsys):
    code, out, _ = run(capsys, "gamma", "--n", "2", "--symbol", "indicator:0:1", "--grid", "lin:1:1:1")
    assert code == 0
    assert abs(float(rows(out)[1][1]) - (1 - math.exp(-2))) < 1e-10


def test_kernel_command(capsys):
    code, out, _ = run(capsys, "kernel", "--n", "1", "--z", "i", "--w", "i")
    assert code == 0
    r = rows(out)[1]
    assert abs(float(r[6]) - 1 / (4 * math.pi)) < 1e-15
    assert abs(float(r[8]) - 1 / (4 * math.pi)) < 1e-12
    code, out, _ = run(capsys, "kernel", "--n", "3", "--z", "1j", "--w", "0+1j")
    assert abs(float(rows(out)[1][6]) - 3 / (16 * math.pi)) < 1e-15


def test_kernel_domain_guard(capsys):
    code, _, err = run(capsys, "kernel", "--z", "i", "--w", "1-1j")
    assert code == 2 and "upper half-plane" in err


def test_transform_command(capsys):
    code, out, _ = run(capsys, "transform", "--n", "1", "--profile", "polyexp:0:1",
                       "--zgrid", "0:0:1:1:1:1")
    assert code == 0
    assert abs(float(rows(out)[1][3]) - 1 / (4 * math.sqrt(2))) < 1e-13


def test_certify(tmp_path, capsys):
    out = tmp_path / "c.csv"
    code, _, err = run(capsys, "certify", "--n", "3", "--grid", "log:0.01:100:20", "--out", str(out))
    assert code == 0 and "certified" in err
    assert len(rows(out.read_text())) == 1 + 3 * 20


def test_verify_suite_and_config(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# verification run\nn = 1   # Bergman case\nsuite = kernels\n")
    report = tmp_path / "report.csv"
    code, out, _ = run(capsys, "verify", "--config", str(cfg), "--out", str(report))
    assert code == 0
    assert "n = 1 reduces to the Bergman kernel" in out
    assert all(r[2] == "1" for r in rows(report.read_text())[1:])


def test_flags_override_config(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("n = 5\nsymbol = const:2\ngrid = lin:1:2:2\n")
    code, out, _ = run(capsys, "gamma", "--config", str(cfg), "--n", "1")
    assert code == 0 and rows(out)[0] == ["x", "gamma_1_1"] and rows(out)[1][1] == "2"


@pytest.mark.parametrize("text", ["n 3\n", "bogus = 1\n", "n = three\n"])
def test_bad_config(tmp_path, capsys, text):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text(text)
    code, _, _ = run(capsys, "gamma", "--config", str(cfg))
    assert code == 2


@pytest.mark.parametrize("argv", [
    ["gamma", "--symbol", "nonsense"],
    ["gamma", "--n", "17"],
    ["gamma", "--grid", "log:1:2"],
    ["verify", "--suite", "nope"],
    ["transform", "--zgrid", "0:1:2:-1:1:2"],
    ["kernel", "--z", "abc"],
])
def test_config_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(["gamma", "--n", "x"])
    assert info.value.code == 2


def test_invariant_failure_exit_1(capsys):
    # an absurd tolerance makes the oracle comparison fail
    assert run(capsys, "kernel", "--n", "2", "--tol", "1e-300")[0] == 1


def test_numerical_failure_exit_3(monkeypatch, capsys):
    from polybergman import kernels
    from polybergman.errors import NonFiniteSampleError

    def boom(*args, **kwargs):
        raise NonFiniteSampleError("nan at node")

    monkeypatch.setattr(kernels, "kernel_PT_oracle", boom)
    assert run(capsys, "kernel")[0] == 3


def test_deterministic_output(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        run(capsys, "gamma", "--n", "2", "--grid", "log:0.1:10:7", "--out", str(path))
    assert a.read_bytes() == b.read_bytes()


def test_no_partial_file_on_failure(tmp_path, monkeypatch, capsys):
    out = tmp_path / "g.csv"
    from polybergman import spectral

    def boom(*args, **kwargs):
        raise FloatingPointError("overflow")

    monkeypatch.setattr(cli, "gamma_matrix", boom)
    assert run(capsys, "gamma", "--out", str(out))[0] == 3
    assert not out.exists()
    assert not [p for p in os.listdir(tmp_path) if p.startswith(".tmp-")]
