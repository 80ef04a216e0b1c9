import io
import math
import subprocess
import sys

import numpy as np
import pytest

from cantilever import cli
from cantilever.cli import main, parse_real
from cantilever.errors import ToleranceNotAchievable

from conftest import FIXTURES

FIG1_CFG = str(FIXTURES / "fig1.cfg")


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def parse_csv(text):
    lines = [l for l in text.split("\n") if l and not l.startswith("#")]
    header = lines[0].split(",")
    rows = np.array([[float(x) for x in l.split(",")] for l in lines[1:]])
    return header, rows


def test_simulate_figure_config():
    code, out, _ = run(["simulate", "--alpha", "1.2", "--beta", "3.7", "--omega", "pi/4",
                        "--amplitude", "0.2", "--t-end", "16", "--n-out", "401",
                        "--methods", "reference,u1,u2"])
    assert code == 0
    header, rows = parse_csv(out)
    assert header == ["t", "reference", "u1", "u2"]
    assert rows.shape == (401, 4)
    assert rows[0, 1] == 0.2
    assert rows[-1, 0] == 16.0


def test_simulate_golden_file():
    code, out, _ = run(["simulate", "--config", FIG1_CFG])
    assert code == 0
    golden = (FIXTURES / "fig1_simulate.csv").read_text()
    assert out.split("\n", 1)[0] == golden.split("\n", 1)[0]
    # bit-identical on the build that generated the fixture; allow last-digit libm drift elsewhere
    np.testing.assert_allclose(parse_csv(out)[1], parse_csv(golden)[1], rtol=1e-12, atol=1e-15)


def test_simulate_byte_deterministic():
    outputs = {run(["simulate", "--config", FIG1_CFG])[1] for _ in range(3)}
    assert len(outputs) == 1
    text = outputs.pop()
    assert "\r" not in text and text.endswith("\n")


def test_simulate_linear_u0_exact():
    code, out, _ = run(["simulate", "--alpha", "0", "--beta", "0", "--methods", "u0",
                        "--t-end", "8", "--n-out", "33"])
    assert code == 0
    _, rows = parse_csv(out)
    t = 8.0 / 32 * np.arange(33)
    np.testing.assert_array_equal(rows[:, 1], 0.2 * np.cos(math.pi / 4 * t))


def test_column_order_follows_request():
    _, out, _ = run(["simulate", "--methods", "u2,picard:1,u0,reference", "--n-out", "9"])
    header, rows = parse_csv(out)
    assert header == ["t", "u2", "picard:1", "u0", "reference"]


def test_picard_column_matches_first_order():
    _, out, _ = run(["simulate", "--methods", "picard:1,u1", "--t-end", "8", "--n-out", "17"])
    _, rows = parse_csv(out)
    assert np.max(np.abs(rows[:, 1] - rows[:, 2])) < 1e-10


def test_seventeen_digits():
    _, out, _ = run(["simulate", "--methods", "u1", "--n-out", "3"])
    value = out.split("\n")[2].split(",")[1]
    assert len(value.lstrip("-").replace(".", "").lstrip("0").split("e")[0]) == 17


@pytest.mark.parametrize("argv", [
    ["simulate", "--n-out", "1"],
    ["simulate", "--methods", "rk4"],
    ["simulate", "--methods", "picard:x"],
    ["simulate", "--omega", "-1"],
    ["simulate", "--alpha", "-30", "--omega", "1"],
    ["period", "--amplitude", "0"],
    ["sweep", "--amplitudes", "0.2,0.1,0.2"],
    ["sweep", "--amplitudes", "0.2,0.1"],
    ["simulate", "--config", "/nonexistent/file.cfg"],
    ["simulate", "--out", "/nonexistent/dir/out.csv"],
])
def test_config_errors_exit_2(argv):
    code, out, err = run(argv)
    assert code == 2
    assert out == ""
    assert err.count("\n") == 1 and err.startswith("error: config: ")


def test_zero_amplitude_period_message():
    _, _, err = run(["period", "--amplitude", "0"])
    assert "zero-amplitude orbit has no period" in err


def test_numerical_failure_exit_3(monkeypatch):
    def boom(*args, **kwargs):
        raise ToleranceNotAchievable("tolerance not achievable: step underflow")

    monkeypatch.setattr(cli, "integrate_reference", boom)
    code, out, err = run(["simulate", "--methods", "reference,u1", "--n-out", "5"])
    assert code == 3
    header, rows = parse_csv(out)
    assert np.all(np.isnan(rows[:, 1])) and np.all(np.isfinite(rows[:, 2]))
    assert err.startswith("error: numerical: method reference")

    monkeypatch.setattr(cli, "measure_period", boom)
    code, _, err = run(["period"])
    assert code == 3 and err.startswith("error: numerical: ")


def test_period_linear():
    code, out, _ = run(["period", "--alpha", "0", "--beta", "0"])
    assert code == 0
    values = dict(line.split(",") for line in out.strip().split("\n")[1:])
    assert float(values["period_quadrature"]) == pytest.approx(8.0, abs=1e-9)
    assert float(values["period_reference"]) == pytest.approx(8.0, abs=1e-9)
    assert float(values["rel_difference"]) <= 1e-9


def test_period_figure():
    code, out, _ = run(["period", "--config", FIG1_CFG])
    values = dict(line.split(",") for line in out.strip().split("\n")[1:])
    assert float(values["rel_difference"]) <= 1e-6
    assert float(values["abs_difference"]) == pytest.approx(
        abs(float(values["period_quadrature"]) - float(values["period_reference"])))


def test_sweep_monotone():
    code, out, _ = run(["sweep", "--amplitudes", "0.2,0.1,0.05"])
    assert code == 0
    header, rows = parse_csv(out)
    assert header == ["amplitude", "linf_u1", "linf_u2"]
    assert np.all(np.diff(rows[:, 1]) < 0) and np.all(np.diff(rows[:, 2]) < 0)
    footer = out.strip().split("\n")[-1]
    assert footer.startswith("# order_u1=")
    order_u1 = float(footer.split("order_u1=")[1].split(",")[0])
    assert order_u1 >= 4


def test_sweep_linear():
    code, out, _ = run(["sweep", "--alpha", "0", "--beta", "0"])
    assert code == 0
    _, rows = parse_csv(out)
    assert np.all(rows[:, 1:] <= 1e-12)
    assert out.strip().endswith("# order_u1=nan,order_u2=nan")


def test_flags_override_config_file(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("amplitude = 0.1\nmethods = u0\nn-out = 3\nt_end = 8\n")
    _, out, _ = run(["simulate", "--config", str(cfg)])
    assert parse_csv(out)[1][0, 1] == 0.1
    _, out, _ = run(["simulate", "--config", str(cfg), "--amplitude", "0.3"])
    assert parse_csv(out)[1][0, 1] == 0.3


def test_config_file_errors(tmp_path):
    bad = tmp_path / "bad.cfg"
    bad.write_text("gamma = 1\n")
    assert run(["simulate", "--config", str(bad)])[0] == 2
    bad.write_text("alpha 1\n")
    assert run(["simulate", "--config", str(bad)])[0] == 2


def test_output_file(tmp_path):
    target = tmp_path / "out.csv"
    code, out, _ = run(["simulate", "--methods", "u1", "--n-out", "5", "--out", str(target)])
    assert code == 0 and out == ""
    assert target.read_bytes().count(b"\n") == 6


@pytest.mark.parametrize("text,value", [("0.5", 0.5), ("pi", math.pi), ("pi/4", math.pi / 4),
                                        ("3*pi/2", 1.5 * math.pi), ("-pi", -math.pi),
                                        ("2pi", 2 * math.pi), ("1e-3", 1e-3)])
def test_parse_real(text, value):
    assert parse_real(text) == pytest.approx(value, rel=1e-15)


def test_parse_real_rejects():
    with pytest.raises(ValueError):
        parse_real("tau")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cantilever", "period", "--alpha", "0", "--beta", "0"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("quantity,value")
    proc = subprocess.run([sys.executable, "-m", "cantilever", "simulate", "--n-out", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 2 and proc.stderr.strip().startswith("error: config:")
