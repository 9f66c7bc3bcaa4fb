import math
import subprocess
import sys

import numpy as np
import pytest

from geonest.cli import main
from geonest.config import load_config, parse_config
from geonest.exceptions import ConfigError
from geonest.output import read_summary, write_outputs
from geonest.sampler import run

MINIMAL = """
[model]
name = "von_mises"
kappa = 5.0

[sampler]
seed = 1
"""


def _write_cfg(tmp_path, text, name="cfg.toml"):
    p = tmp_path / name
    p.write_text(text)
    return p


def _run_cfg(cfg, out):
    model = cfg.build_model()
    result = run(cfg.sampler, model.space, model, cfg.scales(model.space),
                 posterior_count=cfg.posterior_count)
    write_outputs(result, cfg, model.space.names, out)
    return result


def test_minimal_config_gets_defaults():
    cfg = parse_config(MINIMAL)
    assert cfg.model_name == "von_mises"
    assert dict(cfg.model_params)["kappa"] == 5.0
    s = cfg.sampler
    assert (s.n_live, s.chain_steps, s.termination_frac, s.seed) == (500, 20, 1e-3, 1)
    assert cfg.posterior_count == 10_000


def test_n_live_one_rejected():
    with pytest.raises(ConfigError, match="n_live ≥ 2"):
        parse_config(MINIMAL + "n_live = 1\n")


def test_unknown_key_suggests_close_match():
    with pytest.raises(ConfigError, match="n_live"):
        parse_config(MINIMAL + "nlive = 50\n")


@pytest.mark.parametrize("text, fragment", [
    ("[model]\nkappa = 1.0\n", "model.name"),
    ("[model]\nname = \"von_mise\"\n", "von_mises"),
    ("[model]\nname = \"von_mises\"\nkapa = 1.0\n", "kappa"),
    (MINIMAL + "[proposal]\nfraction = 0.1\nsigma = 0.1\n", "not both"),
    (MINIMAL + "[proposal]\nsigma = [0.1, 0.2]\n", "1 entries"),
    (MINIMAL + "[proposal]\nfraction = 2.0\n", "fraction"),
    (MINIMAL + "[output]\nposterior_count = -1\n", "posterior_count"),
    ("[model]\nname = \"von_mises\"\nkappa = -2.0\n", "kappa"),
    ("not = [valid", "TOML"),
    ("[extra]\n", "extra"),
])
def test_config_errors(text, fragment):
    with pytest.raises(ConfigError, match=fragment):
        parse_config(text)


def test_two_dead_points_give_three_lines(tmp_path):
    cfg = parse_config(MINIMAL + "n_live = 10\nmax_iterations = 2\n")
    result = _run_cfg(cfg, tmp_path)
    assert result.n_iterations == 2
    lines = (tmp_path / "dead_points.csv").read_text().splitlines()
    assert len(lines) == 3
    assert lines[0] == "iter,log_l,log_x,log_weight,theta"


def test_rerun_is_byte_identical_and_round_trips(tmp_path):
    cfg = parse_config(MINIMAL + "n_live = 50\n[output]\nposterior_count = 200\n")
    r1 = _run_cfg(cfg, tmp_path / "a")
    _run_cfg(cfg, tmp_path / "b")
    for f in ("dead_points.csv", "posterior.csv", "summary.txt"):
        assert (tmp_path / "a" / f).read_bytes() == (tmp_path / "b" / f).read_bytes()
    summary = read_summary(tmp_path / "a" / "summary.txt")
    assert float(summary["log_z"]) == r1.log_z
    assert float(summary["log_z_err"]) == r1.log_z_err
    post = np.loadtxt(tmp_path / "a" / "posterior.csv", delimiter=",", skiprows=1, ndmin=2)
    assert post.shape == (200, 1)


@pytest.mark.parametrize("extra", [
    "[model]\nname = \"edge_bimodal_torus\"\n",
    "[model]\nname = \"vmf_sphere\"\n",
    "[model]\nname = \"gaussian_box\"\nmean = [0.5, 0.4, 0.6]\nsigma = [0.1, 0.1, 0.1]\n",
])
def test_dead_point_column_count(tmp_path, extra):
    cfg = parse_config(extra + "[sampler]\nn_live = 30\n")
    result = _run_cfg(cfg, tmp_path)
    d = cfg.build_model().space.ndim
    lines = (tmp_path / "dead_points.csv").read_text().splitlines()
    assert len(lines) == result.n_iterations + 1
    assert all(len(line.split(",")) == d + 4 for line in lines)


def test_summary_echoes_effective_config(tmp_path):
    cfgfile = _write_cfg(tmp_path, MINIMAL + "chain_steps = 7\n[proposal]\nfraction = 0.08\n")
    out = tmp_path / "out"
    assert main(["run", "--config", str(cfgfile), "--seed", "9", "--n-live", "40",
                 "--out-dir", str(out), "--quiet"]) == 0
    s = read_summary(out / "summary.txt")
    cfg = load_config(cfgfile).with_overrides(9, 40, out)
    for key, value in cfg.effective_items():
        assert key in s
        if isinstance(value, float):
            assert float(s[key]) == value
        elif isinstance(value, str):
            assert s[key] == value
        elif isinstance(value, list):
            assert [float(v) for v in s[key].strip("[]").split(",")] == value
        else:
            assert int(s[key]) == value
    assert s["seed"] == "9" and s["sampler.n_live"] == "40"
    assert s["sampler.chain_steps"] == "7" and s["sampler.termination_frac"] == "0.001"
    assert s["truncated"] == "false"


def test_missing_config_exit_code(tmp_path, capsys):
    missing = tmp_path / "missing.toml"
    assert main(["run", "--config", str(missing)]) == 1
    assert str(missing) in capsys.readouterr().err


def test_bad_arguments_are_config_errors(capsys):
    assert main(["run"]) == 1
    assert main(["frobnicate"]) == 1
    assert "config error" in capsys.readouterr().err


def test_runtime_error_exit_code(tmp_path, capsys):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    cfgfile = _write_cfg(tmp_path, MINIMAL + "n_live = 10\n")
    assert main(["run", "--config", str(cfgfile), "--out-dir", str(blocker / "sub"),
                 "--quiet"]) == 2
    assert str(blocker / "sub") in capsys.readouterr().err


def test_list_models(capsys):
    assert main(["list-models"]) == 0
    out = capsys.readouterr().out
    for name in ("von_mises", "edge_bimodal_torus", "vmf_sphere", "antipodal_vmf_mixture",
                 "gaussian_box"):
        assert name in out


def test_verify_after_run(tmp_path, capsys):
    cfgfile = _write_cfg(tmp_path, MINIMAL + f"[output]\ndir = \"{tmp_path / 'out'}\"\n")
    assert main(["verify", "--config", str(cfgfile)]) == 0
    assert "run the sampler first" in capsys.readouterr().out
    assert main(["run", "--config", str(cfgfile), "--quiet"]) == 0
    assert main(["verify", "--config", str(cfgfile)]) == 0
    out = capsys.readouterr().out
    oracle = float(out.split("oracle_log_z = ")[1].split()[0])
    assert abs(oracle - math.log(np.i0(5.0))) < 1e-10
    ratio = float(out.split("|delta| / log_z_err = ")[1].split()[0])
    assert ratio < 3.0


def test_verify_grid_guard(tmp_path):
    cfgfile = _write_cfg(tmp_path, MINIMAL)
    assert main(["verify", "--config", str(cfgfile), "--grid", "4"]) == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "geonest", "list-models"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "vmf_sphere" in proc.stdout
