import subprocess
import sys

import pytest

from walkbandits.cli import load_config, main
from walkbandits.errors import ConfigError

SMALL_CONFIG = """
[experiment]
players = 3
arms = 5
horizon = 40
runs = 2
seed = 7
algo = "ucb"

[graph]
topology = "ring"

[arms]
kind = "bernoulli"
means = [0.9, 0.8, 0.7, 0.6, 0.5]

[walk]
variant = "downlink"
overlap_prob = 0.2

[output]
path = "{out}"
"""


@pytest.fixture
def small_config(tmp_path):
    out = tmp_path / "metrics.csv"
    cfg = tmp_path / "small.toml"
    cfg.write_text(SMALL_CONFIG.format(out=out.as_posix()))
    return cfg, out


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "walkbandits.cli", *args],
        capture_output=True,
        text=True,
    )


class TestLoadConfig:
    def test_bundled_configs_resolve(self):
        for name in ("downlink.toml", "constructed.toml"):
            cfg = load_config(name)
            assert cfg.n_players == 6
        downlink = load_config("downlink.toml")
        assert [a.mean for a in downlink.arms] == pytest.approx(
            [0.95, 0.9, 0.85, 0.8, 0.75, 0.7, 0.65, 0.6, 0.55, 0.5]
        )
        constructed = load_config("constructed.toml")
        assert constructed.n_arms == 100
        assert constructed.arms[0].mean == pytest.approx(0.006 * 100)
        assert constructed.arms[99].mean == pytest.approx(0.006)
        assert constructed.arms[0].std == pytest.approx(0.001 * 100)

    def test_overrides_take_precedence(self, small_config):
        cfg_path, _ = small_config
        cfg = load_config(str(cfg_path), {"algo": "greedy", "horizon": 7, "n_runs": None})
        assert cfg.algo == "greedy"
        assert cfg.horizon == 7
        assert cfg.n_runs == 2  # None override leaves the file value

    def test_missing_file(self):
        with pytest.raises(ConfigError, match="not found"):
            load_config("nope.toml")

    def test_negative_mean_names_field(self, tmp_path):
        bad = tmp_path / "broken.toml"
        bad.write_text(SMALL_CONFIG.format(out="x.csv").replace("0.9,", "-0.9,"))
        with pytest.raises(ConfigError, match="mean"):
            load_config(str(bad))

    def test_syntax_error_is_config_error(self, tmp_path):
        bad = tmp_path / "syntax.toml"
        bad.write_text("[experiment\nplayers = 3")
        with pytest.raises(ConfigError):
            load_config(str(bad))


class TestCliProcess:
    def test_run_writes_csv(self, small_config):
        cfg, out = small_config
        proc = run_cli("run", "--config", str(cfg))
        assert proc.returncode == 0, proc.stderr
        assert out.exists()
        lines = out.read_text().splitlines()
        assert lines[0].startswith("run_id,t,")
        assert len(lines) == 1 + 40 * 4

    def test_byte_identical_reruns(self, small_config):
        cfg, out = small_config
        assert run_cli("run", "--config", str(cfg)).returncode == 0
        first = out.read_bytes()
        assert run_cli("run", "--config", str(cfg)).returncode == 0
        assert out.read_bytes() == first

    def test_validate_prints_resolution(self, small_config):
        cfg, _ = small_config
        proc = run_cli("validate", "--config", str(cfg), "--algo", "genie")
        assert proc.returncode == 0
        assert "players" in proc.stdout and "genie" in proc.stdout

    def test_validate_broken_config_exits_one(self, tmp_path):
        bad = tmp_path / "broken.toml"
        bad.write_text(SMALL_CONFIG.format(out="x.csv").replace("0.9,", "-0.9,"))
        proc = run_cli("validate", "--config", str(bad))
        assert proc.returncode == 1
        assert "mean" in proc.stderr

    def test_missing_config_exits_one(self):
        proc = run_cli("run", "--config", "missing.toml")
        assert proc.returncode == 1

    def test_bad_flag_exits_one(self):
        proc = run_cli("run", "--config", "downlink.toml", "--algo", "sarsa")
        assert proc.returncode == 1

    def test_fixtures_pass(self):
        proc = run_cli("fixtures")
        assert proc.returncode == 0, proc.stdout + proc.stderr
        assert "PASS" in proc.stdout
        assert "FAIL" not in proc.stdout

    def test_realized_regret_flag_changes_estimator(self, small_config):
        cfg, out = small_config
        assert run_cli("run", "--config", str(cfg)).returncode == 0
        pseudo = out.read_bytes()
        assert run_cli("run", "--config", str(cfg), "--realized-regret").returncode == 0
        assert out.read_bytes() != pseudo


class TestMainInProcess:
    def test_main_returns_zero(self, small_config):
        cfg, out = small_config
        assert main(["run", "--config", str(cfg), "--horizon", "10"]) == 0
        assert out.exists()

    def test_main_config_error(self):
        assert main(["run", "--config", "does-not-exist.toml"]) == 1
