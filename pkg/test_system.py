"""
End-to-end tests: environment configuration, main entry point and a full
decode -> analyze pipeline over a pool file
"""

import pytest

import check_env
import main
from config.settings import ConfigError, load_settings
from mbr import SamplePool
from storage import PoolFile, read_decode_results, read_lines
from utils.pool_runner import PoolRunner
from metrics import resolve_utility


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch, tmp_path):
    for name in list(check_env.ENV_VARS):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.chdir(tmp_path)


def test_default_settings():
    settings = load_settings(load_env_file=False)
    assert settings.utility == "chrf-1"
    assert settings.num_samples == 100
    assert settings.curve_grid == "5:100:5"
    assert settings.copy_anchor == "reference"


def test_settings_from_environment(monkeypatch):
    monkeypatch.setenv("MBR_UTILITY", "bleu-floor-symmetric")
    monkeypatch.setenv("MBR_NUM_SAMPLES", "20")
    monkeypatch.setenv("MBR_COPY_ANCHOR", "source")
    settings = load_settings(load_env_file=False)
    assert (settings.utility, settings.num_samples, settings.copy_anchor) == ("bleu-floor-symmetric", 20, "source")


@pytest.mark.parametrize("name,value", [
    ("MBR_UTILITY", "rouge"),
    ("MBR_NUM_SAMPLES", "many"),
    ("MBR_NUM_SAMPLES", "0"),
    ("MBR_COPY_ANCHOR", "target"),
    ("MBR_HALLUC_THRESHOLD", "2"),
    ("MBR_CURVE_GRID", "5:1:5"),
    ("MBR_BLEU_FLOOR", "0"),
    ("MBR_BLEU_ADD_K", "-1"),
])
def test_invalid_settings_name_the_variable(monkeypatch, name, value):
    monkeypatch.setenv(name, value)
    with pytest.raises(ConfigError, match=name):
        load_settings(load_env_file=False)


def test_check_env(monkeypatch, capsys):
    assert check_env.check_environment()
    assert "CONFIGURATION VALID" in capsys.readouterr().out
    monkeypatch.setenv("MBR_BUCKETS", "linear")
    assert not check_env.check_environment()
    assert "MBR_BUCKETS" in capsys.readouterr().out


def test_main_reports_configuration_errors(monkeypatch, capsys):
    monkeypatch.setenv("MBR_SEED", "abc")
    assert main.main(["score", "a", "b"]) == 1
    assert "MBR_SEED" in capsys.readouterr().err


def test_pipeline(tmp_path, monkeypatch):
    monkeypatch.setenv("MBR_NUM_SAMPLES", "8")
    pools = [SamplePool(id=f"s{k}", source=f"quelle {k}", reference=f"the house number {k}",
                        samples=tuple([f"the house number {k}"] * 4 + [f"a house number {k}"] * 3 + ["zzz"]),
                        beam=(f"house {k}",))
             for k in range(4)]
    PoolFile("pools.jsonl").write(pools)

    assert main.main(["decode", "pools.jsonl"]) == 0
    results = read_decode_results("pools.decoded.jsonl")
    assert [r.pool_id for r in results] == ["s0", "s1", "s2", "s3"]
    assert read_lines("pools.decoded.txt") == [f"the house number {k}" for k in range(4)]

    assert main.main(["analyze", "hallucinations", "--pools", "pools.jsonl",
                      "--decoded", "pools.decoded.jsonl"]) == 0
    assert (tmp_path / "reports" / "hallucinations.tsv").exists()
    assert main.main(["analyze", "length", "--pools", "pools.jsonl",
                      "--decoded", "mbr=pools.decoded.jsonl"]) == 0
    assert main.main(["curve", "pools.jsonl", "--grid", "2,8", "--reps", "2"]) == 0
    assert main.main(["--verbose", "score", "pools.decoded.txt", "pools.decoded.txt"]) == 0


def test_pool_runner_order_independent_of_workers():
    pools = [SamplePool(id=f"p{k}", source="s", samples=tuple(f"w{(k * i) % 5} x{i % 2}" for i in range(6)))
             for k in range(5)]
    config = resolve_utility("chrf-1")
    sequential = PoolRunner(config, seed=3).decode_all(pools, num_samples=4)
    parallel = PoolRunner(config, seed=3, workers=2).decode_all(pools, num_samples=4)
    assert sequential == parallel
    assert [result.pool_id for result in parallel] == [pool.id for pool in pools]


def test_pool_runner_progress_messages():
    messages = []
    pools = [SamplePool(id=f"p{k}", source="s", samples=("a", "b")) for k in range(3)]
    PoolRunner(resolve_utility("chrf-1"), seed=0, progress=messages.append).decode_all(pools)
    assert messages == ["📊 Processed 3/3 pools"]
