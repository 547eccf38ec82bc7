import json

import pytest

from pytest import mark
from pytest import raises

from config import SUITES
from config import get_suite_names
from config import get_suites_by_category
from config.settings import DEFAULTS
from config.settings import ENV_KEYS
from config.settings import load_config
from core.errors import ConfigError


@pytest.fixture
def clean_env(monkeypatch):
    for env in ENV_KEYS.values():
        monkeypatch.delenv(env, raising=False)
    return monkeypatch


@pytest.fixture
def config_file(tmp_path):
    def write(payload):
        path = tmp_path / "config.json"
        path.write_text(json.dumps(payload), encoding="utf-8")
        return str(path)
    return write


def test_defaults(clean_env):
    cfg = load_config()
    assert cfg.tau == DEFAULTS["tau"]
    assert (cfg.seed, cfg.samples, cfg.degree_cap) == (42, 30, 6)
    assert cfg.curve().trunc == 40
    assert cfg.to_dict()["tau"] == [0.3, 1.1]


def test_precedence(clean_env, config_file):
    path = config_file({"samples": 5, "tau": [0.1, 1.3]})
    assert load_config(path).samples == 5
    assert load_config(path).tau == complex(0.1, 1.3)
    clean_env.setenv("ELLHECKE_SAMPLES", "7")
    assert load_config(path).samples == 7
    assert load_config(path, samples=2).samples == 2
    assert load_config(path, samples=None).samples == 7


@mark.parametrize("payload", ({"bogus": 1},
                              {"trunc": 5},
                              {"samples": 0},
                              {"tol": 1e-5, "scale_tol": 1e-6},
                              {"degree_cap": 13},
                              {"tau": "sideways"},
                              {"fparams": [[0.0, 0.0], [0.3, 0.4]]},
                              {"fparams": [1, 2]},
                              ["not", "an", "object"]))
def test_rejects_bad_files(clean_env, config_file, payload):
    with raises(ConfigError):
        load_config(config_file(payload))


def test_missing_file(clean_env, tmp_path):
    with raises(ConfigError):
        load_config(str(tmp_path / "absent.json"))


def test_env_seed_must_be_an_integer(clean_env):
    clean_env.setenv("ELLHECKE_SEED", "many")
    with raises(ConfigError):
        load_config()


def test_streams_are_reproducible_and_independent(small_config):
    a = small_config.rng("hecke").random(4)
    b = small_config.rng("hecke").random(4)
    c = small_config.rng("theta").random(4)
    assert a.tolist() == b.tolist()
    assert a.tolist() != c.tolist()


def test_with_curve(small_config):
    moved = small_config.with_curve(0.5j + 0.1)
    assert moved.curve().tau == complex(0.1, 0.5)
    assert moved.samples == small_config.samples


def test_suites():
    names = get_suite_names()
    assert len(names) == len(set(names)) == len(SUITES)
    grouped = get_suites_by_category()
    assert list(grouped) == ["Theta functions", "Hecke operators", "Quiver Hecke", "Parameters"]
    assert sum(len(v) for v in grouped.values()) == len(SUITES)
    assert {s["command"] for s in SUITES} == {"theta-check", "hecke-verify", "klr-verify", "params"}
