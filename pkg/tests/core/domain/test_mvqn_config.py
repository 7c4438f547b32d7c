import pytest

from src.core.domain.mvqn_config import MvqnConfig, QuadratureDefaults, TrainingDefaults
from src.core.domain.unity_logic import ZeroPolicy

ENV_KEYS = (
    "MVQN_SEED",
    "MVQN_LEARNING_RATE",
    "MVQN_MAX_EPOCHS",
    "MVQN_ZERO_POLICY",
    "MVQN_LOG_LEVEL",
    "MVQN_LOG_DIR",
)


@pytest.fixture(autouse=True)
def _clean_env(monkeypatch):
    for key in ENV_KEYS:
        monkeypatch.delenv(key, raising=False)


def test_training_defaults_from_empty_dict():
    cfg = TrainingDefaults.from_dict({})
    assert cfg.learning_rate == 1.0
    assert cfg.max_epochs == 100
    assert cfg.seed is None
    assert cfg.init == "random"
    assert cfg.shuffle is True


def test_training_defaults_parse_values():
    cfg = TrainingDefaults.from_dict(
        {"learning_rate": "0.5", "max_epochs": 0, "seed": "3", "init": "Hebbian", "shuffle": "off"}
    )
    assert cfg.learning_rate == 0.5
    assert cfg.max_epochs == 1
    assert cfg.seed == 3
    assert cfg.init == "hebbian"
    assert cfg.shuffle is False


@pytest.mark.parametrize(
    "data",
    [
        {"training": {"init": "xavier"}},
        {"training": []},
        {"zero_policy": "ignore"},
        {"log_level": "LOUD"},
        {"quadrature": {"t": 0}},
    ],
)
def test_config_rejects_invalid_values(data):
    with pytest.raises(ValueError):
        MvqnConfig.from_dict(data)


def test_from_dict_merges_defaults():
    cfg = MvqnConfig.from_dict(
        {"training": {"seed": 9}},
        defaults={"training": {"learning_rate": 0.25, "seed": 1}, "zero_policy": "raise"},
    )
    assert cfg.training.seed == 9
    assert cfg.training.learning_rate == 0.25
    assert cfg.zero_policy is ZeroPolicy.RAISE


def test_load_reads_yaml_file(tmp_path):
    path = tmp_path / "mvqn.yaml"
    path.write_text(
        "training:\n  max_epochs: 7\n  seed: 5\nquadrature:\n  radial_nodes: 20\nlog_level: debug\n",
        encoding="utf-8",
    )
    cfg = MvqnConfig.load(str(path))
    assert cfg.training.max_epochs == 7
    assert cfg.quadrature == QuadratureDefaults(t=1.0, radial_nodes=20, angular_nodes=25)
    assert cfg.log_level == "DEBUG"
    assert cfg.log_dir is None


def test_load_missing_file(tmp_path):
    missing = tmp_path / "absent.yaml"
    assert MvqnConfig.load(str(missing)).to_dict() == MvqnConfig().to_dict()
    with pytest.raises(FileNotFoundError):
        MvqnConfig.load(str(missing), required=True)


def test_load_rejects_non_mapping(tmp_path):
    path = tmp_path / "list.yaml"
    path.write_text("- 1\n- 2\n", encoding="utf-8")
    with pytest.raises(ValueError):
        MvqnConfig.load(str(path))


def test_env_overrides(monkeypatch):
    monkeypatch.setenv("MVQN_SEED", "42")
    monkeypatch.setenv("MVQN_LEARNING_RATE", "0.5")
    monkeypatch.setenv("MVQN_MAX_EPOCHS", "12")
    monkeypatch.setenv("MVQN_ZERO_POLICY", "RAISE")
    monkeypatch.setenv("MVQN_LOG_LEVEL", "warning")
    monkeypatch.setenv("MVQN_LOG_DIR", "logs")
    cfg = MvqnConfig().apply_env_overrides()
    assert cfg.training.seed == 42
    assert cfg.training.learning_rate == 0.5
    assert cfg.training.max_epochs == 12
    assert cfg.zero_policy is ZeroPolicy.RAISE
    assert cfg.log_level == "WARNING"
    assert cfg.log_dir == "logs"


def test_env_override_requires_integer_seed(monkeypatch):
    monkeypatch.setenv("MVQN_SEED", "abc")
    with pytest.raises(ValueError):
        MvqnConfig().apply_env_overrides()


def test_seed_precedence(monkeypatch):
    assert MvqnConfig().resolve_seed() == 0
    monkeypatch.setenv("MVQN_SEED", "8")
    cfg = MvqnConfig.from_dict({"training": {"seed": 3}})
    assert cfg.resolve_seed() == 3
    cfg = cfg.apply_env_overrides()
    assert cfg.resolve_seed() == 8
    assert cfg.resolve_seed(11) == 11


def test_to_dict_round_trip():
    cfg = MvqnConfig.from_dict({"training": {"seed": 2}, "zero_policy": "raise", "log_dir": "out"})
    assert MvqnConfig.from_dict(cfg.to_dict()).to_dict() == cfg.to_dict()
