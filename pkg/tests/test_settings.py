import json
from fractions import Fraction

import pytest
from pydantic import ValidationError

from twisted_hurwitz import helpers
from twisted_hurwitz.exceptions import CapExceededError, InvalidPartitionError
from twisted_hurwitz.settings import RunConfig, load_settings


def write_config(folder, **values):
    path = folder / "config.json"
    with path.open("w") as f:
        json.dump(values, f)
    return path


def test_defaults(no_config):
    config = load_settings()
    assert config.max_points == 12
    assert config.max_branch_points == 8
    assert config.workers == 1
    assert config.engine == "tropical"
    assert config.cache_path is None


def test_priorities(no_config, monkeypatch):
    write_config(no_config, max_points=10, workers=3, sample_bound=20)
    monkeypatch.setenv("TWISTED_HURWITZ_WORKERS", "2")
    config = load_settings(max_points=14, workers=None)
    assert config.max_points == 14
    assert config.workers == 2
    assert config.sample_bound == 20


def test_config_path_from_environment(no_config, monkeypatch):
    folder = no_config / "elsewhere"
    folder.mkdir()
    path = write_config(folder, max_branch_points=5)
    monkeypatch.setenv("TWISTED_HURWITZ_CONFIG", str(path))
    assert load_settings().max_branch_points == 5


def test_validation():
    with pytest.raises(ValidationError):
        RunConfig(workers=0)
    with pytest.raises(ValidationError):
        RunConfig(engine="fast")
    with pytest.raises(ValidationError):
        RunConfig(mu=(2, 0))


def test_caps():
    config = RunConfig(mu=(4,), nu=(2, 2), engine="both", max_points=6)
    with pytest.raises(CapExceededError):
        config.check_caps()
    RunConfig(mu=(4,), nu=(2, 2), engine="tropical", max_points=6).check_caps()
    assert config.engine_kwargs == {"max_points": 6, "max_branch": 8,
                                    "workers": 1}


def test_read_missing_config(tmp_path):
    assert helpers.read_config(tmp_path / "missing.json") == {}


def test_rationals():
    assert helpers.format_rational(Fraction(4, 2)) == "2"
    assert helpers.format_rational(Fraction(-1, 2)) == "-1/2"
    assert helpers.parse_rational("2/3") == Fraction(2, 3)


def test_parse_parts():
    assert helpers.parse_parts("1, 3,2") == [1, 3, 2]
    assert helpers.format_parts([2, 2]) == "2,2"
    for text in ["", "1,0", "a"]:
        with pytest.raises(InvalidPartitionError):
            helpers.parse_parts(text)
