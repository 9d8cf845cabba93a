"""Run configuration merged from the config file, the environment and flags.

Priority, from lowest to highest: defaults, ./config.json (or the file named
by TWISTED_HURWITZ_CONFIG), TWISTED_HURWITZ_* environment variables,
command line flags.
"""
import os
from pathlib import Path
from typing import Dict, Literal, Optional, Tuple

from pydantic import BaseModel, Field, PositiveInt

from .exceptions import CapExceededError
from .helpers import read_config

ENV_OVERRIDES = {"TWISTED_HURWITZ_MAX_POINTS": "max_points",
                 "TWISTED_HURWITZ_MAX_BRANCH": "max_branch_points",
                 "TWISTED_HURWITZ_WORKERS": "workers"}


class RunConfig(BaseModel):
    "Parameters of a single command line run"
    subcommand: Optional[str] = None
    g: int = Field(0, ge=0)
    mu: Optional[Tuple[PositiveInt, ...]] = None
    nu: Optional[Tuple[PositiveInt, ...]] = None
    engine: Literal["brute", "tropical", "both"] = "tropical"
    output_format: Literal["text", "json", "dot"] = "text"
    max_points: PositiveInt = 12
    max_branch_points: PositiveInt = 8
    workers: PositiveInt = 1
    sample_bound: PositiveInt = 40
    held_out: int = Field(0, ge=0)
    cache_path: Optional[Path] = None

    @property
    def engine_kwargs(self) -> Dict:
        "Keyword arguments shared by the counting engines"
        return {"max_points": self.max_points,
                "max_branch": self.max_branch_points,
                "workers": self.workers}

    def check_caps(self):
        "Make sure the brute-force engine can run on the requested profiles"
        if self.engine == "tropical" or self.mu is None:
            return
        n_points = 2 * sum(self.mu)
        if n_points > self.max_points:
            raise CapExceededError(
                f"{n_points} points exceed the enumeration cap of {self.max_points}"  # noqa E501
            )


def env_config() -> Dict:
    "Configuration values read from the environment"
    values = {}
    for variable, key in ENV_OVERRIDES.items():
        if variable in os.environ:
            values[key] = int(os.environ[variable])
    return values


def load_settings(config_path: Optional[str] = None, **overrides) -> RunConfig:
    "Merge defaults, config file, environment and explicit overrides"
    values = {}
    values.update(read_config(config_path))
    values.update(env_config())
    values.update({k: v for k, v in overrides.items() if v is not None})
    return RunConfig(**values)
