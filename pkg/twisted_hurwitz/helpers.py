"Helper functions shared by the engines and the command line"
import json
import os
from fractions import Fraction
from pathlib import Path
from typing import List, Optional

from .exceptions import InvalidPartitionError

PATH_CONFIG = "./config.json"
ENV_CONFIG = "TWISTED_HURWITZ_CONFIG"


# File handling helpers
def read_config(config_path: Optional[str] = None):
    """Read the JSON configuration file.

    The path defaults to the TWISTED_HURWITZ_CONFIG environment variable,
    then to ./config.json. A missing file yields an empty configuration.
    """
    if config_path is None:
        config_path = os.environ.get(ENV_CONFIG, PATH_CONFIG)
    config_path = Path(config_path).expanduser()
    if not config_path.is_file():
        return {}
    with config_path.open() as f:
        config = json.load(f)
    return config


def mkdirs(path):
    "Walk through a path to create a directory and its parents if needed"
    if isinstance(path, str):  # Conversion to pathlib.Path if needed
        path = Path(path).expanduser().absolute()
    if not path.is_dir():
        path.mkdir(parents=True)


# Formatting helpers
def format_rational(value) -> str:
    "Print an exact rational as p/q with q > 0, integers without /1"
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    "Inverse of format_rational"
    return Fraction(text)


def parse_parts(text: str) -> List[int]:
    "Parse a comma separated list of positive integers, keeping the order"
    try:
        parts = [int(p) for p in text.replace(" ", "").split(",") if p != ""]
    except ValueError:
        raise InvalidPartitionError(f"Not a list of integers: {text!r}")
    if not parts or any(p < 1 for p in parts):
        raise InvalidPartitionError(f"Parts must be positive: {text!r}")
    return parts


def format_parts(parts) -> str:
    "Comma separated representation of a sequence of parts"
    return ",".join(str(p) for p in parts)

