import os
import sys
from functools import lru_cache
from pathlib import Path

import yaml
from dotenv import load_dotenv

from exception.exceptions import ConfigError

DEFAULT_CONFIG_PATH: Path = Path(__file__).resolve().parent.parent / "config" / "config.yaml"


def resolve_config_path(config_path: str | None = None) -> Path:
    """
    Picks the config file: explicit argument, then ``UPQ_SCREEN_CONFIG``
    (environment or ``.env``), then ``config/config.yaml`` in the repository.
    """
    if config_path:
        return Path(config_path)
    load_dotenv()
    env_path = os.getenv("UPQ_SCREEN_CONFIG")
    return Path(env_path) if env_path else DEFAULT_CONFIG_PATH


@lru_cache(maxsize=8)
def _read_yaml(path: str) -> dict:
    try:
        with open(path, "r") as file:
            config: dict = yaml.safe_load(file) or {}
    except (OSError, yaml.YAMLError) as e:
        raise ConfigError(e, sys)
    return config


def load_config(config_path: str | None = None) -> dict:
    """
    Loads the YAML configuration file.

    Parameters
    ----------
    config_path : str, optional
        The path to the YAML configuration file. Defaults to the resolution
        order of :func:`resolve_config_path`.

    Returns
    -------
    dict
        The loaded configuration as a dictionary.

    Raises
    ------
    ConfigError
        If the file is missing or is not valid YAML.
    """
    return _read_yaml(str(resolve_config_path(config_path)))


def guard(name: str, default: int) -> int:
    """Reads one entry of the ``guards`` section."""
    return int(load_config().get("guards", {}).get(name, default))
