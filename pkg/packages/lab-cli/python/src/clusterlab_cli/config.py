"""
Experiment configuration: YAML file first, command-line flags on top, then
validation against the pydantic model of the subcommand.
"""
import logging
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Type, TypeVar

import yaml
from dotenv import find_dotenv, load_dotenv
from pydantic import BaseModel

from clusterlab_core.errors import InvalidInstanceError
from clusterlab_core.exactprob import parse_probability
from clusterlab_core.pool import default_workers

logger = logging.getLogger(__name__)

M = TypeVar("M", bound=BaseModel)


def load_env(path: Optional[str] = None) -> None:
    """Read CLUSTERLAB_* settings from a .env file without overriding the real environment."""
    load_dotenv(dotenv_path=path or find_dotenv(usecwd=True), override=False)


def load_yaml(path: Optional[str]) -> Dict[str, Any]:
    if not path:
        return {}
    with open(Path(path), "r", encoding="utf-8") as f:
        data = yaml.safe_load(f) or {}
    if not isinstance(data, dict):
        raise InvalidInstanceError(f"config file {path} must hold a mapping at the top level")
    return data


def merge(file_values: Dict[str, Any], flags: Dict[str, Any]) -> Dict[str, Any]:
    """Flags that were given on the command line win over the config file."""
    merged = dict(file_values)
    merged.update({k: v for k, v in flags.items() if v is not None})
    return merged


def build_config(model: Type[M], config_path: Optional[str], flags: Dict[str, Any]) -> M:
    return model(**merge(load_yaml(config_path), flags))


def resolve_workers(workers: Optional[int]) -> int:
    return workers if workers else default_workers()


def probability(text: str) -> Tuple[Fraction, bool]:
    """Parse p; decimal input switches the run to float mode."""
    p, exact = parse_probability(text)
    if not exact:
        logger.warning("p=%s given as a decimal: results are rendered as reals and exact checks are off", text)
    return p, exact
