# workbench/config.py
"""
Experiment configuration. One ExperimentConfig fully determines a verify run:
the same config, seed included, gives the same report apart from its
"runtime" block.
"""
import json
from pathlib import Path
from typing import Any, Dict, List, Literal, Sequence, Tuple, Union

import structlog
from pydantic import BaseModel, Field, ValidationError, field_validator

from infrastructure.errors import ConfigError
from infrastructure.settings import get_settings

logger = structlog.get_logger(__name__)

CHECKS = ("lemmas", "audit", "ratios")


class RandomSource(BaseModel):
    kind: Literal["random"] = "random"
    distribution: Literal["uniform", "cluster"] = "uniform"
    n: int = Field(default=50, ge=3)
    trials: int = Field(default=1, ge=1)
    n_max: int = Field(default=0, ge=0)

    def sizes(self) -> Tuple[int, int]:
        """Inclusive range of instance sizes; n_max = 0 means every instance has n points"""
        return self.n, max(self.n, self.n_max)


class FileSource(BaseModel):
    kind: Literal["file"] = "file"
    paths: List[Path] = Field(min_length=1)


class GeneratorSource(BaseModel):
    kind: Literal["generator"] = "generator"
    name: Literal["chew-lower", "l2-lower", "linf-lower"]
    params: Dict[str, Any] = Field(default_factory=dict)


class PairSelection(BaseModel):
    mode: Literal["all", "sampled", "explicit"] = "all"
    count: int = Field(default=100, ge=1)
    explicit: List[Tuple[int, int]] = Field(default_factory=list)

    @field_validator("explicit")
    @classmethod
    def _distinct_endpoints(cls, v: List[Tuple[int, int]]) -> List[Tuple[int, int]]:
        for s, t in v:
            if s == t:
                raise ValueError(f"pair ({s}, {t}) has equal endpoints")
        return v

    def selection(self) -> Union[str, int, Sequence[Tuple[int, int]]]:
        """The pairs argument understood by boundlab.audit.select_pairs"""
        if self.mode == "all":
            return "all"
        if self.mode == "sampled":
            return self.count
        if not self.explicit:
            raise ConfigError("explicit pair selection needs at least one pair")
        return list(self.explicit)


class ExperimentConfig(BaseModel):
    seed: int = Field(default_factory=lambda: get_settings().seed, ge=0, lt=2**64)
    source: Union[RandomSource, FileSource, GeneratorSource] = Field(default_factory=RandomSource, discriminator="kind")
    pairs: PairSelection = Field(default_factory=PairSelection)
    checks: List[Literal["lemmas", "audit", "ratios"]] = Field(default_factory=lambda: list(CHECKS))
    output_dir: Path = Field(default_factory=lambda: get_settings().output_dir)
    render: bool = False

    def echo(self) -> Dict[str, Any]:
        """JSON-safe copy for report bundles"""
        return self.model_dump(mode="json")


def build_config(**values: Any) -> ExperimentConfig:
    try:
        return ExperimentConfig.model_validate(values)
    except ValidationError as e:
        logger.error(f"invalid experiment config: {e}")
        raise ConfigError(str(e)) from e


def load_config(path: Path) -> ExperimentConfig:
    try:
        raw = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        logger.error(f"cannot read config {path}: {e}")
        raise ConfigError(f"cannot read config {path}: {e}") from e
    if not isinstance(raw, dict):
        raise ConfigError(f"config {path} must hold a JSON object")
    return build_config(**raw)
