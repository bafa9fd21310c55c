from dataclasses import dataclass
from datetime import date
from enum import Enum, auto
from math import isfinite
from typing import Optional, Sequence

from ..dataset.types import (
    ColumnDecl,
    Fractions,
    MissingPolicy,
    RegimeSpec,
    Role,
    Schema,
)
from ..network.types import Activation
from .errors import ConfigError


class BadTrainingConfig(ConfigError):
    pass


@dataclass(frozen=True)
class DataSettings:
    path: str
    missing: MissingPolicy
    sort: bool
    columns: Sequence[ColumnDecl]

    @property
    def schema(self) -> Schema:
        return Schema(columns=tuple(self.columns), missing=self.missing, sort=self.sort)

    @property
    def inputs(self) -> Sequence[str]:
        return tuple(col.name for col in self.columns if col.role is Role.input)

    @property
    def targets(self) -> Sequence[str]:
        return tuple(col.name for col in self.columns if col.role is Role.target)


@dataclass(frozen=True)
class RegimeDecl:
    name: str
    start: str
    end: str

    def spec(self) -> RegimeSpec:
        try:
            start, end = date.fromisoformat(self.start), date.fromisoformat(self.end)
        except ValueError as e:
            raise ConfigError(f"regime {self.name} :: {e}")
        return RegimeSpec(name=self.name, start=start, end=end)


@dataclass(frozen=True)
class SplitSettings:
    train: float
    test: float
    validation: float

    @property
    def fractions(self) -> Fractions:
        return self.train, self.test, self.validation


class TargetMode(Enum):
    joint = auto()
    separate = auto()


@dataclass(frozen=True)
class NetworkSettings:
    hidden: Optional[int]
    hidden_layers: int
    hidden_activation: Activation
    output_activation: Activation
    targets: TargetMode
    seed: int


class BatchMode(Enum):
    full = auto()
    mini = auto()


@dataclass(frozen=True)
class TrainingConfig:
    learning_rate: float = 0.05
    momentum: float = 0.0
    max_epochs: int = 5000
    batch_mode: BatchMode = BatchMode.full
    batch_size: int = 32
    patience: int = 50
    tolerance: float = 1e-8
    seed: int = 0

    def __post_init__(self) -> None:
        numbers = (self.learning_rate, self.momentum, self.tolerance)
        if not all(map(isfinite, numbers)):
            raise BadTrainingConfig(f"non-finite hyperparameter :: {self}")
        if not self.learning_rate > 0:
            raise BadTrainingConfig(
                f"learning_rate must be > 0 :: {self.learning_rate}"
            )
        if not 0 <= self.momentum < 1:
            raise BadTrainingConfig(f"momentum must lie in [0, 1) :: {self.momentum}")
        if not self.tolerance > 0:
            raise BadTrainingConfig(f"tolerance must be > 0 :: {self.tolerance}")
        for name in ("max_epochs", "batch_size", "patience"):
            if not getattr(self, name) >= 1:
                raise BadTrainingConfig(f"{name} must be >= 1")


@dataclass(frozen=True)
class EvaluationSettings:
    epsilon: float


@dataclass(frozen=True)
class ExperimentConfig:
    data: DataSettings
    regimes: Sequence[RegimeDecl]
    split: SplitSettings
    fit_global: bool
    network: NetworkSettings
    training: TrainingConfig
    evaluation: EvaluationSettings
    output: str
    workers: int
