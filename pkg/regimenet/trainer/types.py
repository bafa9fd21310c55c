from dataclasses import dataclass
from enum import Enum, auto
from typing import Iterator, Sequence, Tuple

import numpy as np

from ..network.types import Network
from ..shared.errors import DataError, TrainingError
from ..shared.settings import TrainingConfig


class EmptyBatch(DataError):
    pass


class DivergedLoss(TrainingError):
    pass


class StopReason(Enum):
    converged = auto()
    early_stopped = auto()
    max_epochs = auto()


@dataclass(frozen=True)
class Gradients:
    weights: Tuple[np.ndarray, ...]
    biases: Tuple[np.ndarray, ...]

    def __iter__(self) -> Iterator[np.ndarray]:
        for w, b in zip(self.weights, self.biases):
            yield w
            yield b

    @property
    def stationary(self) -> bool:
        return not any(np.any(g) for g in self)


@dataclass(frozen=True)
class TrainingReport:
    epochs_run: int
    train_loss_history: Sequence[float]
    validation_loss_history: Sequence[float]
    stop_reason: StopReason
    best_epoch: int
    config: TrainingConfig
    final_network: Network
