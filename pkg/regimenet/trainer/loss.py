from typing import Tuple

import numpy as np

from ..network.forward import Batch
from ..network.types import ShapeMismatch
from .types import EmptyBatch


def as_pair(predicted: Batch, observed: Batch) -> Tuple[np.ndarray, np.ndarray]:
    s = np.asarray(predicted, dtype=np.float64)
    o = np.asarray(observed, dtype=np.float64)
    if s.shape != o.shape:
        raise ShapeMismatch(f"{s.shape} != {o.shape}")
    if not s.size:
        raise EmptyBatch("empty batch")
    return s, o


def mse_loss(predicted: Batch, observed: Batch) -> float:
    """
    Mean of (s - o)^2 over samples and output dimensions
    """

    s, o = as_pair(predicted, observed)
    return float(np.mean(np.square(s - o)))
