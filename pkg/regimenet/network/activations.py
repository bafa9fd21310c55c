import numpy as np
from scipy.special import expit

from ..shared.errors import TrainingError
from .types import Activation


class NonDifferentiableActivation(TrainingError):
    pass


def activate(kind: Activation, z: np.ndarray) -> np.ndarray:
    if kind is Activation.hardlimit:
        return (z >= 0).astype(np.float64)
    elif kind is Activation.sigmoid:
        return expit(z)
    elif kind is Activation.tanh:
        return np.tanh(z)
    elif kind is Activation.linear:
        return z
    else:
        assert False, kind


def derivative(kind: Activation, z: np.ndarray, y: np.ndarray) -> np.ndarray:
    """
    da/dz, given the net input `z` and the output `y = a(z)`
    """

    if kind is Activation.hardlimit:
        raise NonDifferentiableActivation("hardlimit has no usable gradient")
    elif kind is Activation.sigmoid:
        return y * (1.0 - y)
    elif kind is Activation.tanh:
        return 1.0 - y * y
    elif kind is Activation.linear:
        return np.ones_like(z)
    else:
        assert False, kind
