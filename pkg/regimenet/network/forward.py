from dataclasses import dataclass
from typing import Sequence, Tuple, Union

import numpy as np

from ..dataset.types import NonFiniteValue
from .activations import activate
from .types import Network, ShapeMismatch

Batch = Union[np.ndarray, Sequence[Sequence[float]]]


@dataclass(frozen=True)
class LayerTrace:
    x: np.ndarray
    z: np.ndarray
    y: np.ndarray


def _as_batch(net: Network, inputs: Batch) -> np.ndarray:
    x = np.asarray(inputs, dtype=np.float64)
    if not x.size:
        x = x.reshape(0, net.inputs)
    if x.ndim != 2 or x.shape[1] != net.inputs:
        raise ShapeMismatch(f"expected rows of width {net.inputs}, got {x.shape}")
    return x


def trace(net: Network, inputs: Batch) -> Tuple[LayerTrace, ...]:
    """
    Per layer, u = W p (adder output), z = u + b, y = a(z)
    """

    x = _as_batch(net, inputs)
    acc = []
    for layer, w, b in zip(net.layers, net.weights, net.biases):
        u = x @ w.T
        z = u + b
        y = activate(layer.activation, z)
        acc.append(LayerTrace(x=x, z=z, y=y))
        x = y
    return tuple(acc)


def forward_batch(net: Network, inputs: Batch) -> np.ndarray:
    *_, last = trace(net, inputs)
    return last.y


def forward(net: Network, p: Sequence[float]) -> np.ndarray:
    x = np.asarray(p, dtype=np.float64)
    if x.shape != (net.inputs,):
        raise ShapeMismatch(f"expected {net.inputs} inputs, got {x.shape}")
    if not np.isfinite(x).all():
        raise NonFiniteValue("non-finite input")
    y, *_ = forward_batch(net, x[None, :])
    return y
