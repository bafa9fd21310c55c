from typing import List

import numpy as np

from ..network.activations import NonDifferentiableActivation, derivative
from ..network.forward import Batch, forward_batch, trace
from ..network.types import Activation, Network
from .loss import as_pair, mse_loss
from .types import Gradients

_FLOOR = 1e-8


def check_differentiable(net: Network) -> None:
    for idx, layer in enumerate(net.layers, start=1):
        if layer.activation is Activation.hardlimit:
            raise NonDifferentiableActivation(
                f"layer {idx} uses hardlimit, train with sigmoid, tanh or linear"
            )


def gradients(net: Network, inputs: Batch, targets: Batch) -> Gradients:
    """
    Reverse mode chain rule for d(mse_loss) / d(W, b)
    """

    check_differentiable(net)
    traces = trace(net, inputs)
    s, o = as_pair(traces[-1].y, targets)

    grad_y = 2.0 * (s - o) / s.size
    ws: List[np.ndarray] = []
    bs: List[np.ndarray] = []
    for layer, w, t in reversed(tuple(zip(net.layers, net.weights, traces))):
        delta = grad_y * derivative(layer.activation, z=t.z, y=t.y)
        ws.append(delta.T @ t.x)
        bs.append(delta.sum(axis=0))
        grad_y = delta @ w

    return Gradients(weights=tuple(reversed(ws)), biases=tuple(reversed(bs)))


def numeric_gradients(
    net: Network, inputs: Batch, targets: Batch, h: float
) -> Gradients:
    """
    Central differences, one parameter at a time
    """

    weights = [np.array(w) for w in net.weights]
    biases = [np.array(b) for b in net.biases]

    def loss() -> float:
        shifted = net.with_params(weights, biases)
        return mse_loss(forward_batch(shifted, inputs), targets)

    def central(param: np.ndarray) -> np.ndarray:
        acc = np.zeros_like(param)
        for idx in np.ndindex(param.shape):
            x = param[idx]
            param[idx] = x + h
            up = loss()
            param[idx] = x - h
            down = loss()
            param[idx] = x
            acc[idx] = (up - down) / (2 * h)
        return acc

    return Gradients(
        weights=tuple(central(w) for w in weights),
        biases=tuple(central(b) for b in biases),
    )


def relative_error(analytic: np.ndarray, numeric: np.ndarray) -> float:
    num = np.linalg.norm(analytic - numeric)
    den = max(np.linalg.norm(analytic) + np.linalg.norm(numeric), _FLOOR)
    return float(num / den)


def gradient_check(
    net: Network, inputs: Batch, targets: Batch, h: float = 1e-5
) -> float:
    """
    Largest per-tensor relative error between analytic and numeric gradients
    """

    analytic = gradients(net, inputs=inputs, targets=targets)
    numeric = numeric_gradients(net, inputs=inputs, targets=targets, h=h)
    return max(relative_error(a, n) for a, n in zip(analytic, numeric))
