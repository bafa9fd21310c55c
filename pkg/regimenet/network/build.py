from math import floor, sqrt

import numpy as np
from numpy.random import default_rng

from ..shared.errors import ConfigError
from .types import Activation, LayerSpec, Network


def hidden_neuron_count(inputs: int, outputs: int, training_patterns: int) -> int:
    """
    (inputs + outputs) / 2 + sqrt(training patterns), floored
    """

    if inputs < 1 or outputs < 1 or training_patterns < 0:
        raise ConfigError(f"bad layer sizes :: {(inputs, outputs, training_patterns)}")
    return max(1, floor((inputs + outputs) / 2 + sqrt(training_patterns)))


def build_network(
    inputs: int,
    hidden: int,
    outputs: int,
    hidden_activation: Activation,
    output_activation: Activation,
    seed: int,
    depth: int = 1,
) -> Network:
    """
    Weights ~ U(-1/sqrt(fan_in), 1/sqrt(fan_in)), biases 0
    """

    if min(inputs, hidden, outputs, depth) < 1:
        raise ConfigError(f"bad layer sizes :: {(inputs, hidden, outputs, depth)}")

    widths = (inputs, *(hidden for _ in range(depth)), outputs)
    layers = tuple(
        LayerSpec(
            fan_in=fan_in,
            neurons=neurons,
            activation=output_activation if idx == depth else hidden_activation,
        )
        for idx, (fan_in, neurons) in enumerate(zip(widths, widths[1:]))
    )

    rng = default_rng(seed)
    weights = []
    for layer in layers:
        bound = 1 / sqrt(layer.fan_in)
        weights.append(rng.uniform(-bound, bound, size=(layer.neurons, layer.fan_in)))

    return Network(
        layers=layers,
        weights=tuple(weights),
        biases=tuple(np.zeros(layer.neurons) for layer in layers),
        seed=seed,
    )
