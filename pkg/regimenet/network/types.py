from dataclasses import dataclass
from enum import Enum, auto
from typing import Any, Iterator, Sequence, Tuple

import numpy as np

from ..shared.errors import DataError, TrainingError


class ShapeMismatch(DataError):
    pass


class ModelFormatError(DataError):
    pass


class NonFiniteParameter(TrainingError):
    pass


class Activation(Enum):
    hardlimit = auto()
    sigmoid = auto()
    tanh = auto()
    linear = auto()


@dataclass(frozen=True)
class LayerSpec:
    fan_in: int
    neurons: int
    activation: Activation


@dataclass(frozen=True, eq=False)
class Network:
    """
    Layer `k` holds `weights[k]` (neurons x fan_in) and `biases[k]` (neurons)
    """

    layers: Tuple[LayerSpec, ...]
    weights: Tuple[np.ndarray, ...]
    biases: Tuple[np.ndarray, ...]
    seed: int

    def __post_init__(self) -> None:
        if not self.layers:
            raise ShapeMismatch("network without layers")
        if not len(self.layers) == len(self.weights) == len(self.biases):
            raise ShapeMismatch("layers, weights and biases differ in count")

        for lhs, rhs in zip(self.layers, self.layers[1:]):
            if lhs.neurons != rhs.fan_in:
                raise ShapeMismatch(f"{lhs.neurons} neurons feed fan_in {rhs.fan_in}")

        weights, biases = [], []
        for layer, w, b in zip(self.layers, self.weights, self.biases):
            w = np.array(w, dtype=np.float64, copy=True)
            b = np.array(b, dtype=np.float64, copy=True)
            if w.shape != (layer.neurons, layer.fan_in) or b.shape != (layer.neurons,):
                raise ShapeMismatch(f"{layer} :: W{w.shape} b{b.shape}")
            if not (np.isfinite(w).all() and np.isfinite(b).all()):
                raise NonFiniteParameter(f"{layer} :: non-finite parameters")
            w.setflags(write=False)
            b.setflags(write=False)
            weights.append(w)
            biases.append(b)

        object.__setattr__(self, "layers", tuple(self.layers))
        object.__setattr__(self, "weights", tuple(weights))
        object.__setattr__(self, "biases", tuple(biases))

    def __eq__(self, other: Any) -> bool:
        return (
            isinstance(other, Network)
            and self.layers == other.layers
            and self.seed == other.seed
            and all(map(np.array_equal, self.weights, other.weights))
            and all(map(np.array_equal, self.biases, other.biases))
        )

    __hash__ = None  # type: ignore

    @property
    def inputs(self) -> int:
        return self.layers[0].fan_in

    @property
    def outputs(self) -> int:
        return self.layers[-1].neurons

    @property
    def activations(self) -> Tuple[Activation, ...]:
        return tuple(layer.activation for layer in self.layers)

    def params(self) -> Iterator[np.ndarray]:
        for w, b in zip(self.weights, self.biases):
            yield w
            yield b

    def with_params(
        self, weights: Sequence[np.ndarray], biases: Sequence[np.ndarray]
    ) -> "Network":
        return Network(
            layers=self.layers,
            weights=tuple(weights),
            biases=tuple(biases),
            seed=self.seed,
        )


@dataclass(frozen=True)
class Model:
    """
    A network with the column names it reads and predicts
    """

    network: Network
    inputs: Tuple[str, ...]
    targets: Tuple[str, ...]
