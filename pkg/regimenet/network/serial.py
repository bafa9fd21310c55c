from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, List, Sequence, Tuple

import numpy as np
from std2.pickle import DecodeError, new_decoder, new_encoder
from yaml import YAMLError, safe_dump, safe_load

from ..consts import MODEL_FORMAT, UTF8
from .types import Activation, LayerSpec, Model, ModelFormatError, Network

_SEP = "---"


@dataclass(frozen=True)
class _Header:
    format: str
    widths: Sequence[int]
    activations: Sequence[Activation]
    seed: int
    inputs: Sequence[str]
    targets: Sequence[str]


def _row(xs: np.ndarray) -> str:
    return " ".join(repr(float(x)) for x in xs)


def dumps_model(model: Model) -> str:
    net = model.network
    header = _Header(
        format=MODEL_FORMAT,
        widths=(net.inputs, *(layer.neurons for layer in net.layers)),
        activations=net.activations,
        seed=net.seed,
        inputs=model.inputs,
        targets=model.targets,
    )

    def cont() -> Iterator[str]:
        encoded = new_encoder(_Header)(header)
        yield safe_dump(encoded, sort_keys=False, allow_unicode=True).rstrip()
        yield _SEP
        for idx, (w, b) in enumerate(zip(net.weights, net.biases), start=1):
            rows, cols = w.shape
            yield f"W{idx} {rows} {cols}"
            yield from map(_row, w)
            yield f"b{idx} {len(b)}"
            yield _row(b)

    return "\n".join(cont()) + "\n"


def dump_model(model: Model, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps_model(model), encoding=UTF8)


def _floats(line: str, width: int) -> List[float]:
    try:
        xs = [float(tok) for tok in line.split()]
    except ValueError as e:
        raise ModelFormatError(f"bad number :: {e}")
    if len(xs) != width:
        raise ModelFormatError(f"expected {width} values, got {len(xs)}")
    return xs


def _expect(line: str, name: str, *dims: int) -> None:
    if line.split() != [name, *map(str, dims)]:
        raise ModelFormatError(f"expected {name} {dims}, got {line!r}")


def loads_model(text: str) -> Model:
    lines = text.splitlines()
    try:
        cut = lines.index(_SEP)
    except ValueError:
        raise ModelFormatError("missing header separator")

    try:
        header: _Header = new_decoder(_Header)(safe_load("\n".join(lines[:cut])))
    except (YAMLError, DecodeError) as e:
        raise ModelFormatError(f"bad header :: {e}")
    if header.format != MODEL_FORMAT:
        raise ModelFormatError(f"unknown format {header.format!r}")
    if len(header.widths) != len(header.activations) + 1:
        raise ModelFormatError("widths and activations disagree")

    body = iter(lines[cut + 1 :])
    layers: List[LayerSpec] = []
    weights: List[np.ndarray] = []
    biases: List[np.ndarray] = []
    try:
        for idx, (fan_in, neurons, act) in enumerate(
            zip(header.widths, header.widths[1:], header.activations), start=1
        ):
            _expect(next(body), f"W{idx}", neurons, fan_in)
            w = [_floats(next(body), width=fan_in) for _ in range(neurons)]
            _expect(next(body), f"b{idx}", neurons)
            b = _floats(next(body), width=neurons)
            layers.append(LayerSpec(fan_in=fan_in, neurons=neurons, activation=act))
            weights.append(np.array(w, dtype=np.float64))
            biases.append(np.array(b, dtype=np.float64))
    except StopIteration:
        raise ModelFormatError("truncated model file")

    network = Network(
        layers=tuple(layers),
        weights=tuple(weights),
        biases=tuple(biases),
        seed=header.seed,
    )
    model = Model(
        network=network,
        inputs=tuple(header.inputs),
        targets=tuple(header.targets),
    )
    if (len(model.inputs), len(model.targets)) != (network.inputs, network.outputs):
        raise ModelFormatError("column names disagree with layer widths")
    return model


def load_model(path: Path) -> Model:
    try:
        text = path.read_text(encoding=UTF8)
    except FileNotFoundError:
        raise ModelFormatError(f"file not found :: {path}")
    return loads_model(text)


def load_models(paths: Sequence[Path]) -> Tuple[Model, ...]:
    return tuple(map(load_model, paths))
