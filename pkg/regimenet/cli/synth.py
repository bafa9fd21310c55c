from pathlib import Path

from std2.pickle import DecodeError, new_decoder

from ..dataset.load import write_csv
from ..dataset.synthetic import generate_synthetic
from ..dataset.types import SyntheticSpec
from ..logging import log
from ..shared.errors import ConfigError
from .config import read_tree

_DECODER = new_decoder(SyntheticSpec)


def load_synthetic_spec(path: Path) -> SyntheticSpec:
    try:
        spec: SyntheticSpec = _DECODER(read_tree(path))
    except DecodeError as e:
        raise ConfigError(f"{path} :: {e}")
    return spec


def synth(spec: Path, rows: int, seed: int, out: Path) -> None:
    frame = generate_synthetic(load_synthetic_spec(spec), n=rows, seed=seed)
    write_csv(frame, out)
    log.info(
        "%s", f"{len(frame)} rows {frame.dates[0]} .. {frame.dates[-1]} -> {out}"
    )
