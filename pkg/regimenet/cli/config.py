from datetime import date
from json import JSONDecodeError, dumps, loads
from pathlib import Path
from typing import Any, Iterator, Mapping, Optional, Sequence

from std2.configparser import hydrate
from std2.pickle import DecodeError, new_decoder, new_encoder
from std2.tree import merge, recur_sort
from yaml import YAMLError, safe_load

from ..consts import CONFIG_YML, UTF8
from ..dataset.split import check_fractions
from ..dataset.types import RegimeSpec, check_disjoint
from ..shared.errors import ConfigError
from ..shared.settings import ExperimentConfig

_DECODER = new_decoder(ExperimentConfig)
_ENCODER = new_encoder(ExperimentConfig)


def _isoformat(tree: Any) -> Any:
    if isinstance(tree, date):
        return tree.isoformat()
    elif isinstance(tree, Mapping):
        return {k: _isoformat(v) for k, v in tree.items()}
    elif isinstance(tree, (list, tuple)):
        return [_isoformat(v) for v in tree]
    else:
        return tree


def read_tree(path: Path) -> Any:
    """
    YAML, or JSON for `.json` files (written manifests)
    """

    try:
        text = path.read_text(encoding=UTF8)
    except FileNotFoundError:
        raise ConfigError(f"file not found :: {path}")
    try:
        tree = loads(text) if path.suffix == ".json" else safe_load(text)
    except (YAMLError, JSONDecodeError) as e:
        raise ConfigError(f"{path} :: {e}")
    return _isoformat(tree or {})


def parse_value(raw: str) -> Any:
    """
    `--set key=value` values: JSON first, then YAML, else the raw string
    """

    try:
        return loads(raw)
    except JSONDecodeError:
        pass
    try:
        return _isoformat(safe_load(raw))
    except YAMLError:
        return raw


def parse_sets(sets: Sequence[str]) -> Mapping[str, Any]:
    acc = {}
    for assignment in sets:
        key, sep, raw = assignment.partition("=")
        if not sep or not key.strip():
            raise ConfigError(f"expected key=value :: {assignment!r}")
        acc[key.strip()] = parse_value(raw)
    return hydrate(acc)


def _resolve(tree: Any, base: Path) -> Any:
    try:
        raw = tree["data"]["path"]
    except (KeyError, TypeError):
        return tree
    if not isinstance(raw, str) or not raw:
        return tree
    path = Path(raw).expanduser()
    resolved = path if path.is_absolute() else base / path
    return merge(tree, {"data": {"path": str(resolved.resolve())}}, replace=True)


def load_config(
    path: Optional[Path], overrides: Sequence[Mapping[str, Any]] = ()
) -> ExperimentConfig:
    """
    defaults <- config file <- overrides, later wins

    A relative `data.path` resolves against the file that names it
    """

    defaults = safe_load(CONFIG_YML.read_text(encoding=UTF8))
    user = _resolve(read_tree(path), base=path.resolve().parent) if path else {}
    if not isinstance(user, Mapping):
        raise ConfigError(f"{path} :: expected a mapping at the top level")

    merged = merge(defaults, user, replace=True)
    for override in overrides:
        merged = merge(merged, _resolve(override, base=Path.cwd()), replace=True)

    try:
        config: ExperimentConfig = _DECODER(merged)
    except DecodeError as e:
        raise ConfigError(f"bad config :: {e}")
    return config


def regime_specs(config: ExperimentConfig) -> Sequence[RegimeSpec]:
    return tuple(decl.spec() for decl in config.regimes)


def _problems(
    config: ExperimentConfig, need_data: bool, need_roles: bool
) -> Iterator[str]:
    names = [col.name for col in config.data.columns]
    if len(set(names)) != len(names):
        yield f"duplicate column names :: {names}"
    if not names:
        yield "no column declared"
    if need_roles and not config.data.inputs:
        yield "no input column declared"
    if need_roles and not config.data.targets:
        yield "no target column declared"
    if need_data and not Path(config.data.path).is_file():
        yield f"file not found :: {config.data.path or '<data.path unset>'}"
    if config.network.hidden is not None and config.network.hidden < 1:
        yield f"network.hidden must be >= 1 :: {config.network.hidden}"
    if config.network.hidden_layers < 1:
        yield f"network.hidden_layers must be >= 1 :: {config.network.hidden_layers}"
    if not config.evaluation.epsilon > 0:
        yield f"evaluation.epsilon must be > 0 :: {config.evaluation.epsilon}"
    if config.workers < 1:
        yield f"workers must be >= 1 :: {config.workers}"


def validate(
    config: ExperimentConfig, need_data: bool = True, need_roles: bool = True
) -> None:
    """
    Raises on the first problem, before any work is done
    """

    for problem in _problems(config, need_data=need_data, need_roles=need_roles):
        raise ConfigError(problem)
    check_fractions(config.split.fractions)
    check_disjoint(regime_specs(config))


def encode_manifest(config: ExperimentConfig) -> str:
    encoded = _ENCODER(config)
    json = dumps(
        recur_sort(encoded), check_circular=False, ensure_ascii=False, indent=2
    )
    return json + "\n"
