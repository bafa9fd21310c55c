import sys
from argparse import ArgumentParser, Namespace
from pathlib import Path
from typing import Any, Mapping, Optional, Sequence

from ..consts import TABLE1_YML
from ..logging import log
from ..shared.errors import ConfigError, RegimenetError
from ..shared.settings import ExperimentConfig
from .config import load_config, parse_sets, validate
from .plot import PlotKind, plot
from .predict import predict_csv
from .run import run
from .stats import stats
from .synth import synth


def _parse_args(argv: Optional[Sequence[str]]) -> Namespace:
    parser = ArgumentParser(prog="regimenet")

    experiment = ArgumentParser(add_help=False)
    experiment.add_argument("--config", type=Path)
    experiment.add_argument("--data", type=Path)
    experiment.add_argument("--out")
    experiment.add_argument("--set", action="append", default=[], metavar="KEY=VALUE")

    sub_parsers = parser.add_subparsers(dest="command", required=True)

    s_stats = sub_parsers.add_parser("stats", parents=(experiment,))
    s_stats.add_argument("--by-regime", action="store_true", default=False)

    s_run = sub_parsers.add_parser("run", parents=(experiment,))
    s_run.add_argument("--seed", type=int)
    s_run.add_argument("--fit-global", action="store_true", default=None)

    s_predict = sub_parsers.add_parser("predict")
    s_predict.add_argument("--model", type=Path, nargs="+", required=True)
    s_predict.add_argument("--scaler", type=Path, required=True)
    s_predict.add_argument("--data", type=Path, required=True)
    s_predict.add_argument("--out", type=Path, required=True)
    s_predict.add_argument("--config", type=Path)

    s_plot = sub_parsers.add_parser("plot")
    s_plot.add_argument("predictions", type=Path)
    s_plot.add_argument(
        "--kind",
        choices=tuple(kind.name for kind in PlotKind),
        default=PlotKind.overlay.name,
    )
    s_plot.add_argument("--title", default="")
    s_plot.add_argument("--out", type=Path)

    s_synth = sub_parsers.add_parser("synth")
    s_synth.add_argument("--spec", type=Path, default=TABLE1_YML)
    s_synth.add_argument("--rows", type=int, default=1845)
    s_synth.add_argument("--seed", type=int, default=0)
    s_synth.add_argument("--out", type=Path, required=True)

    return parser.parse_args(argv)


def _overrides(args: Namespace) -> Sequence[Mapping[str, Any]]:
    flags = {}
    if getattr(args, "seed", None) is not None:
        flags["network"] = {"seed": args.seed}
        flags["training"] = {"seed": args.seed}
    if getattr(args, "fit_global", None):
        flags["fit_global"] = True
    if args.out is not None:
        flags["output"] = str(args.out)
    if args.data is not None:
        flags["data"] = {"path": str(args.data)}
    return parse_sets(args.set), flags


def _experiment(args: Namespace, need_roles: bool) -> ExperimentConfig:
    settings = load_config(args.config, overrides=_overrides(args))
    validate(settings, need_data=True, need_roles=need_roles)
    return settings


def _dispatch(args: Namespace) -> int:
    command = args.command
    if command == "stats":
        settings = _experiment(args, need_roles=False)
        print(stats(settings, by_regime=args.by_regime), end="")
        return 0

    elif command == "run":
        return run(_experiment(args, need_roles=True))

    elif command == "predict":
        data = load_config(args.config).data if args.config else None
        predict_csv(
            args.model, scaler=args.scaler, data=args.data, out=args.out, settings=data
        )
        return 0

    elif command == "plot":
        out = args.out or args.predictions.with_suffix(".svg")
        plot(args.predictions, out=out, kind=PlotKind[args.kind], title=args.title)
        return 0

    elif command == "synth":
        synth(args.spec, rows=args.rows, seed=args.seed, out=args.out)
        return 0

    else:
        assert False


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    0 ok, 1 config error, 2 data error, 3 training error
    """

    try:
        args = _parse_args(argv)
    except SystemExit as e:
        return ConfigError.code if e.code else 0

    try:
        return _dispatch(args)
    except RegimenetError as e:
        print(f"{type(e).__name__} :: {e}", file=sys.stderr)
        return e.code
    except Exception as e:
        log.exception("%s", e)
        return RegimenetError.code
