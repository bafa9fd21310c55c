from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Optional, Sequence, Tuple

import numpy as np

from ..consts import UTF8
from ..dataset.load import load_csv
from ..dataset.split import chronological_split, slice_regime
from ..dataset.types import RegimeSpec, SplitFrame, TimeSeriesFrame
from ..logging import log
from ..metrics.report import (
    EvaluationReport,
    PredictionSeries,
    combine,
    dump_report_csv,
    evaluate,
    predict,
    render_report,
    write_predictions,
)
from ..network.build import build_network, hidden_neuron_count
from ..network.serial import dump_model
from ..network.types import Model
from ..scaling.scaler import MinMaxScaler, dump_scaler, fit, transform
from ..shared.errors import RegimenetError
from ..shared.settings import ExperimentConfig, TargetMode
from ..shared.timeit import timeit
from ..trainer.train import train, write_history
from ..trainer.types import TrainingReport
from .config import encode_manifest, regime_specs

WHOLE = "all"


@dataclass(frozen=True)
class Fitted:
    model: Model
    hidden: int
    training: TrainingReport


@dataclass(frozen=True)
class RegimeOutcome:
    regime: str
    fitted: Sequence[Fitted]
    report: Optional[EvaluationReport]
    error: Optional[RegimenetError]


def fit_scaler(
    split: SplitFrame, frame: TimeSeriesFrame, fit_global: bool
) -> MinMaxScaler:
    """
    Training block only, unless `fit_global`
    """

    return fit(frame if fit_global else split.train)


def _groups(settings: ExperimentConfig) -> Sequence[Tuple[str, ...]]:
    targets = settings.data.targets
    if settings.network.targets is TargetMode.joint:
        return (targets,)
    else:
        return tuple((target,) for target in targets)


def fit_regime(
    split: SplitFrame, scaler: MinMaxScaler, settings: ExperimentConfig
) -> Sequence[Fitted]:
    """
    One network per target group, trained on scaled train / validation blocks

    The test block is carried along unread
    """

    inputs = settings.data.inputs
    train_block = transform(scaler, split.train)
    validation_block = transform(scaler, split.validation)

    def cont() -> Iterator[Fitted]:
        for targets in _groups(settings):
            names = (*inputs, *targets)
            scaled = SplitFrame(
                train=train_block.select(names),
                validation=validation_block.select(names),
                test=split.test,
                fractions=split.fractions,
            )
            hidden = settings.network.hidden or hidden_neuron_count(
                len(inputs), len(targets), training_patterns=len(split.train)
            )
            log.info(
                "%s",
                f"{' + '.join(targets)} :: {len(inputs)} -> {hidden} -> {len(targets)}"
                f" ({len(split.train)} training rows)",
            )
            net = build_network(
                len(inputs),
                hidden=hidden,
                outputs=len(targets),
                hidden_activation=settings.network.hidden_activation,
                output_activation=settings.network.output_activation,
                seed=settings.network.seed,
                depth=settings.network.hidden_layers,
            )
            report = train(net, split=scaled, config=settings.training)
            model = Model(network=report.final_network, inputs=inputs, targets=targets)
            yield Fitted(model=model, hidden=hidden, training=report)

    return tuple(cont())


def _suffix(settings: ExperimentConfig, targets: Sequence[str]) -> str:
    return "" if settings.network.targets is TargetMode.joint else f"_{targets[0]}"


def _blocks(split: SplitFrame) -> Tuple[str, ...]:
    return (
        *("train" for _ in split.train.dates),
        *("validation" for _ in split.validation.dates),
        *("test" for _ in split.test.dates),
    )


def _write(
    out: Path,
    settings: ExperimentConfig,
    frame: TimeSeriesFrame,
    split: SplitFrame,
    scaler: MinMaxScaler,
    fitted: Sequence[Fitted],
) -> None:
    out.mkdir(parents=True, exist_ok=True)
    dump_scaler(scaler, out / "scaler.yml")
    for f in fitted:
        suffix = _suffix(settings, targets=f.model.targets)
        dump_model(f.model, out / f"model{suffix}.txt")
        write_history(f.training, out / f"history{suffix}.csv")

    models = tuple(f.model for f in fitted)
    predicted = predict(models, scaler=scaler, frame=frame)
    blocks = _blocks(split)
    for target in predicted.names:
        series = PredictionSeries(
            dates=frame.dates,
            blocks=blocks,
            actual=np.array(frame.column(target)),
            predicted=np.array(predicted.column(target)),
        )
        write_predictions(series, out / f"predictions_{target}.csv")


def run_regime(
    frame: TimeSeriesFrame, regime: Optional[RegimeSpec], settings: ExperimentConfig
) -> RegimeOutcome:
    name = regime.name if regime else WHOLE
    try:
        with timeit("REGIME", name, force=True):
            sliced = slice_regime(frame, regime=regime) if regime else frame
            split = chronological_split(sliced, fractions=settings.split.fractions)
            sizes = " / ".join(
                str(len(block)) for block in (split.train, split.validation, split.test)
            )
            log.info(
                "%s",
                f"{name} :: {len(sliced)} rows, {sliced.dates[0]} .. {sliced.dates[-1]}"
                f", split {sizes}",
            )
            scaler = fit_scaler(split, frame=sliced, fit_global=settings.fit_global)
            fitted = fit_regime(split, scaler=scaler, settings=settings)
            models = tuple(f.model for f in fitted)
            report = evaluate(
                models,
                scaler=scaler,
                split=split,
                regime=name,
                epsilon=settings.evaluation.epsilon,
            )
            _write(
                Path(settings.output) / name,
                settings=settings,
                frame=sliced,
                split=split,
                scaler=scaler,
                fitted=fitted,
            )
    except RegimenetError as e:
        log.error("%s", f"{name} :: {type(e).__name__} :: {e}")
        return RegimeOutcome(regime=name, fitted=(), report=None, error=e)
    else:
        return RegimeOutcome(regime=name, fitted=fitted, report=report, error=None)


def _preamble(
    settings: ExperimentConfig, outcomes: Sequence[RegimeOutcome]
) -> Iterator[str]:
    net, training = settings.network, settings.training
    yield (
        f"network :: {net.hidden_layers} x hidden {net.hidden_activation.name}"
        f", output {net.output_activation.name}, targets {net.targets.name}"
        f", seed {net.seed}"
    )
    yield (
        f"training :: lr {training.learning_rate}, momentum {training.momentum}"
        f", {training.batch_mode.name} batch, batch size {training.batch_size}"
        f", max {training.max_epochs} epochs, patience {training.patience}"
        f", tolerance {training.tolerance}, seed {training.seed}"
    )
    split, scope = settings.split, "global" if settings.fit_global else "train"
    yield (
        f"split :: train {split.train}, validation {split.validation}"
        f", test {split.test}, scaler {scope}"
    )
    yield f"hit rate :: |s - o| / |s| <= {settings.evaluation.epsilon}"
    for outcome in outcomes:
        if outcome.error:
            yield f"{outcome.regime} :: failed, {type(outcome.error).__name__}"
        for f in outcome.fitted:
            yield (
                f"{outcome.regime} / {' + '.join(f.model.targets)} :: hidden {f.hidden}"
                f", {f.training.epochs_run} epochs, {f.training.stop_reason.name}"
                f", best @ {f.training.best_epoch}"
            )


def run(settings: ExperimentConfig) -> int:
    frame = load_csv(Path(settings.data.path), schema=settings.data.schema)
    regimes: Sequence[Optional[RegimeSpec]] = regime_specs(settings) or (None,)

    with ThreadPoolExecutor(max_workers=settings.workers) as pool:
        outcomes = tuple(
            pool.map(
                lambda regime: run_regime(frame, regime=regime, settings=settings),
                regimes,
            )
        )

    out = Path(settings.output)
    out.mkdir(parents=True, exist_ok=True)
    report = combine(tuple(o.report for o in outcomes if o.report))
    dump_report_csv(report, out / "report.csv")
    preamble = tuple(_preamble(settings, outcomes=outcomes))
    (out / "report.txt").write_text(
        render_report(report, preamble=preamble), encoding=UTF8
    )
    (out / "manifest.json").write_text(encode_manifest(settings), encoding=UTF8)

    for outcome in outcomes:
        if outcome.error:
            return outcome.error.code
    else:
        return 0
