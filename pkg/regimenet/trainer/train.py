from math import isfinite
from pathlib import Path
from typing import Iterator, List, Sequence

import numpy as np
from numpy.random import Generator, default_rng
from pandas import DataFrame

from ..consts import UTF8
from ..dataset.types import SplitFrame
from ..logging import log
from ..network.forward import forward_batch
from ..network.types import Network, NonFiniteParameter, ShapeMismatch
from ..shared.settings import BatchMode, TrainingConfig
from ..shared.timeit import timeit
from .backprop import check_differentiable, gradients
from .loss import mse_loss
from .types import DivergedLoss, StopReason, TrainingReport

_CALM_EPOCHS = 3


def _batches(rng: Generator, n: int, config: TrainingConfig) -> Iterator[np.ndarray]:
    if config.batch_mode is BatchMode.full:
        yield np.arange(n)
    else:
        order = rng.permutation(n)
        for lo in range(0, n, config.batch_size):
            yield order[lo : lo + config.batch_size]


def _check(net: Network, split: SplitFrame) -> None:
    x, y = split.train.inputs, split.train.targets
    if x.shape[1] != net.inputs or y.shape[1] != net.outputs:
        raise ShapeMismatch(
            f"network {net.inputs} -> {net.outputs}, data {x.shape[1]} -> {y.shape[1]}"
        )


def train(net: Network, split: SplitFrame, config: TrainingConfig) -> TrainingReport:
    """
    Gradient descent with optional momentum on the (scaled) training block

    Stops on a flat training loss, on a stale validation loss (best weights
    restored), or after `max_epochs`
    """

    check_differentiable(net)
    _check(net, split=split)

    x_train, y_train = split.train.inputs, split.train.targets
    x_val, y_val = split.validation.inputs, split.validation.targets

    rng = default_rng(config.seed)
    weights = [np.array(w) for w in net.weights]
    biases = [np.array(b) for b in net.biases]
    velocity = [np.zeros_like(p) for p in (*weights, *biases)]

    current = net
    prev_loss = mse_loss(forward_batch(net, x_train), y_train)
    best_val = mse_loss(forward_batch(net, x_val), y_val)
    best_net, best_epoch = net, 0

    train_hist: List[float] = []
    val_hist: List[float] = []
    calm, stale = 0, 0
    reason = StopReason.max_epochs

    with timeit("TRAIN", f"{net.inputs}->{net.outputs}"), np.errstate(
        over="ignore", invalid="ignore"
    ):
        for epoch in range(1, config.max_epochs + 1):
            stationary = True
            for idx in _batches(rng, n=len(x_train), config=config):
                grads = gradients(current, inputs=x_train[idx], targets=y_train[idx])
                stationary = stationary and grads.stationary
                params = (*weights, *biases)
                steps = (*grads.weights, *grads.biases)
                for p, v, g in zip(params, velocity, steps):
                    v *= config.momentum
                    v -= config.learning_rate * g
                    p += v
                try:
                    current = net.with_params(weights, biases)
                except NonFiniteParameter:
                    raise DivergedLoss(
                        f"parameters overflowed at epoch {epoch}, "
                        f"learning rate {config.learning_rate} is too high"
                    )

            train_loss = mse_loss(forward_batch(current, x_train), y_train)
            val_loss = mse_loss(forward_batch(current, x_val), y_val)
            if not (isfinite(train_loss) and isfinite(val_loss)):
                raise DivergedLoss(
                    f"loss became non-finite at epoch {epoch}, "
                    f"learning rate {config.learning_rate} is too high"
                )
            train_hist.append(train_loss)
            val_hist.append(val_loss)

            if val_loss < best_val:
                best_val, best_net, best_epoch = val_loss, current, epoch
                stale = 0
            else:
                stale += 1

            calm = calm + 1 if abs(train_loss - prev_loss) < config.tolerance else 0
            prev_loss = train_loss

            if stationary or calm >= _CALM_EPOCHS:
                reason = StopReason.converged
                break
            elif stale >= config.patience:
                reason = StopReason.early_stopped
                current = best_net
                break

    log.info(
        "%s",
        f"trained {len(train_hist)} epochs :: {reason.name}, "
        f"train {train_hist[-1]:.3e}, best validation {best_val:.3e} @ {best_epoch}",
    )
    return TrainingReport(
        epochs_run=len(train_hist),
        train_loss_history=tuple(train_hist),
        validation_loss_history=tuple(val_hist),
        stop_reason=reason,
        best_epoch=best_epoch,
        config=config,
        final_network=current,
    )


def _cells(xs: Sequence[float]) -> Sequence[str]:
    return [repr(float(x)) for x in xs]


def write_history(report: TrainingReport, path: Path) -> None:
    df = DataFrame(
        {
            "epoch": [str(e) for e in range(1, report.epochs_run + 1)],
            "train_loss": _cells(report.train_loss_history),
            "val_loss": _cells(report.validation_loss_history),
        }
    )
    path.parent.mkdir(parents=True, exist_ok=True)
    df.to_csv(path, index=False, encoding=UTF8, lineterminator="\n")
