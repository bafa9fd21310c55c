from pathlib import Path
from typing import Iterator, Optional, Sequence

from ..dataset.load import load_csv, write_csv
from ..dataset.types import ColumnDecl, MissingPolicy, Role, Schema
from ..logging import log
from ..metrics.report import predict
from ..network.serial import load_models
from ..network.types import Model
from ..scaling.scaler import load_scaler
from ..shared.settings import DataSettings


def _schema(models: Sequence[Model], data: Optional[DataSettings]) -> Schema:
    declared = {col.name: col for col in data.columns} if data else {}

    def cont() -> Iterator[ColumnDecl]:
        seen = set()
        for model in models:
            for name in model.inputs:
                if name not in seen:
                    seen.add(name)
                    log_scale = declared[name].log if name in declared else False
                    yield ColumnDecl(name=name, role=Role.input, log=log_scale)

    return Schema(
        columns=tuple(cont()),
        missing=data.missing if data else MissingPolicy.reject,
        sort=data.sort if data else False,
    )


def predict_csv(
    models: Sequence[Path],
    scaler: Path,
    data: Path,
    out: Path,
    settings: Optional[DataSettings] = None,
) -> int:
    """
    `date,<target>...` in the units the inputs were loaded in

    Log flags, missing policy and sorting come from `settings` when given
    """

    loaded = load_models(models)
    fitted = load_scaler(scaler)
    frame = load_csv(data, schema=_schema(loaded, data=settings), require_targets=False)
    predicted = predict(loaded, scaler=fitted, frame=frame)
    write_csv(predicted, out)
    log.info("%s", f"{len(predicted)} predictions -> {out}")
    return len(predicted)
