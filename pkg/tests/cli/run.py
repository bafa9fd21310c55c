from contextlib import redirect_stderr
from datetime import date
from io import StringIO
from json import loads
from pathlib import Path
from tempfile import TemporaryDirectory
from unittest import TestCase

from ...regimenet.cli.config import load_config
from ...regimenet.cli.main import main
from ...regimenet.cli.run import fit_regime, fit_scaler
from ...regimenet.dataset.split import chronological_split, slice_regime
from ...regimenet.dataset.types import RegimeSpec, SplitFrame
from ...regimenet.metrics.report import load_report, read_predictions
from ...regimenet.network.serial import load_model
from ..fixtures import AFTER, BEFORE, START, ReadCounter, write_config, write_synthetic


def _experiment(tmp: str, regimes=(BEFORE, AFTER), extra=None) -> Path:
    root = Path(tmp)
    data = root / "data.csv"
    frame = write_synthetic(data)
    return write_config(
        root / "config.yml",
        data=data,
        frame=frame,
        out=root / "out",
        regimes=regimes,
        extra=extra,
    )


def _main(*argv: str) -> int:
    with redirect_stderr(StringIO()):
        return main(argv)


class Run(TestCase):
    def test_1(self) -> None:
        with TemporaryDirectory() as tmp:
            config = _experiment(tmp)
            code = _main("run", "--config", str(config))
            out = Path(tmp) / "out"
            found = out.glob("*/model*.txt")
            models = sorted(p.relative_to(out).as_posix() for p in found)
            report = load_report(out / "report.csv")
            self.assertTrue((out / "report.txt").is_file())
            text = (out / "report.txt").read_text(encoding="UTF-8")
            self.assertTrue((out / "manifest.json").is_file())
            self.assertTrue((out / "before" / "scaler.yml").is_file())
            self.assertTrue((out / "after" / "history_t.csv").is_file())
            series = read_predictions(out / "after" / "predictions_s.csv")

        self.assertEqual(code, 0)
        self.assertEqual(
            models,
            [
                "after/model_s.txt",
                "after/model_t.txt",
                "before/model_s.txt",
                "before/model_t.txt",
            ],
        )
        self.assertEqual(report.regimes, ("before", "after"))
        self.assertEqual(report.targets, ("s", "t"))
        self.assertEqual(len(report.cells), 4)
        self.assertEqual(len(series.dates), 200)
        self.assertEqual(series.dates[0], date(2020, 7, 19))
        self.assertEqual(series.blocks.count("test"), 40)
        lines = text.splitlines()
        training = next(line for line in lines if line.startswith("training ::"))
        for part in ("momentum 0.0", "batch size 32", "tolerance 1e-08", "seed 0"):
            self.assertIn(part, training)
        self.assertIn("hidden sigmoid, output linear", text)

    def test_2(self) -> None:
        with TemporaryDirectory() as tmp:
            config = _experiment(tmp)
            joint = ("--set", "network.targets=joint")
            code = _main("run", "--config", str(config), *joint)
            out = Path(tmp) / "out"
            models = sorted(p.name for p in out.glob("*/model*.txt"))
            model = load_model(out / "before" / "model.txt")
            report = load_report(out / "report.csv")

        self.assertEqual(code, 0)
        self.assertEqual(models, ["model.txt", "model.txt"])
        self.assertEqual(model.targets, ("s", "t"))
        self.assertEqual(model.network.layers[-1].neurons, 2)
        self.assertEqual(len(report.cells), 4)

    def test_3(self) -> None:
        with TemporaryDirectory() as tmp:
            root = Path(tmp)
            config = _experiment(tmp)
            lhs, rhs, again = root / "lhs", root / "rhs", root / "again"
            codes = (
                _main("run", "--config", str(config), "--seed", "7", "--out", str(lhs)),
                _main("run", "--config", str(config), "--seed", "7", "--out", str(rhs)),
                _main(
                    "run",
                    "--config",
                    str(lhs / "manifest.json"),
                    "--out",
                    str(again),
                ),
            )
            manifest = loads((lhs / "manifest.json").read_text(encoding="UTF-8"))
            for name in ("report.csv", "report.txt"):
                self.assertEqual((lhs / name).read_bytes(), (rhs / name).read_bytes())
                self.assertEqual((lhs / name).read_bytes(), (again / name).read_bytes())
            self.assertEqual(
                (lhs / "before" / "model_s.txt").read_bytes(),
                (again / "before" / "model_s.txt").read_bytes(),
            )

        self.assertEqual(codes, (0, 0, 0))
        self.assertEqual(manifest["network"]["seed"], 7)
        self.assertEqual(manifest["training"]["seed"], 7)
        self.assertEqual([r["name"] for r in manifest["regimes"]], ["before", "after"])

    def test_4(self) -> None:
        tiny = ("tiny", START, date(2020, 1, 6))
        with TemporaryDirectory() as tmp:
            config = _experiment(tmp, regimes=(tiny, AFTER))
            code = _main("run", "--config", str(config))
            out = Path(tmp) / "out"
            report = load_report(out / "report.csv")
            text = (out / "report.txt").read_text(encoding="UTF-8")
            tiny_written = (out / "tiny").exists()

        self.assertEqual(code, 2)
        self.assertEqual(report.regimes, ("after",))
        self.assertIn("tiny :: failed, FrameTooSmall", text)
        self.assertFalse(tiny_written)

    def test_5(self) -> None:
        with TemporaryDirectory() as tmp:
            config = _experiment(tmp)
            code = _main("run", "--config", str(config), "--set", "workers=1")
            serial = (Path(tmp) / "out" / "report.csv").read_bytes()
            _main("run", "--config", str(config), "--set", "workers=4")
            pooled = (Path(tmp) / "out" / "report.csv").read_bytes()

        self.assertEqual(code, 0)
        self.assertEqual(serial, pooled)


class Leakage(TestCase):
    def test_1(self) -> None:
        with TemporaryDirectory() as tmp:
            config = _experiment(tmp)
            settings = load_config(config)
            frame = write_synthetic(Path(tmp) / "data.csv")

        name, start, end = BEFORE
        sliced = slice_regime(frame, regime=RegimeSpec(name=name, start=start, end=end))
        split = chronological_split(sliced, fractions=settings.split.fractions)
        counter = ReadCounter.of(split.test)
        guarded = SplitFrame(
            train=split.train,
            validation=split.validation,
            test=counter,
            fractions=split.fractions,
        )

        counter.arm()
        scaler = fit_scaler(guarded, frame=sliced, fit_global=False)
        fitted = fit_regime(guarded, scaler=scaler, settings=settings)

        self.assertEqual(counter.reads, 0)
        self.assertEqual(len(fitted), 2)
        self.assertEqual(scaler.columns[0].x_max, float(split.train.column("a").max()))

    def test_2(self) -> None:
        with TemporaryDirectory() as tmp:
            settings = load_config(_experiment(tmp))
            frame = write_synthetic(Path(tmp) / "data.csv")

        split = chronological_split(frame, fractions=settings.split.fractions)
        scaler = fit_scaler(split, frame=frame, fit_global=True)
        self.assertEqual(scaler.columns[2].x_max, float(frame.column("s").max()))


class ExitCodes(TestCase):
    def test_1(self) -> None:
        with TemporaryDirectory() as tmp:
            config = _experiment(tmp)
            codes = (
                _main("run", "--config", str(config), "--set", "split.train=0.9"),
                _main("run", "--config", str(Path(tmp) / "missing.yml")),
                _main("run", "--config", str(config), "--set", "network.hidden=0"),
                _main("bogus"),
            )
        self.assertEqual(codes, (1, 1, 1, 1))

    def test_2(self) -> None:
        overlapping = (BEFORE, ("late", date(2020, 7, 1), date(2020, 12, 1)))
        with TemporaryDirectory() as tmp:
            config = _experiment(tmp, regimes=overlapping)
            err = StringIO()
            with redirect_stderr(err):
                code = main(("run", "--config", str(config)))
        self.assertEqual(code, 1)
        self.assertIn("BadRegime", err.getvalue())

    def test_3(self) -> None:
        training = {"learning_rate": 1000.0, "max_epochs": 500, "patience": 500}
        extra = {"training": training}
        with TemporaryDirectory() as tmp:
            config = _experiment(tmp, extra=extra)
            code = _main("run", "--config", str(config))
        self.assertEqual(code, 3)
