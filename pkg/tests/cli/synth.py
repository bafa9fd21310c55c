from contextlib import redirect_stderr
from io import StringIO
from pathlib import Path
from tempfile import TemporaryDirectory
from unittest import TestCase

from yaml import safe_dump

from ...regimenet.cli.main import main


def _main(*argv: str) -> int:
    with redirect_stderr(StringIO()):
        return main(argv)


class Synth(TestCase):
    def test_1(self) -> None:
        with TemporaryDirectory() as tmp:
            lhs, rhs = Path(tmp) / "lhs.csv", Path(tmp) / "rhs.csv"
            codes = tuple(_main("synth", "--out", str(path)) for path in (lhs, rhs))
            lines = lhs.read_text(encoding="UTF-8").splitlines()
            same = lhs.read_bytes() == rhs.read_bytes()

        self.assertEqual(codes, (0, 0))
        self.assertTrue(same)
        self.assertEqual(
            lines[0], "date,oil,gas,gold,exchange,volume,stock,industry"
        )
        self.assertEqual(len(lines), 1 + 1845)
        self.assertTrue(lines[1].startswith("2009-01-01,"))

    def test_2(self) -> None:
        with TemporaryDirectory() as tmp:
            lhs, rhs = Path(tmp) / "lhs.csv", Path(tmp) / "rhs.csv"
            _main("synth", "--out", str(lhs), "--seed", "1")
            _main("synth", "--out", str(rhs), "--seed", "2")
            same = lhs.read_bytes() == rhs.read_bytes()
        self.assertFalse(same)

    def test_3(self) -> None:
        with TemporaryDirectory() as tmp:
            out = Path(tmp) / "short.csv"
            code = _main("synth", "--out", str(out), "--rows", "100")
        self.assertEqual(code, 1)

    def test_4(self) -> None:
        spec = {
            "start": "2021-03-01",
            "columns": [
                {"name": "x", "role": "input", "mean": 10.0, "sd": 1.0},
                {
                    "name": "y",
                    "role": "target",
                    "mean": 5.0,
                    "sd": 2.0,
                    "loadings": {"x": 1.0},
                },
            ],
        }
        with TemporaryDirectory() as tmp:
            path = Path(tmp) / "spec.yml"
            path.write_text(safe_dump(spec), encoding="UTF-8")
            out = Path(tmp) / "small.csv"
            argv = ("--spec", str(path), "--out", str(out), "--rows", "30")
            code = _main("synth", *argv)
            lines = out.read_text(encoding="UTF-8").splitlines()
        self.assertEqual(code, 0)
        self.assertEqual(lines[0], "date,x,y")
        self.assertEqual(len(lines), 31)
        self.assertTrue(lines[-1].startswith("2021-03-30,"))
