from datetime import date
from unittest import TestCase

import numpy as np

from ...regimenet.cli.synth import load_synthetic_spec
from ...regimenet.consts import TABLE1_YML
from ...regimenet.dataset.stats import descriptive_stats
from ...regimenet.dataset.synthetic import BadSeries, generate_synthetic
from ...regimenet.dataset.types import (
    MissingColumn,
    Role,
    SeriesSpec,
    Shock,
    SyntheticSpec,
)
from ..fixtures import two_regime_spec


class GenerateSynthetic(TestCase):
    def test_1(self) -> None:
        spec = two_regime_spec(shock_at=100)
        lhs = generate_synthetic(spec, n=200, seed=3)
        rhs = generate_synthetic(spec, n=200, seed=3)
        other = generate_synthetic(spec, n=200, seed=4)
        self.assertEqual(lhs, rhs)
        self.assertNotEqual(lhs, other)

    def test_2(self) -> None:
        frame = generate_synthetic(two_regime_spec(shock_at=100), n=200, seed=0)
        self.assertEqual(frame.dates[0], date(2020, 1, 1))
        self.assertEqual(frame.dates[-1], date(2020, 7, 18))
        self.assertEqual(frame.input_names, ("a", "b"))
        self.assertEqual(frame.target_names, ("s", "t"))

    def test_3(self) -> None:
        plain = two_regime_spec(shock_at=0)
        calm = SyntheticSpec(start=plain.start, columns=plain.columns)
        shocked = SyntheticSpec(
            start=plain.start,
            columns=plain.columns,
            shocks=(Shock(index=50, magnitude=0.2, columns=("s",)),),
        )
        lhs = generate_synthetic(calm, n=100, seed=0)
        rhs = generate_synthetic(shocked, n=100, seed=0)
        delta = rhs.column("s") - lhs.column("s")
        self.assertTrue(np.allclose(delta[:50], 0))
        self.assertTrue(np.allclose(delta[50:], 0.2 * 1000.0))
        self.assertTrue(np.array_equal(lhs.column("t"), rhs.column("t")))

    def test_4(self) -> None:
        frame = generate_synthetic(two_regime_spec(shock_at=1), n=5000, seed=0)
        corr = np.corrcoef(frame.column("a"), frame.column("s"))[0, 1]
        self.assertGreater(corr, 0.8)

    def test_5(self) -> None:
        spec = SyntheticSpec(
            start="2020-01-01",
            columns=(
                SeriesSpec(
                    name="v",
                    role=Role.input,
                    mean=600.0,
                    sd=900.0,
                    kurtosis=20.0,
                    lognormal=True,
                ),
                SeriesSpec(name="y", role=Role.target, mean=1.0, sd=1.0),
            ),
        )
        stats = descriptive_stats(generate_synthetic(spec, n=20_000, seed=1))["v"]
        self.assertGreater(stats.skewness, 1.0)
        self.assertAlmostEqual(stats.mean, 600.0, delta=60.0)

    def test_6(self) -> None:
        spec = SyntheticSpec(
            start="2020-01-01",
            columns=(
                SeriesSpec(name="x", role=Role.input, mean=0.0, sd=1.0, kurtosis=-3.0),
                SeriesSpec(name="y", role=Role.target, mean=0.0, sd=1.0),
            ),
        )
        with self.assertRaises(BadSeries):
            generate_synthetic(spec, n=10, seed=0)

    def test_7(self) -> None:
        spec = SyntheticSpec(
            start="2020-01-01",
            columns=(
                SeriesSpec(name="x", role=Role.input, mean=0.0, sd=1.0),
                SeriesSpec(
                    name="y", role=Role.target, mean=0.0, sd=1.0, loadings={"z": 1.0}
                ),
            ),
        )
        with self.assertRaises(BadSeries):
            generate_synthetic(spec, n=10, seed=0)

    def test_8(self) -> None:
        spec = SyntheticSpec(
            start="2020-01-01",
            columns=(SeriesSpec(name="x", role=Role.input, mean=0.0, sd=1.0),),
        )
        with self.assertRaises(MissingColumn):
            generate_synthetic(spec, n=10, seed=0)

    def test_9(self) -> None:
        spec = SyntheticSpec(
            start="2020-01-01",
            columns=(
                SeriesSpec(name="oil", role=Role.input, mean=77.2, sd=27.3),
                SeriesSpec(name="y", role=Role.target, mean=0.0, sd=1.0),
            ),
        )
        oil = descriptive_stats(generate_synthetic(spec, n=2000, seed=0))["oil"]
        self.assertAlmostEqual(oil.mean, 77.2, delta=1.5)
        self.assertAlmostEqual(oil.sd, 27.3, delta=1.5)

    def test_10(self) -> None:
        spec = SyntheticSpec(
            start="2020-01-01",
            columns=(
                SeriesSpec(
                    name="x", role=Role.input, mean=0.0, sd=1.0, persistence=0.95
                ),
                SeriesSpec(name="y", role=Role.target, mean=0.0, sd=1.0),
            ),
        )
        frame = generate_synthetic(spec, n=20_000, seed=2)
        x = frame.column("x")
        lag1 = np.corrcoef(x[:-1], x[1:])[0, 1]
        self.assertAlmostEqual(lag1, 0.95, delta=0.02)
        self.assertAlmostEqual(float(np.std(x)), 1.0, delta=0.15)


class Table1Preset(TestCase):
    def test_1(self) -> None:
        spec = load_synthetic_spec(TABLE1_YML)
        frame = generate_synthetic(spec, n=1845, seed=0)
        self.assertEqual(len(frame), 1845)
        self.assertEqual(len(frame.input_names), 5)
        self.assertEqual(frame.target_names, ("stock", "industry"))
        gold = descriptive_stats(frame)["gold"]
        self.assertAlmostEqual(gold.mean, 1275.0, delta=30.0)
        self.assertAlmostEqual(gold.sd, 219.6, delta=20.0)

    def test_2(self) -> None:
        preset = load_synthetic_spec(TABLE1_YML)
        calm = SyntheticSpec(start=preset.start, columns=preset.columns)
        stats = descriptive_stats(generate_synthetic(calm, n=1845, seed=0))
        for series in preset.columns:
            got = stats[series.name]
            self.assertAlmostEqual(got.mean, series.mean, delta=0.1 * series.sd)
            if series.lognormal:
                # the sample sd and kurtosis of a tail this heavy do not settle
                continue
            self.assertAlmostEqual(got.sd, series.sd, delta=0.1 * series.sd)
            self.assertAlmostEqual(got.kurtosis, series.kurtosis, delta=0.35)

    def test_3(self) -> None:
        preset = load_synthetic_spec(TABLE1_YML)
        frame = generate_synthetic(preset, n=1845, seed=0)
        for target in frame.target_names:
            corr = np.corrcoef(frame.column("exchange"), frame.column(target))[0, 1]
            self.assertGreater(corr, 0.5)
