from datetime import date, timedelta
from math import floor
from unittest import TestCase

import numpy as np

from ...regimenet.dataset.split import (
    block_sizes,
    check_fractions,
    chronological_split,
    slice_regime,
)
from ...regimenet.dataset.types import (
    BadFractions,
    BadRegime,
    EmptyRegime,
    FrameTooSmall,
    RegimeSpec,
    Role,
    check_disjoint,
    concat,
)
from ..fixtures import frame_of

_FRACTIONS = (0.75, 0.20, 0.05)


def _frame(n: int):
    columns = (("x", Role.input), ("y", Role.target))
    values = np.arange(2 * n, dtype=np.float64).reshape(n, 2)
    return frame_of(columns, values=values)


class BlockSizes(TestCase):
    def test_1(self) -> None:
        for n in (10, 100, 1845):
            train, validation, test = block_sizes(n, fractions=_FRACTIONS)
            self.assertEqual(train, floor(0.75 * n))
            self.assertEqual(test, floor(0.20 * n))
            self.assertEqual(validation, n - train - test)

    def test_2(self) -> None:
        self.assertEqual(block_sizes(10, fractions=_FRACTIONS), (7, 1, 2))
        self.assertEqual(block_sizes(100, fractions=_FRACTIONS), (75, 5, 20))
        self.assertEqual(block_sizes(1845, fractions=_FRACTIONS), (1383, 93, 369))


class ChronologicalSplit(TestCase):
    def test_1(self) -> None:
        for n in (10, 100, 1845):
            frame = _frame(n)
            split = chronological_split(frame, fractions=_FRACTIONS)
            self.assertEqual(
                (len(split.train), len(split.validation), len(split.test)),
                block_sizes(n, fractions=_FRACTIONS),
            )
            self.assertLess(split.train.dates[-1], split.validation.dates[0])
            self.assertLess(split.validation.dates[-1], split.test.dates[0])
            self.assertEqual(concat((split.train, split.validation, split.test)), frame)

    def test_2(self) -> None:
        with self.assertRaises(FrameTooSmall):
            chronological_split(_frame(5), fractions=_FRACTIONS)

    def test_3(self) -> None:
        with self.assertRaises(FrameTooSmall):
            chronological_split(_frame(10), fractions=(0.9, 0.05, 0.05))

    def test_4(self) -> None:
        split = chronological_split(_frame(20), fractions=_FRACTIONS)
        narrowed = split.select(("y",))
        self.assertEqual(narrowed.train.names, ("y",))
        self.assertEqual(narrowed.test.dates, split.test.dates)


class Fractions(TestCase):
    def test_1(self) -> None:
        check_fractions(_FRACTIONS)
        check_fractions((0.7, 0.2, 0.1))

    def test_2(self) -> None:
        for fractions in ((0.75, 0.2, 0.1), (0.8, 0.2, 0.0), (1.2, -0.1, -0.1)):
            with self.assertRaises(BadFractions):
                check_fractions(fractions)


class Regimes(TestCase):
    def test_1(self) -> None:
        frame = _frame(30)
        regime = RegimeSpec(name="r", start=date(2020, 1, 5), end=date(2020, 1, 15))
        sliced = slice_regime(frame, regime=regime)
        self.assertEqual(len(sliced), 10)
        self.assertEqual(sliced.dates[0], date(2020, 1, 5))
        self.assertEqual(sliced.dates[-1], date(2020, 1, 14))

    def test_2(self) -> None:
        regime = RegimeSpec(name="r", start=date(2021, 1, 1), end=date(2021, 2, 1))
        with self.assertRaises(EmptyRegime):
            slice_regime(_frame(30), regime=regime)

    def test_3(self) -> None:
        with self.assertRaises(BadRegime):
            RegimeSpec(name="r", start=date(2020, 2, 1), end=date(2020, 1, 1))

    def test_4(self) -> None:
        lhs = RegimeSpec(name="a", start=date(2020, 1, 1), end=date(2020, 2, 1))
        rhs = RegimeSpec(name="b", start=date(2020, 2, 1), end=date(2020, 3, 1))
        check_disjoint((lhs, rhs))
        overlapping = RegimeSpec(
            name="c", start=date(2020, 1, 31), end=date(2020, 3, 1)
        )
        with self.assertRaises(BadRegime):
            check_disjoint((lhs, overlapping))
        with self.assertRaises(BadRegime):
            check_disjoint((lhs, RegimeSpec(name="a", start=rhs.start, end=rhs.end)))

    def test_5(self) -> None:
        frame = _frame(40)
        regime = RegimeSpec(name="r", start=date(2020, 1, 10), end=date(2020, 1, 25))
        once = slice_regime(frame, regime=regime)
        self.assertEqual(slice_regime(once, regime=regime), once)

    def test_6(self) -> None:
        frame = _frame(40)
        everything = RegimeSpec(
            name="all", start=frame.dates[0], end=frame.dates[-1] + timedelta(days=1)
        )
        self.assertEqual(slice_regime(frame, regime=everything), frame)
