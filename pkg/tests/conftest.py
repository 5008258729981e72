from fractions import Fraction

import pytest

from shiftlab import MeasureSystem


def make_dyadic(p: str = "1") -> MeasureSystem:
    """Window [-5, 5], one cell, level mass 2**-|k|, both tails 1/2; the
    tail rule continues the same law to every level."""
    return MeasureSystem(
        p=Fraction(p),
        k_min=-5,
        k_max=5,
        cells=("B1",),
        mu={k: (Fraction(1, 2 ** abs(k)),) for k in range(-5, 6)},
        left_tail=Fraction(1, 2),
        right_tail=Fraction(1, 2),
    )


@pytest.fixture
def dyadic() -> MeasureSystem:
    return make_dyadic()


@pytest.fixture
def dyadic_p2() -> MeasureSystem:
    return make_dyadic("2")
