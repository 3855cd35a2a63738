from fractions import Fraction

import pytest

from packlab.generator import example1_instance, example2_instance


@pytest.fixture(scope="session")
def ex1():
    """3000 items: 600 x 0.52, 600 x 0.29, 600 x 0.27, 1200 x 0.21."""
    return example1_instance()


@pytest.fixture(scope="session")
def ex2():
    """3000 items: 1000 each of 0.60, 0.65, 0.75 (all pairs overflow)."""
    return example2_instance()


def frac(num: int, den: int = 100) -> Fraction:
    return Fraction(num, den)
