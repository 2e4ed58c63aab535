from fractions import Fraction

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from core.weights import KTypeWeight, Signature
from theta.theta_datum import ThetaDatum

settings.register_profile("upq", derandomize=True, max_examples=150, deadline=None)
settings.load_profile("upq")


def F(*x) -> Fraction:
    return Fraction(*x)


def weight(text: str) -> KTypeWeight:
    return KTypeWeight.from_string(text)


def dominant_weights(p: int, q: int, spread: int = 4):
    side = lambda n: st.lists(st.integers(-spread, spread), min_size=n, max_size=n).map(
        lambda xs: tuple(sorted(xs, reverse=True))
    )
    return st.tuples(side(p), side(q)).map(lambda lr: KTypeWeight(*lr))


def signatures(max_n: int = 7):
    return st.integers(1, max_n).flatmap(
        lambda n: st.integers(0, n).map(lambda p: Signature(p, n - p))
    )


def half_integers(bound: int = 8):
    return st.integers(-2 * bound, 2 * bound).map(lambda k: Fraction(k, 2))


@pytest.fixture
def large_gap_u54() -> ThetaDatum:
    """U(5,4) datum with Lambda = (3,1,1,1,0,0,0,0,-4)."""
    return ThetaDatum.from_lists(
        5, 4,
        [("par_up", 1, 1, "1"), ("rect", 1, 1, "1/2"), ("trap_top", 2, 1, "0"), ("rect", 1, 1, "-1/2")],
        [["0"], ["1/2"], ["0"], ["7/2"]],
    )


@pytest.fixture
def u74_mu() -> KTypeWeight:
    return weight("2,2,2,2,2,2,2|0,-3,-3,-4")


@pytest.fixture
def trivial_u62() -> ThetaDatum:
    return ThetaDatum.from_lists(
        6, 2,
        [("trap_top", 1, 0, "3/2"), ("trap_top", 1, 0, "1/2"), ("rect", 2, 2, "0"),
         ("trap_top", 1, 0, "-1/2"), ("trap_top", 1, 0, "-3/2")],
        [[], [], ["7/2", "5/2"], [], []],
    )


@pytest.fixture
def trivial_u52() -> ThetaDatum:
    return ThetaDatum.from_lists(
        5, 2,
        [("trap_top", 1, 0, "1"), ("trap_top", 3, 2, "0"), ("trap_top", 1, 0, "-1")],
        [[], ["3", "2"], []],
    )


@pytest.fixture
def case_a_u43() -> ThetaDatum:
    return ThetaDatum.from_lists(
        4, 3,
        [("trap_top", 2, 1, "1"), ("rect", 1, 1, "1/2"), ("rect", 1, 1, "-1/2")],
        [["0"], ["1"], ["0"]],
    )


@pytest.fixture
def split_u11() -> ThetaDatum:
    """Two trapezoids far apart: induced in good range."""
    return ThetaDatum.from_lists(1, 1, [("trap_top", 1, 0, "3/2"), ("trap_bottom", 0, 1, "-9/2")], [[], []])
