from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from core.weights import Signature
from datum.blocks import (
    Block,
    BlockShape,
    LambdaDatum,
    datum_from_lambda_a,
    datum_from_mu,
    dual_datum,
    enumerate_data,
    flip_parallelogram,
    mu_from_datum,
    rho_u,
    two_rho_u_cap_p,
)
from exception.exceptions import DatumValidationError, GuardExceededError
from lambda_map.projection import compute_lambda_a
from tests.conftest import F, dominant_weights, signatures, weight


def datum(p, q, *blocks) -> LambdaDatum:
    return LambdaDatum(Signature(p, q), tuple(Block(BlockShape(s), r, c, F(g)) for s, r, c, g in blocks))


U63_MINUS = datum(6, 3, ("par_up", 2, 2, 1), ("trap_top", 2, 1, 0), ("trap_top", 1, 0, -1), ("trap_top", 1, 0, -2))
U63_PLUS = datum(6, 3, ("par_down", 2, 2, 1), ("trap_top", 2, 1, 0), ("trap_top", 1, 0, -1), ("trap_top", 1, 0, -2))


def test_u74_datum(u74_mu):
    expected = datum(
        7, 4,
        ("trap_top", 1, 0, 3), ("trap_top", 1, 0, 2), ("trap_top", 2, 1, 1),
        ("trap_top", 1, 0, 0), ("rect", 2, 2, F(-1, 2)), ("trap_bottom", 0, 1, -2),
    )
    assert datum_from_mu(u74_mu, Signature(7, 4)) == expected
    assert mu_from_datum(expected) == u74_mu


def test_parallelogram_orientation_follows_mu():
    sig = Signature(6, 3)
    assert datum_from_mu(weight("0,0,-1,-1,-1,-1|2,2,1"), sig) == U63_PLUS
    assert datum_from_mu(weight("-1,-1,-1,-1,-1,-1|3,3,1"), sig) == U63_MINUS


def test_mu_from_datum_inverts_both_orientations():
    assert mu_from_datum(U63_MINUS) == weight("-1,-1,-1,-1,-1,-1|3,3,1")
    assert mu_from_datum(U63_PLUS) == weight("0,0,-1,-1,-1,-1|2,2,1")
    assert mu_from_datum(datum(1, 1, ("rect", 1, 1, 0))) == weight("0|0")


def test_positional_rho_vectors():
    h = F(1, 2)
    assert rho_u(U63_MINUS) == tuple(h * x for x in (5, 5, -2, -2, -6, -8, 5, 5, -2))
    assert two_rho_u_cap_p(U63_MINUS) == tuple(F(x) for x in (1, 1, -2, -2, -3, -3, 4, 4, 0))


def test_single_rectangle_u11():
    assert datum_from_mu(weight("0|0"), Signature(1, 1)) == datum(1, 1, ("rect", 1, 1, 0))


def test_flip_parallelogram():
    assert flip_parallelogram(U63_PLUS, 0) == U63_MINUS
    with pytest.raises(DatumValidationError):
        flip_parallelogram(U63_PLUS, 1)


def test_mu_from_datum_rejects_invalid():
    with pytest.raises(DatumValidationError):
        mu_from_datum(datum(1, 1, ("rect", 1, 1, F(1, 2))))
    with pytest.raises(DatumValidationError):
        mu_from_datum(datum(2, 1, ("trap_top", 1, 0, 1), ("trap_top", 1, 1, 0)))


def test_violations_listed():
    bad = datum(2, 2, ("rect", 1, 1, 0), ("rect", 1, 1, 0))
    assert "contents not distinct" in bad.violations()
    assert datum(1, 1, ("rect", 1, 1, F(1, 2))).violations() == ["parity"]
    assert "sizes do not sum to signature" in datum(2, 1, ("rect", 1, 1, 0)).violations()


def test_enumerate_small_counts():
    assert enumerate_data(Signature(1, 1), F(0)) == [datum(1, 1, ("rect", 1, 1, 0))]
    assert enumerate_data(Signature(1, 0), F(1, 2)) == [datum(1, 0, ("trap_top", 1, 0, 0))]
    assert len(enumerate_data(Signature(1, 0), F(3, 2))) == 3
    assert enumerate_data(Signature(2, 2), F(-1)) == []


def test_enumerate_order_is_deterministic():
    data = enumerate_data(Signature(1, 1), F(1))
    assert data == enumerate_data(Signature(1, 1), F(1))
    firsts = [d.blocks[0].gamma for d in data]
    assert firsts == sorted(firsts, reverse=True)


def test_enumerate_guard():
    with pytest.raises(GuardExceededError):
        enumerate_data(Signature(5, 4), F(0))
    assert enumerate_data(Signature(5, 4), F(0), force=True) == [datum(5, 4, ("trap_top", 5, 4, 0))]


@pytest.mark.parametrize("n", range(1, 6))
def test_round_trip_over_enumeration(n):
    for p in range(n + 1):
        sig = Signature(p, n - p)
        for d in enumerate_data(sig, F(3, 2)):
            assert d.violations() == []
            mu = mu_from_datum(d)
            res = compute_lambda_a(mu, sig)
            assert datum_from_lambda_a(res, mu, sig) == d
            assert Counter(res.lambda_a) == Counter(d.content_multiset())


@given(signatures(7).flatmap(lambda sig: st.tuples(st.just(sig), dominant_weights(sig.p, sig.q))))
@settings(max_examples=1000)
def test_round_trip_from_weights(case):
    sig, mu = case
    assert mu_from_datum(datum_from_mu(mu, sig)) == mu


def test_block_helpers():
    block = Block(BlockShape.TRAPEZOID_WIDE_TOP, 3, 2, Fraction(0))
    assert block.k == 2
    assert block.shape.is_trapezoid
    assert block.shape_violations() == []
    assert Block(BlockShape.RECTANGLE, 2, 1, Fraction(0)).shape_violations() == ["shape/size"]


def test_dual_datum_reverses_and_negates():
    assert dual_datum(U63_PLUS) == datum(
        6, 3, ("trap_top", 1, 0, 2), ("trap_top", 1, 0, 1), ("trap_top", 2, 1, 0), ("par_up", 2, 2, -1)
    )


@pytest.mark.parametrize("n", range(1, 6))
def test_dual_datum_gives_dual_weight(n):
    for p in range(n + 1):
        for d in enumerate_data(Signature(p, n - p), F(3, 2)):
            assert dual_datum(d).violations() == []
            assert mu_from_datum(dual_datum(d)) == mu_from_datum(d).dual()
            assert dual_datum(dual_datum(d)) == d
