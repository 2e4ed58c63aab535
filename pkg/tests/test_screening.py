from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from core.weights import Signature, rho
from datum.blocks import datum_from_mu, enumerate_data
from exception.exceptions import DatumValidationError, GuardExceededError, LengthMismatchError, NotLambdaLargeError
from screening.certificates import (
    CertificateKind,
    block_certificate,
    certificate_case_a,
    certificate_case_b,
    certificate_case_b_below,
    dirac_test,
    lambda_large_blocks,
    lambda_large_blocks_below,
    p_level_neighbors,
    semi_spherical_component,
)
from screening.predicates import (
    Level,
    Segment,
    bottom_layer,
    component_gaps,
    fpp_gap_check,
    fundamental_partition,
    good_part_data,
    good_parts,
    good_range_cuts,
    hull_check,
    interlaced,
    mean_center,
    segments_of_partition,
)
from screening.screen import Verdict, screen
from theta.theta_datum import ThetaDatum, assemble_inf_char, lkt_family
from tests.conftest import F, weight


def fr(*xs):
    return tuple(Fraction(x) for x in xs)


LARGE_GAP_LAMBDA = fr(3, 1, 1, 1, 0, 0, 0, 0, -4)


def test_fpp_gap_check():
    assert fpp_gap_check(LARGE_GAP_LAMBDA) == (False, 4)
    assert fpp_gap_check(rho(8)) == (True, 1)
    assert fpp_gap_check(fr(2, 2, 2)) == (True, 0)
    assert fpp_gap_check(fr(5)) == (True, 0)


def test_hull_check():
    assert not hull_check(LARGE_GAP_LAMBDA, (F(2, 9),) * 9)
    center = fr(1, 1, 0, -2)
    assert hull_check([c + r for c, r in zip(center, rho(4))], center)
    assert not hull_check(fr(2, -2), fr(0, 0))
    with pytest.raises(LengthMismatchError):
        hull_check(fr(1, 0), fr(0,))


def test_fundamental_partition(u74_mu, large_gap_u54):
    u74 = datum_from_mu(u74_mu, Signature(7, 4))
    assert fundamental_partition(u74).groups == (range(0, 5), range(5, 6))
    assert fundamental_partition(large_gap_u54.datum).groups == (range(0, 4),)


def test_segments_and_interlacing(large_gap_u54):
    segs = segments_of_partition(large_gap_u54, [range(0, 2), range(2, 4)])
    assert segs == [Segment(F(1), F(0)), Segment(F(3), F(-4))]
    assert interlaced(segs)
    assert segments_of_partition(large_gap_u54, [range(0, 4)]) == [Segment(F(3), F(-4))]
    assert not interlaced([Segment(F(5), F(4)), Segment(F(1), F(0))])
    assert interlaced([Segment(F(1), F(0))])


def test_good_range(large_gap_u54, split_u11):
    assert good_range_cuts(large_gap_u54) == []
    assert good_parts(large_gap_u54) == [range(0, 4)]
    assert good_range_cuts(split_u11) == [1]
    assert segments_of_partition(split_u11, good_parts(split_u11)) == [
        Segment(F(3, 2), F(3, 2)), Segment(F(-9, 2), F(-9, 2))
    ]
    single = ThetaDatum.from_lists(1, 1, [("rect", 1, 1, "0")])
    assert good_range_cuts(single) == []


def test_component_gaps(u74_mu):
    td = ThetaDatum(datum_from_mu(u74_mu, Signature(7, 4)), ((), (), (F(0),), (), (F(0), F(0)), ()))
    assert component_gaps(td) == [F(1), F(0)]


def test_bottom_layer_u74(u74_mu):
    d = datum_from_mu(u74_mu, Signature(7, 4))
    assert bottom_layer(d, range(0, 3), Level.P_PLUS)


def test_bottom_layer_isolated_block():
    td = ThetaDatum.from_lists(1, 1, [("trap_top", 1, 0, "3/2"), ("trap_bottom", 0, 1, "-9/2")])
    for level in (Level.P_PLUS, Level.P_MINUS):
        assert bottom_layer(td.datum, range(0, 1), level)
        assert bottom_layer(td.datum, range(1, 2), level)


def test_bottom_layer_rectangle_between_parallelograms():
    td = ThetaDatum.from_lists(
        3, 3, [("par_up", 1, 1, "1/2"), ("rect", 1, 1, "0"), ("par_up", 1, 1, "-1/2")]
    )
    assert td.reference_mu == weight("0,0,-1|1,0,0")
    assert not bottom_layer(td.datum, range(1, 2), Level.P_PLUS)
    assert bottom_layer(td.datum, range(1, 2), Level.P_MINUS)


def test_bottom_layer_rectangle_between_opposite_parallelograms():
    td = ThetaDatum.from_lists(
        3, 3, [("par_down", 1, 1, "1/2"), ("rect", 1, 1, "0"), ("par_up", 1, 1, "-1/2")]
    )
    assert td.reference_mu == weight("1,0,-1|0,0,0")
    assert not bottom_layer(td.datum, range(1, 2), Level.P_PLUS)
    assert not bottom_layer(td.datum, range(1, 2), Level.P_MINUS)
    assert not bottom_layer(td.datum, range(1, 2), Level.P_FULL)


def test_lambda_large(large_gap_u54):
    assert lambda_large_blocks(large_gap_u54) == [3]
    zero = ThetaDatum.from_lists(1, 1, [("rect", 1, 1, "0")])
    assert lambda_large_blocks(zero) == []
    par = ThetaDatum.from_lists(1, 1, [("par_down", 1, 1, "1/2")], [["5/2"]])
    assert lambda_large_blocks(par) == [0]


def test_semi_spherical_component(large_gap_u54):
    assert semi_spherical_component(large_gap_u54, 3) == range(0, 4)
    single = ThetaDatum.from_lists(1, 1, [("par_down", 1, 1, "1/2")], [["5/2"]])
    assert semi_spherical_component(single, 0) == range(0, 1)
    with pytest.raises(NotLambdaLargeError):
        semi_spherical_component(large_gap_u54, 0)


def test_semi_spherical_component_stops_at_changing_mu():
    # mu = (1,0|1,0): left coordinates differ across the two blocks
    td = ThetaDatum.from_lists(2, 2, [("rect", 1, 1, "1"), ("rect", 1, 1, "0")], [["0"], ["3"]])
    assert td.reference_mu == weight("1,0|1,0")
    assert semi_spherical_component(td, 1) == range(1, 2)


def test_p_level_neighbors():
    assert p_level_neighbors(weight("1,0|0"), [0, 1], [0], Level.P_PLUS) == [weight("2,0|-1"), weight("1,1|-1")]
    assert p_level_neighbors(weight("3|1"), [0], [0], Level.P_PLUS) == [weight("4|0")]


def test_case_b_large_gap_u54(large_gap_u54):
    certs = certificate_case_b(large_gap_u54)
    assert len(certs) == 1
    assert certs[0].kind == CertificateKind.CASE_B_SEMI_SPHERICAL
    assert certs[0].level == Level.P_PLUS
    assert list(certs[0].witness_ktypes) == [
        weight("1,0,0,0,0|1,1,0,-1"),
        weight("1,0,0,0,0|2,0,0,-1"),
        weight("1,0,0,0,0|2,1,-1,-1"),
        weight("1,0,0,0,0|2,1,0,-2"),
    ]


def test_case_b_absent_without_large_block(trivial_u62):
    assert certificate_case_b(trivial_u62) == []


def test_case_a_u43(case_a_u43):
    assert assemble_inf_char(case_a_u43).coords == (F(3, 2), F(1), F(1), F(1), F(-1, 2), F(-1, 2), F(-1, 2))
    certs = certificate_case_a(case_a_u43)
    assert len(certs) == 1
    assert certs[0].kind == CertificateKind.CASE_A_RECTANGLE
    assert certs[0].branch == "rectangle_p_minus"
    assert list(certs[0].witness_ktypes) == [weight("1,1,1,0|1,0,-1"), weight("1,1,0,0|1,1,-1")]


def test_parallelogram_block_certificate_u22():
    td = ThetaDatum.from_lists(2, 2, [("par_down", 2, 2, "1/2")], [["5/2", "3/2"]])
    # Lambda = (3,2,-1,-2): the gap lies outside the single content
    assert certificate_case_a(td) == []
    cert = block_certificate(td, 0)
    assert cert.kind == CertificateKind.CASE_A_PARALLELOGRAM
    assert set(cert.witness_ktypes) == {weight("1,1|0,0"), weight("1,0|1,0")}


def test_block_certificate_rejects_trapezoid(case_a_u43):
    with pytest.raises(DatumValidationError):
        block_certificate(case_a_u43, 0)


def test_case_a_needs_a_gap(trivial_u62):
    assert certificate_case_a(trivial_u62) == []


def test_certificate_witnesses_are_neighbours(large_gap_u54, case_a_u43):
    for td in (large_gap_u54, case_a_u43):
        mu = td.reference_mu
        for cert in certificate_case_a(td) + certificate_case_b(td):
            for w in cert.witness_ktypes:
                if w == mu or cert.kind == CertificateKind.CASE_A_PARALLELOGRAM:
                    continue
                diff = [a - b for a, b in zip(w.coords, mu.coords)]
                assert sorted(diff) == [-1] + [0] * (len(diff) - 2) + [1]


def test_dirac_examples():
    sig = Signature(1, 1)
    assert dirac_test(weight("0|0"), fr(F(1, 2), F(-1, 2)), sig, Level.P_FULL) == (False, F(1, 2))
    assert dirac_test(weight("1|0"), fr(3, -2), sig, Level.P_FULL) == (True, F(1, 2))
    violated, _ = dirac_test(weight("0|0"), fr(0, 0), sig, Level.P_FULL)
    assert not violated


def test_dirac_guard():
    sig = Signature(3, 3)
    with pytest.raises(GuardExceededError):
        dirac_test(weight("0,0,0|0,0,0"), (F(0),) * 6, sig, Level.P_FULL, max_rank=4)


@pytest.mark.parametrize("n", range(1, 7))
@pytest.mark.parametrize("q", [1, 2])
def test_dirac_never_flags_trivial_representation(n, q):
    sig = Signature(n, q)
    mu = weight(",".join(["0"] * n) + "|" + ",".join(["0"] * q))
    for level in Level:
        violated, _ = dirac_test(mu, rho(sig.n), sig, level)
        assert not violated


def test_dirac_flags_wide_parallelogram():
    td = ThetaDatum.from_lists(1, 1, [("par_down", 1, 1, "1/2")], [["5/2"]])
    lam = assemble_inf_char(td).coords
    assert any(dirac_test(e.mu, lam, td.sig, Level.P_FULL)[0] for e in lkt_family(td))


def test_screen_large_gap_u54(large_gap_u54):
    report = screen(large_gap_u54)
    assert report.verdict == Verdict.NON_UNITARY_BY_FPP
    assert report.good_cuts == ()
    assert report.fpp_applicable
    assert report.max_gap == 4
    assert report.unitarily_small
    assert not report.hull_pass
    assert report.lambda_u_center == (F(2, 9),) * 9
    witnesses = [w for c in report.certificates for w in c.witness_ktypes]
    assert weight("1,0,0,0,0|2,1,0,-2") in witnesses


def test_screen_trivial_u62(trivial_u62):
    report = screen(trivial_u62)
    assert report.verdict == Verdict.NO_OBSTRUCTION_FOUND
    assert report.good_cuts == ()
    assert report.fpp_pass
    assert report.hull_pass
    assert report.dirac_violations == ()


def test_screen_split_datum(split_u11):
    report = screen(split_u11)
    assert report.verdict == Verdict.INDUCED_IN_GOOD_RANGE
    assert report.good_cuts == (1,)
    assert not report.fpp_applicable


def test_screen_is_deterministic(large_gap_u54):
    assert screen(large_gap_u54) == screen(large_gap_u54)


def _fundamental_data():
    found = []
    for n in range(2, 6):
        for p in range(1, n):
            for d in enumerate_data(Signature(p, n - p), F(1)):
                if len(fundamental_partition(d).groups) == 1:
                    found.append(d)
    return found


@given(st.sampled_from(_fundamental_data()), st.lists(st.integers(0, 3), min_size=4, max_size=4))
def test_fundamental_small_gaps_pass_hull(datum, raw):
    pool = iter(raw * 2)
    nus = tuple(tuple(sorted((F(next(pool), 2) for _ in range(b.k)), reverse=True)) for b in datum.blocks)
    td = ThetaDatum(datum, nus)
    lam = assemble_inf_char(td).coords
    if fpp_gap_check(lam)[0]:
        assert hull_check(lam, mean_center(lam))


@pytest.fixture
def gap_above_u33() -> ThetaDatum:
    """Lambda = (2,-1,-1,-2,-2,-2): the only large gap sits above every content."""
    return ThetaDatum.from_lists(3, 3, [("rect", 1, 1, "0"), ("rect", 1, 1, "-1"), ("rect", 1, 1, "-2")],
                                 [["2"], ["0"], ["0"]])


@pytest.fixture
def gap_below_u33() -> ThetaDatum:
    """Lambda = (2,2,2,1,1,-2): the only large gap sits below every content."""
    return ThetaDatum.from_lists(3, 3, [("rect", 1, 1, "2"), ("rect", 1, 1, "1"), ("rect", 1, 1, "0")],
                                 [["0"], ["0"], ["2"]])


def test_case_a_ignores_gap_above_contents(gap_above_u33):
    assert assemble_inf_char(gap_above_u33).coords == fr(2, -1, -1, -2, -2, -2)
    assert certificate_case_a(gap_above_u33) == []
    certs = certificate_case_b(gap_above_u33)
    assert len(certs) == 1
    assert certs[0].level == Level.P_PLUS
    assert list(certs[0].witness_ktypes) == [weight("1,-1,-2|-1,-1,-2")]


def test_lambda_large_below(gap_below_u33, large_gap_u54):
    assert lambda_large_blocks(gap_below_u33) == []
    assert lambda_large_blocks_below(gap_below_u33) == [2]
    assert lambda_large_blocks_below(large_gap_u54) == [3]
    assert semi_spherical_component(gap_below_u33, 2, below=True) == range(2, 3)
    with pytest.raises(NotLambdaLargeError):
        semi_spherical_component(gap_below_u33, 0, below=True)


def test_case_b_below_contents(gap_below_u33):
    assert gap_below_u33.reference_mu == weight("2,1,0|2,1,0")
    assert certificate_case_b(gap_below_u33) == []
    certs = certificate_case_b_below(gap_below_u33)
    assert len(certs) == 1
    assert certs[0].kind == CertificateKind.CASE_B_SEMI_SPHERICAL
    assert certs[0].level == Level.P_MINUS
    assert certs[0].block_range == (2, 3)
    assert certs[0].branch == "semi_spherical_below"
    assert list(certs[0].witness_ktypes) == [weight("2,1,-1|2,1,1")]


def test_case_b_below_mirrors_dual(gap_above_u33, gap_below_u33):
    assert gap_below_u33.dual() == gap_above_u33
    above = certificate_case_b(gap_above_u33)[0]
    below = certificate_case_b_below(gap_below_u33)[0]
    assert [w.dual() for w in above.witness_ktypes] == list(below.witness_ktypes)


def test_screen_reports_gap_below(gap_below_u33):
    report = screen(gap_below_u33)
    assert report.verdict == Verdict.NON_UNITARY_BY_FPP
    assert report.max_gap == 3
    assert report.lambda_large == ()
    assert report.lambda_large_below == (2,)
    witnesses = [w for c in report.certificates for w in c.witness_ktypes]
    assert weight("2,1,-1|2,1,1") in witnesses


def test_good_part_data(split_u11, large_gap_u54):
    upper, lower = good_part_data(split_u11)
    assert upper == ThetaDatum.from_lists(1, 0, [("trap_top", 1, 0, "1")], [[]])
    assert lower == ThetaDatum.from_lists(0, 1, [("trap_bottom", 0, 1, "-4")], [[]])
    assert upper.reference_mu == weight("1|")
    assert lower.reference_mu == weight("|-4")
    assert good_part_data(large_gap_u54) == [large_gap_u54]


def test_screen_emits_inner_data(split_u11, large_gap_u54):
    assert screen(split_u11).inner_data == tuple(good_part_data(split_u11))
    for inner in screen(split_u11).inner_data:
        assert screen(inner).verdict == Verdict.NO_OBSTRUCTION_FOUND
    assert screen(large_gap_u54).inner_data == ()
