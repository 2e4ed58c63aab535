"""
Combined screening of a theta-stable datum: every test result, the
certificates and a single verdict.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from core.weights import Vector
from exception.exceptions import DatumValidationError, GuardExceededError
from lambda_map.projection import compute_lambda_u, is_unitarily_small
from logger.custom_logger import logger
from screening.certificates import (
    Certificate,
    CertificateKind,
    DiracViolation,
    certificate_case_a,
    certificate_case_b,
    certificate_case_b_below,
    dirac_test,
    lambda_large_blocks,
    lambda_large_blocks_below,
)
from screening.predicates import (
    FundamentalPartition,
    Level,
    Segment,
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
from theta.theta_datum import InfChar, ThetaDatum, assemble_inf_char, lkt_family, validate
from utils.config_loader import load_config


class Verdict(str, Enum):
    NO_OBSTRUCTION_FOUND = "NoObstructionFound"
    NON_UNITARY_BY_FPP = "NonUnitaryByFPP"
    NON_UNITARY_BY_SRV_HULL = "NonUnitaryBySRVHull"
    NON_UNITARY_BY_FUNDAMENTAL_GAP = "NonUnitaryByFundamentalGap"
    INDUCED_IN_GOOD_RANGE = "InducedInGoodRange"


@dataclass(frozen=True)
class ScreeningReport:
    inf_char: InfChar
    hermitian_ok: bool
    violations: tuple[str, ...]
    unitarily_small: bool
    fpp_applicable: bool
    fpp_pass: bool
    max_gap: Fraction
    hull_pass: bool
    lambda_u_center: Vector
    good_cuts: tuple[int, ...]
    good_parts: tuple[range, ...]
    inner_data: tuple[ThetaDatum, ...]
    fundamental: FundamentalPartition
    component_gaps: tuple[Fraction, ...]
    segments: tuple[Segment, ...]
    interlaced: bool
    lambda_large: tuple[int, ...]
    lambda_large_below: tuple[int, ...]
    dirac_violations: tuple[DiracViolation, ...]
    certificates: tuple[Certificate, ...]
    verdict: Verdict
    notes: tuple[str, ...] = field(default_factory=tuple)


def _dirac_checks(td: ThetaDatum, lam: Vector, notes: list[str]) -> tuple[list[DiracViolation], list[Certificate]]:
    """
    Dirac inequality at every level for every lowest K-type of the module.

    Levels skipped by the size guard are recorded in ``notes``.

    Returns
    -------
    tuple[list[DiracViolation], list[Certificate]]
        The strict violations and one Dirac certificate per violation.
    """
    violations: list[DiracViolation] = []
    certificates: list[Certificate] = []
    target = sum((x * x for x in lam), Fraction(0))
    whole = (0, len(td.blocks))
    for entry in lkt_family(td):
        for level in (Level.P_PLUS, Level.P_MINUS, Level.P_FULL):
            try:
                violated, best = dirac_test(entry.mu, lam, td.sig, level)
            except GuardExceededError as e:
                notes.append(f"dirac p_full skipped: {e.error_message}")
                continue
            if violated:
                violations.append(DiracViolation(entry.mu, level, best, target))
                certificates.append(Certificate(CertificateKind.DIRAC, level, (entry.mu,), whole, "dirac"))
    return violations, certificates


def screen(td: ThetaDatum, run_dirac: bool | None = None) -> ScreeningReport:
    """
    Runs every screening test on a theta-stable datum and picks a verdict.

    The verdict is the first that applies of: induced in good range, FPP gap
    failure, hull failure of a unitarily small lowest K-type, a fundamental
    group with an internal gap above 1, no obstruction found.

    Raises
    ------
    DatumValidationError
        If the datum breaks its invariants.
    """
    violations = validate(td)
    if violations:
        raise DatumValidationError(f"invalid theta-stable datum {td.datum}: {', '.join(violations)}")
    if run_dirac is None:
        run_dirac = bool(load_config().get("screening", {}).get("run_dirac", True))
    logger.info(f"screening {td.datum} nu={[[str(x) for x in nu] for nu in td.nus]}")

    notes: list[str] = ["nu stored symmetric: Hermitian by construction"]
    inf_char = assemble_inf_char(td)
    lam = inf_char.coords
    mu = td.reference_mu

    cuts = good_range_cuts(td)
    parts = good_parts(td)
    fundamental = fundamental_partition(td.datum)
    segments = segments_of_partition(td, fundamental.groups)
    small = is_unitarily_small(mu, td.sig)
    if len(fundamental.groups) == 1:
        center = mean_center(lam)
    else:
        center = compute_lambda_u(mu, td.sig)
    hull_pass = hull_check(lam, center)
    fpp_pass, max_gap = fpp_gap_check(lam)
    gaps = component_gaps(td)

    certificates = certificate_case_a(td) + certificate_case_b(td) + certificate_case_b_below(td)
    dirac_violations: list[DiracViolation] = []
    if run_dirac:
        dirac_violations, dirac_certificates = _dirac_checks(td, lam, notes)
        certificates += dirac_certificates

    if cuts:
        verdict = Verdict.INDUCED_IN_GOOD_RANGE
        notes.append("inner_data holds each good part on its own Levi factor for screening")
    elif not fpp_pass:
        verdict = Verdict.NON_UNITARY_BY_FPP
    elif small and not hull_pass:
        verdict = Verdict.NON_UNITARY_BY_SRV_HULL
    elif any(g > 1 for g in gaps):
        verdict = Verdict.NON_UNITARY_BY_FUNDAMENTAL_GAP
    else:
        verdict = Verdict.NO_OBSTRUCTION_FOUND
    logger.info(f"verdict {verdict.value} for {td.datum}")

    return ScreeningReport(
        inf_char=inf_char,
        hermitian_ok=True,
        violations=tuple(violations),
        unitarily_small=small,
        fpp_applicable=not cuts,
        fpp_pass=fpp_pass,
        max_gap=max_gap,
        hull_pass=hull_pass,
        lambda_u_center=center,
        good_cuts=tuple(cuts),
        good_parts=tuple(parts),
        inner_data=tuple(good_part_data(td)) if cuts else (),
        fundamental=fundamental,
        component_gaps=tuple(gaps),
        segments=tuple(segments),
        interlaced=interlaced(segments),
        lambda_large=tuple(lambda_large_blocks(td)),
        lambda_large_below=tuple(lambda_large_blocks_below(td)),
        dirac_violations=tuple(dirac_violations),
        certificates=tuple(certificates),
        verdict=verdict,
        notes=tuple(notes),
    )
