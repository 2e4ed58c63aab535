"""
Certificate K-types: explicit weights next to a lowest K-type on which the
Hermitian form is forced to be indefinite, plus the Dirac inequality test.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from core.weights import KTypeWeight, Signature, norm_sq, rho, rho_k
from datum.blocks import BlockShape, LambdaDatum, flip_parallelogram, mu_from_datum
from exception.exceptions import DatumValidationError, GuardExceededError, NotLambdaLargeError
from logger.custom_logger import logger
from screening.predicates import Level, bottom_layer
from theta.theta_datum import ThetaDatum, assemble_inf_char, flippable_blocks
from utils.config_loader import guard


class CertificateKind(str, Enum):
    CASE_A_PARALLELOGRAM = "CaseA_Parallelogram"
    CASE_A_RECTANGLE = "CaseA_Rectangle"
    CASE_B_SEMI_SPHERICAL = "CaseB_SemiSpherical"
    DIRAC = "Dirac"


@dataclass(frozen=True)
class Certificate:
    kind: CertificateKind
    level: Level
    witness_ktypes: tuple[KTypeWeight, ...]
    block_range: tuple[int, int]
    branch: str = ""


@dataclass(frozen=True)
class DiracViolation:
    mu: KTypeWeight
    level: Level
    best_norm_sq: Fraction
    inf_char_norm_sq: Fraction


def lambda_large_blocks(td: ThetaDatum) -> list[int]:
    """
    Blocks whose top nu coordinate gamma + nu_1 lies strictly above every
    Lambda coordinate of the other blocks and every content.
    """
    contents = [b.gamma for b in td.blocks]
    large = []
    for i, nu in enumerate(td.nus):
        if not nu:
            continue
        others = [x for j in range(len(td.blocks)) if j != i for x in td.block_contributions(j)]
        if td.blocks[i].gamma + nu[0] > max(others + contents):
            large.append(i)
    return large


def lambda_large_blocks_below(td: ThetaDatum) -> list[int]:
    """
    Blocks whose bottom nu coordinate gamma - nu_1 lies strictly below every
    Lambda coordinate of the other blocks and every content.
    """
    last = len(td.blocks) - 1
    return sorted(last - i for i in lambda_large_blocks(td.dual()))


def _reads_right(td: ThetaDatum, index: int) -> bool:
    """Blocks wider at the bottom are read through the U(q,p) mirror."""
    block = td.blocks[index]
    return block.s > block.r


def _mirrored(block_range: range, n_blocks: int) -> range:
    return range(n_blocks - block_range.stop, n_blocks - block_range.start)


def semi_spherical_component(td: ThetaDatum, large_block: int, below: bool = False) -> range:
    """
    Longest chain of neighbouring blocks ending at ``large_block`` with content
    gaps at most 1 on which mu is constant on the side the chain is read on.

    With ``below`` the block is lambda-large downwards and the chain starts at
    it and runs towards smaller contents; it is read on the dual datum.

    Raises
    ------
    NotLambdaLargeError
        If ``large_block`` is not lambda-large in the requested direction.
    """
    if below:
        n_blocks = len(td.blocks)
        component = semi_spherical_component(td.dual(), n_blocks - 1 - large_block)
        return _mirrored(component, n_blocks)
    if large_block not in lambda_large_blocks(td):
        raise NotLambdaLargeError(f"block {large_block} of {td.datum} is not lambda-large")
    d = td.datum
    mu = mu_from_datum(d)
    mirrored = _reads_right(td, large_block)
    side = mu.right if mirrored else mu.left
    positions = d.right_positions if mirrored else d.left_positions

    # a lambda-large block has nu, hence coordinates on both sides
    value = side[positions(large_block)[0]]
    start = large_block
    while start > 0:
        prev = start - 1
        if d.blocks[prev].gamma - d.blocks[start].gamma > 1:
            break
        if any(side[pos] != value for pos in positions(prev)):
            break
        start = prev
    return range(start, large_block + 1)


def p_level_neighbors(mu: KTypeWeight, left_positions: Sequence[int], right_positions: Sequence[int],
                      level: Level) -> list[KTypeWeight]:
    """
    K-dominant weights mu + e_i - e_j (p_plus) or mu - e_i + e_j (p_minus),
    i over ``left_positions`` and j over ``right_positions``.
    """
    found: list[KTypeWeight] = []
    for i in left_positions:
        for j in right_positions:
            if level == Level.P_PLUS:
                w = mu.shifted(plus_left=i, minus_right=j)
            else:
                w = mu.shifted(minus_left=i, plus_right=j)
            if w is not None and w not in found:
                found.append(w)
    return found


def _corner_shift(d: LambdaDatum, index: int, mu: KTypeWeight, level: Level) -> KTypeWeight | None:
    left = d.left_positions(index)
    right = d.right_positions(index)
    if level == Level.P_PLUS:
        return mu.shifted(plus_left=left[0], minus_right=right[-1])
    return mu.shifted(minus_left=left[-1], plus_right=right[0])


def _natural_level(shape: BlockShape) -> Level:
    return Level.P_MINUS if shape == BlockShape.PARALLELOGRAM_DOWN else Level.P_PLUS


def _case_a_block_candidates(td: ThetaDatum, upper: Fraction, lower: Fraction) -> list[int]:
    candidates = []
    for i, (block, nu) in enumerate(zip(td.blocks, td.nus)):
        if block.r != block.s or not (upper >= block.gamma >= lower):
            continue
        if min(nu) >= max(upper - block.gamma, block.gamma - lower):
            candidates.append(i)
    return candidates


def _parallelogram_certificate(td: ThetaDatum, index: int, branch: str) -> Certificate | None:
    d = td.datum
    shape = d.blocks[index].shape
    mu = mu_from_datum(d)
    level = _natural_level(shape)
    if bottom_layer(d, range(index, index + 1), level, mu):
        shifted = _corner_shift(d, index, mu, level)
        if shifted is not None:
            return Certificate(CertificateKind.CASE_A_PARALLELOGRAM, level, (mu, shifted), (index, index + 1), branch)
    if index in flippable_blocks(td):
        flipped = flip_parallelogram(d, index)
        flipped_mu = mu_from_datum(flipped)
        level = _natural_level(flipped.blocks[index].shape)
        if bottom_layer(flipped, range(index, index + 1), level, flipped_mu):
            shifted = _corner_shift(flipped, index, flipped_mu, level)
            if shifted is not None:
                return Certificate(CertificateKind.CASE_A_PARALLELOGRAM, level, (flipped_mu, shifted),
                                   (index, index + 1), branch)
    return None


def _rectangle_certificate(td: ThetaDatum, index: int) -> Certificate | None:
    d = td.datum
    mu = mu_from_datum(d)
    for level, branch in ((Level.P_MINUS, "rectangle_p_minus"), (Level.P_PLUS, "rectangle_p_plus")):
        if bottom_layer(d, range(index, index + 1), level, mu):
            shifted = _corner_shift(d, index, mu, level)
            if shifted is not None:
                return Certificate(CertificateKind.CASE_A_RECTANGLE, level, (mu, shifted), (index, index + 1), branch)
    gamma = d.blocks[index].gamma
    for neighbour in (index - 1, index + 1):
        if not 0 <= neighbour < len(d.blocks):
            continue
        block = d.blocks[neighbour]
        if block.shape.is_parallelogram and abs(block.gamma - gamma) == Fraction(1, 2):
            cert = _parallelogram_certificate(td, neighbour, "half_step")
            if cert is not None:
                return cert
    return None


def block_certificate(td: ThetaDatum, index: int) -> Certificate | None:
    """
    Witness pair (lowest K-type, corner-shifted K-type) built at one rectangle
    or parallelogram, or None when no bottom-layer level admits one.

    Raises
    ------
    DatumValidationError
        If the block at ``index`` is a trapezoid.
    """
    shape = td.blocks[index].shape
    if shape.is_trapezoid:
        raise DatumValidationError(f"block {index} of {td.datum} is a trapezoid")
    if shape.is_parallelogram:
        return _parallelogram_certificate(td, index, "parallelogram")
    return _rectangle_certificate(td, index)


def certificate_case_a(td: ThetaDatum) -> list[Certificate]:
    """
    For each gap > 1 of the sorted infinitesimal character lying between the
    largest and smallest content, the block certificate of every rectangle or
    parallelogram inside the gap whose nu covers it.
    """
    lam = assemble_inf_char(td).coords
    contents = [b.gamma for b in td.blocks]
    top, bottom = max(contents), min(contents)
    certificates: list[Certificate] = []
    seen: set[int] = set()
    for i in range(len(lam) - 1):
        upper, lower = lam[i], lam[i + 1]
        if upper - lower <= 1 or upper > top or lower < bottom:
            continue
        for index in _case_a_block_candidates(td, upper, lower):
            if index in seen:
                continue
            seen.add(index)
            cert = block_certificate(td, index)
            if cert is not None:
                certificates.append(cert)
            else:
                logger.debug(f"no case (a) certificate at block {index} of {td.datum}")
    return certificates


def certificate_case_b(td: ThetaDatum) -> list[Certificate]:
    """
    For every lambda-large block whose semi-spherical component is bottom
    layer: all K-dominant neighbours of the lowest K-type at that level.
    Only gaps above the largest content count here.
    """
    lam = assemble_inf_char(td).coords
    top_content = max(b.gamma for b in td.blocks)
    if not any(lam[i] - lam[i + 1] > 1 and lam[i] > top_content for i in range(len(lam) - 1)):
        return []
    d = td.datum
    mu = mu_from_datum(d)
    certificates = []
    for large in lambda_large_blocks(td):
        component = semi_spherical_component(td, large)
        level = Level.P_MINUS if _reads_right(td, large) else Level.P_PLUS
        if not bottom_layer(d, component, level, mu):
            continue
        left, right = d.range_positions(component)
        witnesses = p_level_neighbors(mu, left, right, level)
        if witnesses:
            certificates.append(Certificate(CertificateKind.CASE_B_SEMI_SPHERICAL, level, tuple(witnesses),
                                            (component.start, component.stop), "semi_spherical"))
    return certificates


def _dual_certificate(cert: Certificate, n_blocks: int) -> Certificate:
    level = Level.P_MINUS if cert.level == Level.P_PLUS else Level.P_PLUS
    block_range = _mirrored(range(*cert.block_range), n_blocks)
    return Certificate(cert.kind, level, tuple(w.dual() for w in cert.witness_ktypes),
                       (block_range.start, block_range.stop), f"{cert.branch}_below")


def certificate_case_b_below(td: ThetaDatum) -> list[Certificate]:
    """
    Semi-spherical certificates for gaps below the smallest content.

    The certificates of the dual datum are dualized back, so p_plus and
    p_minus trade places. Branches carry a ``_below`` suffix.
    """
    n_blocks = len(td.blocks)
    return [_dual_certificate(cert, n_blocks) for cert in certificate_case_b(td.dual())]


def _rho_p_candidates(sig: Signature, level: Level) -> list[tuple[Fraction, ...]]:
    p, q = sig.p, sig.q
    if level == Level.P_PLUS:
        return [tuple([Fraction(q, 2)] * p + [Fraction(-p, 2)] * q)]
    if level == Level.P_MINUS:
        return [tuple([Fraction(-q, 2)] * p + [Fraction(p, 2)] * q)]
    staggered = rho(sig.n)
    compact = rho_k(sig)
    candidates = []
    for left_slots in combinations(range(sig.n), p):
        chosen = set(left_slots)
        left = [staggered[k] for k in left_slots]
        right = [staggered[k] for k in range(sig.n) if k not in chosen]
        candidates.append(tuple(g - c for g, c in zip(left + right, compact)))
    return candidates


def dirac_test(mu: KTypeWeight, lam: Sequence[Fraction], sig: Signature, level: Level,
               max_rank: int | None = None) -> tuple[bool, Fraction]:
    """
    Parthasarathy's inequality ||{mu - rho(p)} + rho(k)||^2 >= ||Lambda||^2.

    Returns whether some admissible rho(p) violates it strictly, together with
    the smallest left-hand side found. ``p_full`` runs over every positive
    system containing the compact one (C(p+q, p) of them).

    Raises
    ------
    GuardExceededError
        If ``level`` is ``p_full`` and p+q exceeds ``max_rank``.
    """
    mu.check_fits(sig)
    limit = max_rank if max_rank is not None else guard("dirac_max_rank", 20)
    if level == Level.P_FULL and sig.n > limit:
        raise GuardExceededError(f"dirac_test: p+q = {sig.n} exceeds the guard {limit}")
    target = norm_sq(lam)
    compact = rho_k(sig)
    best = None
    for rho_p in _rho_p_candidates(sig, level):
        diff = [m - r for m, r in zip(mu.coords, rho_p)]
        dominant = sorted(diff[: sig.p], reverse=True) + sorted(diff[sig.p:], reverse=True)
        value = norm_sq([x + c for x, c in zip(dominant, compact)])
        best = value if best is None else min(best, value)
    return best < target, best
