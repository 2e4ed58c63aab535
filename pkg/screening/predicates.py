"""
Screening predicates on infinitesimal characters and block data: the gap and
hull conditions, good-range cuts, fundamental groups and bottom-layer checks.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from core.weights import KTypeWeight, Vector, as_vector, majorizes, rho
from datum.blocks import LambdaDatum, mu_from_datum
from exception.exceptions import LengthMismatchError
from theta.theta_datum import ThetaDatum


class Level(str, Enum):
    P_PLUS = "p_plus"
    P_MINUS = "p_minus"
    P_FULL = "p_full"


@dataclass(frozen=True)
class Segment:
    e: Fraction
    b: Fraction


@dataclass(frozen=True)
class FundamentalPartition:
    groups: tuple[range, ...]


def _gaps(coords: Sequence[Fraction]) -> list[Fraction]:
    ordered = sorted(coords, reverse=True)
    return [ordered[i] - ordered[i + 1] for i in range(len(ordered) - 1)]


def fpp_gap_check(lam: Sequence[Fraction]) -> tuple[bool, Fraction]:
    """Every consecutive gap of the sorted coordinates is at most 1."""
    gaps = _gaps(as_vector(lam))
    max_gap = max(gaps, default=Fraction(0))
    return max_gap <= 1, max_gap


def hull_check(lam: Sequence[Fraction], lambda_u: Sequence[Fraction]) -> bool:
    """
    Whether Lambda lies in lambda_u + conv(W . rho).

    Both vectors are taken sorted descending; the difference must be
    majorized by rho(n).
    """
    if len(lam) != len(lambda_u):
        raise LengthMismatchError(f"hull_check: lengths {len(lam)} and {len(lambda_u)} differ")
    x = sorted(as_vector(lam), reverse=True)
    c = sorted(as_vector(lambda_u), reverse=True)
    if sum(x) != sum(c):
        return False
    return majorizes(rho(len(x)), [a - b for a, b in zip(x, c)])


def fundamental_partition(d: LambdaDatum) -> FundamentalPartition:
    """Maximal runs of neighbouring blocks whose contents differ by at most 1."""
    groups: list[range] = []
    start = 0
    for i in range(1, len(d.blocks)):
        if d.blocks[i - 1].gamma - d.blocks[i].gamma > 1:
            groups.append(range(start, i))
            start = i
    groups.append(range(start, len(d.blocks)))
    return FundamentalPartition(tuple(groups))


def segments_of_partition(td: ThetaDatum, parts: Sequence[range]) -> list[Segment]:
    """
    Span of the Lambda coordinates contributed by each part.

    Parameters
    ----------
    td : ThetaDatum
        The datum the parts index into.
    parts : Sequence[range]
        Contiguous block ranges, in block order.

    Returns
    -------
    list[Segment]
        One (largest, smallest) pair per part.
    """
    segments = []
    for part in parts:
        coords = td.range_contributions(part)
        segments.append(Segment(max(coords), min(coords)))
    return segments


def good_range_cuts(td: ThetaDatum) -> list[int]:
    """
    Cut positions c (1 <= c < #blocks) such that every Lambda coordinate of
    blocks[:c] is strictly above every coordinate of blocks[c:].
    """
    n_blocks = len(td.blocks)
    cuts = []
    for c in range(1, n_blocks):
        upper = td.range_contributions(range(0, c))
        lower = td.range_contributions(range(c, n_blocks))
        if min(upper) > max(lower):
            cuts.append(c)
    return cuts


def good_parts(td: ThetaDatum) -> list[range]:
    """Finest partition into good-range parts: split at every valid cut."""
    bounds = [0] + good_range_cuts(td) + [len(td.blocks)]
    return [range(bounds[i], bounds[i + 1]) for i in range(len(bounds) - 1)]


def good_part_data(td: ThetaDatum) -> list[ThetaDatum]:
    """
    The inner data of the finest good partition, one per part, each on its own
    U(p_j, q_j).

    Contents of a part are lowered by rho(u) on it, (#coords below - #coords
    above) / 2, which also moves them to the parity of the smaller signature.
    A datum with no cut gives itself back.
    """
    sizes = [b.size for b in td.blocks]
    total = sum(sizes)
    inner = []
    for part in good_parts(td):
        above = sum(sizes[: part.start])
        below = total - above - sum(sizes[part.start: part.stop])
        inner.append(td.restricted(part, Fraction(below - above, 2)))
    return inner


def interlaced(segs: Sequence[Segment]) -> bool:
    """The intersection graph of the closed intervals [b, e] is connected."""
    ordered = sorted(segs, key=lambda s: s.e, reverse=True)
    lowest = ordered[0].b
    for seg in ordered[1:]:
        if seg.e < lowest:
            return False
        lowest = min(lowest, seg.b)
    return True


def component_gaps(td: ThetaDatum) -> list[Fraction]:
    """Largest internal gap of each fundamental group's own Lambda coordinates."""
    gaps = []
    for group in fundamental_partition(td.datum).groups:
        gaps.append(max(_gaps(td.range_contributions(group)), default=Fraction(0)))
    return gaps


def bottom_layer(d: LambdaDatum, block_range: range, level: Level, mu: KTypeWeight | None = None) -> bool:
    """
    Whether the union of blocks ``block_range`` is bottom layer at ``level``.

    At p_plus the first left coordinate of the range must sit strictly below
    its left neighbour and the last right coordinate strictly above its right
    neighbour; p_minus swaps the two ends. A missing neighbour never blocks.
    """
    mu = mu or mu_from_datum(d)
    left, right = d.range_positions(block_range)
    if level == Level.P_PLUS:
        return _split_before(mu.left, left) and _split_after(mu.right, right)
    if level == Level.P_MINUS:
        return _split_after(mu.left, left) and _split_before(mu.right, right)
    return bottom_layer(d, block_range, Level.P_PLUS, mu) or bottom_layer(d, block_range, Level.P_MINUS, mu)


def _split_before(side: Sequence[int], positions: range) -> bool:
    if len(positions) == 0 or positions.start == 0:
        return True
    return side[positions.start - 1] > side[positions.start]


def _split_after(side: Sequence[int], positions: range) -> bool:
    if len(positions) == 0 or positions.stop >= len(side):
        return True
    return side[positions.stop - 1] > side[positions.stop]


def mean_center(lam: Sequence[Fraction]) -> Vector:
    """Constant vector at the mean of ``lam``; the hull center of a single fundamental group."""
    coords = as_vector(lam)
    mean = sum(coords, Fraction(0)) / len(coords)
    return (mean,) * len(coords)
