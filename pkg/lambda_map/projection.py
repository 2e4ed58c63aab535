"""
Projection onto the dominant chamber and the lambda_a / lambda_u maps.

The projection is the exact pool-adjacent-violators algorithm for the weakly
decreasing cone: each maximal pooled run is replaced by its mean.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from core.weights import KTypeWeight, Signature, Vector, as_vector, rho, two_rho_k
from logger.custom_logger import logger

LEFT = "left"
RIGHT = "right"


@dataclass(frozen=True)
class ProjectionResult:
    value: Vector
    level_sets: tuple[range, ...]


@dataclass(frozen=True)
class MergeOrder:
    """Merged arrangement of mu + 2rho(k): one (side, index) slot per merged position."""

    values: Vector
    slots: tuple[tuple[str, int], ...]
    ties: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class LambdaAResult:
    lambda_a: Vector
    merged_sorted: Vector
    ties_resolved: tuple[tuple[int, int], ...]
    order: tuple[tuple[str, int], ...]
    level_sets: tuple[range, ...]
    sig: Signature

    @property
    def left(self) -> Vector:
        return self.lambda_a[: self.sig.p]

    @property
    def right(self) -> Vector:
        return self.lambda_a[self.sig.p:]


def project_dominant(d: Sequence) -> ProjectionResult:
    """
    Euclidean projection of ``d`` onto the weakly decreasing cone.

    Parameters
    ----------
    d : sequence of Fraction
        Raw difference sequence.

    Returns
    -------
    ProjectionResult
        The projected vector and its level sets (pooled index ranges).
    """
    values = as_vector(d)
    # each pool: [sum, length]
    pools: list[list] = []
    for x in values:
        pools.append([x, 1])
        while len(pools) > 1 and pools[-2][0] * pools[-1][1] < pools[-1][0] * pools[-2][1]:
            total, length = pools.pop()
            pools[-1][0] += total
            pools[-1][1] += length

    value: list[Fraction] = []
    level_sets: list[range] = []
    start = 0
    for total, length in pools:
        mean = Fraction(total) / length
        value.extend([mean] * length)
        level_sets.append(range(start, start + length))
        start += length
    return ProjectionResult(tuple(value), tuple(level_sets))


def merge_order(mu: KTypeWeight, sig: Signature) -> MergeOrder:
    """
    Stable merge of the two sides of mu + 2rho(k) into one weakly decreasing
    sequence, left entries first on ties. Equal left/right pairs are reported.
    """
    mu.check_fits(sig)
    shifted = [Fraction(m) + t for m, t in zip(mu.coords, two_rho_k(sig))]
    entries = [(shifted[i], 0, i) for i in range(sig.p)]
    entries += [(shifted[sig.p + j], 1, j) for j in range(sig.q)]
    entries.sort(key=lambda e: (-e[0], e[1], e[2]))

    ties = tuple(
        (i, j)
        for j in range(sig.q)
        for i in range(sig.p)
        if shifted[i] == shifted[sig.p + j]
    )
    return MergeOrder(
        values=tuple(e[0] for e in entries),
        slots=tuple((LEFT if e[1] == 0 else RIGHT, e[2]) for e in entries),
        ties=ties,
    )


def _unmerge(values: Sequence[Fraction], slots: Sequence[tuple[str, int]], sig: Signature) -> Vector:
    aligned: list[Fraction] = [Fraction(0)] * sig.n
    for value, (side, index) in zip(values, slots):
        aligned[index if side == LEFT else sig.p + index] = value
    return tuple(aligned)


def compute_lambda_a(mu: KTypeWeight, sig: Signature) -> LambdaAResult:
    """
    lambda_a(mu) = P(mu + 2rho(k) - rho(g)) returned in aligned (left | right) order.

    Left/right ties in the merge end up in one pooled run of the projection,
    which averages their rho entries.
    """
    order = merge_order(mu, sig)
    staggered = rho(sig.n)
    projected = project_dominant([v - r for v, r in zip(order.values, staggered)])
    logger.debug(f"lambda_a {mu} in {sig}: merged {order.values} -> {projected.value}")
    return LambdaAResult(
        lambda_a=_unmerge(projected.value, order.slots, sig),
        merged_sorted=projected.value,
        ties_resolved=order.ties,
        order=order.slots,
        level_sets=projected.level_sets,
        sig=sig,
    )


def compute_lambda_u(mu: KTypeWeight, sig: Signature) -> Vector:
    """lambda_u(mu) = P(mu + 2rho(k) - 2rho(g)), in merged (weakly decreasing) order."""
    order = merge_order(mu, sig)
    staggered = rho(sig.n)
    return project_dominant([v - 2 * r for v, r in zip(order.values, staggered)]).value


def is_unitarily_small(mu: KTypeWeight, sig: Signature) -> bool:
    return len(set(compute_lambda_u(mu, sig))) == 1
