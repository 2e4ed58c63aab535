"""
Exponential reference implementations used to cross-check the fast paths.
"""

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from core.weights import KTypeWeight, Vector, as_vector, is_weakly_decreasing, rho
from exception.exceptions import GuardExceededError
from theta.theta_datum import ThetaDatum
from utils.config_loader import guard, load_config


@dataclass(frozen=True)
class OracleBudget:
    max_n: int
    max_samples: int
    rng_seed: int

    @classmethod
    def from_config(cls) -> "OracleBudget":
        settings = load_config().get("oracle", {})
        return cls(
            max_n=int(settings.get("max_n", 5)),
            max_samples=int(settings.get("max_samples", 2000)),
            rng_seed=int(settings.get("rng_seed", 0)),
        )

    def rng(self) -> random.Random:
        return random.Random(self.rng_seed)


def _compositions(n: int):
    """Every split of range(n) into consecutive runs, as lists of run lengths."""
    for cuts in product((False, True), repeat=n - 1):
        lengths, current = [], 1
        for cut in cuts:
            if cut:
                lengths.append(current)
                current = 1
            else:
                current += 1
        lengths.append(current)
        yield lengths


def oracle_project(d: Sequence[Fraction]) -> Vector:
    """Best weakly decreasing run-mean vector, found by trying every run split."""
    values = as_vector(d)
    limit = guard("oracle_max_length", 8)
    if len(values) > limit:
        raise GuardExceededError(f"oracle_project: length {len(values)} exceeds {limit}")
    if not values:
        return ()
    best, best_dist = None, None
    for lengths in _compositions(len(values)):
        candidate, start = [], 0
        for length in lengths:
            run = values[start:start + length]
            candidate.extend([sum(run, Fraction(0)) / length] * length)
            start += length
        if not is_weakly_decreasing(candidate):
            continue
        dist = sum(((a - b) ** 2 for a, b in zip(candidate, values)), Fraction(0))
        if best_dist is None or dist < best_dist:
            best, best_dist = tuple(candidate), dist
    return best


def oracle_hull(x: Sequence[Fraction], center: Sequence[Fraction], budget: OracleBudget | None = None) -> bool:
    """
    Permutohedron membership by subset sums: for every subset S,
    sum over S of (x - center) is at most the sum of the |S| largest rho entries.
    Both vectors are taken sorted descending.
    """
    budget = budget or OracleBudget.from_config()
    if len(x) > budget.max_n:
        raise GuardExceededError(f"oracle_hull: length {len(x)} exceeds {budget.max_n}")
    xs = sorted(as_vector(x), reverse=True)
    cs = sorted(as_vector(center), reverse=True)
    diff = [a - b for a, b in zip(xs, cs)]
    if sum(diff) != 0:
        return False
    top = rho(len(diff))
    for k in range(1, len(diff)):
        bound = sum(top[:k], Fraction(0))
        if any(sum((diff[i] for i in subset), Fraction(0)) > bound for subset in combinations(range(len(diff)), k)):
            return False
    return True


def oracle_good_partitions(td: ThetaDatum) -> list[list[range]]:
    """
    Every ordered split of the blocks into consecutive parts whose segments
    satisfy e_1 >= b_1 > e_2 >= b_2 > ...
    """
    n_blocks = len(td.blocks)
    limit = guard("oracle_max_blocks", 6)
    if n_blocks > limit:
        raise GuardExceededError(f"oracle_good_partitions: {n_blocks} blocks exceed {limit}")
    found = []
    for lengths in _compositions(n_blocks):
        parts, start = [], 0
        for length in lengths:
            parts.append(range(start, start + length))
            start += length
        segments = [td.range_contributions(part) for part in parts]
        if all(min(segments[i]) > max(segments[i + 1]) for i in range(len(segments) - 1)):
            found.append(parts)
    return found


def random_vectors(budget: OracleBudget, length: int, count: int | None = None,
                   denominator: int = 2, spread: int = 4) -> list[Vector]:
    """Seeded rational vectors with entries in [-spread, spread] over ``denominator``."""
    rng = budget.rng()
    count = budget.max_samples if count is None else count
    return [
        tuple(Fraction(rng.randint(-spread * denominator, spread * denominator), denominator) for _ in range(length))
        for _ in range(count)
    ]


def random_dominant_weights(budget: OracleBudget, p: int, q: int, count: int | None = None,
                            spread: int = 4) -> list[KTypeWeight]:
    rng = budget.rng()
    count = budget.max_samples if count is None else count
    weights = []
    for _ in range(count):
        left = sorted((rng.randint(-spread, spread) for _ in range(p)), reverse=True)
        right = sorted((rng.randint(-spread, spread) for _ in range(q)), reverse=True)
        weights.append(KTypeWeight(tuple(left), tuple(right)))
    return weights
