"""
Combinatorial theta-stable data: a lambda_a-datum plus one nu vector per block.

nu is kept as its nonnegative weakly decreasing half; the symmetric list
(nu_1, ..., -nu_1) is derived, which makes every datum Hermitian by construction.
"""

from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import product
from typing import Sequence

from core.weights import KTypeWeight, Signature, Vector, as_vector, is_weakly_decreasing, parse_rational
from datum.blocks import Block, BlockShape, LambdaDatum, datum_from_mu, dual_datum, flip_parallelogram, mu_from_datum
from exception.exceptions import DatumValidationError
from logger.custom_logger import logger

NuVector = tuple[Fraction, ...]


@dataclass(frozen=True)
class InfChar:
    coords: Vector

    def __post_init__(self) -> None:
        object.__setattr__(self, "coords", tuple(sorted(as_vector(self.coords), reverse=True)))


@dataclass(frozen=True)
class ThetaDatum:
    datum: LambdaDatum
    nus: tuple[NuVector, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "nus", tuple(as_vector(nu) for nu in self.nus))

    @classmethod
    def from_lists(cls, p: int, q: int, blocks: Sequence[tuple], nus: Sequence[Sequence] | None = None) -> "ThetaDatum":
        """
        Builds a datum from ``(shape, r, s, gamma)`` tuples; ``nus`` defaults to zeros.
        Shapes and contents may be given as strings (``"par_up"``, ``"-1/2"``).
        """
        parsed = tuple(
            Block(BlockShape(shape), int(r), int(s), parse_rational(gamma)) for shape, r, s, gamma in blocks
        )
        if nus is None:
            nus = [(0,) * b.k for b in parsed]
        return cls(
            LambdaDatum(Signature(p, q), parsed),
            tuple(tuple(parse_rational(x) for x in nu) for nu in nus),
        )

    @property
    def sig(self) -> Signature:
        return self.datum.sig

    @property
    def blocks(self) -> tuple[Block, ...]:
        return self.datum.blocks

    def block_contributions(self, index: int) -> Vector:
        """{gamma +- nu_j} plus gamma repeated |r - s| times."""
        block = self.blocks[index]
        gamma = block.gamma
        coords = [gamma + x for x in self.nus[index]] + [gamma - x for x in self.nus[index]]
        coords += [gamma] * abs(block.r - block.s)
        return tuple(sorted(coords, reverse=True))

    def range_contributions(self, block_range: range) -> Vector:
        return tuple(x for i in block_range for x in self.block_contributions(i))

    @property
    def reference_mu(self) -> KTypeWeight:
        return mu_from_datum(self.datum)

    def with_datum(self, datum: LambdaDatum) -> "ThetaDatum":
        return ThetaDatum(datum, self.nus)

    def dual(self) -> "ThetaDatum":
        """Contragredient datum; its infinitesimal character is minus this one's."""
        return ThetaDatum(dual_datum(self.datum), tuple(reversed(self.nus)))

    def restricted(self, block_range: range, shift: Fraction) -> "ThetaDatum":
        """Blocks of ``block_range`` on their own signature, contents lowered by ``shift``."""
        blocks = tuple(replace(self.blocks[i], gamma=self.blocks[i].gamma - shift) for i in block_range)
        sig = Signature(sum(b.r for b in blocks), sum(b.s for b in blocks))
        return ThetaDatum(LambdaDatum(sig, blocks), tuple(self.nus[i] for i in block_range))


@dataclass(frozen=True)
class LKTFamilyEntry:
    mu: KTypeWeight
    flip_mask: frozenset[int]
    epsilon_sign: int


def assemble_inf_char(td: ThetaDatum) -> InfChar:
    return InfChar(td.range_contributions(range(len(td.blocks))))


def validate(td: ThetaDatum) -> list[str]:
    """
    Lists every invariant the datum breaks. Returns an empty list for a valid
    datum and never raises.
    """
    found = td.datum.violations()
    if len(td.nus) != len(td.blocks):
        found.append("nu length mismatch")
    else:
        for block, nu in zip(td.blocks, td.nus):
            if len(nu) != block.k:
                found.append("nu length mismatch")
            if not is_weakly_decreasing(nu):
                found.append("nu not weakly decreasing")
            if any(x < 0 for x in nu):
                found.append("nu negative")
    return list(dict.fromkeys(found))


def check(td: ThetaDatum) -> ThetaDatum:
    """
    Returns ``td`` unchanged when it is valid.

    Raises
    ------
    DatumValidationError
        Listing every broken invariant.
    """
    found = validate(td)
    if found:
        raise DatumValidationError(f"invalid theta-stable datum {td.datum}: {', '.join(found)}")
    return td


def flippable_blocks(td: ThetaDatum) -> list[int]:
    """Parallelograms whose nu entries are all nonzero."""
    return [
        i for i, (block, nu) in enumerate(zip(td.blocks, td.nus))
        if block.shape.is_parallelogram and all(x != 0 for x in nu)
    ]


def lkt_family(td: ThetaDatum) -> list[LKTFamilyEntry]:
    """
    Lowest K-types of the module: one per subset of flippable parallelograms.

    The sign of an entry is relative to the input datum: flipping a block of
    size (r, r) contributes (-1)^r.
    """
    check(td)
    flippable = flippable_blocks(td)
    entries: list[LKTFamilyEntry] = []
    for choice in product((False, True), repeat=len(flippable)):
        mask = frozenset(i for i, flip in zip(flippable, choice) if flip)
        datum = td.datum
        sign = 1
        for i in sorted(mask):
            datum = flip_parallelogram(datum, i)
            sign *= (-1) ** td.blocks[i].r
        entries.append(LKTFamilyEntry(mu_from_datum(datum), mask, sign))
    logger.debug(f"lkt family of {td.datum}: {len(entries)} entries")
    return entries


def theta_datum_from_mu(mu: KTypeWeight, sig: Signature, nus: Sequence[Sequence] | None = None) -> ThetaDatum:
    """
    Attaches nu vectors (in content order) to the datum of ``mu``; ``None``
    means all zero.
    """
    datum = datum_from_mu(mu, sig)
    if nus is None:
        nus = [(0,) * b.k for b in datum.blocks]
    sizes = ", ".join(f"({b.r},{b.s})" for b in datum.blocks)
    if len(nus) != len(datum.blocks) or any(len(nu) != b.k for nu, b in zip(nus, datum.blocks)):
        raise DatumValidationError(
            f"nu length mismatch: derived blocks {datum} have sizes {sizes}, "
            f"needing nu lengths {[b.k for b in datum.blocks]}"
        )
    return check(ThetaDatum(datum, tuple(tuple(parse_rational(x) for x in nu) for nu in nus)))
