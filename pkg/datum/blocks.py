"""
lambda_a-blocks, lambda_a-data and the K-type <-> datum correspondence.

A datum stores its blocks by strictly decreasing content. Block ``i`` owns the
next ``r_i`` left coordinates and the next ``s_i`` right coordinates, so the
aligned position of every coordinate is fixed by the block order alone.
"""

from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from typing import Iterator

from core.weights import KTypeWeight, Signature, Vector, format_rational
from exception.exceptions import DatumValidationError, GuardExceededError
from lambda_map.projection import LEFT, LambdaAResult, compute_lambda_a
from logger.custom_logger import logger
from utils.config_loader import guard

HALF = Fraction(1, 2)


class BlockShape(str, Enum):
    RECTANGLE = "rect"
    PARALLELOGRAM_DOWN = "par_down"
    PARALLELOGRAM_UP = "par_up"
    TRAPEZOID_WIDE_TOP = "trap_top"
    TRAPEZOID_WIDE_BOTTOM = "trap_bottom"

    @property
    def is_parallelogram(self) -> bool:
        return self in (BlockShape.PARALLELOGRAM_DOWN, BlockShape.PARALLELOGRAM_UP)

    @property
    def is_trapezoid(self) -> bool:
        return self in (BlockShape.TRAPEZOID_WIDE_TOP, BlockShape.TRAPEZOID_WIDE_BOTTOM)


SHAPE_ORDER = tuple(BlockShape)


def _is_integer(x: Fraction) -> bool:
    return Fraction(x).denominator == 1


@dataclass(frozen=True)
class Block:
    shape: BlockShape
    r: int
    s: int
    gamma: Fraction

    @property
    def size(self) -> int:
        return self.r + self.s

    @property
    def k(self) -> int:
        """Number of free nu parameters."""
        return min(self.r, self.s)

    def shape_violations(self) -> list[str]:
        r, s = self.r, self.s
        if r < 0 or s < 0 or r + s < 1:
            return ["shape/size"]
        if self.shape == BlockShape.RECTANGLE or self.shape.is_parallelogram:
            ok = r == s
        elif self.shape == BlockShape.TRAPEZOID_WIDE_TOP:
            ok = r == s + 1
        else:
            ok = s == r + 1
        return [] if ok else ["shape/size"]

    def parity_ok(self, epsilon: int) -> bool:
        if self.shape == BlockShape.RECTANGLE:
            return _is_integer(self.gamma + Fraction(epsilon, 2))
        return _is_integer(self.gamma + Fraction(epsilon + 1, 2))

    def flipped(self) -> "Block":
        if self.shape == BlockShape.PARALLELOGRAM_DOWN:
            return replace(self, shape=BlockShape.PARALLELOGRAM_UP)
        if self.shape == BlockShape.PARALLELOGRAM_UP:
            return replace(self, shape=BlockShape.PARALLELOGRAM_DOWN)
        raise DatumValidationError(f"block {self} is not a parallelogram")

    def __str__(self) -> str:
        return f"{self.shape.value}({self.r},{self.s})@{format_rational(self.gamma)}"


@dataclass(frozen=True)
class LambdaDatum:
    sig: Signature
    blocks: tuple[Block, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "blocks", tuple(self.blocks))

    def violations(self) -> list[str]:
        found: list[str] = []
        if not self.blocks:
            found.append("sizes do not sum to signature")
            return found
        for block in self.blocks:
            found.extend(block.shape_violations())
        if sum(b.r for b in self.blocks) != self.sig.p or sum(b.s for b in self.blocks) != self.sig.q:
            found.append("sizes do not sum to signature")
        contents = [b.gamma for b in self.blocks]
        if len(set(contents)) != len(contents):
            found.append("contents not distinct")
        elif any(contents[i] <= contents[i + 1] for i in range(len(contents) - 1)):
            found.append("contents not decreasing")
        if any(not b.parity_ok(self.sig.epsilon) for b in self.blocks):
            found.append("parity")
        # keep first occurrence of each message, in order
        return list(dict.fromkeys(found))

    def check(self) -> "LambdaDatum":
        found = self.violations()
        if found:
            raise DatumValidationError(f"invalid datum {self}: {', '.join(found)}")
        return self

    def left_positions(self, index: int) -> range:
        start = sum(b.r for b in self.blocks[:index])
        return range(start, start + self.blocks[index].r)

    def right_positions(self, index: int) -> range:
        start = sum(b.s for b in self.blocks[:index])
        return range(start, start + self.blocks[index].s)

    def range_positions(self, block_range: range) -> tuple[range, range]:
        """Left and right positions covered by a contiguous block range."""
        lefts = [self.left_positions(i) for i in block_range]
        rights = [self.right_positions(i) for i in block_range]
        left = range(lefts[0].start, lefts[-1].stop)
        right = range(rights[0].start, rights[-1].stop)
        return left, right

    def content_multiset(self) -> Vector:
        return tuple(sorted((b.gamma for b in self.blocks for _ in range(b.size)), reverse=True))

    def lambda_a(self) -> Vector:
        """The aligned lambda_a vector this datum encodes."""
        left = [b.gamma for b in self.blocks for _ in range(b.r)]
        right = [b.gamma for b in self.blocks for _ in range(b.s)]
        return tuple(left + right)

    def __str__(self) -> str:
        return f"{self.sig}[{', '.join(str(b) for b in self.blocks)}]"


def _count_outside(d: LambdaDatum, index: int, attr: str) -> tuple[int, int]:
    """(count in blocks strictly right, count in blocks strictly left) of ``attr``."""
    right = sum(getattr(b, attr) for b in d.blocks[index + 1:])
    left = sum(getattr(b, attr) for b in d.blocks[:index])
    return right, left


def rho_u(d: LambdaDatum) -> Vector:
    """
    rho(u) of the theta-stable parabolic attached to the datum, aligned: every
    coordinate of block i gets (#coords strictly right - #coords strictly left) / 2.
    """
    per_block = []
    for i in range(len(d.blocks)):
        r_right, r_left = _count_outside(d, i, "r")
        s_right, s_left = _count_outside(d, i, "s")
        per_block.append(Fraction(r_right + s_right - r_left - s_left, 2))
    return _spread(d, per_block, per_block)


def two_rho_u_cap_p(d: LambdaDatum) -> Vector:
    """
    2rho(u cap p), aligned. A left coordinate counts the right coordinates in
    blocks to its right minus those to its left; right coordinates mirror this.
    """
    left_vals, right_vals = [], []
    for i in range(len(d.blocks)):
        s_right, s_left = _count_outside(d, i, "s")
        r_right, r_left = _count_outside(d, i, "r")
        left_vals.append(Fraction(s_right - s_left))
        right_vals.append(Fraction(r_right - r_left))
    return _spread(d, left_vals, right_vals)


def _spread(d: LambdaDatum, left_vals: list[Fraction], right_vals: list[Fraction]) -> Vector:
    left = [left_vals[i] for i, b in enumerate(d.blocks) for _ in range(b.r)]
    right = [right_vals[i] for i, b in enumerate(d.blocks) for _ in range(b.s)]
    return tuple(left + right)


def parallelogram_correction(shape: BlockShape) -> tuple[Fraction, Fraction]:
    """(left shift, right shift) applied to a block's coordinates."""
    if shape == BlockShape.PARALLELOGRAM_DOWN:
        return HALF, -HALF
    if shape == BlockShape.PARALLELOGRAM_UP:
        return -HALF, HALF
    return Fraction(0), Fraction(0)


def _base_mu(d: LambdaDatum) -> Vector:
    return tuple(
        a - u + c for a, u, c in zip(d.lambda_a(), rho_u(d), two_rho_u_cap_p(d))
    )


def mu_from_datum(d: LambdaDatum) -> KTypeWeight:
    """
    The unique K-type whose lambda_a-datum is ``d``.

    Raises
    ------
    DatumValidationError
        If the datum violates its invariants or the reconstructed weight is
        not an integral K-dominant weight.
    """
    d.check()
    base = list(_base_mu(d))
    p = d.sig.p
    for i, block in enumerate(d.blocks):
        shift_left, shift_right = parallelogram_correction(block.shape)
        for pos in d.left_positions(i):
            base[pos] += shift_left
        for pos in d.right_positions(i):
            base[p + pos] += shift_right
    if not all(_is_integer(x) for x in base):
        raise DatumValidationError(f"datum {d} does not reconstruct an integral weight")
    return KTypeWeight(tuple(int(x) for x in base[:p]), tuple(int(x) for x in base[p:]))


def _runs(res: LambdaAResult) -> Iterator[tuple[Fraction, int, int]]:
    """Yields (content, r, s) for each run of equal merged values."""
    current, r, s = None, 0, 0
    for value, (side, _) in zip(res.merged_sorted, res.order):
        if current is not None and value != current:
            yield current, r, s
            r = s = 0
        current = value
        if side == LEFT:
            r += 1
        else:
            s += 1
    if current is not None:
        yield current, r, s


def datum_from_lambda_a(res: LambdaAResult, mu: KTypeWeight, sig: Signature) -> LambdaDatum:
    """
    Groups lambda_a into blocks and reads off their shapes.

    Parallelogram orientation cannot be seen in lambda_a; it is decided by
    which of the two corrected reconstructions matches ``mu`` on the block.
    """
    mu.check_fits(sig)
    eps = sig.epsilon
    blocks: list[Block] = []
    for gamma, r, s in _runs(res):
        if r == s + 1:
            shape = BlockShape.TRAPEZOID_WIDE_TOP
        elif s == r + 1:
            shape = BlockShape.TRAPEZOID_WIDE_BOTTOM
        elif r == s:
            shape = BlockShape.RECTANGLE if _is_integer(gamma + Fraction(eps, 2)) else BlockShape.PARALLELOGRAM_DOWN
        else:
            raise DatumValidationError(f"lambda_a run at {format_rational(gamma)} has size ({r},{s})")
        blocks.append(Block(shape, r, s, gamma))

    datum = LambdaDatum(sig, tuple(blocks))
    if "parity" in datum.violations():
        raise DatumValidationError(f"lambda_a of {mu} gives blocks with wrong parity: {datum}")

    base = _base_mu(datum)
    coords = mu.coords
    for i, block in enumerate(datum.blocks):
        if not block.shape.is_parallelogram:
            continue
        positions = list(datum.left_positions(i)) + [sig.p + pos for pos in datum.right_positions(i)]
        for shape in (BlockShape.PARALLELOGRAM_DOWN, BlockShape.PARALLELOGRAM_UP):
            shift_left, shift_right = parallelogram_correction(shape)
            expected = [base[pos] + (shift_left if pos < sig.p else shift_right) for pos in positions]
            if all(coords[pos] == e for pos, e in zip(positions, expected)):
                blocks[i] = replace(block, shape=shape)
                break
        else:
            raise DatumValidationError(f"weight {mu} matches neither parallelogram at {format_rational(block.gamma)}")

    result = LambdaDatum(sig, tuple(blocks)).check()
    logger.debug(f"datum of {mu}: {result}")
    return result


def datum_from_mu(mu: KTypeWeight, sig: Signature) -> LambdaDatum:
    return datum_from_lambda_a(compute_lambda_a(mu, sig), mu, sig)


def flip_parallelogram(d: LambdaDatum, index: int) -> LambdaDatum:
    """Swaps the orientation of the parallelogram at ``index``."""
    if not 0 <= index < len(d.blocks):
        raise DatumValidationError(f"no block {index} in {d}")
    blocks = list(d.blocks)
    blocks[index] = blocks[index].flipped()
    return LambdaDatum(d.sig, tuple(blocks))


def dual_datum(d: LambdaDatum) -> LambdaDatum:
    """
    Datum of the contragredient: block order reversed, contents negated and
    parallelograms flipped, so that ``mu_from_datum(dual_datum(d))`` is the
    dual of ``mu_from_datum(d)``.
    """
    blocks = []
    for block in reversed(d.blocks):
        if block.shape.is_parallelogram:
            block = block.flipped()
        blocks.append(replace(block, gamma=-block.gamma))
    return LambdaDatum(d.sig, tuple(blocks))


def _candidate_blocks(gamma: Fraction, p_left: int, q_left: int, eps: int) -> Iterator[Block]:
    for shape in SHAPE_ORDER:
        for k in range(0, max(p_left, q_left) + 1):
            if shape == BlockShape.TRAPEZOID_WIDE_TOP:
                r, s = k + 1, k
            elif shape == BlockShape.TRAPEZOID_WIDE_BOTTOM:
                r, s = k, k + 1
            else:
                r, s = k, k
            if r + s < 1 or r > p_left or s > q_left:
                continue
            block = Block(shape, r, s, gamma)
            if block.parity_ok(eps):
                yield block


def enumerate_data(sig: Signature, content_bound: Fraction, force: bool = False) -> list[LambdaDatum]:
    """
    All lambda_a-data with every content in [-bound, bound].

    Data come out ordered by their first block's content (descending), then
    by shape and size, recursively.
    """
    content_bound = Fraction(content_bound)
    if content_bound < 0:
        return []
    limit = guard("enumerate_max_rank", 8)
    if sig.n > limit and not force:
        raise GuardExceededError(f"enumerate_data: p+q = {sig.n} exceeds the guard {limit}; pass force")

    top = int(2 * content_bound)
    contents = [Fraction(k, 2) for k in range(top, -top - 1, -1)]
    eps = sig.epsilon
    found: list[LambdaDatum] = []

    def extend(start: int, p_left: int, q_left: int, chosen: list[Block]) -> None:
        if p_left == 0 and q_left == 0:
            found.append(LambdaDatum(sig, tuple(chosen)))
            return
        for c in range(start, len(contents)):
            for block in _candidate_blocks(contents[c], p_left, q_left, eps):
                chosen.append(block)
                extend(c + 1, p_left - block.r, q_left - block.s, chosen)
                chosen.pop()

    extend(0, sig.p, sig.q, [])
    logger.info(f"enumerated {len(found)} data for {sig} with bound {format_rational(content_bound)}")
    return found
