"""
ASCII block pictures. Each block is drawn as a top row of left cells, a bottom
row of right cells and a rule, with the content and nu written underneath:

    rect       par_down    par_up     trap_top    trap_bottom
    [][]       [][]         [][]      [][][]       [][]
    [][]        [][]       [][]        [][]       [][][]
"""

from core.weights import format_rational
from datum.blocks import Block, BlockShape
from theta.theta_datum import ThetaDatum

CELL = "[]"
GAP = "   "


def _offsets(block: Block) -> tuple[int, int]:
    """Character offsets of the top and bottom rows."""
    half = len(CELL) // 2
    if block.shape == BlockShape.PARALLELOGRAM_DOWN:
        return 0, half
    if block.shape == BlockShape.PARALLELOGRAM_UP:
        return half, 0
    if block.shape == BlockShape.TRAPEZOID_WIDE_TOP:
        return 0, half
    if block.shape == BlockShape.TRAPEZOID_WIDE_BOTTOM:
        return half, 0
    return 0, 0


def render_block(block: Block, nu) -> list[str]:
    top_offset, bottom_offset = _offsets(block)
    top = " " * top_offset + CELL * block.r
    bottom = " " * bottom_offset + CELL * block.s
    label = f"{format_rational(block.gamma)}"
    if nu:
        label += " nu=(" + ",".join(format_rational(x) for x in nu) + ")"
    width = max(len(top), len(bottom), len(label))
    rule = "-" * max(len(top), len(bottom))
    return [row.ljust(width) for row in (top, bottom, rule, label)]


def render_diagram(td: ThetaDatum) -> str:
    """All blocks side by side in content order."""
    columns = [render_block(b, nu) for b, nu in zip(td.blocks, td.nus)]
    rows = [GAP.join(col[i] for col in columns).rstrip() for i in range(4)]
    return "\n".join([str(td.sig)] + rows)
