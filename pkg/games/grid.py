"""
Grid helpers shared by maze, sokoban, 8-puzzle, snake and minesweeper
"""

import re
from typing import Iterator, List, Optional, Sequence, Tuple

Pos = Tuple[int, int]

DIRECTIONS = {
    "U": (-1, 0),
    "D": (1, 0),
    "L": (0, -1),
    "R": (0, 1),
}

OPPOSITE = {"U": "D", "D": "U", "L": "R", "R": "L"}

DIRECTION_WORDS = {
    "up": "U",
    "down": "D",
    "left": "L",
    "right": "R",
}

_SEPARATORS = re.compile(r"[\s,;]+")


def parse_directions(payload: str) -> Optional[str]:
    """Move string over U/D/L/R; whitespace and commas are ignored, anything else is rejected"""
    moves = _SEPARATORS.sub("", payload).upper()
    if not moves or any(ch not in DIRECTIONS for ch in moves):
        return None
    return moves


def parse_single_direction(payload: str) -> Optional[str]:
    """One direction given as a letter or a word"""
    token = payload.strip().strip(".").lower()
    if token in DIRECTION_WORDS:
        return DIRECTION_WORDS[token]
    token = token.upper()
    return token if token in DIRECTIONS else None


def shift(pos: Sequence[int], direction: str) -> Pos:
    dr, dc = DIRECTIONS[direction]
    return pos[0] + dr, pos[1] + dc


def in_bounds(pos: Sequence[int], rows: int, cols: int) -> bool:
    return 0 <= pos[0] < rows and 0 <= pos[1] < cols


def neighbors4(pos: Sequence[int], rows: int, cols: int) -> Iterator[Pos]:
    for direction in "UDLR":
        nxt = shift(pos, direction)
        if in_bounds(nxt, rows, cols):
            yield nxt


def neighbors8(pos: Sequence[int], rows: int, cols: int) -> Iterator[Pos]:
    r, c = pos
    for dr in (-1, 0, 1):
        for dc in (-1, 0, 1):
            if (dr or dc) and 0 <= r + dr < rows and 0 <= c + dc < cols:
                yield r + dr, c + dc


def is_open(grid: List[str], pos: Sequence[int]) -> bool:
    """True when pos lies on the grid and is not a wall"""
    return in_bounds(pos, len(grid), len(grid[0])) and grid[pos[0]][pos[1]] != "#"


def render_rows(cells: List[List[str]]) -> str:
    return "\n".join("".join(row) for row in cells)
