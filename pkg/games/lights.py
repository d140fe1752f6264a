"""
Lights Out on a fixed 3x3 grid
"""

import re
from typing import Any, Dict, List, Optional, Tuple

import messages
from games.base import GameEngine, Outcome, binary_result, rejected

SIZE = 3

_CELL_RE = re.compile(r"\(?\s*(\d+)\s*,\s*(\d+)\s*\)?")
_PRESSES_RE = re.compile(r"^\s*(?:\(?\s*\d+\s*,\s*\d+\s*\)?[\s;,]*)+$")


def press(grid: List[List[int]], row: int, col: int) -> None:
    """Toggle a cell and its orthogonal neighbours in place"""
    for dr, dc in ((0, 0), (-1, 0), (1, 0), (0, -1), (0, 1)):
        r, c = row + dr, col + dc
        if 0 <= r < SIZE and 0 <= c < SIZE:
            grid[r][c] ^= 1


def all_off(grid: List[List[int]]) -> bool:
    return not any(any(row) for row in grid)


def parse_presses(payload: str) -> Optional[List[Tuple[int, int]]]:
    """1-based (row,col) pairs, or 'none' for the empty press set; returns 0-based cells"""
    text = payload.strip().lower().strip(".")
    if text in ("none", "[]", "()", "no presses"):
        return []
    if not _PRESSES_RE.match(text):
        return None
    return [(int(r) - 1, int(c) - 1) for r, c in _CELL_RE.findall(text)]


def apply_lights(board: Dict[str, Any], presses: List[Tuple[int, int]]) -> Outcome:
    """Apply every press (0-based cells); score 1 iff all lights end off"""
    for row, col in presses:
        if not (0 <= row < SIZE and 0 <= col < SIZE):
            return rejected(board, messages.LIGHTS_OUT_OF_RANGE.format(row=row + 1, col=col + 1, size=SIZE))
    grid = [list(row) for row in board["grid"]]
    for row, col in presses:
        press(grid, row, col)
    lit = sum(map(sum, grid))
    return binary_result({**board, "grid": grid}, lit == 0, messages.LIGHTS_REMAINING.format(count=lit))


class LightsOutGame(GameEngine):
    NAME = "lights-out"
    DIMENSION = "MLR"
    EPOCH_MODE = "single"
    SCORE_RULE = "binary"

    def generate(self, rng, params):
        grid = [[0] * SIZE for _ in range(SIZE)]
        for row in range(SIZE):
            for col in range(SIZE):
                if rng.random() < 0.5:
                    press(grid, row, col)
        if all_off(grid):
            press(grid, rng.randint(0, SIZE - 1), rng.randint(0, SIZE - 1))
        return {"grid": grid}

    def render(self, board):
        return "\n".join(" ".join(str(v) for v in row) for row in board["grid"])

    def apply(self, board, payload, rng):
        presses = parse_presses(payload)
        if presses is None:
            return self.bad_format(board)
        return apply_lights(board, presses)
