"""
Sudoku (4x4 or 9x9) with givens that admit exactly one completion
"""

import hashlib
import logging
import re
from typing import Any, Dict, List, Optional

import messages
from games.base import GameEngine, Outcome, binary_result, rejected

logger = logging.getLogger(__name__)

BOX = {4: 2, 9: 3}

_ROW_JUNK = re.compile(r"[\s,|]+")


def solution_digest(grid: List[List[int]]) -> str:
    return hashlib.sha256("".join(str(v) for row in grid for v in row).encode()).hexdigest()


def solved_grid(rng, side: int) -> List[List[int]]:
    """Random complete grid: canonical pattern with shuffled bands, stacks, rows, columns and digits"""
    b = BOX[side]

    def shuffled(items):
        items = list(items)
        rng.shuffle(items)
        return items

    rows = [band * b + r for band in shuffled(range(b)) for r in shuffled(range(b))]
    cols = [stack * b + c for stack in shuffled(range(b)) for c in shuffled(range(b))]
    digits = shuffled(range(1, side + 1))
    return [[digits[(b * (r % b) + r // b + c) % side] for c in cols] for r in rows]


def is_complete_solution(grid: List[List[int]], side: int) -> bool:
    """Every row, column and box is a permutation of 1..side"""
    b = BOX[side]
    full = set(range(1, side + 1))
    for i in range(side):
        if set(grid[i]) != full or {grid[r][i] for r in range(side)} != full:
            return False
    for br in range(0, side, b):
        for bc in range(0, side, b):
            if {grid[r][c] for r in range(br, br + b) for c in range(bc, bc + b)} != full:
                return False
    return True


def parse_grid(payload: str, side: int) -> Optional[List[List[int]]]:
    lines = [_ROW_JUNK.sub("", line) for line in payload.strip().splitlines()]
    # drop pure separator lines such as "---+---"
    lines = [line for line in lines if line and not set(line) <= set("-+=_")]
    if len(lines) == 1 and len(lines[0]) == side * side:
        lines = [lines[0][i:i + side] for i in range(0, side * side, side)]
    if len(lines) != side or any(len(line) != side for line in lines):
        return None
    if any(ch not in "123456789" for line in lines for ch in line):
        return None
    return [[int(ch) for ch in line] for line in lines]


def apply_sudoku(board: Dict[str, Any], grid: List[List[int]]) -> Outcome:
    """Score 1 iff all givens are kept and the grid is a valid completion"""
    side = board["side"]
    if len(grid) != side or any(len(row) != side for row in grid):
        return rejected(board, messages.SUDOKU_WRONG_SHAPE.format(side=side))
    givens = board["givens"]
    for r in range(side):
        for c in range(side):
            if givens[r][c] and grid[r][c] != givens[r][c]:
                return binary_result(board, False, messages.SUDOKU_CLUE_CHANGED.format(row=r + 1, col=c + 1))
    solved = is_complete_solution(grid, side)
    return binary_result({**board, "answer": grid}, solved, messages.SUDOKU_CONFLICT)


class SudokuGame(GameEngine):
    NAME = "sudoku"
    DIMENSION = "MLR"
    EPOCH_MODE = "single"
    SCORE_RULE = "binary"
    PARAMS = {"side": (4, 9, 9), "givens": (4, 81, 32)}
    LEVELS = {
        1: {"side": 4, "givens": 6},
        2: {"side": 9, "givens": 32},
        3: {"side": 9, "givens": 26},
    }

    def resolve_params(self, difficulty=None):
        params = super().resolve_params(difficulty)
        explicit = difficulty or {}
        if params["side"] == 4 and "givens" not in explicit and explicit.get("level") != 1:
            params["givens"] = self.LEVELS[1]["givens"]
        return params

    def check_params(self, params):
        if params["side"] not in BOX:
            return "parameter 'side' must be 4 or 9"
        if params["givens"] > params["side"] ** 2:
            return f"parameter 'givens' cannot exceed {params['side'] ** 2}"
        return None

    def generate(self, rng, params):
        from oracles import sudoku_solution_count

        side = params["side"]
        solution = solved_grid(rng, side)
        givens = [list(row) for row in solution]
        cells = [(r, c) for r in range(side) for c in range(side)]
        rng.shuffle(cells)
        remaining = side * side
        for r, c in cells:
            if remaining <= params["givens"]:
                break
            kept = givens[r][c]
            givens[r][c] = 0
            if sudoku_solution_count(givens) == 1:
                remaining -= 1
            else:
                givens[r][c] = kept
        logger.debug(f"Sudoku {side}x{side} generated with {remaining} givens")
        return {"side": side, "givens": givens, "solution_digest": solution_digest(solution)}

    def render(self, board):
        side = board["side"]
        b = BOX[side]
        lines = []
        for r, row in enumerate(board["givens"]):
            if r and r % b == 0:
                lines.append("-" * (2 * side + 2 * (b - 1) - 1))
            cells = []
            for c, value in enumerate(row):
                if c and c % b == 0:
                    cells.append("|")
                cells.append(str(value) if value else ".")
            lines.append(" ".join(cells))
        return "\n".join(lines)

    def apply(self, board, payload, rng):
        grid = parse_grid(payload, board["side"])
        if grid is None:
            return self.bad_format(board)
        return apply_sudoku(board, grid)
