"""
2048 on a 4x4 board; every merge adds the merged tile's value to the score
"""

from typing import Any, Dict, List, Tuple

import messages
from games.base import GameEngine, Outcome, rejected
from games.grid import parse_single_direction

SIZE = 4
SPAWN_FOUR_PROBABILITY = 0.1


def slide_row_left(row: List[int]) -> Tuple[List[int], int]:
    """Compress toward the left, merging each equal pair once; returns (row, points)"""
    tiles = [v for v in row if v]
    merged: List[int] = []
    points = 0
    i = 0
    while i < len(tiles):
        if i + 1 < len(tiles) and tiles[i] == tiles[i + 1]:
            merged.append(tiles[i] * 2)
            points += tiles[i] * 2
            i += 2
        else:
            merged.append(tiles[i])
            i += 1
    return merged + [0] * (len(row) - len(merged)), points


def slide_grid(grid: List[List[int]], direction: str) -> Tuple[List[List[int]], int]:
    """Slide every row or column toward direction"""
    if direction in ("L", "R"):
        lines = [list(row) for row in grid]
    else:
        lines = [list(col) for col in zip(*grid)]
    reverse = direction in ("R", "D")
    points = 0
    out = []
    for line in lines:
        if reverse:
            line = line[::-1]
        moved, gained = slide_row_left(line)
        points += gained
        out.append(moved[::-1] if reverse else moved)
    if direction in ("U", "D"):
        out = [list(row) for row in zip(*out)]
    return out, points


def spawn_tile(grid: List[List[int]], rng) -> None:
    empties = [(r, c) for r in range(SIZE) for c in range(SIZE) if not grid[r][c]]
    if not empties:
        return
    r, c = rng.choice(empties)
    grid[r][c] = 4 if rng.random() < SPAWN_FOUR_PROBABILITY else 2


def has_move(grid: List[List[int]]) -> bool:
    return any(slide_grid(grid, d)[0] != grid for d in "UDLR")


def step_2048(board: Dict[str, Any], direction: str, rng) -> Outcome:
    """Slide, score merges, spawn one tile; a move that changes nothing is refused"""
    grid, points = slide_grid(board["grid"], direction)
    if grid == board["grid"]:
        return rejected(board, messages.G2048_NO_EFFECT.format(move=direction))
    spawn_tile(grid, rng)
    result = {**board, "grid": grid, "score": board["score"] + points}
    done = not has_move(grid)
    feedback = messages.G2048_MOVED.format(move=direction, points=points)
    if done:
        feedback += " " + messages.G2048_STUCK
    return Outcome(result, float(points), done, feedback)


class Game2048(GameEngine):
    NAME = "2048"
    DIMENSION = "SR"
    EPOCH_MODE = "multi"
    SCORE_RULE = "cumulative"

    def generate(self, rng, params):
        grid = [[0] * SIZE for _ in range(SIZE)]
        spawn_tile(grid, rng)
        spawn_tile(grid, rng)
        return {"grid": grid, "score": 0}

    def render(self, board):
        width = max(len(str(v)) for row in board["grid"] for v in row)
        lines = [" ".join((str(v) if v else ".").rjust(width) for v in row) for row in board["grid"]]
        lines.append(messages.G2048_SCORE_LINE.format(score=board["score"]))
        return "\n".join(lines)

    def apply(self, board, payload, rng):
        direction = parse_single_direction(payload)
        if direction is None:
            return self.bad_format(board)
        return step_2048(board, direction, rng)
