"""
Maze: plan a path from the start (top-left) to the exit (bottom-right)
"""

from typing import Any, Dict, List, Optional, Sequence

import messages
from games.base import GameEngine, Outcome, binary_result
from games.grid import Pos, is_open, parse_directions, shift


def carve_maze(rng, side: int) -> List[str]:
    """Recursive backtracker over the odd cells of a side x side wall grid"""
    cells = [["#"] * side for _ in range(side)]
    start = (1, 1)
    cells[1][1] = "."
    stack = [start]
    while stack:
        r, c = stack[-1]
        options = []
        for dr, dc in ((-2, 0), (2, 0), (0, -2), (0, 2)):
            nr, nc = r + dr, c + dc
            if 0 < nr < side - 1 and 0 < nc < side - 1 and cells[nr][nc] == "#":
                options.append((nr, nc))
        if not options:
            stack.pop()
            continue
        nr, nc = rng.choice(options)
        cells[(r + nr) // 2][(c + nc) // 2] = "."
        cells[nr][nc] = "."
        stack.append((nr, nc))
    return ["".join(row) for row in cells]


def maze_move(grid: List[str], pos: Sequence[int], direction: str) -> Optional[Pos]:
    """Position after one move, or None when the move runs into a wall"""
    nxt = shift(pos, direction)
    return nxt if is_open(grid, nxt) else None


def apply_maze(board: Dict[str, Any], moves: str) -> Outcome:
    """Walk the plan; a wall ends the episode with 0, reaching the exit scores 1"""
    pos = tuple(board["agent"])
    exit_pos = tuple(board["exit"])
    for index, direction in enumerate(moves, start=1):
        if pos == exit_pos:
            break
        nxt = maze_move(board["grid"], pos, direction)
        if nxt is None:
            result = {**board, "agent": list(pos)}
            return binary_result(result, False, messages.MAZE_WALL.format(index=index, move=direction))
        pos = nxt
    result = {**board, "agent": list(pos)}
    return binary_result(result, pos == exit_pos, messages.MAZE_NOT_AT_EXIT.format(row=pos[0], col=pos[1]))


class MazeGame(GameEngine):
    NAME = "maze"
    DIMENSION = "SGR"
    EPOCH_MODE = "single"
    SCORE_RULE = "binary"
    PARAMS = {"side": (5, 31, 9)}
    LEVELS = {1: {"side": 7}, 2: {"side": 9}, 3: {"side": 15}}

    def check_params(self, params):
        if params["side"] % 2 == 0:
            return "parameter 'side' must be odd"
        return None

    def generate(self, rng, params):
        side = params["side"]
        return {
            "grid": carve_maze(rng, side),
            "start": [1, 1],
            "agent": [1, 1],
            "exit": [side - 2, side - 2],
        }

    def render(self, board):
        rows = [list(line) for line in board["grid"]]
        er, ec = board["exit"]
        ar, ac = board["agent"]
        rows[er][ec] = "E"
        rows[ar][ac] = "P"
        return "\n".join("".join(row) for row in rows)

    def apply(self, board, payload, rng):
        moves = parse_directions(payload)
        if moves is None:
            return self.bad_format(board)
        return apply_maze(board, moves)
