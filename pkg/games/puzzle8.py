"""
8-puzzle: slide the blank until the tiles read 1..8 with the blank last
"""

from typing import Any, Dict, Optional, Sequence, Tuple

import messages
from games.base import GameEngine, Outcome, binary_result
from games.grid import OPPOSITE, in_bounds, parse_directions, shift

SIDE = 3
GOAL = (1, 2, 3, 4, 5, 6, 7, 8, 0)


def slide_blank(tiles: Sequence[int], direction: str) -> Optional[Tuple[int, ...]]:
    """Tiles after the blank travels one step, or None when it would leave the grid"""
    blank = tiles.index(0)
    row, col = divmod(blank, SIDE)
    nr, nc = shift((row, col), direction)
    if not in_bounds((nr, nc), SIDE, SIDE):
        return None
    other = nr * SIDE + nc
    moved = list(tiles)
    moved[blank], moved[other] = moved[other], 0
    return tuple(moved)


def is_solvable(tiles: Sequence[int]) -> bool:
    """Odd grid width: solvable iff the tile permutation has an even inversion count"""
    values = [t for t in tiles if t]
    inversions = sum(1 for i in range(len(values)) for j in range(i + 1, len(values)) if values[i] > values[j])
    return inversions % 2 == 0


def apply_8puzzle(board: Dict[str, Any], moves: str) -> Outcome:
    """Off-grid blank moves are skipped; score 1 iff the final grid is the goal"""
    tiles = tuple(board["tiles"])
    for direction in moves:
        moved = slide_blank(tiles, direction)
        if moved is not None:
            tiles = moved
    result = {**board, "tiles": list(tiles)}
    return binary_result(result, tiles == GOAL, messages.PUZZLE8_NOT_SOLVED)


class EightPuzzleGame(GameEngine):
    NAME = "8-puzzle"
    DIMENSION = "SGR"
    EPOCH_MODE = "single"
    SCORE_RULE = "binary"
    PARAMS = {"walk": (1, 100, 30)}
    LEVELS = {1: {"walk": 10}, 2: {"walk": 30}, 3: {"walk": 60}}

    def generate(self, rng, params):
        tiles = GOAL
        last = None
        steps = 0
        # random walk of the blank; keep going while the walk has returned to the goal
        while steps < params["walk"] or tiles == GOAL:
            options = [d for d in "UDLR" if d != OPPOSITE.get(last) and slide_blank(tiles, d) is not None]
            last = rng.choice(options)
            tiles = slide_blank(tiles, last)
            steps += 1
        return {"tiles": list(tiles)}

    def render(self, board):
        tiles = board["tiles"]
        return "\n".join(
            " ".join(str(t) if t else "_" for t in tiles[r * SIDE:(r + 1) * SIDE]) for r in range(SIDE)
        )

    def apply(self, board, payload, rng):
        moves = parse_directions(payload)
        if moves is None:
            return self.bad_format(board)
        return apply_8puzzle(board, moves)
