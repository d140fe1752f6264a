"""
Snake on a bounded square grid
"""

from typing import Any, Dict, List

import messages
from games.base import GameEngine, Outcome
from games.grid import in_bounds, parse_single_direction, shift


def spawn_food(rng, size: int, body: List[List[int]]):
    occupied = {tuple(p) for p in body}
    empties = [[r, c] for r in range(size) for c in range(size) if (r, c) not in occupied]
    return rng.choice(empties) if empties else None


def step_snake(board: Dict[str, Any], direction: str, rng) -> Outcome:
    """Advance one cell; food gives +1 and growth, walls and body end the episode"""
    size = board["size"]
    body = board["body"]
    head = list(shift(body[0], direction))
    result = {**board, "direction": direction}
    if not in_bounds(head, size, size):
        return Outcome(result, 0.0, True, messages.SNAKE_WALL.format(move=direction, length=len(body)))
    if len(body) > 1 and head == body[1]:
        return Outcome(result, 0.0, True, messages.SNAKE_NECK.format(move=direction))

    eating = head == board["food"]
    # the tail cell is vacated in the same tick unless the snake grows
    remaining = body if eating else body[:-1]
    if head in remaining:
        return Outcome(result, 0.0, True, messages.SNAKE_BODY.format(move=direction, length=len(body)))

    new_body = [head] + [list(p) for p in remaining]
    result["body"] = new_body
    if not eating:
        return Outcome(result, 0.0, False, messages.SNAKE_MOVED.format(move=direction))
    result["eaten"] = board["eaten"] + 1
    result["food"] = spawn_food(rng, size, new_body)
    if result["food"] is None:
        return Outcome(result, 1.0, True, messages.SNAKE_FILLED)
    return Outcome(result, 1.0, False, messages.SNAKE_ATE.format(length=len(new_body)))


class SnakeGame(GameEngine):
    NAME = "snake"
    DIMENSION = "CIR"
    EPOCH_MODE = "multi"
    SCORE_RULE = "cumulative"
    PARAMS = {"size": (5, 20, 10)}
    LEVELS = {1: {"size": 6}, 2: {"size": 10}, 3: {"size": 14}}

    def generate(self, rng, params):
        size = params["size"]
        mid = size // 2
        body = [[mid, mid], [mid, mid - 1]]
        return {
            "size": size,
            "body": body,
            "direction": "R",
            "food": spawn_food(rng, size, body),
            "eaten": 0,
        }

    def render(self, board):
        size = board["size"]
        cells = [["."] * size for _ in range(size)]
        if board["food"] is not None:
            cells[board["food"][0]][board["food"][1]] = "*"
        for r, c in board["body"][1:]:
            cells[r][c] = "S"
        head_r, head_c = board["body"][0]
        cells[head_r][head_c] = "H"
        border = "#" * (size + 2)
        lines = [border] + ["#" + "".join(row) + "#" for row in cells] + [border]
        lines.append(messages.SNAKE_STATUS.format(
            direction=board["direction"], length=len(board["body"]), eaten=board["eaten"]))
        return "\n".join(lines)

    def apply(self, board, payload, rng):
        direction = parse_single_direction(payload)
        if direction is None:
            return self.bad_format(board)
        return step_snake(board, direction, rng)
