"""
Sokoban with levels built by pulling boxes backwards from a solved position
Every generated level is solvable because each pull is the inverse of a push
"""

import logging
from collections import deque
from typing import Any, Dict, FrozenSet, List, Tuple

import messages
from games.base import GameEngine, Outcome
from games.grid import DIRECTIONS, Pos, is_open, parse_directions, shift

logger = logging.getLogger(__name__)

MAX_ATTEMPTS = 200


def sokoban_move(walls: List[str], boxes: FrozenSet[Pos], player: Pos, direction: str) -> Tuple[FrozenSet[Pos], Pos]:
    """Push rules; a blocked move returns the position unchanged"""
    target = shift(player, direction)
    if not is_open(walls, target):
        return boxes, player
    if target in boxes:
        beyond = shift(target, direction)
        if not is_open(walls, beyond) or beyond in boxes:
            return boxes, player
        return (boxes - {target}) | {beyond}, target
    return boxes, target


def boxes_on_goals(board: Dict[str, Any]) -> int:
    goals = {tuple(g) for g in board["goals"]}
    return sum(1 for b in board["boxes"] if tuple(b) in goals)


def apply_sokoban(board: Dict[str, Any], moves: str) -> Outcome:
    """Simulate the move string; the score is the fraction of boxes resting on goals"""
    boxes = frozenset(tuple(b) for b in board["boxes"])
    player = tuple(board["player"])
    for direction in moves:
        boxes, player = sokoban_move(board["walls"], boxes, player, direction)
    result = {**board, "boxes": sorted(list(b) for b in boxes), "player": list(player)}
    placed = boxes_on_goals(result)
    total = len(board["boxes"])
    score = placed / total
    return Outcome(result, score, True, messages.SOKOBAN_RESULT.format(placed=placed, total=total))


def _floor_connected(walls: List[str]) -> bool:
    floor = [(r, c) for r, line in enumerate(walls) for c, ch in enumerate(line) if ch != "#"]
    if not floor:
        return False
    seen = {floor[0]}
    queue = deque([floor[0]])
    while queue:
        pos = queue.popleft()
        for direction in DIRECTIONS:
            nxt = shift(pos, direction)
            if nxt not in seen and is_open(walls, nxt):
                seen.add(nxt)
                queue.append(nxt)
    return len(seen) == len(floor)


def _room(rng, side: int, inner_walls: int) -> List[str]:
    cells = [["#" if r in (0, side - 1) or c in (0, side - 1) else "." for c in range(side)] for r in range(side)]
    interior = [(r, c) for r in range(1, side - 1) for c in range(1, side - 1)]
    rng.shuffle(interior)
    placed = 0
    for r, c in interior:
        if placed == inner_walls:
            break
        cells[r][c] = "#"
        if _floor_connected(["".join(row) for row in cells]):
            placed += 1
        else:
            cells[r][c] = "."
    return ["".join(row) for row in cells]


def reverse_pull_level(rng, side: int, box_count: int, pulls: int, inner_walls: int) -> Dict[str, Any]:
    """Place boxes on goals, then walk the player around pulling boxes off them"""
    for attempt in range(MAX_ATTEMPTS):
        walls = _room(rng, side, inner_walls)
        floor = [(r, c) for r, line in enumerate(walls) for c, ch in enumerate(line) if ch == "."]
        rng.shuffle(floor)
        goals = floor[:box_count]
        boxes = set(goals)
        player = floor[box_count]
        for _ in range(pulls):
            direction = rng.choice("UDLR")
            target = shift(player, direction)
            if not is_open(walls, target) or target in boxes:
                continue
            behind = (2 * player[0] - target[0], 2 * player[1] - target[1])
            if behind in boxes and rng.random() < 0.5:
                boxes.discard(behind)
                boxes.add(player)
            player = target
        if boxes != set(goals):
            return {
                "walls": walls,
                "goals": sorted(list(g) for g in goals),
                "boxes": sorted(list(b) for b in boxes),
                "player": list(player),
            }
        logger.debug(f"Sokoban attempt {attempt} ended solved, retrying")
    raise RuntimeError("could not pull any box off its goal")


class SokobanGame(GameEngine):
    NAME = "sokoban"
    DIMENSION = "SGR"
    EPOCH_MODE = "single"
    SCORE_RULE = "proportional"
    PARAMS = {
        "side": (5, 9, 7),
        "boxes": (1, 3, 2),
        "pulls": (5, 300, 60),
        "inner_walls": (0, 6, 2),
    }
    LEVELS = {
        1: {"boxes": 1, "pulls": 30},
        2: {"boxes": 2, "pulls": 60},
        3: {"boxes": 3, "pulls": 100},
    }

    def check_params(self, params):
        interior = (params["side"] - 2) ** 2
        if params["boxes"] + params["inner_walls"] + 1 > interior:
            return "room too small for the requested boxes and walls"
        return None

    def generate(self, rng, params):
        return reverse_pull_level(rng, params["side"], params["boxes"], params["pulls"], params["inner_walls"])

    def render(self, board):
        rows = [list(line) for line in board["walls"]]
        for r, c in board["goals"]:
            rows[r][c] = "G"
        for r, c in board["boxes"]:
            rows[r][c] = "*" if rows[r][c] == "G" else "B"
        pr, pc = board["player"]
        rows[pr][pc] = "+" if rows[pr][pc] == "G" else "P"
        return "\n".join("".join(row) for row in rows)

    def apply(self, board, payload, rng):
        moves = parse_directions(payload)
        if moves is None:
            return self.bad_format(board)
        return apply_sokoban(board, moves)
