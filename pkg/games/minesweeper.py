"""
Minesweeper with deferred mine placement
Mines are laid only after the first reveal and never under that cell
"""

import re
from collections import deque
from typing import Any, Dict, List, Optional, Set, Tuple

import messages
from games.base import GameEngine, Outcome, rejected
from games.grid import Pos, neighbors8

HIDDEN = "?"
FLAG = "F"
MINE = "*"

_ACTION = re.compile(r"^(reveal|flag)\s*\(?\s*(\d+)\s*[,\s]\s*(\d+)\s*\)?$", re.IGNORECASE)


def parse_cell_action(payload: str) -> Optional[Tuple[str, int, int]]:
    """'reveal r c' or 'flag r c' with 1-based coordinates; returns 0-based cells"""
    match = _ACTION.match(payload.strip().rstrip("."))
    if not match:
        return None
    verb, row, col = match.groups()
    return verb.lower(), int(row) - 1, int(col) - 1


def place_mines(rng, side: int, count: int, safe: Pos) -> List[List[int]]:
    cells = [(r, c) for r in range(side) for c in range(side) if (r, c) != tuple(safe)]
    rng.shuffle(cells)
    return sorted([r, c] for r, c in cells[:count])


def adjacent_mines(mines: Set[Pos], pos: Pos, side: int) -> int:
    return sum(1 for n in neighbors8(pos, side, side) if n in mines)


def flood_reveal(view: List[List[str]], mines: Set[Pos], start: Pos) -> int:
    """Reveal start; zero-count cells spread to their hidden unflagged neighbours. Returns cells revealed"""
    side = len(view)
    revealed = 0
    queue = deque([start])
    seen = {start}
    while queue:
        r, c = queue.popleft()
        count = adjacent_mines(mines, (r, c), side)
        view[r][c] = str(count)
        revealed += 1
        if count:
            continue
        for n in neighbors8((r, c), side, side):
            if n not in seen and n not in mines and view[n[0]][n[1]] == HIDDEN:
                seen.add(n)
                queue.append(n)
    return revealed


def step_minesweeper(board: Dict[str, Any], verb: str, row: int, col: int, rng) -> Outcome:
    """Apply one reveal or flag; score deltas sum to revealed safe cells / total safe cells"""
    side = board["side"]
    if not (0 <= row < side and 0 <= col < side):
        return rejected(board, messages.MINES_OUT_OF_RANGE.format(row=row + 1, col=col + 1, side=side))
    view = [list(line) for line in board["view"]]
    cell = view[row][col]
    if cell not in (HIDDEN, FLAG):
        return rejected(board, messages.MINES_ALREADY_REVEALED.format(row=row + 1, col=col + 1))

    if verb == "flag":
        view[row][col] = HIDDEN if cell == FLAG else FLAG
        result = {**board, "view": ["".join(line) for line in view]}
        return Outcome(result, 0.0, False, messages.MINES_FLAGGED.format(row=row + 1, col=col + 1))

    if cell == FLAG:
        return rejected(board, messages.MINES_FLAGGED_CELL.format(row=row + 1, col=col + 1))
    mines_list = board["mines"]
    if not mines_list:
        mines_list = place_mines(rng, side, board["mine_count"], (row, col))
    mines = {tuple(m) for m in mines_list}
    safe_total = side * side - len(mines)

    if (row, col) in mines:
        view[row][col] = MINE
        result = {**board, "mines": mines_list, "view": ["".join(line) for line in view]}
        return Outcome(result, 0.0, True, messages.MINES_BOOM.format(row=row + 1, col=col + 1))

    opened = flood_reveal(view, mines, (row, col))
    revealed = board["revealed"] + opened
    result = {
        **board,
        "mines": mines_list,
        "view": ["".join(line) for line in view],
        "revealed": revealed,
    }
    done = revealed == safe_total
    feedback = messages.MINES_REVEALED.format(count=opened, revealed=revealed, safe=safe_total)
    if done:
        feedback += " " + messages.MINES_CLEARED
    return Outcome(result, opened / safe_total, done, feedback)


class MinesweeperGame(GameEngine):
    NAME = "minesweeper"
    DIMENSION = "CIR"
    EPOCH_MODE = "multi"
    SCORE_RULE = "proportional"
    PARAMS = {"side": (5, 16, 9), "mines": (1, 60, 10)}
    LEVELS = {
        1: {"side": 6, "mines": 5},
        2: {"side": 9, "mines": 10},
        3: {"side": 12, "mines": 24},
    }

    def check_params(self, params):
        if params["mines"] >= params["side"] ** 2:
            return "too many mines for the board"
        return None

    def generate(self, rng, params):
        side = params["side"]
        return {
            "side": side,
            "mine_count": params["mines"],
            "mines": [],
            "view": [HIDDEN * side] * side,
            "revealed": 0,
        }

    def render(self, board):
        side = board["side"]
        header = "   " + " ".join(str(c + 1).rjust(2) for c in range(side))
        lines = [messages.MINES_BOARD_HEADER.format(side=side, mines=board["mine_count"]), header]
        for r, line in enumerate(board["view"]):
            lines.append(str(r + 1).rjust(2) + " " + " ".join(ch.rjust(2) for ch in line))
        return "\n".join(lines)

    def apply(self, board, payload, rng):
        parsed = parse_cell_action(payload)
        if parsed is None:
            return self.bad_format(board)
        return step_minesweeper(board, *parsed, rng)
