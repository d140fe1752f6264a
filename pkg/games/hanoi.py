"""
Tower of Hanoi
Single-epoch plan: the whole move list is graded at once
"""

import re
from typing import Any, Dict, List, Optional, Tuple

import messages
from games.base import GameEngine, Outcome, binary_result

PEGS = "ABC"

_MOVE = r"([ABC])\s*(?:->|→|-|to)\s*([ABC])"
_MOVE_RE = re.compile(_MOVE, re.IGNORECASE)
_PLAN_RE = re.compile(rf"^\s*{_MOVE}(?:\s*[,;\s]\s*{_MOVE})*\s*\.?\s*$", re.IGNORECASE)


def initial_board(disks: int) -> Dict[str, Any]:
    return {
        "disks": disks,
        "pegs": {"A": list(range(disks, 0, -1)), "B": [], "C": []},
        "target_peg": "C",
        "move_count": 0,
    }


def parse_moves(payload: str) -> Optional[List[Tuple[str, str]]]:
    if not _PLAN_RE.match(payload):
        return None
    return [(src.upper(), dst.upper()) for src, dst in _MOVE_RE.findall(payload)]


def apply_hanoi(board: Dict[str, Any], moves: List[Tuple[str, str]]) -> Outcome:
    """Simulate the plan; an illegal move ends the episode with score 0"""
    pegs = {peg: list(stack) for peg, stack in board["pegs"].items()}
    count = board["move_count"]
    for index, (src, dst) in enumerate(moves, start=1):
        source, dest = pegs[src], pegs[dst]
        if src == dst or not source or (dest and dest[-1] < source[-1]):
            result = {**board, "pegs": pegs, "move_count": count}
            return binary_result(result, False, messages.HANOI_ILLEGAL.format(index=index, src=src, dst=dst))
        dest.append(source.pop())
        count += 1
    result = {**board, "pegs": pegs, "move_count": count}
    solved = len(pegs[board["target_peg"]]) == board["disks"]
    return binary_result(result, solved, messages.HANOI_UNFINISHED.format(target=board["target_peg"]))


class HanoiGame(GameEngine):
    NAME = "tower-of-hanoi"
    DIMENSION = "MLR"
    EPOCH_MODE = "single"
    SCORE_RULE = "binary"
    PARAMS = {"disks": (1, 12, 3)}
    LEVELS = {1: {"disks": 3}, 2: {"disks": 5}, 3: {"disks": 7}}

    def generate(self, rng, params):
        # start position is forced: every disk on A, target C
        return initial_board(params["disks"])

    def render(self, board):
        lines = [messages.HANOI_BOARD_HEADER.format(disks=board["disks"], target=board["target_peg"])]
        for peg in PEGS:
            stack = board["pegs"][peg]
            lines.append(f"{peg}: {' '.join(str(d) for d in stack) if stack else '(empty)'}")
        return "\n".join(lines)

    def apply(self, board, payload, rng):
        moves = parse_moves(payload)
        if moves is None:
            return self.bad_format(board)
        return apply_hanoi(board, moves)
