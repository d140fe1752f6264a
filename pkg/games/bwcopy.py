"""
Black White Copy: reach a target pattern from an all-white grid with row toggles and downward row copies
"""

import re
from typing import Any, Dict, List, Optional, Tuple

import messages
from games.base import GameEngine, Outcome, binary_result, rejected

WHITE = "W"
BLACK = "B"

Op = Tuple[str, int]

_OP = re.compile(r"^(toggle|copy)\s*\(?\s*(\d+)\s*\)?$", re.IGNORECASE)
_SPLIT = re.compile(r"[,;\n]+")


def parse_ops(payload: str) -> Optional[List[Op]]:
    """Comma separated 'toggle i' / 'copy i' with 1-based rows, or 'none'. Returns 0-based rows"""
    text = payload.strip().rstrip(".")
    if text.lower() in ("none", "[]", ""):
        return []
    ops = []
    for token in _SPLIT.split(text):
        token = token.strip()
        if not token:
            continue
        match = _OP.match(token)
        if not match:
            return None
        ops.append((match.group(1).lower(), int(match.group(2)) - 1))
    return ops


def apply_op(grid: List[str], op: Op) -> List[str]:
    kind, row = op
    out = list(grid)
    if kind == "toggle":
        out[row] = "".join(BLACK if ch == WHITE else WHITE for ch in grid[row])
    else:
        out[row + 1] = grid[row]
    return out


def op_in_range(op: Op, n: int) -> bool:
    kind, row = op
    if kind == "copy":
        return 0 <= row < n - 1
    return 0 <= row < n


def blank_grid(n: int) -> List[str]:
    return [WHITE * n] * n


def generate_with_ops(rng, n: int, count: int) -> Tuple[List[str], List[Op]]:
    """Target built by seeded ops from all-white; keeps going while the target is still blank"""
    grid = blank_grid(n)
    ops: List[Op] = []
    while len(ops) < count or grid == blank_grid(n):
        if rng.random() < 0.5:
            op = ("toggle", rng.randint(0, n - 1))
        else:
            op = ("copy", rng.randint(0, n - 2))
        grid = apply_op(grid, op)
        ops.append(op)
    return grid, ops


def format_ops(ops: List[Op]) -> str:
    if not ops:
        return "none"
    return ", ".join(f"{kind} {row + 1}" for kind, row in ops)


def apply_bwcopy(board: Dict[str, Any], ops: List[Op]) -> Outcome:
    """Apply ops in order from the current grid; score 1 iff the grid matches the target"""
    n = board["n"]
    for op in ops:
        if not op_in_range(op, n):
            return rejected(board, messages.BWCOPY_OUT_OF_RANGE.format(op=op[0], row=op[1] + 1, n=n))
    grid = board["grid"]
    for op in ops:
        grid = apply_op(grid, op)
    result = {**board, "grid": grid, "ops_used": board["ops_used"] + len(ops)}
    wrong = sum(1 for a, b in zip(grid, board["target"]) if a != b)
    return binary_result(result, wrong == 0, messages.BWCOPY_MISMATCH.format(rows=wrong))


class BlackWhiteCopyGame(GameEngine):
    NAME = "black-white-copy"
    DIMENSION = "CIR"
    EPOCH_MODE = "single"
    SCORE_RULE = "binary"
    PARAMS = {"n": (3, 6, 4), "ops": (1, 8, 3)}
    LEVELS = {1: {"n": 3, "ops": 2}, 2: {"n": 4, "ops": 3}, 3: {"n": 5, "ops": 5}}

    def generate(self, rng, params):
        n = params["n"]
        target, _ = generate_with_ops(rng, n, params["ops"])
        return {"n": n, "grid": blank_grid(n), "target": target, "ops_used": 0}

    def render(self, board):
        lines = [messages.BWCOPY_CURRENT]
        lines += [f"{i + 1} {row}" for i, row in enumerate(board["grid"])]
        lines.append(messages.BWCOPY_TARGET)
        lines += [f"{i + 1} {row}" for i, row in enumerate(board["target"])]
        return "\n".join(lines)

    def apply(self, board, payload, rng):
        ops = parse_ops(payload)
        if ops is None:
            return self.bad_format(board)
        return apply_bwcopy(board, ops)
