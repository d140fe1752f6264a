"""
Engine base class shared by every game
An engine is stateless: boards are plain JSON-ready dicts passed in and out
"""

from typing import Any, Dict, NamedTuple, Optional, Tuple

import messages


class Outcome(NamedTuple):
    """Result of applying one parsed action to a board"""
    board: Dict[str, Any]
    score_delta: float = 0.0
    done: bool = False
    feedback: str = ""
    valid: bool = True


def rejected(board: Dict[str, Any], feedback: str) -> Outcome:
    """Outcome for an action the engine could not accept; the board is unchanged"""
    return Outcome(board, 0.0, False, feedback, False)


class GameEngine:
    """Base engine: constants describe the game, methods implement generate / render / apply"""

    NAME = ""
    DIMENSION = ""
    EPOCH_MODE = "single"
    SCORE_RULE = "binary"
    # name -> (minimum, maximum, default)
    PARAMS: Dict[str, Tuple[int, int, int]] = {}
    # level -> preset parameter values
    LEVELS: Dict[int, Dict[str, int]] = {}

    def resolve_params(self, difficulty: Optional[Dict[str, Any]] = None) -> Dict[str, int]:
        """Defaults, then the level preset, then explicit values"""
        difficulty = dict(difficulty or {})
        params = {name: spec[2] for name, spec in self.PARAMS.items()}
        level = difficulty.pop("level", None)
        if level is not None:
            params.update(self.LEVELS.get(int(level), {}))
        params.update({k: int(v) for k, v in difficulty.items()})
        return params

    def validate_params(self, difficulty: Optional[Dict[str, Any]] = None) -> Tuple[bool, str]:
        """Check difficulty parameters against the declared ranges"""
        difficulty = difficulty or {}
        for name, value in difficulty.items():
            if isinstance(value, bool) or not isinstance(value, int):
                return False, f"parameter '{name}' must be an integer"
            if name == "level":
                if value not in (1, 2, 3):
                    return False, "parameter 'level' must be 1, 2 or 3"
                continue
            if name not in self.PARAMS:
                return False, f"unknown parameter '{name}' for {self.NAME}"
        params = self.resolve_params(difficulty)
        for name, value in params.items():
            low, high, _ = self.PARAMS[name]
            if not low <= value <= high:
                return False, f"parameter '{name}'={value} outside [{low}, {high}]"
        problem = self.check_params(params)
        if problem:
            return False, problem
        return True, "OK"

    def check_params(self, params: Dict[str, int]) -> Optional[str]:
        """Cross-parameter constraints; returns a message when violated"""
        return None

    def generate(self, rng, params: Dict[str, int]) -> Dict[str, Any]:
        raise NotImplementedError

    def render(self, board: Dict[str, Any]) -> str:
        raise NotImplementedError

    def apply(self, board: Dict[str, Any], payload: str, rng) -> Outcome:
        raise NotImplementedError

    def rules(self) -> str:
        return messages.RULES[self.NAME]

    def answer_format(self) -> str:
        return messages.ANSWER_FORMATS[self.NAME]

    def bad_format(self, board: Dict[str, Any]) -> Outcome:
        return rejected(board, messages.FEEDBACK_BAD_FORMAT.format(expected=self.answer_format()))

    def describe(self) -> Dict[str, Any]:
        """Catalogue entry for this engine"""
        return {
            "name": self.NAME,
            "dimension": self.DIMENSION,
            "epoch_mode": self.EPOCH_MODE,
            "score_rule": self.SCORE_RULE,
            "params": {
                name: {"min": low, "max": high, "default": default}
                for name, (low, high, default) in self.PARAMS.items()
            },
            "levels": {str(k): v for k, v in self.LEVELS.items()},
        }


def binary_result(board: Dict[str, Any], solved: bool, detail: str = "") -> Outcome:
    """Final outcome for a single-epoch binary game"""
    if solved:
        return Outcome(board, 1.0, True, messages.FEEDBACK_SOLVED)
    return Outcome(board, 0.0, True, messages.FEEDBACK_NOT_SOLVED.format(detail=detail).strip())
