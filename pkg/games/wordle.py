"""
Wordle: guess a five-letter secret in a limited number of tries
"""

import hashlib
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, FrozenSet, Tuple

import messages
from games.base import GameEngine, Outcome, rejected

WORD_FILE = Path(__file__).with_name("words.txt")
WORD_LENGTH = 5
# sha256 of the newline-joined list; changes when words.txt changes
WORD_LIST_SHA256 = "1aa98f0ab107d98060bac69f1a98025a44bff3b8308d50726ed039e1b11d7843"


@lru_cache(maxsize=1)
def word_list() -> Tuple[str, ...]:
    """The pinned lexicon, in file order"""
    words = WORD_FILE.read_text(encoding="utf-8").split()
    return tuple(w.strip().lower() for w in words if w.strip())


@lru_cache(maxsize=1)
def word_set() -> FrozenSet[str]:
    return frozenset(word_list())


def word_list_digest() -> str:
    return hashlib.sha256("\n".join(word_list()).encode()).hexdigest()


def wordle_feedback(secret: str, guess: str) -> str:
    """G = right place, Y = present elsewhere, X = absent; greens are claimed first"""
    result = ["X"] * WORD_LENGTH
    unmatched: Dict[str, int] = {}
    for i, (s, g) in enumerate(zip(secret, guess)):
        if s == g:
            result[i] = "G"
        else:
            unmatched[s] = unmatched.get(s, 0) + 1
    for i, g in enumerate(guess):
        if result[i] != "G" and unmatched.get(g, 0) > 0:
            result[i] = "Y"
            unmatched[g] -= 1
    return "".join(result)


def apply_guess(board: Dict[str, Any], guess: str) -> Outcome:
    """One guess; words outside the list are refused without spending a try"""
    if len(guess) != WORD_LENGTH or not guess.isalpha():
        return rejected(board, messages.WORDLE_BAD_WORD.format(length=WORD_LENGTH))
    if guess not in word_set():
        return rejected(board, messages.WORDLE_NOT_IN_LIST.format(guess=guess))
    feedback = wordle_feedback(board["secret"], guess)
    history = board["history"] + [[guess, feedback]]
    left = board["guesses_left"] - 1
    solved = guess == board["secret"]
    result = {**board, "history": history, "guesses_left": left, "solved": solved}
    if solved:
        return Outcome(result, 1.0, True, messages.WORDLE_SOLVED.format(guess=guess))
    if left == 0:
        return Outcome(result, 0.0, True, messages.WORDLE_OUT_OF_GUESSES.format(secret=board["secret"]))
    return Outcome(result, 0.0, False, messages.WORDLE_FEEDBACK.format(guess=guess, feedback=feedback, left=left))


class WordleGame(GameEngine):
    NAME = "wordle"
    DIMENSION = "PR"
    EPOCH_MODE = "multi"
    SCORE_RULE = "binary"
    PARAMS = {"guesses": (1, 10, 6)}
    LEVELS = {1: {"guesses": 8}, 2: {"guesses": 6}, 3: {"guesses": 4}}

    def generate(self, rng, params):
        return {
            "secret": rng.choice(word_list()),
            "guesses_left": params["guesses"],
            "history": [],
            "solved": False,
        }

    def render(self, board):
        lines = [messages.WORDLE_BOARD_HEADER.format(left=board["guesses_left"])]
        if not board["history"]:
            lines.append(messages.WORDLE_NO_GUESSES)
        for guess, feedback in board["history"]:
            lines.append(f"{guess.upper()}  {feedback}")
        return "\n".join(lines)

    def apply(self, board, payload, rng):
        guess = payload.strip().strip(".\"'`").lower()
        return apply_guess(board, guess)
