"""
Agents that play episodes for the harness
ChatAgent asks a hosted model; the scripted agents (oracle, random, N-point threshold, echo)
replay the session on a local mirror, which works because generation and steps are deterministic
"""

import logging
from typing import Any, Callable, Dict, List, Optional, Sequence, Union

import oracles
from clients import ChatReply, ModelEndpoint, chat_complete, response_length
from env_core import GameState, advance, generate_state
from games import minesweeper, wordle
from games.hanoi import PEGS
from rng import RngStream

logger = logging.getLogger(__name__)

DIRECTIONS = "UDLR"


class Agent:
    """Base agent: reset() once per episode, then respond() once per round"""

    name = "agent"

    def reset(self, session: Dict[str, Any]) -> None:
        pass

    def respond(self, chat_messages: List[Dict[str, str]]) -> ChatReply:
        raise NotImplementedError


class ChatAgent(Agent):
    """Zero-shot model player: every round is one fresh system + user exchange"""

    def __init__(self, endpoint: ModelEndpoint, session=None):
        self.endpoint = endpoint
        self.session = session
        self.name = endpoint.model

    def respond(self, chat_messages):
        return chat_complete(self.endpoint, chat_messages, session=self.session)


class EchoAgent(Agent):
    """Replies with fixed answers in turn; the last one repeats"""

    name = "echo"

    def __init__(self, answers: Union[str, Sequence[str]]):
        self.answers = [answers] if isinstance(answers, str) else list(answers)
        self.turn = 0

    def reset(self, session):
        self.turn = 0

    def respond(self, chat_messages):
        answer = self.answers[min(self.turn, len(self.answers) - 1)]
        self.turn += 1
        text = f"Answer: {answer}"
        return ChatReply(text, response_length(text))


class MirrorAgent(Agent):
    """Scripted agent that tracks the session on a local copy of the game state"""

    def __init__(self):
        self.mirror: Optional[GameState] = None

    def reset(self, session):
        self.mirror = generate_state(session["game"], session["seed"], session.get("difficulty"),
                                     session.get("max_rounds"))

    def choose(self, state: GameState) -> str:
        raise NotImplementedError

    def respond(self, chat_messages):
        text = f"Answer: {self.choose(self.mirror)}"
        if not self.mirror.done:
            self.mirror, _ = advance(self.mirror, text)
        return ChatReply(text, response_length(text))


def _minesweeper_pick(board: Dict[str, Any]) -> str:
    """Centre first; afterwards the first hidden cell without a mine"""
    side = board["side"]
    if not board["mines"]:
        return f"reveal {side // 2 + 1} {side // 2 + 1}"
    mines = {tuple(m) for m in board["mines"]}
    for r, line in enumerate(board["view"]):
        for c, cell in enumerate(line):
            if cell == minesweeper.HIDDEN and (r, c) not in mines:
                return f"reveal {r + 1} {c + 1}"
    raise oracles.OracleError("no safe hidden cell left")


class OracleAgent(MirrorAgent):
    """Perfect player for every game with a known optimal plan"""

    name = "oracle"

    def choose(self, state):
        game = state.game_id.name
        if state.game_id.epoch_mode == "single":
            return oracles.solve_board(game, state.board).payload
        if game == "wordle":
            return state.board["secret"]
        if game == "minesweeper":
            return _minesweeper_pick(state.board)
        raise oracles.OracleError(f"no oracle policy for '{game}'")


class RandomAgent(MirrorAgent):
    """Uniformly random well-formed actions; a lower baseline for each game"""

    name = "random"

    def __init__(self, salt: str = "random-agent"):
        super().__init__()
        self.salt = salt
        self.rng: Optional[RngStream] = None

    def reset(self, session):
        super().reset(session)
        self.rng = RngStream.derive(session["seed"], f"{self.salt}:{session['game']}")

    def _directions(self, count: int) -> str:
        return "".join(self.rng.choice(DIRECTIONS) for _ in range(count))

    def choose(self, state):
        game = state.game_id.name
        board = state.board
        rng = self.rng
        if game in ("maze", "sokoban"):
            return self._directions(4 * len(board["grid"] if game == "maze" else board["walls"]))
        if game == "8-puzzle":
            return self._directions(state.difficulty["walk"])
        if game in ("2048", "snake"):
            return rng.choice(DIRECTIONS)
        if game == "n-point":
            return rng.choice(["hit", "stand"])
        if game == "trust-evolution":
            return rng.choice(["cooperate", "cheat"])
        if game == "wordle":
            return rng.choice(wordle.word_list())
        if game == "minesweeper":
            hidden = [(r, c) for r, line in enumerate(board["view"]) for c, cell in enumerate(line)
                      if cell == minesweeper.HIDDEN]
            r, c = rng.choice(hidden)
            return f"reveal {r + 1} {c + 1}"
        if game == "tower-of-hanoi":
            pairs = [f"{a}->{b}" for a in PEGS for b in PEGS if a != b]
            return ", ".join(rng.choice(pairs) for _ in range(2 ** board["disks"] - 1))
        if game == "lights-out":
            cells = [f"({r + 1},{c + 1})" for r in range(len(board["grid"])) for c in range(len(board["grid"]))
                     if rng.random() < 0.5]
            return " ".join(cells) or "none"
        if game == "sudoku":
            side = board["side"]
            return "\n".join("".join(str(v or rng.randint(1, side)) for v in row) for row in board["givens"])
        if game == "one-stroke-drawing":
            return "-".join(rng.choice(board["vertices"]) for _ in range(len(board["edges"]) + 1))
        if game == "black-white-copy":
            n = board["n"]
            ops = []
            for _ in range(rng.randint(1, n)):
                if rng.random() < 0.5:
                    ops.append(f"toggle {rng.randint(1, n)}")
                else:
                    ops.append(f"copy {rng.randint(1, n - 1)}")
            return ", ".join(ops)
        raise oracles.OracleError(f"no random policy for '{game}'")


class NPointThresholdAgent(MirrorAgent):
    """Hits while the hand is below N - margin; margin None always stands"""

    def __init__(self, margin: Optional[int] = None):
        super().__init__()
        self.margin = margin
        self.name = "always-stand" if margin is None else f"threshold-{margin}"

    def choose(self, state):
        board = state.board
        if self.margin is not None and board["player_sum"] < board["threshold"] - self.margin:
            return "hit"
        return "stand"


AGENT_FACTORIES: Dict[str, Callable[[], Agent]] = {
    "oracle": OracleAgent,
    "random": RandomAgent,
    "always-stand": NPointThresholdAgent,
}


def make_agent_factory(kind: str, endpoint: Optional[ModelEndpoint] = None) -> Callable[[], Agent]:
    """Factory producing a fresh agent per episode"""
    if kind == "chat":
        if endpoint is None:
            raise ValueError("chat agent needs a model endpoint")
        return lambda: ChatAgent(endpoint)
    if kind not in AGENT_FACTORIES:
        raise ValueError(f"unknown agent '{kind}' (choose from chat, {', '.join(AGENT_FACTORIES)})")
    return AGENT_FACTORIES[kind]
