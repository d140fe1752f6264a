"""
Environment core for the reasoning arena
Game sessions behind the generate / print-board / verify contract, plus the session registry
"""

import copy
import json
import logging
import re
import secrets
import threading
import time
from dataclasses import dataclass, field, replace
from typing import Any, Callable, Dict, List, Optional, Tuple

import config
import messages
from games import REGISTRY, GameEngine
from games.base import rejected
from rng import RngStream

logger = logging.getLogger(__name__)


class EnvError(Exception):
    """Base error for session and environment failures"""
    code = "env_error"


class UnknownGameError(EnvError):
    code = "unknown_game"


class InvalidParameterError(EnvError):
    code = "invalid_parameter"


class SessionNotFoundError(EnvError):
    code = "session_not_found"


class EpisodeFinishedError(EnvError):
    code = "episode_finished"


class TooManySessionsError(EnvError):
    code = "too_many_sessions"


class StaleRoundError(EnvError):
    code = "stale_round"


@dataclass(frozen=True)
class GameId:
    name: str
    dimension: str
    epoch_mode: str
    score_rule: str

    @classmethod
    def of(cls, engine: GameEngine) -> "GameId":
        return cls(engine.NAME, engine.DIMENSION, engine.EPOCH_MODE, engine.SCORE_RULE)


@dataclass
class GameState:
    game_id: GameId
    seed: int
    difficulty: Dict[str, int]
    round: int
    max_rounds: int
    board: Dict[str, Any]
    cumulative_score: float
    done: bool
    rng: RngStream
    last_feedback: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {
            "game": self.game_id.name,
            "dimension": self.game_id.dimension,
            "epoch_mode": self.game_id.epoch_mode,
            "score_rule": self.game_id.score_rule,
            "seed": self.seed,
            "difficulty": dict(self.difficulty),
            "round": self.round,
            "max_rounds": self.max_rounds,
            "board": self.board,
            "cumulative_score": self.cumulative_score,
            "done": self.done,
            "rng": self.rng.to_dict(),
            "last_feedback": self.last_feedback,
        }

    def to_json(self) -> str:
        return canonical_json(self.to_dict())

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "GameState":
        engine = get_engine(data["game"])
        return cls(
            game_id=GameId.of(engine),
            seed=data["seed"],
            difficulty=dict(data["difficulty"]),
            round=data["round"],
            max_rounds=data["max_rounds"],
            board=copy.deepcopy(data["board"]),
            cumulative_score=data["cumulative_score"],
            done=data["done"],
            rng=RngStream.from_dict(data["rng"]),
            last_feedback=data.get("last_feedback", ""),
        )

    def summary(self) -> Dict[str, Any]:
        """Public view of a session: everything except the board and generator state"""
        return {
            "game": self.game_id.name,
            "dimension": self.game_id.dimension,
            "epoch_mode": self.game_id.epoch_mode,
            "score_rule": self.game_id.score_rule,
            "seed": self.seed,
            "difficulty": dict(self.difficulty),
            "round": self.round,
            "max_rounds": self.max_rounds,
            "total_score": self.cumulative_score,
            "done": self.done,
        }


@dataclass
class Observation:
    prompt_text: str
    round: int

    def to_dict(self) -> Dict[str, Any]:
        return {"prompt": self.prompt_text, "round": self.round}


@dataclass
class StepResult:
    score_delta: float
    total_score: float
    done: bool
    feedback: str
    valid: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            "score_delta": self.score_delta,
            "total_score": self.total_score,
            "done": self.done,
            "valid": self.valid,
            "feedback": self.feedback,
        }


def canonical_json(data: Any) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def get_engine(name: str) -> GameEngine:
    engine = REGISTRY.get(name)
    if engine is None:
        raise UnknownGameError(f"unknown game '{name}'")
    return engine


def list_games() -> List[Dict[str, Any]]:
    return [engine.describe() for engine in REGISTRY.values()]


def validate_difficulty(engine: GameEngine, difficulty: Any) -> Tuple[bool, str]:
    """Check a difficulty mapping for one engine"""
    if difficulty is None:
        return True, "OK"
    if not isinstance(difficulty, dict):
        return False, "difficulty must be a mapping of parameter names to integers"
    return engine.validate_params(difficulty)


def round_cap(engine: GameEngine, max_rounds: Optional[int] = None) -> int:
    if engine.EPOCH_MODE == "single":
        return config.SINGLE_EPOCH_ROUND_CAP
    return max_rounds if max_rounds is not None else config.MULTI_EPOCH_ROUND_CAP


# Pure state functions

def generate_state(game: str, seed: int, difficulty: Optional[Dict[str, Any]] = None,
                   max_rounds: Optional[int] = None) -> GameState:
    """Fresh state; a pure function of (game, seed, difficulty, max_rounds)"""
    engine = get_engine(game)
    if isinstance(seed, bool) or not isinstance(seed, int) or seed < 1:
        raise InvalidParameterError("seed must be an integer >= 1")
    if max_rounds is not None and max_rounds < 1:
        raise InvalidParameterError("max_rounds must be >= 1")
    ok, message = validate_difficulty(engine, difficulty)
    if not ok:
        raise InvalidParameterError(message)
    params = engine.resolve_params(difficulty)
    rng = RngStream.derive(seed, engine.NAME)
    board = engine.generate(rng, params)
    return GameState(
        game_id=GameId.of(engine),
        seed=seed,
        difficulty=params,
        round=0,
        max_rounds=round_cap(engine, max_rounds),
        board=board,
        cumulative_score=0.0,
        done=False,
        rng=rng,
    )


def observe(state: GameState) -> Observation:
    """Prompt for the current state; identical states give identical text"""
    if state.done:
        raise EpisodeFinishedError("episode already finished")
    engine = get_engine(state.game_id.name)
    feedback = messages.PROMPT_FEEDBACK_LINE.format(feedback=state.last_feedback) if state.last_feedback else ""
    prompt = messages.PROMPT_TEMPLATE.format(
        rules=engine.rules(),
        round=state.round + 1,
        max_rounds=state.max_rounds,
        board=engine.render(state.board),
        feedback=feedback,
        answer_format=engine.answer_format(),
        instruction=messages.ANSWER_INSTRUCTION,
    )
    return Observation(prompt_text=prompt, round=state.round)


_ANSWER_MARKER = re.compile(r"answer\s*:", re.IGNORECASE)
_BLANK_LINE = re.compile(r"\n[ \t]*\n")


def parse_action(response_text: Optional[str]) -> Optional[str]:
    """Payload after the last 'Answer:' marker up to the first blank line; None when absent or empty"""
    if not response_text:
        return None
    markers = list(_ANSWER_MARKER.finditer(response_text))
    if not markers:
        return None
    tail = response_text[markers[-1].end():].lstrip()
    block = _BLANK_LINE.split(tail, maxsplit=1)[0]
    payload = block.strip().strip("*`").strip()
    return payload or None


def advance(state: GameState, action_text: str) -> Tuple[GameState, StepResult]:
    """Apply one raw agent response; the input state is left untouched"""
    if state.done:
        raise EpisodeFinishedError("episode already finished")
    engine = get_engine(state.game_id.name)
    rng = RngStream.from_dict(state.rng.to_dict())
    board = copy.deepcopy(state.board)
    payload = parse_action(action_text)
    if payload is None:
        outcome = rejected(board, messages.FEEDBACK_NO_ANSWER)
    else:
        outcome = engine.apply(board, payload, rng)
    new_round = state.round + 1
    total = state.cumulative_score + outcome.score_delta
    done = outcome.done or new_round >= state.max_rounds
    feedback = outcome.feedback
    if done and not outcome.done:
        feedback = f"{feedback} {messages.FEEDBACK_ROUND_CAP}".strip()
    new_state = replace(
        state,
        round=new_round,
        board=outcome.board,
        cumulative_score=total,
        done=done,
        rng=rng,
        last_feedback=feedback,
    )
    return new_state, StepResult(outcome.score_delta, total, done, feedback, outcome.valid)


# Session registry

@dataclass
class SessionEntry:
    session_id: str
    state: GameState
    created_at: float
    last_touch: float
    model_info: Dict[str, Any] = field(default_factory=dict)
    request_id: Optional[str] = None
    last_step: Optional[Tuple[int, str, StepResult]] = None
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)


class SessionRegistry:
    """Thread-safe map of live sessions; each session admits one writer at a time"""

    def __init__(self, max_sessions: int = config.MAX_SESSIONS,
                 idle_timeout: float = config.IDLE_TIMEOUT_SECONDS,
                 clock: Callable[[], float] = time.time):
        self.max_sessions = max_sessions
        self.idle_timeout = idle_timeout
        self.clock = clock
        self._sessions: Dict[str, SessionEntry] = {}
        self._issued = set()
        self._requests: Dict[str, str] = {}
        self._lock = threading.Lock()

    def __len__(self) -> int:
        with self._lock:
            return len(self._sessions)

    def _new_id(self) -> str:
        session_id = secrets.token_hex(16)
        while session_id in self._issued:
            session_id = secrets.token_hex(16)
        self._issued.add(session_id)
        return session_id

    def create(self, game: str, seed: int, difficulty: Optional[Dict[str, Any]] = None,
               model_info: Optional[Dict[str, Any]] = None, max_rounds: Optional[int] = None,
               request_id: Optional[str] = None) -> SessionEntry:
        """New session; a repeated request_id returns the session it already created"""
        state = generate_state(game, seed, difficulty, max_rounds)
        now = self.clock()
        with self._lock:
            existing = self._sessions.get(self._requests.get(request_id)) if request_id else None
            if existing is not None:
                existing.last_touch = now
                logger.info(f"Session {existing.session_id} returned again for request {request_id}")
                return existing
            if len(self._sessions) >= self.max_sessions:
                raise TooManySessionsError(f"session limit {self.max_sessions} reached")
            entry = SessionEntry(self._new_id(), state, now, now, dict(model_info or {}), request_id)
            self._sessions[entry.session_id] = entry
            if request_id:
                self._requests[request_id] = entry.session_id
        logger.info(f"Session {entry.session_id} created: {game} seed={seed} difficulty={state.difficulty}")
        return entry

    def get(self, session_id: str) -> SessionEntry:
        with self._lock:
            entry = self._sessions.get(session_id)
        if entry is None:
            raise SessionNotFoundError(f"no session '{session_id}'")
        entry.last_touch = self.clock()
        return entry

    def render(self, session_id: str) -> Observation:
        entry = self.get(session_id)
        with entry.lock:
            return observe(entry.state)

    def step(self, session_id: str, action_text: str, expected_round: Optional[int] = None) -> StepResult:
        """Apply one action; with expected_round a resent action returns the stored result"""
        entry = self.get(session_id)
        with entry.lock:
            if expected_round is not None:
                last = entry.last_step
                if last is not None and last[0] == expected_round and last[1] == action_text:
                    logger.info(f"Session {session_id} round {expected_round} resent; returning the stored result")
                    return last[2]
                if expected_round != entry.state.round:
                    raise StaleRoundError(f"action is for round {expected_round}, session is at round "
                                          f"{entry.state.round}")
            played = entry.state.round
            entry.state, result = advance(entry.state, action_text)
            entry.last_step = (played, action_text, result)
        if result.done:
            logger.info(f"Session {session_id} finished with score {result.total_score}")
        return result

    def _drop(self, session_id: str) -> Optional[SessionEntry]:
        entry = self._sessions.pop(session_id, None)
        if entry is not None and entry.request_id:
            self._requests.pop(entry.request_id, None)
        return entry

    def close(self, session_id: str) -> bool:
        with self._lock:
            return self._drop(session_id) is not None

    def evict_idle(self, now: Optional[float] = None) -> int:
        """Drop sessions untouched for longer than the idle timeout"""
        now = self.clock() if now is None else now
        with self._lock:
            stale = [sid for sid, e in self._sessions.items() if now - e.last_touch > self.idle_timeout]
            for sid in stale:
                self._drop(sid)
        if stale:
            logger.info(f"Evicted {len(stale)} idle sessions")
        return len(stale)


default_registry = SessionRegistry()


def create_session(game: str, seed: int, difficulty: Optional[Dict[str, Any]] = None) -> Tuple[str, GameState]:
    entry = default_registry.create(game, seed, difficulty)
    return entry.session_id, entry.state


def render_observation(session_id: str) -> Observation:
    return default_registry.render(session_id)


def step(session_id: str, action_text: str) -> StepResult:
    return default_registry.step(session_id, action_text)
