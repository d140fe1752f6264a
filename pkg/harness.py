"""
Evaluation harness
Drives agents through episodes (print_board -> model -> parse -> verify), runs whole campaigns
with a JSONL checkpoint, and turns the episode archive into a score matrix
"""

import json
import logging
import secrets
import threading
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

import config
import messages
from agents import Agent
from clients import InProcessGameClient, TransportError, with_retries
from env_core import get_engine, parse_action
from games import REGISTRY
from scoring import ScoreMatrix, episode_score, write_dims_csv

logger = logging.getLogger(__name__)

CHECKPOINT_FILE = "checkpoint.jsonl"
FAILURES_FILE = "failures.json"
SCORES_FILE = "scores.csv"
DIMS_FILE = "dims.csv"

__all__ = [
    "CampaignConfig", "CampaignConfigError", "CampaignResult", "EpisodeRecord", "TransportError",
    "build_system_prompt", "run_episode", "run_campaign", "load_checkpoint", "build_score_matrix",
]


class CampaignConfigError(ValueError):
    pass


@dataclass
class CampaignConfig:
    games: List[str]
    model: str = "scripted"
    base_url: str = config.DEFAULT_BASE_URL
    api_key_env: str = config.DEFAULT_API_KEY_ENV
    label: Optional[str] = None
    seeds: Sequence[int] = config.DEFAULT_SEEDS
    single_epoch_episodes: int = config.SINGLE_EPOCH_EPISODES
    multi_epoch_episodes: int = config.MULTI_EPOCH_EPISODES
    max_rounds: int = config.MULTI_EPOCH_ROUND_CAP
    concurrency: int = config.CONCURRENCY
    output_dir: str = config.OUTPUT_DIR
    resume: bool = False
    paradigm_ban: Tuple[str, ...] = ()
    difficulty: Dict[str, Dict[str, Any]] = field(default_factory=dict)

    @property
    def model_label(self) -> str:
        return self.label or self.model

    def validate(self) -> None:
        unknown = [g for g in self.games if g not in REGISTRY]
        if unknown:
            raise CampaignConfigError(f"unknown games: {', '.join(unknown)}")
        if not self.games:
            raise CampaignConfigError("no games selected")
        if not list(self.seeds):
            raise CampaignConfigError("seed range is empty")
        if self.max_rounds < 1:
            raise CampaignConfigError("max rounds must be >= 1")
        if self.concurrency < 1:
            raise CampaignConfigError("concurrency must be >= 1")
        if self.single_epoch_episodes < 1 or self.multi_epoch_episodes < 1:
            raise CampaignConfigError("episodes per game must be >= 1")
        bad = [b for b in self.paradigm_ban if b not in messages.PARADIGM_BANS]
        if bad:
            raise CampaignConfigError(f"unknown paradigm bans: {', '.join(bad)}")

    def seeds_for(self, game: str) -> List[int]:
        """Single-epoch games take the first 50 seeds, multi-epoch games the first 20"""
        multi = get_engine(game).EPOCH_MODE == "multi"
        count = self.multi_epoch_episodes if multi else self.single_epoch_episodes
        return list(self.seeds)[:count]


@dataclass
class EpisodeRecord:
    game: str
    seed: int
    model: str
    transcript: List[Dict[str, Any]] = field(default_factory=list)
    raw_score: float = 0.0
    response_lengths: List[int] = field(default_factory=list)
    wall_time: float = 0.0
    error: Optional[str] = None

    @property
    def key(self) -> Tuple[str, str, int]:
        return (self.model, self.game, self.seed)

    @property
    def errored(self) -> bool:
        return self.error is not None

    def score(self) -> float:
        return episode_score(get_engine(self.game).SCORE_RULE, self)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "EpisodeRecord":
        return cls(
            game=data["game"],
            seed=int(data["seed"]),
            model=data["model"],
            transcript=list(data.get("transcript", [])),
            raw_score=float(data["raw_score"]),
            response_lengths=list(data.get("response_lengths", [])),
            wall_time=float(data.get("wall_time", 0.0)),
            error=data.get("error"),
        )


@dataclass
class CampaignResult:
    matrix: ScoreMatrix
    records: List[EpisodeRecord]
    failures: List[EpisodeRecord]


def build_system_prompt(bans: Iterable[str] = ()) -> str:
    """Rules preamble plus one fixed clause per banned paradigm"""
    clauses = [messages.PARADIGM_BANS[b] for b in messages.PARADIGM_BANS if b in set(bans)]
    return " ".join([messages.SYSTEM_PREAMBLE] + clauses)


# Episodes

def run_episode(campaign: CampaignConfig, game: str, seed: int, agent: Agent, client) -> EpisodeRecord:
    """Play one episode to completion; transport failures mark the record errored"""
    record = EpisodeRecord(game=game, seed=seed, model=campaign.model_label)
    started = time.time()
    system_prompt = build_system_prompt(campaign.paradigm_ban)
    engine = get_engine(game)
    max_rounds = campaign.max_rounds if engine.EPOCH_MODE == "multi" else None
    session_id = None
    try:
        session = with_retries(client.generate, game, seed, campaign.difficulty.get(game),
                               {"model": campaign.model_label}, max_rounds, request_id=secrets.token_hex(16))
        session_id = session["session_id"]
        agent.reset(session)
        invalid_streak = 0
        while True:
            board = with_retries(client.print_board, session_id)
            chat_messages = [
                {"role": "system", "content": system_prompt},
                {"role": "user", "content": board["prompt"]},
            ]
            reply = with_retries(agent.respond, chat_messages)
            parsed = parse_action(reply.text)
            action = f"{messages.ANSWER_MARKER} {parsed}" if parsed is not None else reply.text
            result = with_retries(client.verify, session_id, action, expected_round=board["round"])
            record.transcript.append({
                "round": board["round"],
                "prompt": board["prompt"],
                "response": reply.text,
                "action": parsed,
                "result": result,
            })
            record.response_lengths.append(reply.length)
            record.raw_score = result["total_score"]
            if result["done"]:
                break
            invalid_streak = 0 if result["valid"] else invalid_streak + 1
            if invalid_streak >= config.MAX_CONSECUTIVE_INVALID:
                logger.info(f"[{game} seed {seed}] stopped after {invalid_streak} invalid actions in a row")
                break
    except TransportError as e:
        record.error = str(e)
    except Exception as e:
        logger.error(f"[{game} seed {seed}] episode failed: {e}", exc_info=True)
        record.error = f"{type(e).__name__}: {e}"
    finally:
        if session_id is not None:
            try:
                client.close(session_id)
            except Exception as close_err:
                logger.debug(f"[{game} seed {seed}] session close failed: {close_err}")
    record.wall_time = round(time.time() - started, 3)
    if record.errored:
        logger.warning(f"[{game} seed {seed}] errored: {record.error}")
    else:
        logger.info(f"[{game} seed {seed}] finished in {len(record.transcript)} rounds, raw score {record.raw_score}")
    return record


# Checkpoint

def load_checkpoint(path: Path) -> List[EpisodeRecord]:
    """Complete records from a checkpoint; partial or malformed lines are dropped"""
    if not path.exists():
        return []
    records = []
    dropped = 0
    with open(path, encoding="utf-8") as f:
        for line in f:
            if not line.strip():
                continue
            try:
                records.append(EpisodeRecord.from_dict(json.loads(line)))
            except (ValueError, KeyError, TypeError):
                dropped += 1
    if dropped:
        logger.warning(f"Discarded {dropped} incomplete checkpoint lines in {path}")
    return records


def _record_line(record: EpisodeRecord) -> str:
    return json.dumps(record.to_dict(), sort_keys=True, ensure_ascii=False) + "\n"


def _rewrite_checkpoint(path: Path, records: List[EpisodeRecord]) -> None:
    with open(path, "w", encoding="utf-8") as f:
        for record in records:
            f.write(_record_line(record))


# Score export

def build_score_matrix(records: Iterable[EpisodeRecord], games: Sequence[str]) -> ScoreMatrix:
    """Raw per-game score = mean episode score over the non-errored episodes, one row per model"""
    by_cell: Dict[Tuple[str, str], List[float]] = {}
    for record in records:
        if not record.errored:
            by_cell.setdefault((record.model, record.game), []).append(record.score())
    models = sorted({model for model, _ in by_cell})
    scored = [g for g in games if all((m, g) in by_cell for m in models)]
    skipped = [g for g in games if g not in scored]
    if skipped:
        logger.warning(f"No scored episodes for {', '.join(skipped)}; left out of the score matrix")
    raw = np.array([[np.mean(by_cell[(m, g)]) for g in scored] for m in models], dtype=float).reshape(len(models), len(scored))
    dims = {g: get_engine(g).DIMENSION for g in scored}
    return ScoreMatrix(models, scored, raw, dims)


def write_failures(path: Path, failures: List[EpisodeRecord]) -> None:
    entries = [{"model": r.model, "game": r.game, "seed": r.seed, "error": r.error} for r in failures]
    with open(path, "w", encoding="utf-8") as f:
        json.dump(entries, f, indent=2, sort_keys=True)
        f.write("\n")


# Campaigns

def run_campaign(campaign: CampaignConfig, agent_factory: Callable[[], Agent], client=None,
                 max_episodes: Optional[int] = None) -> CampaignResult:
    """Run every pending (game, seed) episode; max_episodes stops early, for interrupted runs"""
    campaign.validate()
    client = client if client is not None else InProcessGameClient()
    out = Path(campaign.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    checkpoint = out / CHECKPOINT_FILE

    if campaign.resume:
        done = load_checkpoint(checkpoint)
        _rewrite_checkpoint(checkpoint, done)
        logger.info(f"Resuming with {len(done)} episodes from {checkpoint}")
    else:
        done = []
        _rewrite_checkpoint(checkpoint, done)

    present = {r.key for r in done}
    label = campaign.model_label
    tasks = [(g, s) for g in campaign.games for s in campaign.seeds_for(g) if (label, g, s) not in present]
    if max_episodes is not None:
        tasks = tasks[:max_episodes]
    logger.info(f"Campaign {label}: {len(tasks)} episodes to run, {len(present)} already in the checkpoint")

    file_lock = threading.Lock()
    failures: List[EpisodeRecord] = []
    records = list(done)

    def play(game: str, seed: int) -> EpisodeRecord:
        return run_episode(campaign, game, seed, agent_factory(), client)

    completed = 0
    with ThreadPoolExecutor(max_workers=campaign.concurrency) as executor:
        future_to_task = {executor.submit(play, g, s): (g, s) for g, s in tasks}
        for future in as_completed(future_to_task):
            game, seed = future_to_task[future]
            record = future.result()
            with file_lock:
                if record.errored:
                    failures.append(record)
                else:
                    records.append(record)
                    with open(checkpoint, "a", encoding="utf-8") as f:
                        f.write(_record_line(record))
                completed += 1
            logger.info(f"Progress: {completed}/{len(tasks)} episodes ({game} seed {seed})")

    failures.sort(key=lambda r: r.key)
    write_failures(out / FAILURES_FILE, failures)
    records.sort(key=lambda r: r.key)
    matrix = build_score_matrix([r for r in records if r.model == label], campaign.games)
    matrix.to_frame().to_csv(out / SCORES_FILE, index=False, float_format="%.6f")
    write_dims_csv(matrix.dims, matrix.games, out / DIMS_FILE)
    if failures:
        logger.warning(f"{len(failures)} episodes errored; see {out / FAILURES_FILE}")
    return CampaignResult(matrix, records, failures)
