"""
HTTP service for the arena
POST /generate, /print_board and /verify over JSON, plus a game catalogue and a health check
"""

import json
import logging
import time
from contextlib import asynccontextmanager
from pathlib import Path
from typing import Any, Dict, Optional

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

import config
from env_core import EnvError, SessionRegistry, list_games
from scheduler import get_scheduler_status, start_scheduler, stop_scheduler

logger = logging.getLogger(__name__)
request_logger = logging.getLogger("arena.requests")

ERROR_STATUS = {
    "unknown_game": 404,
    "invalid_parameter": 400,
    "session_not_found": 404,
    "episode_finished": 409,
    "stale_round": 409,
    "action_too_large": 413,
    "too_many_sessions": 503,
}


class ActionTooLargeError(EnvError):
    code = "action_too_large"


class InitPacket(BaseModel):
    """Session request: game and seed are required, the rest is optional"""
    game: str
    seed: int
    difficulty: Dict[str, Any] = Field(default_factory=dict)
    model_info: Dict[str, Any] = Field(default_factory=dict)
    # port and output_dir describe the caller and are only recorded in the request log
    port: Optional[int] = None
    output_dir: Optional[str] = None
    max_rounds: Optional[int] = None
    request_id: Optional[str] = None


class SessionRequest(BaseModel):
    session_id: str


class VerifyRequest(BaseModel):
    session_id: str
    action: str
    round: Optional[int] = None


class JsonLineFormatter(logging.Formatter):
    """One JSON object per record; the record message must be a dict"""

    def format(self, record: logging.LogRecord) -> str:
        entry = {"ts": round(record.created, 3)}
        entry.update(record.msg if isinstance(record.msg, dict) else {"message": record.getMessage()})
        return json.dumps(entry, sort_keys=True, default=str)


def configure_request_log(output_dir: str) -> Path:
    """Send request records to <output_dir>/requests.jsonl"""
    path = Path(output_dir) / "requests.jsonl"
    path.parent.mkdir(parents=True, exist_ok=True)
    for handler in list(request_logger.handlers):
        request_logger.removeHandler(handler)
        handler.close()
    handler = logging.FileHandler(path, encoding="utf-8")
    handler.setFormatter(JsonLineFormatter())
    request_logger.addHandler(handler)
    request_logger.setLevel(logging.INFO)
    request_logger.propagate = False
    return path


# Handlers shared by the HTTP routes and the in-process client

def handle_generate(request: InitPacket, registry: SessionRegistry) -> Dict[str, Any]:
    entry = registry.create(request.game, request.seed, request.difficulty or None,
                            request.model_info, request.max_rounds, request.request_id)
    return {"session_id": entry.session_id, **entry.state.summary()}


def handle_print_board(session_id: str, registry: SessionRegistry) -> Dict[str, Any]:
    observation = registry.render(session_id)
    return {"session_id": session_id, **observation.to_dict()}


def handle_verify(session_id: str, action: str, registry: SessionRegistry,
                  max_action_bytes: int = config.MAX_ACTION_BYTES,
                  expected_round: Optional[int] = None) -> Dict[str, Any]:
    size = len(action.encode("utf-8"))
    if size > max_action_bytes:
        raise ActionTooLargeError(f"action of {size} bytes exceeds the {max_action_bytes} byte limit")
    return registry.step(session_id, action, expected_round).to_dict()


def error_body(error: EnvError) -> Dict[str, str]:
    return {"error": error.code, "detail": str(error)}


def create_app(registry: Optional[SessionRegistry] = None, output_dir: str = config.OUTPUT_DIR,
               max_action_bytes: int = config.MAX_ACTION_BYTES, run_scheduler: bool = False) -> FastAPI:
    """Build the service around a session registry"""
    registry = registry if registry is not None else SessionRegistry()
    configure_request_log(output_dir)

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        if run_scheduler:
            start_scheduler(registry)
        yield
        if run_scheduler:
            stop_scheduler()

    app = FastAPI(title="reasoning-arena", lifespan=lifespan)
    app.state.registry = registry

    def log_request(endpoint: str, started: float, status: int, **fields: Any) -> None:
        entry = {"endpoint": endpoint, "status": status, "elapsed_ms": round((time.perf_counter() - started) * 1000, 3)}
        entry.update({k: v for k, v in fields.items() if v is not None})
        request_logger.info(entry)

    def run(endpoint: str, handler, **fields: Any):
        started = time.perf_counter()
        try:
            body = handler()
        except EnvError as e:
            status = ERROR_STATUS.get(e.code, 400)
            log_request(endpoint, started, status, error=e.code, **fields)
            logger.info(f"{endpoint} rejected: {e.code} {e}")
            return JSONResponse(status_code=status, content=error_body(e))
        session_id = fields.pop("session_id", None)
        log_request(endpoint, started, 200, session_id=body.get("session_id", session_id), **fields)
        return body

    @app.exception_handler(RequestValidationError)
    async def validation_handler(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"error": "invalid_parameter", "detail": str(exc.errors())})

    @app.post("/generate")
    def generate(packet: InitPacket):
        return run("generate", lambda: handle_generate(packet, registry),
                   game=packet.game, seed=packet.seed, model_info=packet.model_info or None,
                   port=packet.port, output_dir=packet.output_dir)

    @app.post("/print_board")
    def print_board(body: SessionRequest):
        return run("print_board", lambda: handle_print_board(body.session_id, registry),
                   session_id=body.session_id)

    @app.post("/verify")
    def verify(body: VerifyRequest):
        return run("verify",
                   lambda: handle_verify(body.session_id, body.action, registry, max_action_bytes, body.round),
                   session_id=body.session_id, round=body.round)

    @app.get("/games")
    def games():
        return {"games": list_games()}

    @app.get("/health")
    def health():
        return {"status": "ok", "sessions": len(registry), "scheduler": get_scheduler_status()}

    return app


def serve(host: str = config.SERVICE_HOST, port: int = config.SERVICE_PORT, max_sessions: int = config.MAX_SESSIONS,
          idle_timeout: int = config.IDLE_TIMEOUT_SECONDS, output_dir: str = config.OUTPUT_DIR) -> None:
    import uvicorn

    registry = SessionRegistry(max_sessions=max_sessions, idle_timeout=idle_timeout)
    app = create_app(registry, output_dir=output_dir, run_scheduler=True)
    logger.info(f"Serving on http://{host}:{port} (max {max_sessions} sessions, idle timeout {idle_timeout}s)")
    uvicorn.run(app, host=host, port=port, log_level=config.LOG_LEVEL.lower())
