"""
Clients used by the harness
Game clients (in-process or over HTTP) and a chat-completions client for hosted models
"""

import logging
import os
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional

import requests

import config
from env_core import (EnvError, EpisodeFinishedError, InvalidParameterError, SessionNotFoundError,
                      SessionRegistry, StaleRoundError, TooManySessionsError, UnknownGameError)

logger = logging.getLogger(__name__)


class TransportError(Exception):
    """A remote call failed in a way worth retrying"""


# Retry policy

def with_retries(func: Callable, *args: Any, attempts: int = config.TRANSPORT_ATTEMPTS,
                 backoff: float = config.RETRY_BACKOFF_SECONDS, sleep: Optional[Callable[[float], None]] = None,
                 **kwargs: Any) -> Any:
    """Call func, retrying TransportError with exponential backoff; the last error is re-raised"""
    sleep = sleep or time.sleep
    delay = backoff
    for attempt in range(1, attempts + 1):
        try:
            return func(*args, **kwargs)
        except TransportError as e:
            if attempt >= attempts:
                logger.error(f"{getattr(func, '__name__', 'call')} failed after {attempts} attempts: {e}")
                raise
            logger.warning(f"{getattr(func, '__name__', 'call')} failed ({e}); retrying in {delay}s "
                           f"(attempt {attempt}/{attempts})")
            sleep(delay)
            delay *= 2


# Model endpoint

@dataclass
class ModelEndpoint:
    base_url: str
    model: str
    api_key_env: str = config.DEFAULT_API_KEY_ENV
    timeout: float = config.CHAT_TIMEOUT_SECONDS

    def headers(self) -> Dict[str, str]:
        headers = {"Content-Type": "application/json"}
        api_key = os.getenv(self.api_key_env, "").strip() if self.api_key_env else ""
        if api_key:
            headers["Authorization"] = f"Bearer {api_key}"
        return headers


@dataclass
class ChatReply:
    text: str
    length: int
    usage: Dict[str, Any] = field(default_factory=dict)


def response_length(text: Optional[str]) -> int:
    """Whitespace-separated token count"""
    return len(text.split()) if text else 0


def chat_complete(endpoint: ModelEndpoint, chat_messages: List[Dict[str, str]], session=None) -> ChatReply:
    """One chat-completions request; sampling parameters are left at the provider defaults"""
    http = session or requests
    url = f"{endpoint.base_url.rstrip('/')}/chat/completions"
    payload = {"model": endpoint.model, "messages": chat_messages}
    try:
        response = http.post(url, json=payload, headers=endpoint.headers(), timeout=endpoint.timeout)
    except requests.RequestException as e:
        raise TransportError(f"chat request failed: {e}")
    if not 200 <= response.status_code < 300:
        raise TransportError(f"chat endpoint returned HTTP {response.status_code}")
    try:
        body = response.json()
        text = body["choices"][0]["message"]["content"] or ""
    except (ValueError, KeyError, IndexError, TypeError) as e:
        raise TransportError(f"malformed chat response: {e}")
    return ChatReply(text, response_length(text), body.get("usage") or {})


# Game clients

ERROR_CLASSES = {
    "unknown_game": UnknownGameError,
    "invalid_parameter": InvalidParameterError,
    "session_not_found": SessionNotFoundError,
    "episode_finished": EpisodeFinishedError,
    "stale_round": StaleRoundError,
    "too_many_sessions": TooManySessionsError,
}


class InProcessGameClient:
    """Calls the service handlers directly, without a network hop"""

    def __init__(self, registry: Optional[SessionRegistry] = None):
        self.registry = registry if registry is not None else SessionRegistry()

    def generate(self, game: str, seed: int, difficulty: Optional[Dict[str, Any]] = None,
                 model_info: Optional[Dict[str, Any]] = None, max_rounds: Optional[int] = None,
                 request_id: Optional[str] = None) -> Dict[str, Any]:
        from service import InitPacket, handle_generate

        packet = InitPacket(game=game, seed=seed, difficulty=difficulty or {}, model_info=model_info or {},
                            max_rounds=max_rounds, request_id=request_id)
        return handle_generate(packet, self.registry)

    def print_board(self, session_id: str) -> Dict[str, Any]:
        from service import handle_print_board

        return handle_print_board(session_id, self.registry)

    def verify(self, session_id: str, action: str, expected_round: Optional[int] = None) -> Dict[str, Any]:
        from service import handle_verify

        return handle_verify(session_id, action, self.registry, expected_round=expected_round)

    def close(self, session_id: str) -> None:
        self.registry.close(session_id)


class HttpGameClient:
    """Talks to a running service; session may be a requests.Session or a test client

    A request_id on generate and expected_round on verify make retried calls safe when a
    response was lost after the service had already acted on the request.
    """

    def __init__(self, base_url: str, session=None, timeout: float = config.CHAT_TIMEOUT_SECONDS):
        self.base_url = base_url.rstrip("/")
        self.session = session or requests.Session()
        self.timeout = timeout

    def _post(self, path: str, body: Dict[str, Any]) -> Dict[str, Any]:
        try:
            response = self.session.post(f"{self.base_url}{path}", json=body, timeout=self.timeout)
        except requests.RequestException as e:
            raise TransportError(f"{path} failed: {e}")
        if response.status_code >= 500 and response.status_code != 503:
            raise TransportError(f"{path} returned HTTP {response.status_code}")
        data = response.json()
        if response.status_code != 200:
            error_class = ERROR_CLASSES.get(data.get("error"), EnvError)
            raise error_class(data.get("detail", f"HTTP {response.status_code}"))
        return data

    def generate(self, game: str, seed: int, difficulty: Optional[Dict[str, Any]] = None,
                 model_info: Optional[Dict[str, Any]] = None, max_rounds: Optional[int] = None,
                 request_id: Optional[str] = None) -> Dict[str, Any]:
        body = {"game": game, "seed": seed, "difficulty": difficulty or {}, "model_info": model_info or {}}
        if max_rounds is not None:
            body["max_rounds"] = max_rounds
        if request_id is not None:
            body["request_id"] = request_id
        return self._post("/generate", body)

    def print_board(self, session_id: str) -> Dict[str, Any]:
        return self._post("/print_board", {"session_id": session_id})

    def verify(self, session_id: str, action: str, expected_round: Optional[int] = None) -> Dict[str, Any]:
        body = {"session_id": session_id, "action": action}
        if expected_round is not None:
            body["round"] = expected_round
        return self._post("/verify", body)

    def close(self, session_id: str) -> None:
        # the service drops idle sessions on its own
        pass
