"""
Runtime configuration for the game arena
Every setting has a default and can be overridden from the environment (or a .env file)
"""

import os
from dotenv import load_dotenv

load_dotenv()

# Logging
LOG_LEVEL = os.getenv("ARENA_LOG_LEVEL", "INFO")

# Service
SERVICE_HOST = os.getenv("ARENA_HOST", "127.0.0.1")
SERVICE_PORT = int(os.getenv("ARENA_PORT", "8775"))
MAX_SESSIONS = int(os.getenv("ARENA_MAX_SESSIONS", "1000"))
IDLE_TIMEOUT_SECONDS = int(os.getenv("ARENA_IDLE_TIMEOUT", "3600"))
EVICTION_INTERVAL_SECONDS = int(os.getenv("ARENA_EVICTION_INTERVAL", "60"))
MAX_ACTION_BYTES = int(os.getenv("ARENA_MAX_ACTION_BYTES", "65536"))
OUTPUT_DIR = os.getenv("ARENA_OUTPUT_DIR", "runs")

# Episodes
MULTI_EPOCH_ROUND_CAP = 100
SINGLE_EPOCH_ROUND_CAP = 1
MAX_CONSECUTIVE_INVALID = 3
SINGLE_EPOCH_EPISODES = 50
MULTI_EPOCH_EPISODES = 20

# Model endpoints
CHAT_TIMEOUT_SECONDS = float(os.getenv("ARENA_CHAT_TIMEOUT", "120"))
# attempts per call, the first one included
TRANSPORT_ATTEMPTS = int(os.getenv("ARENA_TRANSPORT_ATTEMPTS", "3"))
RETRY_BACKOFF_SECONDS = float(os.getenv("ARENA_RETRY_BACKOFF", "1.0"))
DEFAULT_BASE_URL = os.getenv("ARENA_BASE_URL", "https://api.openai.com/v1")
DEFAULT_API_KEY_ENV = os.getenv("ARENA_API_KEY_ENV", "OPENAI_API_KEY")

# Campaigns
CONCURRENCY = int(os.getenv("ARENA_CONCURRENCY", "4"))
DEFAULT_SEEDS = range(1, 51)
SERVICE_URL = os.getenv("ARENA_SERVICE_URL", "")
