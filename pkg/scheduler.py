"""
Background scheduler for the arena service
Handles periodic tasks like idle session eviction
"""

import logging
from typing import Any, Dict, Optional

from apscheduler.schedulers.background import BackgroundScheduler
from apscheduler.triggers.interval import IntervalTrigger

import config

logger = logging.getLogger(__name__)

scheduler: Optional[BackgroundScheduler] = None


def evict_idle_sessions_job(registry):
    """Job to drop sessions idle past the registry's timeout"""
    try:
        evicted = registry.evict_idle()
        if evicted:
            logger.info(f"Idle eviction removed {evicted} sessions, {len(registry)} remain")
    except Exception as e:
        logger.error(f"Error in idle session eviction: {e}")


def start_scheduler(registry, interval_seconds: int = config.EVICTION_INTERVAL_SECONDS):
    """Start the background scheduler"""
    global scheduler

    if scheduler and scheduler.running:
        return scheduler
    try:
        scheduler = BackgroundScheduler()
        scheduler.add_job(
            evict_idle_sessions_job,
            trigger=IntervalTrigger(seconds=interval_seconds),
            args=[registry],
            id='evict_idle_sessions',
            name='Evict idle game sessions',
            replace_existing=True
        )
        scheduler.start()
        logger.info(f"Background scheduler started, eviction every {interval_seconds}s")
    except Exception as e:
        logger.error(f"Failed to start scheduler: {e}")
    return scheduler


def stop_scheduler():
    """Stop the background scheduler"""
    global scheduler
    if scheduler and scheduler.running:
        scheduler.shutdown(wait=False)
        logger.info("Background scheduler stopped")
    scheduler = None


def _job_entry(job) -> Dict[str, Any]:
    next_run = job.next_run_time
    return {"id": job.id, "name": job.name, "next_run": next_run.isoformat() if next_run else None}


def get_scheduler_status() -> Dict[str, Any]:
    """Running flag and upcoming runs, reported by /health"""
    if not scheduler:
        return {"running": False, "jobs": []}
    return {"running": scheduler.running, "jobs": [_job_entry(job) for job in scheduler.get_jobs()]}
