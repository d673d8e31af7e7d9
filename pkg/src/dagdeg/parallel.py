"""Process-pool fan-out for fixture checks and sweeps."""

from __future__ import annotations

import logging
import os
from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from typing import TypeVar

from .config import WORKERS_ENV

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def resolve_workers(cli: int | None, env: str | None, config: int) -> int:
    """CLI flag, then environment, then config file; 0 means one worker per CPU."""
    if cli is not None:
        value = cli
        source = "--workers"
    elif env not in (None, ""):
        try:
            value = int(env)
        except ValueError:
            raise ValueError(f"{WORKERS_ENV} must be an integer (got {env!r})") from None
        source = WORKERS_ENV
    else:
        value = config
        source = "config"
    if value < 0:
        raise ValueError(f"Worker count from {source} must be non-negative (got {value})")
    return value or (os.cpu_count() or 1)


def workers_from_environment(cli: int | None, config: int) -> int:
    return resolve_workers(cli, os.environ.get(WORKERS_ENV), config)


def parallel_map(fn: Callable[..., R], items: Iterable[T], workers: int) -> list[R]:
    """[fn(item) for item in items] in input order; tuples are unpacked into arguments.

    ``fn`` must be a module-level function and the items picklable when
    ``workers > 1``.
    """
    tasks: Sequence = list(items)
    calls = [task if isinstance(task, tuple) else (task,) for task in tasks]
    if workers <= 1 or len(calls) <= 1:
        return [fn(*args) for args in calls]
    workers = min(workers, len(calls))
    logger.debug("running %d tasks on %d processes", len(calls), workers)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(fn, *args) for args in calls]
        return [future.result() for future in futures]
