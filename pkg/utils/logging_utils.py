"""
Logging utilities for the CogRadar toolkit.
Provides consistent logging across all modules.
"""
import logging
import sys
from pathlib import Path
from typing import Mapping, Optional

import config

_FORMAT = '[%(asctime)s] %(levelname)s [%(name)s] %(message)s'
_DATEFMT = '%Y-%m-%d %H:%M:%S'


def setup_logger(name: str) -> logging.Logger:
    """
    Create and configure a logger instance.

    Args:
        name: Logger name (typically __name__ from calling module)

    Returns:
        Configured logger instance
    """
    logger = logging.getLogger(name)

    # Only configure if not already configured
    if logger.handlers:
        return logger

    level = logging.DEBUG if config.DEBUG_LOGGING else logging.INFO
    logger.setLevel(level)

    handler = logging.StreamHandler(sys.stdout)
    handler.setLevel(level)
    handler.setFormatter(logging.Formatter(fmt=_FORMAT, datefmt=_DATEFMT))
    logger.addHandler(handler)

    return logger


def attach_run_log(log_path: Path, level: Optional[int] = None) -> logging.Handler:
    """
    Mirror all toolkit log records into a per-run log file.

    The handler goes on the root logger so every module logger feeds it;
    callers remove it with `detach_run_log` when the run ends.
    """
    log_path.parent.mkdir(parents=True, exist_ok=True)
    handler = logging.FileHandler(log_path, encoding="utf-8")
    handler.setLevel(level if level is not None else logging.INFO)
    handler.setFormatter(logging.Formatter(fmt=_FORMAT, datefmt=_DATEFMT))
    root = logging.getLogger()
    root.addHandler(handler)
    if root.level > handler.level:
        root.setLevel(handler.level)
    return handler


def detach_run_log(handler: logging.Handler) -> None:
    logging.getLogger().removeHandler(handler)
    handler.close()


def log_step(logger: logging.Logger, step_name: str):
    """Log a major pipeline step."""
    logger.info("=" * 60)
    logger.info(f"STEP: {step_name}")
    logger.info("=" * 60)


def log_seeds(logger: logging.Logger, context: str, seeds: Mapping[str, int]) -> None:
    """Log the seeds feeding one trial/configuration so paired runs can be audited."""
    rendered = " ".join(f"{key}={value}" for key, value in sorted(seeds.items()))
    logger.info(f"[seeds] {context}: {rendered}")
