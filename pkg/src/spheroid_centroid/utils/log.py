import logging
import sys
from pathlib import Path
from typing import cast

import structlog
from structlog.typing import Processor

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def _pre_chain() -> list[Processor]:
    # Runs for structlog and foreign stdlib records alike; renderers are added per handler
    return [
        structlog.contextvars.merge_contextvars,
        structlog.processors.TimeStamper(fmt="iso"),
        structlog.stdlib.add_log_level,
        structlog.stdlib.add_logger_name,
        structlog.processors.StackInfoRenderer(),
        structlog.processors.format_exc_info,
    ]


def _handler(handler: logging.Handler, level: int, renderer: Processor) -> logging.Handler:
    handler.setLevel(level)
    handler.setFormatter(
        structlog.stdlib.ProcessorFormatter(
            foreign_pre_chain=_pre_chain(),
            processors=[
                structlog.stdlib.ProcessorFormatter.remove_processors_meta,
                renderer,
            ],
        )
    )
    return handler


def setup_logging(
    log_level: str = "INFO",
    console_output: bool = True,
    log_file: Path | None = None,
) -> Path | None:
    """
    Configure structured logging for a run.

    Console output is rendered for humans on stderr, so stdout stays free for
    centroid reports. With ``log_file`` every event is also appended as one JSON
    object per line.

    Args:
        log_level: One of ``LOG_LEVELS``; unknown names fall back to INFO
        console_output: Whether to attach the stderr handler
        log_file: Optional JSON-lines destination; parent folders are created

    Returns:
        The log file path, or None when only the console is used.
    """
    name = log_level.upper()
    level = getattr(logging, name) if name in LOG_LEVELS else logging.INFO

    root = logging.getLogger()
    for old in list(root.handlers):
        root.removeHandler(old)
        old.close()
    root.setLevel(level)

    if console_output:
        root.addHandler(_handler(logging.StreamHandler(sys.stderr), level, structlog.dev.ConsoleRenderer()))
    if log_file is not None:
        log_file.parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(log_file, mode="a", encoding="utf-8")
        root.addHandler(_handler(file_handler, level, structlog.processors.JSONRenderer(sort_keys=True)))
    if not root.handlers:
        root.addHandler(logging.NullHandler())

    structlog.configure(
        processors=[
            structlog.stdlib.filter_by_level,
            *_pre_chain(),
            structlog.stdlib.ProcessorFormatter.wrap_for_formatter,
        ],
        wrapper_class=structlog.make_filtering_bound_logger(level),
        logger_factory=structlog.stdlib.LoggerFactory(),
        cache_logger_on_first_use=False,
    )
    return log_file


def get_logger(name: str) -> structlog.BoundLogger:
    """Return a bound logger for a module/package."""
    return cast(structlog.BoundLogger, structlog.get_logger(name))
