"""
Structured logging for the sharpening toolkit.

Console output goes to stderr so that JSON written by the CLI on stdout stays
machine-readable. File logging is opt-in through ``logging.file_enabled``.
"""

import logging
import logging.handlers
import os
import sys
from pathlib import Path
from typing import Any, Dict, List

import structlog
from structlog.stdlib import ProcessorFormatter

from src.utils.config_reader import get_config

SERVICE_NAME = os.environ.get("SERVICE_NAME", "coxeter-sharpening")
LOG_DIR = Path(os.environ.get("LOG_DIR", Path(__file__).resolve().parents[2] / "logs"))


def add_app_env(_, __, event_dict):
    event_dict["app_env"] = os.getenv("APP_ENV") or "dev"
    return event_dict


def rename_event_to_msg(_, __, event_dict):
    if "event" in event_dict:
        event_dict["msg"] = event_dict.pop("event")
    return event_dict


def _processors(settings: Dict[str, Any]) -> List[Any]:
    processors: List[Any] = []
    if settings["include_timestamps"]:
        processors.append(structlog.processors.TimeStamper(fmt="iso"))
    processors += [
        structlog.processors.StackInfoRenderer(),
        structlog.processors.ExceptionRenderer(),
        structlog.stdlib.add_log_level,
        structlog.contextvars.merge_contextvars,
    ]
    if settings["include_caller_info"]:
        processors.append(
            structlog.processors.CallsiteParameterAdder(
                {
                    structlog.processors.CallsiteParameter.MODULE,
                    structlog.processors.CallsiteParameter.FUNC_NAME,
                    structlog.processors.CallsiteParameter.LINENO,
                }
            )
        )
    return processors + [add_app_env, rename_event_to_msg]


def _settings() -> Dict[str, Any]:
    config = get_config()
    level_name = str(config.get("logging.level", "INFO")).upper()
    return {
        "level": logging.getLevelNamesMapping().get(level_name, logging.INFO),
        "format": str(config.get("logging.format", "console")).lower(),
        "include_caller_info": config.get_bool("logging.include_caller_info", False),
        "include_timestamps": config.get_bool("logging.include_timestamps", True),
        "file_enabled": config.get_bool("logging.file_enabled", False),
    }


def configure_logging() -> None:
    """Route structlog through stdlib handlers configured from the [logging] section."""
    settings = _settings()
    pre_chain = _processors(settings)
    renderer = (
        structlog.dev.ConsoleRenderer(colors=False)
        if settings["format"] == "console"
        else structlog.processors.JSONRenderer()
    )

    console = logging.StreamHandler()
    console.setFormatter(ProcessorFormatter(processor=renderer, foreign_pre_chain=pre_chain))
    handlers: List[logging.Handler] = [console]

    if settings["file_enabled"]:
        path = LOG_DIR / f"{SERVICE_NAME}.{os.getpid()}.log"
        try:
            LOG_DIR.mkdir(parents=True, exist_ok=True)
            file_handler = logging.handlers.RotatingFileHandler(path, maxBytes=10 * 1024 * 1024, backupCount=5)
            file_handler.setFormatter(
                ProcessorFormatter(processor=structlog.processors.JSONRenderer(), foreign_pre_chain=pre_chain)
            )
            handlers.append(file_handler)
        except OSError as e:
            print(f"Failed to open log file {path}: {e}", file=sys.stderr)

    for handler in handlers:
        handler.setLevel(settings["level"])
    logging.basicConfig(level=settings["level"], handlers=handlers, force=True)

    structlog.configure(
        processors=pre_chain + [ProcessorFormatter.wrap_for_formatter],
        wrapper_class=structlog.make_filtering_bound_logger(settings["level"]),
        logger_factory=structlog.stdlib.LoggerFactory(),
        cache_logger_on_first_use=True,
    )


configure_logging()
logger = structlog.get_logger()
