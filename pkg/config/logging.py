import logging
import sys
from typing import Optional, TextIO

from config.settings import config

LOG_FORMAT = "%(asctime)s | %(levelname)s | %(name)s | %(message)s"


def setup_logging(level: Optional[int] = None, stream: Optional[TextIO] = None) -> None:
    # Results go to stdout; every diagnostic goes to stderr.
    handlers: list[logging.Handler] = [logging.StreamHandler(stream or sys.stderr)]

    if config.LOG_TO_FILE:
        config.LOG_DIR.mkdir(parents=True, exist_ok=True)
        # Force UTF-8 so Japanese text survives in .log files on any platform
        handlers.append(logging.FileHandler(config.log_file, encoding="utf-8"))

    if level is None:
        level = logging.DEBUG if config.DEBUG else logging.INFO

    logging.basicConfig(level=level, format=LOG_FORMAT, handlers=handlers, force=True)


def get_logger(name: str) -> logging.Logger:
    return logging.getLogger(name)
