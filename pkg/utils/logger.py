import logging
import sys
from typing import Optional, TextIO, Union


def configure_logging(level: Union[int, str, None] = logging.INFO, stream: Optional[TextIO] = None) -> None:
    """Configure the root logger once; the CLI passes stderr so results own stdout."""
    if isinstance(level, str):
        level = logging.getLevelName(level.upper())
        if not isinstance(level, int):
            level = logging.INFO
    formatter = logging.Formatter(
        "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    )
    root = logging.getLogger()
    root.setLevel(level if level is not None else logging.INFO)
    for h in list(root.handlers):
        if getattr(h, "_linkhom", False):
            root.removeHandler(h)
    handler = logging.StreamHandler(stream or sys.stdout)
    handler.setFormatter(formatter)
    handler._linkhom = True  # type: ignore[attr-defined]
    root.addHandler(handler)
