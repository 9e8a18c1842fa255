from __future__ import annotations

import logging
import sys
from typing import TextIO


def mkcolor(color: int, bold: bool = False) -> str:
    code = f"1;{color}" if bold else str(color)
    return f"\x1b[{code}m"


class ColoredFormatter(logging.Formatter):
    """
    Terminal formatter: level in color, then the message, then the emitting function in faded text.
    Colors are left out when the stream isn't a terminal, so redirected stderr stays grep-able.
    """

    formats = {
        logging.DEBUG: 34,  # blue
        logging.INFO: 37,  # white
        logging.WARNING: 33,  # yellow
        logging.ERROR: 31,  # red
        logging.CRITICAL: 31,  # red
    }

    def __init__(self, stream: TextIO | None = None) -> None:
        super().__init__(datefmt="%H:%M:%S")
        target = stream or sys.stderr
        self.use_color = hasattr(target, "isatty") and target.isatty()

    def format(self, record: logging.LogRecord) -> str:
        location = f"{record.module}.{record.funcName}:{record.lineno}"
        if self.use_color:
            level_color = self.formats.get(record.levelno, 0)
            prefix = f"{mkcolor(level_color, True)}{record.levelname}{mkcolor(0)}"
            suffix = f"{mkcolor(2)}{location}{mkcolor(0)}"  # 2 means faded
        else:
            prefix = record.levelname
            suffix = location
        formatter = logging.Formatter(f"%(asctime)s {prefix} %(message)s {suffix}", datefmt=self.datefmt)
        return formatter.format(record)
