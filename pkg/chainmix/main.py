from __future__ import annotations

import logging
import os
import sys
from types import TracebackType
from typing import Sequence

from chainmix import paths
from chainmix.commands import COMMANDS
from chainmix.config import VERSION, get_options
from chainmix.errors import DataValidationError, UsageError
from chainmix.utils.logging_color_formatter import ColoredFormatter

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_DATA = 3


def main(argv: Sequence[str] | None = None) -> int:
    """
    Parse the command line, set up logging and run the command. Returns the exit status.
    """
    try:
        options = get_options(argv)
    except SystemExit as e:
        # --help, --version and usage errors
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    # Set up global logging for stderr and file
    os.makedirs(paths.STATE, exist_ok=True)
    file_handler = logging.FileHandler(paths.LAST_LOG, mode="w+")
    stream_handler = logging.StreamHandler()
    stream_handler.setLevel(logging.DEBUG if options.verbose else logging.WARNING)
    stream_handler.setFormatter(ColoredFormatter())

    logging.root.handlers = []
    logging.basicConfig(
        level=logging.DEBUG,
        format="%(asctime)s | %(levelname)s | %(message)s | %(module)s.%(funcName)s():%(lineno)s",
        handlers=[file_handler, stream_handler],
    )

    # Logger for actual use in this file
    logger = logging.getLogger()
    logger.info("chainmix version %s", VERSION)

    # log uncaught exceptions
    def except_hook(exctype: type[BaseException], exception: BaseException, traceback: TracebackType | None) -> None:
        logger.error("Uncaught exception", exc_info=(exctype, exception, traceback))

    sys.excepthook = except_hook

    try:
        COMMANDS[options.command](options)
    except UsageError as e:
        logger.error("%s", e)  # noqa: TRY400
        return EXIT_USAGE
    except DataValidationError as e:
        logger.error("Invalid data: %s", e)  # noqa: TRY400
        return EXIT_DATA
    except UnicodeDecodeError as e:
        logger.error("Input is not UTF-8 text: %s", e)  # noqa: TRY400
        return EXIT_DATA
    except OSError as e:
        logger.error("I/O error: %s", e)  # noqa: TRY400
        return EXIT_IO
    return EXIT_OK
