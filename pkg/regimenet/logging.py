from logging import DEBUG as DEBUG_LV
from logging import Formatter, StreamHandler, getLevelName, getLogger

from .consts import DEBUG, LOG_LEVEL

log = getLogger("regimenet")


def _init() -> None:
    handler = StreamHandler()
    handler.setFormatter(
        Formatter(fmt="[%(levelname)s] %(name)s :: %(message)s", datefmt=None)
    )
    log.addHandler(handler)
    log.propagate = False

    level = getLevelName(LOG_LEVEL)
    log.setLevel(DEBUG_LV if DEBUG else level if isinstance(level, int) else "INFO")


_init()
