"""Package logger: silent until the command line installs a stderr handler"""
import logging

LOG_FORMAT = "[%(asctime)s] [%(levelname)s %(filename)s] %(message)s"
DATE_FORMAT = "%m/%d %H:%M:%S"
VERBOSITY_LEVELS = ("WARNING", "INFO", "DEBUG")


def level_for_verbosity(count):
    """0 -> WARNING, 1 -> INFO, 2 or more -> DEBUG"""
    return VERBOSITY_LEVELS[min(max(count, 0), len(VERBOSITY_LEVELS) - 1)]


def _set_logger_handler(level="WARNING"):
    """Sends records at `level` and above to stderr, replacing an earlier handler"""
    logger.setLevel(level)
    for old in [h for h in logger.handlers if isinstance(h, logging.StreamHandler)]:
        logger.removeHandler(old)
    h = logging.StreamHandler()
    h.setLevel(level)
    h.setFormatter(logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT))
    logger.addHandler(h)


logger = logging.Logger("cliquelab")
logger.addHandler(logging.NullHandler())
