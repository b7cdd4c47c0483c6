import logging
import os

from pythonjsonlogger import jsonlogger

TEXT_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
JSON_FORMAT = '%(asctime)s %(name)s %(levelname)s %(message)s'

_settings = {
    'level': os.getenv('WENO_LOG_LEVEL', 'INFO'),
    'format': os.getenv('WENO_LOG_FORMAT', 'text'),
}


def configure_logging(level: str = 'INFO', log_format: str = 'text') -> None:
    """
    Set the level and format used by every logger handed out by get_logger.

    Loggers created before this call are updated in place.

    Args:
        level: Standard logging level name
        log_format: 'text' or 'json'
    """
    _settings['level'] = level.upper()
    _settings['format'] = log_format.lower()

    for name, logger in logging.Logger.manager.loggerDict.items():
        if isinstance(logger, logging.Logger) and getattr(logger, '_weno_managed', False):
            logger.setLevel(_settings['level'])
            for handler in logger.handlers:
                handler.setFormatter(_make_formatter())


def _make_formatter() -> logging.Formatter:
    if _settings['format'] == 'json':
        return jsonlogger.JsonFormatter(JSON_FORMAT)
    return logging.Formatter(TEXT_FORMAT)


def get_logger(name: str) -> logging.Logger:
    """
    Get a logger with a single stream handler attached.

    Args:
        name: Dotted logger name, usually the module or service name

    Returns:
        Configured logger
    """
    logger = logging.getLogger(name)
    logger.setLevel(_settings['level'])

    if not logger.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(_make_formatter())
        logger.addHandler(handler)
        logger.propagate = False
        logger._weno_managed = True

    return logger
