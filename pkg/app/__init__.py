import os

from app.config import CONFIGS, Config, DevelopmentConfig
from app.utils.log import configure_logging


def create_app(config_name: str = 'development') -> Config:
    """
    Resolve the configuration class for an environment and set up logging.

    Args:
        config_name: 'development', 'production' or 'testing'

    Returns:
        The configuration object used by the CLI and experiment tasks
    """
    config = CONFIGS.get(config_name, DevelopmentConfig)()

    configure_logging(config.LOG_LEVEL, config.LOG_FORMAT)

    os.makedirs(config.OUTPUT_DIR, exist_ok=True)

    return config
