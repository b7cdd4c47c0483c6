import os
import tempfile
from dotenv import load_dotenv

load_dotenv()


def _env_bool(name: str, default: bool = False) -> bool:
    value = os.getenv(name)
    if value is None:
        return default
    return value.strip().lower() in ('1', 'true', 'yes', 'on')


class Config:
    """Base configuration"""
    # Reconstruction
    EPSILON = float(os.getenv('WENO_EPSILON', '1e-40'))
    TIE_TOLERANCE = float(os.getenv('WENO_TIE_TOLERANCE', '1e-14'))

    # Output
    OUTPUT_DIR = os.getenv('WENO_OUTPUT_DIR', 'output')
    REFERENCE_CACHE_DIR = os.getenv('WENO_REFERENCE_DIR', os.path.join('output', 'reference'))
    FULL_PRECISION = _env_bool('WENO_FULL_PRECISION')

    # Execution
    WORKERS = int(os.getenv('WENO_WORKERS', '1'))
    PROGRESS_EVERY = int(os.getenv('WENO_PROGRESS_EVERY', '1000'))

    # Logging
    LOG_LEVEL = os.getenv('WENO_LOG_LEVEL', 'INFO')
    LOG_FORMAT = os.getenv('WENO_LOG_FORMAT', 'text')


class DevelopmentConfig(Config):
    """Development configuration"""
    LOG_LEVEL = os.getenv('WENO_LOG_LEVEL', 'DEBUG')


class ProductionConfig(Config):
    """Production configuration"""
    LOG_FORMAT = os.getenv('WENO_LOG_FORMAT', 'json')
    PROGRESS_EVERY = int(os.getenv('WENO_PROGRESS_EVERY', '5000'))


class TestingConfig(Config):
    """Testing configuration"""
    TESTING = True
    OUTPUT_DIR = os.path.join(tempfile.gettempdir(), 'weno-test-output')
    REFERENCE_CACHE_DIR = os.path.join(OUTPUT_DIR, 'reference')
    LOG_LEVEL = 'WARNING'
    PROGRESS_EVERY = 0
    WORKERS = 1


CONFIGS = {
    'development': DevelopmentConfig,
    'production': ProductionConfig,
    'testing': TestingConfig,
}
