import os

class Config:
    SCHEMA_VERSION = '1.0'
    LOG_LEVEL = os.environ.get('SYT_LOG_LEVEL', 'WARNING')

    # Enumeration refuses shapes above this many cells unless explicitly overridden
    SYT_MAX_CELLS = int(os.environ.get('SYT_MAX_CELLS', 18))

    FIT_MAX_DEGREE = int(os.environ.get('SYT_FIT_MAX_DEGREE', 24))
    FIT_HELD_OUT_POINTS = 3

    SAMPLE_SHARD_SIZE = int(os.environ.get('SYT_SAMPLE_SHARD_SIZE', 5000))
    SAMPLE_WORKERS = int(os.environ.get('SYT_SAMPLE_WORKERS', 1))

class TestConfig(Config):
    TESTING = True
    LOG_LEVEL = 'WARNING'
    SYT_MAX_CELLS = 18
    SAMPLE_WORKERS = 1
