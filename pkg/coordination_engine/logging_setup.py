import os
import sys
import logging
from pathlib import Path

LOGGER_NAME = "coordination_engine"
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
DATE_FORMAT = '%Y-%m-%d %H:%M:%S'


def setup_logging(config=None, log_level=None, log_file=None):
    """Set up logging for the coordination engine.

    Args:
        config: EngineConfig with ``log_level``/``log_file`` settings, or None
        log_level: Overrides the environment and config level
        log_file: Overrides the environment and config log file

    Returns:
        The package logger
    """
    settings = config.get_engine_settings() if config else {}
    log_level_name = (log_level or os.environ.get("COORDINATION_LOG_LEVEL")
                      or settings.get("log_level") or "ERROR")
    log_file = log_file or os.environ.get("COORDINATION_LOG_FILE") or settings.get("log_file")

    # Convert string level to logging constant
    try:
        level = getattr(logging, log_level_name.upper())
    except (AttributeError, TypeError):
        level = logging.ERROR

    logger = logging.getLogger(LOGGER_NAME)
    logger.setLevel(level)

    # Remove existing handlers to avoid duplicates on reconfiguration
    for handler in logger.handlers[:]:
        logger.removeHandler(handler)
        handler.close()

    formatter = logging.Formatter(LOG_FORMAT, DATE_FORMAT)

    # stdout carries command output, so the console handler writes to stderr
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(level)
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    if log_file:
        if not os.path.isabs(log_file):
            # Relative path - use config directory
            base = Path(config.config_dir) if config else Path.cwd()
            log_dir = base / "logs"
            log_file = str(log_dir / log_file)
        try:
            Path(log_file).parent.mkdir(parents=True, exist_ok=True)
            file_handler = logging.FileHandler(log_file)
            file_handler.setLevel(level)
            file_handler.setFormatter(formatter)
            logger.addHandler(file_handler)
            logger.info(f"Logging to file: {log_file}")
        except (PermissionError, FileNotFoundError) as e:
            logger.error(f"Could not set up file logging to {log_file}: {e}")

    logger.debug(f"Logging initialized at level {log_level_name}")
    return logger
