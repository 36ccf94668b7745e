#!/usr/bin/env python3
"""
Renyi Heterogeneity Toolkit - Main Entry Point
Configure logging, validate settings and dispatch to the command line
"""
import os
import sys
from typing import List, Optional

from loguru import logger

import config


def setup_logging():
    """stderr sink at LOG_LEVEL, plus a rotating file sink when LOG_TO_FILE is set"""
    logger.remove()
    logger.add(
        sys.stderr,
        format="<green>{time:YYYY-MM-DD HH:mm:ss}</green> | <level>{level: <8}</level> | <cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> - <level>{message}</level>",
        level=config.LOG_LEVEL.upper(),
        colorize=True
    )

    if config.LOG_TO_FILE:
        os.makedirs(config.LOG_DIR, exist_ok=True)
        logger.add(
            os.path.join(config.LOG_DIR, config.LOG_FILE),
            rotation=config.LOG_ROTATION,
            retention=config.LOG_RETENTION,
            level="DEBUG",
            format="{time:YYYY-MM-DD HH:mm:ss} | {level: <8} | {name}:{function}:{line} - {message}"
        )


def main(argv: Optional[List[str]] = None) -> int:
    setup_logging()
    try:
        config.validate_config()
    except ValueError:
        return 2

    from cli import main as cli_main
    return cli_main(argv)


if __name__ == "__main__":
    sys.exit(main())
