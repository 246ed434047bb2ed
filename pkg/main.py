"""
Main entry point for the culprit identification toolkit.
"""

import sys
import logging
from pathlib import Path
from typing import Optional

# Add the project root and src directory to the Python path
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))
sys.path.insert(0, str(project_root / "src"))

from app import cli


def setup_logging(level: str = "INFO", log_file: Optional[Path] = None):
    """Setup application logging."""
    handlers = [logging.StreamHandler(sys.stdout)]
    if log_file is not None:
        handlers.insert(0, logging.FileHandler(log_file, encoding="utf-8"))
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format='%(asctime)s [%(levelname)s] %(name)s: %(message)s',
        handlers=handlers,
        force=True,
    )
    logger = logging.getLogger(__name__)
    return logger


def check_system_compatibility():
    """Check system compatibility."""
    logger = logging.getLogger(__name__)

    if sys.version_info < (3, 9):
        logger.error(f"Python {sys.version_info.major}.{sys.version_info.minor} is not supported. Please use Python 3.9 or higher.")
        return False
    return True


def main(argv=None):
    """Main application entry point."""
    if not check_system_compatibility():
        return 1
    return cli.main(argv, setup_logging=setup_logging)


if __name__ == "__main__":
    sys.exit(main())
