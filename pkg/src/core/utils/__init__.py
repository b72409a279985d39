"""
APUnroll Core Utilities
"""
from .log import get_logger, set_level
from .parallel import ordered_map, chunk_ranges

__all__ = [
    # Logging
    'get_logger',
    'set_level',
    # Worker pool
    'ordered_map',
    'chunk_ranges',
]
