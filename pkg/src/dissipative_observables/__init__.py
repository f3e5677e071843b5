"""
Time-deformed products and algebra contractions for dissipative quantum systems.
"""

import importlib.metadata

from loguru import logger

logger.disable("dissipative_observables")

__version__ = importlib.metadata.version("dissipative_observables")
