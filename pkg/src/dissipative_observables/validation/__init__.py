"""
Checks of models against their closed forms
"""

from __future__ import annotations

from dissipative_observables.validation.error_catching import (
    CheckResult,
    CheckResultsStore,
    CheckResultsStoreError,
)
from dissipative_observables.validation.model import get_validate_model_result

__all__ = [
    "CheckResult",
    "CheckResultsStore",
    "CheckResultsStoreError",
    "get_validate_model_result",
]
