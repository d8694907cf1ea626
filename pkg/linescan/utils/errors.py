# utils/errors.py
"""
Error types shared by the library and the CLI.

Every error carries a stable ``code`` so the command line can render it as a
structured diagnostic. Each one also inherits the closest builtin, so plain
``except ValueError`` keeps working for callers.
"""
from __future__ import annotations


class LineScanError(Exception):
    code: str = "error"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message

    def to_dict(self) -> dict:
        return {"code": self.code, "message": self.message}


class InvalidArgumentError(LineScanError, ValueError):
    code = "invalid-argument"


class InsufficientSamplesError(LineScanError, ValueError):
    code = "insufficient-samples"


class BoundsError(LineScanError, IndexError):
    code = "bounds"


class CapacityError(LineScanError, MemoryError):
    code = "capacity"


class PlanError(LineScanError, ValueError):
    code = "plan"


class TrialsFailedError(LineScanError, RuntimeError):
    code = "trials-failed"
