"""Exception hierarchy.

Every error carries a short machine-readable ``code`` that the CLI echoes in
its JSON error payload.
"""

from __future__ import annotations


class MajorUncError(ValueError):
    code = "error"


class InvalidInputError(MajorUncError):
    code = "invalid-input"


class ContractViolationError(MajorUncError):
    code = "contract-violation"


class InvalidComparisonError(MajorUncError):
    code = "invalid-comparison"


class UnsupportedOrderError(MajorUncError):
    code = "unsupported-order"


class InvalidArgumentsError(MajorUncError):
    code = "invalid-arguments"


class InvalidOverlapError(MajorUncError):
    code = "invalid-overlap"


class ResourceLimitError(MajorUncError):
    code = "resource-limit"
