"""Domain errors"""

from typing import Any, Dict, List, Optional


class CompositionError(ValueError):
    """Malformed or oversized composition"""


class RankPreconditionError(ValueError):
    """Modulus or trial count unusable for a rank certificate"""


class ReplacementError(ValueError):
    """Column does not satisfy the replacement chain precondition"""


class ViolationError(Exception):
    """A structural check failed.

    Args:
        check: Name of the failing check
        clause: Short identifier of the violated clause
        details: Boxes, entries or pairs involved
        covers: Chain covers found, when the failure is a cover count
    """

    def __init__(
        self,
        check: str,
        clause: str,
        details: Optional[Dict[str, Any]] = None,
        covers: Optional[List[Any]] = None,
    ):
        self.check = check
        self.clause = clause
        self.details = details or {}
        self.covers = covers or []
        super().__init__(f"{check}: {clause} {self.details}")
