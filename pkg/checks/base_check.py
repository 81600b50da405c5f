import logging
from typing import Any, Dict

from errors import TrellisError

logger = logging.getLogger(__name__)


class BaseCheck:
    """Base class for all checks in the verification pipeline."""

    def __init__(self, name: str, role: str, goal: str):
        self.name = name
        self.role = role
        self.goal = goal

    def execute(self, input_data: Dict[str, Any]) -> Dict[str, Any]:
        """
        Execute the check.
        Override this method in subclasses.
        """
        raise NotImplementedError("Subclasses must implement execute method")

    def failure(self, error: TrellisError, **extra) -> Dict[str, Any]:
        """Result dict for a check whose construction raised."""
        logger.debug("%s failed: %s", self.name, error)
        result = {
            'passed': False,
            'error': str(error),
            'error_type': type(error).__name__,
        }
        result.update(extra)
        return result

    def __str__(self):
        return f"{self.name} ({self.role})"
