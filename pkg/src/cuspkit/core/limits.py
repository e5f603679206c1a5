from dataclasses import dataclass
from typing import Optional

from .domain import CuspkitError


class ResourceLimit(CuspkitError):
    """Raised when an enumeration exceeds its budget."""
    def __init__(self, what: str, limit: int):
        self.what = what
        self.limit = limit
        super().__init__(f"Resource limit reached for {what}: {limit}")

    def __reduce__(self):
        return type(self), (self.what, self.limit)


@dataclass
class LimitConfig:
    """Configuration for enumeration budgets."""
    max_items: int = 2_000_000
    max_word_length: int = 16  # deeper word searches are refused up front


class ResourceBudget:
    """
    Counts enumerated objects (words, horoballs, lifts) against a budget.

    Not shared across threads: each worker holds its own budget.
    """

    def __init__(self, config: Optional[LimitConfig] = None, what: str = "items"):
        self.config = config or LimitConfig()
        self.what = what
        self.used = 0

    def consume(self, count: int = 1) -> None:
        """
        Consume `count` units.

        Raises:
            ResourceLimit: if the budget would be exceeded.
        """
        if self.used + count > self.config.max_items:
            raise ResourceLimit(self.what, self.config.max_items)
        self.used += count

    def check_word_length(self, length: int) -> None:
        if length > self.config.max_word_length:
            raise ResourceLimit("word length", self.config.max_word_length)

    def remaining(self) -> int:
        """Get remaining units."""
        return max(0, self.config.max_items - self.used)

    def reset(self) -> None:
        self.used = 0
