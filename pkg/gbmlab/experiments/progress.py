"""
Progress Module

This module lets observers follow an experiment run. It follows the notifier
pattern: subscribers register a callback and are told whenever a cell finishes.
"""

import uuid
import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict

# Configure logging
logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ProgressEvent:
    """
    A finished experiment cell.

    Attributes:
        cell: The finished cell
        completed (int): Cells finished so far
        total (int): Feasible cells in the run
    """
    cell: Any
    completed: int
    total: int


@dataclass
class ProgressSubscriber:
    """A subscriber to progress events."""
    id: str
    callback: Callable[[ProgressEvent], None]


class ProgressNotifier:
    """Keeps subscribers and tells them about finished cells."""

    def __init__(self):
        self._subscribers: Dict[str, ProgressSubscriber] = {}

    def subscribe(self, callback: Callable[[ProgressEvent], None]) -> str:
        """
        Subscribe to progress events.

        Args:
            callback: Function to call for every finished cell

        Returns:
            str: Subscription ID
        """
        subscriber_id = uuid.uuid4().hex
        self._subscribers[subscriber_id] = ProgressSubscriber(subscriber_id, callback)
        return subscriber_id

    def unsubscribe(self, subscriber_id: str) -> None:
        if subscriber_id in self._subscribers:
            del self._subscribers[subscriber_id]

    def notify(self, event: ProgressEvent) -> None:
        """Tell every subscriber; a failing subscriber never stops the run."""
        for subscriber in list(self._subscribers.values()):
            try:
                subscriber.callback(event)
            except Exception as e:
                logger.error(f"Error notifying subscriber {subscriber.id}: {str(e)}")
