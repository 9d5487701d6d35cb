from abc import ABC, abstractmethod
from typing import Dict, List


class IObserver(ABC):
    @abstractmethod
    def update(self, publisher: "IPublisher") -> None:
        """Called when the publisher's data changes."""
        pass


class IPublisher(ABC):
    """
    A base interface for all publishers.
    """

    def __init__(self) -> None:
        self._observers: List[IObserver] = []

    def add_observer(self, observer: IObserver) -> None:
        """
        Adds an observer to the list if it is not already present.

        Args:
            observer (IObserver): The observer to be added.
        """
        if not any(existing is observer for existing in self._observers):
            self._observers.append(observer)

    def remove_observer(self, observer: IObserver) -> None:
        """
        Removes an observer from the list if it is present.

        Args:
            observer (IObserver): The observer to be removed.
        """
        if observer in self._observers:
            self._observers.remove(observer)

    def notify_observers(self) -> None:
        """
        Notifies all registered observers; each receives the publisher itself.
        """
        for observer in self._observers:
            observer.update(self)

    def clear_observers(self) -> None:
        self._observers.clear()

    @abstractmethod
    def get_state(self) -> Dict[str, object]:
        """
        Retrieves the current state of the publisher.

        Returns:
            Dict: The state of the publisher.
        """
        pass
