from dataclasses import dataclass


@dataclass(frozen=True)
class SelfTestCheck:
    """
    Outcome of one invariant check.

    Attributes:
        suite (str): Suite the check belongs to.
        name (str): Check name.
        value (float): Measured quantity (an error or a ratio).
        bound (str): Human-readable acceptance bound.
        passed (bool): Whether the value meets the bound.
    """

    suite: str
    name: str
    value: float
    bound: str
    passed: bool

    def to_dict(self) -> dict:
        return {"suite": self.suite, "check": self.name, "value": self.value,
                "bound": self.bound, "passed": self.passed}
