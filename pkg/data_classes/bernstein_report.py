from dataclasses import dataclass


@dataclass(frozen=True)
class BernsteinReport:
    """
    Ratios measuring the two Bernstein inequalities on one dyadic block.

    Attributes:
        j (int): Block index.
        p (float): Lower integrability.
        q (float): Upper integrability.
        embedding_ratio (float): ||f||_q / (2^{dj(1/p-1/q)} ||f||_p).
        derivative_ratio (float): ||grad f||_p / (2^j ||f||_p).
    """

    j: int
    p: float
    q: float
    embedding_ratio: float
    derivative_ratio: float

    def to_rows(self) -> list:
        return [{"j": self.j, "check": "embedding", "ratio": self.embedding_ratio, "bound": "C"},
                {"j": self.j, "check": "derivative", "ratio": self.derivative_ratio, "bound": "[3/4, 8/3]"}]
