from enum import Enum, auto


class DuhamelIntegrand(Enum):
    """
    Integrands of the second approximation.
    FULL: F(z1) = N2(z1) + N3(z1), giving z2.
    Z22: -(i/2)(c_g |z1|^2 + c_a |grad z1|^2), giving z22.
    Z21: the complementary integrand written with div(conj(z1) grad z1), giving z21 directly.
    """
    FULL = auto()
    Z22 = auto()
    Z21 = auto()
