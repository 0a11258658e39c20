"""Numerical monodromy of the discriminant of elliptic K3 Weierstrass fibrations."""

__version__ = "0.1.0"
