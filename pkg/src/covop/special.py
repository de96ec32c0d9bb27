"""Gamma-function evaluation with pole guards."""

from scipy.special import gamma as _gamma


class PoleAtLambda(Exception):
    """Raised when a numeric evaluation lands on (or too near) a pole of one
    of the Gamma factors involved."""


def near_pole(z, tol=1e-9):
    """True when z is within tol of a nonpositive integer."""
    z = complex(z)
    if abs(z.imag) > tol:
        return False
    r = round(z.real)
    return r <= 0 and abs(z.real - r) <= tol


def gamma_checked(z, tol=1e-9):
    if near_pole(z, tol):
        raise PoleAtLambda(f"Gamma pole at argument {z}")
    if isinstance(z, complex):
        return complex(_gamma(z))
    return float(_gamma(float(z)))
