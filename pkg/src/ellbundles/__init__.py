"""Exact toolkit for principal-bundle moduli on elliptic fibrations:
root systems, Weierstrass curves, T-bundle strata, quotient maps and
SL(n) spectral covers."""

__version__ = "0.1.0"
