"""Exact rational Puiseux expansions, analytic factorization in K[[X]][Y],
and plane-curve genus over F_p or Q, with dynamic evaluation in place of
univariate factorization."""

__version__ = "0.1.0"

from .fields import PrimeField, RationalField, QQ, field_of

__all__ = ["PrimeField", "RationalField", "QQ", "field_of", "__version__"]
