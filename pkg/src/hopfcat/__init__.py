"""Hopf monads, Hopf algebras in braided fusion categories, and condensation."""

__version__ = "0.1.0"
