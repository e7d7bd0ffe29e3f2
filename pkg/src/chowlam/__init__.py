"""Chow-Lam forms of subvarieties of Grassmannians, computed exactly over Q."""

__version__ = "0.1.0"
