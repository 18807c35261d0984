"""Braided finite automata, Hecke tensor representations, q-Dicke canonical
bases, exact open-chain spectra, and rack/quandle braid solutions."""

from .errors import BraidlabError, SizeGuardError, ValidationError

__version__ = "0.1.0"

__all__ = ["BraidlabError", "SizeGuardError", "ValidationError", "__version__"]
