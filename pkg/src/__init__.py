"""Package BAPFactor: factorisation T = j∘Ã d'opérateurs de rang fini."""

__version__ = "1.0.0"
__description__ = "Factorisation et certification BAP d'opérateurs en dimension finie"
