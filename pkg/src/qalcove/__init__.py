"""Quantum Bruhat graph and quantum alcove model for type C_n.

Symbolic Chevalley / inverse-Chevalley expansions of level-zero Demazure
characters, with exhaustive small-rank verification of the underlying
identities.
"""

__version__ = "0.1.0"
