"""Exact symbolic verification of Chow-ring identities on the Fano variety
of lines of a cubic fourfold.

Subpackages and modules:

    algebra          exact polynomials, free algebras, rational matrices
    surface          the 27 lines and their triangles on a cubic surface
    tautological     tautological classes on F and the cylinder maps to X
    correspondence   correspondence expressions and their actions
    chern            the Chern-class shadow of the key identity
    chowmodel        block model of the hom-trivial Chow groups
    projectors       idempotent lifting and Chow-Kunneth projectors
    dsl              expression language
    registry, cli    identity registry and the ``fano`` command
"""

__version__ = "0.1.0"
