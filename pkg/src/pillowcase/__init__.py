"""Abelian square-tiled covers of the pillowcase and their cohomology.

Submodules: ``abelian`` (groups, characters, automorphisms), ``surface``
(covers and their invariants), ``cohomology`` (isotypic summands),
``affine`` (moves, words, the tuple graph), ``hodge`` (signatures, triangle
data, tables, discreteness), ``oracle`` (independent floating-point checks)
and ``cli``.
"""

__version__ = "0.1.0"
