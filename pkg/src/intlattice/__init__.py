"""Exact arithmetic on positive definite integral lattices.

Submodules: ``ratmat`` (rational matrices), ``lattice`` (lattice algebra),
``local`` (Hilbert and Hasse symbols), ``embedding`` (unimodular overlattice
feasibility), ``shortvec`` (enumeration), ``eutactic`` (s-integrability),
``a15`` (the odd unimodular lattice A15+ and its rank-12 complements) and
``cli``.
"""

__version__ = "0.1.0"
