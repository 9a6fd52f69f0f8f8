"""Lattice-valued operads: components that are lattices, compositions checked against lattice laws.

Subpackages and modules:

- ``lattice_core``: finite and symbolic lattices, products, truncations, Hasse diagrams
- ``operad_core``: the :class:`Operad` type and the law checkers
- ``operad_zoo``: concrete operads, keyed by short tags in ``operad_zoo.REGISTRY``
- ``linear_filtration``: exact subspaces, linear operad windows, filtrations and closures
- ``enumeration_series``: enumeration, counting series and the multi-index tables
- ``cli``: the ``latop`` command
"""
from . import errors, lattice_core, operad_core
from .lattice_core import Lattice
from .operad_core import LawReport, Operad, check_lattice_compatibility, check_lax, check_operad_laws

__version__ = "0.1.0"

__all__ = ["Lattice", "LawReport", "Operad", "check_lattice_compatibility", "check_lax", "check_operad_laws",
           "errors", "lattice_core", "operad_core", "__version__"]
