"""hextet: hexahedron triangulations, their realizations, and mesh patterns."""

from .catalog import CatalogEntry, build_catalog
from .chirotope import Chirotope
from .realize import Budget, Realization, realize_class

__version__ = "0.1.0"

__all__ = [
    "Budget",
    "CatalogEntry",
    "Chirotope",
    "Realization",
    "build_catalog",
    "realize_class",
    "__version__",
]
