"""Exact Bott-Borel-Weil weight census for classical Lie superalgebras."""

from .bbw import CensusResult, census, census_parabolic
from .series import Poly, TruncatedSeries
from .superalg import SuperAlgebraSpec, builtin_catalog, catalog_lookup, lookup, z_poly

__all__ = [
    "CensusResult", "Poly", "SuperAlgebraSpec", "TruncatedSeries", "builtin_catalog",
    "catalog_lookup", "census", "census_parabolic", "lookup", "z_poly",
]
__version__ = "0.1.0"
