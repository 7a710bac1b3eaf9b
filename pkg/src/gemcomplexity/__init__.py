"""Upper bounds on Matveev complexity from crystallizations and Heegaard diagrams.

Two independent routes are provided:

* GM-complexity of a 4-coloured graph (:mod:`gemcomplexity.gm`), computed from
  the regions of its regular embeddings;
* modified Heegaard complexity of a generalized Heegaard diagram
  (:mod:`gemcomplexity.heegaard`), computed by reducing curve systems on a
  combinatorial map.

:mod:`gemcomplexity.bridge` builds the diagrams a gem induces and checks that
both routes give the same number.
"""

from gemcomplexity.bridge import H1Fingerprint, cross_check, first_homology, induce_diagram
from gemcomplexity.census import census
from gemcomplexity.diagram import (
    SurfaceDiagram,
    lens_diagram,
    parse_hdg,
    serialize_hdg,
    validate_diagram,
)
from gemcomplexity.embedding import regions, regular_embedding
from gemcomplexity.errors import BudgetExceeded, DiagramFormatError, GemFormatError
from gemcomplexity.gem import (
    COLOURS,
    Gem,
    ResiduePartition,
    ValidationReport,
    connected_sum,
    euler_char_K,
    insert_dipole,
    is_bipartite,
    is_contracted,
    is_manifold_gem,
    parse_gem,
    residues,
    serialize_gem,
    standard_gem,
    validate_gem,
)
from gemcomplexity.gm import catalogue_min, gm_value, gm_value_crystallization
from gemcomplexity.heegaard import (
    classify_system,
    cut_components,
    modified_complexity,
    modified_complexity_reduced,
    reduce_all,
)

__version__ = "0.1.0"

__all__ = [
    "COLOURS",
    "BudgetExceeded",
    "DiagramFormatError",
    "Gem",
    "GemFormatError",
    "H1Fingerprint",
    "ResiduePartition",
    "SurfaceDiagram",
    "ValidationReport",
    "catalogue_min",
    "census",
    "classify_system",
    "connected_sum",
    "cross_check",
    "cut_components",
    "euler_char_K",
    "first_homology",
    "gm_value",
    "gm_value_crystallization",
    "induce_diagram",
    "insert_dipole",
    "is_bipartite",
    "is_contracted",
    "is_manifold_gem",
    "lens_diagram",
    "modified_complexity",
    "modified_complexity_reduced",
    "parse_gem",
    "parse_hdg",
    "reduce_all",
    "regions",
    "regular_embedding",
    "residues",
    "serialize_gem",
    "serialize_hdg",
    "standard_gem",
    "validate_diagram",
    "validate_gem",
]
