"""Sequential pattern-structure lattices: projections, AddIntent mining and concept stability."""

__version__ = "0.1.0"

from .alphabet import AlphabetSchema, FieldSpec, Taxonomy, make_element
from .errors import ConceptLimitError, ConfigError, InputError, ParseError, SeqlatError
from .lattice import Concept, Lattice, build_lattice, validate_lattice
from .projection import IDENTITY, ProjectionSpec, parse_shorthand, projected_meet
from .pstruct import FormalContext, PatternStructure, context_as_pattern_structure, sequential_structure
from .sequence import EMPTY, TOP, Pattern, make_pattern, pattern_leq, pattern_meet, pattern_of, sequence_meet
from .stability import rank_concepts, stability_exact, stable_filter

__all__ = [
    "AlphabetSchema", "Concept", "ConceptLimitError", "ConfigError", "EMPTY", "FieldSpec", "FormalContext",
    "IDENTITY", "InputError", "Lattice", "ParseError", "Pattern", "PatternStructure", "ProjectionSpec",
    "SeqlatError", "TOP", "Taxonomy", "build_lattice", "context_as_pattern_structure", "make_element",
    "make_pattern", "parse_shorthand", "pattern_leq", "pattern_meet", "pattern_of", "projected_meet",
    "rank_concepts", "sequence_meet", "sequential_structure", "stability_exact", "stable_filter",
    "validate_lattice",
]
