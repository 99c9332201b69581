"""Exact normal forms, the groups Z^n / M Z^n, and multidimensional circulants."""
from .circulant import (
    CirculantGraph,
    JumpSet,
    adam_canonical,
    adam_isomorphic,
    build,
    cartesian_product,
    components,
    make_jumps,
    reduce_disconnected,
)
from .dimension import (
    DimensionReport,
    analyze,
    commutative_2step_is_circulant,
    dimension_bounds,
    exceptional_case,
    is_circulant_2step,
    prime_product_dimension,
    prime_product_instance,
)
from .directions import DirectionPartition, detect_directions
from .errors import CirculantError
from .graph import Graph
from .intmat import (
    IntMatrix,
    det,
    determinantal_divisors,
    hermite_normal_form,
    invariant_factors,
    parse_matrix,
    scaled_inverse_apply,
    smith_normal_form,
    unimodular_inverse,
)
from .quotient import QuotientGroup, make_group

__version__ = "0.1.0"

__all__ = [
    "CirculantError",
    "CirculantGraph",
    "DimensionReport",
    "DirectionPartition",
    "Graph",
    "IntMatrix",
    "JumpSet",
    "QuotientGroup",
    "adam_canonical",
    "adam_isomorphic",
    "analyze",
    "build",
    "cartesian_product",
    "commutative_2step_is_circulant",
    "components",
    "det",
    "detect_directions",
    "determinantal_divisors",
    "dimension_bounds",
    "exceptional_case",
    "hermite_normal_form",
    "invariant_factors",
    "is_circulant_2step",
    "make_group",
    "make_jumps",
    "parse_matrix",
    "prime_product_dimension",
    "prime_product_instance",
    "reduce_disconnected",
    "scaled_inverse_apply",
    "smith_normal_form",
    "unimodular_inverse",
]
