"""kerovlab: exact Kerov character polynomials and free cumulants of Young diagrams."""

from .partitions import (
    Partition,
    conjugate,
    enumerate_partitions,
    epsilon,
    format_partition,
    parse_partition,
    u_factor,
    z_factor,
)
from .symfunc import SymFunc, m_scalar_specialize, p_scalar_specialize, phi_hat
from .cumulants import (
    InterlacingPair,
    c_values,
    diagram_to_interlacing,
    free_cumulants,
    q_values,
    resolvent_series,
)
from .characters import dimension, mn_character, normalized_character
from .kerov import (
    CumulantPolynomial,
    KerovPolynomial,
    KerovProvider,
    change_generators,
    compute_kerov,
    graded_component,
    krr1_closed_form,
    krr3_closed_form,
    weighted_triple_sum,
)

__version__ = "0.1.0"

__all__ = [
    "Partition",
    "conjugate",
    "enumerate_partitions",
    "epsilon",
    "format_partition",
    "parse_partition",
    "u_factor",
    "z_factor",
    "SymFunc",
    "m_scalar_specialize",
    "p_scalar_specialize",
    "phi_hat",
    "InterlacingPair",
    "c_values",
    "diagram_to_interlacing",
    "free_cumulants",
    "q_values",
    "resolvent_series",
    "dimension",
    "mn_character",
    "normalized_character",
    "CumulantPolynomial",
    "KerovPolynomial",
    "KerovProvider",
    "change_generators",
    "compute_kerov",
    "graded_component",
    "krr1_closed_form",
    "krr3_closed_form",
    "weighted_triple_sum",
    "__version__",
]
