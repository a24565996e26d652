"""Functional calculus for complex matrices via contour and area quadrature."""

from ._core import (
    Contour,
    FunctionSpec,
    NumericalError,
    Spectrum,
    __version__,
    borel_fc,
    conditioned_basis,
    distance_integral,
    from_eigenstructure,
    function_spec,
    holomorphic_fc,
    lu_solve,
    oracle_fc,
    random_unitary,
    resolvent,
    scalar_cauchy_pompeiu,
    smooth_fc,
    spectral_norm,
    spectral_projectors,
)

__all__ = [
    "Contour",
    "FunctionSpec",
    "NumericalError",
    "Spectrum",
    "__version__",
    "borel_fc",
    "conditioned_basis",
    "distance_integral",
    "from_eigenstructure",
    "function_spec",
    "holomorphic_fc",
    "lu_solve",
    "oracle_fc",
    "random_unitary",
    "resolvent",
    "scalar_cauchy_pompeiu",
    "smooth_fc",
    "spectral_norm",
    "spectral_projectors",
]
