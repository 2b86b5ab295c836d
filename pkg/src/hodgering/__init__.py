"""Exact invariants of isolated hypersurface singularities and of projective
hypersurfaces with isolated singularities."""

import os

from .exactlinalg import RationalMatrix, cokernel_dim, rank, rank_and_kernel
from .jacglobal import (
    HypersurfaceRecord,
    IncompleteSingularList,
    PrecondH0,
    SequenceDims,
    c_d,
    completeness_check,
    h0_log,
    hilbert_series_smooth,
    jacobian_ring_dim,
    sequence_dims,
)
from .localinv import (
    LocalGerm,
    NonIsolated,
    NotSingular,
    milnor_basis,
    milnor_number,
    standard_basis,
    tau_min_search,
    tjurina_number,
)
from .polycore import MonomialOrder, Polynomial, Q, format_polynomial, parse_polynomial
from .spectrum import (
    NotQuasiHomogeneous,
    Spectrum,
    find_weights,
    geometric_genus,
    hodge_numbers,
    spectrum_qh,
)

__version__ = "0.1.0"

SEED_ENV = "HODGERING_SEED"


def default_seed() -> int:
    """Seed for randomized procedures: $HODGERING_SEED if set, else 0."""
    raw = os.environ.get(SEED_ENV, "").strip()
    if not raw:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


__all__ = [
    "HypersurfaceRecord",
    "IncompleteSingularList",
    "LocalGerm",
    "MonomialOrder",
    "NonIsolated",
    "NotQuasiHomogeneous",
    "NotSingular",
    "Polynomial",
    "PrecondH0",
    "Q",
    "RationalMatrix",
    "SequenceDims",
    "Spectrum",
    "c_d",
    "cokernel_dim",
    "completeness_check",
    "default_seed",
    "find_weights",
    "format_polynomial",
    "geometric_genus",
    "h0_log",
    "hilbert_series_smooth",
    "hodge_numbers",
    "jacobian_ring_dim",
    "milnor_basis",
    "milnor_number",
    "parse_polynomial",
    "rank",
    "rank_and_kernel",
    "sequence_dims",
    "spectrum_qh",
    "standard_basis",
    "tau_min_search",
    "tjurina_number",
    "__version__",
]
