"""Propagators of Darboux/Crum partner Hamiltonians."""

from ._core import (
    Action,
    BaseKind,
    BasisFunction,
    ComplexTime,
    DarbouxChain,
    Side,
    __version__,
    box_propagator0,
    box_removed_ground_kernel,
    fd_eigensolve,
    free_green,
    free_propagator,
    general_poly_kernel,
    lemma3_identity,
    load_config,
    oscillator_generating_S,
    oscillator_pair_kernel,
    oscillator_pair_potential,
    oscillator_propagator,
    propagator_table,
    spectral_kernel,
    theorem2_kernel,
    theorem3_kernel,
    theorem4_kernel,
    transformed_potential,
    transparent_chain,
    transparent_eigenfunction,
    transparent_propagator,
    verify,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
