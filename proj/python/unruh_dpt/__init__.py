"""Two uniformly accelerated two-level detectors in the Minkowski vacuum.

Thin Python layer over the C++ core: Liouvillian construction, steady
states, spectra, symmetry checks and acceleration sweeps.
"""

from ._core import (
    UnruhError,
    bloch_system,
    calibrate,
    classify_phase,
    concurrence_closed_form,
    concurrence_wootters,
    critical_acceleration,
    dark_states,
    dissipation_coefficients,
    evolve,
    f_factor,
    fourier_transform_oracle,
    kernel_dimension,
    liouvillian,
    named_state,
    observables,
    purity,
    reconstruct_symmetric,
    response_closed_form,
    run_sweep,
    spectrum,
    steady_closed_form,
    symmetry_residual,
    von_neumann_entropy,
)

__all__ = [name for name in dir() if not name.startswith("_")]
