"""Finite spin systems in an N^2-point discrete phase space.

Core objects: SpinSpace fixes the multiplet, build_kernels the discrete
phase-space operator basis, and grids flow through wigner/weyl transforms,
unitary or phase-space propagation, moment extraction, squeezing and
entanglement criteria, Husimi smoothing and entropies.  The phasec command
line front end lives in spinphase.cli.
"""

__version__ = "0.1.0"

from .su2 import (
    SpinSpace,
    Generators,
    build_generators,
    coherent_state,
    coherent_overlap,
    decomposition_params,
    transform_generators,
    rotation_coefficients,
)
from .mapping import (
    KernelSet,
    build_kernels,
    map_operator,
    wigner_of_state,
    weyl_of_state,
    wigner_from_weyl,
    weyl_from_wigner,
    density_from_wigner,
    coherent_wigner,
    coherent_weyl,
    mean_value,
    grid_overlap,
)
from .dynamics import (
    Trajectory,
    evolve_exact,
    fidelity,
    pure_density,
    build_liouville_wigner,
    build_liouville_weyl,
    propagate_series,
    propagate_exponential,
    trajectory_phase_space,
    wigner_trajectory_from_exact,
)
from .models import (
    LmgParams,
    KuParams,
    lmg_hamiltonian,
    ku_hamiltonian,
    coherent_moments,
    ku_analytic_moments,
    ku_numeric_vs_analytic,
)
from .measures import (
    MomentReport,
    CriteriaReport,
    MappedOperators,
    build_mapped_operators,
    moments_from_wigner,
    moments_from_density,
    squeezing_params,
    entanglement_sorensen,
    entanglement_toth,
    snr,
    criteria_from_moments,
    transform_moments,
    local_extrema,
)
from .husimi import (
    SmoothingKernel,
    EntropyReport,
    theta3,
    theta4,
    build_smoothing,
    husimi_from_wigner,
    marginals,
    entropies,
)
