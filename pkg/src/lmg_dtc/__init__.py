"""Periodically driven two-region collective-spin model.

N all-to-all Ising-coupled spins are split into two halves driven by
transverse fields of different strengths h1, h2 over a period-1 protocol
(coupling half-period, then drive half-period).  The package provides:

- the exact thermodynamic-limit stroboscopic map for the two regional
  Bloch vectors, with a trajectory-divergence (decorrelator) diagnostic;
- exact finite-N Floquet evolution in the maximal collective sector,
  observables, a fidelity-OTOC scrambling probe, and a full 2^N
  brute-force oracle for small N;
- DFT-based subharmonic analysis and time-crystal order classification;
- a deterministic, resumable sweep harness and a CLI producing the
  stability maps, uniform scans, and spectral density lines as CSV.
"""

__version__ = "0.1.0"

from .diagnostics import (
    DtcClassification,
    Spectrum,
    classify_dtc,
    dft_density_line,
    dft_magnitude,
    observable_series,
)
from .quantum import (
    ExpectationSeries,
    Expectations,
    FloquetFactors,
    QuantumModel,
    apply_floquet,
    apply_floquet_inverse,
    brute_force_reference,
    build_floquet_factors,
    expectations,
    fotoc_series,
    init_coherent,
    init_polarized,
    run_quantum_trajectory,
    time_averaged_fotoc,
)
from .semiclassical import (
    STABILITY_THRESHOLD,
    BlochPair,
    DecorrelatorSeries,
    DriveParams,
    TrajectorySeries,
    bloch_pair_from_angles,
    decorrelator_series,
    drive_kick,
    interaction_kick,
    polarized_pair,
    run_trajectory,
    stroboscopic_step,
    time_averaged_decorrelator,
)
from .spin_ops import (
    DiagonalPhases,
    SpinMatrices,
    build_spin_matrices,
    interaction_half_phases,
    magnetic_numbers,
    x_rotation,
    y_rotation,
)
from .sweep import (
    SweepConfig,
    SweepConfigMismatch,
    SweepFileCollision,
    SweepSummary,
    resume_sweep,
    run_sweep,
)

__all__ = [
    "__version__",
    "BlochPair", "DriveParams", "TrajectorySeries", "DecorrelatorSeries",
    "polarized_pair", "bloch_pair_from_angles", "interaction_kick", "drive_kick",
    "stroboscopic_step", "run_trajectory", "decorrelator_series",
    "time_averaged_decorrelator", "STABILITY_THRESHOLD",
    "QuantumModel", "FloquetFactors", "Expectations", "ExpectationSeries",
    "init_polarized", "init_coherent", "build_floquet_factors", "apply_floquet",
    "apply_floquet_inverse", "expectations", "run_quantum_trajectory",
    "fotoc_series", "time_averaged_fotoc", "brute_force_reference",
    "SpinMatrices", "DiagonalPhases", "build_spin_matrices", "magnetic_numbers",
    "x_rotation", "y_rotation", "interaction_half_phases",
    "Spectrum", "DtcClassification", "dft_magnitude", "classify_dtc",
    "dft_density_line", "observable_series",
    "SweepConfig", "SweepSummary", "SweepConfigMismatch", "SweepFileCollision",
    "run_sweep", "resume_sweep",
]
