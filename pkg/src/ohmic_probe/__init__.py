"""Qubit probes for the cutoff frequency of Ohmic dephasing environments."""
from .errors import (
    BracketError,
    ConvergenceError,
    DimensionMismatch,
    DomainError,
    InsufficientData,
    NoCrossoverError,
    NumericalError,
    OhmicProbeError,
    PoleError,
)
from .estimation import crb_experiment, mle_estimate, outcome_probabilities, simulate_measurements
from .optimize import (
    Optimum,
    crossover_detect,
    ghz_comparison,
    maximize_qfi,
    qsnr,
    r_closed_form_single,
    scan_s,
    werner_ratio_scan,
)
from .probes import Probe, parse_probe
from .qfi import (
    closed_form_qfi,
    fisher_population_measurement,
    qfi_ghz,
    qfi_numeric,
    qfi_single,
    qfi_small_t_series,
    qfi_two_common_bell,
    qfi_two_common_product,
    qfi_two_independent_bell,
    qfi_two_independent_product,
    qfi_werner,
    state_family,
)
from .quadrature import QuadConfig, gamma_numeric
from .spectral import (
    SpectralParams,
    decoherence,
    decoherence_factor,
    decoherence_factor_dwc,
    decoherence_factor_dx,
    spectral_density,
)
from .specialfn import gamma_euler
from .states import (
    Ghz,
    Scenario,
    SingleQubit,
    TwoQubitBell,
    TwoQubitProduct,
    Werner,
    evolve,
    factor_matrix,
    ghz_coherence,
    initial_state,
)

__version__ = "0.1.0"
