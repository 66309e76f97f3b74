"""Driven spin-S open-system dynamics (secular TCL2) and the RHP divisibility measure."""

from ._backend import HAVE_COMPILED, backend_name
from .bath import (BathState, QuadratureSettings, R, R_PLUS_ONE, RateTable,
                   SpectralDensity, lambda_rate, rate_table, thermal_occupation)
from .divisibility import (ChoiProbe, DivisibilityReport, epsilon_general,
                           epsilon_spin1_closed_form, f_dim, g_analytic_degenerate,
                           g_analytic_spin1, g_finite_difference, g_numeric,
                           max_entangled, n_rhp)
from .evolve import InitialState, Trajectory, evolve, schrodinger_frame
from .generator import (GeneratorSnapshot, Spin1Rates, apply_generator,
                        snapshot_from_table, spin1_generator, spin1_rates,
                        superoperator_matrix)
from .linalg import (HermitianEigenDecomposition, hermitian_eigen,
                     hermitian_eigenvalues, kron, trace_norm)
from .spin import (CouplingCoefficients, CouplingKind, CouplingSpec, DriveParameters,
                   EigenFrame, SpinModel, SpinQuantumNumber, build_hs, build_model,
                   coupling_coefficients, eigenframe, spin_operators)

__version__ = "0.1.0"

__all__ = [
    "HAVE_COMPILED", "backend_name", "__version__",
    "BathState", "QuadratureSettings", "R", "R_PLUS_ONE", "RateTable",
    "SpectralDensity", "lambda_rate", "rate_table", "thermal_occupation",
    "ChoiProbe", "DivisibilityReport", "Spin1Rates", "epsilon_general",
    "epsilon_spin1_closed_form", "f_dim", "g_analytic_degenerate",
    "g_analytic_spin1", "g_finite_difference", "g_numeric", "max_entangled", "n_rhp",
    "InitialState", "Trajectory", "evolve", "schrodinger_frame",
    "GeneratorSnapshot", "apply_generator", "snapshot_from_table",
    "spin1_generator", "spin1_rates", "superoperator_matrix",
    "HermitianEigenDecomposition", "hermitian_eigen", "hermitian_eigenvalues",
    "kron", "trace_norm",
    "CouplingCoefficients", "CouplingKind", "CouplingSpec", "DriveParameters",
    "EigenFrame", "SpinModel", "SpinQuantumNumber", "build_hs", "build_model",
    "coupling_coefficients", "eigenframe", "spin_operators",
]
