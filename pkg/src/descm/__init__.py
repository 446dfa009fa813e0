"""Double-exponential Sinc collocation for even-polynomial anharmonic
oscillators: spectra, convergence sweeps, mesh-size selection, and
wavefunction reconstruction."""

from .assembly import (
    CollocationMatrix,
    CollocationOverflowError,
    assemble_collocation_matrix,
    assemble_generalized_pair,
)
from .de_map import (
    TransformedProblem,
    map_derivative,
    map_value,
    transformed_potential,
    transformed_potential_general,
    transformed_potential_scaled,
)
from .eigensolver import EigenDecomposition, EigenSolveError, eigen_symmetric
from .mesh import (
    MeshStrategy,
    TraceMinimumNotFound,
    collocation_trace,
    lambert_w0,
    mesh_size_for,
    optimal_mesh_size,
    trace_minimized_mesh_size,
)
from .potential import (
    AnalyticCase,
    EvenPolynomialPotential,
    PotentialSpecError,
    analytic_catalog,
    chebyshev_well,
    evaluate,
    parse_potential,
)
from .sinc_basis import SincWeights, second_derivative_weight, sinc, sinc_basis_eval
from .solver import (
    ConvergenceRecord,
    ConvergenceTrace,
    DescmProblem,
    SpectrumResult,
    converge,
    reconstruct_wavefunction,
    solve,
)

__version__ = "0.1.0"

__all__ = [
    "AnalyticCase",
    "CollocationMatrix",
    "CollocationOverflowError",
    "ConvergenceRecord",
    "ConvergenceTrace",
    "DescmProblem",
    "EigenDecomposition",
    "EigenSolveError",
    "EvenPolynomialPotential",
    "MeshStrategy",
    "PotentialSpecError",
    "SincWeights",
    "SpectrumResult",
    "TraceMinimumNotFound",
    "TransformedProblem",
    "analytic_catalog",
    "assemble_collocation_matrix",
    "assemble_generalized_pair",
    "chebyshev_well",
    "collocation_trace",
    "converge",
    "eigen_symmetric",
    "evaluate",
    "lambert_w0",
    "map_derivative",
    "map_value",
    "mesh_size_for",
    "optimal_mesh_size",
    "parse_potential",
    "reconstruct_wavefunction",
    "second_derivative_weight",
    "sinc",
    "sinc_basis_eval",
    "solve",
    "trace_minimized_mesh_size",
    "transformed_potential",
    "transformed_potential_general",
    "transformed_potential_scaled",
]
