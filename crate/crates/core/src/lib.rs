//! Equal-time brackets of quadratic constrained lattice field theories.
//!
//! A linear Hamiltonian system is described by its energy form `M`, the
//! first-order Taylor coefficient `A` of its motion, and linear constraints `C`.
//! [`solve_brackets`] identifies `A ξ = Θ M ξ` on the constraint surface and
//! returns the antisymmetric bracket matrix `Θ`, which for the Klein-Gordon
//! and Coulomb-gauge Maxwell scenarios reproduces `δ³(x − y)` and the
//! transverse delta.

pub mod error;
pub mod helmholtz;
pub mod lattice;
pub mod momentum;
pub mod random;
pub mod scenarios;
pub mod solver;

pub use error::{CiqError, Result};
pub use helmholtz::{longitudinal_project, transverse_delta_kernel, transverse_project, TransverseKernel};
pub use lattice::{
    dft_forward, dft_inverse, spectral_curl, spectral_divergence, spectral_gradient, spectral_laplacian,
    ComplexSpectrum, LatticeGrid, Mode, ScalarField, VectorField,
};
pub use momentum::{
    alpha_to_scalar, alphabeta_to_vector, bracket_in_modes, build_polarization_basis, check_closure,
    check_parity, momentum_hamiltonian_kg, momentum_hamiltonian_maxwell, scalar_to_alpha, vector_to_alphabeta,
    ModeCoefficients, PolarizationBasis, TransverseModeCoefficients,
};
pub use scenarios::{
    build_kg_system, build_maxwell_system, compare_brackets, expected_kg_bracket, expected_maxwell_bracket,
    KgScenario, MaxwellScenario,
};
pub use solver::{
    constraint_null_basis, evolve_exact, hamiltonian_value, solve_brackets, solve_brackets_with,
    taylor_first_order, verify_time_covariance, BracketMatrix, QuadraticSystem, Residuals, SolverConfig,
};
