//! Klein-Gordon and Coulomb-gauge Maxwell fields on the lattice as
//! [`QuadraticSystem`]s, plus the analytic bracket kernels they must reproduce.
//!
//! Coordinates are raw field values per site and every Hamiltonian is
//! `H = a³ Σ_x (...)`, so a continuum `δ³(x − y)` shows up as `δ_xy / a³`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{CiqError, Result};
use crate::helmholtz::transverse_delta_kernel;
use crate::lattice::{symbol_matrix, LatticeGrid};
use crate::solver::{BracketMatrix, Label, QuadraticSystem};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KgScenario {
    pub grid: LatticeGrid,
    pub mass: f64,
}

impl KgScenario {
    pub fn new(grid: LatticeGrid, mass: f64) -> Result<Self> {
        if !(mass.is_finite() && mass > 0.0) {
            return Err(CiqError::InvalidScenario(format!(
                "mass must be positive, got {mass}"
            )));
        }
        Ok(Self { grid, mass })
    }

    pub fn dim(&self) -> usize {
        2 * self.grid.n_sites()
    }

    pub fn phi_index(&self, site: usize) -> usize {
        site
    }

    pub fn pi_index(&self, site: usize) -> usize {
        self.grid.n_sites() + site
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxwellScenario {
    pub grid: LatticeGrid,
}

impl MaxwellScenario {
    pub fn new(grid: LatticeGrid) -> Self {
        Self { grid }
    }

    pub fn dim(&self) -> usize {
        6 * self.grid.n_sites()
    }

    pub fn a_index(&self, component: usize, site: usize) -> usize {
        component * self.grid.n_sites() + site
    }

    pub fn pi_index(&self, component: usize, site: usize) -> usize {
        (3 + component) * self.grid.n_sites() + site
    }
}

fn neg_laplacian(grid: &LatticeGrid) -> DMatrix<f64> {
    symbol_matrix(grid, |k| Complex64::new(k[0] * k[0] + k[1] * k[1] + k[2] * k[2], 0.0))
}

fn symmetrize(m: DMatrix<f64>) -> DMatrix<f64> {
    (&m + m.transpose()) * 0.5
}

/// `ξ = (φ(x)…, π(x)…)`, `M = a³ diag(m² + K, I)`, `A = [[0, I], [−(m² + K), 0]]`,
/// no constraints; `K` is the spectral `−Δ`.
pub fn build_kg_system(s: &KgScenario) -> QuadraticSystem {
    let grid = &s.grid;
    let n = grid.n_sites();
    let a3 = grid.cell_volume();
    let mut stiffness = symmetrize(neg_laplacian(grid));
    for i in 0..n {
        stiffness[(i, i)] += s.mass * s.mass;
    }

    let mut m = DMatrix::zeros(2 * n, 2 * n);
    m.view_mut((0, 0), (n, n)).copy_from(&(&stiffness * a3));
    m.view_mut((n, n), (n, n)).fill_with_identity();
    m.view_mut((n, n), (n, n)).scale_mut(a3);

    let mut a = DMatrix::zeros(2 * n, 2 * n);
    a.view_mut((0, n), (n, n)).fill_with_identity();
    a.view_mut((n, 0), (n, n)).copy_from(&(-&stiffness));

    let labels = (0..n)
        .map(|x| Label::new("phi", 0, x))
        .chain((0..n).map(|x| Label::new("pi", 0, x)))
        .collect();
    QuadraticSystem::new(m, a, DMatrix::zeros(0, 2 * n), labels).expect("well-formed KG system")
}

/// `ξ = (A_i(x)…, π_i(x)…)` component-major. Per mode `M_AA = |k|² δ_ij − k_i k_j`
/// (the quadratic form of `½(∂_j A_i ∂_j A_i − ∂_i A_j ∂_j A_i)`), `M = a³ diag(M_AA, I)`,
/// `Ȧ = −π`, `π̇ = −ΔA`, and `C` holds the divergence rows of `A` and of `π`.
pub fn build_maxwell_system(s: &MaxwellScenario) -> QuadraticSystem {
    let grid = &s.grid;
    let n = grid.n_sites();
    let a3 = grid.cell_volume();
    let k_op = symmetrize(neg_laplacian(grid));

    let mut m = DMatrix::zeros(6 * n, 6 * n);
    for i in 0..3 {
        for j in 0..3 {
            let block = symbol_matrix(grid, |k| {
                let k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
                let delta = if i == j { k2 } else { 0.0 };
                Complex64::new(delta - k[i] * k[j], 0.0)
            });
            m.view_mut((i * n, j * n), (n, n)).copy_from(&(block * a3));
        }
    }
    let m = symmetrize(m);
    let mut m = m;
    for d in 3 * n..6 * n {
        m[(d, d)] = a3;
    }

    let mut a = DMatrix::zeros(6 * n, 6 * n);
    for i in 0..3 {
        let (ai, pi) = (s.a_index(i, 0), s.pi_index(i, 0));
        a.view_mut((ai, pi), (n, n)).fill_with_identity();
        a.view_mut((ai, pi), (n, n)).neg_mut();
        a.view_mut((pi, ai), (n, n)).copy_from(&k_op);
    }

    let mut c = DMatrix::zeros(2 * n, 6 * n);
    for j in 0..3 {
        let d_j = symbol_matrix(grid, |k| Complex64::new(0.0, k[j]));
        c.view_mut((0, s.a_index(j, 0)), (n, n)).copy_from(&d_j);
        c.view_mut((n, s.pi_index(j, 0)), (n, n)).copy_from(&d_j);
    }

    let labels = ["A", "pi"]
        .iter()
        .flat_map(|f| (0..3).flat_map(move |i| (0..n).map(move |x| Label::new(f, i, x))))
        .collect();
    QuadraticSystem::new(m, a, c, labels).expect("well-formed Maxwell system")
}

/// `{φ(x), π(y)} = δ_xy / a³`, `{π(x), φ(y)} = −δ_xy / a³`, all other blocks zero.
pub fn expected_kg_bracket(grid: &LatticeGrid) -> DMatrix<f64> {
    let n = grid.n_sites();
    let v = 1.0 / grid.cell_volume();
    let mut e = DMatrix::zeros(2 * n, 2 * n);
    for x in 0..n {
        e[(x, n + x)] = v;
        e[(n + x, x)] = -v;
    }
    e
}

/// `{A_i(x), π_j(y)} = −δ⊥_ij(x − y)` and its transpose image in the `{π, A}` block;
/// `{A, A} = {π, π} = 0`.
pub fn expected_maxwell_bracket(grid: &LatticeGrid) -> DMatrix<f64> {
    let n3 = 3 * grid.n_sites();
    let kernel = transverse_delta_kernel(grid).dense();
    let mut e = DMatrix::zeros(2 * n3, 2 * n3);
    e.view_mut((0, n3), (n3, n3)).copy_from(&(-&kernel));
    e.view_mut((n3, 0), (n3, n3)).copy_from(&kernel.transpose());
    e
}

/// Largest elementwise deviation between two bracket matrices.
pub fn compare_brackets(actual: &DMatrix<f64>, expected: &DMatrix<f64>) -> Result<f64> {
    if actual.shape() != expected.shape() {
        return Err(CiqError::DimensionMismatch {
            expected: format!("{:?}", expected.shape()),
            actual: format!("{:?}", actual.shape()),
        });
    }
    Ok((actual - expected).amax())
}

impl BracketMatrix {
    /// Max abs over the `rows × cols` block starting at `(r0, c0)`.
    pub fn block_max_abs(&self, (r0, c0): (usize, usize), (rows, cols): (usize, usize)) -> f64 {
        self.theta.view((r0, c0), (rows, cols)).amax()
    }
}
