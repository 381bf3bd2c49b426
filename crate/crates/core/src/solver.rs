//! Bracket reconstruction for linear Hamiltonian systems with linear constraints.
//!
//! A [`QuadraticSystem`] carries the Hamiltonian quadratic form `H = ½ ξᵀ M ξ`,
//! the first-order Taylor coefficient `A` of the motion (`ξ(t) = ξ̃ + A ξ̃ t + O(t²)`)
//! and constraint rows `C ξ = 0`. Imposing Hamilton's equations at `t = 0`,
//! `A ξ̃ = Θ ∂H/∂ξ̃ = Θ M ξ̃` for every admissible `ξ̃`, fixes the bracket matrix
//! `Θ_IJ = {ξ̃_I, ξ̃_J}`.
//!
//! Admissible states are `ξ̃ = B z` with `B` an orthonormal basis of `ker C`, so the
//! identification is carried out in the reduced coordinates `z`:
//! `Θ_r M_r = A_r` with `M_r = Bᵀ M B`, `A_r = Bᵀ A B`, and `Θ = B Θ_r Bᵀ`.
//! Antisymmetry of `Θ` is not imposed; it is measured and reported.

use nalgebra::{ColPivQR, DMatrix, DVector, SymmetricEigen};
use rand::Rng;

use crate::error::{CiqError, Result};

/// Human-readable name of one phase-space coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Label {
    pub field: String,
    pub component: usize,
    pub site: usize,
}

impl Label {
    pub fn new(field: &str, component: usize, site: usize) -> Self {
        Self {
            field: field.to_string(),
            component,
            site,
        }
    }
}

/// Numerical thresholds of the solver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Pivoted-QR diagonal entries of `Cᵀ` below `rank_tol * |R₀₀|` count as zero.
    pub rank_tol: f64,
    /// Eigenvalues of `M_r` below `λ_max / max_condition` count as zero.
    pub max_condition: f64,
    /// `max |C A B|` allowed, relative to `max |A| * max |C|`.
    pub drift_tol: f64,
    /// Relative size of `A_r` on null directions of `M_r` still treated as zero.
    pub null_dynamics_tol: f64,
    /// Antisymmetry residual at which the system is rejected as inconsistent.
    pub inconsistency_tol: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            rank_tol: 1e-10,
            max_condition: 1e12,
            drift_tol: 1e-10,
            null_dynamics_tol: 1e-9,
            inconsistency_tol: 1e-6,
        }
    }
}

/// Relative tolerance for `C ξ ≈ 0` on states handed to [`evolve_exact`].
pub const STATE_CONSTRAINT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticSystem {
    m: DMatrix<f64>,
    a: DMatrix<f64>,
    c: DMatrix<f64>,
    labels: Vec<Label>,
}

impl QuadraticSystem {
    /// Validates shapes, finiteness and the symmetry of `M` (1e-12 relative).
    /// `c` may have zero rows. `labels` must be empty or have one entry per coordinate.
    pub fn new(
        m: DMatrix<f64>,
        a: DMatrix<f64>,
        c: DMatrix<f64>,
        labels: Vec<Label>,
    ) -> Result<Self> {
        let d = m.nrows();
        if m.ncols() != d || a.shape() != (d, d) || c.ncols() != d {
            return Err(CiqError::InvalidSystem(format!(
                "shapes M {:?}, A {:?}, C {:?} are inconsistent",
                m.shape(),
                a.shape(),
                c.shape()
            )));
        }
        if c.nrows() > d {
            return Err(CiqError::InvalidSystem(format!(
                "{} constraint rows exceed dimension {d}",
                c.nrows()
            )));
        }
        if !labels.is_empty() && labels.len() != d {
            return Err(CiqError::InvalidSystem(format!(
                "{} labels for dimension {d}",
                labels.len()
            )));
        }
        if [&m, &a, &c].iter().any(|x| x.iter().any(|v| !v.is_finite())) {
            return Err(CiqError::InvalidSystem("non-finite entries".into()));
        }
        let asym = (&m - m.transpose()).amax();
        if asym > 1e-12 * m.amax() {
            return Err(CiqError::InvalidSystem(format!(
                "M is not symmetric (max |M - Mᵀ| = {asym:.3e})"
            )));
        }
        Ok(Self { m, a, c, labels })
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn hamiltonian(&self) -> &DMatrix<f64> {
        &self.m
    }

    pub fn dynamics(&self) -> &DMatrix<f64> {
        &self.a
    }

    pub fn constraints(&self) -> &DMatrix<f64> {
        &self.c
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    /// `max |C A B|`, relative to `max |A| * max |C|`; zero without constraints.
    pub fn constraint_drift(&self, basis: &DMatrix<f64>) -> f64 {
        if self.c.nrows() == 0 || basis.ncols() == 0 {
            return 0.0;
        }
        let scale = self.a.amax() * self.c.amax();
        if scale == 0.0 {
            return 0.0;
        }
        (&self.c * (&self.a * basis)).amax() / scale
    }
}

/// Relative residuals recorded by [`solve_brackets`].
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Residuals {
    /// `‖Θ + Θᵀ‖ / ‖Θ‖`.
    pub antisymmetry: f64,
    /// `‖A B − Θ M B‖ / ‖A B‖`.
    pub hamilton: f64,
    /// `max |C Θ| / (max |C| max |Θ|)`.
    pub constraint: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BracketMatrix {
    pub theta: DMatrix<f64>,
    /// Orthonormal basis of the constraint surface used in the solve.
    pub basis: DMatrix<f64>,
    pub residuals: Residuals,
}

impl BracketMatrix {
    pub fn dim(&self) -> usize {
        self.theta.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.theta[(i, j)]
    }
}

/// Orthonormal `d × r` basis of `ker C`, `r = d − rank C`.
pub fn constraint_null_basis(c: &DMatrix<f64>, rank_tol: f64) -> DMatrix<f64> {
    let d = c.ncols();
    if c.nrows() == 0 {
        return DMatrix::identity(d, d);
    }
    // Householder QR with column pivoting on Cᵀ: the leading `rank` columns of
    // Q span the row space of C, the trailing ones its kernel. The SVD route
    // loses ~5 digits here because the divergence has large clusters of equal
    // singular values.
    let qr = ColPivQR::new(c.transpose());
    let r = qr.r();
    let r_max = r[(0, 0)].abs();
    if r_max == 0.0 {
        return DMatrix::identity(d, d);
    }
    let rank = (0..r.nrows().min(r.ncols()))
        .filter(|&i| r[(i, i)].abs() > rank_tol * r_max)
        .count();
    if rank == d {
        return DMatrix::zeros(d, 0);
    }
    let mut q_t = DMatrix::identity(d, d);
    qr.q_tr_mul(&mut q_t);
    q_t.rows(rank, d - rank).transpose()
}

pub fn solve_brackets(sys: &QuadraticSystem) -> Result<BracketMatrix> {
    solve_brackets_with(sys, &SolverConfig::default())
}

pub fn solve_brackets_with(sys: &QuadraticSystem, cfg: &SolverConfig) -> Result<BracketMatrix> {
    let basis = constraint_null_basis(&sys.c, cfg.rank_tol);
    let drift = sys.constraint_drift(&basis);
    if drift > cfg.drift_tol {
        return Err(CiqError::ConstraintDrift { residual: drift });
    }
    let r = basis.ncols();
    if r == 0 {
        return Err(CiqError::DegenerateHamiltonian(
            "constraint surface is a single point".into(),
        ));
    }

    let m_b = &sys.m * &basis;
    let a_b = &sys.a * &basis;
    let m_r = basis.transpose() * &m_b;
    let m_r = (&m_r + m_r.transpose()) * 0.5;
    let a_r = basis.transpose() * &a_b;

    let theta_r = identify_reduced(&m_r, &a_r, cfg)?;
    let theta = &basis * theta_r * basis.transpose();

    let theta_norm = theta.norm();
    let antisymmetry = if theta_norm == 0.0 {
        0.0
    } else {
        (&theta + theta.transpose()).norm() / theta_norm
    };
    if antisymmetry >= cfg.inconsistency_tol {
        return Err(CiqError::InconsistentSystem {
            residual: antisymmetry,
        });
    }
    let a_b_norm = a_b.norm();
    let hamilton = if a_b_norm == 0.0 {
        (&theta * &m_b).norm()
    } else {
        (&a_b - &theta * &m_b).norm() / a_b_norm
    };
    let constraint = if sys.c.nrows() == 0 || theta.amax() == 0.0 {
        0.0
    } else {
        (&sys.c * &theta).amax() / (sys.c.amax() * theta.amax())
    };

    Ok(BracketMatrix {
        theta,
        basis,
        residuals: Residuals {
            antisymmetry,
            hamilton,
            constraint,
        },
    })
}

/// Solves `Θ_r M_r = A_r` in the eigenbasis of `M_r`.
///
/// On the range of `M_r` the solution is `A_r M_r⁻¹`. Directions where `M_r`
/// vanishes (relative to `max_condition`) leave columns of `Θ_r` undetermined;
/// they are admissible only if `A_r` also vanishes there. The mixed entries are
/// then the only values consistent with the determined block under
/// antisymmetry, and the null-null block is set to zero.
fn identify_reduced(m_r: &DMatrix<f64>, a_r: &DMatrix<f64>, cfg: &SolverConfig) -> Result<DMatrix<f64>> {
    let r = m_r.nrows();
    let eig = SymmetricEigen::new(m_r.clone());
    let lambda_max = eig.eigenvalues.amax();
    if lambda_max == 0.0 {
        return Err(CiqError::DegenerateHamiltonian(
            "Hamiltonian vanishes on the constraint surface".into(),
        ));
    }
    let cutoff = lambda_max / cfg.max_condition;
    let is_null: Vec<bool> = eig.eigenvalues.iter().map(|l| l.abs() <= cutoff).collect();
    let v = &eig.eigenvectors;
    let a_e = v.transpose() * a_r * v;

    let null_dynamics: f64 = (0..r)
        .filter(|&j| is_null[j])
        .map(|j| a_e.column(j).norm_squared())
        .sum::<f64>()
        .sqrt();
    if null_dynamics > cfg.null_dynamics_tol * a_e.norm().max(f64::MIN_POSITIVE) {
        let n_null = is_null.iter().filter(|&&z| z).count();
        return Err(CiqError::DegenerateHamiltonian(format!(
            "{n_null} directions with condition number above {:.1e} carry nonzero dynamics",
            cfg.max_condition
        )));
    }

    let lambda = &eig.eigenvalues;
    let theta_e = DMatrix::from_fn(r, r, |i, j| match (is_null[i], is_null[j]) {
        (_, false) => a_e[(i, j)] / lambda[j],
        (false, true) => -a_e[(j, i)] / lambda[i],
        (true, true) => 0.0,
    });
    Ok(v * theta_e * v.transpose())
}

/// `½ ξᵀ M ξ`.
pub fn hamiltonian_value(sys: &QuadraticSystem, state: &DVector<f64>) -> f64 {
    0.5 * state.dot(&(&sys.m * state))
}

/// First-order Taylor step `ξ̃ + A ξ̃ t`.
pub fn taylor_first_order(sys: &QuadraticSystem, state: &DVector<f64>, t: f64) -> DVector<f64> {
    state + (&sys.a * state) * t
}

/// `exp(A t)`.
pub fn propagator(sys: &QuadraticSystem, t: f64) -> DMatrix<f64> {
    (&sys.a * t).exp()
}

fn check_on_surface(sys: &QuadraticSystem, state: &DVector<f64>) -> Result<()> {
    if sys.c.nrows() == 0 {
        return Ok(());
    }
    let residual = (&sys.c * state).norm();
    let scale = sys.c.norm() * state.norm();
    if residual > STATE_CONSTRAINT_TOL * scale.max(f64::MIN_POSITIVE) {
        return Err(CiqError::ConstraintViolation {
            residual: residual / scale.max(f64::MIN_POSITIVE),
        });
    }
    Ok(())
}

/// Exact linear flow `exp(A t) ξ̃` of a constraint-surface state.
pub fn evolve_exact(sys: &QuadraticSystem, state: &DVector<f64>, t: f64) -> Result<DVector<f64>> {
    if state.len() != sys.dim() {
        return Err(CiqError::DimensionMismatch {
            expected: sys.dim().to_string(),
            actual: state.len().to_string(),
        });
    }
    check_on_surface(sys, state)?;
    Ok(propagator(sys, t) * state)
}

/// Random state `B z` on the constraint surface, `z` uniform in `[-1, 1)^r`.
pub fn random_surface_state<R: Rng + ?Sized>(basis: &DMatrix<f64>, rng: &mut R) -> DVector<f64> {
    let z = DVector::from_fn(basis.ncols(), |_, _| rng.random_range(-1.0..1.0));
    basis * z
}

/// Largest relative Hamilton-equation residual `‖A ξ(t) − Θ M ξ(t)‖ / ‖A ξ(t)‖`
/// over `trials` random surface states evolved exactly to each of `times`.
pub fn verify_time_covariance<R: Rng + ?Sized>(
    sys: &QuadraticSystem,
    brackets: &BracketMatrix,
    times: &[f64],
    trials: usize,
    rng: &mut R,
) -> Result<f64> {
    if brackets.dim() != sys.dim() {
        return Err(CiqError::DimensionMismatch {
            expected: sys.dim().to_string(),
            actual: brackets.dim().to_string(),
        });
    }
    let states: Vec<_> = (0..trials)
        .map(|_| random_surface_state(&brackets.basis, rng))
        .collect();
    for s in &states {
        check_on_surface(sys, s)?;
    }
    let theta_m = &brackets.theta * &sys.m;
    let mut worst: f64 = 0.0;
    for &t in times {
        let u = propagator(sys, t);
        for s in &states {
            let xi = &u * s;
            let lhs = &sys.a * &xi;
            let norm = lhs.norm();
            let res = (&lhs - &theta_m * &xi).norm();
            worst = worst.max(if norm == 0.0 { res } else { res / norm });
        }
    }
    Ok(worst)
}

/// Largest relative change of `H` along exact trajectories of random surface states.
pub fn max_energy_drift<R: Rng + ?Sized>(
    sys: &QuadraticSystem,
    basis: &DMatrix<f64>,
    times: &[f64],
    trials: usize,
    rng: &mut R,
) -> f64 {
    let states: Vec<_> = (0..trials).map(|_| random_surface_state(basis, rng)).collect();
    let mut worst: f64 = 0.0;
    for &t in times {
        let u = propagator(sys, t);
        for s in &states {
            let h0 = hamiltonian_value(sys, s);
            let h1 = hamiltonian_value(sys, &(&u * s));
            let scale = h0.abs().max(f64::MIN_POSITIVE);
            worst = worst.max((h1 - h0).abs() / scale);
        }
    }
    worst
}
