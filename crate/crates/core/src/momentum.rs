//! Real mode coordinates for real fields, polarization bases, and mode-space
//! Hamiltonians and brackets.
//!
//! A real field has Hermitian coefficients `f^(n) = conj f^(-n)`; every such
//! spectrum is written uniquely as `f^(n) = (1+i)/2 α(n) + (1−i)/2 α(−n)` with real
//! `α`, and `α(n) = Re f^(n) + Im f^(n)`.
//!
//! Continuum-to-lattice dictionary under this crate's transform convention
//! (synthesis without prefactor, `k = 2π n / L`):
//!
//! | continuum                     | lattice                         |
//! |-------------------------------|---------------------------------|
//! | `∫ dk³ g(k) e^{ik·x}`         | `Σ_n g(n) e^{ik·x}`             |
//! | `(2π)³ ∫ dq³ (…)` in `H`      | `L³ Σ_n (…)`                    |
//! | `(2π)⁻³ δ³(k − q)`            | `δ_{n,n'} / L³`                 |
//! | `δ³(x − y)`                   | `δ_{x,y} / a³`                  |
//!
//! The middle rows follow from Parseval, `Σ_x f g = N³ Σ_n f^ conj(g^)`, together
//! with `a³ N³ = L³`.
//!
//! The transverse vector sector uses two polarizations per nonzero mode; the
//! constant (`k = 0`) part of a transverse field has no polarization plane and
//! is carried as three extra real coordinates.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{CiqError, Result};
use crate::helmholtz::{longitudinal_project, transverse_symbol};
use crate::lattice::{dft_forward, dft_inverse, ComplexSpectrum, LatticeGrid, Mode, ScalarField, VectorField};
use crate::solver::BracketMatrix;

const HALF_PLUS: Complex64 = Complex64::new(0.5, 0.5);
const HALF_MINUS: Complex64 = Complex64::new(0.5, -0.5);

/// Relative size of the longitudinal part tolerated by [`vector_to_alphabeta`].
pub const TRANSVERSE_TOL: f64 = 1e-10;

/// Real coefficients `α(n)` of a scalar field, one per mode.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeCoefficients {
    pub grid: LatticeGrid,
    pub values: Vec<f64>,
}

/// Real coefficients `α_λ(n)`, `λ ∈ {1, 2}`, of a transverse vector field.
///
/// `pol[λ][m]` is indexed by mode index; the zero-mode slot is unused and
/// stays zero, the constant part lives in `zero_mode`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransverseModeCoefficients {
    pub grid: LatticeGrid,
    pub pol: [Vec<f64>; 2],
    pub zero_mode: [f64; 3],
}

impl TransverseModeCoefficients {
    pub fn zeros(grid: LatticeGrid) -> Self {
        Self {
            grid,
            pol: [vec![0.0; grid.n_sites()], vec![0.0; grid.n_sites()]],
            zero_mode: [0.0; 3],
        }
    }

    /// Number of real coordinates, `2 (N³ − 1) + 3`.
    pub fn len(grid: &LatticeGrid) -> usize {
        2 * (grid.n_sites() - 1) + 3
    }

    /// Flat layout: `α_1` over nonzero modes in mode order, then `α_2`, then the
    /// three zero-mode components.
    pub fn to_flat(&self) -> Vec<f64> {
        let z = self.grid.zero_mode_index();
        let mut out = Vec::with_capacity(Self::len(&self.grid));
        for p in &self.pol {
            out.extend(p.iter().enumerate().filter(|(m, _)| *m != z).map(|(_, v)| *v));
        }
        out.extend_from_slice(&self.zero_mode);
        out
    }
}

pub fn scalar_to_alpha(f: &ScalarField) -> ModeCoefficients {
    let s = dft_forward(f);
    ModeCoefficients {
        grid: *f.grid(),
        values: s.coeffs().iter().map(|c| c.re + c.im).collect(),
    }
}

fn alpha_spectrum(grid: &LatticeGrid, alpha: impl Fn(usize) -> Complex64) -> ComplexSpectrum {
    let coeffs = (0..grid.n_sites())
        .map(alpha)
        .collect();
    ComplexSpectrum::new(*grid, coeffs).expect("one coefficient per mode")
}

pub fn alpha_to_scalar(a: &ModeCoefficients) -> ScalarField {
    let g = a.grid;
    let s = alpha_spectrum(&g, |m| {
        HALF_PLUS * a.values[m] + HALF_MINUS * a.values[g.negated_mode_index(m)]
    });
    dft_inverse(&s).expect("Hermitian by construction")
}

/// Whether `n` belongs to the half of the mode set on which the basis is built
/// directly: `n1 > 0`, or `n1 = 0, n2 > 0`, or `n1 = n2 = 0, n3 > 0`.
pub fn is_canonical(n: Mode) -> bool {
    n[0] > 0 || (n[0] == 0 && n[1] > 0) || (n[0] == 0 && n[1] == 0 && n[2] > 0)
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn unit(k: [f64; 3]) -> [f64; 3] {
    let n = dot(k, k).sqrt();
    k.map(|c| c / n)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolarizationBasis {
    grid: LatticeGrid,
    eps: [Vec<[f64; 3]>; 2],
}

impl PolarizationBasis {
    pub fn grid(&self) -> &LatticeGrid {
        &self.grid
    }

    /// `ε_λ(n)` for `λ ∈ {0, 1}` (i.e. ε₁, ε₂) by mode index.
    pub fn eps(&self, lambda: usize, mode_index: usize) -> [f64; 3] {
        self.eps[lambda][mode_index]
    }
}

/// Real right-handed polarization pairs for every nonzero mode.
///
/// On the canonical half, `ε₁` is the axis least aligned with `k̂` (lowest axis on
/// ties) with its `k̂` component removed, and `ε₂ = k̂ × ε₁`. The other half is
/// filled by `ε₁(−n) = ε₁(n)`, `ε₂(−n) = −ε₂(n)`.
pub fn build_polarization_basis(grid: &LatticeGrid) -> PolarizationBasis {
    let n = grid.n_sites();
    let mut eps = [vec![[0.0; 3]; n], vec![[0.0; 3]; n]];
    for m in 0..n {
        let mode = grid.mode(m);
        if !is_canonical(mode) {
            continue;
        }
        let k_hat = unit(grid.wavevector(mode));
        let axis = (0..3)
            .min_by(|&a, &b| k_hat[a].abs().total_cmp(&k_hat[b].abs()))
            .expect("three axes");
        let mut u = [0.0; 3];
        u[axis] = 1.0;
        let proj = dot(u, k_hat);
        let e1 = unit([0, 1, 2].map(|i| u[i] - proj * k_hat[i]));
        let e2 = cross(k_hat, e1);
        let neg = grid.negated_mode_index(m);
        eps[0][m] = e1;
        eps[1][m] = e2;
        eps[0][neg] = e1;
        eps[1][neg] = e2.map(|c| -c);
    }
    PolarizationBasis { grid: *grid, eps }
}

fn nonzero_modes(grid: &LatticeGrid) -> impl Iterator<Item = usize> {
    let z = grid.zero_mode_index();
    (0..grid.n_sites()).filter(move |&m| m != z)
}

/// Max elementwise deviation of `Σ_λ ε_λ ε_λᵀ` from `I − k̂ k̂ᵀ` over nonzero modes.
pub fn check_closure(basis: &PolarizationBasis) -> f64 {
    let g = basis.grid;
    nonzero_modes(&g)
        .map(|m| {
            let t = transverse_symbol(g.wavevector_at(m));
            let (e1, e2) = (basis.eps[0][m], basis.eps[1][m]);
            let mut worst: f64 = 0.0;
            for i in 0..3 {
                for j in 0..3 {
                    worst = worst.max((e1[i] * e1[j] + e2[i] * e2[j] - t[i][j]).abs());
                }
            }
            worst
        })
        .fold(0.0, f64::max)
}

/// Max deviation from orthonormality and from `ε₁ × ε₂ = k̂`.
pub fn check_orthonormality(basis: &PolarizationBasis) -> f64 {
    let g = basis.grid;
    nonzero_modes(&g)
        .map(|m| {
            let (e1, e2) = (basis.eps[0][m], basis.eps[1][m]);
            let k_hat = unit(g.wavevector_at(m));
            let c = cross(e1, e2);
            [
                (dot(e1, e1) - 1.0).abs(),
                (dot(e2, e2) - 1.0).abs(),
                dot(e1, e2).abs(),
                (0..3).map(|i| (c[i] - k_hat[i]).abs()).fold(0.0, f64::max),
            ]
            .into_iter()
            .fold(0.0, f64::max)
        })
        .fold(0.0, f64::max)
}

/// Max of `|ε₁(−n) − ε₁(n)|` and `|ε₂(−n) + ε₂(n)|`; zero for a basis built here.
pub fn check_parity(basis: &PolarizationBasis) -> f64 {
    let g = basis.grid;
    nonzero_modes(&g)
        .map(|m| {
            let neg = g.negated_mode_index(m);
            (0..3)
                .map(|i| {
                    let d1 = (basis.eps[0][neg][i] - basis.eps[0][m][i]).abs();
                    let d2 = (basis.eps[1][neg][i] + basis.eps[1][m][i]).abs();
                    d1.max(d2)
                })
                .fold(0.0, f64::max)
        })
        .fold(0.0, f64::max)
}

/// Linear extraction of `α_λ(n) = Re c_λ + Im c_λ`, `c_λ(n) = v^(n) · ε_λ(n)`,
/// applied to any vector field (transverse or not).
fn extract_transverse(v: &VectorField, basis: &PolarizationBasis) -> TransverseModeCoefficients {
    let g = *v.grid();
    let specs = v.components().each_ref().map(dft_forward);
    let mut out = TransverseModeCoefficients::zeros(g);
    for m in nonzero_modes(&g) {
        for (lambda, pol) in out.pol.iter_mut().enumerate() {
            let e = basis.eps[lambda][m];
            let c: Complex64 = (0..3).map(|i| specs[i].coeffs()[m] * e[i]).sum();
            pol[m] = c.re + c.im;
        }
    }
    let z = g.zero_mode_index();
    out.zero_mode = std::array::from_fn(|i| {
        let c = specs[i].coeffs()[z];
        c.re + c.im
    });
    out
}

/// Polarization coefficients of a transverse field.
///
/// The same `Re + Im` rule serves both polarizations even though `ε₂` is odd in
/// `n`: with `c_λ(n) = (1+i)/2 α_λ(n) + (1−i)/2 s_λ α_λ(−n)`, `s = ±1`, the `α(−n)`
/// terms cancel in `Re + Im` for either sign.
pub fn vector_to_alphabeta(v: &VectorField, basis: &PolarizationBasis) -> Result<TransverseModeCoefficients> {
    if v.grid() != basis.grid() {
        return Err(CiqError::GridMismatch);
    }
    let residual = longitudinal_project(v).max_abs();
    if residual > TRANSVERSE_TOL * v.max_abs().max(f64::MIN_POSITIVE) {
        return Err(CiqError::NotTransverse { residual });
    }
    Ok(extract_transverse(v, basis))
}

/// Transverse field `Σ_λ Σ_n α_λ(n) ε_λ(n) ((1+i)/2 e^{ik·x} + (1−i)/2 e^{−ik·x})`
/// plus the constant part.
pub fn alphabeta_to_vector(c: &TransverseModeCoefficients, basis: &PolarizationBasis) -> Result<VectorField> {
    if &c.grid != basis.grid() {
        return Err(CiqError::GridMismatch);
    }
    let g = c.grid;
    let z = g.zero_mode_index();
    let components = std::array::from_fn(|i| {
        let s = alpha_spectrum(&g, |m| {
            if m == z {
                return Complex64::new(c.zero_mode[i], 0.0);
            }
            let neg = g.negated_mode_index(m);
            (0..2)
                .map(|l| {
                    // ε_λ(n) carries α_λ(n); ε_λ(−n) = ±ε_λ(n) carries α_λ(−n)
                    HALF_PLUS * (c.pol[l][m] * basis.eps[l][m][i])
                        + HALF_MINUS * (c.pol[l][neg] * basis.eps[l][neg][i])
                })
                .sum()
        });
        dft_inverse(&s).expect("Hermitian by construction")
    });
    VectorField::new(components)
}

/// `(L³/2) Σ_n (β(n)² + (m² + |k(n)|²) α(n)²)`.
pub fn momentum_hamiltonian_kg(alpha: &ModeCoefficients, beta: &ModeCoefficients, mass: f64) -> Result<f64> {
    if alpha.grid != beta.grid {
        return Err(CiqError::GridMismatch);
    }
    let g = alpha.grid;
    let sum: f64 = g
        .k_squared()
        .iter()
        .zip(alpha.values.iter().zip(&beta.values))
        .map(|(k2, (a, b))| b * b + (mass * mass + k2) * a * a)
        .sum();
    Ok(0.5 * g.volume() * sum)
}

/// `(L³/2) [Σ_{n≠0} Σ_λ (β_λ² + |k|² α_λ²) + |β₀|²]`; the constant mode is pure kinetic.
pub fn momentum_hamiltonian_maxwell(
    alpha: &TransverseModeCoefficients,
    beta: &TransverseModeCoefficients,
) -> Result<f64> {
    if alpha.grid != beta.grid {
        return Err(CiqError::GridMismatch);
    }
    let g = alpha.grid;
    let k2 = g.k_squared();
    let mut sum: f64 = nonzero_modes(&g)
        .map(|m| {
            (0..2)
                .map(|l| beta.pol[l][m].powi(2) + k2[m] * alpha.pol[l][m].powi(2))
                .sum::<f64>()
        })
        .sum();
    sum += beta.zero_mode.iter().map(|b| b * b).sum::<f64>();
    Ok(0.5 * g.volume() * sum)
}

/// Linear functionals `α = S_α ξ`, `β = S_β ξ` on a scenario's phase space.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtractionMaps {
    pub alpha: DMatrix<f64>,
    pub beta: DMatrix<f64>,
}

fn unit_columns(width: usize, mut column: impl FnMut(usize) -> Vec<f64>) -> DMatrix<f64> {
    let cols: Vec<Vec<f64>> = (0..width).map(&mut column).collect();
    let rows = cols.first().map_or(0, Vec::len);
    DMatrix::from_fn(rows, width, |r, c| cols[c][r])
}

/// Maps for the KG ordering `ξ = (φ, π)`.
pub fn kg_extraction_maps(grid: &LatticeGrid) -> ExtractionMaps {
    let n = grid.n_sites();
    let s = unit_columns(n, |x| {
        let mut v = vec![0.0; n];
        v[x] = 1.0;
        scalar_to_alpha(&ScalarField::new(*grid, v).expect("finite")).values
    });
    let mut alpha = DMatrix::zeros(n, 2 * n);
    let mut beta = DMatrix::zeros(n, 2 * n);
    alpha.view_mut((0, 0), (n, n)).copy_from(&s);
    beta.view_mut((0, n), (n, n)).copy_from(&s);
    ExtractionMaps { alpha, beta }
}

/// Maps for the Maxwell ordering `ξ = (A, π)`, rows in the
/// [`TransverseModeCoefficients::to_flat`] layout.
pub fn maxwell_extraction_maps(grid: &LatticeGrid, basis: &PolarizationBasis) -> ExtractionMaps {
    let n3 = 3 * grid.n_sites();
    let s = unit_columns(n3, |col| {
        let mut v = vec![0.0; n3];
        v[col] = 1.0;
        let field = VectorField::from_flat(*grid, &v).expect("finite");
        extract_transverse(&field, basis).to_flat()
    });
    let rows = s.nrows();
    let mut alpha = DMatrix::zeros(rows, 2 * n3);
    let mut beta = DMatrix::zeros(rows, 2 * n3);
    alpha.view_mut((0, 0), (rows, n3)).copy_from(&s);
    beta.view_mut((0, n3), (rows, n3)).copy_from(&s);
    ExtractionMaps { alpha, beta }
}

/// Brackets among mode coordinates, `S_x Θ S_yᵀ`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeBracketTable {
    pub alpha_alpha: DMatrix<f64>,
    pub alpha_beta: DMatrix<f64>,
    pub beta_beta: DMatrix<f64>,
}

impl ModeBracketTable {
    /// Largest deviation from `{α, β} = sign · I / L³`, `{α, α} = {β, β} = 0`.
    pub fn max_deviation(&self, sign: f64, volume: f64) -> f64 {
        let target = DMatrix::identity(self.alpha_beta.nrows(), self.alpha_beta.ncols()) * (sign / volume);
        (&self.alpha_beta - target)
            .amax()
            .max(self.alpha_alpha.amax())
            .max(self.beta_beta.amax())
    }
}

pub fn bracket_in_modes(theta: &BracketMatrix, maps: &ExtractionMaps) -> Result<ModeBracketTable> {
    let d = theta.dim();
    for s in [&maps.alpha, &maps.beta] {
        if s.ncols() != d {
            return Err(CiqError::DimensionMismatch {
                expected: d.to_string(),
                actual: s.ncols().to_string(),
            });
        }
    }
    let t = &theta.theta;
    Ok(ModeBracketTable {
        alpha_alpha: &maps.alpha * t * maps.alpha.transpose(),
        alpha_beta: &maps.alpha * t * maps.beta.transpose(),
        beta_beta: &maps.beta * t * maps.beta.transpose(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::helmholtz::transverse_project;
    use crate::lattice::spectral_gradient;
    use crate::random::{random_scalar_field, random_vector_field, seeded_rng};
    use std::f64::consts::PI;

    #[test]
    fn alpha_of_constant_and_cosine() {
        let g = LatticeGrid::new(5, 0.5).unwrap();
        let a = scalar_to_alpha(&ScalarField::constant(g, 1.75));
        for (m, v) in a.values.iter().enumerate() {
            let expect = if m == g.zero_mode_index() { 1.75 } else { 0.0 };
            assert!((v - expect).abs() < 1e-14);
        }
        let k0 = g.wavevector([1, 2, 0]);
        let f = ScalarField::from_fn(g, |x| (k0[0] * x[0] + k0[1] * x[1]).cos());
        let a = scalar_to_alpha(&f);
        for (m, v) in a.values.iter().enumerate() {
            let n = g.mode(m);
            let expect = if n == [1, 2, 0] || n == [-1, -2, 0] { 0.5 } else { 0.0 };
            assert!((v - expect).abs() < 1e-14);
        }
    }

    #[test]
    fn alpha_synthesis_edge_cases() {
        let g = LatticeGrid::new(3, 1.0).unwrap();
        let zero = ModeCoefficients { grid: g, values: vec![0.0; 27] };
        assert_eq!(alpha_to_scalar(&zero).max_abs(), 0.0);
        let mut c = zero.clone();
        c.values[g.zero_mode_index()] = -3.0;
        assert!(alpha_to_scalar(&c).max_abs_diff(&ScalarField::constant(g, -3.0)) < 1e-15);
    }

    #[test]
    fn alpha_round_trips() {
        let g = LatticeGrid::new(7, 0.3).unwrap();
        let mut rng = seeded_rng(21);
        let f = random_scalar_field(&g, &mut rng);
        assert!(alpha_to_scalar(&scalar_to_alpha(&f)).max_abs_diff(&f) < 1e-12);
        let a = ModeCoefficients { grid: g, values: crate::random::random_vector(g.n_sites(), &mut rng) };
        let back = scalar_to_alpha(&alpha_to_scalar(&a));
        let err = back.values.iter().zip(&a.values).fold(0.0f64, |m, (x, y)| m.max((x - y).abs()));
        assert!(err < 1e-12);
    }

    #[test]
    fn basis_on_axis_mode() {
        let g = LatticeGrid::new(3, 1.0).unwrap();
        let b = build_polarization_basis(&g);
        let m = g.mode_index([0, 0, 1]);
        assert_eq!(b.eps(0, m), [1.0, 0.0, 0.0]);
        assert_eq!(b.eps(1, m), [0.0, 1.0, 0.0]);
        let e1 = b.eps(0, m);
        let e2 = b.eps(1, m);
        let closure: [[f64; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| e1[i] * e1[j] + e2[i] * e2[j]));
        assert_eq!(closure, [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 0.0]]);
    }

    #[test]
    fn basis_parity_spot_check() {
        let g = LatticeGrid::new(5, 1.0).unwrap();
        let b = build_polarization_basis(&g);
        let p = g.mode_index([1, 2, -1]);
        let q = g.mode_index([-1, -2, 1]);
        assert_eq!(b.eps(0, p), b.eps(0, q));
        assert_eq!(b.eps(1, p), b.eps(1, q).map(|c| -c));
    }

    #[test]
    fn basis_invariants_hold_everywhere() {
        for n in [3, 5, 9] {
            let b = build_polarization_basis(&LatticeGrid::new(n, 0.7).unwrap());
            assert!(check_closure(&b) < 1e-12);
            assert!(check_orthonormality(&b) < 1e-12);
            assert_eq!(check_parity(&b), 0.0);
        }
    }

    #[test]
    fn closure_detects_scaled_polarization() {
        let g = LatticeGrid::new(3, 1.0).unwrap();
        let mut b = build_polarization_basis(&g);
        let m = g.mode_index([0, 0, 1]);
        b.eps[1][m] = b.eps[1][m].map(|c| 1.01 * c);
        let err = check_closure(&b);
        assert!((err - 0.0201).abs() < 1e-12, "{err}");
    }

    #[test]
    fn single_polarization_mode_round_trip() {
        let g = LatticeGrid::new(5, 1.0).unwrap();
        let basis = build_polarization_basis(&g);
        let mut c = TransverseModeCoefficients::zeros(g);
        let k0 = g.mode_index([1, -1, 2]);
        c.pol[0][k0] = 1.0;
        let v = alphabeta_to_vector(&c, &basis).unwrap();
        let back = vector_to_alphabeta(&v, &basis).unwrap();
        for l in 0..2 {
            for m in 0..g.n_sites() {
                let expect = if l == 0 && m == k0 { 1.0 } else { 0.0 };
                assert!((back.pol[l][m] - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn extraction_agrees_for_both_polarizations() {
        // direct reconstruction check of the Re + Im rule for λ = 2
        let g = LatticeGrid::new(5, 1.0).unwrap();
        let basis = build_polarization_basis(&g);
        let mut c = TransverseModeCoefficients::zeros(g);
        let p = g.mode_index([0, 1, 1]);
        let q = g.negated_mode_index(p);
        c.pol[1][p] = 0.8;
        c.pol[1][q] = -0.3;
        let v = alphabeta_to_vector(&c, &basis).unwrap();
        // v should equal the explicit real sum over the ±n pair
        let kp = g.wavevector_at(p);
        let e2 = basis.eps(1, p);
        let comp = |i: usize| {
            ScalarField::from_fn(g, move |x| {
                let th = kp[0] * x[0] + kp[1] * x[1] + kp[2] * x[2];
                // n term: α(n) ε(n) (cos − sin); −n term: α(−n) (−ε(n)) (cos + sin)
                0.8 * e2[i] * (th.cos() - th.sin()) - 0.3 * (-e2[i]) * (th.cos() + th.sin())
            })
        };
        let expect = VectorField::new([comp(0), comp(1), comp(2)]).unwrap();
        assert!(v.max_abs_diff(&expect) < 1e-12);
        let back = vector_to_alphabeta(&v, &basis).unwrap();
        assert!((back.pol[1][p] - 0.8).abs() < 1e-12);
        assert!((back.pol[1][q] + 0.3).abs() < 1e-12);
    }

    #[test]
    fn random_transverse_field_round_trip() {
        let g = LatticeGrid::new(5, 0.9).unwrap();
        let basis = build_polarization_basis(&g);
        let v = transverse_project(&random_vector_field(&g, &mut seeded_rng(22)));
        let c = vector_to_alphabeta(&v, &basis).unwrap();
        assert!(alphabeta_to_vector(&c, &basis).unwrap().max_abs_diff(&v) < 1e-11);
    }

    #[test]
    fn longitudinal_input_is_rejected() {
        let g = LatticeGrid::new(5, 1.0).unwrap();
        let basis = build_polarization_basis(&g);
        let v = spectral_gradient(&random_scalar_field(&g, &mut seeded_rng(23)));
        assert!(matches!(vector_to_alphabeta(&v, &basis), Err(CiqError::NotTransverse { .. })));
    }

    #[test]
    fn kg_momentum_hamiltonian_of_constant_mode() {
        let g = LatticeGrid::new(3, 0.4).unwrap();
        let zero = ModeCoefficients { grid: g, values: vec![0.0; 27] };
        assert_eq!(momentum_hamiltonian_kg(&zero, &zero, 1.0).unwrap(), 0.0);
        let mut a = zero.clone();
        a.values[g.zero_mode_index()] = 2.0;
        let h = momentum_hamiltonian_kg(&a, &zero, 1.0).unwrap();
        let expect = g.volume() * 4.0 / 2.0;
        assert!((h - expect).abs() < 1e-14 * expect);
        // position side: a³ Σ_x m² c² / 2
        let pos = g.cell_volume() * 27.0 * 4.0 / 2.0;
        assert!((h - pos).abs() < 1e-12 * pos);
    }

    #[test]
    fn maxwell_zero_mode_energy_is_kinetic() {
        let g = LatticeGrid::new(3, 1.5).unwrap();
        let zero = TransverseModeCoefficients::zeros(g);
        assert_eq!(momentum_hamiltonian_maxwell(&zero, &zero).unwrap(), 0.0);
        let mut beta = zero.clone();
        beta.zero_mode = [0.3, 0.0, -0.4];
        let mut alpha = zero.clone();
        alpha.zero_mode = [5.0, 1.0, 2.0];
        let h = momentum_hamiltonian_maxwell(&alpha, &beta).unwrap();
        assert!((h - g.volume() * 0.25 / 2.0).abs() < 1e-14);
    }

    #[test]
    fn axis_mode_extraction_uses_expected_polarizations() {
        let g = LatticeGrid::new(3, 1.0).unwrap();
        let basis = build_polarization_basis(&g);
        let kz = 2.0 * PI / g.box_length();
        let vx = ScalarField::from_fn(g, |x| (kz * x[2]).cos());
        let v = VectorField::new([vx, ScalarField::zeros(g), ScalarField::zeros(g)]).unwrap();
        let c = vector_to_alphabeta(&v, &basis).unwrap();
        let p = g.mode_index([0, 0, 1]);
        let q = g.mode_index([0, 0, -1]);
        assert!((c.pol[0][p] - 0.5).abs() < 1e-14);
        assert!((c.pol[0][q] - 0.5).abs() < 1e-14);
        assert!(c.pol[1].iter().all(|v| v.abs() < 1e-14));
    }
}
