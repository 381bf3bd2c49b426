//! Periodic cubic lattice, real scalar/vector fields on it, and the discrete
//! Fourier machinery every other module builds on.
//!
//! Conventions used throughout the crate:
//!
//! * sites `s = (s1, s2, s3)`, `0 <= si < N`, linearized as `s1 + N (s2 + N s3)`;
//! * modes `n = (n1, n2, n3)`, `-h <= ni <= h` with `h = (N - 1) / 2`, linearized
//!   the same way after shifting each index by `+h`;
//! * wavevector `k(n) = 2 pi n / L` with box length `L = N * spacing`;
//! * analysis `f^(n) = N^-3 sum_x f(x) exp(-i k.x)` and synthesis
//!   `f(x) = sum_n f^(n) exp(+i k.x)`, i.e. the synthesis carries no prefactor.
//!
//! `N` is odd, so the mode set is closed under negation and `k = 0` is the only
//! self-conjugate mode.

use std::f64::consts::PI;
use std::ops::{Add, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};

use crate::error::{CiqError, Result};

/// Integer mode label `n`.
pub type Mode = [i64; 3];

/// Relative tolerance of the reality check performed by [`dft_inverse`].
pub const REALITY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeGrid {
    n_points: usize,
    spacing: f64,
}

impl LatticeGrid {
    pub fn new(n_points: usize, spacing: f64) -> Result<Self> {
        if n_points < 3 {
            return Err(CiqError::InvalidGrid(format!(
                "n_points must be at least 3, got {n_points}"
            )));
        }
        if n_points.is_multiple_of(2) {
            return Err(CiqError::InvalidGrid(format!(
                "n_points must be odd, got {n_points}"
            )));
        }
        if !(spacing.is_finite() && spacing > 0.0) {
            return Err(CiqError::InvalidGrid(format!(
                "spacing must be positive and finite, got {spacing}"
            )));
        }
        Ok(Self { n_points, spacing })
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn box_length(&self) -> f64 {
        self.n_points as f64 * self.spacing
    }

    /// Box volume `L^3`.
    pub fn volume(&self) -> f64 {
        self.box_length().powi(3)
    }

    /// Volume of one lattice cell, `spacing^3`.
    pub fn cell_volume(&self) -> f64 {
        self.spacing.powi(3)
    }

    /// Number of sites (and of modes), `N^3`.
    pub fn n_sites(&self) -> usize {
        self.n_points.pow(3)
    }

    /// Largest mode index `h = (N - 1) / 2`.
    pub fn half(&self) -> i64 {
        (self.n_points as i64 - 1) / 2
    }

    pub fn site_index(&self, s: [usize; 3]) -> usize {
        let n = self.n_points;
        debug_assert!(s.iter().all(|&c| c < n));
        s[0] + n * (s[1] + n * s[2])
    }

    pub fn site(&self, index: usize) -> [usize; 3] {
        let n = self.n_points;
        [index % n, (index / n) % n, index / (n * n)]
    }

    /// Site index of an arbitrary integer displacement, wrapped onto the torus.
    pub fn wrap_index(&self, d: [i64; 3]) -> usize {
        let n = self.n_points as i64;
        let w = |c: i64| c.rem_euclid(n) as usize;
        self.site_index([w(d[0]), w(d[1]), w(d[2])])
    }

    pub fn mode_index(&self, mode: Mode) -> usize {
        let h = self.half();
        debug_assert!(mode.iter().all(|c| c.abs() <= h));
        let shifted = mode.map(|c| (c + h) as usize);
        self.site_index(shifted)
    }

    pub fn mode(&self, index: usize) -> Mode {
        let h = self.half();
        self.site(index).map(|c| c as i64 - h)
    }

    /// Index of the mode `-n` given the index of `n`.
    pub fn negated_mode_index(&self, index: usize) -> usize {
        // shifted indices m -> N - 1 - m, so the linear index mirrors
        self.n_sites() - 1 - index
    }

    pub fn zero_mode_index(&self) -> usize {
        self.mode_index([0, 0, 0])
    }

    pub fn wavevector(&self, mode: Mode) -> [f64; 3] {
        let scale = 2.0 * PI / self.box_length();
        mode.map(|c| c as f64 * scale)
    }

    pub fn wavevector_at(&self, index: usize) -> [f64; 3] {
        self.wavevector(self.mode(index))
    }

    /// `|k(n)|^2` for every mode, in mode order.
    pub fn k_squared(&self) -> Vec<f64> {
        (0..self.n_sites())
            .map(|i| {
                let k = self.wavevector_at(i);
                k[0] * k[0] + k[1] * k[1] + k[2] * k[2]
            })
            .collect()
    }

    /// Physical position of a site.
    pub fn position(&self, index: usize) -> [f64; 3] {
        self.site(index).map(|c| c as f64 * self.spacing)
    }

    /// `exp(i k(n).x(s))` computed from exact integer arithmetic on the phase.
    pub fn plane_wave(&self, mode: Mode, site: [i64; 3]) -> Complex64 {
        let n = self.n_points as i64;
        let dot = (mode[0] * site[0] + mode[1] * site[1] + mode[2] * site[2]).rem_euclid(n);
        Complex64::from_polar(1.0, 2.0 * PI * dot as f64 / n as f64)
    }

    fn check_same(&self, other: &LatticeGrid) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(CiqError::GridMismatch)
        }
    }
}

/// Real scalar field, one value per site.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    grid: LatticeGrid,
    values: Vec<f64>,
}

impl ScalarField {
    pub fn new(grid: LatticeGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.n_sites() {
            return Err(CiqError::InvalidField(format!(
                "expected {} values, got {}",
                grid.n_sites(),
                values.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(CiqError::InvalidField(format!(
                "non-finite value at site {i}"
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: LatticeGrid) -> Self {
        Self::constant(grid, 0.0)
    }

    pub fn constant(grid: LatticeGrid, c: f64) -> Self {
        Self {
            grid,
            values: vec![c; grid.n_sites()],
        }
    }

    /// Samples `f` at each site position.
    pub fn from_fn(grid: LatticeGrid, f: impl Fn([f64; 3]) -> f64) -> Self {
        let values = (0..grid.n_sites()).map(|i| f(grid.position(i))).collect();
        Self { grid, values }
    }

    pub fn grid(&self) -> &LatticeGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn max_abs_diff(&self, other: &ScalarField) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    pub fn scale(&self, c: f64) -> ScalarField {
        self.map(|v| c * v)
    }

    fn map(&self, f: impl Fn(f64) -> f64) -> ScalarField {
        ScalarField {
            grid: self.grid,
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    fn zip_with(&self, other: &ScalarField, f: impl Fn(f64, f64) -> f64) -> ScalarField {
        assert_eq!(self.grid, other.grid, "fields on different grids");
        ScalarField {
            grid: self.grid,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }
}

impl Add for &ScalarField {
    type Output = ScalarField;
    fn add(self, rhs: &ScalarField) -> ScalarField {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &ScalarField {
    type Output = ScalarField;
    fn sub(self, rhs: &ScalarField) -> ScalarField {
        self.zip_with(rhs, |a, b| a - b)
    }
}

/// Real 3-vector field: three scalar components on one grid.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorField {
    components: [ScalarField; 3],
}

impl VectorField {
    pub fn new(components: [ScalarField; 3]) -> Result<Self> {
        let g = components[0].grid;
        components[1].grid.check_same(&g)?;
        components[2].grid.check_same(&g)?;
        Ok(Self { components })
    }

    pub fn zeros(grid: LatticeGrid) -> Self {
        Self {
            components: std::array::from_fn(|_| ScalarField::zeros(grid)),
        }
    }

    pub fn constant(grid: LatticeGrid, c: [f64; 3]) -> Self {
        Self {
            components: std::array::from_fn(|i| ScalarField::constant(grid, c[i])),
        }
    }

    /// Builds the field from a component-major flat slice of length `3 N^3`.
    pub fn from_flat(grid: LatticeGrid, flat: &[f64]) -> Result<Self> {
        let n = grid.n_sites();
        if flat.len() != 3 * n {
            return Err(CiqError::InvalidField(format!(
                "expected {} values, got {}",
                3 * n,
                flat.len()
            )));
        }
        let c0 = ScalarField::new(grid, flat[..n].to_vec())?;
        let c1 = ScalarField::new(grid, flat[n..2 * n].to_vec())?;
        let c2 = ScalarField::new(grid, flat[2 * n..].to_vec())?;
        Ok(Self {
            components: [c0, c1, c2],
        })
    }

    /// Component-major flattening, the inverse of [`VectorField::from_flat`].
    pub fn to_flat(&self) -> Vec<f64> {
        self.components
            .iter()
            .flat_map(|c| c.values.iter().copied())
            .collect()
    }

    pub fn grid(&self) -> &LatticeGrid {
        &self.components[0].grid
    }

    pub fn component(&self, i: usize) -> &ScalarField {
        &self.components[i]
    }

    pub fn components(&self) -> &[ScalarField; 3] {
        &self.components
    }

    pub fn into_components(self) -> [ScalarField; 3] {
        self.components
    }

    pub fn max_abs(&self) -> f64 {
        self.components.iter().fold(0.0, |m, c| m.max(c.max_abs()))
    }

    pub fn max_abs_diff(&self, other: &VectorField) -> f64 {
        self.components
            .iter()
            .zip(&other.components)
            .fold(0.0, |m, (a, b)| m.max(a.max_abs_diff(b)))
    }
}

impl Add for &VectorField {
    type Output = VectorField;
    fn add(self, rhs: &VectorField) -> VectorField {
        VectorField {
            components: std::array::from_fn(|i| &self.components[i] + &rhs.components[i]),
        }
    }
}

impl Sub for &VectorField {
    type Output = VectorField;
    fn sub(self, rhs: &VectorField) -> VectorField {
        VectorField {
            components: std::array::from_fn(|i| &self.components[i] - &rhs.components[i]),
        }
    }
}

/// Fourier coefficients indexed by mode (see the module docs for the ordering).
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexSpectrum {
    grid: LatticeGrid,
    coeffs: Vec<Complex64>,
}

impl ComplexSpectrum {
    pub fn new(grid: LatticeGrid, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != grid.n_sites() {
            return Err(CiqError::InvalidField(format!(
                "expected {} coefficients, got {}",
                grid.n_sites(),
                coeffs.len()
            )));
        }
        Ok(Self { grid, coeffs })
    }

    pub fn zeros(grid: LatticeGrid) -> Self {
        Self {
            grid,
            coeffs: vec![Complex64::new(0.0, 0.0); grid.n_sites()],
        }
    }

    pub fn grid(&self) -> &LatticeGrid {
        &self.grid
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub fn get(&self, mode: Mode) -> Complex64 {
        self.coeffs[self.grid.mode_index(mode)]
    }

    pub fn set(&mut self, mode: Mode, value: Complex64) {
        let i = self.grid.mode_index(mode);
        self.coeffs[i] = value;
    }

    /// `max_n |s(-n) - conj(s(n))|`.
    pub fn reality_deviation(&self) -> f64 {
        (0..self.coeffs.len())
            .map(|i| {
                let j = self.grid.negated_mode_index(i);
                (self.coeffs[j] - self.coeffs[i].conj()).norm()
            })
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.norm()))
    }
}

struct Fft3 {
    n: usize,
    plan: std::sync::Arc<dyn Fft<f64>>,
}

impl Fft3 {
    fn new(n: usize, direction: FftDirection) -> Self {
        let plan = FftPlanner::new().plan_fft(n, direction);
        Self { n, plan }
    }

    /// In-place unnormalized 3D transform of an x1-fastest buffer.
    fn process(&self, data: &mut [Complex64]) {
        let n = self.n;
        let mut line = vec![Complex64::new(0.0, 0.0); n];
        let mut scratch = vec![Complex64::new(0.0, 0.0); self.plan.get_inplace_scratch_len()];
        for stride in [1, n, n * n] {
            for base in 0..n * n {
                // enumerate the n^2 lines along the axis with this stride
                let (lo, hi) = (base % stride, base / stride);
                let start = lo + hi * stride * n;
                for (j, v) in line.iter_mut().enumerate() {
                    *v = data[start + j * stride];
                }
                self.plan.process_with_scratch(&mut line, &mut scratch);
                for (j, v) in line.iter().enumerate() {
                    data[start + j * stride] = *v;
                }
            }
        }
    }
}

/// Mode-ordered index of FFT bin `j` along one axis.
fn bin_to_shifted(j: usize, n: usize) -> usize {
    (j + (n - 1) / 2) % n
}

/// FFT-bin order to mode order.
fn reorder_to_modes(grid: &LatticeGrid, bins: &[Complex64]) -> Vec<Complex64> {
    let n = grid.n_points();
    let mut out = vec![Complex64::new(0.0, 0.0); bins.len()];
    for (j, v) in bins.iter().enumerate() {
        let s = grid.site(j);
        out[grid.site_index(s.map(|c| bin_to_shifted(c, n)))] = *v;
    }
    out
}

/// Forward transform `f^(n) = N^-3 sum_x f(x) exp(-i k(n).x)`.
pub fn dft_forward(f: &ScalarField) -> ComplexSpectrum {
    let grid = f.grid;
    let mut buf: Vec<Complex64> = f.values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    Fft3::new(grid.n_points(), FftDirection::Forward).process(&mut buf);
    let norm = 1.0 / grid.n_sites() as f64;
    buf.iter_mut().for_each(|c| *c *= norm);
    ComplexSpectrum {
        grid,
        coeffs: reorder_to_modes(&grid, &buf),
    }
}

/// Complex synthesis `sum_n s(n) exp(+i k(n).x)` without any symmetry check.
pub(crate) fn synthesize(s: &ComplexSpectrum) -> Vec<Complex64> {
    let grid = s.grid;
    let mut buf = reorder_from_modes(&grid, &s.coeffs);
    Fft3::new(grid.n_points(), FftDirection::Inverse).process(&mut buf);
    buf
}

fn reorder_from_modes(grid: &LatticeGrid, modes: &[Complex64]) -> Vec<Complex64> {
    let n = grid.n_points();
    (0..modes.len())
        .map(|j| {
            let s = grid.site(j);
            modes[grid.site_index(s.map(|c| bin_to_shifted(c, n)))]
        })
        .collect()
}

/// Real synthesis for spectra that are Hermitian by construction.
pub(crate) fn synthesize_real(s: &ComplexSpectrum) -> ScalarField {
    ScalarField {
        grid: s.grid,
        values: synthesize(s).iter().map(|c| c.re).collect(),
    }
}

/// Inverse of [`dft_forward`]; rejects spectra that cannot come from a real field.
pub fn dft_inverse(s: &ComplexSpectrum) -> Result<ScalarField> {
    let deviation = s.reality_deviation();
    if deviation > REALITY_TOL * s.max_abs().max(f64::MIN_POSITIVE) {
        return Err(CiqError::SymmetryViolation { deviation });
    }
    Ok(synthesize_real(s))
}

/// Multiplies each mode of `f` by `symbol(k)`; `symbol` must satisfy
/// `symbol(-k) = conj(symbol(k))` so the result stays real.
pub fn apply_symbol(f: &ScalarField, symbol: impl Fn([f64; 3]) -> Complex64) -> ScalarField {
    let mut s = dft_forward(f);
    let grid = s.grid;
    for (i, c) in s.coeffs.iter_mut().enumerate() {
        *c *= symbol(grid.wavevector_at(i));
    }
    synthesize_real(&s)
}

pub fn spectral_laplacian(f: &ScalarField) -> ScalarField {
    apply_symbol(f, |k| {
        Complex64::new(-(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]), 0.0)
    })
}

/// Spectral derivative along `axis`.
pub fn spectral_derivative(f: &ScalarField, axis: usize) -> ScalarField {
    apply_symbol(f, |k| Complex64::new(0.0, k[axis]))
}

pub fn spectral_gradient(f: &ScalarField) -> VectorField {
    let s = dft_forward(f);
    let grid = s.grid;
    let components = std::array::from_fn(|axis| {
        let mut d = s.clone();
        for (i, c) in d.coeffs.iter_mut().enumerate() {
            *c *= Complex64::new(0.0, grid.wavevector_at(i)[axis]);
        }
        synthesize_real(&d)
    });
    VectorField { components }
}

pub fn spectral_divergence(v: &VectorField) -> ScalarField {
    let grid = *v.grid();
    let specs = v.components.each_ref().map(dft_forward);
    let mut out = ComplexSpectrum::zeros(grid);
    for (i, c) in out.coeffs.iter_mut().enumerate() {
        let k = grid.wavevector_at(i);
        *c = (0..3)
            .map(|a| Complex64::new(0.0, k[a]) * specs[a].coeffs[i])
            .sum();
    }
    synthesize_real(&out)
}

pub fn spectral_curl(v: &VectorField) -> VectorField {
    let grid = *v.grid();
    let specs = v.components.each_ref().map(dft_forward);
    let components = std::array::from_fn(|a| {
        let (b, c) = ((a + 1) % 3, (a + 2) % 3);
        let mut out = ComplexSpectrum::zeros(grid);
        for (i, o) in out.coeffs.iter_mut().enumerate() {
            let k = grid.wavevector_at(i);
            // (curl v)_a = d_b v_c - d_c v_b
            *o = Complex64::new(0.0, k[b]) * specs[c].coeffs[i]
                - Complex64::new(0.0, k[c]) * specs[b].coeffs[i];
        }
        synthesize_real(&out)
    });
    VectorField { components }
}

/// Translation-invariant kernel `g(d) = N^-3 sum_n symbol(k(n)) exp(i k.d)`,
/// indexed by wrapped displacement, so that applying the symbol is
/// `(op f)(x) = sum_y g(x - y) f(y)`.
pub fn symbol_kernel(grid: &LatticeGrid, symbol: impl Fn([f64; 3]) -> Complex64) -> Vec<f64> {
    let norm = 1.0 / grid.n_sites() as f64;
    let coeffs = (0..grid.n_sites())
        .map(|i| symbol(grid.wavevector_at(i)) * norm)
        .collect();
    synthesize_real(&ComplexSpectrum {
        grid: *grid,
        coeffs,
    })
    .values
}

/// Dense `N^3 x N^3` site-basis matrix of the operator with the given symbol.
pub fn symbol_matrix(grid: &LatticeGrid, symbol: impl Fn([f64; 3]) -> Complex64) -> DMatrix<f64> {
    circulant(grid, &symbol_kernel(grid, symbol))
}

/// Dense matrix `G[x, y] = kernel(x - y)` of a displacement-indexed kernel.
pub fn circulant(grid: &LatticeGrid, kernel: &[f64]) -> DMatrix<f64> {
    let n = grid.n_sites();
    DMatrix::from_fn(n, n, |x, y| {
        let (sx, sy) = (grid.site(x), grid.site(y));
        let d = [0, 1, 2].map(|a| sx[a] as i64 - sy[a] as i64);
        kernel[grid.wrap_index(d)]
    })
}
