//! Transverse/longitudinal splitting of lattice vector fields and the discrete
//! transverse delta kernel.
//!
//! Per mode the transverse projector is `T(k) = I - k k^T / |k|^2`; at `k = 0`
//! it is the identity, because a constant vector field on the torus is both
//! divergence- and curl-free and is assigned to the transverse part. With
//! that convention `P_perp + P_par = I` holds exactly and `div P_perp v = 0`
//! holds literally.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::lattice::{dft_forward, synthesize_real, symbol_kernel, ComplexSpectrum, LatticeGrid, VectorField};

pub type Mat3 = [[f64; 3]; 3];

/// `T(k)`, with `T(0) = I`.
pub fn transverse_symbol(k: [f64; 3]) -> Mat3 {
    let k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let delta = if i == j { 1.0 } else { 0.0 };
            if k2 == 0.0 {
                delta
            } else {
                delta - k[i] * k[j] / k2
            }
        })
    })
}

/// `k k^T / |k|^2`, zero at `k = 0`.
pub fn longitudinal_symbol(k: [f64; 3]) -> Mat3 {
    let k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
    std::array::from_fn(|i| {
        std::array::from_fn(|j| if k2 == 0.0 { 0.0 } else { k[i] * k[j] / k2 })
    })
}

fn apply_mode_matrix(v: &VectorField, symbol: impl Fn([f64; 3]) -> Mat3) -> VectorField {
    let grid = *v.grid();
    let specs = v.components().each_ref().map(dft_forward);
    let mut out: [ComplexSpectrum; 3] = std::array::from_fn(|_| ComplexSpectrum::zeros(grid));
    for m in 0..grid.n_sites() {
        let t = symbol(grid.wavevector_at(m));
        for (i, o) in out.iter_mut().enumerate() {
            o.coeffs_mut()[m] = (0..3).map(|j| specs[j].coeffs()[m] * t[i][j]).sum::<Complex64>();
        }
    }
    VectorField::new(out.each_ref().map(synthesize_real)).expect("same grid")
}

/// Divergence-free part of `v`.
pub fn transverse_project(v: &VectorField) -> VectorField {
    apply_mode_matrix(v, transverse_symbol)
}

/// Curl-free part of `v`; `transverse_project(v) + longitudinal_project(v) = v`.
pub fn longitudinal_project(v: &VectorField) -> VectorField {
    apply_mode_matrix(v, longitudinal_symbol)
}

/// Displacement-indexed kernel
/// `d_perp_ij(d) = (N^3 a^3)^-1 sum_n T_ij(k(n)) exp(i k(n).d)`.
///
/// Convolving with `a^3 * kernel` reproduces [`transverse_project`], and as
/// `a -> 0, L -> inf` the kernel tends to the continuum transverse delta.
#[derive(Debug, Clone, PartialEq)]
pub struct TransverseKernel {
    grid: LatticeGrid,
    entries: Vec<Mat3>,
}

impl TransverseKernel {
    pub fn grid(&self) -> &LatticeGrid {
        &self.grid
    }

    /// Entry at an integer displacement (wrapped onto the torus).
    pub fn at(&self, d: [i64; 3]) -> Mat3 {
        self.entries[self.grid.wrap_index(d)]
    }

    /// Entries indexed by wrapped displacement, in site order.
    pub fn entries(&self) -> &[Mat3] {
        &self.entries
    }

    /// `a^3 sum_y kernel(x - y) v(y)` by direct summation.
    pub fn convolve(&self, v: &VectorField) -> VectorField {
        let g = self.grid;
        let n = g.n_sites();
        let dv = g.cell_volume();
        let mut out = vec![0.0; 3 * n];
        let src = v.to_flat();
        for x in 0..n {
            let sx = g.site(x);
            for y in 0..n {
                let sy = g.site(y);
                let t = self.at([0, 1, 2].map(|a| sx[a] as i64 - sy[a] as i64));
                for i in 0..3 {
                    out[i * n + x] += dv * (0..3).map(|j| t[i][j] * src[j * n + y]).sum::<f64>();
                }
            }
        }
        VectorField::from_flat(g, &out).expect("finite")
    }

    /// Dense `3N^3 x 3N^3` matrix with rows/columns in component-major order:
    /// entry `(i N^3 + x, j N^3 + y) = kernel_ij(x - y)`.
    pub fn dense(&self) -> DMatrix<f64> {
        let g = self.grid;
        let n = g.n_sites();
        DMatrix::from_fn(3 * n, 3 * n, |r, c| {
            let (i, x) = (r / n, r % n);
            let (j, y) = (c / n, c % n);
            let (sx, sy) = (g.site(x), g.site(y));
            self.at([0, 1, 2].map(|a| sx[a] as i64 - sy[a] as i64))[i][j]
        })
    }
}

pub fn transverse_delta_kernel(grid: &LatticeGrid) -> TransverseKernel {
    let inv_cell = 1.0 / grid.cell_volume();
    let mut entries = vec![[[0.0; 3]; 3]; grid.n_sites()];
    for i in 0..3 {
        for j in i..3 {
            let k_ij = symbol_kernel(grid, |k| Complex64::new(transverse_symbol(k)[i][j], 0.0));
            for (e, v) in entries.iter_mut().zip(k_ij) {
                e[i][j] = v * inv_cell;
                e[j][i] = v * inv_cell;
            }
        }
    }
    TransverseKernel {
        grid: *grid,
        entries,
    }
}
