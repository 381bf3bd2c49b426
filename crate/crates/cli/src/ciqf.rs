//! CIQF: a flat little-endian container for one scalar or vector lattice field.
//!
//! | offset | size | content                                   |
//! |-------:|-----:|-------------------------------------------|
//! | 0      | 4    | magic `b"CIQF"`                           |
//! | 4      | 4    | `u32` version, always 1                   |
//! | 8      | 4    | `u32` n_points (odd, ≥ 3)                 |
//! | 12     | 8    | `f64` spacing                             |
//! | 20     | 4    | `u32` n_components (1 or 3)               |
//! | 24     | …    | `n_components · n_points³` `f64` values   |
//!
//! Values are component-major; within a component sites run x₁-fastest.

use std::fs;
use std::path::Path;

use ciq_core::{LatticeGrid, ScalarField, VectorField};

use crate::error::{CliError, Result};

pub const MAGIC: [u8; 4] = *b"CIQF";
pub const VERSION: u32 = 1;
pub const HEADER_LEN: usize = 24;

const OFF_VERSION: usize = 4;
const OFF_N: usize = 8;
const OFF_SPACING: usize = 12;
pub const OFF_COMPONENTS: usize = 20;

#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Scalar(ScalarField),
    Vector(VectorField),
}

impl Field {
    pub fn grid(&self) -> &LatticeGrid {
        match self {
            Field::Scalar(f) => f.grid(),
            Field::Vector(v) => v.grid(),
        }
    }

    pub fn n_components(&self) -> usize {
        match self {
            Field::Scalar(_) => 1,
            Field::Vector(_) => 3,
        }
    }
}

impl From<ScalarField> for Field {
    fn from(f: ScalarField) -> Self {
        Field::Scalar(f)
    }
}

impl From<VectorField> for Field {
    fn from(v: VectorField) -> Self {
        Field::Vector(v)
    }
}

/// Size in bytes of a file holding `n_components` fields on an `n_points`³ grid.
pub fn encoded_len(n_points: usize, n_components: usize) -> usize {
    HEADER_LEN + 8 * n_components * n_points.pow(3)
}

pub fn encode(field: &Field) -> Vec<u8> {
    let grid = field.grid();
    let n = grid.n_points();
    let mut out = Vec::with_capacity(encoded_len(n, field.n_components()));
    out.extend_from_slice(&MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    out.extend_from_slice(&(n as u32).to_le_bytes());
    out.extend_from_slice(&grid.spacing().to_le_bytes());
    out.extend_from_slice(&(field.n_components() as u32).to_le_bytes());
    let mut push = |vals: &[f64]| vals.iter().for_each(|v| out.extend_from_slice(&v.to_le_bytes()));
    match field {
        Field::Scalar(f) => push(f.values()),
        Field::Vector(v) => v.components().iter().for_each(|c| push(c.values())),
    }
    out
}

fn read_u32(bytes: &[u8], off: usize) -> Result<u32> {
    bytes
        .get(off..off + 4)
        .map(|b| u32::from_le_bytes(b.try_into().unwrap()))
        .ok_or_else(|| CliError::format(bytes.len(), "truncated header"))
}

fn read_f64(bytes: &[u8], off: usize) -> Result<f64> {
    bytes
        .get(off..off + 8)
        .map(|b| f64::from_le_bytes(b.try_into().unwrap()))
        .ok_or_else(|| CliError::format(bytes.len(), "truncated header"))
}

pub fn decode(bytes: &[u8]) -> Result<Field> {
    match bytes.get(..4) {
        Some(m) if m == MAGIC => {}
        Some(_) => return Err(CliError::format(0, "bad magic, expected \"CIQF\"")),
        None => return Err(CliError::format(0, "file shorter than the magic number")),
    }
    let version = read_u32(bytes, OFF_VERSION)?;
    if version != VERSION {
        return Err(CliError::format(OFF_VERSION, format!("unsupported version {version}")));
    }
    let n = read_u32(bytes, OFF_N)? as usize;
    if n < 3 || n.is_multiple_of(2) {
        return Err(CliError::format(OFF_N, format!("n_points must be odd and at least 3, got {n}")));
    }
    let spacing = read_f64(bytes, OFF_SPACING)?;
    let grid = LatticeGrid::new(n, spacing).map_err(|e| CliError::format(OFF_SPACING, e.to_string()))?;
    let n_comp = read_u32(bytes, OFF_COMPONENTS)? as usize;
    if n_comp != 1 && n_comp != 3 {
        return Err(CliError::format(OFF_COMPONENTS, format!("n_components must be 1 or 3, got {n_comp}")));
    }

    let expected = encoded_len(n, n_comp);
    if bytes.len() < expected {
        return Err(CliError::format(
            bytes.len(),
            format!("truncated payload: expected {expected} bytes, found {}", bytes.len()),
        ));
    }
    if bytes.len() > expected {
        return Err(CliError::format(expected, format!("{} trailing bytes", bytes.len() - expected)));
    }

    let sites = grid.n_sites();
    let component = |c: usize| -> Result<ScalarField> {
        let start = HEADER_LEN + 8 * c * sites;
        let values: Vec<f64> = bytes[start..start + 8 * sites]
            .chunks_exact(8)
            .map(|b| f64::from_le_bytes(b.try_into().unwrap()))
            .collect();
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(CliError::format(start + 8 * i, "non-finite value"));
        }
        Ok(ScalarField::new(grid, values)?)
    };
    if n_comp == 1 {
        Ok(Field::Scalar(component(0)?))
    } else {
        Ok(Field::Vector(VectorField::new([component(0)?, component(1)?, component(2)?])?))
    }
}

pub fn write_field_file(path: impl AsRef<Path>, field: &Field) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, encode(field)).map_err(|e| CliError::io(path, e))
}

pub fn read_field_file(path: impl AsRef<Path>) -> Result<Field> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| CliError::io(path, e))?;
    decode(&bytes)
}
