use std::path::Path;
use std::time::Instant;

use ciq_core::momentum::{check_orthonormality, kg_extraction_maps, maxwell_extraction_maps};
use ciq_core::random::{random_scalar_field, random_vector_field, seeded_rng, FieldRng};
use ciq_core::solver::max_energy_drift;
use ciq_core::*;
use nalgebra::DVector;

use crate::ciqf::{read_field_file, write_field_file, Field, OFF_COMPONENTS};
use crate::config::{RunConfig, Scenario};
use crate::error::{CliError, Result};
use crate::report::VerificationReport;

pub const CONSTRAINT_TOL: f64 = 1e-10;
pub const HAMILTONIAN_TOL: f64 = 1e-10;
pub const ENERGY_TOL: f64 = 1e-10;
pub const CLOSURE_TOL: f64 = 1e-12;

/// Runs the full bracket pipeline for one scenario and writes the report if an
/// output path is configured. Solver failures end up in `report.error`.
pub fn run_verify(cfg: &RunConfig) -> Result<VerificationReport> {
    let warnings = cfg.validate()?;
    let start = Instant::now();
    let mut report = VerificationReport::new("verify", serde_json::to_value(cfg)?);
    report.warnings = warnings;
    if let Err(e) = verify_into(cfg, &mut report) {
        report.error = Some(e.to_string());
    }
    report.finalize(start.elapsed().as_millis() as u64);
    if let Some(path) = &cfg.output_path {
        report.write(path)?;
    }
    Ok(report)
}

fn verify_into(cfg: &RunConfig, report: &mut VerificationReport) -> Result<(), CiqError> {
    let grid = LatticeGrid::new(cfg.n_points, cfg.spacing)?;
    let tol = cfg.tolerance;
    let mut rng = seeded_rng(cfg.seed);

    let (sys, expected, bracket_tol, sign) = match cfg.scenario {
        Scenario::Kg => {
            let s = KgScenario::new(grid, cfg.effective_mass())?;
            (build_kg_system(&s), expected_kg_bracket(&grid), tol / grid.cell_volume(), 1.0)
        }
        Scenario::Maxwell => {
            let s = MaxwellScenario::new(grid);
            (build_maxwell_system(&s), expected_maxwell_bracket(&grid), 10.0 * tol / grid.cell_volume(), -1.0)
        }
    };

    let br = solve_brackets(&sys)?;
    report.record("bracket_max_err", compare_brackets(&br.theta, &expected)?, bracket_tol);
    report.record("antisymmetry_residual", br.residuals.antisymmetry, tol);
    report.record("hamilton_residual", br.residuals.hamilton, tol);
    report.record("constraint_residual", br.residuals.constraint, CONSTRAINT_TOL);

    let cov = verify_time_covariance(&sys, &br, &cfg.covariance_times, cfg.trials, &mut rng)?;
    report.record("covariance_residual", cov, tol);
    let drift = max_energy_drift(&sys, &br.basis, &cfg.covariance_times, cfg.trials, &mut rng);
    report.record("energy_drift", drift, ENERGY_TOL);

    let (maps, ham_err) = match cfg.scenario {
        Scenario::Kg => (
            kg_extraction_maps(&grid),
            kg_hamiltonian_rel_err(&sys, &grid, cfg.effective_mass(), cfg.trials, &mut rng)?,
        ),
        Scenario::Maxwell => {
            let basis = build_polarization_basis(&grid);
            report.record("closure_max_err", check_closure(&basis), CLOSURE_TOL);
            (
                maxwell_extraction_maps(&grid, &basis),
                maxwell_hamiltonian_rel_err(&sys, &basis, cfg.trials, &mut rng)?,
            )
        }
    };
    let table = bracket_in_modes(&br, &maps)?;
    report.record("mode_bracket_max_err", table.max_deviation(sign, grid.volume()), tol);
    report.record("hamiltonian_rel_err", ham_err, HAMILTONIAN_TOL);
    Ok(())
}

fn rel_err(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

/// Largest relative gap between `½ξᵀMξ` and the mode-space energy for random
/// scalar configurations on `grid`.
pub fn kg_hamiltonian_rel_err(
    sys: &QuadraticSystem,
    grid: &LatticeGrid,
    mass: f64,
    trials: usize,
    rng: &mut FieldRng,
) -> Result<f64, CiqError> {
    if sys.dim() != 2 * grid.n_sites() {
        return Err(CiqError::DimensionMismatch {
            expected: (2 * grid.n_sites()).to_string(),
            actual: sys.dim().to_string(),
        });
    }
    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        let phi = random_scalar_field(grid, rng);
        let pi = random_scalar_field(grid, rng);
        let xi = DVector::from_iterator(sys.dim(), phi.values().iter().chain(pi.values()).copied());
        let pos = hamiltonian_value(sys, &xi);
        let mom = momentum_hamiltonian_kg(&scalar_to_alpha(&phi), &scalar_to_alpha(&pi), mass)?;
        worst = worst.max(rel_err(pos, mom));
    }
    Ok(worst)
}

/// Same comparison for transverse gauge-field configurations.
pub fn maxwell_hamiltonian_rel_err(
    sys: &QuadraticSystem,
    basis: &PolarizationBasis,
    trials: usize,
    rng: &mut FieldRng,
) -> Result<f64, CiqError> {
    let grid = *basis.grid();
    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        let a = transverse_project(&random_vector_field(&grid, rng));
        let p = transverse_project(&random_vector_field(&grid, rng));
        let mut flat = a.to_flat();
        flat.extend(p.to_flat());
        if flat.len() != sys.dim() {
            return Err(CiqError::DimensionMismatch {
                expected: sys.dim().to_string(),
                actual: flat.len().to_string(),
            });
        }
        let pos = hamiltonian_value(sys, &DVector::from_vec(flat));
        let mom = momentum_hamiltonian_maxwell(&vector_to_alphabeta(&a, basis)?, &vector_to_alphabeta(&p, basis)?)?;
        worst = worst.max(rel_err(pos, mom));
    }
    Ok(worst)
}

/// Splits a 3-component field file into its transverse and longitudinal parts.
pub fn run_decompose(input: &Path, transverse_out: &Path, longitudinal_out: &Path) -> Result<()> {
    let v = match read_field_file(input)? {
        Field::Vector(v) => v,
        Field::Scalar(_) => {
            return Err(CliError::format(OFF_COMPONENTS, "decompose needs a 3-component field"));
        }
    };
    write_field_file(transverse_out, &Field::Vector(transverse_project(&v)))?;
    write_field_file(longitudinal_out, &Field::Vector(longitudinal_project(&v)))?;
    Ok(())
}

/// Closure, orthonormality and parity of the polarization basis on an `n_points`³ grid.
pub fn run_basis_check(n_points: usize, output: Option<&Path>) -> Result<VerificationReport> {
    if n_points.is_multiple_of(2) {
        return Err(CliError::Usage("n_points must be odd".into()));
    }
    let grid = LatticeGrid::new(n_points, 1.0).map_err(|e| CliError::Usage(e.to_string()))?;
    let start = Instant::now();
    let mut report = VerificationReport::new("basis", serde_json::json!({ "n_points": n_points }));
    let basis = build_polarization_basis(&grid);
    report.record("closure_max_err", check_closure(&basis), CLOSURE_TOL);
    report.record("orthonormality_max_err", check_orthonormality(&basis), CLOSURE_TOL);
    report.record("parity_max_err", check_parity(&basis), 0.0);
    report.finalize(start.elapsed().as_millis() as u64);
    if let Some(path) = output {
        report.write(path)?;
    }
    Ok(report)
}
