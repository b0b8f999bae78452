//! Parameter sweeps over the fermi and boson models, evaluated by a
//! worker pool with rows kept in deterministic grid order.

use rayon::prelude::*;
use serde::Serialize;

use fuzzpair_core::boson::{
    general_pair_state, hom_negativity, hom_state, BosonScenario, PBSCoefficients,
    SpectralAmplitude, BAND_HALF_WIDTH_SIGMAS,
};
use fuzzpair_core::fermi::{self, negativity_from_correlations, DetectorProfile, FermiScenario};
use fuzzpair_core::qmat::{negativity, TwoQubitState};
use fuzzpair_core::specfun::QuadratureConfig;

use crate::error::CliError;

/// Spectral-amplitude presets reachable from the command line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AmplitudePreset {
    Constant,
    GaussianCorrelated { pump_width: f64, photon_width: f64 },
}

impl AmplitudePreset {
    pub fn build(&self, sigma: f64) -> SpectralAmplitude {
        let w = BAND_HALF_WIDTH_SIGMAS * sigma;
        match *self {
            AmplitudePreset::Constant => SpectralAmplitude::constant((-w, w)),
            AmplitudePreset::GaussianCorrelated {
                pump_width,
                photon_width,
            } => SpectralAmplitude::gaussian_correlated((-w, w), pump_width, photon_width),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SweepModel {
    FermiIdeal,
    FermiFuzzy,
    BosonHom,
    BosonGeneral(AmplitudePreset),
}

impl SweepModel {
    pub fn name(&self) -> &'static str {
        match self {
            SweepModel::FermiIdeal => "fermi-ideal",
            SweepModel::FermiFuzzy => "fermi-fuzzy",
            SweepModel::BosonHom => "boson-hom",
            SweepModel::BosonGeneral(_) => "boson-general",
        }
    }
}

/// One grid definition per parameter; unused parameters stay at the
/// single value 0.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub model: SweepModel,
    pub pf: Vec<f64>,
    pub sigma: Vec<f64>,
    pub d: Vec<f64>,
    pub tau: Vec<f64>,
    pub quad: QuadratureConfig,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), CliError> {
        for (name, grid) in [
            ("pf", &self.pf),
            ("sigma", &self.sigma),
            ("d", &self.d),
            ("tau", &self.tau),
        ] {
            if grid.is_empty() {
                return Err(CliError::InvalidSpec(format!("empty grid for {name}")));
            }
        }
        if self.is_empty() {
            return Err(CliError::InvalidSpec("empty sweep".into()));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.pf.len() * self.sigma.len() * self.d.len() * self.tau.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Grid points in deterministic nested order
    /// (pf, then sigma, then d, then tau innermost).
    fn points(&self) -> Vec<(f64, f64, f64, f64)> {
        let mut out = Vec::with_capacity(self.len());
        for &pf in &self.pf {
            for &sigma in &self.sigma {
                for &d in &self.d {
                    for &tau in &self.tau {
                        out.push((pf, sigma, d, tau));
                    }
                }
            }
        }
        out
    }
}

/// One output row; column order matches the CSV header.
#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub model: &'static str,
    pub p_f: f64,
    pub sigma: f64,
    pub d: f64,
    pub tau: f64,
    pub f: f64,
    pub g: f64,
    pub negativity_closed: f64,
    pub negativity_eigen: f64,
    pub singlet_fraction: f64,
    pub entangled: bool,
}

pub const CSV_HEADER: &str =
    "model,p_f,sigma,d,tau,f,g,negativity_closed,negativity_eigen,singlet_fraction,entangled";

/// Sweep result: rows in grid order; failed points keep their row with
/// NaN numerics and an explanatory message.
#[derive(Debug)]
pub struct SweepOutcome {
    pub rows: Vec<SweepRow>,
    pub errors: Vec<String>,
}

fn evaluate_point(
    model: &SweepModel,
    pf: f64,
    sigma: f64,
    d: f64,
    tau: f64,
    quad: &QuadratureConfig,
) -> Result<SweepRow, fuzzpair_core::Error> {
    let (f, g, closed, state): (f64, f64, f64, TwoQubitState) = match model {
        SweepModel::FermiIdeal => {
            let scenario = FermiScenario {
                p_f: pf,
                d,
                profile: DetectorProfile::Ideal,
            };
            let (big_f, f2, state) = fermi::evaluate(&scenario, quad)?;
            (big_f, f2, negativity_from_correlations(1.0, f2), state)
        }
        SweepModel::FermiFuzzy => {
            let scenario = FermiScenario {
                p_f: pf,
                d,
                profile: DetectorProfile::Gaussian { sigma },
            };
            let (f, g, state) = fermi::evaluate(&scenario, quad)?;
            (f, g, negativity_from_correlations(f, g), state)
        }
        SweepModel::BosonHom => {
            let f = hom_negativity(sigma, tau);
            (f, 0.0, f, hom_state(sigma, tau))
        }
        SweepModel::BosonGeneral(preset) => {
            let scn = BosonScenario {
                tau,
                sigma,
                center: 0.0,
                pbs: PBSCoefficients::ideal(),
                amplitude: preset.build(sigma),
            };
            let state = general_pair_state(&scn, quad)?;
            // ideal PBS: the only negative PT eigenvalue is -|rho_{hh,vv}|
            let coherence = 2.0 * state.entry(0, 3).norm();
            (coherence, 0.0, coherence, state)
        }
    };
    let report = negativity(&state)?;
    Ok(SweepRow {
        model: model.name(),
        p_f: pf,
        sigma,
        d,
        tau,
        f,
        g,
        negativity_closed: closed,
        negativity_eigen: report.negativity_eigen,
        singlet_fraction: report.singlet_fraction,
        entangled: report.ppt_entangled,
    })
}

/// Evaluates the whole grid in parallel; output order is the grid order
/// regardless of the worker count.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepOutcome, CliError> {
    spec.validate()?;
    spec.quad.validate().map_err(CliError::Core)?;

    let points = spec.points();
    let results: Vec<Result<SweepRow, (usize, fuzzpair_core::Error)>> = points
        .par_iter()
        .enumerate()
        .map(|(i, &(pf, sigma, d, tau))| {
            evaluate_point(&spec.model, pf, sigma, d, tau, &spec.quad).map_err(|e| (i, e))
        })
        .collect();

    let mut rows = Vec::with_capacity(points.len());
    let mut errors = Vec::new();
    for (idx, result) in results.into_iter().enumerate() {
        match result {
            Ok(row) => rows.push(row),
            Err((_, e)) => {
                let (pf, sigma, d, tau) = points[idx];
                errors.push(format!(
                    "point (p_f={pf}, sigma={sigma}, d={d}, tau={tau}): {e}"
                ));
                rows.push(SweepRow {
                    model: spec.model.name(),
                    p_f: pf,
                    sigma,
                    d,
                    tau,
                    f: f64::NAN,
                    g: f64::NAN,
                    negativity_closed: f64::NAN,
                    negativity_eigen: f64::NAN,
                    singlet_fraction: f64::NAN,
                    entangled: false,
                });
            }
        }
    }
    Ok(SweepOutcome { rows, errors })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(model: SweepModel) -> SweepSpec {
        SweepSpec {
            model,
            pf: vec![1.0],
            sigma: vec![1.0],
            d: vec![0.0],
            tau: vec![0.0],
            quad: QuadratureConfig::default(),
        }
    }

    #[test]
    fn fermi_ideal_rows_flag_entanglement_at_the_threshold() {
        let mut s = spec(SweepModel::FermiIdeal);
        s.d = (0..100).map(|i| 5.0 * i as f64 / 99.0).collect();
        let out = run_sweep(&s).unwrap();
        assert!(out.errors.is_empty());
        assert_eq!(out.rows.len(), 100);
        for row in &out.rows {
            assert_eq!(row.entangled, row.f * row.f > 0.5, "d = {}", row.d);
            assert!((row.negativity_closed - row.negativity_eigen).abs() < 1e-10);
        }
    }

    #[test]
    fn fig1_sweep_has_three_curves_in_grid_order() {
        let mut s = spec(SweepModel::FermiFuzzy);
        s.sigma = vec![1.0, 2.0, 4.0];
        s.d = (0..400).map(|i| 10.0 * i as f64 / 399.0).collect();
        let out = run_sweep(&s).unwrap();
        assert_eq!(out.rows.len(), 1200);
        assert!(out.errors.is_empty());
        // grid order: sigma outer, d inner
        assert_eq!(out.rows[0].sigma, 1.0);
        assert_eq!(out.rows[400].sigma, 2.0);
        assert_eq!(out.rows[800].sigma, 4.0);
        assert!((out.rows[0].negativity_eigen - 1.0).abs() < 1e-12);
        for row in &out.rows {
            assert!(
                (row.negativity_closed - row.negativity_eigen).abs() <= 1e-10,
                "closed/eigen disagree at sigma={} d={}",
                row.sigma,
                row.d
            );
        }
    }

    #[test]
    fn boson_hom_negativity_columns_match_closed_form() {
        let mut s = spec(SweepModel::BosonHom);
        s.tau = (0..300).map(|i| 3.0 * i as f64 / 299.0).collect();
        let out = run_sweep(&s).unwrap();
        for row in &out.rows {
            let expected = (-row.sigma * row.sigma * row.tau * row.tau).exp();
            assert!((row.negativity_eigen - expected).abs() < 1e-12);
            assert_eq!(row.negativity_closed, expected);
        }
    }

    #[test]
    fn boson_general_rows_keep_closed_and_eigen_in_step() {
        let mut s = spec(SweepModel::BosonGeneral(AmplitudePreset::Constant));
        s.tau = vec![0.0, 0.5, 1.0];
        let out = run_sweep(&s).unwrap();
        assert!(out.errors.is_empty());
        for row in &out.rows {
            assert!(
                (row.negativity_closed - row.negativity_eigen).abs() <= 1e-10,
                "closed/eigen disagree at tau={}",
                row.tau
            );
        }
    }

    #[test]
    fn failed_points_keep_their_row_and_report() {
        let mut s = spec(SweepModel::FermiFuzzy);
        s.d = vec![0.0, 2000.0];
        s.quad.max_subdivisions = 8;
        let out = run_sweep(&s).unwrap();
        assert_eq!(out.rows.len(), 2);
        assert_eq!(out.errors.len(), 1);
        assert!(out.rows[1].f.is_nan());
        assert!(!out.rows[0].f.is_nan());
    }

    #[test]
    fn empty_grids_are_rejected() {
        let mut s = spec(SweepModel::FermiIdeal);
        s.d = vec![];
        assert!(matches!(run_sweep(&s), Err(CliError::InvalidSpec(_))));
    }
}
