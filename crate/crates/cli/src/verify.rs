//! Verification suites: each one compares an independent oracle against
//! the closed forms over a parameter grid and reports the worst
//! deviation.

use fuzzpair_core::boson::{hom_state, BosonScenario};
use fuzzpair_core::fermi::{
    fuzzy_correlations, fuzzy_negativity_closed, fuzzy_pair_state, g_erf_difference,
    ideal_pair_state, DetectorProfile,
};
use fuzzpair_core::oracle::{
    boson_brute_state, crossing_term, fock_fermi_state, wick_fermi_state, DiscretizedFermiSea,
    Geometry,
};
use fuzzpair_core::qmat::{max_entry_distance, negativity};
use fuzzpair_core::specfun::QuadratureConfig;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    /// Wick oracle vs analytic states, both geometries.
    Wick,
    /// Explicit Fock simulation vs the Wick oracle on tiny instances.
    Fock,
    /// Binned interferometer vs the closed-form HOM state.
    Boson,
    /// Quadrature path vs erf-difference path for `g` at moderate `d/σ`.
    Cancellation,
    /// Closed-form vs eigen-based negativity on a (σ, d) grid.
    Negativity,
    /// Exclusion-principle crossing terms vanish.
    Crossing,
}

impl std::str::FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "wick" => Ok(Suite::Wick),
            "fock" => Ok(Suite::Fock),
            "boson" => Ok(Suite::Boson),
            "cancellation" => Ok(Suite::Cancellation),
            "negativity" => Ok(Suite::Negativity),
            "crossing" => Ok(Suite::Crossing),
            other => Err(format!(
                "unknown suite {other:?}, expected wick|fock|boson|cancellation|negativity|crossing"
            )),
        }
    }
}

impl Suite {
    pub fn name(&self) -> &'static str {
        match self {
            Suite::Wick => "wick",
            Suite::Fock => "fock",
            Suite::Boson => "boson",
            Suite::Cancellation => "cancellation",
            Suite::Negativity => "negativity",
            Suite::Crossing => "crossing",
        }
    }

    pub fn default_tolerance(&self) -> f64 {
        match self {
            Suite::Wick => 1e-4,
            Suite::Fock => 1e-12,
            Suite::Boson => 1e-4,
            Suite::Cancellation => 1e-8,
            Suite::Negativity => 1e-10,
            Suite::Crossing => 1e-12,
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub suite: &'static str,
    pub cases: usize,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl std::fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "suite: {}", self.suite)?;
        writeln!(f, "cases: {}", self.cases)?;
        writeln!(f, "max deviation: {:e}", self.max_deviation)?;
        writeln!(f, "tolerance: {:e}", self.tolerance)?;
        write!(f, "pass: {}", self.pass)
    }
}

pub struct VerifyOptions {
    pub modes: usize,
    pub bins: usize,
    pub tolerance: Option<f64>,
    pub quad: QuadratureConfig,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            modes: 512,
            bins: 128,
            tolerance: None,
            quad: QuadratureConfig::default(),
        }
    }
}

const D_GRID: [f64; 8] = [0.0, 0.5, 1.0, 1.81, 2.5, 3.7, 5.0, 8.0];
const SIGMA_GRID: [f64; 3] = [0.5, 1.0, 2.0];

pub fn verify(suite: Suite, opts: &VerifyOptions) -> Result<VerifyReport, CliError> {
    let mut cases = 0usize;
    let mut max_dev = 0.0f64;
    let mut track = |dev: f64| {
        cases += 1;
        if dev > max_dev {
            max_dev = dev;
        }
    };

    match suite {
        Suite::Wick => {
            let radial = DiscretizedFermiSea::midpoint(1.0, opts.modes, Geometry::ThreeDRadial)?;
            for &d in &D_GRID {
                let brute = wick_fermi_state(&radial, d, &DetectorProfile::Ideal)?;
                let closed = ideal_pair_state(1.0, d);
                track(max_entry_distance(brute.entries(), closed.entries()));
            }
            let one_d = DiscretizedFermiSea::midpoint(1.0, opts.modes, Geometry::OneD)?;
            for &sigma in &SIGMA_GRID {
                let profile = DetectorProfile::Gaussian { sigma };
                for &d in &D_GRID {
                    let brute = wick_fermi_state(&one_d, d, &profile)?;
                    let closed = fuzzy_pair_state(1.0, sigma, d, &opts.quad)?;
                    track(max_entry_distance(brute.entries(), closed.entries()));
                }
            }
        }
        Suite::Fock => {
            let modes = opts.modes.clamp(1, 5);
            let sea = DiscretizedFermiSea::midpoint(1.0, modes, Geometry::OneD)?;
            for profile in [
                DetectorProfile::Ideal,
                DetectorProfile::Gaussian { sigma: 1.0 },
            ] {
                for &d in &[0.0, 0.7, 1.5, 2.3] {
                    let fock = fock_fermi_state(modes, 1.0, d, &profile)?;
                    let wick = wick_fermi_state(&sea, d, &profile)?;
                    track(max_entry_distance(fock.entries(), wick.entries()));
                }
            }
        }
        Suite::Boson => {
            for &sigma in &[1.0, 2.0] {
                for &st in &[0.0, 0.25, 0.5, 1.0, 2.0] {
                    let tau = st / sigma;
                    let brute = boson_brute_state(&BosonScenario::hom(sigma, tau), opts.bins)?;
                    let closed = hom_state(sigma, tau);
                    track(max_entry_distance(brute.entries(), closed.entries()));
                }
            }
        }
        Suite::Cancellation => {
            for &sigma in &SIGMA_GRID {
                for k in 0..=16 {
                    let d = sigma * 4.0 * k as f64 / 16.0;
                    let (_, g) = fuzzy_correlations(1.0, sigma, d, &opts.quad)?;
                    let g_ref = g_erf_difference(1.0, sigma, d);
                    track((g - g_ref).abs() / g.max(1e-300));
                }
            }
        }
        Suite::Negativity => {
            for i in 0..50 {
                let sigma = 0.25 + (4.0 - 0.25) * i as f64 / 49.0;
                for j in 0..50 {
                    let d = 10.0 * j as f64 / 49.0;
                    let closed = fuzzy_negativity_closed(1.0, sigma, d, &opts.quad)?;
                    let state = fuzzy_pair_state(1.0, sigma, d, &opts.quad)?;
                    let eigen = negativity(&state)?.negativity_eigen;
                    track((closed - eigen).abs());
                }
            }
        }
        Suite::Crossing => {
            for &modes in &[64usize, 128] {
                for geometry in [Geometry::OneD, Geometry::ThreeDRadial] {
                    let sea = DiscretizedFermiSea::midpoint(1.0, modes, geometry)?;
                    for profile in [
                        DetectorProfile::Ideal,
                        DetectorProfile::Gaussian { sigma: 0.8 },
                    ] {
                        for &d in &[0.0, 1.0, 3.7] {
                            track(crossing_term(&sea, d, &profile).norm());
                        }
                    }
                }
            }
        }
    }

    let tolerance = opts.tolerance.unwrap_or_else(|| suite.default_tolerance());
    Ok(VerifyReport {
        suite: suite.name(),
        cases,
        max_deviation: max_dev,
        tolerance,
        pass: max_dev <= tolerance,
    })
}
