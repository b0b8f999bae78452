//! Bisection on the entanglement boundary in the detector separation.

use fuzzpair_core::fermi::{fuzzy_correlations, ideal_f};
use fuzzpair_core::specfun::QuadratureConfig;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThresholdModel {
    FermiIdeal,
    FermiFuzzy,
}

const BISECT_TOL: f64 = 1e-8;
const SCAN_POINTS: usize = 512;

/// Separation `d*` where the state stops being entangled: the root of
/// `F² = ½` for ideal detectors, of `g = f/2` for Gaussian ones. The
/// boundary is bracketed by scanning `[0, d_max]` and then bisected to
/// 1e-8.
pub fn find_threshold(
    model: ThresholdModel,
    pf: f64,
    sigma: f64,
    d_max: f64,
    quad: &QuadratureConfig,
) -> Result<f64, CliError> {
    if !(pf > 0.0 && pf.is_finite()) {
        return Err(CliError::InvalidSpec(format!(
            "p_f must be positive, got {pf}"
        )));
    }
    if !(d_max > 0.0 && d_max.is_finite()) {
        return Err(CliError::InvalidSpec(format!(
            "d_max must be positive, got {d_max}"
        )));
    }

    let boundary: Box<dyn Fn(f64) -> Result<f64, CliError>> = match model {
        ThresholdModel::FermiIdeal => Box::new(move |d| Ok(ideal_f(pf, d).powi(2) - 0.5)),
        ThresholdModel::FermiFuzzy => {
            if !(sigma > 0.0 && sigma.is_finite()) {
                return Err(CliError::InvalidSpec(format!(
                    "sigma must be positive, got {sigma}"
                )));
            }
            let quad = *quad;
            Box::new(move |d| {
                let (f, g) = fuzzy_correlations(pf, sigma, d, &quad)?;
                Ok(g - f / 2.0)
            })
        }
    };

    // entangled at contact, so scan outward for the first sign change
    let mut lo = 0.0f64;
    let mut f_lo = boundary(lo)?;
    if f_lo <= 0.0 {
        return Err(CliError::NoBracket { d_max });
    }
    let mut hi = None;
    for i in 1..=SCAN_POINTS {
        let d = d_max * i as f64 / SCAN_POINTS as f64;
        let v = boundary(d)?;
        if v <= 0.0 {
            hi = Some(d);
            break;
        }
        lo = d;
        f_lo = v;
    }
    let mut hi = hi.ok_or(CliError::NoBracket { d_max })?;

    while hi - lo > BISECT_TOL {
        let mid = 0.5 * (lo + hi);
        let v = boundary(mid)?;
        if v.signum() == f_lo.signum() {
            lo = mid;
            f_lo = v;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
