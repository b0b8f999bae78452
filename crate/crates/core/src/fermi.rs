//! Two-fermion spin states of the zero-temperature free Fermi gas, for
//! ideal (point) and Gaussian position detectors.
//!
//! Ideal detectors use the 3-D spherical correlation
//! `F = 3 j₁(p_f d)/(p_f d)`; Gaussian detectors use the one-sided
//! momentum-window model, with the correlation pair
//! `f = (4/π)|I(0)|²`, `g = (4/π)|I(d)|²` computed by quadrature.
//! The exchange term enters with a minus sign (see
//! [`TwoQubitState::from_exchange_correlations`]): with `g ≥ 0` the
//! partial-transpose spectrum is `{f, f, f, f-2g}` up to normalization
//! and the closed-form negativity `2μ((f-2g)/(4f-2g))` follows.

use num_complex::Complex64;

use crate::error::Error;
use crate::qmat::{
    bell_projector, mat_identity, mat_scale, mat_sub, BasisKind, Bell, TwoQubitState,
};
use crate::specfun::{erf_real, spherical_j1, window_integral, QuadratureConfig};

use std::f64::consts::PI;

/// Detector position response.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DetectorProfile {
    /// Point (delta) response.
    Ideal,
    /// Gaussian response with spread `sigma > 0`.
    Gaussian { sigma: f64 },
}

impl DetectorProfile {
    pub fn validate(&self) -> Result<(), Error> {
        match self {
            DetectorProfile::Ideal => Ok(()),
            DetectorProfile::Gaussian { sigma } => {
                if *sigma > 0.0 && sigma.is_finite() {
                    Ok(())
                } else {
                    Err(Error::OutOfRange {
                        what: "sigma",
                        value: *sigma,
                    })
                }
            }
        }
    }
}

/// A point in parameter space: Fermi momentum, detector separation and
/// detector profile.
#[derive(Debug, Clone, Copy)]
pub struct FermiScenario {
    pub p_f: f64,
    pub d: f64,
    pub profile: DetectorProfile,
}

impl FermiScenario {
    pub fn validate(&self) -> Result<(), Error> {
        if !(self.p_f > 0.0 && self.p_f.is_finite()) {
            return Err(Error::OutOfRange {
                what: "p_f",
                value: self.p_f,
            });
        }
        if !(self.d >= 0.0 && self.d.is_finite()) {
            return Err(Error::OutOfRange {
                what: "d",
                value: self.d,
            });
        }
        self.profile.validate()
    }
}

/// Ideal-detector correlation `F = 3 j₁(p_f d)/(p_f d)`, with `F(0) = 1`
/// by the series limit. `|F| ≤ 1` everywhere.
pub fn ideal_f(p_f: f64, d: f64) -> f64 {
    let x = p_f * d;
    if x.abs() < 1e-2 {
        // series of 3 j₁(x)/x
        let x2 = x * x;
        1.0 - x2 / 10.0 + x2 * x2 / 280.0
    } else {
        3.0 * spherical_j1(x) / x
    }
}

/// Singlet fraction of the ideal pair state, `λ = (1+F²)/(4-2F²)`.
pub fn ideal_singlet_fraction(p_f: f64, d: f64) -> f64 {
    let f2 = ideal_f(p_f, d).powi(2);
    (1.0 + f2) / (4.0 - 2.0 * f2)
}

/// Two-fermion spin state for ideal detectors:
/// `λ·|Ψ−⟩⟨Ψ−| + (1-λ)·(I - |Ψ−⟩⟨Ψ−|)/3`.
pub fn ideal_pair_state(p_f: f64, d: f64) -> TwoQubitState {
    let lambda = ideal_singlet_fraction(p_f, d);
    let singlet = bell_projector(Bell::PsiMinus);
    let triplet_mix = mat_scale(&mat_sub(&mat_identity(), &singlet), 1.0 / 3.0);
    let mut m = mat_scale(&singlet, lambda);
    let t = mat_scale(&triplet_mix, 1.0 - lambda);
    for i in 0..4 {
        for j in 0..4 {
            m[i][j] += t[i][j];
        }
    }
    TwoQubitState::new(&m, BasisKind::Spin).expect("convex Bell mixture is a valid state")
}

/// Symmetry-resolved decomposition of the ideal pair state.
///
/// The antisymmetric-spatial (symmetric-spin) and symmetric-spatial
/// (antisymmetric-spin) detection channels contribute a fixed pair of
/// states; only their weights depend on the separation.
#[derive(Debug, Clone)]
pub struct SymmetryComponents {
    /// `|Ψ−⟩⟨Ψ−|`, the spin-antisymmetric (singlet) component.
    pub rho_asym: TwoQubitState,
    /// `(I - |Ψ−⟩⟨Ψ−|)/3`, the equal triplet mixture.
    pub rho_sym: TwoQubitState,
    pub weight_asym: f64,
    pub weight_sym: f64,
}

impl SymmetryComponents {
    /// `weight_asym·ρ_asym + weight_sym·ρ_sym`.
    pub fn recombine(&self) -> TwoQubitState {
        let mut m = mat_scale(self.rho_asym.entries(), self.weight_asym);
        let s = mat_scale(self.rho_sym.entries(), self.weight_sym);
        for i in 0..4 {
            for j in 0..4 {
                m[i][j] += s[i][j];
            }
        }
        TwoQubitState::new(&m, BasisKind::Spin).expect("convex combination of states")
    }
}

pub fn symmetry_components(p_f: f64, d: f64) -> SymmetryComponents {
    let lambda = ideal_singlet_fraction(p_f, d);
    let singlet = bell_projector(Bell::PsiMinus);
    let triplet_mix = mat_scale(&mat_sub(&mat_identity(), &singlet), 1.0 / 3.0);
    SymmetryComponents {
        rho_asym: TwoQubitState::new(&singlet, BasisKind::Spin).expect("singlet projector"),
        rho_sym: TwoQubitState::new(&triplet_mix, BasisKind::Spin).expect("triplet mixture"),
        weight_asym: lambda,
        weight_sym: 1.0 - lambda,
    }
}

/// Gaussian-detector correlation pair `(f, g)`:
/// `f = (4/π)|I(0)|²`, `g = (4/π)|I(d)|²` by adaptive quadrature.
/// `0 ≤ g ≤ f` up to the quadrature tolerance.
pub fn fuzzy_correlations(
    p_f: f64,
    sigma: f64,
    d: f64,
    cfg: &QuadratureConfig,
) -> Result<(f64, f64), Error> {
    let i0 = window_integral(p_f, sigma, 0.0, cfg)?;
    let id = window_integral(p_f, sigma, d, cfg)?;
    let f = 4.0 / PI * i0.norm_sqr();
    let g = 4.0 / PI * id.norm_sqr();
    Ok((f, g))
}

/// Two-fermion spin state for Gaussian detectors: diagonal
/// `(f-g, f, f, f-g)`, off-diagonal `-g`, trace `4f - 2g`.
pub fn fuzzy_pair_state(
    p_f: f64,
    sigma: f64,
    d: f64,
    cfg: &QuadratureConfig,
) -> Result<TwoQubitState, Error> {
    let (f, g) = fuzzy_correlations(p_f, sigma, d, cfg)?;
    TwoQubitState::from_exchange_correlations(f, g, BasisKind::Spin)
}

/// `μ(x) = -x` for `x < 0`, else `0`.
fn mu(x: f64) -> f64 {
    if x < 0.0 {
        -x
    } else {
        0.0
    }
}

/// Closed-form negativity from a correlation pair:
/// `N = 2μ((f-2g)/(4f-2g))`.
pub fn negativity_from_correlations(f: f64, g: f64) -> f64 {
    2.0 * mu((f - 2.0 * g) / (4.0 * f - 2.0 * g))
}

/// Closed-form negativity of the Gaussian-detector state.
pub fn fuzzy_negativity_closed(
    p_f: f64,
    sigma: f64,
    d: f64,
    cfg: &QuadratureConfig,
) -> Result<f64, Error> {
    let (f, g) = fuzzy_correlations(p_f, sigma, d, cfg)?;
    Ok(negativity_from_correlations(f, g))
}

// Maclaurin series of erf on complex arguments. Alternating, so the
// rounding error grows like exp(|z|²); usable to ~1e-10 for |z|² ≲ 13.
fn erf_maclaurin(z: Complex64) -> Complex64 {
    let z2 = z * z;
    let mut term = z;
    let mut sum = z;
    for n in 1..250 {
        term = -term * z2 / n as f64;
        let contrib = term / (2 * n + 1) as f64;
        sum += contrib;
        if contrib.norm() < 1e-18 * sum.norm() {
            break;
        }
    }
    sum * (2.0 / PI.sqrt())
}

/// Reference evaluation of `g` through the difference of complex error
/// functions:
/// `g = (1/σ²) e^{-d²/2σ²} |erf(σp_f - id/2σ) - erf(-id/2σ)|²`.
///
/// The two erf terms each grow like `exp(d²/4σ²)`, so this form cancels
/// catastrophically for `d/σ` beyond ~10 and overflows well before 50;
/// it exists only as a cross-check of the quadrature path at moderate
/// `d/σ`.
pub fn g_erf_difference(p_f: f64, sigma: f64, d: f64) -> f64 {
    let a = d / (2.0 * sigma);
    let upper = erf_maclaurin(Complex64::new(sigma * p_f, -a));
    let lower = erf_maclaurin(Complex64::new(0.0, -a));
    let diff = upper - lower;
    (-d * d / (2.0 * sigma * sigma)).exp() / (sigma * sigma) * diff.norm_sqr()
}

/// `f` through the real error function, `f = (erf(σ p_f)/σ)²`.
pub fn f_erf_form(p_f: f64, sigma: f64) -> f64 {
    (erf_real(sigma * p_f) / sigma).powi(2)
}

/// Per-point evaluation used by sweeps: the correlation pair and the
/// state. Ideal detectors report `(F, F²)`, Gaussian ones `(f, g)`.
pub fn evaluate(
    scenario: &FermiScenario,
    cfg: &QuadratureConfig,
) -> Result<(f64, f64, TwoQubitState), Error> {
    scenario.validate()?;
    match scenario.profile {
        DetectorProfile::Ideal => {
            let big_f = ideal_f(scenario.p_f, scenario.d);
            Ok((
                big_f,
                big_f * big_f,
                ideal_pair_state(scenario.p_f, scenario.d),
            ))
        }
        DetectorProfile::Gaussian { sigma } => {
            let (f, g) = fuzzy_correlations(scenario.p_f, sigma, scenario.d, cfg)?;
            let state = TwoQubitState::from_exchange_correlations(f, g, BasisKind::Spin)?;
            Ok((f, g, state))
        }
    }
}
