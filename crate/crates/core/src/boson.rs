//! Two-photon polarization states behind a polarizing beam splitter with
//! a relative delay `τ` and Gaussian frequency detectors.
//!
//! [`general_pair_state`] integrates the full coincidence amplitude for
//! an arbitrary beam splitter and two-photon spectral amplitude;
//! [`hom_state`] is the closed form for the ideal-PBS, constant-spectrum
//! interferometer, `½[[1,0,0,-f],[0,0,0,0],[0,0,0,0],[-f,0,0,1]]` with
//! `f = exp(-σ²τ²)`.

use num_complex::Complex64;

use crate::error::Error;
use crate::qmat::{hermitize, mat_zero, BasisKind, CMat4, TwoQubitState};
use crate::specfun::QuadratureConfig;

use std::f64::consts::PI;

/// Photon polarization label.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pol {
    H,
    V,
}

const POLS: [Pol; 2] = [Pol::H, Pol::V];

/// Per-polarization transmission/reflection amplitudes of the beam
/// splitter. `|t|² + |r|² = 1` for each polarization.
#[derive(Debug, Clone, Copy)]
pub struct PBSCoefficients {
    pub t_h: Complex64,
    pub t_v: Complex64,
    pub r_h: Complex64,
    pub r_v: Complex64,
}

impl PBSCoefficients {
    /// Ideal polarizing beam splitter: `R_h = T_v = 1`, `T_h = R_v = 0`.
    pub fn ideal() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self {
            t_h: zero,
            t_v: one,
            r_h: one,
            r_v: zero,
        }
    }

    pub fn transmission(&self, pol: Pol) -> Complex64 {
        match pol {
            Pol::H => self.t_h,
            Pol::V => self.t_v,
        }
    }

    pub fn reflection(&self, pol: Pol) -> Complex64 {
        match pol {
            Pol::H => self.r_h,
            Pol::V => self.r_v,
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        for pol in POLS {
            let sum = self.transmission(pol).norm_sqr() + self.reflection(pol).norm_sqr();
            if (sum - 1.0).abs() > 1e-12 {
                return Err(Error::OutOfRange {
                    what: "|T|^2 + |R|^2",
                    value: sum,
                });
            }
        }
        Ok(())
    }
}

type AmplitudeFn = dyn Fn(Pol, Pol, f64, f64) -> Complex64 + Send + Sync;

/// Two-photon spectral amplitude `g_{kk'}(ν₁, ν₂)` with its finite
/// support band. The `symmetric` flag asserts polarization-index
/// symmetry `g_{kk'} = g_{k'k}`.
pub struct SpectralAmplitude {
    band: (f64, f64),
    symmetric: bool,
    eval: Box<AmplitudeFn>,
}

impl SpectralAmplitude {
    pub fn new(
        band: (f64, f64),
        symmetric: bool,
        eval: impl Fn(Pol, Pol, f64, f64) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            band,
            symmetric,
            eval: Box::new(eval),
        }
    }

    /// Flat, polarization-independent amplitude on `band`.
    pub fn constant(band: (f64, f64)) -> Self {
        Self::new(band, true, |_, _, _, _| Complex64::new(1.0, 0.0))
    }

    /// Flat amplitude with separate weights for the `hh` and `vv` pair
    /// components; cross-polarized pairs are absent.
    pub fn polarized_constant(band: (f64, f64), amp_hh: f64, amp_vv: f64) -> Self {
        Self::new(band, true, move |k, k2, _, _| match (k, k2) {
            (Pol::H, Pol::H) => Complex64::new(amp_hh, 0.0),
            (Pol::V, Pol::V) => Complex64::new(amp_vv, 0.0),
            _ => Complex64::new(0.0, 0.0),
        })
    }

    /// Polarization-independent Gaussian pair spectrum
    /// `exp(-(ν₁+ν₂)²/2w_p²) · exp(-(ν₁²+ν₂²)/2w_s²)`.
    pub fn gaussian_correlated(band: (f64, f64), pump_width: f64, photon_width: f64) -> Self {
        Self::new(band, true, move |_, _, v1, v2| {
            let s = v1 + v2;
            let env = -s * s / (2.0 * pump_width * pump_width)
                - (v1 * v1 + v2 * v2) / (2.0 * photon_width * photon_width);
            Complex64::new(env.exp(), 0.0)
        })
    }

    pub fn amplitude(&self, k: Pol, k2: Pol, v1: f64, v2: f64) -> Complex64 {
        (self.eval)(k, k2, v1, v2)
    }

    pub fn band(&self) -> (f64, f64) {
        self.band
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn validate(&self) -> Result<(), Error> {
        let (lo, hi) = self.band;
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::OutOfRange {
                what: "band width",
                value: hi - lo,
            });
        }
        Ok(())
    }
}

impl std::fmt::Debug for SpectralAmplitude {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SpectralAmplitude")
            .field("band", &self.band)
            .field("symmetric", &self.symmetric)
            .finish()
    }
}

/// Default half-width of the constant-amplitude band, in units of the
/// detector spread. Truncating at `8σ` keeps the lost Gaussian mass
/// below 1e-10 of the total, so closed forms derived on an infinite
/// band still apply.
pub const BAND_HALF_WIDTH_SIGMAS: f64 = 8.0;

/// Interferometer configuration: delay, detector spread, beam splitter
/// and pair spectrum. `center` shifts the detector response to
/// `D(ω - center)`; the offset phases cancel between the conjugate
/// coefficient factors, so normalized states do not depend on it.
#[derive(Debug)]
pub struct BosonScenario {
    pub tau: f64,
    pub sigma: f64,
    pub center: f64,
    pub pbs: PBSCoefficients,
    pub amplitude: SpectralAmplitude,
}

impl BosonScenario {
    /// The Hong-Ou-Mandel configuration: ideal PBS and a constant
    /// spectrum on `[-8σ, 8σ]`.
    pub fn hom(sigma: f64, tau: f64) -> Self {
        let w = BAND_HALF_WIDTH_SIGMAS * sigma;
        Self {
            tau,
            sigma,
            center: 0.0,
            pbs: PBSCoefficients::ideal(),
            amplitude: SpectralAmplitude::constant((-w, w)),
        }
    }

    /// Same configuration around a carrier frequency `center`.
    pub fn hom_at_center(sigma: f64, tau: f64, center: f64) -> Self {
        let w = BAND_HALF_WIDTH_SIGMAS * sigma;
        Self {
            tau,
            sigma,
            center,
            pbs: PBSCoefficients::ideal(),
            amplitude: SpectralAmplitude::constant((center - w, center + w)),
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        if !(self.sigma > 0.0 && self.sigma.is_finite()) {
            return Err(Error::OutOfRange {
                what: "sigma",
                value: self.sigma,
            });
        }
        if !self.tau.is_finite() {
            return Err(Error::OutOfRange {
                what: "tau",
                value: self.tau,
            });
        }
        if !self.center.is_finite() {
            return Err(Error::OutOfRange {
                what: "center",
                value: self.center,
            });
        }
        self.pbs.validate()?;
        self.amplitude.validate()
    }

    /// Gaussian detector response `D(ω - center)`,
    /// `D(ω) = exp(-ω²/2σ²)/(√(2π)σ)`.
    pub fn detector_response(&self, omega: f64) -> f64 {
        let w = omega - self.center;
        (-w * w / (2.0 * self.sigma * self.sigma)).exp() / ((2.0 * PI).sqrt() * self.sigma)
    }

    /// Coincidence amplitude for detecting polarization `e1` at output 3
    /// (frequency `w1`) and `e2` at output 4 (frequency `w2`):
    /// `T_ε T*_ε' e^{iω₂τ} g_{εε'}(ω₁,ω₂) - R_ε R_ε' e^{iω₁τ} g_{ε'ε}(ω₂,ω₁)`.
    pub fn coincidence_amplitude(&self, e1: Pol, e2: Pol, w1: f64, w2: f64) -> Complex64 {
        let transmitted = self.pbs.transmission(e1)
            * self.pbs.transmission(e2).conj()
            * Complex64::from_polar(1.0, w2 * self.tau)
            * self.amplitude.amplitude(e1, e2, w1, w2);
        let reflected = self.pbs.reflection(e1)
            * self.pbs.reflection(e2)
            * Complex64::from_polar(1.0, w1 * self.tau)
            * self.amplitude.amplitude(e2, e1, w2, w1);
        transmitted - reflected
    }

    fn amplitude_vector(&self, w1: f64, w2: f64) -> [Complex64; 4] {
        let mut a = [Complex64::new(0.0, 0.0); 4];
        for (i, e1) in POLS.iter().enumerate() {
            for (j, e2) in POLS.iter().enumerate() {
                a[2 * i + j] = self.coincidence_amplitude(*e1, *e2, w1, w2);
            }
        }
        a
    }
}

/// All 16 polarization coefficients by 2-D adaptive quadrature of
/// `D(ω₁)D(ω₂)·A(ω₁,ω₂)A†(ω₁,ω₂)` over the band, then Hermitized and
/// trace-normalized.
pub fn general_pair_state(
    scn: &BosonScenario,
    cfg: &QuadratureConfig,
) -> Result<TwoQubitState, Error> {
    scn.validate()?;
    cfg.validate()?;
    let (lo, hi) = scn.amplitude.band();

    let integrand = |w1: f64, w2: f64| -> CMat4 {
        let weight = scn.detector_response(w1) * scn.detector_response(w2);
        let a = scn.amplitude_vector(w1, w2);
        let mut m = mat_zero();
        for i in 0..4 {
            for j in 0..4 {
                m[i][j] = weight * a[i] * a[j].conj();
            }
        }
        m
    };

    let raw = integrate_2d(&integrand, (lo, hi), (lo, hi), cfg)?;
    TwoQubitState::new(&hermitize(&raw), BasisKind::Polarization)
}

/// Closed-form Hong-Ou-Mandel polarization state in `{hh, hv, vh, vv}`:
/// `½[[1,0,0,-f],[0,...],[0,...],[-f,0,0,1]]` with `f = exp(-σ²τ²)`.
pub fn hom_state(sigma: f64, tau: f64) -> TwoQubitState {
    let f = hom_negativity(sigma, tau);
    let mut m = mat_zero();
    m[0][0] = Complex64::new(0.5, 0.0);
    m[3][3] = m[0][0];
    m[0][3] = Complex64::new(-0.5 * f, 0.0);
    m[3][0] = m[0][3];
    TwoQubitState::new(&m, BasisKind::Polarization).expect("HOM state is valid for f in [0,1]")
}

/// `N = f = exp(-σ²τ²)`; the partial transpose of the HOM state has the
/// single negative eigenvalue `-f/2`.
pub fn hom_negativity(sigma: f64, tau: f64) -> f64 {
    (-sigma * sigma * tau * tau).exp()
}

/// Bell weights of the HOM state:
/// `ρ = (1-f)/2·|Φ+⟩⟨Φ+| + (1+f)/2·|Φ−⟩⟨Φ−|`.
pub fn phi_weights(f: f64) -> Result<(f64, f64), Error> {
    if !(0.0..=1.0).contains(&f) {
        return Err(Error::OutOfRange {
            what: "f",
            value: f,
        });
    }
    Ok(((1.0 - f) / 2.0, (1.0 + f) / 2.0))
}

// ---------------------------------------------------------------------
// 2-D tensor Gauss-Kronrod quadrature for matrix-valued integrands.

// Full 15-node arrays on [-1, 1]; Gauss weight is zero off the embedded
// 7-point subset.
#[allow(clippy::excessive_precision)]
fn gk15_nodes() -> ([f64; 15], [f64; 15], [f64; 15]) {
    const XGK: [f64; 8] = [
        0.991_455_371_120_812_639_206_854_697_526_329,
        0.949_107_912_342_758_524_526_189_684_047_851,
        0.864_864_423_359_769_072_789_712_788_640_926,
        0.741_531_185_599_394_439_863_864_773_280_788,
        0.586_087_235_467_691_130_294_144_838_258_730,
        0.405_845_151_377_397_166_906_606_412_076_961,
        0.207_784_955_007_898_467_600_689_403_773_245,
        0.0,
    ];
    const WGK: [f64; 8] = [
        0.022_935_322_010_529_224_963_732_008_058_970,
        0.063_092_092_629_978_553_290_700_663_189_204,
        0.104_790_010_322_250_183_839_876_322_541_518,
        0.140_653_259_715_525_918_745_189_590_510_238,
        0.169_004_726_639_267_902_826_583_426_598_550,
        0.190_350_578_064_785_409_913_256_402_421_014,
        0.204_432_940_075_298_892_414_161_999_234_649,
        0.209_482_141_084_727_828_012_999_174_891_714,
    ];
    const WG: [f64; 4] = [
        0.129_484_966_168_869_693_270_611_432_679_082,
        0.279_705_391_489_276_667_901_467_771_423_780,
        0.381_830_050_505_118_944_950_369_775_488_975,
        0.417_959_183_673_469_387_755_102_040_816_327,
    ];

    let mut nodes = [0.0; 15];
    let mut wk = [0.0; 15];
    let mut wg = [0.0; 15];
    for j in 0..7 {
        nodes[j] = -XGK[j];
        nodes[14 - j] = XGK[j];
        wk[j] = WGK[j];
        wk[14 - j] = WGK[j];
        if j % 2 == 1 {
            wg[j] = WG[j / 2];
            wg[14 - j] = WG[j / 2];
        }
    }
    nodes[7] = 0.0;
    wk[7] = WGK[7];
    wg[7] = WG[3];
    (nodes, wk, wg)
}

struct Rect {
    x: (f64, f64),
    y: (f64, f64),
    value: CMat4,
    err: f64,
}

fn gk15_2d<F: Fn(f64, f64) -> CMat4>(f: &F, x: (f64, f64), y: (f64, f64)) -> (CMat4, f64) {
    let (nodes, wk, wg) = gk15_nodes();
    let cx = 0.5 * (x.0 + x.1);
    let hx = 0.5 * (x.1 - x.0);
    let cy = 0.5 * (y.0 + y.1);
    let hy = 0.5 * (y.1 - y.0);

    let mut kronrod = mat_zero();
    let mut gauss = mat_zero();
    for i in 0..15 {
        for j in 0..15 {
            let v = f(cx + hx * nodes[i], cy + hy * nodes[j]);
            let wkk = wk[i] * wk[j];
            let wgg = wg[i] * wg[j];
            for r in 0..4 {
                for c in 0..4 {
                    kronrod[r][c] += wkk * v[r][c];
                    if wgg != 0.0 {
                        gauss[r][c] += wgg * v[r][c];
                    }
                }
            }
        }
    }

    let scale = hx * hy;
    let mut err = 0.0f64;
    for r in 0..4 {
        for c in 0..4 {
            kronrod[r][c] *= scale;
            err = err.max((kronrod[r][c] - gauss[r][c] * scale).norm());
        }
    }
    (kronrod, err)
}

fn integrate_2d<F: Fn(f64, f64) -> CMat4>(
    f: &F,
    x: (f64, f64),
    y: (f64, f64),
    cfg: &QuadratureConfig,
) -> Result<CMat4, Error> {
    // 4×4 initial grid so the rule starts below the detector width
    let n0 = 4usize;
    let mut rects = Vec::with_capacity(n0 * n0);
    for i in 0..n0 {
        for j in 0..n0 {
            let rx = (
                x.0 + (x.1 - x.0) * i as f64 / n0 as f64,
                x.0 + (x.1 - x.0) * (i + 1) as f64 / n0 as f64,
            );
            let ry = (
                y.0 + (y.1 - y.0) * j as f64 / n0 as f64,
                y.0 + (y.1 - y.0) * (j + 1) as f64 / n0 as f64,
            );
            let (value, err) = gk15_2d(f, rx, ry);
            rects.push(Rect {
                x: rx,
                y: ry,
                value,
                err,
            });
        }
    }

    loop {
        let mut total = mat_zero();
        let mut err_total = 0.0;
        let mut max_entry = 0.0f64;
        for r in &rects {
            for i in 0..4 {
                for j in 0..4 {
                    total[i][j] += r.value[i][j];
                }
            }
            err_total += r.err;
        }
        for row in &total {
            for v in row {
                max_entry = max_entry.max(v.norm());
            }
        }

        let tol = cfg.abs_tol.max(cfg.rel_tol * max_entry);
        if err_total <= tol {
            return Ok(total);
        }
        if rects.len() >= cfg.max_subdivisions {
            return Err(Error::NonConvergence(format!(
                "2-D quadrature error {err_total:e} above tolerance {tol:e} after {} rectangles",
                rects.len()
            )));
        }

        let worst = rects
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.err.total_cmp(&b.1.err))
            .map(|(i, _)| i)
            .unwrap();
        let Rect { x: rx, y: ry, .. } = rects[worst];
        if rx.1 - rx.0 >= ry.1 - ry.0 {
            let mid = 0.5 * (rx.0 + rx.1);
            let (v1, e1) = gk15_2d(f, (rx.0, mid), ry);
            let (v2, e2) = gk15_2d(f, (mid, rx.1), ry);
            rects[worst] = Rect {
                x: (rx.0, mid),
                y: ry,
                value: v1,
                err: e1,
            };
            rects.push(Rect {
                x: (mid, rx.1),
                y: ry,
                value: v2,
                err: e2,
            });
        } else {
            let mid = 0.5 * (ry.0 + ry.1);
            let (v1, e1) = gk15_2d(f, rx, (ry.0, mid));
            let (v2, e2) = gk15_2d(f, rx, (mid, ry.1));
            rects[worst] = Rect {
                x: rx,
                y: (ry.0, mid),
                value: v1,
                err: e1,
            };
            rects.push(Rect {
                x: rx,
                y: (mid, ry.1),
                value: v2,
                err: e2,
            });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmat::{bell_projector, bell_weights, max_entry_distance, negativity, Bell};
    use approx::assert_abs_diff_eq;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn hom_state_at_zero_delay_is_phi_minus() {
        let s = hom_state(1.0, 0.0);
        assert!(max_entry_distance(s.entries(), &bell_projector(Bell::PhiMinus)) < 1e-15);
        assert_abs_diff_eq!(
            negativity(&s).unwrap().negativity_eigen,
            1.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn hom_state_at_large_delay_is_separable_mixture() {
        let s = hom_state(1.0, 20.0);
        let rep = negativity(&s).unwrap();
        assert!(rep.negativity_eigen < 1e-100);
        assert!(!rep.ppt_entangled);
        assert_abs_diff_eq!(s.entry(0, 0).re, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(s.entry(3, 3).re, 0.5, epsilon = 1e-15);
    }

    #[test]
    fn hom_negativity_closed_form_values() {
        assert_eq!(hom_negativity(1.0, 0.0), 1.0);
        assert_abs_diff_eq!(hom_negativity(1.0, 1.0), (-1.0f64).exp(), epsilon = 1e-16);
        assert_abs_diff_eq!(hom_negativity(2.0, 0.5), (-1.0f64).exp(), epsilon = 1e-16);
    }

    #[test]
    fn hom_negativity_matches_eigen_solver_and_decays_in_delay() {
        let mut prev = f64::INFINITY;
        for k in 0..=100 {
            let tau = 4.0 * k as f64 / 100.0;
            let expected = hom_negativity(1.0, tau);
            let rep = negativity(&hom_state(1.0, tau)).unwrap();
            assert_abs_diff_eq!(rep.negativity_eigen, expected, epsilon = 1e-12);
            assert!(expected <= prev);
            prev = expected;
        }
    }

    #[test]
    fn phi_weights_and_bell_decomposition() {
        assert_eq!(phi_weights(1.0).unwrap(), (0.0, 1.0));
        assert_eq!(phi_weights(0.0).unwrap(), (0.5, 0.5));
        assert!(matches!(
            phi_weights(1.5),
            Err(Error::OutOfRange { what: "f", .. })
        ));

        for &tau in &[0.0, 0.3, 1.0, 2.5] {
            let f = hom_negativity(1.0, tau);
            let (wp, wm) = phi_weights(f).unwrap();
            assert_abs_diff_eq!(wp + wm, 1.0, epsilon = 1e-15);
            let w = bell_weights(&hom_state(1.0, tau));
            assert_abs_diff_eq!(w.phi_plus, wp, epsilon = 1e-13);
            assert_abs_diff_eq!(w.phi_minus, wm, epsilon = 1e-13);
            assert_abs_diff_eq!(w.psi_plus, 0.0, epsilon = 1e-13);
            assert_abs_diff_eq!(w.psi_minus, 0.0, epsilon = 1e-13);
        }
    }

    #[test]
    fn general_state_ideal_pbs_zero_delay_is_phi_minus() {
        let scn = BosonScenario::hom(1.0, 0.0);
        let s = general_pair_state(&scn, &cfg()).unwrap();
        assert!(max_entry_distance(s.entries(), &bell_projector(Bell::PhiMinus)) < 1e-9);
    }

    #[test]
    fn general_state_matches_closed_form_at_unit_delay() {
        let scn = BosonScenario::hom(1.0, 1.0);
        let s = general_pair_state(&scn, &cfg()).unwrap();
        let closed = hom_state(1.0, 1.0);
        assert!(max_entry_distance(s.entries(), closed.entries()) <= 1e-6);
    }

    #[test]
    fn balanced_splitter_shows_the_coincidence_dip() {
        // polarization-independent 50/50 splitter: at zero delay the two
        // photons bunch and no coincidences survive; at finite delay the
        // coincidence state is the separable |++⟩
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let balanced = PBSCoefficients {
            t_h: Complex64::new(r, 0.0),
            t_v: Complex64::new(r, 0.0),
            r_h: Complex64::new(r, 0.0),
            r_v: Complex64::new(r, 0.0),
        };
        let w = BAND_HALF_WIDTH_SIGMAS;
        let make = |tau: f64| BosonScenario {
            tau,
            sigma: 1.0,
            center: 0.0,
            pbs: balanced,
            amplitude: SpectralAmplitude::constant((-w, w)),
        };

        assert!(matches!(
            general_pair_state(&make(0.0), &cfg()),
            Err(Error::NotAState(_))
        ));

        let s = general_pair_state(&make(1.0), &cfg()).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_abs_diff_eq!(s.entry(i, j).re, 0.25, epsilon = 1e-9);
                assert_abs_diff_eq!(s.entry(i, j).im, 0.0, epsilon = 1e-9);
            }
        }
        let rep = negativity(&s).unwrap();
        assert!(rep.negativity_eigen < 1e-9);
        assert!(!rep.ppt_entangled);
    }

    #[test]
    fn only_four_coefficients_survive_an_ideal_pbs() {
        let scn = BosonScenario::hom(1.0, 0.7);
        let s = general_pair_state(&scn, &cfg()).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let keep = (i == 0 || i == 3) && (j == 0 || j == 3);
                if !keep {
                    assert!(
                        s.entry(i, j).norm() < 1e-10,
                        "coefficient ({i},{j}) = {}",
                        s.entry(i, j)
                    );
                }
            }
        }
    }

    #[test]
    fn unbalanced_pair_spectrum_lowers_the_coherence() {
        // g_hh = 2 g_vv: pure state ∝ 2|hh⟩ - ... with negativity 4/5
        let w = BAND_HALF_WIDTH_SIGMAS;
        let scn = BosonScenario {
            tau: 0.0,
            sigma: 1.0,
            center: 0.0,
            pbs: PBSCoefficients::ideal(),
            amplitude: SpectralAmplitude::polarized_constant((-w, w), 2.0, 1.0),
        };
        let s = general_pair_state(&scn, &cfg()).unwrap();
        assert_abs_diff_eq!(s.entry(0, 0).re, 0.8, epsilon = 1e-9);
        assert_abs_diff_eq!(s.entry(3, 3).re, 0.2, epsilon = 1e-9);
        assert_abs_diff_eq!(s.entry(0, 3).re, -0.4, epsilon = 1e-9);
        assert!(s.entry(0, 3).norm() < s.entry(0, 0).norm());
        let rep = negativity(&s).unwrap();
        assert_abs_diff_eq!(rep.negativity_eigen, 0.8, epsilon = 1e-8);
        assert!(rep.negativity_eigen < 1.0);
    }

    #[test]
    fn negativity_is_even_in_the_delay() {
        for &tau in &[0.4, 1.3] {
            let plus = general_pair_state(&BosonScenario::hom(1.0, tau), &cfg()).unwrap();
            let minus = general_pair_state(&BosonScenario::hom(1.0, -tau), &cfg()).unwrap();
            let np = negativity(&plus).unwrap().negativity_eigen;
            let nm = negativity(&minus).unwrap().negativity_eigen;
            assert_abs_diff_eq!(np, nm, epsilon = 1e-10);
        }
    }

    #[test]
    fn frequency_label_swap_leaves_the_state_unchanged() {
        let w = BAND_HALF_WIDTH_SIGMAS;
        let base = BosonScenario {
            tau: 0.8,
            sigma: 1.0,
            center: 0.0,
            pbs: PBSCoefficients::ideal(),
            amplitude: SpectralAmplitude::gaussian_correlated((-w, w), 3.0, 5.0),
        };
        let swapped = BosonScenario {
            tau: 0.8,
            sigma: 1.0,
            center: 0.0,
            pbs: PBSCoefficients::ideal(),
            amplitude: SpectralAmplitude::new((-w, w), true, move |k, k2, v1, v2| {
                let s = v2 + v1;
                let env = -s * s / (2.0 * 9.0) - (v1 * v1 + v2 * v2) / (2.0 * 25.0);
                let _ = (k, k2);
                Complex64::new(env.exp(), 0.0)
            }),
        };
        let a = general_pair_state(&base, &cfg()).unwrap();
        let b = general_pair_state(&swapped, &cfg()).unwrap();
        assert!(max_entry_distance(a.entries(), b.entries()) < 1e-9);
    }

    #[test]
    fn gaussian_correlated_spectrum_reduces_coherence_with_delay() {
        let w = BAND_HALF_WIDTH_SIGMAS;
        let make = |tau: f64| BosonScenario {
            tau,
            sigma: 1.0,
            center: 0.0,
            pbs: PBSCoefficients::ideal(),
            amplitude: SpectralAmplitude::gaussian_correlated((-w, w), 2.0, 4.0),
        };
        let n0 = negativity(&general_pair_state(&make(0.0), &cfg()).unwrap())
            .unwrap()
            .negativity_eigen;
        let n1 = negativity(&general_pair_state(&make(1.0), &cfg()).unwrap())
            .unwrap()
            .negativity_eigen;
        assert_abs_diff_eq!(n0, 1.0, epsilon = 1e-8);
        assert!(n1 < n0);
    }

    #[test]
    fn center_frequency_offset_cancels_in_the_normalized_state() {
        let base = general_pair_state(&BosonScenario::hom(1.0, 0.6), &cfg()).unwrap();
        let shifted =
            general_pair_state(&BosonScenario::hom_at_center(1.0, 0.6, 5.0), &cfg()).unwrap();
        assert!(max_entry_distance(base.entries(), shifted.entries()) < 1e-8);
    }

    #[test]
    fn exhausted_budget_reports_non_convergence() {
        let scn = BosonScenario::hom(1.0, 1.0);
        let tight = QuadratureConfig {
            max_subdivisions: 16,
            ..QuadratureConfig::default()
        };
        assert!(matches!(
            general_pair_state(&scn, &tight),
            Err(Error::NonConvergence(_))
        ));
    }

    #[test]
    fn invalid_scenarios_are_rejected() {
        let mut scn = BosonScenario::hom(1.0, 0.0);
        scn.sigma = -1.0;
        assert!(matches!(
            general_pair_state(&scn, &cfg()),
            Err(Error::OutOfRange { what: "sigma", .. })
        ));

        let bad_pbs = PBSCoefficients {
            t_h: Complex64::new(0.9, 0.0),
            t_v: Complex64::new(1.0, 0.0),
            r_h: Complex64::new(1.0, 0.0),
            r_v: Complex64::new(0.0, 0.0),
        };
        assert!(bad_pbs.validate().is_err());
    }
}
