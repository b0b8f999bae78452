//! Independent brute-force evaluators used to validate the closed forms:
//! a Wick-contraction evaluator on a discretized Fermi sea, an explicit
//! occupation-basis Fock simulator with fermionic sign bookkeeping, and
//! a binned two-photon interferometer simulator.

use num_complex::Complex64;

use crate::boson::{BosonScenario, Pol};
use crate::error::Error;
use crate::fermi::DetectorProfile;
use crate::qmat::{mat_zero, BasisKind, TwoQubitState};

/// Momentum-grid geometry of the discretized sea.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Geometry {
    /// Plain 1-D momenta on `(0, p_f]`; phases `e^{ipd}`.
    OneD,
    /// Radial reduction of the 3-D sphere: weight `p²`, kernel
    /// `sin(pd)/(pd)` (the angular integral is analytic).
    ThreeDRadial,
}

/// Midpoint discretization of the filled Fermi sea: `M` momentum
/// samples on `(0, p_f]`, every mode occupied for both spins.
#[derive(Debug, Clone)]
pub struct DiscretizedFermiSea {
    momenta: Vec<f64>,
    weights: Vec<f64>,
    geometry: Geometry,
    p_f: f64,
}

impl DiscretizedFermiSea {
    pub fn midpoint(p_f: f64, modes: usize, geometry: Geometry) -> Result<Self, Error> {
        if !(p_f > 0.0 && p_f.is_finite()) {
            return Err(Error::OutOfRange {
                what: "p_f",
                value: p_f,
            });
        }
        if modes == 0 {
            return Err(Error::OutOfRange {
                what: "modes",
                value: 0.0,
            });
        }
        let h = p_f / modes as f64;
        Ok(Self {
            momenta: (0..modes).map(|i| (i as f64 + 0.5) * h).collect(),
            weights: vec![h; modes],
            geometry,
            p_f,
        })
    }

    pub fn modes(&self) -> usize {
        self.momenta.len()
    }

    pub fn momenta(&self) -> &[f64] {
        &self.momenta
    }

    pub fn p_f(&self) -> f64 {
        self.p_f
    }

    pub fn geometry(&self) -> Geometry {
        self.geometry
    }

    /// Squared detector window `|χ(p)|²` for one mode.
    fn window_sq(&self, p: f64, profile: &DetectorProfile) -> f64 {
        match profile {
            DetectorProfile::Ideal => 1.0,
            DetectorProfile::Gaussian { sigma } => (-sigma * sigma * p * p).exp(),
        }
    }

    /// One-body contraction `A(d) = ⟨Ψ†(r) Ψ(r+d)⟩` on the grid:
    /// `Σ wᵢ |χᵢ|² e^{ipᵢd}` in 1-D, `Σ wᵢ pᵢ² sinc(pᵢd) |χᵢ|²` radially.
    pub fn contraction(&self, d: f64, profile: &DetectorProfile) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (&p, &w) in self.momenta.iter().zip(&self.weights) {
            let chi2 = self.window_sq(p, profile);
            match self.geometry {
                Geometry::OneD => {
                    acc += w * chi2 * Complex64::from_polar(1.0, p * d);
                }
                Geometry::ThreeDRadial => {
                    acc += Complex64::new(w * chi2 * p * p * sinc(p * d), 0.0);
                }
            }
        }
        acc
    }
}

fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// Two-fermion spin state by Wick contraction on the discretized sea:
/// `ρ_{ss',tt'} = δ_st δ_s't' A(0)² - δ_st' δ_s't |A(d)|²`, normalized.
pub fn wick_fermi_state(
    sea: &DiscretizedFermiSea,
    d: f64,
    profile: &DetectorProfile,
) -> Result<TwoQubitState, Error> {
    profile.validate()?;
    let direct = sea.contraction(0.0, profile).re.powi(2);
    let exchange = sea.contraction(d, profile).norm_sqr();
    TwoQubitState::from_exchange_correlations(direct, exchange, BasisKind::Spin)
}

/// Exchange bound `|A(d)| ≤ A(0)`; exposed for property checks.
pub fn exchange_bound_holds(sea: &DiscretizedFermiSea, d: f64, profile: &DetectorProfile) -> bool {
    sea.contraction(d, profile).norm() <= sea.contraction(0.0, profile).re + 1e-14
}

// ---------------------------------------------------------------------
// Explicit Fock-space simulation.

const FOCK_MAX_MODES: usize = 5;

/// Occupation-basis state vector over `2M` fermionic modes (spin ×
/// momentum), amplitudes indexed by occupation bitmask.
struct FockVector {
    amps: Vec<Complex64>,
}

impl FockVector {
    fn filled_sea(n_modes: usize) -> Self {
        let dim = 1usize << n_modes;
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[dim - 1] = Complex64::new(1.0, 0.0);
        Self { amps }
    }

    fn inner(&self, other: &FockVector) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }
}

/// Applies the annihilation operator for `mode`, with the fermionic sign
/// `(-1)^(occupied modes below `mode`)`.
fn apply_annihilation(v: &FockVector, mode: usize) -> FockVector {
    let bit = 1usize << mode;
    let below = bit - 1;
    let mut out = vec![Complex64::new(0.0, 0.0); v.amps.len()];
    for (mask, amp) in v.amps.iter().enumerate() {
        if amp.norm_sqr() == 0.0 || mask & bit == 0 {
            continue;
        }
        let sign = if (mask & below).count_ones().is_multiple_of(2) {
            1.0
        } else {
            -1.0
        };
        out[mask & !bit] += sign * amp;
    }
    FockVector { amps: out }
}

/// Discretized detection operator `Ψ_s(r) = Σᵢ cᵢ b_{s,i}` with per-mode
/// window amplitudes `cᵢ = √wᵢ χ(pᵢ) e^{ipᵢr}` (`χ = e^{-σ²p²/2}` for a
/// Gaussian detector, 1 for an ideal one).
pub struct DetectionOperator {
    spin: usize,
    amplitudes: Vec<Complex64>,
}

impl DetectionOperator {
    pub fn new(
        sea: &DiscretizedFermiSea,
        spin: usize,
        position: f64,
        profile: &DetectorProfile,
    ) -> Self {
        let amplitudes = sea
            .momenta
            .iter()
            .zip(&sea.weights)
            .map(|(&p, &w)| {
                let chi = match profile {
                    DetectorProfile::Ideal => 1.0,
                    DetectorProfile::Gaussian { sigma } => (-0.5 * sigma * sigma * p * p).exp(),
                };
                w.sqrt() * chi * Complex64::from_polar(1.0, p * position)
            })
            .collect();
        Self { spin, amplitudes }
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    fn apply(&self, v: &FockVector) -> FockVector {
        let mut out = vec![Complex64::new(0.0, 0.0); v.amps.len()];
        for (i, &coeff) in self.amplitudes.iter().enumerate() {
            let mode = 2 * i + self.spin;
            let hit = apply_annihilation(v, mode);
            for (o, h) in out.iter_mut().zip(&hit.amps) {
                *o += coeff * h;
            }
        }
        FockVector { amps: out }
    }
}

/// Literal second-quantized evaluation of the pair correlation on an
/// explicit state vector (1-D geometry, `M ≤ 5` momentum modes, state
/// dimension `2^{2M} ≤ 1024`). Mode ordering is fixed as
/// `mode = 2·momentum_index + spin`.
///
/// `ρ_{ss',tt'} = ⟨Φ₀|Ψ†_t(0)Ψ†_t'(d)Ψ_s'(d)Ψ_s(0)|Φ₀⟩`, which by
/// construction is the Gram matrix of the vectors `Ψ_s'(d)Ψ_s(0)|Φ₀⟩`.
pub fn fock_fermi_state(
    modes: usize,
    p_f: f64,
    d: f64,
    profile: &DetectorProfile,
) -> Result<TwoQubitState, Error> {
    if modes > FOCK_MAX_MODES {
        return Err(Error::DimensionTooLarge {
            modes,
            max: FOCK_MAX_MODES,
        });
    }
    profile.validate()?;
    let sea = DiscretizedFermiSea::midpoint(p_f, modes, Geometry::OneD)?;
    let ground = FockVector::filled_sea(2 * modes);

    // v[2s + s'] = Ψ_s'(d) Ψ_s(0) |Φ₀⟩
    let mut detected = Vec::with_capacity(4);
    for s in 0..2 {
        let once = DetectionOperator::new(&sea, s, 0.0, profile).apply(&ground);
        for s2 in 0..2 {
            detected.push(DetectionOperator::new(&sea, s2, d, profile).apply(&once));
        }
    }

    let mut m = mat_zero();
    for (row, vr) in detected.iter().enumerate() {
        for (col, vc) in detected.iter().enumerate() {
            m[row][col] = vc.inner(vr);
        }
    }
    TwoQubitState::new(&m, BasisKind::Spin)
}

/// The two detection operators anticommute: applying them in swapped
/// order flips the amplitude sign. Returns the largest entrywise
/// deviation from perfect antisymmetry; exposed for tests.
pub fn fock_anticommutation_residual(
    modes: usize,
    p_f: f64,
    d: f64,
    profile: &DetectorProfile,
) -> Result<f64, Error> {
    if modes > FOCK_MAX_MODES {
        return Err(Error::DimensionTooLarge {
            modes,
            max: FOCK_MAX_MODES,
        });
    }
    let sea = DiscretizedFermiSea::midpoint(p_f, modes, Geometry::OneD)?;
    let ground = FockVector::filled_sea(2 * modes);

    let at_origin = DetectionOperator::new(&sea, 0, 0.0, profile);
    let at_d = DetectionOperator::new(&sea, 1, d, profile);
    let up_then_down = at_d.apply(&at_origin.apply(&ground));
    let down_then_up = at_origin.apply(&at_d.apply(&ground));
    let mut max = 0.0f64;
    for (a, b) in up_then_down.amps.iter().zip(&down_then_up.amps) {
        max = max.max((a + b).norm());
    }
    Ok(max)
}

// ---------------------------------------------------------------------
// Exclusion-principle crossing terms.

/// Wick value of `⟨Ψ†_a(x) Ψ†_b(y) Ψ_c(u) Ψ_e(v)⟩` on the sea.
fn quartic_correlation(
    sea: &DiscretizedFermiSea,
    profile: &DetectorProfile,
    (a, x): (usize, f64),
    (b, y): (usize, f64),
    (c, u): (usize, f64),
    (e, v): (usize, f64),
) -> Complex64 {
    let zero = Complex64::new(0.0, 0.0);
    let direct = if a == e && b == c {
        sea.contraction(v - x, profile) * sea.contraction(u - y, profile)
    } else {
        zero
    };
    let exchange = if a == c && b == e {
        sea.contraction(u - x, profile) * sea.contraction(v - y, profile)
    } else {
        zero
    };
    direct - exchange
}

/// Crossing correlation `⟨Π⁺†_{tt'}(r,r') Π⁻_{ss'}(r,r')⟩` between the
/// symmetry-resolved detection operators, maximized over all spin
/// assignments; vanishes identically by the exclusion principle.
pub fn crossing_term(sea: &DiscretizedFermiSea, d: f64, profile: &DetectorProfile) -> Complex64 {
    let (r, r2) = (0.0, d);
    let mut worst = Complex64::new(0.0, 0.0);
    for s in 0..2usize {
        for s2 in 0..2usize {
            for t in 0..2usize {
                for t2 in 0..2usize {
                    // Π⁺†_{tt'} = (Ψ†_{t'}(r')Ψ†_t(r) + Ψ†_t(r')Ψ†_{t'}(r))/√2
                    // Π⁻_{ss'} = (Ψ_s(r)Ψ_{s'}(r') - Ψ_{s'}(r)Ψ_s(r'))/√2
                    let val = 0.5
                        * (quartic_correlation(sea, profile, (t2, r2), (t, r), (s, r), (s2, r2))
                            + quartic_correlation(
                                sea,
                                profile,
                                (t, r2),
                                (t2, r),
                                (s, r),
                                (s2, r2),
                            )
                            - quartic_correlation(
                                sea,
                                profile,
                                (t2, r2),
                                (t, r),
                                (s2, r),
                                (s, r2),
                            )
                            - quartic_correlation(
                                sea,
                                profile,
                                (t, r2),
                                (t2, r),
                                (s2, r),
                                (s, r2),
                            ));
                    if val.norm() > worst.norm() {
                        worst = val;
                    }
                }
            }
        }
    }
    worst
}

// ---------------------------------------------------------------------
// Binned two-photon interferometer.

/// Two-photon amplitude register on discretized frequency bins: one
/// photon in each input arm, amplitude per
/// `(polarization₁, bin₁, polarization₂, bin₂)`. Bosonic exchange
/// symmetry is applied when amplitudes are read out.
pub struct TwoPhotonRegister {
    bins: usize,
    freqs: Vec<f64>,
    bin_width: f64,
    // amps[((k1*B + b1)*2 + k2)*B + b2], photon 1 in arm 1, photon 2 in arm 2
    amps: Vec<Complex64>,
}

impl TwoPhotonRegister {
    /// Fills the register from the scenario's spectral amplitude on a
    /// midpoint frequency grid and normalizes to unit total probability.
    pub fn from_scenario(scn: &BosonScenario, bins: usize) -> Result<Self, Error> {
        if bins < 8 {
            return Err(Error::OutOfRange {
                what: "bins",
                value: bins as f64,
            });
        }
        let (lo, hi) = scn.amplitude.band();
        let h = (hi - lo) / bins as f64;
        let freqs: Vec<f64> = (0..bins).map(|b| lo + (b as f64 + 0.5) * h).collect();

        let pols = [Pol::H, Pol::V];
        let mut amps = vec![Complex64::new(0.0, 0.0); 4 * bins * bins];
        let mut norm_sq = 0.0;
        for (ki, k) in pols.iter().enumerate() {
            for (b1, &v1) in freqs.iter().enumerate() {
                for (kj, k2) in pols.iter().enumerate() {
                    for (b2, &v2) in freqs.iter().enumerate() {
                        let a = scn.amplitude.amplitude(*k, *k2, v1, v2) * h;
                        norm_sq += a.norm_sqr();
                        amps[((ki * bins + b1) * 2 + kj) * bins + b2] = a;
                    }
                }
            }
        }
        if norm_sq <= 0.0 {
            return Err(Error::DegenerateState { norm: norm_sq });
        }
        let scale = 1.0 / norm_sq.sqrt();
        for a in &mut amps {
            *a *= scale;
        }
        Ok(Self {
            bins,
            freqs,
            bin_width: h,
            amps,
        })
    }

    /// Pair amplitude `G(μ₁, μ₂)` for ordered single-photon modes
    /// `μ = (arm, polarization, bin)`; nonzero only for one photon per
    /// arm, photon 1 in arm 1.
    fn pair_amplitude(&self, m1: (usize, usize, usize), m2: (usize, usize, usize)) -> Complex64 {
        if m1.0 == 1 && m2.0 == 2 {
            self.amps[((m1.1 * self.bins + m1.2) * 2 + m2.1) * self.bins + m2.2]
        } else {
            Complex64::new(0.0, 0.0)
        }
    }

    /// `⟨0| a_{μa} a_{μb} |Ψ⟩ = G(μa, μb) + G(μb, μa)` — the bosonic
    /// commutation relation applied to the two-photon register.
    pub fn annihilate_pair(
        &self,
        mu_a: (usize, usize, usize),
        mu_b: (usize, usize, usize),
    ) -> Complex64 {
        self.pair_amplitude(mu_a, mu_b) + self.pair_amplitude(mu_b, mu_a)
    }
}

/// Coincidence amplitude at outputs 3 and 4 for the binned register:
/// each output operator is expanded over its two input modes and the
/// register is annihilated pairwise.
fn brute_coincidence(
    scn: &BosonScenario,
    reg: &TwoPhotonRegister,
    e3: Pol,
    b1: usize,
    e4: Pol,
    b2: usize,
) -> Complex64 {
    let pol_idx = |p: Pol| match p {
        Pol::H => 0usize,
        Pol::V => 1usize,
    };
    let w1 = reg.freqs[b1];
    let w2 = reg.freqs[b2];
    // E_{3,ε}(ω) = T_ε a_{1,ε}(ω) + iR_ε e^{iωτ} a_{2,ε}(ω)
    let e3_terms = [
        (scn.pbs.transmission(e3), (1usize, pol_idx(e3), b1)),
        (
            Complex64::new(0.0, 1.0)
                * scn.pbs.reflection(e3)
                * Complex64::from_polar(1.0, w1 * scn.tau),
            (2usize, pol_idx(e3), b1),
        ),
    ];
    // E_{4,ε}(ω) = iR_ε a_{1,ε}(ω) + T*_ε e^{iωτ} a_{2,ε}(ω)
    let e4_terms = [
        (
            Complex64::new(0.0, 1.0) * scn.pbs.reflection(e4),
            (1usize, pol_idx(e4), b2),
        ),
        (
            scn.pbs.transmission(e4).conj() * Complex64::from_polar(1.0, w2 * scn.tau),
            (2usize, pol_idx(e4), b2),
        ),
    ];

    let mut amp = Complex64::new(0.0, 0.0);
    for (c3, mu_a) in e3_terms {
        for (c4, mu_b) in e4_terms {
            amp += c3 * c4 * reg.annihilate_pair(mu_a, mu_b);
        }
    }
    amp
}

/// Brute-force polarization state: coincidence amplitudes on the binned
/// register, weighted by `D(ω₁)D(ω₂)` and summed over all bin pairs.
pub fn boson_brute_state(scn: &BosonScenario, bins: usize) -> Result<TwoQubitState, Error> {
    scn.validate()?;
    let reg = TwoPhotonRegister::from_scenario(scn, bins)?;
    let pols = [Pol::H, Pol::V];

    let mut m = mat_zero();
    for b1 in 0..bins {
        for b2 in 0..bins {
            let weight = scn.detector_response(reg.freqs[b1])
                * scn.detector_response(reg.freqs[b2])
                * reg.bin_width
                * reg.bin_width;
            let mut a = [Complex64::new(0.0, 0.0); 4];
            for (i, e3) in pols.iter().enumerate() {
                for (j, e4) in pols.iter().enumerate() {
                    a[2 * i + j] = brute_coincidence(scn, &reg, *e3, b1, *e4, b2);
                }
            }
            for r in 0..4 {
                for c in 0..4 {
                    m[r][c] += weight * a[r] * a[c].conj();
                }
            }
        }
    }
    TwoQubitState::new(&m, BasisKind::Polarization)
}

/// Bosonic exchange check: swapping which detection operator acts first
/// leaves every coincidence amplitude unchanged (commuting mode
/// operators). Returns the largest deviation; exposed for tests.
pub fn boson_commutation_residual(scn: &BosonScenario, bins: usize) -> Result<f64, Error> {
    let reg = TwoPhotonRegister::from_scenario(scn, bins)?;
    let mut max = 0.0f64;
    for b1 in [0, bins / 2, bins - 1] {
        for b2 in [0, bins / 3, bins - 1] {
            for mu_a in [(1usize, 0usize, b1), (2usize, 1usize, b1)] {
                for mu_b in [(1usize, 1usize, b2), (2usize, 0usize, b2)] {
                    let fwd = reg.annihilate_pair(mu_a, mu_b);
                    let rev = reg.annihilate_pair(mu_b, mu_a);
                    max = max.max((fwd - rev).norm());
                }
            }
        }
    }
    Ok(max)
}
