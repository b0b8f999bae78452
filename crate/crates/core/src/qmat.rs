//! Two-qubit density-matrix algebra: validation, partial transposition,
//! a cyclic Jacobi eigensolver, negativity, Bell decomposition, and
//! state comparison metrics.
//!
//! Basis order is first-particle-major: index `2·(first) + (second)`,
//! i.e. `{↑↑, ↑↓, ↓↑, ↓↓}` for spins and `{hh, hv, vh, vv}` for
//! polarizations.

use num_complex::Complex64;

use crate::error::Error;

/// Dense 4×4 complex matrix, row-major.
pub type CMat4 = [[Complex64; 4]; 4];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

pub fn mat_zero() -> CMat4 {
    [[ZERO; 4]; 4]
}

pub fn mat_identity() -> CMat4 {
    let mut m = mat_zero();
    for i in 0..4 {
        m[i][i] = Complex64::new(1.0, 0.0);
    }
    m
}

pub fn mat_adjoint(m: &CMat4) -> CMat4 {
    let mut out = mat_zero();
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = m[j][i].conj();
        }
    }
    out
}

pub fn mat_mul(a: &CMat4, b: &CMat4) -> CMat4 {
    let mut out = mat_zero();
    for i in 0..4 {
        for j in 0..4 {
            let mut acc = ZERO;
            for k in 0..4 {
                acc += a[i][k] * b[k][j];
            }
            out[i][j] = acc;
        }
    }
    out
}

pub fn mat_sub(a: &CMat4, b: &CMat4) -> CMat4 {
    let mut out = mat_zero();
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = a[i][j] - b[i][j];
        }
    }
    out
}

pub fn mat_scale(m: &CMat4, s: f64) -> CMat4 {
    let mut out = *m;
    for row in out.iter_mut() {
        for v in row.iter_mut() {
            *v *= s;
        }
    }
    out
}

pub fn mat_trace(m: &CMat4) -> Complex64 {
    m[0][0] + m[1][1] + m[2][2] + m[3][3]
}

/// `(m + m†)/2`.
pub fn hermitize(m: &CMat4) -> CMat4 {
    let adj = mat_adjoint(m);
    let mut out = mat_zero();
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = 0.5 * (m[i][j] + adj[i][j]);
        }
    }
    out
}

/// Largest entrywise modulus of `a - b`.
pub fn max_entry_distance(a: &CMat4, b: &CMat4) -> f64 {
    let mut max = 0.0f64;
    for i in 0..4 {
        for j in 0..4 {
            max = max.max((a[i][j] - b[i][j]).norm());
        }
    }
    max
}

/// The four Bell states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bell {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

/// Bell state as a ket in the computational basis.
pub fn bell_vector(which: Bell) -> [Complex64; 4] {
    let r = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    match which {
        Bell::PhiPlus => [r, ZERO, ZERO, r],
        Bell::PhiMinus => [r, ZERO, ZERO, -r],
        Bell::PsiPlus => [ZERO, r, r, ZERO],
        Bell::PsiMinus => [ZERO, r, -r, ZERO],
    }
}

/// Rank-1 projector `|B⟩⟨B|`.
pub fn bell_projector(which: Bell) -> CMat4 {
    let v = bell_vector(which);
    let mut m = mat_zero();
    for i in 0..4 {
        for j in 0..4 {
            m[i][j] = v[i] * v[j].conj();
        }
    }
    m
}

/// `I/4`.
pub fn maximally_mixed() -> CMat4 {
    mat_scale(&mat_identity(), 0.25)
}

/// Which physical labels the four basis indices carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisKind {
    /// Fermion spins `{↑↑, ↑↓, ↓↑, ↓↓}`.
    Spin,
    /// Photon polarizations `{hh, hv, vh, vv}`.
    Polarization,
}

impl BasisKind {
    pub fn labels(&self) -> [&'static str; 4] {
        match self {
            BasisKind::Spin => ["↑↑", "↑↓", "↓↑", "↓↓"],
            BasisKind::Polarization => ["hh", "hv", "vh", "vv"],
        }
    }
}

/// A validated two-qubit density matrix: Hermitian, positive
/// semi-definite and trace-one by construction.
#[derive(Debug, Clone, Copy)]
pub struct TwoQubitState {
    entries: CMat4,
    basis: BasisKind,
}

impl TwoQubitState {
    /// Validates and trace-normalizes `m`. The input is hermitized as
    /// `(m + m†)/2`; rejected if the trace vanishes or any eigenvalue is
    /// below `-1e-8` on the trace-one scale.
    pub fn new(m: &CMat4, basis: BasisKind) -> Result<Self, Error> {
        for row in m.iter() {
            for v in row.iter() {
                if !v.re.is_finite() || !v.im.is_finite() {
                    return Err(Error::NotAState("non-finite entry".into()));
                }
            }
        }
        let h = hermitize(m);
        let trace = mat_trace(&h).re;
        if trace.abs() < 1e-300 {
            return Err(Error::NotAState("zero trace".into()));
        }
        let normalized = mat_scale(&h, 1.0 / trace);
        let eigs = eigvals_h4(&normalized)?;
        if eigs[0] < -1e-8 {
            return Err(Error::NotAState(format!(
                "negative eigenvalue {:e}",
                eigs[0]
            )));
        }
        Ok(Self {
            entries: normalized,
            basis,
        })
    }

    /// Builds the exchange-symmetric pair state from a direct
    /// correlation `f` and an exchange correlation `g`: diagonal
    /// `(f-g, f, f, f-g)`, off-diagonal `-g` between the two
    /// opposite-label entries, trace `4f - 2g`.
    pub fn from_exchange_correlations(
        direct: f64,
        exchange: f64,
        basis: BasisKind,
    ) -> Result<Self, Error> {
        let norm = 4.0 * direct - 2.0 * exchange;
        if norm <= 1e-300 {
            return Err(Error::DegenerateState { norm });
        }
        let mut m = mat_zero();
        m[0][0] = Complex64::new(direct - exchange, 0.0);
        m[3][3] = m[0][0];
        m[1][1] = Complex64::new(direct, 0.0);
        m[2][2] = m[1][1];
        m[1][2] = Complex64::new(-exchange, 0.0);
        m[2][1] = m[1][2];
        Self::new(&m, basis)
    }

    pub fn entries(&self) -> &CMat4 {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i][j]
    }

    pub fn basis(&self) -> BasisKind {
        self.basis
    }

    /// `⟨ψ|ρ|ψ⟩` for a ket `ψ`.
    pub fn expectation(&self, ket: &[Complex64; 4]) -> f64 {
        let mut acc = ZERO;
        for i in 0..4 {
            for j in 0..4 {
                acc += ket[i].conj() * self.entries[i][j] * ket[j];
            }
        }
        acc.re
    }
}

/// Hermitizes and trace-normalizes a raw matrix into a state.
pub fn validate_and_normalize(m: &CMat4, basis: BasisKind) -> Result<TwoQubitState, Error> {
    TwoQubitState::new(m, basis)
}

/// Partial transpose over the first tensor factor:
/// `entry[(i,j),(k,l)] ↦ entry[(k,j),(i,l)]`.
pub fn partial_transpose(rho: &TwoQubitState) -> CMat4 {
    partial_transpose_mat(rho.entries())
}

pub(crate) fn partial_transpose_mat(m: &CMat4) -> CMat4 {
    let mut out = mat_zero();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out[2 * i + j][2 * k + l] = m[2 * k + j][2 * i + l];
                }
            }
        }
    }
    out
}

const JACOBI_MAX_SWEEPS: usize = 50;
const JACOBI_OFF_TOL: f64 = 1e-13;

/// Eigenvalues of a 4×4 Hermitian matrix, ascending, via cyclic complex
/// Jacobi rotations iterated until the off-diagonal Frobenius norm drops
/// below 1e-13.
pub fn eigvals_h4(m: &CMat4) -> Result<[f64; 4], Error> {
    // Work on the hermitized copy so the rotations stay exactly unitary.
    let mut a = hermitize(m);

    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) <= JACOBI_OFF_TOL {
            let mut eigs = [a[0][0].re, a[1][1].re, a[2][2].re, a[3][3].re];
            eigs.sort_by(f64::total_cmp);
            return Ok(eigs);
        }
        for p in 0..3 {
            for q in (p + 1)..4 {
                jacobi_rotate(&mut a, p, q);
            }
        }
    }
    Err(Error::NonConvergence(format!(
        "Jacobi eigensolver: off-diagonal norm {:e} after {JACOBI_MAX_SWEEPS} sweeps",
        off_diagonal_norm(&a)
    )))
}

fn off_diagonal_norm(a: &CMat4) -> f64 {
    let mut acc = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                acc += a[i][j].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// One two-sided rotation `A ← U† A U` zeroing `a[p][q]`, with
/// `U = D·J`: a phase that makes the pivot real followed by a real
/// Givens rotation.
fn jacobi_rotate(a: &mut CMat4, p: usize, q: usize) {
    let apq = a[p][q];
    let b = apq.norm();
    if b == 0.0 {
        return;
    }
    let omega = apq / b;

    let tau = (a[q][q].re - a[p][p].re) / (2.0 * b);
    let t = if tau == 0.0 {
        1.0
    } else {
        tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // U columns restricted to (p,q): U[:,p] = (c, -s·ω̄), U[:,q] = (s, c·ω̄)
    let upp = Complex64::new(c, 0.0);
    let uqp = -s * omega.conj();
    let upq = Complex64::new(s, 0.0);
    let uqq = c * omega.conj();

    // rows: A ← U† A
    for j in 0..4 {
        let rp = a[p][j];
        let rq = a[q][j];
        a[p][j] = upp.conj() * rp + uqp.conj() * rq;
        a[q][j] = upq.conj() * rp + uqq.conj() * rq;
    }
    // columns: A ← A U
    for i in 0..4 {
        let cp = a[i][p];
        let cq = a[i][q];
        a[i][p] = cp * upp + cq * uqp;
        a[i][q] = cp * upq + cq * uqq;
    }
    // pivot is zero by construction; clamp the rounding residue
    a[p][q] = ZERO;
    a[q][p] = ZERO;
}

/// Entanglement summary of a state.
#[derive(Debug, Clone, Copy)]
pub struct EntanglementReport {
    /// `2·max(0, -λ_min(ρ^{T_A}))`.
    pub negativity_eigen: f64,
    /// Closed-form value, when the producing model has one.
    pub negativity_closed: Option<f64>,
    /// Peres-Horodecki flag: the partial transpose has an eigenvalue
    /// below `-1e-12`.
    pub ppt_entangled: bool,
    /// `⟨Ψ−|ρ|Ψ−⟩`.
    pub singlet_fraction: f64,
    pub min_pt_eigenvalue: f64,
}

impl EntanglementReport {
    pub fn with_closed_form(mut self, value: f64) -> Self {
        self.negativity_closed = Some(value);
        self
    }
}

/// Negativity and PPT classification via the partial-transpose spectrum.
pub fn negativity(rho: &TwoQubitState) -> Result<EntanglementReport, Error> {
    let pt = partial_transpose(rho);
    let eigs = eigvals_h4(&pt)?;
    let min = eigs[0];
    Ok(EntanglementReport {
        negativity_eigen: 2.0 * (-min).max(0.0),
        negativity_closed: None,
        ppt_entangled: min < -1e-12,
        singlet_fraction: rho.expectation(&bell_vector(Bell::PsiMinus)),
        min_pt_eigenvalue: min,
    })
}

/// Diagonal weights `⟨B|ρ|B⟩` in the Bell basis.
#[derive(Debug, Clone, Copy)]
pub struct BellWeights {
    pub phi_plus: f64,
    pub phi_minus: f64,
    pub psi_plus: f64,
    pub psi_minus: f64,
}

impl BellWeights {
    pub fn sum(&self) -> f64 {
        self.phi_plus + self.phi_minus + self.psi_plus + self.psi_minus
    }
}

pub fn bell_weights(rho: &TwoQubitState) -> BellWeights {
    BellWeights {
        phi_plus: rho.expectation(&bell_vector(Bell::PhiPlus)),
        phi_minus: rho.expectation(&bell_vector(Bell::PhiMinus)),
        psi_plus: rho.expectation(&bell_vector(Bell::PsiPlus)),
        psi_minus: rho.expectation(&bell_vector(Bell::PsiMinus)),
    }
}

/// Distance measures between two states.
#[derive(Debug, Clone, Copy)]
pub struct StateMetrics {
    /// `½ Σ |eig(ρ - σ)|`.
    pub trace_distance: f64,
    /// `⟨ψ|ρ|ψ⟩` when `σ = |ψ⟩⟨ψ|` is pure (purity within 1e-10 of 1).
    pub fidelity_if_pure: Option<f64>,
}

pub fn state_metrics(rho: &TwoQubitState, sigma: &TwoQubitState) -> Result<StateMetrics, Error> {
    let diff = mat_sub(rho.entries(), sigma.entries());
    let eigs = eigvals_h4(&diff)?;
    let trace_distance = 0.5 * eigs.iter().map(|e| e.abs()).sum::<f64>();

    let purity: f64 = sigma.entries().iter().flatten().map(|v| v.norm_sqr()).sum();
    let fidelity_if_pure = if purity >= 1.0 - 1e-10 {
        let prod = mat_mul(rho.entries(), sigma.entries());
        Some(mat_trace(&prod).re)
    } else {
        None
    };

    Ok(StateMetrics {
        trace_distance,
        fidelity_if_pure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn diag(d: [f64; 4]) -> CMat4 {
        let mut m = mat_zero();
        for i in 0..4 {
            m[i][i] = c(d[i], 0.0);
        }
        m
    }

    // 4×4 complex determinant by cofactor expansion; oracle for the
    // characteristic-polynomial residual check.
    fn det4(m: &CMat4) -> Complex64 {
        fn det3(m: [[Complex64; 3]; 3]) -> Complex64 {
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..4 {
            let mut minor = [[Complex64::new(0.0, 0.0); 3]; 3];
            for (ri, row) in m.iter().enumerate().skip(1) {
                let mut cj = 0;
                for (ci, v) in row.iter().enumerate() {
                    if ci != k {
                        minor[ri - 1][cj] = *v;
                        cj += 1;
                    }
                }
            }
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            acc += sign * m[0][k] * det3(minor);
        }
        acc
    }

    fn werner(lambda: f64) -> CMat4 {
        let p = bell_projector(Bell::PsiMinus);
        let mut m = mat_zero();
        for i in 0..4 {
            for j in 0..4 {
                let id = if i == j { 1.0 } else { 0.0 };
                m[i][j] = lambda * p[i][j] + (1.0 - lambda) * (c(id, 0.0) - p[i][j]) / 3.0;
            }
        }
        m
    }

    #[test]
    fn identity_normalizes_to_maximally_mixed() {
        let s = validate_and_normalize(&mat_identity(), BasisKind::Spin).unwrap();
        assert_eq!(max_entry_distance(s.entries(), &maximally_mixed()), 0.0);

        let scaled = mat_scale(&mat_identity(), 2.0);
        let s2 = validate_and_normalize(&scaled, BasisKind::Spin).unwrap();
        assert_eq!(max_entry_distance(s2.entries(), &maximally_mixed()), 0.0);
    }

    #[test]
    fn negative_eigenvalue_is_rejected() {
        let m = diag([1.0, 1.0, 1.0, -0.5]);
        assert!(matches!(
            validate_and_normalize(&m, BasisKind::Spin),
            Err(Error::NotAState(_))
        ));
    }

    #[test]
    fn zero_trace_is_rejected() {
        assert!(matches!(
            validate_and_normalize(&mat_zero(), BasisKind::Spin),
            Err(Error::NotAState(_))
        ));
    }

    #[test]
    fn partial_transpose_fixes_maximally_mixed() {
        let s = validate_and_normalize(&mat_identity(), BasisKind::Spin).unwrap();
        assert_eq!(
            max_entry_distance(&partial_transpose(&s), &maximally_mixed()),
            0.0
        );
    }

    #[test]
    fn singlet_partial_transpose_spectrum() {
        let s = validate_and_normalize(&bell_projector(Bell::PsiMinus), BasisKind::Spin).unwrap();
        let eigs = eigvals_h4(&partial_transpose(&s)).unwrap();
        assert_abs_diff_eq!(eigs[0], -0.5, epsilon = 1e-13);
        for e in &eigs[1..] {
            assert_abs_diff_eq!(*e, 0.5, epsilon = 1e-13);
        }
    }

    #[test]
    fn eigvals_of_diagonal_matrix() {
        let eigs = eigvals_h4(&diag([4.0, 3.0, 2.0, 1.0])).unwrap();
        assert_eq!(eigs, [1.0, 2.0, 3.0, 4.0]);
    }

    #[test]
    fn eigvals_satisfy_characteristic_polynomial() {
        // fixed pseudo-random Hermitian matrix
        let mut raw = mat_zero();
        let mut seed = 0x2545f4914f6cdd1du64;
        let mut rng = || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            (seed >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        for i in 0..4 {
            for j in 0..4 {
                raw[i][j] = c(rng(), rng());
            }
        }
        let h = hermitize(&raw);
        let eigs = eigvals_h4(&h).unwrap();
        let trace = mat_trace(&h).re;
        assert_abs_diff_eq!(eigs.iter().sum::<f64>(), trace, epsilon = 1e-12);
        for lam in eigs {
            let mut shifted = h;
            for i in 0..4 {
                shifted[i][i] -= c(lam, 0.0);
            }
            assert!(
                det4(&shifted).norm() <= 1e-9,
                "residual for eigenvalue {lam}"
            );
        }
    }

    #[test]
    fn singlet_negativity_is_one() {
        let s = validate_and_normalize(&bell_projector(Bell::PsiMinus), BasisKind::Spin).unwrap();
        let rep = negativity(&s).unwrap();
        assert_abs_diff_eq!(rep.negativity_eigen, 1.0, epsilon = 1e-12);
        assert!(rep.ppt_entangled);
        assert_abs_diff_eq!(rep.singlet_fraction, 1.0, epsilon = 1e-13);
    }

    #[test]
    fn maximally_mixed_is_separable() {
        let s = validate_and_normalize(&mat_identity(), BasisKind::Spin).unwrap();
        let rep = negativity(&s).unwrap();
        assert_eq!(rep.negativity_eigen, 0.0);
        assert!(!rep.ppt_entangled);
        assert_abs_diff_eq!(rep.singlet_fraction, 0.25, epsilon = 1e-13);
    }

    #[test]
    fn werner_state_negativity() {
        // λ = 0.7: negativity 2λ - 1 = 0.4
        let s = validate_and_normalize(&werner(0.7), BasisKind::Spin).unwrap();
        let rep = negativity(&s).unwrap();
        assert_abs_diff_eq!(rep.negativity_eigen, 0.4, epsilon = 1e-12);
        assert_abs_diff_eq!(rep.singlet_fraction, 0.7, epsilon = 1e-13);
    }

    #[test]
    fn bell_weights_of_bell_states_and_mixture() {
        let s = validate_and_normalize(&bell_projector(Bell::PhiMinus), BasisKind::Polarization)
            .unwrap();
        let w = bell_weights(&s);
        assert_abs_diff_eq!(w.phi_minus, 1.0, epsilon = 1e-13);
        assert_abs_diff_eq!(w.phi_plus + w.psi_plus + w.psi_minus, 0.0, epsilon = 1e-13);

        let mixed = validate_and_normalize(&mat_identity(), BasisKind::Spin).unwrap();
        let w = bell_weights(&mixed);
        for v in [w.phi_plus, w.phi_minus, w.psi_plus, w.psi_minus] {
            assert_abs_diff_eq!(v, 0.25, epsilon = 1e-13);
        }
    }

    #[test]
    fn metrics_on_identical_and_orthogonal_states() {
        let mixed = validate_and_normalize(&mat_identity(), BasisKind::Spin).unwrap();
        let m = state_metrics(&mixed, &mixed).unwrap();
        assert_abs_diff_eq!(m.trace_distance, 0.0, epsilon = 1e-13);

        let plus = validate_and_normalize(&bell_projector(Bell::PhiPlus), BasisKind::Spin).unwrap();
        let minus =
            validate_and_normalize(&bell_projector(Bell::PhiMinus), BasisKind::Spin).unwrap();
        let m = state_metrics(&plus, &minus).unwrap();
        assert_abs_diff_eq!(m.trace_distance, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(m.fidelity_if_pure.unwrap(), 0.0, epsilon = 1e-13);

        // fidelity is only reported against (nearly) pure second arguments
        assert!(state_metrics(&plus, &mixed)
            .unwrap()
            .fidelity_if_pure
            .is_none());
    }

    fn arb_state() -> impl Strategy<Value = TwoQubitState> {
        // ρ = M·M† / tr is always a valid state
        proptest::collection::vec(-1.0f64..1.0, 32).prop_map(|v| {
            let mut m = mat_zero();
            for i in 0..4 {
                for j in 0..4 {
                    m[i][j] = Complex64::new(v[8 * i + 2 * j], v[8 * i + 2 * j + 1]);
                }
            }
            let gram = mat_mul(&m, &mat_adjoint(&m));
            let mut bumped = gram;
            for i in 0..4 {
                bumped[i][i] += Complex64::new(1e-6, 0.0);
            }
            validate_and_normalize(&bumped, BasisKind::Spin).unwrap()
        })
    }

    fn swap_conjugate(m: &CMat4) -> CMat4 {
        // SWAP permutes basis indices 1 ↔ 2
        let perm = [0usize, 2, 1, 3];
        let mut out = mat_zero();
        for i in 0..4 {
            for j in 0..4 {
                out[i][j] = m[perm[i]][perm[j]];
            }
        }
        out
    }

    proptest! {
        #[test]
        fn pt_is_involutive_and_trace_preserving(s in arb_state()) {
            let pt = partial_transpose(&s);
            prop_assert!((mat_trace(&pt).re - 1.0).abs() < 1e-12);
            let back = partial_transpose_mat(&pt);
            prop_assert!(max_entry_distance(&back, s.entries()) < 1e-15);
        }

        #[test]
        fn negativity_in_range_and_swap_invariant(s in arb_state()) {
            let rep = negativity(&s).unwrap();
            prop_assert!(rep.negativity_eigen >= 0.0);
            prop_assert!(rep.negativity_eigen <= 1.0 + 1e-12);
            prop_assert_eq!(rep.ppt_entangled, rep.min_pt_eigenvalue < -1e-12);

            let swapped =
                validate_and_normalize(&swap_conjugate(s.entries()), BasisKind::Spin).unwrap();
            let rep_swapped = negativity(&swapped).unwrap();
            prop_assert!((rep.negativity_eigen - rep_swapped.negativity_eigen).abs() < 1e-12);
        }

        #[test]
        fn eigenvalue_sum_matches_trace(s in arb_state()) {
            let eigs = eigvals_h4(s.entries()).unwrap();
            prop_assert!((eigs.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }
}
