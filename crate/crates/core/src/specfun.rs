//! Special functions and the Gaussian-window momentum integral that the
//! detector models are built on.
//!
//! The central routine is [`window_integral`], the one-sided integral
//! `I(d) = ∫_0^{p_f} exp(-σ²p²) exp(ipd) dp` evaluated by adaptive
//! Gauss-Kronrod quadrature. Everything downstream (correlation pairs,
//! closed-form negativities) is expressed through `|I(d)|²`.

use num_complex::Complex64;

use crate::error::Error;

/// Tolerances and budget for the adaptive quadrature routines.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-10,
            max_subdivisions: 2048,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<(), Error> {
        if self.abs_tol.is_nan() || self.abs_tol <= 0.0 {
            return Err(Error::OutOfRange {
                what: "abs_tol",
                value: self.abs_tol,
            });
        }
        if self.rel_tol.is_nan() || self.rel_tol <= 0.0 {
            return Err(Error::OutOfRange {
                what: "rel_tol",
                value: self.rel_tol,
            });
        }
        if self.max_subdivisions < 1 {
            return Err(Error::OutOfRange {
                what: "max_subdivisions",
                value: self.max_subdivisions as f64,
            });
        }
        Ok(())
    }
}

/// Spherical Bessel function `j₁(x) = sin x / x² - cos x / x`.
///
/// Below `|x| = 1e-2` the direct form cancels, so the Maclaurin series
/// `x/3 - x³/30 + x⁵/840` is used instead (the next term is ~2e-19 at the
/// switch point).
pub fn spherical_j1(x: f64) -> f64 {
    if x.abs() < 1e-2 {
        let x2 = x * x;
        x * (1.0 / 3.0 - x2 / 30.0 + x2 * x2 / 840.0)
    } else {
        x.sin() / (x * x) - x.cos() / x
    }
}

/// Error function `erf(x) = (2/√π) ∫_0^x exp(-t²) dt`.
pub fn erf_real(x: f64) -> f64 {
    libm::erf(x)
}

/// One-sided Gaussian-window momentum integral
/// `I(d) = ∫_0^{p_f} exp(-σ²p²) exp(ipd) dp`.
///
/// `d` may be signed; conjugation symmetry `conj(I(d)) = I(-d)` holds.
/// When `d ≠ 0` the initial panels are capped at half the oscillation
/// period `2π/|d|` so the Kronrod rule always resolves the phase.
pub fn window_integral(
    p_f: f64,
    sigma: f64,
    d: f64,
    cfg: &QuadratureConfig,
) -> Result<Complex64, Error> {
    cfg.validate()?;
    if !(p_f > 0.0 && p_f.is_finite()) {
        return Err(Error::OutOfRange {
            what: "p_f",
            value: p_f,
        });
    }
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(Error::OutOfRange {
            what: "sigma",
            value: sigma,
        });
    }
    if !d.is_finite() {
        return Err(Error::OutOfRange {
            what: "d",
            value: d,
        });
    }

    let max_width = if d != 0.0 {
        Some(std::f64::consts::PI / d.abs())
    } else {
        None
    };
    let s2 = sigma * sigma;
    let re = integrate_adaptive(
        |p| (-s2 * p * p).exp() * (p * d).cos(),
        0.0,
        p_f,
        max_width,
        cfg,
    )?;
    let im = integrate_adaptive(
        |p| (-s2 * p * p).exp() * (p * d).sin(),
        0.0,
        p_f,
        max_width,
        cfg,
    )?;
    Ok(Complex64::new(re, im))
}

// 15-point Kronrod abscissae (QUADPACK QK15), positive half.
#[allow(clippy::excessive_precision)]
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

// 7-point Gauss weights; WG[j] pairs with XGK[2j+1].
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

// 15-point Kronrod weights.
#[allow(clippy::excessive_precision)]
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

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 {
            res_asc * scale
        } else {
            res_asc
        };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        let min_err = 50.0 * f64::EPSILON * res_abs;
        if min_err > scaled {
            scaled = min_err;
        }
    }
    scaled
}

/// Gauss-Kronrod 7/15 rule on `[a, b]`; returns the Kronrod value and an
/// error estimate.
pub(crate) fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);

    let mut fv = [0.0f64; 15];
    fv[7] = fc;
    let mut res_gauss = WG[3] * fc;
    let mut res_kronrod = WGK[7] * fc;
    let mut res_abs = WGK[7] * fc.abs();

    for j in 0..7 {
        let x = half * XGK[j];
        let f1 = f(center - x);
        let f2 = f(center + x);
        fv[j] = f1;
        fv[14 - j] = f2;
        res_kronrod += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_gauss += WG[j / 2] * (f1 + f2);
        }
    }

    let mean = res_kronrod * 0.5;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv[j] - mean).abs() + (fv[14 - j] - mean).abs());
    }

    let err = ((res_kronrod - res_gauss) * half).abs();
    (
        res_kronrod * half,
        rescale_error(err, res_abs * half.abs(), res_asc * half.abs()),
    )
}

/// Adaptive Gauss-Kronrod integration of a real integrand on `[a, b]`.
///
/// `max_width` caps the initial panel width (oscillation guard). Panels
/// are bisected worst-first until the summed error estimate meets
/// `max(abs_tol, rel_tol·|result|)`.
pub(crate) fn integrate_adaptive<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    max_width: Option<f64>,
    cfg: &QuadratureConfig,
) -> Result<f64, Error> {
    struct Panel {
        a: f64,
        b: f64,
        value: f64,
        err: f64,
    }

    let span = b - a;
    let n0 = match max_width {
        Some(w) if w > 0.0 => (span / w).ceil().max(1.0) as usize,
        _ => 1,
    };
    if n0 > cfg.max_subdivisions {
        return Err(Error::NonConvergence(format!(
            "oscillatory integrand needs {n0} initial panels, budget is {}",
            cfg.max_subdivisions
        )));
    }

    let mut panels: Vec<Panel> = (0..n0)
        .map(|i| {
            let pa = a + span * i as f64 / n0 as f64;
            let pb = a + span * (i + 1) as f64 / n0 as f64;
            let (value, err) = gk15(&f, pa, pb);
            Panel {
                a: pa,
                b: pb,
                value,
                err,
            }
        })
        .collect();

    loop {
        let total: f64 = panels.iter().map(|p| p.value).sum();
        let err_total: f64 = panels.iter().map(|p| p.err).sum();
        let tol = cfg.abs_tol.max(cfg.rel_tol * total.abs());
        if err_total <= tol {
            return Ok(total);
        }
        if panels.len() >= cfg.max_subdivisions {
            return Err(Error::NonConvergence(format!(
                "quadrature error {err_total:e} above tolerance {tol:e} after {} panels",
                panels.len()
            )));
        }

        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.err.total_cmp(&y.1.err))
            .map(|(i, _)| i)
            .unwrap();
        let Panel { a: pa, b: pb, .. } = panels[worst];
        let mid = 0.5 * (pa + pb);
        let (v1, e1) = gk15(&f, pa, mid);
        let (v2, e2) = gk15(&f, mid, pb);
        panels[worst] = Panel {
            a: pa,
            b: mid,
            value: v1,
            err: e1,
        };
        panels.push(Panel {
            a: mid,
            b: pb,
            value: v2,
            err: e2,
        });
    }
}
