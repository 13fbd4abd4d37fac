//! Fourier coefficients, decay profiles, and coefficient-vanishing checks
//! for 1-periodic functions.
//!
//! Coefficients come from adaptive quadrature of `int_0^1 f(x) e^{-2 pi i n x} dx`
//! (exactly from the spectrum for band-limited functions). The decay profile
//! accumulates `sum |n^k fhat(n)|^2` up to a cutoff and renders a verdict that
//! is explicitly a labeled heuristic: smoothness pushes weighted coefficient
//! energy toward boundedness, but no finite cutoff can certify the converse.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{integrate_complex, QuadratureOptions};

/// Smoothness class of a built-in; caller-supplied oracles carry none.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Smoothness {
    #[serde(rename = "discontinuous")]
    Discontinuous,
    #[serde(rename = "c0")]
    Continuous,
    #[serde(rename = "c-infinity")]
    Smooth,
    #[serde(rename = "band-limited")]
    BandLimited,
}

#[derive(Clone)]
enum FnKind {
    /// `x` on [0, 1); discontinuous across the period seam.
    Sawtooth,
    /// `|2x - 1|`; continuous with a kink at 1/2.
    Triangle,
    /// `exp(sin(2 pi x))`; analytic.
    SmoothExpSin,
    /// Finite spectrum `sum c e^{2 pi i freq x}`.
    BandLimited(Vec<(i64, Complex64)>),
    /// Caller-supplied real evaluation oracle.
    Custom {
        label: String,
        eval: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
        parallel_safe: bool,
    },
}

/// A 1-periodic function: a named built-in or a caller-supplied oracle.
#[derive(Clone)]
pub struct PeriodicFn {
    kind: FnKind,
}

impl fmt::Debug for PeriodicFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PeriodicFn({})", self.label())
    }
}

impl PeriodicFn {
    pub fn sawtooth() -> Self {
        PeriodicFn {
            kind: FnKind::Sawtooth,
        }
    }

    pub fn triangle() -> Self {
        PeriodicFn {
            kind: FnKind::Triangle,
        }
    }

    pub fn smooth() -> Self {
        PeriodicFn {
            kind: FnKind::SmoothExpSin,
        }
    }

    /// Trig polynomial from `(frequency, coefficient)` pairs; duplicate
    /// frequencies are summed and zero coefficients dropped.
    pub fn band_limited<I: IntoIterator<Item = (i64, Complex64)>>(spectrum: I) -> Self {
        let mut merged: std::collections::BTreeMap<i64, Complex64> = Default::default();
        for (freq, c) in spectrum {
            let entry = merged.entry(freq).or_insert(Complex64::new(0.0, 0.0));
            *entry += c;
        }
        merged.retain(|_, c| c.norm() != 0.0);
        PeriodicFn {
            kind: FnKind::BandLimited(merged.into_iter().collect()),
        }
    }

    /// Thread-safe evaluation oracle on [0, 1).
    pub fn custom(
        label: impl Into<String>,
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        PeriodicFn {
            kind: FnKind::Custom {
                label: label.into(),
                eval: Arc::new(eval),
                parallel_safe: true,
            },
        }
    }

    /// An oracle that must only be called from one thread at a time.
    pub fn custom_serial(
        label: impl Into<String>,
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        PeriodicFn {
            kind: FnKind::Custom {
                label: label.into(),
                eval: Arc::new(eval),
                parallel_safe: false,
            },
        }
    }

    pub fn label(&self) -> String {
        match &self.kind {
            FnKind::Sawtooth => "sawtooth".into(),
            FnKind::Triangle => "triangle".into(),
            FnKind::SmoothExpSin => "smooth".into(),
            FnKind::BandLimited(s) => {
                format!(
                    "bandlimited(max |freq| {})",
                    s.iter().map(|(f, _)| f.abs()).max().unwrap_or(0)
                )
            }
            FnKind::Custom { label, .. } => format!("custom({label})"),
        }
    }

    pub fn smoothness(&self) -> Option<Smoothness> {
        match &self.kind {
            FnKind::Sawtooth => Some(Smoothness::Discontinuous),
            FnKind::Triangle => Some(Smoothness::Continuous),
            FnKind::SmoothExpSin => Some(Smoothness::Smooth),
            FnKind::BandLimited(_) => Some(Smoothness::BandLimited),
            FnKind::Custom { .. } => None,
        }
    }

    /// Whether the evaluation oracle may be shared across threads.
    pub fn is_parallel_safe(&self) -> bool {
        match &self.kind {
            FnKind::Custom { parallel_safe, .. } => *parallel_safe,
            _ => true,
        }
    }

    /// Finite spectrum, when the function has one.
    pub fn spectrum(&self) -> Option<&[(i64, Complex64)]> {
        match &self.kind {
            FnKind::BandLimited(s) => Some(s),
            _ => None,
        }
    }

    /// Interior points where a built-in is known to lose smoothness; used to
    /// pre-split quadrature panels. The period seam itself sits on the
    /// integration boundary and needs no splitting.
    pub fn seam_points(&self) -> Vec<f64> {
        match &self.kind {
            FnKind::Triangle => vec![0.5],
            _ => vec![],
        }
    }

    /// Evaluation at `x` (reduced modulo 1).
    pub fn eval(&self, x: f64) -> Complex64 {
        let u = x - x.floor();
        match &self.kind {
            FnKind::Sawtooth => Complex64::new(u, 0.0),
            FnKind::Triangle => Complex64::new((2.0 * u - 1.0).abs(), 0.0),
            FnKind::SmoothExpSin => {
                Complex64::new((2.0 * std::f64::consts::PI * u).sin().exp(), 0.0)
            }
            FnKind::BandLimited(spectrum) => spectrum
                .iter()
                .map(|&(freq, c)| {
                    c * Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * freq as f64 * u)
                })
                .sum(),
            FnKind::Custom { eval, .. } => Complex64::new(eval(u), 0.0),
        }
    }
}

fn quad_options_for_mode(n: i64) -> QuadratureOptions {
    QuadratureOptions {
        // Keep at most ~two oscillation periods per initial panel.
        initial_panels: (n.unsigned_abs() as usize / 2).max(8),
        ..Default::default()
    }
}

/// `fhat(n) = int_0^1 f(x) e^{-2 pi i n x} dx` to estimated absolute error
/// `tol`; exact from the spectrum for band-limited functions.
pub fn fourier_coeff(f: &PeriodicFn, n: i64, tol: f64) -> Result<Complex64> {
    if let Some(spectrum) = f.spectrum() {
        return Ok(spectrum
            .iter()
            .find(|&&(freq, _)| freq == n)
            .map(|&(_, c)| c)
            .unwrap_or(Complex64::new(0.0, 0.0)));
    }
    let integrand =
        |x: f64| f.eval(x) * Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * n as f64 * x);
    let outcome = integrate_complex(
        &integrand,
        0.0,
        1.0,
        &f.seam_points(),
        tol,
        &quad_options_for_mode(n),
    )?;
    Ok(outcome.value)
}

/// `int_0^1 |f|^2`, by quadrature (exact coefficient energy for band-limited).
pub fn l2_norm_squared(f: &PeriodicFn, tol: f64) -> Result<f64> {
    if let Some(spectrum) = f.spectrum() {
        return Ok(spectrum.iter().map(|(_, c)| c.norm_sqr()).sum());
    }
    let integrand = |x: f64| Complex64::new(f.eval(x).norm_sqr(), 0.0);
    let outcome = integrate_complex(
        &integrand,
        0.0,
        1.0,
        &f.seam_points(),
        tol,
        &QuadratureOptions::default(),
    )?;
    Ok(outcome.value.re)
}

/// Heuristic outcome of a decay profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Bounded,
    Growing,
}

/// Last-quarter growth ratio above which a profile is called growing.
pub const VERDICT_RATIO_THRESHOLD: f64 = 1.05;

/// Weighted coefficient-energy profile: partial sums of `|n^k fhat(n)|^2`
/// over `0 < |n| <= m` for `m` up to the cutoff.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayProfile {
    pub k: u32,
    #[serde(rename = "N")]
    pub cutoff: usize,
    /// `partial_sums[m-1] = sum_{0 < |n| <= m} |n^k fhat(n)|^2`.
    pub partial_sums: Vec<f64>,
    /// Labeled heuristic, not a certified statement: the last-quarter
    /// increase ratio against [`VERDICT_RATIO_THRESHOLD`].
    pub verdict: Verdict,
    /// Smoothness label of the built-in, absent for caller oracles (no
    /// smoothness-based expectation is attached then).
    pub smoothness: Option<Smoothness>,
}

impl DecayProfile {
    /// CSV rows `m,partial_sum` with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("m,partial_sum\n");
        for (i, p) in self.partial_sums.iter().enumerate() {
            out.push_str(&format!("{},{}\n", i + 1, p));
        }
        out
    }

    /// The compact JSON summary `{k, N, verdict, smoothness}`.
    pub fn summary_json(&self) -> serde_json::Value {
        serde_json::json!({
            "k": self.k,
            "N": self.cutoff,
            "verdict": self.verdict,
            "smoothness": self.smoothness,
        })
    }
}

/// Computes coefficients for `0 < |n| <= cutoff` and accumulates the
/// `k`-weighted energy profile.
pub fn decay_profile(f: &PeriodicFn, k: u32, cutoff: usize, tol: f64) -> Result<DecayProfile> {
    if cutoff < 8 {
        return Err(Error::Precondition(
            "decay profile cutoff must be at least 8".into(),
        ));
    }
    let mut partial_sums = Vec::with_capacity(cutoff);
    let mut acc = 0.0;
    for m in 1..=cutoff {
        let weight = (m as f64).powi(k as i32);
        let plus = fourier_coeff(f, m as i64, tol)?;
        let minus = fourier_coeff(f, -(m as i64), tol)?;
        acc += weight * weight * (plus.norm_sqr() + minus.norm_sqr());
        partial_sums.push(acc);
    }

    let last = *partial_sums.last().expect("cutoff >= 8");
    let at_three_quarters = partial_sums[(3 * cutoff) / 4 - 1];
    let verdict = if last == 0.0 {
        Verdict::Bounded
    } else if at_three_quarters == 0.0 || last / at_three_quarters > VERDICT_RATIO_THRESHOLD {
        Verdict::Growing
    } else {
        Verdict::Bounded
    };

    Ok(DecayProfile {
        k,
        cutoff,
        partial_sums,
        verdict,
        smoothness: f.smoothness(),
    })
}

/// Largest coefficient modulus over one dyadic band of frequencies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BandMax {
    /// Band covers `lo < |n| <= hi`.
    pub lo: usize,
    pub hi: usize,
    pub max_abs: f64,
}

/// Coefficient-vanishing check: max `|fhat(n)|` over dyadic bands
/// `(N/2, N], (N/4, N/2], ...` down to `{1}`, returned innermost first.
/// For integrable functions these maxima decay toward zero; built-ins
/// display that within quadrature error.
pub fn riemann_lebesgue_check(f: &PeriodicFn, cutoff: usize, tol: f64) -> Result<Vec<BandMax>> {
    if cutoff < 16 {
        return Err(Error::Precondition(
            "band check cutoff must be at least 16".into(),
        ));
    }
    let mut bands = Vec::new();
    let mut hi = cutoff;
    while hi >= 1 {
        let lo = hi / 2;
        let mut max_abs = 0.0_f64;
        for n in lo + 1..=hi {
            max_abs = max_abs
                .max(fourier_coeff(f, n as i64, tol)?.norm())
                .max(fourier_coeff(f, -(n as i64), tol)?.norm());
        }
        bands.push(BandMax { lo, hi, max_abs });
        if lo == 0 {
            break;
        }
        hi = lo;
    }
    bands.reverse();
    Ok(bands)
}
