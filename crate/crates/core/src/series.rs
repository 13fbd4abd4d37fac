//! Convergence-divergence boundary transforms for positive series.
//!
//! Three certified constructions:
//!
//! * every convergent positive series admits a transform that still
//!   converges after its terms are blown up by an unbounded factor
//!   (`y_n = 1/sqrt(r_{n-1})`, bounded by telescoping),
//! * every divergent positive series admits a transform that still diverges
//!   after its terms are damped to zero (`y_n = 1/s_n`, certified by a
//!   direct partial-sum scan),
//! * no sequence square-dominating the harmonic tail is square-summable;
//!   the scan produces a [`DivergenceCertificate`] for any requested bar.
//!
//! The third scan replaces an asymptotic hypothesis by a caller-supplied
//! pointwise bound `y_n^2 >= c/n` beyond a threshold index, checked on every
//! scanned term: a finite machine cannot check a limit, but it can check the
//! bound it actually uses.

use serde::{Deserialize, Serialize};

use crate::certificate::{Certificate, CertificateKind, Claim, Relation};
use crate::error::{Error, Result};

/// Relative slack for the pointwise hypothesis comparison, absorbing the few
/// ulps of rounding in `y_n^2` versus `c/n` without masking any real
/// violation (true failures decay by whole factors, not ulps).
pub const HYPOTHESIS_REL_SLACK: f64 = 1e-12;

/// A positive-term series: an explicit finite list (treated as the whole
/// series) or a named generator with closed-form tails where available.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesSpec {
    /// The list is the entire series; remainders are suffix sums.
    Explicit(Vec<f64>),
    /// `x_n = ratio^n`, n >= 1.
    Geometric { ratio: f64 },
    /// `x_n = value`.
    Constant { value: f64 },
    /// `x_n = 1/n`.
    OneOverN,
    /// `x_n = 1/sqrt(n)`.
    OneOverSqrtN,
    /// `x_n = 1/n^2`.
    OneOverNSquared,
}

impl SeriesSpec {
    pub fn explicit(terms: Vec<f64>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidInput(
                "explicit series must be nonempty".into(),
            ));
        }
        if terms.iter().any(|&t| !t.is_finite() || t <= 0.0) {
            return Err(Error::InvalidInput(
                "series terms must be strictly positive and finite".into(),
            ));
        }
        Ok(SeriesSpec::Explicit(terms))
    }

    pub fn geometric(ratio: f64) -> Result<Self> {
        if !ratio.is_finite() || ratio <= 0.0 {
            return Err(Error::InvalidInput(
                "geometric ratio must be positive and finite".into(),
            ));
        }
        Ok(SeriesSpec::Geometric { ratio })
    }

    pub fn constant(value: f64) -> Result<Self> {
        if !value.is_finite() || value <= 0.0 {
            return Err(Error::InvalidInput(
                "constant term must be positive and finite".into(),
            ));
        }
        Ok(SeriesSpec::Constant { value })
    }

    /// n-th term (1-based); `None` past the end of an explicit list.
    pub fn term(&self, n: u64) -> Option<f64> {
        debug_assert!(n >= 1);
        match self {
            SeriesSpec::Explicit(terms) => terms.get(n as usize - 1).copied(),
            SeriesSpec::Geometric { ratio } => Some(ratio.powi(n.min(i32::MAX as u64) as i32)),
            SeriesSpec::Constant { value } => Some(*value),
            SeriesSpec::OneOverN => Some(1.0 / n as f64),
            SeriesSpec::OneOverSqrtN => Some(1.0 / (n as f64).sqrt()),
            SeriesSpec::OneOverNSquared => Some(1.0 / (n as f64 * n as f64)),
        }
    }

    /// Number of terms for explicit lists, `None` for generators.
    pub fn term_count(&self) -> Option<u64> {
        match self {
            SeriesSpec::Explicit(terms) => Some(terms.len() as u64),
            _ => None,
        }
    }

    pub fn is_convergent(&self) -> bool {
        match self {
            SeriesSpec::Explicit(_) => true,
            SeriesSpec::Geometric { ratio } => *ratio < 1.0,
            SeriesSpec::Constant { .. } | SeriesSpec::OneOverN | SeriesSpec::OneOverSqrtN => false,
            SeriesSpec::OneOverNSquared => true,
        }
    }

    /// Tail `r_m = sum_{k > m} x_k` where finite.
    pub fn remainder(&self, m: u64) -> Result<f64> {
        match self {
            SeriesSpec::Explicit(terms) => {
                let m = m as usize;
                // Backward accumulation keeps small tail terms from being
                // absorbed by large early ones.
                Ok(terms.iter().skip(m).rev().sum())
            }
            SeriesSpec::Geometric { ratio } if *ratio < 1.0 => {
                Ok(ratio.powi(m as i32 + 1) / (1.0 - ratio))
            }
            SeriesSpec::OneOverNSquared => Ok(trigamma(m as f64 + 1.0)),
            other => Err(Error::NotConvergent(format!(
                "{other:?} has no finite tail"
            ))),
        }
    }

    pub fn name(&self) -> String {
        match self {
            SeriesSpec::Explicit(terms) => format!("explicit[{}]", terms.len()),
            SeriesSpec::Geometric { ratio } => format!("geometric({ratio})"),
            SeriesSpec::Constant { value } => format!("constant({value})"),
            SeriesSpec::OneOverN => "one-over-n".into(),
            SeriesSpec::OneOverSqrtN => "one-over-sqrt-n".into(),
            SeriesSpec::OneOverNSquared => "one-over-n-squared".into(),
        }
    }
}

/// `psi'(x) = sum_{k >= 0} 1/(x+k)^2` by shift-and-asymptotic-series;
/// realizes the `1/n^2` tail exactly to machine precision.
fn trigamma(mut x: f64) -> f64 {
    let mut acc = 0.0;
    while x < 20.0 {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    acc + inv
        + 0.5 * inv2
        + inv * inv2 * (1.0 / 6.0 - inv2 * (1.0 / 30.0 - inv2 * (1.0 / 42.0 - inv2 * (1.0 / 30.0))))
}

/// Result of the convergence-preserving blow-up transform.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AccelerationReport {
    /// `y_n = 1/sqrt(r_{n-1})`; monotone, unbounded over the full series.
    pub y: Vec<f64>,
    /// Partial sums of `x_n y_n`.
    pub transformed_partials: Vec<f64>,
    /// `2 (sqrt(r_0) - sqrt(r_N))`, the telescoped bound for this horizon.
    pub telescoped_bound: f64,
    /// `2 sqrt(r_0)`, the horizon-free bound.
    pub global_bound: f64,
}

impl AccelerationReport {
    /// Certificate view of the report; claims use only stored numbers.
    pub fn to_certificate(&self, inputs_digest: String) -> Certificate {
        let last = self.transformed_partials.last().copied().unwrap_or(0.0);
        let min_y_step = self
            .y
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(f64::INFINITY, f64::min);
        // A single term has no steps; monotonicity is vacuous.
        let min_y_step = if min_y_step.is_finite() {
            min_y_step
        } else {
            0.0
        };
        let claims = vec![
            Claim::check(
                "transformed sum within telescoped bound (1e-12 slack on the global scale)",
                last,
                Relation::Le,
                self.telescoped_bound + 1e-12 * self.global_bound,
            ),
            Claim::check(
                "telescoped bound within global bound",
                self.telescoped_bound,
                Relation::Le,
                self.global_bound,
            ),
            Claim::check(
                "transform terms nondecreasing (min step)",
                min_y_step,
                Relation::Ge,
                0.0,
            ),
        ];
        Certificate::new(CertificateKind::SeriesConvergence, claims, inputs_digest)
    }
}

/// Blows up a convergent series by the unbounded factor `y_n = 1/sqrt(r_{n-1})`
/// while keeping every transformed partial sum below `2 sqrt(r_0)`.
///
/// Term by term, `x_n / sqrt(r_{n-1}) <= 2 (sqrt(r_{n-1}) - sqrt(r_n))`, so
/// the transformed sum telescopes. Explicit lists are their own series:
/// remainders come from suffix sums and the horizon is capped at the length.
pub fn accelerate_convergent(x: &SeriesSpec, horizon: u64) -> Result<AccelerationReport> {
    if horizon < 1 {
        return Err(Error::Precondition("horizon must be at least 1".into()));
    }
    if !x.is_convergent() {
        return Err(Error::NotConvergent(x.name()));
    }
    let n_terms = match x.term_count() {
        Some(len) => horizon.min(len),
        None => horizon,
    };

    // r_0 .. r_N; explicit tails by backward suffix accumulation.
    let remainders: Vec<f64> = match x {
        SeriesSpec::Explicit(terms) => {
            let take = n_terms as usize;
            let mut suffix = vec![0.0; terms.len() + 1];
            for i in (0..terms.len()).rev() {
                suffix[i] = suffix[i + 1] + terms[i];
            }
            suffix.truncate(take + 1);
            suffix
        }
        _ => (0..=n_terms)
            .map(|m| x.remainder(m))
            .collect::<Result<Vec<_>>>()?,
    };

    let mut y = Vec::with_capacity(n_terms as usize);
    let mut transformed_partials = Vec::with_capacity(n_terms as usize);
    let mut partial = 0.0;
    for n in 1..=n_terms {
        let r_prev = remainders[n as usize - 1];
        if !r_prev.is_finite() || r_prev <= 0.0 {
            return Err(Error::NotConvergent(format!(
                "tail r_{} is not positive; cannot transform",
                n - 1
            )));
        }
        let y_n = 1.0 / r_prev.sqrt();
        let term = x.term(n).expect("horizon capped at series length");
        partial += term * y_n;
        y.push(y_n);
        transformed_partials.push(partial);
    }

    let r_last = remainders[n_terms as usize];
    Ok(AccelerationReport {
        y,
        transformed_partials,
        telescoped_bound: 2.0 * (remainders[0].sqrt() - r_last.max(0.0).sqrt()),
        global_bound: 2.0 * remainders[0].sqrt(),
    })
}

/// A finite, recomputable record that a scanned partial sum reached a target.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DivergenceCertificate {
    pub target: f64,
    /// First index where the scanned partial sum reached the target.
    pub index: u64,
    pub partial_sum: f64,
    /// Pointwise comparison constant `c` (square-domination scans only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub comparison_constant: Option<f64>,
    /// Threshold index from which the pointwise bound was enforced.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold_index: Option<u64>,
}

impl DivergenceCertificate {
    /// Recomputes the damped partial sum `sum x_n / s_n` up to the stored
    /// index and checks it against the stored numbers (1e-9 relative).
    pub fn verify_decelerated(&self, x: &SeriesSpec) -> bool {
        let mut s = 0.0;
        let mut acc = 0.0;
        for n in 1..=self.index {
            let Some(term) = x.term(n) else { return false };
            s += term;
            acc += term / s;
        }
        relative_close(acc, self.partial_sum, 1e-9) && self.partial_sum >= self.target
    }

    /// Recomputes `sum y_n^2` up to the stored index, re-enforcing the
    /// pointwise bound, and checks the stored numbers (1e-9 relative).
    pub fn verify_square_scan(&self, y: impl Fn(u64) -> f64) -> bool {
        let (Some(c), Some(n0)) = (self.comparison_constant, self.threshold_index) else {
            return false;
        };
        let mut acc = 0.0;
        for n in 1..=self.index {
            let sq = y(n) * y(n);
            if n >= n0 && sq < (c / n as f64) * (1.0 - HYPOTHESIS_REL_SLACK) {
                return false;
            }
            acc += sq;
        }
        relative_close(acc, self.partial_sum, 1e-9) && self.partial_sum >= self.target
    }

    /// Certificate view; claims use only stored numbers.
    pub fn to_certificate(&self, inputs_digest: String) -> Certificate {
        let claims = vec![Claim::check(
            format!("partial sum reaches target at index {}", self.index),
            self.partial_sum,
            Relation::Ge,
            self.target,
        )];
        Certificate::new(CertificateKind::SeriesDivergence, claims, inputs_digest)
    }
}

fn relative_close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1.0)
}

/// Damps a divergent series by `y_n = 1/s_n` (so `y_n -> 0`) and scans until
/// the transformed partial sum reaches `target`.
///
/// Termination for a true divergent series is a block argument: every
/// doubling of the partial sum contributes at least 1/2 to the transformed
/// sum. The scan stops with [`Error::HorizonExceeded`] when the term budget
/// runs out first.
pub fn decelerate_divergent(
    x: &SeriesSpec,
    target: f64,
    budget: u64,
) -> Result<(Vec<f64>, DivergenceCertificate)> {
    decelerate_divergent_with_progress(x, target, budget, u64::MAX, &mut |_, _| {})
}

/// As [`decelerate_divergent`], reporting `(scanned, partial_sum)` to `sink`
/// every `every` terms.
pub fn decelerate_divergent_with_progress(
    x: &SeriesSpec,
    target: f64,
    budget: u64,
    every: u64,
    sink: &mut dyn FnMut(u64, f64),
) -> Result<(Vec<f64>, DivergenceCertificate)> {
    if x.is_convergent() {
        return Err(Error::NotDivergent(x.name()));
    }
    if budget < 1 {
        return Err(Error::Precondition("term budget must be at least 1".into()));
    }
    let mut s = 0.0;
    let mut acc = 0.0;
    let mut y = Vec::new();
    for n in 1..=budget {
        let term = x.term(n).expect("generators never run out");
        s += term;
        acc += term / s;
        y.push(1.0 / s);
        if every != u64::MAX && n % every == 0 {
            sink(n, acc);
        }
        if acc >= target {
            let certificate = DivergenceCertificate {
                target,
                index: n,
                partial_sum: acc,
                comparison_constant: None,
                threshold_index: None,
            };
            return Ok((y, certificate));
        }
    }
    Err(Error::HorizonExceeded {
        budget,
        scanned: budget,
        partial_sum: acc,
    })
}

/// `y_n = sqrt(x_n)`: still unbounded, but negligible next to `x`.
pub fn slower_divergent_sequence(x: &[f64]) -> Vec<f64> {
    x.iter().map(|&v| v.sqrt()).collect()
}

/// Scans `sum y_n^2` until it reaches `target`, enforcing the pointwise
/// bound `y_n^2 >= c/n` on every scanned index at or past `n0`.
///
/// A sequence that square-dominates the harmonic terms this way cannot be
/// square-summable: the certificate exhibits the index where the square sum
/// passed any requested bar. The scan always runs through `n0` so the bound
/// is actually exercised (`target = 0` yields index `n0`).
pub fn q3_divergence_certificate(
    y: impl Fn(u64) -> f64,
    c: f64,
    n0: u64,
    target: f64,
    budget: u64,
) -> Result<DivergenceCertificate> {
    q3_divergence_certificate_with_progress(y, c, n0, target, budget, u64::MAX, &mut |_, _| {})
}

pub fn q3_divergence_certificate_with_progress(
    y: impl Fn(u64) -> f64,
    c: f64,
    n0: u64,
    target: f64,
    budget: u64,
    every: u64,
    sink: &mut dyn FnMut(u64, f64),
) -> Result<DivergenceCertificate> {
    if !c.is_finite() || c <= 0.0 {
        return Err(Error::Precondition(
            "comparison constant must be positive".into(),
        ));
    }
    if n0 < 1 {
        return Err(Error::Precondition(
            "threshold index must be at least 1".into(),
        ));
    }
    let mut acc = 0.0;
    for n in 1..=budget {
        let y_n = y(n);
        let sq = y_n * y_n;
        if n >= n0 {
            let floor = (c / n as f64) * (1.0 - HYPOTHESIS_REL_SLACK);
            if sq < floor {
                return Err(Error::HypothesisViolated {
                    n,
                    lhs: sq,
                    rhs: c / n as f64,
                });
            }
        }
        acc += sq;
        if every != u64::MAX && n % every == 0 {
            sink(n, acc);
        }
        if acc >= target && n >= n0 {
            return Ok(DivergenceCertificate {
                target,
                index: n,
                partial_sum: acc,
                comparison_constant: Some(c),
                threshold_index: Some(n0),
            });
        }
    }
    Err(Error::HorizonExceeded {
        budget,
        scanned: budget,
        partial_sum: acc,
    })
}
