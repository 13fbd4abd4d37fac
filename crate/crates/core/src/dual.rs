//! Continuous functionals witnessing unboundedness of a set.
//!
//! A set `S` in the sequence space is bounded exactly when every continuous
//! functional is bounded on it. For an unbounded finite sample this module
//! constructs the converse witness: a representing vector `y` such that the
//! functional `phi = <., y>` takes strictly escalating values along a
//! subsequence of the sample. The general construction reuses the hump
//! machinery on the family of evaluation functionals `v -> <s, v>` (whose
//! operator norms are exactly the sample norms, with the normalized sample
//! element attaining them); a direct diagonal construction covers samples of
//! the form `x_n e_n`, where the representer can be written down explicitly.
//!
//! The guarantee is subsequence-level by design: the functional's values
//! escalate along the *selected* picks, not along every consecutive element
//! of the input. Whether a single continuous functional can always escalate
//! along an entire norm-increasing unbounded sample, with no passage to a
//! subsequence, is not something these constructions provide.

use serde::{Deserialize, Serialize};

use crate::certificate::{digest_inputs, Certificate, CertificateKind, Claim, Relation};
use crate::error::{Error, Result};
use crate::hump::{self, pow4, FamilySpec};
use crate::operator::{Operator, DEFAULT_SEED};
use crate::seq::SeqVector;

/// A finite ordered sample of set elements with cached norms.
#[derive(Debug, Clone, Serialize)]
pub struct SetSample {
    elements: Vec<SeqVector>,
    #[serde(skip)]
    norms: Vec<f64>,
}

impl SetSample {
    pub fn new(elements: Vec<SeqVector>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::InvalidInput("set sample must be nonempty".into()));
        }
        for e in &elements {
            e.validate_finite()?;
        }
        let norms = elements.iter().map(SeqVector::norm2).collect();
        Ok(SetSample { elements, norms })
    }

    pub fn elements(&self) -> &[SeqVector] {
        &self.elements
    }

    pub fn norms(&self) -> &[f64] {
        &self.norms
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// The constructed functional: its representing vector, the chosen
/// subsequence (1-based positions), and the certified value/norm trails.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualWitness {
    /// Representing vector `y`; the witness functional is `x -> <x, y>`.
    pub rep: SeqVector,
    /// 1-based positions of the selected subsequence.
    pub subsequence: Vec<usize>,
    /// `|<s_{n_k}, y>|` per selected element; strictly increasing.
    pub values: Vec<f64>,
    /// `||s_{n_k}||_2` per selected element; strictly increasing.
    pub norms: Vec<f64>,
}

#[derive(Serialize)]
struct DualDigestInputs<'a> {
    sample: &'a SetSample,
    depth: usize,
    tol: f64,
}

/// Builds a dual witness by running the hump construction on the evaluation
/// functionals of the sample.
///
/// Each selected element contributes its normalized self as the exact
/// maximizer, the hump point becomes the representer `y`, and the hump
/// ledger's image norms are exactly the functional values `|<s_{n_k}, y>|`.
pub fn dual_witness(
    sample: &SetSample,
    depth: usize,
    tol: f64,
) -> Result<(DualWitness, Certificate)> {
    let operators: Vec<Operator> = sample
        .elements
        .iter()
        .map(|s| Operator::Functional(s.clone()))
        .collect();
    let labels = (0..sample.len()).map(|i| format!("s-{}", i + 1)).collect();
    let family = FamilySpec::with_options(operators, Some(labels), tol, DEFAULT_SEED)?;
    let (witness, hump_cert) = hump::build_witness(&family, depth, tol)?;

    let values: Vec<f64> = witness.ledger.iter().map(|row| row.image_norm).collect();
    let norms: Vec<f64> = witness
        .selected
        .iter()
        .map(|&p| sample.norms[p - 1])
        .collect();
    let dual = DualWitness {
        rep: witness.point.clone(),
        subsequence: witness.selected.clone(),
        values,
        norms,
    };

    let digest = digest_inputs(&DualDigestInputs { sample, depth, tol });
    let mut claims = Vec::new();
    for (k, (&value, &norm)) in dual.values.iter().zip(&dual.norms).enumerate() {
        let level = k + 1;
        claims.push(Claim::check(
            format!("functional value at pick {level}: |<s, y>| >= (1/6) 4^-{level} ||s||_2"),
            value,
            Relation::Ge,
            (1.0 / 6.0) * pow4(-(level as i32)) * norm,
        ));
    }
    for k in 1..dual.values.len() {
        claims.push(Claim::check(
            format!("values strictly increase at pick {k}"),
            dual.values[k],
            Relation::Gt,
            dual.values[k - 1],
        ));
        claims.push(Claim::check(
            format!("norms strictly increase at pick {k}"),
            dual.norms[k],
            Relation::Gt,
            dual.norms[k - 1],
        ));
    }
    claims.push(Claim::check(
        "representer norm: ||y||_2 <= 1/3 + 1e-12",
        dual.rep.norm2(),
        Relation::Le,
        1.0 / 3.0 + hump::ROUNDING_SLACK,
    ));
    // The underlying hump inequalities ride along unchanged.
    claims.extend(hump_cert.claims);

    Ok((
        dual,
        Certificate::new(CertificateKind::Dual, claims, digest),
    ))
}

/// Direct witness for diagonal samples `s_n = x_n e_n` with `|x_n|` strictly
/// increasing and unbounded.
///
/// The k-th pick is the smallest index beyond the previous one whose value
/// reaches `k^2` and strictly beats the previous pick's value scaled by
/// `k/(k-1)` (so the reported values `|x_{n_k}|/k` increase strictly). The
/// representer puts `1/k` at coordinate `n_k`, hence
/// `||y||_2^2 <= sum 1/k^2 = pi^2/6` no matter how many picks are made.
pub fn diagonal_dual_witness(x_values: &[f64], count: usize) -> Result<DualWitness> {
    if count < 1 {
        return Err(Error::Precondition("pick count must be at least 1".into()));
    }
    for (i, w) in x_values.windows(2).enumerate() {
        // NaN also fails here: the comparison is written to reject it.
        if w[1].abs().partial_cmp(&w[0].abs()) != Some(std::cmp::Ordering::Greater) {
            return Err(Error::Precondition(format!(
                "|x_n| must increase strictly; broken between n = {} and n = {}",
                i + 1,
                i + 2
            )));
        }
    }

    let mut rep = SeqVector::zero();
    let mut subsequence = Vec::with_capacity(count);
    let mut values = Vec::with_capacity(count);
    let mut norms = Vec::with_capacity(count);
    let mut start = 0usize; // 0-based scan position
    for k in 1..=count {
        let kf = k as f64;
        let needed_square = kf * kf;
        let found = x_values[start..].iter().position(|&x| {
            let reaches_square = x.abs() >= needed_square;
            let beats_previous = match values.last() {
                // Strict increase of |x_{n_k}|/k against the previous pick.
                Some(&prev) => x.abs() / kf > prev,
                None => true,
            };
            reaches_square && beats_previous
        });
        let Some(offset) = found else {
            return Err(Error::SampleExhausted {
                picks: k - 1,
                requested: count,
            });
        };
        let n_k = start + offset + 1; // 1-based sequence position
        rep.set(n_k, 1.0 / kf);
        subsequence.push(n_k);
        values.push(x_values[n_k - 1].abs() / kf);
        norms.push(x_values[n_k - 1].abs());
        start = n_k;
    }

    Ok(DualWitness {
        rep,
        subsequence,
        values,
        norms,
    })
}

/// Per-coordinate bounds over a finite point sample in `R^d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoordinateBound {
    /// 1-based coordinate whose projection has the largest observed image.
    pub index: usize,
    /// `M_i = max |p_i|` over the sample.
    pub bounds: Vec<f64>,
    /// `sqrt(sum M_i^2)`; dominates every sampled euclidean norm.
    pub norm_bound: f64,
}

/// Finds the coordinate projection with the largest observed image and the
/// Pythagorean bound it yields: if every projection were bounded by `M_i`,
/// no sampled point could have norm beyond `sqrt(sum M_i^2)`.
pub fn coordinate_unbounded_direction(points: &[Vec<f64>]) -> Result<CoordinateBound> {
    let Some(first) = points.first() else {
        return Err(Error::Precondition("point sample must be nonempty".into()));
    };
    let dim = first.len();
    if dim == 0 {
        return Err(Error::Precondition(
            "points must live in dimension >= 1".into(),
        ));
    }
    if points.iter().any(|p| p.len() != dim) {
        return Err(Error::InvalidInput("points have mixed dimensions".into()));
    }

    let mut bounds = vec![0.0_f64; dim];
    for p in points {
        for (m, &c) in bounds.iter_mut().zip(p) {
            *m = m.max(c.abs());
        }
    }
    let mut index = 0usize;
    for (i, &m) in bounds.iter().enumerate() {
        if m > bounds[index] {
            index = i;
        }
    }
    // Summed in coordinate order; comparing against sample norms accumulated
    // in the same order keeps the domination exact in binary64.
    let norm_bound = bounds.iter().map(|m| m * m).sum::<f64>().sqrt();
    Ok(CoordinateBound {
        index: index + 1,
        bounds,
        norm_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_n_diagonal_sample_yields_increasing_values() {
        // s_n = sqrt(n) e_n for n <= 4096; norms 1 .. 64.
        let elements: Vec<SeqVector> = (1..=4096)
            .map(|n| SeqVector::from_entries([(n, (n as f64).sqrt())]))
            .collect();
        let sample = SetSample::new(elements).unwrap();
        let (w, cert) = dual_witness(&sample, 2, 1e-10).unwrap();
        // Chain: start at norm 1, next needs 4^3 = 64 = sqrt(4096).
        assert_eq!(w.subsequence, vec![1, 4096]);
        assert_eq!(w.values, vec![0.25, 4.0]);
        assert_eq!(w.norms, vec![1.0, 64.0]);
        assert!(
            cert.all_pass(),
            "failures: {:?}",
            cert.failures().collect::<Vec<_>>()
        );
    }

    #[test]
    fn bounded_sample_is_refused() {
        let elements: Vec<SeqVector> = (1..=16)
            .map(|n| SeqVector::from_entries([(n, 1.0)]))
            .collect();
        let sample = SetSample::new(elements).unwrap();
        let err = dual_witness(&sample, 2, 1e-10).unwrap_err();
        assert!(matches!(err, Error::FamilyUniformlyBounded { .. }));
    }

    #[test]
    fn squares_on_fourth_powers_sample() {
        // s_k = k^2 e_{k^4} for k <= 8; norms k^2, supports k^4.
        let elements: Vec<SeqVector> = (1..=8)
            .map(|k: usize| SeqVector::from_entries([(k.pow(4), (k * k) as f64)]))
            .collect();
        let sample = SetSample::new(elements).unwrap();
        let (w, cert) = dual_witness(&sample, 2, 1e-10).unwrap();
        assert_eq!(w.subsequence, vec![1, 8]);
        // Representer lives on coordinates 1 and 8^4 = 4096.
        assert!(w.rep.get(1) != 0.0);
        assert!(w.rep.get(4096) != 0.0);
        assert_eq!(w.values, vec![0.25, 4.0]);
        assert!(cert.all_pass());
    }

    #[test]
    fn diagonal_witness_on_sqrt_n_picks_fourth_powers() {
        let x: Vec<f64> = (1..=10_000).map(|n| (n as f64).sqrt()).collect();
        let w = diagonal_dual_witness(&x, 10).unwrap();
        let expected: Vec<usize> = (1..=10usize).map(|k| k.pow(4)).collect();
        assert_eq!(w.subsequence, expected);
        let values: Vec<f64> = (1..=10).map(|k| k as f64).collect();
        assert_eq!(w.values, values);
        for (k, &n_k) in w.subsequence.iter().enumerate() {
            assert_eq!(w.rep.get(n_k), 1.0 / (k as f64 + 1.0));
        }
    }

    #[test]
    fn diagonal_witness_on_linear_sequence() {
        let x: Vec<f64> = (1..=200).map(|n| n as f64).collect();
        let w = diagonal_dual_witness(&x, 4).unwrap();
        // Hand trace: n_1 = 1; then max(4, 2*1) -> 4; max(9, (3/2)*4) -> 9;
        // max(16, (4/3)*9) -> 16.
        assert_eq!(w.subsequence, vec![1, 4, 9, 16]);
        assert_eq!(w.values, vec![1.0, 2.0, 3.0, 4.0]);
    }

    #[test]
    fn diagonal_witness_single_pick() {
        let x: Vec<f64> = (1..=50).map(|n| (n as f64).sqrt()).collect();
        let w = diagonal_dual_witness(&x, 1).unwrap();
        assert_eq!(w.subsequence, vec![1]);
        assert_eq!(w.values, vec![1.0]);
    }

    #[test]
    fn diagonal_witness_reports_exhaustion() {
        let x: Vec<f64> = (1..=100).map(|n| (n as f64).sqrt()).collect();
        // Pick 4 needs sqrt(n) >= 16, i.e. n = 256 > 100.
        let err = diagonal_dual_witness(&x, 10).unwrap_err();
        assert_eq!(
            err,
            Error::SampleExhausted {
                picks: 3,
                requested: 10
            }
        );
    }

    #[test]
    fn diagonal_witness_requires_strict_increase() {
        let err = diagonal_dual_witness(&[1.0, 1.0, 2.0], 2).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn diagonal_representer_is_square_summable() {
        let x: Vec<f64> = (1..=100_000).map(|n| (n as f64).sqrt()).collect();
        let w = diagonal_dual_witness(&x, 17).unwrap();
        let norm_sq = w.rep.norm2().powi(2);
        assert!(norm_sq <= std::f64::consts::PI.powi(2) / 6.0 + 1e-9);
        assert!(w.values.windows(2).all(|p| p[1] > p[0]));
        for (k, &v) in w.values.iter().enumerate() {
            assert!(v >= (k + 1) as f64);
        }
    }

    #[test]
    fn coordinate_bound_single_active_coordinate() {
        let points: Vec<Vec<f64>> = (1..=100).map(|k| vec![k as f64, 0.0]).collect();
        let cb = coordinate_unbounded_direction(&points).unwrap();
        assert_eq!(cb.index, 1);
        assert_eq!(cb.bounds, vec![100.0, 0.0]);
        assert_eq!(cb.norm_bound, 100.0);
    }

    #[test]
    fn coordinate_bound_three_four_five() {
        let points = vec![vec![3.0, 0.0], vec![0.0, 4.0]];
        let cb = coordinate_unbounded_direction(&points).unwrap();
        assert_eq!(cb.index, 2);
        assert_eq!(cb.norm_bound, 5.0);
    }

    #[test]
    fn coordinate_bound_ties_break_to_smallest_index() {
        let points = vec![vec![2.0, 2.0]];
        let cb = coordinate_unbounded_direction(&points).unwrap();
        assert_eq!(cb.index, 1);
    }

    #[test]
    fn coordinate_bound_dominates_sampled_norms() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let points: Vec<Vec<f64>> = (0..50)
            .map(|_| (0..3).map(|_| rng.gen_range(-10.0..10.0)).collect())
            .collect();
        let cb = coordinate_unbounded_direction(&points).unwrap();
        for p in &points {
            let norm = p.iter().map(|c| c * c).sum::<f64>().sqrt();
            assert!(norm <= cb.norm_bound);
        }
    }

    #[test]
    fn mixed_dimension_points_are_invalid() {
        let err = coordinate_unbounded_direction(&[vec![1.0], vec![1.0, 2.0]]).unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)));
    }
}
