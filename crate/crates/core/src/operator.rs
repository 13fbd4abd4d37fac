//! Bounded linear operators on truncated sequence space.
//!
//! Three variants cover everything the witness constructions need: diagonal
//! operators, rank-one functionals represented by a vector, and dense
//! matrices on a truncation of dimension `d`. Diagonal and functional norms
//! are exact; matrix norms come from seeded power iteration on the Gram
//! matrix, so results are reproducible for a fixed seed.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seq::SeqVector;

/// Default tolerance for power iteration when the caller does not care.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Default seed for the power-iteration start vector.
pub const DEFAULT_SEED: u64 = 0;
/// Iteration budget before power iteration reports a stall.
pub const DEFAULT_MAX_ITERS: usize = 100_000;

/// A bounded linear map on finite-support sequences.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Operator {
    /// `(Tv)_i = coeffs_i * v_i`.
    Diagonal(SeqVector),
    /// `Tv = <rep, v>`, emitted as a 1-support vector at index 1.
    Functional(SeqVector),
    /// Row-major dense action restricted to indices `1..=dim`.
    Matrix { rows: Vec<SeqVector>, dim: usize },
}

/// How an operator norm was obtained, and how trustworthy the digits are.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormMethod {
    ExactDiagonal,
    ExactFunctional,
    PowerIteration,
}

/// An operator norm value together with its provenance.
///
/// `residual` is 0 for the exact methods and the final iterate movement for
/// power iteration; on success it is at most the configured tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormResult {
    pub value: f64,
    pub method: NormMethod,
    pub residual: f64,
}

impl Operator {
    pub fn diagonal<I: IntoIterator<Item = (usize, f64)>>(coeffs: I) -> Self {
        Operator::Diagonal(SeqVector::from_entries(coeffs))
    }

    pub fn functional<I: IntoIterator<Item = (usize, f64)>>(rep: I) -> Self {
        Operator::Functional(SeqVector::from_entries(rep))
    }

    /// Dense matrix from row slices; `rows[i]` holds row `i + 1`.
    pub fn matrix_from_rows(rows: &[&[f64]], dim: usize) -> Self {
        let rows = rows
            .iter()
            .map(|row| SeqVector::from_entries(row.iter().enumerate().map(|(j, &v)| (j + 1, v))))
            .collect();
        Operator::Matrix { rows, dim }
    }

    /// Checks that every stored coefficient is finite.
    pub fn validate_finite(&self) -> Result<()> {
        match self {
            Operator::Diagonal(v) | Operator::Functional(v) => v.validate_finite(),
            Operator::Matrix { rows, .. } => rows.iter().try_for_each(SeqVector::validate_finite),
        }
    }

    /// Applies the operator. Matrix inputs must stay inside the truncation.
    pub fn apply(&self, v: &SeqVector) -> Result<SeqVector> {
        match self {
            Operator::Diagonal(coeffs) => Ok(SeqVector::from_entries(
                v.iter().map(|(i, x)| (i, coeffs.get(i) * x)),
            )),
            Operator::Functional(rep) => Ok(SeqVector::from_entries([(1, rep.inner(v))])),
            Operator::Matrix { rows, dim } => {
                if let Some(max) = v.max_index() {
                    if max > *dim {
                        return Err(Error::IndexOutOfTruncation {
                            index: max,
                            dim: *dim,
                        });
                    }
                }
                Ok(SeqVector::from_entries(
                    rows.iter()
                        .enumerate()
                        .map(|(i, row)| (i + 1, row.inner(v))),
                ))
            }
        }
    }

    /// Operator norm with the default seed and iteration budget.
    pub fn operator_norm(&self, tol: f64) -> Result<NormResult> {
        self.operator_norm_seeded(tol, DEFAULT_SEED, DEFAULT_MAX_ITERS)
    }

    /// Operator norm: exact for diagonal and functional variants, top
    /// singular value by power iteration on `T^T T` for matrices.
    pub fn operator_norm_seeded(
        &self,
        tol: f64,
        seed: u64,
        max_iters: usize,
    ) -> Result<NormResult> {
        if tol <= 0.0 {
            return Err(Error::Precondition("tolerance must be positive".into()));
        }
        match self {
            Operator::Diagonal(coeffs) => Ok(NormResult {
                value: coeffs.norm(crate::seq::Lp::LInf),
                method: NormMethod::ExactDiagonal,
                residual: 0.0,
            }),
            Operator::Functional(rep) => Ok(NormResult {
                value: rep.norm2(),
                method: NormMethod::ExactFunctional,
                residual: 0.0,
            }),
            Operator::Matrix { rows, dim } => {
                let (sigma, _, residual) = power_iteration(rows, *dim, tol, seed, max_iters)?;
                Ok(NormResult {
                    value: sigma,
                    method: NormMethod::PowerIteration,
                    residual,
                })
            }
        }
    }

    /// A unit vector `x` with `||Tx|| >= quality * ||T||_op`.
    ///
    /// Exact variants attain quality 1: the diagonal returns the basis vector
    /// of the largest coefficient (smallest index on ties) and the functional
    /// returns its normalized representer. Matrices return the power-iteration
    /// top right-singular direction and fail with [`Error::QualityNotMet`]
    /// only when the direction certifiably misses the bound against a lower
    /// bound on the norm.
    pub fn near_maximizer(&self, quality: f64, tol: f64) -> Result<SeqVector> {
        self.near_maximizer_seeded(quality, tol, DEFAULT_SEED, DEFAULT_MAX_ITERS)
    }

    pub fn near_maximizer_seeded(
        &self,
        quality: f64,
        tol: f64,
        seed: u64,
        max_iters: usize,
    ) -> Result<SeqVector> {
        if !(0.0 < quality && quality < 1.0) {
            return Err(Error::Precondition(
                "quality must lie strictly between 0 and 1".into(),
            ));
        }
        match self {
            Operator::Diagonal(coeffs) => {
                let (argmax, _) = coeffs.iter().fold((0usize, 0.0_f64), |(bi, bv), (i, v)| {
                    if v.abs() > bv {
                        (i, v.abs())
                    } else {
                        (bi, bv)
                    }
                });
                if argmax == 0 {
                    return Err(Error::ZeroOperator);
                }
                Ok(SeqVector::basis(argmax))
            }
            Operator::Functional(rep) => rep.normalized(),
            Operator::Matrix { rows, dim } => {
                let (sigma, direction, _) = power_iteration(rows, *dim, tol, seed, max_iters)?;
                if sigma == 0.0 {
                    return Err(Error::ZeroOperator);
                }
                // Any unit image norm and any column norm are certified
                // lower bounds on the operator norm.
                let achieved = self.apply(&direction)?.norm2();
                let lower = norm_lower_bound(rows, *dim).max(achieved);
                if achieved < quality * lower {
                    return Err(Error::QualityNotMet {
                        achieved,
                        required: quality * lower,
                    });
                }
                Ok(direction)
            }
        }
    }
}

/// Largest column norm of the matrix: a certified lower bound on the top
/// singular value.
fn norm_lower_bound(rows: &[SeqVector], dim: usize) -> f64 {
    let mut best = 0.0_f64;
    for j in 1..=dim {
        let col_sq: f64 = rows.iter().map(|row| row.get(j).powi(2)).sum();
        best = best.max(col_sq.sqrt());
    }
    best
}

/// `A^T w` for a row-major matrix.
fn apply_transpose(rows: &[SeqVector], w: &SeqVector) -> SeqVector {
    let mut out = SeqVector::zero();
    for (i, wi) in w.iter() {
        if let Some(row) = rows.get(i - 1) {
            out = out.add_scaled(wi, row);
        }
    }
    out
}

/// Power iteration on the Gram matrix `A^T A` from a seeded random start.
///
/// Returns the top singular value estimate, the corresponding unit right
/// direction, and the final iterate movement. The Gram eigenvalue is
/// nonnegative, so the iterate does not oscillate in sign and the movement
/// `||v_{k+1} - v_k||` is a faithful convergence measure.
fn power_iteration(
    rows: &[SeqVector],
    dim: usize,
    tol: f64,
    seed: u64,
    max_iters: usize,
) -> Result<(f64, SeqVector, f64)> {
    use rand::SeedableRng;
    use rand_distr::{Distribution, StandardNormal};

    if dim == 0 || rows.iter().all(|r| r.is_zero()) {
        return Ok((0.0, SeqVector::basis(1), 0.0));
    }
    for row in rows {
        if let Some(max) = row.max_index() {
            if max > dim {
                return Err(Error::IndexOutOfTruncation { index: max, dim });
            }
        }
        row.validate_finite()?;
    }

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let draw_unit = |rng: &mut rand_chacha::ChaCha8Rng| -> Result<SeqVector> {
        let v = SeqVector::from_entries((1..=dim).map(|i| {
            let x: f64 = StandardNormal.sample(rng);
            (i, x)
        }));
        v.normalized()
    };

    let mut v = draw_unit(&mut rng)?;
    // A start vector annihilated by A is useless; redraw a few times.
    for _ in 0..4 {
        let image = matvec(rows, &v);
        if image.norm2() > 0.0 {
            break;
        }
        v = draw_unit(&mut rng)?;
    }

    let mut residual = f64::INFINITY;
    for iter in 0..max_iters {
        let gram_v = apply_transpose(rows, &matvec(rows, &v));
        let gram_norm = gram_v.norm2();
        if !gram_norm.is_finite() {
            return Err(Error::OverflowDetected(format!(
                "power iteration iterate became non-finite at step {iter}"
            )));
        }
        if gram_norm == 0.0 {
            // v is in the null space of A^T A; the image tells the norm.
            return Ok((matvec(rows, &v).norm2(), v, 0.0));
        }
        let next = gram_v.scale(1.0 / gram_norm);
        residual = next.sub(&v).norm2();
        v = next;
        if residual < tol {
            let sigma = matvec(rows, &v).norm2();
            return Ok((sigma, v, residual));
        }
    }
    Err(Error::PowerIterationStall {
        residual,
        tol,
        iters: max_iters,
    })
}

fn matvec(rows: &[SeqVector], v: &SeqVector) -> SeqVector {
    SeqVector::from_entries(
        rows.iter()
            .enumerate()
            .map(|(i, row)| (i + 1, row.inner(v))),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq::Lp;

    fn sv(pairs: &[(usize, f64)]) -> SeqVector {
        SeqVector::from_entries(pairs.iter().copied())
    }

    /// Closed-form top singular value of a 2x2 matrix, used as an oracle.
    fn svd2_top(a: f64, b: f64, c: f64, d: f64) -> f64 {
        let s = a * a + b * b + c * c + d * d;
        let det = a * d - b * c;
        (0.5 * (s + (s * s - 4.0 * det * det).max(0.0).sqrt())).sqrt()
    }

    #[test]
    fn diagonal_apply_scales_coordinates() {
        let t = Operator::diagonal([(1, 1.0), (2, 64.0)]);
        let out = t.apply(&SeqVector::basis(2)).unwrap();
        assert_eq!(out, sv(&[(2, 64.0)]));
    }

    #[test]
    fn identity_diagonal_fixes_vectors() {
        let t = Operator::diagonal([(1, 1.0), (2, 1.0), (3, 1.0)]);
        let v = sv(&[(1, 0.25), (3, -7.0)]);
        assert_eq!(t.apply(&v).unwrap(), v);
    }

    #[test]
    fn functional_applies_as_inner_product() {
        let y = sv(&[(1, 2.0), (4, -1.0)]);
        let t = Operator::Functional(y.clone());
        let v = sv(&[(1, 3.0), (4, 1.0)]);
        assert_eq!(t.apply(&v).unwrap(), sv(&[(1, 5.0)]));
    }

    #[test]
    fn matrix_apply_and_truncation_error() {
        let t = Operator::matrix_from_rows(&[&[0.0, 2.0], &[0.0, 0.0]], 2);
        let out = t.apply(&SeqVector::basis(2)).unwrap();
        assert_eq!(out, sv(&[(1, 2.0)]));
        let err = t.apply(&SeqVector::basis(3)).unwrap_err();
        assert_eq!(err, Error::IndexOutOfTruncation { index: 3, dim: 2 });
    }

    #[test]
    fn diagonal_norm_is_max_coefficient() {
        let t = Operator::diagonal([(1, 1.0), (2, 3.0), (3, 2.0)]);
        let n = t.operator_norm(1e-12).unwrap();
        assert_eq!(n.value, 3.0);
        assert_eq!(n.method, NormMethod::ExactDiagonal);
        assert_eq!(n.residual, 0.0);
    }

    #[test]
    fn functional_norm_attains_duality() {
        let t = Operator::functional([(1, 3.0), (2, 4.0)]);
        let n = t.operator_norm(1e-12).unwrap();
        assert_eq!(n.value, 5.0);
        assert_eq!(n.method, NormMethod::ExactFunctional);
    }

    #[test]
    fn shift_matrix_norm_matches_svd_oracle() {
        let t = Operator::matrix_from_rows(&[&[0.0, 2.0], &[0.0, 0.0]], 2);
        let n = t.operator_norm(1e-12).unwrap();
        assert_eq!(n.method, NormMethod::PowerIteration);
        assert!(n.residual <= 1e-12);
        let oracle = svd2_top(0.0, 2.0, 0.0, 0.0);
        assert!(
            (n.value - oracle).abs() <= 1e-10 * oracle,
            "{} vs {oracle}",
            n.value
        );
    }

    #[test]
    fn zero_matrix_norm_is_zero() {
        let t = Operator::matrix_from_rows(&[&[0.0, 0.0], &[0.0, 0.0]], 2);
        assert_eq!(t.operator_norm(1e-10).unwrap().value, 0.0);
    }

    #[test]
    fn power_iteration_stalls_on_tiny_budget() {
        let t = Operator::matrix_from_rows(&[&[1.0, 0.4], &[0.3, 0.9]], 2);
        let err = t.operator_norm_seeded(1e-14, 0, 1).unwrap_err();
        assert!(matches!(err, Error::PowerIterationStall { iters: 1, .. }));
    }

    #[test]
    fn near_maximizer_diagonal_picks_argmax_basis() {
        let t = Operator::diagonal([(1, 1.0), (2, 64.0)]);
        let x = t.near_maximizer(0.5, 1e-10).unwrap();
        assert_eq!(x, SeqVector::basis(2));
        let norm = t.operator_norm(1e-10).unwrap().value;
        assert!(t.apply(&x).unwrap().norm2() >= 0.5 * norm);
    }

    #[test]
    fn near_maximizer_functional_is_normalized_representer() {
        let t = Operator::functional([(1, 3.0), (2, 4.0)]);
        let x = t.near_maximizer(0.5, 1e-10).unwrap();
        // 3/5 and 4/5 are exact in binary64.
        assert_eq!(x, sv(&[(1, 0.6), (2, 0.8)]));
        let attained = t.apply(&x).unwrap().norm2();
        assert!((attained - 5.0).abs() <= 1e-14);
    }

    #[test]
    fn near_maximizer_identity_matrix_any_unit_vector() {
        let t = Operator::matrix_from_rows(&[&[1.0, 0.0], &[0.0, 1.0]], 2);
        let x = t.near_maximizer(0.5, 1e-10).unwrap();
        assert!((x.norm2() - 1.0).abs() < 1e-12);
        assert!(t.apply(&x).unwrap().norm2() >= 0.5);
    }

    #[test]
    fn near_maximizer_rejects_zero_operator() {
        assert_eq!(
            Operator::diagonal([])
                .near_maximizer(0.5, 1e-10)
                .unwrap_err(),
            Error::ZeroOperator
        );
        assert_eq!(
            Operator::functional([])
                .near_maximizer(0.5, 1e-10)
                .unwrap_err(),
            Error::ZeroOperator
        );
    }

    #[test]
    fn exact_norms_are_homogeneous() {
        let d = Operator::diagonal([(1, 1.5), (2, -3.25), (9, 2.0)]);
        let f = Operator::functional([(1, 0.7), (3, -0.2)]);
        for c in [0.5, -2.0, 13.37] {
            for t in [&d, &f] {
                let scaled = match t {
                    Operator::Diagonal(v) => Operator::Diagonal(v.scale(c)),
                    Operator::Functional(v) => Operator::Functional(v.scale(c)),
                    _ => unreachable!(),
                };
                let lhs = scaled.operator_norm(1e-10).unwrap().value;
                let rhs = c.abs() * t.operator_norm(1e-10).unwrap().value;
                assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs());
            }
        }
    }

    #[test]
    fn norm_lower_bound_is_a_lower_bound() {
        let rows = vec![sv(&[(1, 1.0), (2, 2.0)]), sv(&[(1, -1.0)])];
        let t = Operator::Matrix {
            rows: rows.clone(),
            dim: 2,
        };
        let lb = norm_lower_bound(&rows, 2);
        let norm = t.operator_norm(1e-12).unwrap().value;
        assert!(lb <= norm + 1e-12);
        assert!(lb > 0.0);
    }

    #[test]
    fn power_iteration_overflow_is_detected() {
        // Entries near 1e200 square to infinity inside the Gram product.
        let t = Operator::matrix_from_rows(&[&[1e200, 0.0], &[0.0, 1e200]], 2);
        let err = t.operator_norm(1e-10).unwrap_err();
        assert!(matches!(err, Error::OverflowDetected(_)));
    }

    #[test]
    fn linf_on_negative_coeffs() {
        let t = Operator::diagonal([(1, -5.0), (2, 4.0)]);
        assert_eq!(t.operator_norm(1e-10).unwrap().value, 5.0);
        let v = match &t {
            Operator::Diagonal(c) => c.norm(Lp::LInf),
            _ => unreachable!(),
        };
        assert_eq!(v, 5.0);
    }
}
