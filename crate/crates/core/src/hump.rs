//! Gliding-hump witness construction.
//!
//! Given a finite, ordered sample of operators whose norms grow fast enough,
//! the construction produces a single point whose images under a selected
//! subsequence escalate: each selected operator sees an image norm at least
//! `(1/6) 4^{-n}` times its operator norm, and both image norms and operator
//! norms increase strictly along the subsequence. Every inequality used on
//! the way is recomputed into a [`Certificate`] that is independent of the
//! numbers cached in the witness.
//!
//! The construction is exact finite arithmetic: the witness point is a
//! finite-support vector, the "tail" that an infinite construction would
//! bound by `(1/3) 4^{-n}` times the operator norm is here a finite sum
//! checked directly against that same bound.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::certificate::{digest_inputs, Certificate, CertificateKind, Claim, Relation};
use crate::error::{Error, Result};
use crate::operator::{NormResult, Operator, DEFAULT_MAX_ITERS, DEFAULT_SEED, DEFAULT_TOL};
use crate::seq::SeqVector;

/// Maximizer quality used by the construction: each selected operator gets a
/// unit vector carrying at least half its norm.
pub const HALF: f64 = 0.5;

/// Rounding slack for claims that are exact in real arithmetic.
pub const ROUNDING_SLACK: f64 = 1e-12;

/// Relative budget when comparing stored ledger numbers to recomputation.
pub const LEDGER_REL_BUDGET: f64 = 1e-9;

/// Exact power of four (powers of two carry no rounding).
pub(crate) fn pow4(e: i32) -> f64 {
    2.0_f64.powi(2 * e)
}

/// A choice of sign for one term of the witness sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_i8(match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        })
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        match i8::deserialize(deserializer)? {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(D::Error::custom(format!(
                "sign must be +1 or -1, got {other}"
            ))),
        }
    }
}

/// A finite ordered sample of operators with cached norms.
///
/// Norms are computed once at construction (seeded, so reproducible) and
/// reused by subsequence selection; verification recomputes them through
/// fresh [`Operator::operator_norm_seeded`] calls.
#[derive(Debug, Clone, Serialize)]
pub struct FamilySpec {
    operators: Vec<Operator>,
    labels: Vec<String>,
    #[serde(skip)]
    norms: Vec<NormResult>,
    #[serde(skip)]
    tol: f64,
    #[serde(skip)]
    seed: u64,
}

impl FamilySpec {
    pub fn new(operators: Vec<Operator>) -> Result<Self> {
        Self::with_options(operators, None, DEFAULT_TOL, DEFAULT_SEED)
    }

    /// Full constructor: optional provenance labels (generated as `op-i`
    /// when absent), power-iteration tolerance, and start seed.
    pub fn with_options(
        operators: Vec<Operator>,
        labels: Option<Vec<String>>,
        tol: f64,
        seed: u64,
    ) -> Result<Self> {
        if operators.is_empty() {
            return Err(Error::InvalidInput(
                "operator family must be nonempty".into(),
            ));
        }
        let labels = match labels {
            Some(labels) => {
                if labels.len() != operators.len() {
                    return Err(Error::InvalidInput(format!(
                        "{} labels for {} operators",
                        labels.len(),
                        operators.len()
                    )));
                }
                labels
            }
            None => (0..operators.len()).map(|i| format!("op-{i}")).collect(),
        };
        for op in &operators {
            op.validate_finite()?;
        }
        let norms = operators
            .iter()
            .map(|op| op.operator_norm_seeded(tol, seed, DEFAULT_MAX_ITERS))
            .collect::<Result<Vec<_>>>()?;
        for (nr, label) in norms.iter().zip(&labels) {
            if !nr.value.is_finite() {
                return Err(Error::OverflowDetected(format!(
                    "operator norm of {label} is not finite"
                )));
            }
        }
        Ok(FamilySpec {
            operators,
            labels,
            norms,
            tol,
            seed,
        })
    }

    pub fn operators(&self) -> &[Operator] {
        &self.operators
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn norms(&self) -> &[NormResult] {
        &self.norms
    }

    pub fn len(&self) -> usize {
        self.operators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operators.is_empty()
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

/// One row of certified quantities for the n-th selected operator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LedgerRow {
    /// `||T_n||_op`
    pub op_norm: f64,
    /// `||T_n x||`
    pub image_norm: f64,
    /// `(1/6) 4^{-n} ||T_n||_op`
    pub lower_bound: f64,
}

/// The assembled witness: subsequence, signs, maximizers, the point, and
/// the per-level certified quantities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HumpWitness {
    /// 1-based positions into the family, in selection order.
    pub selected: Vec<usize>,
    pub signs: Vec<Sign>,
    pub maximizers: Vec<SeqVector>,
    /// `x = sum_k signs[k] * 4^{-(k+1)} * maximizers[k]`.
    pub point: SeqVector,
    pub ledger: Vec<LedgerRow>,
}

/// Greedy left-to-right scan for the first norm growth chain of length
/// `depth`: 1-based positions `i_1 < i_2 < ...` with
/// `||T_{i_{n+1}}|| >= 4^{2n+1} ||T_{i_n}||`, starting from the first
/// operator of nonzero norm.
pub fn select_subsequence(family: &FamilySpec, depth: usize) -> Result<Vec<usize>> {
    if depth < 1 {
        return Err(Error::Precondition(
            "subsequence depth must be at least 1".into(),
        ));
    }
    let mut chain: Vec<usize> = Vec::with_capacity(depth);
    let mut current = 0.0_f64;
    for (idx0, nr) in family.norms().iter().enumerate() {
        if chain.is_empty() {
            if nr.value > 0.0 {
                chain.push(idx0 + 1);
                current = nr.value;
            }
        } else {
            let required = pow4(2 * chain.len() as i32 + 1) * current;
            if nr.value >= required {
                chain.push(idx0 + 1);
                current = nr.value;
            }
        }
        if chain.len() == depth {
            return Ok(chain);
        }
    }
    Err(Error::FamilyUniformlyBounded {
        requested: depth,
        reached: chain.len(),
    })
}

/// Picks the sign maximizing `||prefix + sign * new_term||` (ties to plus).
///
/// The winner always satisfies `||prefix + sign * new_term|| >= ||new_term||`:
/// by the triangle inequality at least one branch does, so the larger one
/// does. If rounding ever defeats that this fails hard rather than guess.
pub fn choose_sign(prefix: &SeqVector, new_term: &SeqVector) -> Result<Sign> {
    let target = new_term.norm2();
    let plus = prefix.add(new_term).norm2();
    let minus = prefix.sub(new_term).norm2();
    let (sign, achieved) = if plus >= minus {
        (Sign::Plus, plus)
    } else {
        (Sign::Minus, minus)
    };
    if achieved >= target {
        Ok(sign)
    } else {
        Err(Error::InternalInvariantViolation(format!(
            "neither sign satisfies ||prefix +/- term|| >= ||term|| \
             (plus branch {plus}, minus branch {minus}, term norm {target})"
        )))
    }
}

/// `sum_{k=lo..=hi} signs[k] 4^{-k} vectors[k]` accumulated in ascending
/// order (1-based `k`). Construction and verification share this exact
/// summation order so their floats agree bitwise.
fn signed_partial(vectors: &[SeqVector], signs: &[Sign], lo: usize, hi: usize) -> SeqVector {
    let mut acc = SeqVector::zero();
    for k in lo..=hi {
        acc = acc.add_scaled(signs[k - 1].factor() * pow4(-(k as i32)), &vectors[k - 1]);
    }
    acc
}

/// Runs the full construction: subsequence selection, half-maximizers, the
/// sign recursion, witness assembly, and certification.
pub fn build_witness(
    family: &FamilySpec,
    depth: usize,
    tol: f64,
) -> Result<(HumpWitness, Certificate)> {
    if depth < 2 {
        return Err(Error::Precondition(
            "witness depth must be at least 2 (monotonicity needs two levels)".into(),
        ));
    }
    let selected = select_subsequence(family, depth)?;
    let ops: Vec<&Operator> = selected.iter().map(|&p| &family.operators[p - 1]).collect();
    let norms: Vec<f64> = selected
        .iter()
        .map(|&p| family.norms[p - 1].value)
        .collect();
    for (&p, &norm) in selected.iter().zip(&norms) {
        if !norm.is_finite() {
            return Err(Error::OverflowDetected(format!(
                "norm of selected operator at position {p} is not finite"
            )));
        }
    }

    let maximizers = ops
        .iter()
        .map(|op| op.near_maximizer_seeded(HALF, tol, family.seed, DEFAULT_MAX_ITERS))
        .collect::<Result<Vec<_>>>()?;

    // images[n-1][k-1] = T_n x_k
    let images: Vec<Vec<SeqVector>> = ops
        .iter()
        .map(|op| {
            maximizers
                .iter()
                .map(|x| op.apply(x))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    // Sign recursion: sigma(n) is chosen against the already-fixed prefix of
    // images under T_n, so the level-n head dominates its own new term.
    let mut signs: Vec<Sign> = Vec::with_capacity(depth);
    for n in 1..=depth {
        let prefix = signed_partial(&images[n - 1], &signs, 1, n - 1);
        let candidate = images[n - 1][n - 1].scale(pow4(-(n as i32)));
        signs.push(choose_sign(&prefix, &candidate)?);
    }

    let point = signed_partial(&maximizers, &signs, 1, depth);
    point.validate_finite()?;

    let mut ledger = Vec::with_capacity(depth);
    for n in 1..=depth {
        let image_norm = ops[n - 1].apply(&point)?.norm2();
        if !image_norm.is_finite() {
            return Err(Error::OverflowDetected(format!(
                "image norm at level {n} is not finite"
            )));
        }
        ledger.push(LedgerRow {
            op_norm: norms[n - 1],
            image_norm,
            lower_bound: (1.0 / 6.0) * pow4(-(n as i32)) * norms[n - 1],
        });
    }

    let witness = HumpWitness {
        selected,
        signs,
        maximizers,
        point,
        ledger,
    };
    let certificate = verify_witness(family, &witness);
    Ok((witness, certificate))
}

#[derive(Serialize)]
struct HumpDigestInputs<'a> {
    family: &'a FamilySpec,
    depth: usize,
    tol: f64,
    seed: u64,
}

/// Recomputes every certified quantity from scratch (fresh apply and norm
/// calls; none of the witness's cached numbers are trusted) and reports
/// pass/fail per claim. Structural defects (bad indices, mismatched lengths)
/// become failing claims rather than panics.
pub fn verify_witness(family: &FamilySpec, witness: &HumpWitness) -> Certificate {
    let digest = digest_inputs(&HumpDigestInputs {
        family,
        depth: witness.selected.len(),
        tol: family.tol,
        seed: family.seed,
    });
    let claims = match certify_claims(family, witness) {
        Ok(claims) => claims,
        Err(structural) => vec![structural],
    };
    Certificate::new(CertificateKind::Hump, claims, digest)
}

fn rel_dev(a: f64, b: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    (a - b).abs() / a.abs().max(b.abs())
}

fn certify_claims(family: &FamilySpec, w: &HumpWitness) -> std::result::Result<Vec<Claim>, Claim> {
    let depth = w.selected.len();
    let lens = [
        w.selected.len(),
        w.signs.len(),
        w.maximizers.len(),
        w.ledger.len(),
    ];
    let len_claim = Claim::check(
        "witness component lengths agree (max vs min)",
        *lens.iter().max().unwrap() as f64,
        Relation::Le,
        *lens.iter().min().unwrap() as f64,
    );
    if !len_claim.pass {
        return Err(len_claim);
    }
    if depth == 0 {
        return Err(Claim::check(
            "witness has at least one level",
            depth as f64,
            Relation::Ge,
            1.0,
        ));
    }
    let max_pos = *w.selected.iter().max().unwrap();
    let min_pos = *w.selected.iter().min().unwrap();
    let bounds_claim = Claim::check(
        "selected positions lie within the family (1-based)",
        max_pos as f64,
        Relation::Le,
        family.len() as f64,
    );
    if !bounds_claim.pass || min_pos == 0 {
        return Err(if min_pos == 0 {
            Claim::check(
                "selected positions are 1-based (min position >= 1)",
                min_pos as f64,
                Relation::Ge,
                1.0,
            )
        } else {
            bounds_claim
        });
    }

    let ops: Vec<&Operator> = w
        .selected
        .iter()
        .map(|&p| &family.operators[p - 1])
        .collect();
    // Fresh norm computations; the witness's cached values are checked
    // against these, never substituted for them.
    let norms: Vec<f64> = match ops
        .iter()
        .map(|op| {
            op.operator_norm_seeded(family.tol, family.seed, DEFAULT_MAX_ITERS)
                .map(|nr| nr.value)
        })
        .collect::<Result<Vec<_>>>()
    {
        Ok(norms) => norms,
        Err(e) => {
            return Err(Claim::check(
                format!("operator norms recomputable ({e})"),
                1.0,
                Relation::Le,
                0.0,
            ))
        }
    };
    let images: Vec<Vec<SeqVector>> = match ops
        .iter()
        .map(|op| {
            w.maximizers
                .iter()
                .map(|x| op.apply(x))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()
    {
        Ok(images) => images,
        Err(e) => {
            return Err(Claim::check(
                format!("maximizer images computable ({e})"),
                1.0,
                Relation::Le,
                0.0,
            ))
        }
    };

    let mut claims = vec![len_claim, bounds_claim];

    // Point-level checks.
    claims.push(Claim::check(
        "witness point norm: ||x||_2 <= 1/3 + 1e-12",
        w.point.norm2(),
        Relation::Le,
        1.0 / 3.0 + ROUNDING_SLACK,
    ));
    let assembled = signed_partial(&w.maximizers, &w.signs, 1, depth);
    claims.push(Claim::check(
        "witness point equals signed combination of scaled maximizers (within 1e-12)",
        w.point.sub(&assembled).norm2(),
        Relation::Le,
        ROUNDING_SLACK,
    ));

    // Per-level checks.
    let mut image_norms = Vec::with_capacity(depth);
    for n in 1..=depth {
        let image_norm = match ops[n - 1].apply(&w.point) {
            Ok(img) => img.norm2(),
            Err(e) => {
                return Err(Claim::check(
                    format!("point image computable at level {n} ({e})"),
                    1.0,
                    Relation::Le,
                    0.0,
                ))
            }
        };
        image_norms.push(image_norm);

        claims.push(Claim::check(
            format!("maximizer {n} is a unit vector (| ||x_{n}||_2 - 1 | within 1e-12)"),
            (w.maximizers[n - 1].norm2() - 1.0).abs(),
            Relation::Le,
            ROUNDING_SLACK,
        ));
        claims.push(Claim::check(
            format!("half-maximizer quality at level {n}: ||T_{n} x_{n}|| >= 0.5 ||T_{n}||_op"),
            images[n - 1][n - 1].norm2(),
            Relation::Ge,
            HALF * norms[n - 1],
        ));
        let head = signed_partial(&images[n - 1], &w.signs, 1, n);
        claims.push(Claim::check(
            format!("sign recursion at level {n}: ||head_{n}|| >= 4^-{n} ||T_{n} x_{n}||"),
            head.norm2(),
            Relation::Ge,
            pow4(-(n as i32)) * images[n - 1][n - 1].norm2(),
        ));
        let tail = signed_partial(&images[n - 1], &w.signs, n + 1, depth);
        claims.push(Claim::check(
            format!("finite tail bound at level {n}: ||tail_{n}|| <= (1/3) 4^-{n} ||T_{n}||_op"),
            tail.norm2(),
            Relation::Le,
            (1.0 / 3.0) * pow4(-(n as i32)) * norms[n - 1],
        ));
        claims.push(Claim::check(
            format!(
                "escalation lower bound at level {n}: ||T_{n} x|| >= (1/6) 4^-{n} ||T_{n}||_op"
            ),
            image_norm,
            Relation::Ge,
            (1.0 / 6.0) * pow4(-(n as i32)) * norms[n - 1],
        ));

        // Stored ledger row must match the recomputation.
        if let Some(row) = w.ledger.get(n - 1) {
            let dev = rel_dev(row.op_norm, norms[n - 1])
                .max(rel_dev(row.image_norm, image_norm))
                .max(rel_dev(
                    row.lower_bound,
                    (1.0 / 6.0) * pow4(-(n as i32)) * norms[n - 1],
                ));
            claims.push(Claim::check(
                format!("stored ledger row {n} matches recomputation (max relative deviation)"),
                dev,
                Relation::Le,
                LEDGER_REL_BUDGET,
            ));
        }
    }

    // Cross-level monotonicity and the chain that forces it.
    for n in 1..depth {
        claims.push(Claim::check(
            format!(
                "growth chain at level {n}: ||T_{}||_op >= 4^{} ||T_{n}||_op",
                n + 1,
                2 * n + 1
            ),
            norms[n],
            Relation::Ge,
            pow4(2 * n as i32 + 1) * norms[n - 1],
        ));
        claims.push(Claim::check(
            format!(
                "image norm strictly increases at level {n}: ||T_{} x|| > ||T_{n} x||",
                n + 1
            ),
            image_norms[n],
            Relation::Gt,
            image_norms[n - 1],
        ));
        claims.push(Claim::check(
            format!(
                "operator norm strictly increases at level {n}: ||T_{}||_op > ||T_{n}||_op",
                n + 1
            ),
            norms[n],
            Relation::Gt,
            norms[n - 1],
        ));
        claims.push(Claim::check(
            format!(
                "chain link A at level {n}: (1/6) 4^-{} ||T_{}||_op >= (1/6) 4^{n} ||T_{n}||_op",
                n + 1,
                n + 1
            ),
            (1.0 / 6.0) * pow4(-(n as i32 + 1)) * norms[n],
            Relation::Ge,
            (1.0 / 6.0) * pow4(n as i32) * norms[n - 1],
        ));
        claims.push(Claim::check(
            format!("chain link B at level {n}: (1/6) 4^{n} ||T_{n}||_op > (1/3) ||T_{n}||_op"),
            (1.0 / 6.0) * pow4(n as i32) * norms[n - 1],
            Relation::Gt,
            (1.0 / 3.0) * norms[n - 1],
        ));
        claims.push(Claim::check(
            format!("chain link C at level {n}: (1/3) ||T_{n}||_op >= ||T_{n} x||"),
            (1.0 / 3.0) * norms[n - 1],
            Relation::Ge,
            image_norms[n - 1],
        ));
    }

    Ok(claims)
}
