//! Machine-checkable certificates.
//!
//! A [`Certificate`] is a finite list of numeric claims `lhs REL rhs`, each
//! carrying its computed pass/fail bit. The record is self-contained: the
//! pass bits can be recomputed from the stored numbers alone, with no access
//! to the objects the claims were derived from. An FNV-1a digest of the
//! canonical input serialization ties a certificate to the inputs it was
//! produced from.

use serde::{Deserialize, Serialize};

/// What kind of construction a certificate vouches for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateKind {
    Hump,
    Dual,
    SeriesConvergence,
    SeriesDivergence,
}

/// Comparison relation of a claim.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = ">")]
    Gt,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "<")]
    Lt,
}

impl Relation {
    pub fn holds(self, lhs: f64, rhs: f64) -> bool {
        match self {
            Relation::Ge => lhs >= rhs,
            Relation::Gt => lhs > rhs,
            Relation::Le => lhs <= rhs,
            Relation::Lt => lhs < rhs,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Ge => ">=",
            Relation::Gt => ">",
            Relation::Le => "<=",
            Relation::Lt => "<",
        }
    }
}

/// One verified inequality.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Claim {
    pub description: String,
    pub lhs: f64,
    pub rhs: f64,
    pub relation: Relation,
    pub pass: bool,
}

impl Claim {
    pub fn check(description: impl Into<String>, lhs: f64, relation: Relation, rhs: f64) -> Self {
        Claim {
            description: description.into(),
            lhs,
            rhs,
            relation,
            pass: relation.holds(lhs, rhs),
        }
    }
}

/// A self-contained record of the inequalities backing one construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub claims: Vec<Claim>,
    pub inputs_digest: String,
}

impl Certificate {
    pub fn new(kind: CertificateKind, claims: Vec<Claim>, inputs_digest: String) -> Self {
        Certificate {
            kind,
            claims,
            inputs_digest,
        }
    }

    /// True when every claim passed.
    pub fn all_pass(&self) -> bool {
        self.claims.iter().all(|c| c.pass)
    }

    /// Claims that failed, for reporting.
    pub fn failures(&self) -> impl Iterator<Item = &Claim> {
        self.claims.iter().filter(|c| !c.pass)
    }

    /// Recomputes every pass bit from the stored numbers and compares with
    /// the recorded bits. A tampered certificate fails this check.
    pub fn recheck(&self) -> bool {
        self.claims
            .iter()
            .all(|c| c.relation.holds(c.lhs, c.rhs) == c.pass)
    }
}

/// 64-bit FNV-1a over a byte string.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    let mut hash = OFFSET;
    for &b in bytes {
        hash ^= u64::from(b);
        hash = hash.wrapping_mul(PRIME);
    }
    hash
}

/// Digest of the canonical JSON serialization of `inputs`, rendered as
/// 16 lowercase hex digits. Struct fields serialize in declaration order and
/// maps in key order, so the digest is stable across runs and platforms.
pub fn digest_inputs<T: Serialize>(inputs: &T) -> String {
    let canonical = serde_json::to_string(inputs).expect("certificate inputs must serialize");
    format!("{:016x}", fnv1a64(canonical.as_bytes()))
}
