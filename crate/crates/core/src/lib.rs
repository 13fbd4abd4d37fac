//! Constructive boundedness workbench for sequence spaces.
//!
//! Everything here turns an existence statement about bounded linear maps
//! into a finite computation with a machine-checkable record:
//!
//! * [`hump`] builds a single point whose images under a norm-escalating
//!   subsequence of an operator family grow without bound, with every
//!   inequality along the way certified;
//! * [`dual`] produces continuous functionals witnessing unboundedness of a
//!   set of sequences, including the explicit diagonal construction;
//! * [`series`] transforms convergent series to converge slower and
//!   divergent series to diverge slower, and certifies that nothing
//!   square-dominating the harmonic tail is square-summable;
//! * [`fourier`] measures coefficient decay of periodic functions against
//!   their smoothness.
//!
//! All computations run inside a finite coordinate truncation, so the
//! certified inequalities are exact finite arithmetic (binary64 rounding is
//! the only slack anywhere). Types are immutable values and operations are
//! pure functions; everything is safe to share across threads.

pub mod certificate;
pub mod dual;
pub mod error;
pub mod fourier;
pub mod hump;
pub mod operator;
pub mod quadrature;
pub mod seq;
pub mod series;

pub use certificate::{Certificate, CertificateKind, Claim, Relation};
pub use error::{Error, Result};
pub use operator::{NormMethod, NormResult, Operator};
pub use seq::{Lp, SeqVector};
