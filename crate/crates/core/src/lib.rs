//! Exact-arithmetic Gaudin model toolkit for the classical Lie algebras
//! B_r, C_r, D_r.
//!
//! The crate computes the explicit solutions of the Bethe ansatz equations
//! on V_λ ⊗ V_{ω₁} at z = (0, 1), rebuilds them through the Wronskian
//! reproduction procedure, builds the corresponding Bethe vectors inside
//! explicit matrix representations, and checks completeness and spectra of
//! the Gaudin Hamiltonians, all over exact rationals wherever the data is
//! rational.
//!
//! Core polynomial and linear algebra are generic over the scalar type
//! (anything field-like through `num-traits`); concrete aliases for the
//! exact rational instantiation live at the crate root.

pub mod bae;
pub mod closedform;
pub mod deform;
pub mod diffop;
pub mod linalg;
pub mod poly;
pub mod repr;
pub mod reproduction;
pub mod rootsys;
pub mod scalar;
pub mod tower;

use serde::Serialize;

/// Exact rational scalar used throughout the exact paths.
pub type Rat = num_rational::BigRational;
/// Arbitrary-precision integer backing [`Rat`].
pub type Int = num_bigint::BigInt;
/// Double-precision complex scalar used by the numeric paths.
pub type C64 = num_complex::Complex<f64>;

/// Polynomial over exact rationals, the default instantiation of [`poly::Poly`].
pub type RatPoly = poly::Poly<Rat>;
/// Quasi-polynomial x^a·p(x) over exact rationals.
pub type RatQuasiPoly = poly::QuasiPoly<Rat>;
/// Rational function over exact rationals.
pub type RatFn = poly::RationalFn<Rat>;

pub use bae::{BAEInstance, CriticalTuple, GenericityReport};
pub use closedform::LengthLabel;
pub use rootsys::{Family, LieDatum, Weight};

/// Convenience: integer → exact rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// Convenience: p/q → exact rational.
pub fn ratio(p: i64, q: i64) -> Rat {
    Rat::new(Int::from(p), Int::from(q))
}

#[derive(Debug, Clone, thiserror::Error, Serialize)]
pub enum Error {
    #[error("family {family} does not support rank {rank}")]
    UnsupportedRank { family: String, rank: usize },
    #[error("simple-root index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("weight is not dominant integral: {0}")]
    NonDominant(String),
    #[error("evaluation points must be pairwise distinct")]
    CoincidentPoints,
    #[error("length {0} is not admissible for this weight")]
    NotAdmissible(String),
    #[error("no polynomial solution of the Wronskian equation{}", fmt_dir(.direction))]
    NoSolution { direction: Option<usize> },
    #[error("Wronskian equation has a non-trivial kernel; solution not unique")]
    NonUnique,
    #[error("genericity failed: {0}")]
    GenericityFailure(GenericityReport),
    #[error("forbidden coincidence: {0}")]
    ForbiddenCoincidence(String),
    #[error("tuple polynomial y_{index} vanishes at evaluation point {point}")]
    PoleAtPoint { index: usize, point: String },
    #[error("reproduction chain blocked at step {step} (direction {direction}): {guard}")]
    ChainBlocked {
        step: usize,
        direction: usize,
        guard: String,
    },
    #[error("degree bookkeeping mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("weight not reachable inside tensor powers of the vector representation: {0}")]
    NotReachable(String),
    #[error("tensor power bound exceeded: need {need}, bound {bound}")]
    BoundExceeded { need: usize, bound: usize },
    #[error("operation not defined for this family: {0}")]
    UnsupportedFamily(String),
    #[error("case excluded: {0}")]
    ExcludedCase(String),
    #[error("representations carry different Cartan data")]
    DatumMismatch,
    #[error("quadratic extension tower limited to {max} radicals, needed {need}")]
    TowerDepth { need: usize, max: usize },
    #[error("Newton iteration did not converge: {0}")]
    NewtonDivergence(String),
    #[error("two tracked roots collided: {0}")]
    PathCollision(String),
    #[error("invalid configuration: {0}")]
    BadConfig(String),
    #[error("formula denominator vanishes: {0}")]
    DegenerateFormula(String),
}

fn fmt_dir(d: &Option<usize>) -> String {
    match d {
        Some(i) => format!(" in direction {i}"),
        None => String::new(),
    }
}

pub type Result<T> = std::result::Result<T, Error>;
