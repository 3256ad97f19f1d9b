//! Cyclic nested lattice codes.
//!
//! A nested lattice code is the set of coset leaders of `Λ_c / Λ_s` taken
//! from the zero-centered Voronoi region of the shaping lattice `Λ_s`. This
//! crate decides when such a code is a cyclic group generated by a single
//! column of the coding generator, constructs integer nesting matrices `W`
//! of arbitrary codebook size `M`, repairs their last row (by solving a
//! linear Diophantine equation) so the code is isomorphic to a product of
//! cyclic groups, and verifies every claimed group property exhaustively at
//! desk scale.
//!
//! Module map:
//! * [`exact`] — arbitrary-precision integer/rational matrix arithmetic
//! * [`lattice`] — lattice values, membership, nesting matrix `W`
//! * [`quantize`] — nearest-point quantizers (`Z^n`, `A_2`, `E_8`, generic CVP)
//! * [`nested`] — rectangular encoding, codebook enumeration, indexing
//! * [`cyclic`] — cyclicity tests (gcd of adjugate columns) and cyclic encoding
//! * [`design`] — structured `W` designs and isomorphism last-row repair
//! * [`iso`] — group addition and exhaustive isomorphism verification
//! * [`plot`] — SVG/CSV figure emission
//! * [`cli`] — command-line front end

pub mod cli;
pub mod cyclic;
pub mod design;
pub mod exact;
pub mod iso;
pub mod lattice;
pub mod nested;
pub mod plot;
pub mod quantize;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is rank deficient")]
    RankDeficient,
    #[error("lattices are not nested: H_c*G_s has a non-integer entry")]
    NotNested,
    #[error("encoding diagonal product {product} does not equal codebook size {m}")]
    DiagonalProductMismatch { product: i64, m: i64 },
    #[error("info vector coordinate {coord} = {value} outside [0, {bound})")]
    OutOfRangeInfo { coord: usize, value: i64, bound: i64 },
    #[error("point is not a codeword")]
    NotACodeword,
    #[error("encoding is not bijective: info vectors {0:?} and {1:?} collide")]
    BijectivityViolation(Vec<i64>, Vec<i64>),
    #[error("linear Diophantine equation has no solution")]
    NoSolution,
    #[error("coefficient list is empty")]
    EmptyCoefficients,
    #[error("zero vector is not a valid input")]
    ZeroVector,
    #[error("coordinate {0} is not cyclic")]
    NotCyclic(usize),
    #[error("multiplier {k} outside [0, {m})")]
    MultiplierOutOfRange { k: i64, m: i64 },
    #[error("dimension {n} exceeds enumeration guard {max}")]
    DimensionTooLarge { n: usize, max: usize },
    #[error("enumeration would visit {candidates} candidates (guard {max})")]
    EnumerationTooLarge { candidates: u128, max: u128 },
    #[error("codebook size {m} exceeds guard {max}")]
    CodebookTooLarge { m: i64, max: i64 },
    #[error("gcd condition violated: gcd = {0}")]
    GcdCondition(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
