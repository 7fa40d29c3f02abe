//! Sizes of deletion balls `D_t(X)`: the set of distinct subsequences left
//! after deleting exactly `t` symbols from a word `X`.
//!
//! Counts are generic over [`Count`]; [`BigCount`] is the arbitrary-precision
//! instantiation used by the convenience functions.

pub mod balanced;
pub mod bounds;
pub mod count;
pub mod error;
pub mod exact;
pub mod ops;
pub mod word;

pub use balanced::{BalancedEvaluator, BalancedParams, TupleAlphabet, WSolution};
pub use bounds::{BoundColumn, BoundReport, ReportSubject, Reporter};
pub use count::{binomial, BinomialTable, Count};
pub use error::{Error, Result};
pub use exact::{count_canonical_recursive, count_exact, enumerate_ball, BallSizeQuery};
pub use ops::{balancing_chain, ChainStep, Permutation};
pub use word::{RunProfile, Word};

/// Arbitrary-precision nonnegative count.
pub type BigCount = num_bigint::BigUint;

/// Balanced-word evaluator over [`BigCount`].
pub type Evaluator = BalancedEvaluator<BigCount>;
