//! Exact computation of the tensor-power growth invariant γ for the signed
//! permutation modules `M^(λ|μ)` of the symmetric group in characteristic p.
//!
//! The closed formula ([`gamma_closed`]) is cross-checked against a
//! brute-force orbit decomposition of the restriction to the rank-k
//! subgroup generated by disjoint p-cycles, a counting route for the same
//! decomposition, the dimension of the non-p-faithful part, and exact
//! simulation of tensor-power core growth.
//!
//! All counts are arbitrary-precision naturals. The tensor-power semiring
//! is generic over its coefficient type ([`semiring::Coefficient`]).

pub mod blockset;
pub mod combinatorics;
pub mod decomposition;
pub mod error;
pub mod gamma;
pub mod semiring;
pub mod tabloid;

pub use blockset::BlockSet;
pub use combinatorics::{class_signatures, multinomial, validate_shape, ClassSignature, SignedShape};
pub use decomposition::{
    constrained_count, decompose_bruteforce, decompose_fast, dim_non_faithful, pair_decompose, SummandDecomposition,
};
pub use error::{Error, Result};
pub use gamma::{cross_check, gamma_class, gamma_closed, gamma_sn, CrossCheckOptions, GammaReport};
pub use semiring::{c_series, gamma_estimate, FormalSum};
pub use tabloid::{
    apply_signed, constituting_set, enumerate_tabloids, orbit, sort_sign, BlockSystem, Permutation, Sign,
    SignedTabloid, Tabloid,
};

/// Exact nonnegative integer used for every count.
pub type Natural = num_bigint::BigUint;

/// Exact rational used for growth-rate ratios.
pub type Rational = num_rational::BigRational;

/// Tensor-power simulation with exact coefficients.
pub type ExactFormalSum = semiring::FormalSum<Natural>;

/// Tensor-power simulation with machine coefficients, for small powers.
pub type MachineFormalSum = semiring::FormalSum<u128>;
