//! Brute-force checks independent of the combinatorial rules: explicit
//! nilpotent matrices, flag counts over finite fields, and exact
//! centralizer dimensions.

pub mod exact;
pub mod field;
pub mod flags;
pub mod nilpotent;

pub use exact::{centralizer_dim, jordan_type};
pub use flags::{
    count_compatible_flags, degree_estimate, enumerate_compatible_flags, twin_flags, Flag,
    FlagCountReport, DEFAULT_PRIMES,
};
pub use nilpotent::{canonical_nilpotent, CanonicalNilpotent, Field, MatrixOverField};
