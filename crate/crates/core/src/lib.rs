//! Combinatorics of nilpotent orbits in the classical Lie algebras and of
//! their Q-factorial terminalizations: orbit classification, induction and
//! reduction steps, marked Dynkin diagrams and their twists, Levi normalizer
//! quotients, chamber structure of nef and movable cones, and a finite-field
//! brute-force oracle for Springer fibres.

pub mod cones;
pub mod error;
pub mod induction;
pub mod levi;
pub mod markings;
pub mod oracle;
pub mod orbits;
pub mod partition;
pub mod rootsys;

pub use error::{Error, Result};
