//! JSON payload types emitted by the `nilorbit` binary, for consumers that
//! want to parse its output back into typed values.

use serde::{Deserialize, Serialize};

use nilorbit::cones::{ChamberReport, CharacterVector};
use nilorbit::orbits::OrbitLabel;

pub const SCHEMA_VERSION: u32 = 1;

/// Top-level shape of every JSON output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub schema_version: u32,
    pub command: String,
    pub result: T,
}

/// Payloads that have no single domain type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetPayload {
    pub orbits: Vec<OrbitLabel>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimPayload {
    pub orbit: OrbitLabel,
    pub dimension: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeQuery<C> {
    pub cone: C,
    pub point: Option<CharacterVector>,
    pub contains: Option<bool>,
    pub interior: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChamberPayload {
    pub point: CharacterVector,
    pub sampled: bool,
    pub report: ChamberReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralizerPayload {
    pub orbit: OrbitLabel,
    pub centralizer_dim: usize,
    pub algebra_dim: usize,
    pub orbit_dim: usize,
}

