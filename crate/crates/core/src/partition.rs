//! Integer partitions (Jordan types) and the dominance order.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A partition stored as weakly descending positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Sorts the given parts descending. Zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} contains a zero part"
            )));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { parts })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// `[k^m]`
    pub fn rectangle(k: u32, m: usize) -> Self {
        if k == 0 {
            return Self::empty();
        }
        Self { parts: vec![k; m] }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Distinct parts with multiplicities, largest first: `[d_1^{s_1}, ...]`.
    pub fn groups(&self) -> Vec<(u32, usize)> {
        self.parts
            .iter()
            .chunk_by(|&&p| p)
            .into_iter()
            .map(|(p, g)| (p, g.count()))
            .collect()
    }

    pub fn multiplicity(&self, part: u32) -> usize {
        self.parts.iter().filter(|&&p| p == part).count()
    }

    /// Column lengths of the Young diagram.
    pub fn transpose(&self) -> Partition {
        let cols = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=cols)
            .map(|c| self.parts.iter().filter(|&&p| p >= c).count() as u32)
            .collect();
        Partition { parts }
    }

    /// Only even parts, each with even multiplicity. The empty partition is not very even.
    pub fn is_very_even(&self) -> bool {
        !self.is_empty()
            && self
                .groups()
                .iter()
                .all(|&(p, s)| p % 2 == 0 && s % 2 == 0)
    }

    pub fn prefix_sums(&self) -> Vec<usize> {
        self.parts
            .iter()
            .scan(0usize, |acc, &p| {
                *acc += p as usize;
                Some(*acc)
            })
            .collect()
    }

    /// The i-th part, with the convention that parts beyond the length are 0.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.parts
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic order on parts. It refines dominance.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.parts.cmp(&other.parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.parts.iter().join(","))
    }
}

impl Partition {
    /// Exponent notation, e.g. `[2^2,1^2]`.
    pub fn exponent_notation(&self) -> String {
        let body = self
            .groups()
            .iter()
            .map(|&(p, s)| if s == 1 { p.to_string() } else { format!("{p}^{s}") })
            .join(",");
        format!("[{body}]")
    }
}

/// Accepts `4,2,2`, `[4,2,2]`, `4,2^2` and the empty partition as `` or `[]`.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('[').trim_end_matches(']').trim();
        if body.is_empty() || body == "0" {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for tok in body.split(',') {
            let tok = tok.trim();
            let (base, exp) = match tok.split_once('^') {
                Some((b, e)) => (b, e),
                None => (tok, "1"),
            };
            let base: u32 = base
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad part `{tok}` in `{s}`")))?;
            let exp: usize = exp
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad multiplicity in `{tok}`")))?;
            parts.extend(std::iter::repeat(base).take(exp));
        }
        Partition::new(parts)
    }
}

/// `f ≤ d` in the dominance order: every prefix sum of `d` is at least that of `f`.
pub fn dominance_leq(f: &Partition, d: &Partition) -> Result<bool> {
    if f.weight() != d.weight() {
        return Err(Error::SizeMismatch {
            expected: d.weight(),
            found: f.weight(),
        });
    }
    let len = f.len().max(d.len());
    let mut sf = 0usize;
    let mut sd = 0usize;
    for i in 0..len {
        sf += f.part(i) as usize;
        sd += d.part(i) as usize;
        if sd < sf {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All partitions of `n`, lexicographically descending (so `[n]` first).
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=max.min(rest)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n as u32, n as u32, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn transpose_examples() {
        let q = Partition::new(vec![3, 4, 3, 3, 1]).unwrap();
        assert_eq!(q.parts(), &[4, 3, 3, 3, 1]);
        assert_eq!(q.transpose(), p("5,4,4,1"));
        assert_eq!(p("6").transpose(), p("1^6"));
        assert_eq!(Partition::empty().transpose(), Partition::empty());
    }

    #[test]
    fn dominance_examples() {
        assert!(dominance_leq(&p("1,1,1,1"), &p("4")).unwrap());
        assert!(dominance_leq(&p("2,2"), &p("2,2")).unwrap());
        assert!(!dominance_leq(&p("3,1"), &p("2,2")).unwrap());
        assert!(dominance_leq(&p("2,2"), &p("3,1")).unwrap());
        assert!(dominance_leq(&p("2,2"), &p("3")).is_err());
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=10).map(|n| partitions_of(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    }

    #[test]
    fn parse_forms() {
        assert_eq!(p("[2^2,1^2]"), p("2,2,1,1"));
        assert_eq!(p("2^2,1^2").exponent_notation(), "[2^2,1^2]");
        assert!(p("").is_empty());
        assert!("2,0".parse::<Partition>().is_err());
        assert!("x".parse::<Partition>().is_err());
    }

    #[test]
    fn very_even() {
        assert!(p("2,2").is_very_even());
        assert!(p("4,4,2,2").is_very_even());
        assert!(!p("2,2,1,1").is_very_even());
        assert!(!p("4,2").is_very_even());
        assert!(!Partition::empty().is_very_even());
    }

    #[test]
    fn dominance_is_a_partial_order() {
        for n in 1..=8 {
            let ps = partitions_of(n);
            for a in &ps {
                assert!(dominance_leq(a, a).unwrap());
                for b in &ps {
                    let ab = dominance_leq(a, b).unwrap();
                    let ba = dominance_leq(b, a).unwrap();
                    if ab && ba {
                        assert_eq!(a, b);
                    }
                    if ab {
                        // lexicographic order refines dominance
                        assert!(a <= b);
                        for c in &ps {
                            if dominance_leq(b, c).unwrap() {
                                assert!(dominance_leq(a, c).unwrap());
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn transpose_reverses_dominance() {
        let ps = partitions_of(7);
        for a in &ps {
            for b in &ps {
                assert_eq!(
                    dominance_leq(a, b).unwrap(),
                    dominance_leq(&b.transpose(), &a.transpose()).unwrap()
                );
            }
        }
    }

    proptest! {
        #[test]
        fn transpose_is_involutive(parts in prop::collection::vec(1u32..12, 0..12)) {
            let d = Partition::new(parts).unwrap();
            prop_assert_eq!(d.transpose().transpose(), d.clone());
            prop_assert_eq!(d.transpose().weight(), d.weight());
        }

        #[test]
        fn display_parses_back(parts in prop::collection::vec(1u32..9, 0..9)) {
            let d = Partition::new(parts).unwrap();
            prop_assert_eq!(d.to_string().parse::<Partition>().unwrap(), d.clone());
            prop_assert_eq!(d.exponent_notation().parse::<Partition>().unwrap(), d);
        }
    }
}
