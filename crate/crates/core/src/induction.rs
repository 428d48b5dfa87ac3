//! Richardson orbits in type A, the reduction step for orthogonal and
//! symplectic Jordan types, and the resulting Q-factorial terminalization data.

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::orbits::{partition_valid_for, OrbitLabel, VeTag};
use crate::partition::Partition;
use crate::rootsys::{ClassicalAlgebra, Family, LieTypeClassical};

/// Type `(q_1, ..., q_l)` of a (possibly isotropic) flag.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct FlagType {
    parts: Vec<u32>,
}

impl FlagType {
    /// A flag type for sl(m): every entry positive.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::InvalidInput(format!(
                "flag type {parts:?} needs positive entries"
            )));
        }
        Ok(Self { parts })
    }

    /// An isotropic flag type `(p_1, ..., p_k, q, p_k, ..., p_1)`. A zero middle
    /// entry (even length flag) may be written or omitted.
    pub fn isotropic(parts: Vec<u32>) -> Result<Self> {
        let mut parts = parts;
        let n = parts.len();
        if n % 2 == 1 && parts[n / 2] == 0 {
            parts.remove(n / 2);
        }
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::InvalidInput(format!(
                "isotropic flag type {parts:?} needs positive entries"
            )));
        }
        if parts.iter().ne(parts.iter().rev()) {
            return Err(Error::InvalidInput(format!(
                "isotropic flag type {parts:?} is not palindromic"
            )));
        }
        Ok(Self { parts })
    }

    pub fn for_family(family: Family, parts: Vec<u32>) -> Result<Self> {
        match family {
            Family::A => Self::new(parts),
            _ => Self::isotropic(parts),
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn total(&self) -> usize {
        self.parts.iter().map(|&q| q as usize).sum()
    }

    /// `dim V_i` for i = 1..=l.
    pub fn dims(&self) -> Vec<usize> {
        self.parts
            .iter()
            .scan(0usize, |acc, &q| {
                *acc += q as usize;
                Some(*acc)
            })
            .collect()
    }
}

impl TryFrom<Vec<u32>> for FlagType {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        FlagType::new(v)
    }
}

impl From<FlagType> for Vec<u32> {
    fn from(f: FlagType) -> Vec<u32> {
        f.parts
    }
}

impl fmt::Display for FlagType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.parts.iter().join(","))
    }
}

/// Jordan type of the Richardson orbit of a type-A parabolic: the transpose
/// of the sorted flag type.
pub fn richardson_a(flag: &FlagType) -> Partition {
    Partition::new(flag.parts.clone())
        .expect("flag entries are positive")
        .transpose()
}

/// Distinct parts form the ladder k, k-1, ..., 1.
pub fn has_full_members(d: &Partition) -> bool {
    let groups = d.groups();
    let k = groups.len() as u32;
    groups
        .iter()
        .enumerate()
        .all(|(i, &(p, _))| p == k - i as u32)
}

/// One reduction: subtract 2 from the first `r` parts, which make up the first
/// `p` distinct-part groups.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ReductionStep {
    pub p: usize,
    pub r: usize,
    pub reduced: Partition,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GapChoice {
    Smallest,
    Largest,
}

fn check_bcd(family: Family, d: &Partition) -> Result<()> {
    if family == Family::A {
        return Err(Error::TypeMismatch {
            expected: "type B, C or D".into(),
            found: "A".into(),
        });
    }
    ClassicalAlgebra::new(family, d.weight())?;
    if !partition_valid_for(family, d) {
        return Err(Error::InvalidPartition(format!(
            "{d} is not a Jordan type for {}",
            ClassicalAlgebra::new(family, d.weight())?
        )));
    }
    Ok(())
}

/// All distinct-part indices `p` (1-based) with `d_p ≥ d_{p+1} + 2`, using `d_{k+1} = 0`.
pub fn reduction_gaps(d: &Partition) -> Vec<usize> {
    let groups = d.groups();
    (0..groups.len())
        .filter(|&i| {
            let next = groups.get(i + 1).map_or(0, |g| g.0);
            groups[i].0 >= next + 2
        })
        .map(|i| i + 1)
        .collect()
}

fn reduce_at(d: &Partition, p: usize) -> ReductionStep {
    let groups = d.groups();
    let r: usize = groups[..p].iter().map(|g| g.1).sum();
    let parts = d
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &x)| if i < r { x - 2 } else { x })
        .filter(|&x| x > 0)
        .collect();
    ReductionStep {
        p,
        r,
        reduced: Partition::new(parts).expect("positive parts"),
    }
}

pub fn reduction_step_with(
    family: Family,
    d: &Partition,
    choice: GapChoice,
) -> Result<Option<ReductionStep>> {
    check_bcd(family, d)?;
    let gaps = reduction_gaps(d);
    let p = match choice {
        GapChoice::Smallest => gaps.first(),
        GapChoice::Largest => gaps.last(),
    };
    Ok(p.map(|&p| reduce_at(d, p)))
}

/// The canonical (smallest gap) reduction step, or `None` when `d` has full members.
pub fn reduction_step(family: Family, d: &Partition) -> Result<Option<ReductionStep>> {
    reduction_step_with(family, d, GapChoice::Smallest)
}

/// Inverse of a reduction: add 2 to the first `r` parts of `reduced` (padding
/// with zeros). The raised parts always clear the rest by at least 2; the step
/// is consistent when they form exactly `p` distinct-part groups.
pub fn induct_partition(reduced: &Partition, p: usize, r: usize) -> Result<Partition> {
    let inconsistent = Error::InconsistentStep { p, r };
    if p == 0 || r == 0 {
        return Err(inconsistent);
    }
    let len = reduced.len().max(r);
    let parts: Vec<u32> = (0..len)
        .map(|i| reduced.part(i) + if i < r { 2 } else { 0 })
        .filter(|&x| x > 0)
        .collect();
    let d = Partition::new(parts).expect("positive parts");
    debug_assert!(d.part(r - 1) >= d.part(r) + 2);
    let groups_in_prefix = d.parts()[..r].iter().dedup().count();
    if groups_in_prefix != p {
        return Err(inconsistent);
    }
    Ok(d)
}

/// Orbit of a (possibly degenerate) classical algebra left after reductions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ResidualOrbit {
    pub algebra: ClassicalAlgebra,
    pub partition: Partition,
    pub tag: VeTag,
}

impl ResidualOrbit {
    pub fn is_zero(&self) -> bool {
        self.partition.parts().iter().all(|&x| x == 1)
    }

    /// The orbit as a label of a budgeted simple type, when there is one.
    pub fn as_label(&self) -> Option<OrbitLabel> {
        let ty = self.algebra.lie_type()?;
        OrbitLabel::new(ty, self.partition.clone(), self.tag).ok()
    }
}

impl fmt::Display for ResidualOrbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self.partition, self.algebra)?;
        if self.tag != VeTag::None {
            write!(f, " ({})", self.tag)?;
        }
        Ok(())
    }
}

/// The so(4n+2), `[2^{2n}, 1^2]` branch: two non-conjugate parabolics with
/// isotropic flag type `(2n+1, 2n+1)`, each giving a crepant resolution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwinResolution {
    pub n: usize,
    pub flag_type: FlagType,
    pub levi_block: usize,
    pub parabolics: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TerminalizationDatum {
    pub orbit: OrbitLabel,
    /// Reduction steps in the order they were applied.
    pub steps: Vec<ReductionStep>,
    /// gl-block sizes of the final Levi factor.
    pub levi_blocks: Vec<usize>,
    /// Type A only: the flag type of the Richardson parabolic.
    pub richardson_flag: Option<FlagType>,
    /// B/C/D only: the orbit the reductions end at.
    pub terminal_orbit: Option<ResidualOrbit>,
    pub special_case: Option<TwinResolution>,
}

impl TerminalizationDatum {
    /// Re-inducts the terminal orbit through the recorded steps.
    pub fn reinduct(&self) -> Result<Partition> {
        if let Some(flag) = &self.richardson_flag {
            return Ok(richardson_a(flag));
        }
        let terminal = self
            .terminal_orbit
            .as_ref()
            .ok_or_else(|| Error::InvariantViolation("missing terminal orbit".into()))?;
        self.steps
            .iter()
            .rev()
            .try_fold(terminal.partition.clone(), |d, s| induct_partition(&d, s.p, s.r))
    }

    pub fn is_crepant_resolution(&self) -> bool {
        match &self.terminal_orbit {
            None => true,
            Some(t) => t.is_zero() || self.special_case.is_some(),
        }
    }
}

fn is_twin_case(family: Family, d: &Partition) -> Option<usize> {
    let m = d.weight();
    if family != Family::D || m < 6 || (m - 2) % 4 != 0 {
        return None;
    }
    let n = (m - 2) / 4;
    let expected: Vec<u32> = std::iter::repeat(2).take(2 * n).chain([1, 1]).collect();
    (d.parts() == expected.as_slice()).then_some(n)
}

/// Builds the terminalization datum, choosing which gap to reduce at each step.
pub fn terminalize_with(o: &OrbitLabel, choice: GapChoice) -> Result<TerminalizationDatum> {
    let ty: LieTypeClassical = o.lie_type();
    let family = ty.family();
    if family == Family::A {
        let flag = FlagType::new(o.partition().transpose().parts().to_vec())?;
        return Ok(TerminalizationDatum {
            orbit: o.clone(),
            steps: Vec::new(),
            levi_blocks: flag.parts().iter().map(|&q| q as usize).collect(),
            richardson_flag: Some(flag),
            terminal_orbit: None,
            special_case: None,
        });
    }
    let mut steps = Vec::new();
    let mut d = o.partition().clone();
    while let Some(step) = reduction_step_with(family, &d, choice)? {
        d = step.reduced.clone();
        steps.push(step);
    }
    let algebra = ClassicalAlgebra::new(family, d.weight())?;
    let tag = if family == Family::D && d.is_very_even() {
        o.tag()
    } else {
        VeTag::None
    };
    let mut levi_blocks: Vec<usize> = steps.iter().map(|s| s.r).collect();
    let special_case = is_twin_case(family, &d).map(|n| {
        levi_blocks.push(2 * n + 1);
        TwinResolution {
            n,
            flag_type: FlagType::isotropic(vec![2 * n as u32 + 1, 2 * n as u32 + 1])
                .expect("palindromic"),
            levi_block: 2 * n + 1,
            parabolics: vec!["Q".into(), "Q'".into()],
        }
    });
    Ok(TerminalizationDatum {
        orbit: o.clone(),
        steps,
        levi_blocks,
        richardson_flag: None,
        terminal_orbit: Some(ResidualOrbit {
            algebra,
            partition: d,
            tag,
        }),
        special_case,
    })
}

pub fn terminalize(o: &OrbitLabel) -> Result<TerminalizationDatum> {
    terminalize_with(o, GapChoice::Smallest)
}

/// Dimension of the partial flag variety G/Q for an isotropic flag type
/// `(r, m - 2r, r)` in the classical group of the given family and size m.
pub fn isotropic_grassmannian_dim(family: Family, m: usize, r: usize) -> usize {
    // dim G/Q = dim n(q) = r(m - 2r) + dim of the r×r block constrained by the form.
    let sym = r * (r + 1) / 2;
    let alt = r * r.saturating_sub(1) / 2;
    r * (m - 2 * r)
        + match family {
            Family::C => sym,
            _ => alt,
        }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbits::{enumerate_orbits, orbit_dimension, orbit_dimension_in};
    use crate::partition::partitions_of;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn orbit(t: &str, d: &str) -> OrbitLabel {
        OrbitLabel::parse(t.parse().unwrap(), d).unwrap()
    }

    #[test]
    fn richardson_examples() {
        let f = FlagType::new(vec![3, 4, 3, 3, 1]).unwrap();
        assert_eq!(richardson_a(&f), p("5,4,4,1"));
        assert_eq!(richardson_a(&FlagType::new(vec![1; 5]).unwrap()), p("5"));
        assert_eq!(richardson_a(&FlagType::new(vec![5]).unwrap()), p("1^5"));
    }

    #[test]
    fn richardson_of_transpose_is_identity() {
        for n in 1..=10 {
            for d in partitions_of(n) {
                let f = FlagType::new(d.transpose().parts().to_vec()).unwrap();
                assert_eq!(richardson_a(&f), d);
            }
        }
    }

    #[test]
    fn full_members_examples() {
        assert!(has_full_members(&p("2,1")));
        assert!(!has_full_members(&p("2,2")));
        assert!(has_full_members(&p("3,2,2,1")));
        assert!(has_full_members(&p("1,1,1")));
        assert!(has_full_members(&Partition::empty()));
        assert!(!has_full_members(&p("3,1")));
    }

    #[test]
    fn full_members_iff_no_gap() {
        for n in 0..=12 {
            for d in partitions_of(n) {
                assert_eq!(has_full_members(&d), reduction_gaps(&d).is_empty(), "{d}");
            }
        }
    }

    #[test]
    fn reduction_examples() {
        let s = reduction_step(Family::C, &p("2,2")).unwrap().unwrap();
        assert_eq!((s.p, s.r, s.reduced.clone()), (1, 2, Partition::empty()));
        let s = reduction_step(Family::C, &p("4,2")).unwrap().unwrap();
        assert_eq!((s.p, s.r, s.reduced.clone()), (1, 1, p("2,2")));
        let s = reduction_step(Family::B, &p("3,1,1")).unwrap().unwrap();
        assert_eq!((s.p, s.r, s.reduced.clone()), (1, 1, p("1,1,1")));
        assert!(reduction_step(Family::C, &p("2,1,1")).unwrap().is_none());
        assert!(reduction_step(Family::C, &p("3,1")).is_err());
        assert!(reduction_step(Family::A, &p("3,1")).is_err());
    }

    #[test]
    fn induct_examples() {
        assert_eq!(induct_partition(&p("2,2"), 1, 1).unwrap(), p("4,2"));
        assert_eq!(induct_partition(&Partition::empty(), 1, 2).unwrap(), p("2,2"));
        assert!(induct_partition(&p("3,2"), 2, 1).is_err());
        assert!(induct_partition(&p("3,2"), 1, 2).is_err());
        assert!(induct_partition(&p("3,2"), 0, 0).is_err());
        assert!(induct_partition(&p("2,2"), 2, 1).is_err());
    }

    #[test]
    fn reduction_preserves_parity_and_inverts() {
        for family in [Family::B, Family::C, Family::D] {
            for m in 1..=12 {
                if ClassicalAlgebra::new(family, m).is_err() {
                    continue;
                }
                for d in partitions_of(m) {
                    if !partition_valid_for(family, &d) {
                        continue;
                    }
                    for p_idx in reduction_gaps(&d) {
                        let s = reduce_at(&d, p_idx);
                        assert!(partition_valid_for(family, &s.reduced), "{family} {d}");
                        assert_eq!(s.reduced.weight(), m - 2 * s.r);
                        assert_eq!(induct_partition(&s.reduced, s.p, s.r).unwrap(), d);
                    }
                }
            }
        }
    }

    #[test]
    fn terminalize_sp4() {
        let t = terminalize(&orbit("C2", "2,2")).unwrap();
        assert_eq!(t.steps.len(), 1);
        assert_eq!((t.steps[0].p, t.steps[0].r), (1, 2));
        assert_eq!(t.levi_blocks, vec![2]);
        let term = t.terminal_orbit.as_ref().unwrap();
        assert_eq!(term.algebra.size, 0);
        assert!(term.partition.is_empty());
        assert!(t.is_crepant_resolution());
    }

    #[test]
    fn full_members_are_already_terminal() {
        let o = orbit("C3", "2,2,1,1");
        let t = terminalize(&o).unwrap();
        assert!(t.steps.is_empty());
        assert_eq!(t.terminal_orbit.unwrap().partition, *o.partition());
    }

    #[test]
    fn twin_case_so6() {
        let t = terminalize(&orbit("D3", "2,2,1,1")).unwrap();
        let sc = t.special_case.expect("special case");
        assert_eq!(sc.n, 1);
        assert_eq!(sc.flag_type.parts(), &[3, 3]);
        assert_eq!(sc.parabolics.len(), 2);
        assert_eq!(t.levi_blocks, vec![3]);
        // reached after a reduction in so(10)
        let t = terminalize(&orbit("D5", "4,4,1,1")).unwrap();
        assert_eq!(t.steps.len(), 1);
        assert!(t.special_case.is_some());
        // odd orthogonal algebras never take this branch
        assert!(terminalize(&orbit("B3", "2,2,1,1,1")).unwrap().special_case.is_none());
    }

    #[test]
    fn type_a_is_richardson() {
        let t = terminalize(&orbit("A4", "3,2")).unwrap();
        assert_eq!(t.richardson_flag.as_ref().unwrap().parts(), &[2, 2, 1]);
        assert_eq!(t.reinduct().unwrap(), p("3,2"));
    }

    #[test]
    fn roundtrip_and_choice_independence() {
        for s in ["B2", "B3", "B4", "C2", "C3", "C4", "C5", "D3", "D4", "D5"] {
            let ty: LieTypeClassical = s.parse().unwrap();
            for o in enumerate_orbits(ty) {
                let small = terminalize_with(&o, GapChoice::Smallest).unwrap();
                let large = terminalize_with(&o, GapChoice::Largest).unwrap();
                assert_eq!(small.reinduct().unwrap(), *o.partition(), "{s} {o}");
                assert_eq!(large.reinduct().unwrap(), *o.partition(), "{s} {o}");
                assert_eq!(small.terminal_orbit, large.terminal_orbit, "{s} {o}");
                let term = small.terminal_orbit.as_ref().unwrap();
                assert!(has_full_members(&term.partition));
                let bound = o.partition().part(0) as usize / 2 + o.partition().groups().len();
                assert!(small.steps.len() <= bound);
            }
        }
    }

    #[test]
    fn dimension_bookkeeping() {
        for s in ["B2", "B3", "B4", "C2", "C3", "C4", "C5", "D3", "D4", "D5"] {
            let ty: LieTypeClassical = s.parse().unwrap();
            for o in enumerate_orbits(ty) {
                let t = terminalize(&o).unwrap();
                let mut d = o.partition().clone();
                let mut dim = orbit_dimension(&o);
                for step in &t.steps {
                    let m = d.weight();
                    let gq = isotropic_grassmannian_dim(ty.family(), m, step.r);
                    let dim_next = orbit_dimension_in(ty.family(), &step.reduced);
                    assert_eq!(dim, 2 * gq + dim_next, "{s} {o} at {d}");
                    d = step.reduced.clone();
                    dim = dim_next;
                }
            }
        }
    }
}
