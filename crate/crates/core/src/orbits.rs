//! Nilpotent orbits of the classical algebras, labelled by Jordan type.
//!
//! Very even partitions of so(2n) label two orbits. We tag them `I` and `II`:
//! tag `I` is the orbit whose weighted Dynkin diagram carries the larger label
//! on fork tip `n` (Bourbaki numbering), tag `II` the one with the larger label
//! on tip `n - 1`. At the level of the neutral element `h` this amounts to
//! negating the last ε-coordinate.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{dominance_leq, partitions_of, Partition};
use crate::rootsys::{roots_of, Family, LieTypeClassical};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum VeTag {
    None,
    I,
    II,
}

impl fmt::Display for VeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VeTag::None => Ok(()),
            VeTag::I => f.write_str("I"),
            VeTag::II => f.write_str("II"),
        }
    }
}

/// Parity rule for Jordan types, independent of the ambient size: B/D need
/// even parts with even multiplicity, C needs odd parts with even multiplicity.
pub fn partition_valid_for(family: Family, d: &Partition) -> bool {
    d.groups().iter().all(|&(p, s)| match family {
        Family::A => true,
        Family::B | Family::D => p % 2 == 1 || s % 2 == 0,
        Family::C => p % 2 == 0 || s % 2 == 0,
    })
}

pub fn validate_partition(ty: LieTypeClassical, d: &Partition) -> Result<bool> {
    if d.weight() != ty.natural_size() {
        return Err(Error::SizeMismatch {
            expected: ty.natural_size(),
            found: d.weight(),
        });
    }
    Ok(partition_valid_for(ty.family(), d))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrbitLabel {
    #[serde(rename = "type")]
    ty: LieTypeClassical,
    partition: Partition,
    tag: VeTag,
}

impl OrbitLabel {
    pub fn new(ty: LieTypeClassical, partition: Partition, tag: VeTag) -> Result<Self> {
        if !validate_partition(ty, &partition)? {
            return Err(Error::InvalidPartition(format!(
                "{partition} is not a Jordan type for {ty}"
            )));
        }
        let needs_tag = ty.family() == Family::D && partition.is_very_even();
        if needs_tag == (tag == VeTag::None) {
            return Err(Error::InvalidPartition(if needs_tag {
                format!("very even {partition} in {ty} needs tag I or II")
            } else {
                format!("{partition} in {ty} takes no very-even tag")
            }));
        }
        Ok(Self { ty, partition, tag })
    }

    /// Label for an orbit that is not very even (tag `I` is chosen when it is).
    pub fn untagged(ty: LieTypeClassical, partition: Partition) -> Result<Self> {
        let tag = if ty.family() == Family::D && partition.is_very_even() {
            VeTag::I
        } else {
            VeTag::None
        };
        Self::new(ty, partition, tag)
    }

    /// Parses `4,2,2` or, for very even D orbits, `2,2,2,2:I` / `2^4:II`.
    pub fn parse(ty: LieTypeClassical, s: &str) -> Result<Self> {
        let (body, tag) = match s.rsplit_once(':') {
            Some((b, t)) => {
                let tag = match t.trim() {
                    "I" | "i" => VeTag::I,
                    "II" | "ii" => VeTag::II,
                    other => return Err(Error::Parse(format!("unknown tag `{other}`"))),
                };
                (b, Some(tag))
            }
            None => (s, None),
        };
        let partition: Partition = body.parse()?;
        match tag {
            Some(t) => Self::new(ty, partition, t),
            None => Self::untagged(ty, partition),
        }
    }

    pub fn lie_type(&self) -> LieTypeClassical {
        self.ty
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn tag(&self) -> VeTag {
        self.tag
    }

    pub fn is_zero(&self) -> bool {
        self.partition.parts().iter().all(|&p| p == 1)
    }
}

impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.partition)?;
        if self.tag != VeTag::None {
            write!(f, ":{}", self.tag)?;
        }
        Ok(())
    }
}

/// All nilpotent orbits, lexicographically descending (regular orbit first).
pub fn enumerate_orbits(ty: LieTypeClassical) -> Vec<OrbitLabel> {
    let mut out = Vec::new();
    for d in partitions_of(ty.natural_size()) {
        if !partition_valid_for(ty.family(), &d) {
            continue;
        }
        if ty.family() == Family::D && d.is_very_even() {
            out.push(OrbitLabel::new(ty, d.clone(), VeTag::I).expect("checked"));
            out.push(OrbitLabel::new(ty, d, VeTag::II).expect("checked"));
        } else {
            out.push(OrbitLabel::new(ty, d, VeTag::None).expect("checked"));
        }
    }
    out
}

/// Dimension of a nilpotent orbit of a classical algebra of any size, from
/// its Jordan type. Type A uses `n(n+1) - 2 Σ i·d_i`; B/C/D subtract the
/// centralizer dimension `(Σ (dᵗ_i)² ∓ #odd parts) / 2`.
pub fn orbit_dimension_in(family: Family, d: &Partition) -> usize {
    let n = d.weight();
    match family {
        Family::A => {
            let weighted: usize = d
                .parts()
                .iter()
                .enumerate()
                .map(|(i, &p)| (i + 1) * p as usize)
                .sum();
            n * (n + 1) - 2 * weighted
        }
        _ => {
            let squares: usize = d
                .transpose()
                .parts()
                .iter()
                .map(|&c| (c as usize).pow(2))
                .sum();
            let odd = d.parts().iter().filter(|&&p| p % 2 == 1).count();
            let (dim_g, centralizer) = match family {
                Family::C => (n * (n + 1) / 2, (squares + odd) / 2),
                _ => (n * n.saturating_sub(1) / 2, (squares - odd) / 2),
            };
            dim_g - centralizer
        }
    }
}

pub fn orbit_dimension(o: &OrbitLabel) -> usize {
    orbit_dimension_in(o.ty.family(), &o.partition)
}

/// ε-coordinates of the neutral element `h` of a Jacobson–Morozov triple.
///
/// Each part `d` contributes the eigenvalues `d-1, d-3, ..., 1-d`. Type A keeps
/// all of them; B/C/D keep the `rank` largest.
pub fn neutral_element(o: &OrbitLabel) -> Vec<i32> {
    let mut h: Vec<i32> = o
        .partition
        .parts()
        .iter()
        .flat_map(|&d| {
            let d = d as i32;
            (0..d).map(move |j| d - 1 - 2 * j)
        })
        .collect();
    h.sort_unstable_by(|a, b| b.cmp(a));
    let ty = o.ty;
    if ty.family() != Family::A {
        h.truncate(ty.rank());
        if o.tag == VeTag::II {
            let last = h.len() - 1;
            h[last] = -h[last];
        }
    }
    h
}

/// Labels `α(h)` on the simple roots, indexed by Bourbaki vertex (entry i is vertex i + 1).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightedDynkinDiagram {
    #[serde(rename = "type")]
    pub ty: LieTypeClassical,
    pub labels: Vec<u8>,
}

impl fmt::Display for WeightedDynkinDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.ty, self.labels.iter().join(","))
    }
}

pub fn weighted_dynkin(o: &OrbitLabel) -> WeightedDynkinDiagram {
    let h = neutral_element(o);
    let labels = crate::rootsys::simple_roots(o.ty)
        .iter()
        .map(|a| {
            let v = a.dot(&h);
            debug_assert!((0..=2).contains(&v), "weighted label {v} out of range");
            v as u8
        })
        .collect();
    WeightedDynkinDiagram { ty: o.ty, labels }
}

/// `dim g_i` for the grading by `ad h`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradingDims {
    pub dims: BTreeMap<i32, usize>,
}

impl GradingDims {
    pub fn get(&self, i: i32) -> usize {
        self.dims.get(&i).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }

    /// `dim g/p` with `p = ⊕_{i ≥ 0} g_i`.
    pub fn dim_g_mod_p(&self) -> usize {
        self.dims.range(..0).map(|(_, &v)| v).sum()
    }

    /// `dim n_2` with `n_2 = ⊕_{i ≥ 2} g_i`.
    pub fn dim_n2(&self) -> usize {
        self.dims.range(2..).map(|(_, &v)| v).sum()
    }
}

pub fn jm_grading_dims(o: &OrbitLabel) -> GradingDims {
    let h = neutral_element(o);
    let mut dims = BTreeMap::new();
    for r in roots_of(o.ty) {
        *dims.entry(r.dot(&h)).or_insert(0) += 1;
    }
    *dims.entry(0).or_insert(0) += o.ty.rank();
    GradingDims { dims }
}

/// Vertex permutations of the Dynkin diagram of type D: the fork swap, and
/// for D4 every permutation of the three outer vertices. Each entry maps
/// vertex `i + 1` to `perm[i]`. The identity is not included.
pub fn d_diagram_automorphisms(ty: LieTypeClassical) -> Vec<Vec<usize>> {
    let n = ty.rank();
    let id: Vec<usize> = (1..=n).collect();
    if n == 4 {
        [1usize, 3, 4]
            .into_iter()
            .permutations(3)
            .map(|img| {
                let mut p = id.clone();
                p[0] = img[0];
                p[2] = img[1];
                p[3] = img[2];
                p
            })
            .filter(|p| *p != id)
            .collect()
    } else {
        let mut p = id;
        p.swap(n - 2, n - 1);
        vec![p]
    }
}

fn permute_labels(labels: &[u8], perm: &[usize]) -> Vec<u8> {
    let mut out = vec![0; labels.len()];
    for (i, &l) in labels.iter().enumerate() {
        out[perm[i] - 1] = l;
    }
    out
}

/// Orbit labels reached from `o` by the given diagram automorphisms, found by
/// matching weighted Dynkin diagrams against the full orbit list.
pub fn automorphism_images(o: &OrbitLabel, automorphisms: &[Vec<usize>]) -> Result<Vec<OrbitLabel>> {
    let table: Vec<(WeightedDynkinDiagram, OrbitLabel)> = enumerate_orbits(o.ty)
        .into_iter()
        .map(|x| (weighted_dynkin(&x), x))
        .collect();
    let labels = weighted_dynkin(o).labels;
    automorphisms
        .iter()
        .map(|perm| {
            let img = permute_labels(&labels, perm);
            table
                .iter()
                .find(|(w, _)| w.labels == img)
                .map(|(_, x)| x.clone())
                .ok_or_else(|| {
                    Error::InvariantViolation(format!(
                        "permuted diagram {img:?} of {o} is not a weighted Dynkin diagram"
                    ))
                })
        })
        .collect()
}

/// Whether a nontrivial diagram automorphism (fork swap; all of S3 for D4)
/// sends the orbit to a different orbit.
pub fn outer_auto_moves_orbit(o: &OrbitLabel) -> Result<bool> {
    if o.ty.family() != Family::D {
        return Err(Error::TypeMismatch {
            expected: "type D".into(),
            found: o.ty.to_string(),
        });
    }
    let images = automorphism_images(o, &d_diagram_automorphisms(o.ty))?;
    Ok(images.iter().any(|x| x != o))
}

/// Image of a type D orbit under the fork swap alone.
pub fn fork_swap_image(o: &OrbitLabel) -> OrbitLabel {
    let mut out = o.clone();
    out.tag = match o.tag {
        VeTag::I => VeTag::II,
        VeTag::II => VeTag::I,
        VeTag::None => VeTag::None,
    };
    out
}

/// Closure order lifted from dominance of partitions. Orbits sharing a very
/// even partition are incomparable with each other.
pub fn orbit_leq(a: &OrbitLabel, b: &OrbitLabel) -> Result<bool> {
    if a.partition == b.partition {
        return Ok(a.tag == b.tag);
    }
    dominance_leq(&a.partition, &b.partition)
}

/// Cover relations `(smaller, larger)` of the orbit poset, as indices into `orbits`.
pub fn hasse_edges(orbits: &[OrbitLabel]) -> Result<Vec<(usize, usize)>> {
    let n = orbits.len();
    let mut less = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            less[i][j] = i != j && orbit_leq(&orbits[i], &orbits[j])?;
        }
    }
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if less[i][j] && !(0..n).any(|k| less[i][k] && less[k][j]) {
                out.push((i, j));
            }
        }
    }
    Ok(out)
}

/// DOT rendering of the Hasse diagram of the orbit poset.
pub fn hasse_dot(ty: LieTypeClassical) -> Result<String> {
    let orbits = enumerate_orbits(ty);
    let edges = hasse_edges(&orbits)?;
    let mut s = format!("digraph \"orbits_{ty}\" {{\n  rankdir=BT;\n");
    for (i, o) in orbits.iter().enumerate() {
        s.push_str(&format!(
            "  n{i} [label=\"{o}\\ndim {}\"];\n",
            orbit_dimension(o)
        ));
    }
    for (a, b) in edges {
        s.push_str(&format!("  n{a} -> n{b};\n"));
    }
    s.push_str("}\n");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn ty(s: &str) -> LieTypeClassical {
        s.parse().unwrap()
    }

    fn orbit(t: &str, d: &str) -> OrbitLabel {
        OrbitLabel::parse(ty(t), d).unwrap()
    }

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn validate_examples() {
        assert!(validate_partition(ty("C2"), &p("2,2")).unwrap());
        assert!(validate_partition(ty("D3"), &p("2,2,1,1")).unwrap());
        assert!(!validate_partition(ty("C2"), &p("3,1")).unwrap());
        assert!(matches!(
            validate_partition(ty("C2"), &p("3")),
            Err(Error::SizeMismatch { .. })
        ));
    }

    /// Independent count: filter all compositions-by-brute-force of m.
    fn brute_force_count(family: Family, m: usize) -> usize {
        // Every multiset of parts ≤ m summing to m, via nested multiplicities.
        fn rec(family: Family, part: u32, rest: usize, acc: &mut Vec<(u32, usize)>) -> usize {
            if part == 0 {
                if rest != 0 {
                    return 0;
                }
                let ok = acc.iter().all(|&(p, s)| match family {
                    Family::A => true,
                    Family::B | Family::D => p % 2 == 1 || s % 2 == 0,
                    Family::C => p % 2 == 0 || s % 2 == 0,
                });
                if !ok {
                    return 0;
                }
                let ve = !acc.is_empty() && acc.iter().all(|&(p, s)| p % 2 == 0 && s % 2 == 0);
                return if family == Family::D && ve { 2 } else { 1 };
            }
            let mut total = 0;
            for s in 0..=rest / part as usize {
                if s > 0 {
                    acc.push((part, s));
                }
                total += rec(family, part - 1, rest - s * part as usize, acc);
                if s > 0 {
                    acc.pop();
                }
            }
            total
        }
        rec(family, m as u32, m, &mut Vec::new())
    }

    #[test]
    fn orbit_counts() {
        assert_eq!(enumerate_orbits(ty("A3")).len(), 5);
        let c2: Vec<String> = enumerate_orbits(ty("C2")).iter().map(|o| o.to_string()).collect();
        assert_eq!(c2, vec!["[4]", "[2,2]", "[2,1,1]", "[1,1,1,1]"]);
        for s in ["A3", "A5", "B2", "B3", "B4", "C2", "C3", "C4", "D3", "D4", "D5"] {
            let t = ty(s);
            assert_eq!(
                enumerate_orbits(t).len(),
                brute_force_count(t.family(), t.natural_size()),
                "{s}"
            );
        }
        // so(6) ≅ sl(4) has 5 orbits; so(8) has 10 Jordan types, two of them very even
        assert_eq!(enumerate_orbits(ty("D3")).len(), 5);
        assert_eq!(enumerate_orbits(ty("D4")).len(), 12);
    }

    #[test]
    fn tags_required_exactly_for_very_even_d() {
        assert!(OrbitLabel::new(ty("D4"), p("2,2,2,2"), VeTag::None).is_err());
        assert!(OrbitLabel::new(ty("C4"), p("2,2,2,2"), VeTag::I).is_err());
        assert_eq!(orbit("D4", "2^4:II").tag(), VeTag::II);
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(orbit_dimension(&orbit("A3", "4")), 12);
        assert_eq!(orbit_dimension(&orbit("C2", "2,2")), 6);
        assert_eq!(orbit_dimension(&orbit("C2", "4")), 8);
        assert_eq!(orbit_dimension(&orbit("B3", "1^7")), 0);
        assert_eq!(orbit_dimension(&orbit("D4", "1^8")), 0);
        // regular orbit: dim g - rank
        for s in ["A4", "B3", "C3", "D4", "D5"] {
            let t = ty(s);
            let reg = enumerate_orbits(t).into_iter().next().unwrap();
            assert_eq!(orbit_dimension(&reg), t.dimension() - t.rank(), "{s}");
        }
    }

    #[test]
    fn dimension_even_and_monotone() {
        for s in ["A1", "A2", "A3", "A4", "A5", "A6", "A7", "B2", "B3", "C2", "C3", "C4", "D3", "D4"] {
            let t = ty(s);
            let os = enumerate_orbits(t);
            for a in &os {
                assert_eq!(orbit_dimension(a) % 2, 0);
                for b in &os {
                    if dominance_leq(a.partition(), b.partition()).unwrap() {
                        assert!(orbit_dimension(a) <= orbit_dimension(b), "{s}: {a} {b}");
                    }
                }
            }
        }
    }

    #[test]
    fn weighted_dynkin_examples() {
        assert_eq!(weighted_dynkin(&orbit("A1", "2")).labels, vec![2]);
        assert_eq!(weighted_dynkin(&orbit("A2", "2,1")).labels, vec![1, 1]);
        assert_eq!(weighted_dynkin(&orbit("D4", "5,1,1,1")).labels, vec![2, 2, 0, 0]);
        assert_eq!(weighted_dynkin(&orbit("D4", "2^4:I")).labels, vec![0, 0, 0, 2]);
        assert_eq!(weighted_dynkin(&orbit("D4", "2^4:II")).labels, vec![0, 0, 2, 0]);
        assert_eq!(weighted_dynkin(&orbit("C2", "2,2")).labels, vec![0, 2]);
        assert_eq!(weighted_dynkin(&orbit("B2", "3,1,1")).labels, vec![2, 0]);
    }

    #[test]
    fn weighted_dynkin_injective_and_in_range() {
        for s in ["A5", "B3", "B4", "C3", "C4", "D4", "D5", "D6"] {
            let t = ty(s);
            let os = enumerate_orbits(t);
            let mut seen = BTreeSet::new();
            for o in &os {
                let w = weighted_dynkin(o);
                assert!(w.labels.iter().all(|&l| l <= 2), "{s} {o}");
                assert!(seen.insert(w.labels), "{s}: duplicate diagram for {o}");
            }
        }
    }

    #[test]
    fn grading_identities() {
        let sl2 = jm_grading_dims(&orbit("A1", "2"));
        assert_eq!(sl2.dims, BTreeMap::from([(-2, 1), (0, 1), (2, 1)]));
        let c2 = jm_grading_dims(&orbit("C2", "2,2"));
        assert_eq!(c2.dim_g_mod_p() + c2.dim_n2(), 6);
        for s in ["A4", "A6", "B3", "B4", "C3", "C4", "D4", "D5"] {
            let t = ty(s);
            for o in enumerate_orbits(t) {
                let g = jm_grading_dims(&o);
                assert_eq!(g.total(), t.dimension());
                for (&i, &v) in &g.dims {
                    assert_eq!(g.get(-i), v);
                }
                assert_eq!(g.dim_g_mod_p() + g.dim_n2(), orbit_dimension(&o), "{s} {o}");
            }
        }
    }

    #[test]
    fn outer_automorphism_examples() {
        assert!(outer_auto_moves_orbit(&orbit("D4", "5,1,1,1")).unwrap());
        assert!(outer_auto_moves_orbit(&orbit("D4", "2^4:I")).unwrap());
        assert!(!outer_auto_moves_orbit(&orbit("D4", "3,2,2,1")).unwrap());
        for o in enumerate_orbits(ty("D5")) {
            assert!(!outer_auto_moves_orbit(&o).unwrap(), "{o}");
        }
        assert!(outer_auto_moves_orbit(&orbit("C2", "2,2")).is_err());
    }

    #[test]
    fn fork_swap_moves_exactly_very_even() {
        for s in ["D3", "D4", "D5", "D6"] {
            let t = ty(s);
            for o in enumerate_orbits(t) {
                assert_eq!(fork_swap_image(&o) != o, o.partition().is_very_even(), "{s} {o}");
            }
        }
    }

    #[test]
    fn hasse_of_sl4() {
        let os = enumerate_orbits(ty("A3"));
        // sl(4) orbit poset is a chain of 5
        assert_eq!(hasse_edges(&os).unwrap().len(), 4);
        let dot = hasse_dot(ty("A3")).unwrap();
        assert!(dot.starts_with("digraph"));
    }
}
