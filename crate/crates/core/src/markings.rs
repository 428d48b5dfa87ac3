//! Marked Dynkin diagrams, their single marked subdiagrams, and twists.
//!
//! A marked vertex is a simple root *outside* the Levi factor, so marks
//! `{s_1 < s_2 < ...}` on A_{n-1} describe the flag type
//! `(s_1, s_2 - s_1, ..., n - s_t)`.
//!
//! The single marked diagrams of the first kind are:
//!
//! | shape    | marked vertex                           | dual                      |
//! |----------|-----------------------------------------|---------------------------|
//! | A_{n-1}  | position k with k ≠ n - k               | position n - k            |
//! | D_n      | a fork tip, n odd ≥ 5                   | the other fork tip        |
//! | E_{6,I}  | Bourbaki vertex 1 or 6 (chain ends)     | 6 or 1                    |
//! | E_{6,II} | Bourbaki vertex 3 or 5 (next to the ends)| 5 or 3                   |
//!
//! E6 is numbered 1-3-4-5-6 along the chain, with 2 hanging off vertex 4.
//! Classification works on the isomorphism type of the component, so the
//! same table applies to subdiagrams with arbitrary vertex names.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootsys::{DiagramKind, DynkinDiagram};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MarkedDiagram {
    pub diagram: DynkinDiagram,
    pub marks: BTreeSet<usize>,
}

impl MarkedDiagram {
    pub fn new(diagram: DynkinDiagram, marks: impl IntoIterator<Item = usize>) -> Result<Self> {
        let marks: BTreeSet<usize> = marks.into_iter().collect();
        if let Some(&v) = marks.iter().find(|&&v| !diagram.has_vertex(v)) {
            return Err(Error::InvalidInput(format!(
                "vertex {v} is not in {}",
                diagram.kind
            )));
        }
        Ok(Self { diagram, marks })
    }

    pub fn of_kind(kind: DiagramKind, marks: impl IntoIterator<Item = usize>) -> Result<Self> {
        Self::new(DynkinDiagram::new(kind), marks)
    }

    /// Parses a type (`A4`, `D5`, `E6`) and comma-separated marked vertices.
    pub fn parse(kind: &str, marks: &str) -> Result<Self> {
        let kind: DiagramKind = kind.parse()?;
        let marks = marks
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad vertex `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::of_kind(kind, marks)
    }

    pub fn is_single(&self) -> bool {
        self.marks.len() == 1
    }

    fn with_marks(&self, marks: BTreeSet<usize>) -> Self {
        Self {
            diagram: self.diagram.clone(),
            marks,
        }
    }
}

impl fmt::Display for MarkedDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{{{}}}", self.diagram.kind, self.marks.iter().join(","))
    }
}

/// Which entry of the first-kind table a single marked diagram matches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FirstKindShape {
    /// A_{n-1} marked at position k.
    A { n: usize, k: usize },
    /// D_n marked at a fork tip.
    D { n: usize },
    E6I,
    E6II,
}

impl FirstKindShape {
    /// Admissible orbits O' of the primitive pairs built on this shape.
    pub fn primitive_orbits(self) -> &'static [&'static str] {
        match self {
            FirstKindShape::E6I => &["0", "[3,2^2,1^3]", "[2^2,1^6]"],
            _ => &["0"],
        }
    }
}

impl fmt::Display for FirstKindShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FirstKindShape::A { n, k } => write!(f, "A{} marked at {k}", n - 1),
            FirstKindShape::D { n } => write!(f, "D{n} marked at a fork tip"),
            FirstKindShape::E6I => f.write_str("E6,I"),
            FirstKindShape::E6II => f.write_str("E6,II"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TwistKind {
    First { dual: usize, shape: FirstKindShape },
    Second,
}

impl TwistKind {
    pub fn is_first(self) -> bool {
        matches!(self, TwistKind::First { .. })
    }
}

/// Deletes every other marked vertex and keeps the component of `v`.
pub fn single_marked_subdiagram(d: &MarkedDiagram, v: usize) -> Result<MarkedDiagram> {
    if !d.marks.contains(&v) {
        return Err(Error::NotMarked(v));
    }
    let keep: BTreeSet<usize> = d
        .diagram
        .vertices()
        .iter()
        .copied()
        .filter(|u| *u == v || !d.marks.contains(u))
        .collect();
    let comp = d.diagram.component(v, &keep);
    Ok(MarkedDiagram {
        diagram: d.diagram.induced(&comp),
        marks: BTreeSet::from([v]),
    })
}

/// Walks from `from` away from `prev` along a path, returning visited vertices.
fn arm(diagram: &DynkinDiagram, branch: usize, first: usize) -> Vec<usize> {
    let mut out = vec![first];
    let mut prev = branch;
    let mut cur = first;
    loop {
        let next: Vec<usize> = diagram
            .neighbors(cur)
            .into_iter()
            .filter(|&u| u != prev)
            .collect();
        match next.as_slice() {
            [u] => {
                out.push(*u);
                prev = cur;
                cur = *u;
            }
            _ => return out,
        }
    }
}

/// Classifies a single marked diagram by the isomorphism type of the
/// component containing its mark.
pub fn classify_kind(dv: &MarkedDiagram) -> Result<TwistKind> {
    if !dv.is_single() {
        return Err(Error::NotSingle(dv.marks.len()));
    }
    let v = *dv.marks.iter().next().expect("one mark");
    let all: BTreeSet<usize> = dv.diagram.vertices().iter().copied().collect();
    let comp = dv.diagram.component(v, &all);
    let g = dv.diagram.induced(&comp);
    if g.edges().iter().any(|e| e.multiplicity > 1) {
        return Ok(TwistKind::Second);
    }
    let degree: BTreeMap<usize, usize> = comp.iter().map(|&u| (u, g.neighbors(u).len())).collect();
    let branches: Vec<usize> = degree.iter().filter(|(_, &d)| d >= 3).map(|(&u, _)| u).collect();
    match branches.as_slice() {
        [] => {
            // path A_m, m = |comp|
            let start = *degree
                .iter()
                .find(|(_, &d)| d <= 1)
                .map(|(u, _)| u)
                .expect("a finite path has an end");
            let mut path = vec![start];
            let mut seen = BTreeSet::from([start]);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for w in g.neighbors(u) {
                    if seen.insert(w) {
                        path.push(w);
                        queue.push_back(w);
                    }
                }
            }
            let n = path.len() + 1;
            let mut k = path.iter().position(|&u| u == v).expect("mark on path") + 1;
            // orient so that k ≤ n - k
            if 2 * k > n {
                path.reverse();
                k = n - k;
            }
            if 2 * k == n {
                return Ok(TwistKind::Second);
            }
            Ok(TwistKind::First {
                dual: path[n - k - 1],
                shape: FirstKindShape::A { n, k },
            })
        }
        [b] if degree[b] == 3 => {
            let mut arms: Vec<Vec<usize>> = g.neighbors(*b).into_iter().map(|u| arm(&g, *b, u)).collect();
            arms.sort_by_key(|a| a.len());
            let lens: Vec<usize> = arms.iter().map(Vec::len).collect();
            match lens.as_slice() {
                [1, 1, l] => {
                    let n = l + 3;
                    let tips = [arms[0][0], arms[1][0]];
                    if n % 2 == 1 && n >= 5 && tips.contains(&v) {
                        let dual = if tips[0] == v { tips[1] } else { tips[0] };
                        Ok(TwistKind::First {
                            dual,
                            shape: FirstKindShape::D { n },
                        })
                    } else {
                        Ok(TwistKind::Second)
                    }
                }
                [1, 2, 2] => {
                    let (a, c) = (&arms[1], &arms[2]);
                    let pick = |i: usize, shape| {
                        if a[i] == v {
                            Some(TwistKind::First { dual: c[i], shape })
                        } else if c[i] == v {
                            Some(TwistKind::First { dual: a[i], shape })
                        } else {
                            None
                        }
                    };
                    Ok(pick(1, FirstKindShape::E6I)
                        .or_else(|| pick(0, FirstKindShape::E6II))
                        .unwrap_or(TwistKind::Second))
                }
                _ => Ok(TwistKind::Second),
            }
        }
        _ => Ok(TwistKind::Second),
    }
}

/// The adjacent diagram obtained by twisting at `v`.
pub fn twist(d: &MarkedDiagram, v: usize) -> Result<MarkedDiagram> {
    Ok(twist_with_kind(d, v)?.0)
}

pub fn twist_with_kind(d: &MarkedDiagram, v: usize) -> Result<(MarkedDiagram, TwistKind)> {
    let dv = single_marked_subdiagram(d, v)?;
    let kind = classify_kind(&dv)?;
    let out = match kind {
        TwistKind::First { dual, .. } => {
            let mut marks = d.marks.clone();
            marks.remove(&v);
            marks.insert(dual);
            d.with_marks(marks)
        }
        TwistKind::Second => d.clone(),
    };
    Ok((out, kind))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistEdge {
    pub from: usize,
    pub to: usize,
    pub vertex: usize,
    pub first_kind: bool,
}

/// Equivalence class of a marked diagram under twists, as a graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceClass {
    pub kind: DiagramKind,
    /// Mark sets of all equivalent diagrams; index 0 is the starting diagram.
    pub members: Vec<BTreeSet<usize>>,
    /// Indices into `members` reachable by first-kind twists only.
    pub first_kind: Vec<usize>,
    pub edges: Vec<TwistEdge>,
}

impl EquivalenceClass {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn to_dot(&self) -> String {
        let mut s = format!("graph \"twists_{}\" {{\n", self.kind);
        let first: BTreeSet<usize> = self.first_kind.iter().copied().collect();
        for (i, m) in self.members.iter().enumerate() {
            let style = if first.contains(&i) { ", style=bold" } else { "" };
            s.push_str(&format!(
                "  d{i} [label=\"{}{{{}}}\"{style}];\n",
                self.kind,
                m.iter().join(",")
            ));
        }
        for e in &self.edges {
            let (kind, style) = if e.first_kind {
                ("first", "solid")
            } else {
                ("second", "dashed")
            };
            s.push_str(&format!(
                "  d{} -- d{} [label=\"{} ({kind})\", style={style}];\n",
                e.from, e.to, e.vertex
            ));
        }
        s.push_str("}\n");
        s
    }
}

/// Breadth-first closure under twists at every marked vertex.
pub fn equivalence_class(d: &MarkedDiagram) -> Result<EquivalenceClass> {
    let mut index: BTreeMap<BTreeSet<usize>, usize> = BTreeMap::from([(d.marks.clone(), 0)]);
    let mut members = vec![d.marks.clone()];
    let mut edges = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let marks = members[i].clone();
        let cur = d.with_marks(marks.clone());
        for &v in &marks {
            let (next, kind) = twist_with_kind(&cur, v)?;
            let j = match index.get(&next.marks) {
                Some(&j) => j,
                None => {
                    let j = members.len();
                    index.insert(next.marks.clone(), j);
                    members.push(next.marks);
                    queue.push_back(j);
                    j
                }
            };
            // each undirected first-kind edge is seen from both ends; keep one
            if !kind.is_first() || i < j {
                edges.push(TwistEdge {
                    from: i,
                    to: j,
                    vertex: v,
                    first_kind: kind.is_first(),
                });
            }
        }
    }
    // first-kind reachability from the start
    let mut first = BTreeSet::from([0usize]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for e in edges.iter().filter(|e| e.first_kind) {
            let other = if e.from == i {
                e.to
            } else if e.to == i {
                e.from
            } else {
                continue;
            };
            if first.insert(other) {
                queue.push_back(other);
            }
        }
    }
    Ok(EquivalenceClass {
        kind: d.diagram.kind,
        members,
        first_kind: first.into_iter().collect(),
        edges,
    })
}
