//! Root systems, Dynkin diagrams and Weyl groups of the classical types.
//!
//! Everything lives in the standard ε-coordinates: a root is an integer
//! vector, a Weyl group element is a (signed) permutation of coordinates.
//! Type A_n uses n + 1 coordinates (the trace-zero hyperplane is implicit);
//! B_n, C_n and D_n use n coordinates.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    /// Orthogonal families, whose Jordan types obey the even-part rule.
    pub fn is_orthogonal(self) -> bool {
        matches!(self, Family::B | Family::D)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
        };
        write!(f, "{c}")
    }
}

/// A simple Lie algebra of classical type, e.g. `C2` for sp(4).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct LieTypeClassical {
    family: Family,
    rank: usize,
}

impl LieTypeClassical {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let min = match family {
            Family::A => 1,
            Family::B | Family::C => 2,
            Family::D => 3,
        };
        if rank < min {
            return Err(Error::InvalidType(format!("{family}{rank}")));
        }
        Ok(Self { family, rank })
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn rank(self) -> usize {
        self.rank
    }

    /// Size of the defining matrices.
    pub fn natural_size(self) -> usize {
        match self.family {
            Family::A => self.rank + 1,
            Family::B => 2 * self.rank + 1,
            Family::C | Family::D => 2 * self.rank,
        }
    }

    pub fn dimension(self) -> usize {
        let m = self.natural_size();
        match self.family {
            Family::A => m * m - 1,
            Family::B | Family::D => m * (m - 1) / 2,
            Family::C => m * (m + 1) / 2,
        }
    }

    /// Number of ε-coordinates used for roots and Weyl elements.
    pub fn coord_count(self) -> usize {
        match self.family {
            Family::A => self.rank + 1,
            _ => self.rank,
        }
    }

    pub fn algebra(self) -> ClassicalAlgebra {
        ClassicalAlgebra {
            family: self.family,
            size: self.natural_size(),
        }
    }

    /// Type with the given family whose defining matrices have size `m`.
    pub fn from_natural_size(family: Family, m: usize) -> Result<Self> {
        let rank = match family {
            Family::A => m.checked_sub(1),
            Family::B if m % 2 == 1 => Some(m / 2),
            Family::C | Family::D if m % 2 == 0 => Some(m / 2),
            _ => None,
        };
        rank.ok_or_else(|| Error::InvalidType(format!("{family} with natural size {m}")))
            .and_then(|r| Self::new(family, r))
    }

    pub fn weyl_order(self) -> u64 {
        let n = self.rank as u64;
        let fact = |k: u64| (1..=k).product::<u64>();
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => (1u64 << n) * fact(n),
            Family::D => (1u64 << (n - 1)) * fact(n),
        }
    }
}

impl fmt::Display for LieTypeClassical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for LieTypeClassical {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            _ => return Err(Error::Parse(format!("unknown Lie type `{s}`"))),
        };
        let rank = chars
            .as_str()
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad rank in `{s}`")))?;
        Self::new(family, rank)
    }
}

impl TryFrom<String> for LieTypeClassical {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<LieTypeClassical> for String {
    fn from(t: LieTypeClassical) -> String {
        t.to_string()
    }
}

/// A classical matrix algebra sl(m), so(m) or sp(m) of any size, including
/// the degenerate small ones (so(2), so(0), sp(0), ...) that show up as
/// residual factors of Levi subalgebras.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ClassicalAlgebra {
    pub family: Family,
    pub size: usize,
}

impl ClassicalAlgebra {
    pub fn new(family: Family, size: usize) -> Result<Self> {
        let ok = match family {
            Family::A => true,
            Family::B => size % 2 == 1,
            Family::C | Family::D => size % 2 == 0,
        };
        if !ok {
            return Err(Error::InvalidType(format!("{family} with natural size {size}")));
        }
        Ok(Self { family, size })
    }

    /// The simple type, when the algebra is one of the budgeted classical types.
    pub fn lie_type(self) -> Option<LieTypeClassical> {
        LieTypeClassical::from_natural_size(self.family, self.size).ok()
    }

    pub fn name(self) -> String {
        let prefix = match self.family {
            Family::A => "sl",
            Family::B | Family::D => "so",
            Family::C => "sp",
        };
        format!("{prefix}({})", self.size)
    }
}

impl fmt::Display for ClassicalAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// A root in ε-coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Root(pub Vec<i32>);

impl Root {
    pub fn coords(&self) -> &[i32] {
        &self.0
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }

    pub fn dot(&self, h: &[i32]) -> i32 {
        self.0.iter().zip(h).map(|(a, b)| a * b).sum()
    }

    fn unit(n: usize, i: usize, c: i32) -> Vec<i32> {
        let mut v = vec![0; n];
        v[i] = c;
        v
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            if mag == 1 {
                write!(f, "{sign}e{}", i + 1)?;
            } else {
                write!(f, "{sign}{mag}e{}", i + 1)?;
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Full root system of a classical type, sorted.
pub fn roots_of(ty: LieTypeClassical) -> Vec<Root> {
    let n = ty.coord_count();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let mut v = vec![0; n];
            v[i] = 1;
            v[j] = -1;
            out.push(Root(v));
            if ty.family != Family::A && i < j {
                for s in [1, -1] {
                    let mut v = vec![0; n];
                    v[i] = s;
                    v[j] = s;
                    out.push(Root(v));
                }
            }
        }
    }
    for i in 0..n {
        match ty.family {
            Family::B => {
                out.push(Root(Root::unit(n, i, 1)));
                out.push(Root(Root::unit(n, i, -1)));
            }
            Family::C => {
                out.push(Root(Root::unit(n, i, 2)));
                out.push(Root(Root::unit(n, i, -2)));
            }
            _ => {}
        }
    }
    out.sort();
    out
}

/// Simple roots in Bourbaki order (vertex i of the Dynkin diagram is entry i - 1).
pub fn simple_roots(ty: LieTypeClassical) -> Vec<Root> {
    let n = ty.coord_count();
    let mut out: Vec<Root> = (0..ty.rank.min(n - 1))
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v[i + 1] = -1;
            Root(v)
        })
        .collect();
    match ty.family {
        Family::A => {}
        Family::B => out.push(Root(Root::unit(n, n - 1, 1))),
        Family::C => out.push(Root(Root::unit(n, n - 1, 2))),
        Family::D => {
            let mut v = vec![0; n];
            v[n - 2] = 1;
            v[n - 1] = 1;
            out.push(Root(v));
        }
    }
    out
}

/// Coefficients of `root` in the basis of simple roots. The simple roots are
/// linearly independent, so an exact rational solve gives the unique answer;
/// `None` means the vector is not in their integer span.
pub fn simple_root_coefficients(ty: LieTypeClassical, root: &Root) -> Option<Vec<i64>> {
    use num_rational::Ratio;
    let simples = simple_roots(ty);
    let rows = ty.coord_count();
    let cols = simples.len();
    // Augmented matrix [S | r] with S columns = simple roots.
    let mut a: Vec<Vec<Ratio<i64>>> = (0..rows)
        .map(|i| {
            let mut row: Vec<Ratio<i64>> = simples
                .iter()
                .map(|s| Ratio::from_integer(s.0[i] as i64))
                .collect();
            row.push(Ratio::from_integer(root.0[i] as i64));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| a[i][c] != Ratio::from_integer(0)) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..rows {
            if i != r && a[i][c] != Ratio::from_integer(0) {
                let f = a[i][c];
                for k in 0..=cols {
                    let t = a[r][k] * f;
                    a[i][k] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if (r..rows).any(|i| a[i][cols] != Ratio::from_integer(0)) {
        return None;
    }
    let mut coeffs = vec![0i64; cols];
    for (i, &c) in pivots.iter().enumerate() {
        let v = a[i][cols];
        if !v.is_integer() {
            return None;
        }
        coeffs[c] = v.to_integer();
    }
    Some(coeffs)
}

/// Signed permutation of ε-coordinates: `e_i ↦ sign · e_j` is stored as
/// `images[i] = sign · (j + 1)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct WeylElement {
    family: Family,
    images: Vec<i8>,
}

impl WeylElement {
    pub fn identity(ty: LieTypeClassical) -> Self {
        Self {
            family: ty.family,
            images: (1..=ty.coord_count() as i8).collect(),
        }
    }

    /// Builds an element from its images, checking it is a valid element of W(ty).
    pub fn from_images(ty: LieTypeClassical, images: Vec<i8>) -> Result<Self> {
        let n = ty.coord_count();
        if images.len() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                found: images.len(),
            });
        }
        let targets: BTreeSet<i8> = images.iter().map(|x| x.abs()).collect();
        if targets.len() != n || targets.iter().any(|&t| t < 1 || t as usize > n) {
            return Err(Error::InvalidInput(format!("{images:?} is not a signed permutation")));
        }
        let flips = images.iter().filter(|&&x| x < 0).count();
        match ty.family {
            Family::A if flips > 0 => {
                return Err(Error::InvalidInput("type A Weyl elements carry no signs".into()))
            }
            Family::D if flips % 2 == 1 => {
                return Err(Error::InvalidInput(
                    "type D Weyl elements flip an even number of signs".into(),
                ))
            }
            _ => {}
        }
        Ok(Self {
            family: ty.family,
            images,
        })
    }

    pub fn images(&self) -> &[i8] {
        &self.images
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn sign_flips(&self) -> usize {
        self.images.iter().filter(|&&x| x < 0).count()
    }

    /// `(target coordinate, sign)` of the image of `e_i`.
    pub fn image_of(&self, i: usize) -> (usize, i32) {
        let x = self.images[i];
        ((x.unsigned_abs() - 1) as usize, if x < 0 { -1 } else { 1 })
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x == i as i8 + 1)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let images = other
            .images
            .iter()
            .map(|&x| {
                let (j, s) = (x.unsigned_abs() as usize - 1, x.signum());
                self.images[j] * s
            })
            .collect();
        WeylElement {
            family: self.family,
            images,
        }
    }

    pub fn inverse(&self) -> WeylElement {
        let mut images = vec![0i8; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            let j = x.unsigned_abs() as usize - 1;
            images[j] = (i as i8 + 1) * x.signum();
        }
        WeylElement {
            family: self.family,
            images,
        }
    }

    /// Applies the element to an arbitrary coordinate vector.
    pub fn act_vec(&self, v: &[i32]) -> Vec<i32> {
        let mut out = vec![0; v.len()];
        for (i, &c) in v.iter().enumerate() {
            let (j, s) = self.image_of(i);
            out[j] += s * c;
        }
        out
    }

    /// Reflection in a root, as a signed permutation.
    pub fn reflection(ty: LieTypeClassical, root: &Root) -> Result<WeylElement> {
        let n = ty.coord_count();
        if root.0.len() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                found: root.0.len(),
            });
        }
        let support: Vec<usize> = (0..n).filter(|&i| root.0[i] != 0).collect();
        let mut images: Vec<i8> = (1..=n as i8).collect();
        match support.as_slice() {
            [i] => images[*i] = -images[*i],
            [i, j] => {
                let (a, b) = (root.0[*i], root.0[*j]);
                let (si, sj) = (*i as i8 + 1, *j as i8 + 1);
                if a == -b {
                    images[*i] = sj;
                    images[*j] = si;
                } else {
                    images[*i] = -sj;
                    images[*j] = -si;
                }
            }
            _ => return Err(Error::InvalidInput(format!("{root} is not a root"))),
        }
        Self::from_images(ty, images)
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.images.iter().join(" "))
    }
}

/// Applies a Weyl group element to a root.
pub fn weyl_act(ty: LieTypeClassical, w: &WeylElement, r: &Root) -> Result<Root> {
    if w.family != ty.family || w.images.len() != ty.coord_count() {
        return Err(Error::TypeMismatch {
            expected: ty.to_string(),
            found: format!("{}-element on {} coordinates", w.family, w.images.len()),
        });
    }
    if r.0.len() != ty.coord_count() {
        return Err(Error::SizeMismatch {
            expected: ty.coord_count(),
            found: r.0.len(),
        });
    }
    Ok(Root(w.act_vec(&r.0)))
}

pub const WEYL_RANK_BUDGET_A: usize = 8;
pub const WEYL_RANK_BUDGET_BCD: usize = 7;

pub fn check_weyl_budget(ty: LieTypeClassical) -> Result<()> {
    let limit = match ty.family {
        Family::A => WEYL_RANK_BUDGET_A,
        _ => WEYL_RANK_BUDGET_BCD,
    };
    if ty.rank > limit {
        return Err(Error::budget(format!("Weyl group of {ty}"), limit as u64));
    }
    Ok(())
}

/// Enumerates W(ty) exactly once per element.
pub fn weyl_enumerate(ty: LieTypeClassical) -> Result<impl Iterator<Item = WeylElement>> {
    check_weyl_budget(ty)?;
    let n = ty.coord_count();
    let family = ty.family;
    let sign_masks: Vec<u32> = match family {
        Family::A => vec![0],
        Family::B | Family::C => (0..1u32 << n).collect(),
        Family::D => (0..1u32 << n).filter(|m| m.count_ones() % 2 == 0).collect(),
    };
    Ok((0..n).permutations(n).flat_map(move |perm| {
        let perm: Vec<i8> = perm.into_iter().map(|j| j as i8 + 1).collect();
        sign_masks.clone().into_iter().map(move |mask| {
            let images = perm
                .iter()
                .enumerate()
                .map(|(i, &j)| if mask >> i & 1 == 1 { -j } else { j })
                .collect();
            WeylElement { family, images }
        })
    }))
}

/// Simple reflections, in the order of [`simple_roots`].
pub fn simple_reflections(ty: LieTypeClassical) -> Vec<WeylElement> {
    simple_roots(ty)
        .iter()
        .map(|r| WeylElement::reflection(ty, r).expect("simple roots are roots"))
        .collect()
}

/// Closure of a generating set under composition (breadth first).
pub fn generate_group(
    ty: LieTypeClassical,
    generators: &[WeylElement],
    limit: usize,
) -> Result<HashSet<WeylElement>> {
    let id = WeylElement::identity(ty);
    let mut seen: HashSet<WeylElement> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(w) = queue.pop_front() {
        for g in generators {
            let x = g.compose(&w);
            if seen.insert(x.clone()) {
                if seen.len() > limit {
                    return Err(Error::budget("generated subgroup", limit as u64));
                }
                queue.push_back(x);
            }
        }
    }
    Ok(seen)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DiagramKind {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E6,
}

impl DiagramKind {
    pub fn rank(self) -> usize {
        match self {
            DiagramKind::A(n) | DiagramKind::B(n) | DiagramKind::C(n) | DiagramKind::D(n) => n,
            DiagramKind::E6 => 6,
        }
    }
}

impl fmt::Display for DiagramKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiagramKind::A(n) => write!(f, "A{n}"),
            DiagramKind::B(n) => write!(f, "B{n}"),
            DiagramKind::C(n) => write!(f, "C{n}"),
            DiagramKind::D(n) => write!(f, "D{n}"),
            DiagramKind::E6 => write!(f, "E6"),
        }
    }
}

impl FromStr for DiagramKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("E6") {
            return Ok(DiagramKind::E6);
        }
        let ty: LieTypeClassical = s.parse()?;
        Ok(ty.into())
    }
}

impl From<LieTypeClassical> for DiagramKind {
    fn from(ty: LieTypeClassical) -> Self {
        match ty.family {
            Family::A => DiagramKind::A(ty.rank),
            Family::B => DiagramKind::B(ty.rank),
            Family::C => DiagramKind::C(ty.rank),
            Family::D => DiagramKind::D(ty.rank),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub multiplicity: u8,
}

/// Dynkin diagram with Bourbaki vertex numbering starting at 1.
///
/// E6 is numbered 1-3-4-5-6 along the long chain with vertex 2 attached to
/// the branch vertex 4.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DynkinDiagram {
    pub kind: DiagramKind,
    vertices: Vec<usize>,
    edges: Vec<Edge>,
}

impl DynkinDiagram {
    pub fn new(kind: DiagramKind) -> Self {
        let n = kind.rank();
        let mut edges = Vec::new();
        let chain = |edges: &mut Vec<Edge>, upto: usize| {
            for i in 1..upto {
                edges.push(Edge {
                    a: i,
                    b: i + 1,
                    multiplicity: 1,
                });
            }
        };
        match kind {
            DiagramKind::A(_) => chain(&mut edges, n),
            DiagramKind::B(_) | DiagramKind::C(_) => {
                chain(&mut edges, n - 1);
                edges.push(Edge {
                    a: n - 1,
                    b: n,
                    multiplicity: 2,
                });
            }
            DiagramKind::D(_) => {
                chain(&mut edges, n - 1);
                edges.push(Edge {
                    a: n - 2,
                    b: n,
                    multiplicity: 1,
                });
            }
            DiagramKind::E6 => {
                for (a, b) in [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)] {
                    edges.push(Edge { a, b, multiplicity: 1 });
                }
            }
        }
        Self {
            kind,
            vertices: (1..=n).collect(),
            edges,
        }
    }

    pub fn of_type(ty: LieTypeClassical) -> Self {
        Self::new(ty.into())
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn has_vertex(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|e| {
                if e.a == v {
                    Some(e.b)
                } else if e.b == v {
                    Some(e.a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Connected component of `start` in the subgraph induced by `keep`.
    pub fn component(&self, start: usize, keep: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for u in self.neighbors(v) {
                if keep.contains(&u) && seen.insert(u) {
                    queue.push_back(u);
                }
            }
        }
        seen
    }

    /// Subgraph induced on `vertices`; keeps the ambient kind as a label.
    pub fn induced(&self, vertices: &BTreeSet<usize>) -> DynkinDiagram {
        DynkinDiagram {
            kind: self.kind,
            vertices: vertices.iter().copied().collect(),
            edges: self
                .edges
                .iter()
                .filter(|e| vertices.contains(&e.a) && vertices.contains(&e.b))
                .copied()
                .collect(),
        }
    }

    /// Checks that the vertex/edge data is the shape declared by `kind`.
    pub fn matches_declared_shape(&self) -> bool {
        let reference = DynkinDiagram::new(self.kind);
        let norm = |d: &DynkinDiagram| {
            let mut e: Vec<(usize, usize, u8)> = d
                .edges
                .iter()
                .map(|e| (e.a.min(e.b), e.a.max(e.b), e.multiplicity))
                .collect();
            e.sort_unstable();
            e
        };
        reference.vertices == self.vertices && norm(&reference) == norm(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(s: &str) -> LieTypeClassical {
        s.parse().unwrap()
    }

    #[test]
    fn small_root_counts() {
        let a1 = roots_of(ty("A1"));
        assert_eq!(a1, vec![Root(vec![-1, 1]), Root(vec![1, -1])]);
        assert_eq!(roots_of(ty("C2")).len(), 8);
        assert_eq!(roots_of(ty("D4")).len(), 24);
    }

    #[test]
    fn root_count_matches_dimension() {
        for s in ["A1", "A4", "B2", "B5", "C3", "C6", "D3", "D4", "D7"] {
            let t = ty(s);
            assert_eq!(roots_of(t).len(), t.dimension() - t.rank(), "{s}");
        }
    }

    #[test]
    fn act_examples() {
        let a2 = ty("A2");
        let r = Root(vec![1, -1, 0]);
        let id = WeylElement::identity(a2);
        assert_eq!(weyl_act(a2, &id, &r).unwrap(), r);
        let swap = WeylElement::from_images(a2, vec![2, 1, 3]).unwrap();
        assert_eq!(weyl_act(a2, &swap, &r).unwrap(), Root(vec![-1, 1, 0]));

        let b2 = ty("B2");
        let flip = WeylElement::from_images(b2, vec![-1, 2]).unwrap();
        assert_eq!(weyl_act(b2, &flip, &Root(vec![1, 0])).unwrap(), Root(vec![-1, 0]));
    }

    #[test]
    fn act_rejects_other_type() {
        let w = WeylElement::identity(ty("B2"));
        assert!(matches!(
            weyl_act(ty("A2"), &w, &Root(vec![1, -1, 0])),
            Err(Error::TypeMismatch { .. })
        ));
    }

    #[test]
    fn d_elements_need_even_flips() {
        assert!(WeylElement::from_images(ty("D3"), vec![-1, 2, 3]).is_err());
        assert!(WeylElement::from_images(ty("D3"), vec![-1, -2, 3]).is_ok());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(weyl_enumerate(ty("A2")).unwrap().count(), 6);
        assert_eq!(weyl_enumerate(ty("B2")).unwrap().count(), 8);
        assert_eq!(weyl_enumerate(ty("D3")).unwrap().count(), 24);
        for s in ["A3", "A5", "B3", "C4", "D4", "D5"] {
            let t = ty(s);
            let all: HashSet<_> = weyl_enumerate(t).unwrap().collect();
            assert_eq!(all.len() as u64, t.weyl_order(), "{s}");
        }
    }

    #[test]
    fn enumeration_budget() {
        assert!(matches!(weyl_enumerate(ty("A9")), Err(Error::BudgetExceeded { .. })));
        assert!(matches!(weyl_enumerate(ty("C8")), Err(Error::BudgetExceeded { .. })));
        assert!(weyl_enumerate(ty("A8")).is_ok());
    }

    #[test]
    fn simple_reflections_generate_whole_group() {
        for s in ["A1", "A3", "B2", "B3", "C3", "D3", "D4", "D5"] {
            let t = ty(s);
            let g = generate_group(t, &simple_reflections(t), 1 << 20).unwrap();
            let all: HashSet<_> = weyl_enumerate(t).unwrap().collect();
            assert_eq!(g, all, "{s}");
        }
    }

    #[test]
    fn roots_closed_under_negation_and_reflections() {
        for s in ["A3", "B3", "C3", "D4"] {
            let t = ty(s);
            let roots: HashSet<Root> = roots_of(t).into_iter().collect();
            for r in &roots {
                assert!(roots.contains(&r.neg()));
                for g in simple_reflections(t) {
                    assert!(roots.contains(&weyl_act(t, &g, r).unwrap()));
                }
            }
        }
    }

    #[test]
    fn simple_roots_form_a_base() {
        for s in ["A4", "B3", "C4", "D4", "D5"] {
            let t = ty(s);
            for r in roots_of(t) {
                let c = simple_root_coefficients(t, &r).expect("integral");
                let nonneg = c.iter().all(|&x| x >= 0);
                let nonpos = c.iter().all(|&x| x <= 0);
                assert!(nonneg || nonpos, "{s}: {r} -> {c:?}");
            }
        }
    }

    #[test]
    fn compose_and_inverse() {
        let t = ty("C3");
        let els: Vec<_> = weyl_enumerate(t).unwrap().collect();
        let id = WeylElement::identity(t);
        for w in els.iter().step_by(7) {
            assert_eq!(w.compose(&w.inverse()), id);
            for v in els.iter().step_by(11) {
                for u in els.iter().step_by(13) {
                    assert_eq!(w.compose(&v.compose(u)), w.compose(v).compose(u));
                }
            }
        }
    }

    #[test]
    fn diagram_shapes() {
        let d5 = DynkinDiagram::new(DiagramKind::D(5));
        assert_eq!(d5.neighbors(3), vec![2, 4, 5]);
        assert!(d5.matches_declared_shape());
        let e6 = DynkinDiagram::new(DiagramKind::E6);
        assert_eq!(e6.neighbors(4), vec![2, 3, 5]);
        let c3 = DynkinDiagram::new(DiagramKind::C(3));
        assert_eq!(c3.edges().last().unwrap().multiplicity, 2);
    }

    #[test]
    fn parse_types() {
        assert_eq!(ty("c2").natural_size(), 4);
        assert!("D2".parse::<LieTypeClassical>().is_err());
        assert!("B1".parse::<LieTypeClassical>().is_err());
        assert_eq!(ty("B3").dimension(), 21);
        assert_eq!(ty("C2").dimension(), 10);
    }
}
