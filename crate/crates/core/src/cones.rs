//! Chamber structure on the character space of a type-A Levi.
//!
//! A character is a rational vector with one coefficient per gl-block. All
//! cones here are cut out by differences of coordinates, so the all-ones
//! direction is always in the lineality space.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::levi::{block_action, BlockOrdering, LeviDatum, WprimeGroup};
use crate::markings::twist;
use crate::rootsys::{DiagramKind, DynkinDiagram, Family, WeylElement};

pub type Q = Ratio<i64>;

/// Coordinates indexed by block id - 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CharacterVector {
    pub coords: Vec<Q>,
}

impl CharacterVector {
    pub fn new(coords: Vec<Q>) -> Self {
        Self { coords }
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Self::new(v.iter().map(|&x| Q::from_integer(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Coordinate of block `id` (1-based).
    pub fn at(&self, id: usize) -> Q {
        self.coords[id - 1]
    }

    /// Coordinates pairwise distinct, i.e. off every wall.
    pub fn is_generic(&self) -> bool {
        self.coords.iter().all_unique()
    }
}

impl fmt::Display for CharacterVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.coords.iter().join(","))
    }
}

/// `Σ coeffs[i] · x_{i+1} ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Inequality {
    pub coeffs: Vec<i64>,
}

impl Inequality {
    /// `x_a - x_b ≥ 0` for block ids a, b.
    pub fn difference(dim: usize, a: usize, b: usize) -> Self {
        let mut coeffs = vec![0; dim];
        coeffs[a - 1] = 1;
        coeffs[b - 1] = -1;
        Self { coeffs }
    }

    pub fn eval(&self, x: &CharacterVector) -> Q {
        self.coeffs
            .iter()
            .zip(&x.coords)
            .map(|(&c, &v)| v * c)
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalCone {
    pub dim: usize,
    pub inequalities: Vec<Inequality>,
}

impl RationalCone {
    pub fn contains(&self, x: &CharacterVector) -> bool {
        self.inequalities.iter().all(|h| h.eval(x) >= Q::from_integer(0))
    }

    pub fn contains_interior(&self, x: &CharacterVector) -> bool {
        self.inequalities.iter().all(|h| h.eval(x) > Q::from_integer(0))
    }
}

fn check_dim(ord: &BlockOrdering, x: &CharacterVector) -> Result<()> {
    if x.dim() != ord.blocks.len() {
        return Err(Error::SizeMismatch {
            expected: ord.blocks.len(),
            found: x.dim(),
        });
    }
    Ok(())
}

/// Dominant characters for the parabolic with this ordering:
/// `x_{b_1} ≥ x_{b_2} ≥ ... ≥ x_{b_t}`.
pub fn nef_cone(ord: &BlockOrdering) -> RationalCone {
    let t = ord.blocks.len();
    RationalCone {
        dim: t,
        inequalities: ord
            .blocks
            .iter()
            .tuple_windows()
            .map(|(a, b)| Inequality::difference(t, a.0, b.0))
            .collect(),
    }
}

/// Facets of the nef cone, keyed by the marked vertex whose equality defines each.
pub fn facets(ord: &BlockOrdering) -> Vec<(usize, Inequality)> {
    ord.marks().into_iter().zip(nef_cone(ord).inequalities).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChamberReport {
    pub chambers: Vec<BlockOrdering>,
    pub generic: bool,
}

/// Every ordering whose nef cone contains `x`; ties yield several.
pub fn chamber_of(x: &CharacterVector, levi: &LeviDatum) -> Result<ChamberReport> {
    if levi.ambient.family() != Family::A {
        return Err(Error::NotTypeA(levi.ambient.to_string()));
    }
    let base = BlockOrdering::base(levi);
    check_dim(&base, x)?;
    let mut ids: Vec<(usize, usize)> = base.blocks.clone();
    ids.sort_by(|a, b| x.at(b.0).cmp(&x.at(a.0)).then(a.0.cmp(&b.0)));
    let groups: Vec<Vec<(usize, usize)>> = ids
        .into_iter()
        .chunk_by(|b| x.at(b.0))
        .into_iter()
        .map(|(_, g)| g.collect())
        .collect();
    let mut chambers: Vec<BlockOrdering> = groups
        .iter()
        .map(|g| g.iter().copied().permutations(g.len()).collect::<Vec<_>>())
        .multi_cartesian_product()
        .map(|parts| BlockOrdering {
            blocks: parts.into_iter().flatten().collect(),
        })
        .collect();
    chambers.sort();
    Ok(ChamberReport {
        generic: x.is_generic(),
        chambers,
    })
}

/// Closure of the movable cone attached to a base ordering: the union of
/// nef cones of orderings keeping equal-size blocks in base order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MovableCone {
    pub base: BlockOrdering,
    pub cone: RationalCone,
}

impl MovableCone {
    pub fn contains(&self, x: &CharacterVector) -> bool {
        self.cone.contains(x)
    }

    pub fn contains_interior(&self, x: &CharacterVector) -> bool {
        self.cone.contains_interior(x)
    }
}

/// Walls `x_{b_i} ≥ x_{b_j}` for equal-size blocks `b_i` before `b_j`,
/// reduced to consecutive pairs within each size class.
pub fn movable_cone(base: &BlockOrdering) -> MovableCone {
    let t = base.blocks.len();
    let sizes: BTreeSet<usize> = base.sizes().into_iter().collect();
    let inequalities = sizes
        .into_iter()
        .flat_map(|q| {
            base.blocks
                .iter()
                .filter(move |b| b.1 == q)
                .tuple_windows()
                .map(move |(a, b)| Inequality::difference(t, a.0, b.0))
        })
        .collect();
    MovableCone {
        base: base.clone(),
        cone: RationalCone { dim: t, inequalities },
    }
}

/// `(w·x)_{σ(i)} = x_i` where σ is the block permutation induced by `w`.
pub fn wprime_act(levi: &LeviDatum, w: &WeylElement, x: &CharacterVector) -> CharacterVector {
    let sigma = block_action(levi, w);
    let mut out = x.coords.clone();
    for (i, &(j, _)) in sigma.iter().enumerate() {
        out[j] = x.coords[i];
    }
    CharacterVector::new(out)
}

/// For `x` in the open movable cone, no nonidentity element of W' keeps it
/// in the closed movable cone.
pub fn fundamental_domain_check(
    levi: &LeviDatum,
    wp: &WprimeGroup,
    mov: &MovableCone,
    x: &CharacterVector,
) -> bool {
    if !mov.contains_interior(x) {
        return true;
    }
    wp.representatives
        .iter()
        .filter(|w| !w.is_identity())
        .all(|w| !mov.contains(&wprime_act(levi, w, x)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimitivePair {
    pub diagram: DiagramKind,
    pub mark: usize,
    pub orbit: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlopStep {
    /// 0-based position of the left block of the swapped pair.
    pub position: usize,
    /// Marked vertex being twisted.
    pub vertex: usize,
    pub left: (usize, usize),
    pub right: (usize, usize),
    pub primitive: PrimitivePair,
    pub result: BlockOrdering,
}

/// Inversions between `a` and `b` among pairs of blocks of distinct size.
pub fn distinct_size_inversions(a: &BlockOrdering, b: &BlockOrdering) -> usize {
    a.blocks
        .iter()
        .tuple_combinations()
        .filter(|(x, y)| x.1 != y.1 && b.position(x.0) > b.position(y.0))
        .count()
}

/// Shortest sequence of first-kind twists from `a` to `b` (bubble sort).
pub fn flop_path(a: &BlockOrdering, b: &BlockOrdering) -> Result<Vec<FlopStep>> {
    let same_blocks = a.blocks.iter().sorted().eq(b.blocks.iter().sorted());
    if !same_blocks || !b.preserves_equal_order(a) {
        return Err(Error::NoFlopPath);
    }
    let n: usize = a.sizes().iter().sum();
    let diagram = DynkinDiagram::new(DiagramKind::A(n - 1));
    let target = |id: usize| b.position(id).expect("same block ids");
    let mut cur = a.clone();
    let mut steps = Vec::new();
    loop {
        let Some(i) = (0..cur.blocks.len().saturating_sub(1))
            .find(|&i| target(cur.blocks[i].0) > target(cur.blocks[i + 1].0))
        else {
            break;
        };
        let (left, right) = (cur.blocks[i], cur.blocks[i + 1]);
        let vertex: usize = cur.blocks[..=i].iter().map(|x| x.1).sum();
        let next = cur.swap_adjacent(i);
        let before = crate::markings::MarkedDiagram::new(diagram.clone(), cur.marks())?;
        let after = twist(&before, vertex)?;
        if after.marks != next.marks() {
            return Err(Error::InvariantViolation(format!(
                "twist at {vertex} of {cur} does not give {next}"
            )));
        }
        steps.push(FlopStep {
            position: i,
            vertex,
            left,
            right,
            primitive: PrimitivePair {
                diagram: DiagramKind::A(left.1 + right.1 - 1),
                mark: left.1,
                orbit: "0".into(),
            },
            result: next.clone(),
        });
        cur = next;
    }
    Ok(steps)
}
