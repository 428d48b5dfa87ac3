//! Flags compatible with a nilpotent, counted over F_p.
//!
//! A flag `0 = V_0 ⊂ V_1 ⊂ ... ⊂ V_l = F^m` is compatible with y when
//! `y(V_i) ⊆ V_{i-1}` for all i. In the presence of a form it must also be
//! isotropic: `V_i^⊥ = V_{l-i}`. Only the first half of an isotropic flag
//! is chosen; the rest are perpendiculars, and their compatibility follows
//! from skew-adjointness of y except at the middle step of an odd-length flag.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::induction::FlagType;
use crate::oracle::field::{gaussian_binomial, Fp, Vector};
use crate::oracle::nilpotent::{canonical_nilpotent, CanonicalNilpotent, Field};
use crate::partition::Partition;
use crate::rootsys::{Family, LieTypeClassical};

pub const FLAG_DIM_BUDGET: usize = 8;
pub const GRASSMANNIAN_BUDGET: u128 = 1_000_000;
pub const DEFAULT_PRIMES: [u64; 3] = [3, 5, 7];

/// RREF basis.
pub type Subspace = Vec<Vector>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flag {
    /// `V_1, ..., V_l`.
    pub spaces: Vec<Subspace>,
}

struct Ctx {
    f: Fp,
    m: usize,
    y: Vec<Vector>,
    g: Option<Vec<Vector>>,
}

impl Ctx {
    fn new(c: &CanonicalNilpotent, p: u64) -> Result<Self> {
        if c.ty.family().is_orthogonal() && p == 2 {
            return Err(Error::UnsupportedCharacteristic(2));
        }
        Ok(Self {
            f: Fp::new(p)?,
            m: c.matrix.size(),
            y: c.matrix.reduced(p),
            g: c.form.as_ref().map(|g| g.reduced(p)),
        })
    }

    fn whole(&self) -> Subspace {
        (0..self.m)
            .map(|i| (0..self.m).map(|j| u64::from(i == j)).collect())
            .collect()
    }

    /// `{v : y v ∈ V}`.
    fn preimage(&self, v: &Subspace) -> Subspace {
        let annihilator = self.f.nullspace(v, self.m);
        let rows: Vec<Vector> = annihilator
            .iter()
            .map(|phi| {
                (0..self.m)
                    .map(|j| (0..self.m).fold(0, |s, i| self.f.add(s, self.f.mul(phi[i], self.y[i][j]))))
                    .collect()
            })
            .collect();
        self.f.rref(self.f.nullspace(&rows, self.m))
    }

    fn pair(&self, u: &[u64], w: &[u64]) -> u64 {
        let g = self.g.as_ref().expect("form");
        let gw = self.f.apply(g, w);
        self.f.dot(u, &gw)
    }

    fn perp(&self, v: &Subspace) -> Subspace {
        let g = self.g.as_ref().expect("form");
        let rows: Vec<Vector> = v
            .iter()
            .map(|u| {
                (0..self.m)
                    .map(|j| (0..self.m).fold(0, |s, i| self.f.add(s, self.f.mul(u[i], g[i][j]))))
                    .collect()
            })
            .collect();
        self.f.rref(self.f.nullspace(&rows, self.m))
    }

    fn isotropic(&self, v: &Subspace) -> bool {
        v.iter().all(|u| v.iter().all(|w| self.pair(u, w) == 0))
    }

    fn maps_into(&self, v: &Subspace, target: &Subspace) -> bool {
        v.iter().all(|u| {
            let yu = self.f.apply(&self.y, u);
            yu.iter().all(|&x| x == 0) || self.f.contains(target, &yu)
        })
    }

    fn intersection_dim(&self, a: &Subspace, b: &Subspace) -> usize {
        let mut rows = a.clone();
        rows.extend(b.iter().cloned());
        a.len() + b.len() - self.f.rank(rows)
    }
}

fn check_flag(c: &CanonicalNilpotent, flag: &FlagType) -> Result<()> {
    let m = c.matrix.size();
    if m > FLAG_DIM_BUDGET {
        return Err(Error::budget("flag-space dimension", FLAG_DIM_BUDGET as u64));
    }
    if flag.total() != m {
        return Err(Error::SizeMismatch {
            expected: m,
            found: flag.total(),
        });
    }
    let parts = flag.parts();
    if c.form.is_some() && !parts.iter().eq(parts.iter().rev()) {
        return Err(Error::InvalidInput(format!("{flag} is not an isotropic flag type")));
    }
    Ok(())
}

/// All compatible flags of the given type over F_p.
pub fn enumerate_compatible_flags(c: &CanonicalNilpotent, flag: &FlagType, p: u64) -> Result<Vec<Flag>> {
    check_flag(c, flag)?;
    let ctx = Ctx::new(c, p)?;
    let dims = flag.dims();
    let l = dims.len();
    let chosen = if ctx.g.is_some() { l / 2 } else { l };
    let mut out = Vec::new();
    let mut acc: Vec<Subspace> = Vec::new();
    extend(&ctx, &dims, chosen, &mut acc, &mut out)?;
    Ok(out)
}

fn extend(ctx: &Ctx, dims: &[usize], chosen: usize, acc: &mut Vec<Subspace>, out: &mut Vec<Flag>) -> Result<()> {
    let i = acc.len();
    if i == chosen {
        if let Some(flag) = complete(ctx, dims, acc) {
            out.push(flag);
        }
        return Ok(());
    }
    let prev: Subspace = acc.last().cloned().unwrap_or_default();
    let u = ctx.preimage(&prev);
    let mut complement: Vec<Vector> = Vec::new();
    let mut span = prev.clone();
    for v in &u {
        if !ctx.f.contains(&span, v) {
            span.push(v.clone());
            span = ctx.f.rref(span);
            complement.push(v.clone());
        }
    }
    let r = dims[i] - prev.len();
    let k = complement.len();
    if r > k {
        return Ok(());
    }
    if gaussian_binomial(k, r, ctx.f.p()) > GRASSMANNIAN_BUDGET {
        return Err(Error::budget("Grassmannian size", GRASSMANNIAN_BUDGET as u64));
    }
    for sub in ctx.f.subspaces(k, r) {
        let mut rows = prev.clone();
        rows.extend(sub.iter().map(|coeffs| ctx.f.combine(coeffs, &complement)));
        let v = ctx.f.rref(rows);
        if ctx.g.is_some() && !ctx.isotropic(&v) {
            continue;
        }
        acc.push(v);
        extend(ctx, dims, chosen, acc, out)?;
        acc.pop();
    }
    Ok(())
}

fn complete(ctx: &Ctx, dims: &[usize], acc: &[Subspace]) -> Option<Flag> {
    let l = dims.len();
    if ctx.g.is_none() {
        return Some(Flag { spaces: acc.to_vec() });
    }
    let h = acc.len();
    let mut spaces = acc.to_vec();
    for j in h + 1..=l {
        let mirror = l - j;
        let v = if mirror == 0 {
            ctx.whole()
        } else {
            ctx.perp(&acc[mirror - 1])
        };
        if v.len() != dims[j - 1] {
            return None;
        }
        spaces.push(v);
    }
    if l % 2 == 1 {
        let prev = acc.last().cloned().unwrap_or_default();
        if !ctx.maps_into(&spaces[h], &prev) {
            return None;
        }
    }
    Some(Flag { spaces })
}

/// Direct check of every defining condition, independent of the search.
pub fn is_compatible(c: &CanonicalNilpotent, flag: &Flag, p: u64) -> Result<bool> {
    let ctx = Ctx::new(c, p)?;
    let l = flag.spaces.len();
    let space = |i: usize| -> Subspace {
        if i == 0 {
            Vec::new()
        } else {
            ctx.f.rref(flag.spaces[i - 1].clone())
        }
    };
    if space(l).len() != ctx.m {
        return Ok(false);
    }
    for i in 1..=l {
        if !ctx.maps_into(&space(i), &space(i - 1)) {
            return Ok(false);
        }
        if i > 1 && ctx.f.rank([space(i - 1), space(i)].concat()) != space(i).len() {
            return Ok(false);
        }
        if ctx.g.is_some() && ctx.perp(&space(i)) != space(l - i) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn count_compatible_flags(c: &CanonicalNilpotent, flag: &FlagType, p: u64) -> Result<usize> {
    Ok(enumerate_compatible_flags(c, flag, p)?.len())
}

/// For type D with an even-length flag: counts of flags whose Lagrangian is
/// in the family of the first flag found, and in the other family.
pub fn family_split(c: &CanonicalNilpotent, flags: &[Flag], p: u64) -> Result<Option<(usize, usize)>> {
    let l = flags.first().map_or(0, |f| f.spaces.len());
    if c.ty.family() != Family::D || l % 2 == 1 || flags.is_empty() {
        return Ok(None);
    }
    let ctx = Ctx::new(c, p)?;
    let h = l / 2;
    let half = ctx.m / 2;
    let reference = &flags[0].spaces[h - 1];
    let same = flags
        .iter()
        .filter(|f| ctx.intersection_dim(&f.spaces[h - 1], reference) % 2 == half % 2)
        .count();
    Ok(Some((same, flags.len() - same)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeCount {
    pub p: u64,
    pub count: usize,
    pub family_split: Option<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagCountReport {
    pub ty: LieTypeClassical,
    pub flag: FlagType,
    pub partition: Partition,
    pub counts: Vec<PrimeCount>,
    /// All per-prime counts agree.
    pub stable: bool,
    /// The common count when stable.
    pub degree: Option<usize>,
}

pub fn degree_estimate(
    ty: LieTypeClassical,
    flag: &FlagType,
    d: &Partition,
    primes: &[u64],
) -> Result<FlagCountReport> {
    let c = canonical_nilpotent(ty, d, Field::Rational)?;
    let counts = primes
        .iter()
        .map(|&p| {
            let flags = enumerate_compatible_flags(&c, flag, p)?;
            Ok(PrimeCount {
                p,
                count: flags.len(),
                family_split: family_split(&c, &flags, p)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let stable = counts.windows(2).all(|w| w[0].count == w[1].count);
    let degree = if stable { counts.first().map(|c| c.count) } else { None };
    Ok(FlagCountReport {
        ty,
        flag: flag.clone(),
        partition: d.clone(),
        counts,
        stable,
        degree,
    })
}

/// The two isotropic flags `F ⊂ F^⊥` and `F' ⊂ F'^⊥` attached to
/// `[2^{2n},1^2]` in so(4n+2), checked directly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwinCheck {
    pub n: usize,
    pub f_compatible: bool,
    pub f_prime_compatible: bool,
    pub same_family: bool,
    pub f: Flag,
    pub f_prime: Flag,
}

pub fn twin_flags(n: usize, p: u64) -> Result<TwinCheck> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    let ty = LieTypeClassical::new(Family::D, 2 * n + 1)?;
    let mut parts = vec![2; 2 * n];
    parts.extend([1, 1]);
    let c = canonical_nilpotent(ty, &Partition::new(parts)?, Field::Rational)?;
    let ctx = Ctx::new(&c, p)?;
    let m = 4 * n + 2;
    let unit = |i: usize| -> Vector { (0..m).map(|j| u64::from(i == j)).collect() };
    let lagrangian = |extra: usize| -> Subspace {
        let mut rows: Vec<Vector> = (0..n).flat_map(|i| [unit(4 * i), unit(4 * i + 2)]).collect();
        rows.push(unit(extra));
        ctx.f.rref(rows)
    };
    let (l, l2) = (lagrangian(4 * n), lagrangian(4 * n + 1));
    let flag_of = |v: &Subspace| Flag {
        spaces: vec![v.clone(), ctx.whole()],
    };
    let (f, f_prime) = (flag_of(&l), flag_of(&l2));
    Ok(TwinCheck {
        n,
        f_compatible: is_compatible(&c, &f, p)?,
        f_prime_compatible: is_compatible(&c, &f_prime, p)?,
        same_family: ctx.intersection_dim(&l, &l2) % 2 == (2 * n + 1) % 2,
        f,
        f_prime,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::induction::richardson_a;
    use crate::partition::partitions_of;

    fn ty(s: &str) -> LieTypeClassical {
        s.parse().unwrap()
    }

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn flag(v: &[u32]) -> FlagType {
        FlagType::new(v.to_vec()).unwrap()
    }

    fn nil(t: &str, d: &str) -> CanonicalNilpotent {
        canonical_nilpotent(ty(t), &p(d), Field::Rational).unwrap()
    }

    #[test]
    fn sp4_degrees() {
        let c = nil("C2", "2,2");
        for q in DEFAULT_PRIMES {
            assert_eq!(count_compatible_flags(&c, &flag(&[2, 2]), q).unwrap(), 1);
            assert_eq!(count_compatible_flags(&c, &flag(&[1, 2, 1]), q).unwrap(), 2);
        }
        let r = degree_estimate(ty("C2"), &flag(&[1, 2, 1]), &p("2,2"), &DEFAULT_PRIMES).unwrap();
        assert!(r.stable);
        assert_eq!(r.degree, Some(2));
    }

    #[test]
    fn sp4_characteristic_two_is_unstable() {
        // every line in ker y qualifies in characteristic 2
        let c = nil("C2", "2,2");
        assert_eq!(count_compatible_flags(&c, &flag(&[1, 2, 1]), 2).unwrap(), 3);
    }

    #[test]
    fn sl3_and_sl4() {
        for q in [3, 5, 7] {
            assert_eq!(count_compatible_flags(&nil("A2", "2,1"), &flag(&[2, 1]), q).unwrap(), 1);
            assert_eq!(count_compatible_flags(&nil("A3", "2,2"), &flag(&[2, 2]), q).unwrap(), 1);
        }
    }

    #[test]
    fn trivial_flag_needs_zero() {
        assert_eq!(count_compatible_flags(&nil("A2", "1,1,1"), &flag(&[3]), 5).unwrap(), 1);
        assert_eq!(count_compatible_flags(&nil("A2", "2,1"), &flag(&[3]), 5).unwrap(), 0);
        assert_eq!(count_compatible_flags(&nil("C2", "1,1,1,1"), &flag(&[4]), 5).unwrap(), 1);
    }

    #[test]
    fn type_a_richardson_fibre_is_a_point() {
        for n in 2..=4 {
            let t = LieTypeClassical::new(Family::A, n - 1).unwrap();
            for d in partitions_of(n) {
                let c = canonical_nilpotent(t, &d, Field::Rational).unwrap();
                let q = FlagType::new(d.transpose().parts().to_vec()).unwrap();
                assert_eq!(richardson_a(&q), d);
                assert_eq!(count_compatible_flags(&c, &q, 3).unwrap(), 1, "{d}");
            }
        }
    }

    #[test]
    fn so6_twins() {
        let c = nil("D3", "2,2,1,1");
        for q in DEFAULT_PRIMES {
            let flags = enumerate_compatible_flags(&c, &flag(&[3, 3]), q).unwrap();
            assert_eq!(flags.len(), 2);
            assert_eq!(family_split(&c, &flags, q).unwrap(), Some((1, 1)));
            let t = twin_flags(1, q).unwrap();
            assert!(t.f_compatible && t.f_prime_compatible && !t.same_family);
            assert!(flags.contains(&t.f) && flags.contains(&t.f_prime));
        }
        let t = twin_flags(2, 3).unwrap();
        assert!(t.f_compatible && t.f_prime_compatible && !t.same_family);
    }

    #[test]
    fn enumerated_flags_pass_direct_check() {
        for (t, d, fl) in [("C2", "2,2", vec![1, 2, 1]), ("B2", "3,1,1", vec![1, 3, 1]), ("C3", "2,2,1,1", vec![1, 4, 1]), ("A3", "2,1,1", vec![1, 3])] {
            let c = nil(t, d);
            for f in enumerate_compatible_flags(&c, &flag(&fl), 3).unwrap() {
                assert!(is_compatible(&c, &f, 3).unwrap());
            }
        }
    }

    #[test]
    fn flag_errors() {
        let c = nil("C2", "2,2");
        assert!(count_compatible_flags(&c, &flag(&[1, 3]), 3).is_err());
        assert!(count_compatible_flags(&c, &flag(&[2, 1]), 3).is_err());
        assert!(matches!(
            count_compatible_flags(&nil("D3", "2,2,1,1"), &flag(&[3, 3]), 2),
            Err(Error::UnsupportedCharacteristic(2))
        ));
        let big = canonical_nilpotent(ty("C5"), &p("2,2,2,2,2"), Field::Rational).unwrap();
        assert!(matches!(
            count_compatible_flags(&big, &flag(&[5, 5]), 3),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
