//! Explicit nilpotent matrices of prescribed Jordan type.
//!
//! Type A uses Jordan blocks. For B/C/D the space is an orthogonal sum of
//! units, largest parts first:
//!
//! * two equal parts d, d form `W_{2d}` with `Z_{2d} = diag(J_d, -J_d)`;
//! * a leftover part d forms `V_d` with `Z_d(i,i+1) = 1` for `i ≤ d/2` and
//!   `-1` after.
//!
//! Each unit carries the antidiagonal form of its own size (symmetric for
//! B/D, the skew form with `+1` in the upper half for C). The ambient form
//! is the block-diagonal sum, and the matrix lies in the algebra it defines.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::orbits::validate_partition;
use crate::partition::Partition;
use crate::rootsys::{Family, LieTypeClassical};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Field {
    Rational,
    Prime(u64),
}

pub type IntMatrix = Vec<Vec<i64>>;

/// Integer entries, read in the given field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixOverField {
    pub field: Field,
    pub entries: IntMatrix,
}

impl MatrixOverField {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// Entries reduced into `[0, p)`.
    pub fn reduced(&self, p: u64) -> Vec<Vec<u64>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|&x| x == 0)
    }
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| (0..m).map(|j| (0..k).map(|l| a[i][l] * b[l][j]).sum()).collect())
        .collect()
}

pub fn transpose(a: &IntMatrix) -> IntMatrix {
    let m = a.first().map_or(0, Vec::len);
    (0..m).map(|j| a.iter().map(|row| row[j]).collect()).collect()
}

/// Antidiagonal form of size d; `skew` puts `-1` on the lower half.
pub fn antidiagonal_form(d: usize, skew: bool) -> IntMatrix {
    let mut g = vec![vec![0; d]; d];
    for (i, row) in g.iter_mut().enumerate() {
        row[d - 1 - i] = if skew && i >= d / 2 { -1 } else { 1 };
    }
    g
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum UnitKind {
    Jordan,
    /// `V_d`, a single part.
    Single,
    /// `W_{2d}`, a pair of equal parts.
    Pair,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Unit {
    /// 0-based first basis index.
    pub start: usize,
    pub size: usize,
    pub part: u32,
    pub kind: UnitKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalNilpotent {
    pub ty: LieTypeClassical,
    pub partition: Partition,
    pub matrix: MatrixOverField,
    /// Gram matrix of the invariant form; absent for type A.
    pub form: Option<MatrixOverField>,
    pub units: Vec<Unit>,
}

fn place(target: &mut IntMatrix, start: usize, block: &IntMatrix) {
    for (i, row) in block.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            target[start + i][start + j] = x;
        }
    }
}

fn jordan(d: usize) -> IntMatrix {
    let mut z = vec![vec![0; d]; d];
    for i in 0..d.saturating_sub(1) {
        z[i][i + 1] = 1;
    }
    z
}

fn single_unit(d: usize) -> IntMatrix {
    let mut z = vec![vec![0; d]; d];
    for i in 0..d.saturating_sub(1) {
        // 1-based row i+1 ≤ d/2
        z[i][i + 1] = if 2 * (i + 1) <= d { 1 } else { -1 };
    }
    z
}

fn pair_unit(d: usize) -> IntMatrix {
    let mut z = vec![vec![0; 2 * d]; 2 * d];
    for i in 0..d.saturating_sub(1) {
        z[i][i + 1] = 1;
        z[d + i][d + i + 1] = -1;
    }
    z
}

pub fn canonical_nilpotent(ty: LieTypeClassical, d: &Partition, field: Field) -> Result<CanonicalNilpotent> {
    if !validate_partition(ty, d)? {
        return Err(Error::InvalidPartition(format!("{d} is not a {ty} orbit")));
    }
    let family = ty.family();
    if family.is_orthogonal() && field == Field::Prime(2) {
        return Err(Error::UnsupportedCharacteristic(2));
    }
    let m = ty.natural_size();
    let mut y = vec![vec![0; m]; m];
    let mut units = Vec::new();
    let mut start = 0;
    if family == Family::A {
        for &part in d.parts() {
            let size = part as usize;
            place(&mut y, start, &jordan(size));
            units.push(Unit { start, size, part, kind: UnitKind::Jordan });
            start += size;
        }
        return Ok(CanonicalNilpotent {
            ty,
            partition: d.clone(),
            matrix: MatrixOverField { field, entries: y },
            form: None,
            units,
        });
    }
    let skew = family == Family::C;
    let mut g = vec![vec![0; m]; m];
    for (part, mult) in d.groups() {
        let dd = part as usize;
        for _ in 0..mult / 2 {
            place(&mut y, start, &pair_unit(dd));
            place(&mut g, start, &antidiagonal_form(2 * dd, skew));
            units.push(Unit { start, size: 2 * dd, part, kind: UnitKind::Pair });
            start += 2 * dd;
        }
        if mult % 2 == 1 {
            place(&mut y, start, &single_unit(dd));
            place(&mut g, start, &antidiagonal_form(dd, skew));
            units.push(Unit { start, size: dd, part, kind: UnitKind::Single });
            start += dd;
        }
    }
    debug_assert_eq!(start, m);
    Ok(CanonicalNilpotent {
        ty,
        partition: d.clone(),
        matrix: MatrixOverField { field, entries: y },
        form: Some(MatrixOverField { field, entries: g }),
        units,
    })
}

impl CanonicalNilpotent {
    /// Trace zero for type A; `yᵗG + Gy = 0` otherwise.
    pub fn in_algebra(&self) -> bool {
        let y = &self.matrix.entries;
        match &self.form {
            None => (0..y.len()).map(|i| y[i][i]).sum::<i64>() == 0,
            Some(g) => {
                let a = mat_mul(&transpose(y), &g.entries);
                let b = mat_mul(&g.entries, y);
                a.iter().flatten().zip(b.iter().flatten()).all(|(x, z)| x + z == 0)
            }
        }
    }

    /// Whether the form is symmetric (B/D) or skew (C) and nondegenerate.
    pub fn form_is_valid(&self) -> bool {
        let Some(g) = &self.form else { return true };
        let sign = if self.ty.family() == Family::C { -1 } else { 1 };
        let g = &g.entries;
        let n = g.len();
        let shape = (0..n).all(|i| (0..n).all(|j| g[i][j] == sign * g[j][i]));
        // each row has exactly one ±1
        let nondeg = g.iter().all(|r| r.iter().filter(|&&x| x != 0).count() == 1)
            && (0..n).all(|j| g.iter().filter(|r| r[j] != 0).count() == 1);
        shape && nondeg
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::exact::jordan_type;
    use crate::orbits::enumerate_orbits;

    fn ty(s: &str) -> LieTypeClassical {
        s.parse().unwrap()
    }

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn type_a_jordan() {
        let c = canonical_nilpotent(ty("A2"), &p("2,1"), Field::Rational).unwrap();
        assert_eq!(c.matrix.entries, vec![vec![0, 1, 0], vec![0, 0, 0], vec![0, 0, 0]]);
        assert!(c.in_algebra());
    }

    #[test]
    fn sp4_matches_worked_matrix() {
        let c = canonical_nilpotent(ty("C2"), &p("2,2"), Field::Rational).unwrap();
        assert_eq!(
            c.matrix.entries,
            vec![vec![0, 1, 0, 0], vec![0, 0, 0, 0], vec![0, 0, 0, -1], vec![0, 0, 0, 0]]
        );
        assert_eq!(c.form.as_ref().unwrap().entries, antidiagonal_form(4, true));
        assert!(c.in_algebra());
    }

    #[test]
    fn so6_twin_layout() {
        let c = canonical_nilpotent(ty("D3"), &p("2,2,1,1"), Field::Rational).unwrap();
        let kinds: Vec<(usize, usize)> = c.units.iter().map(|u| (u.start, u.size)).collect();
        assert_eq!(kinds, vec![(0, 4), (4, 2)]);
        let y = &c.matrix.entries;
        assert_eq!(y[0][1], 1);
        assert_eq!(y[2][3], -1);
        assert!(y[4].iter().chain(&y[5]).all(|&x| x == 0));
        let g = &c.form.as_ref().unwrap().entries;
        assert_eq!(g[4][5], 1);
        assert_eq!(g[5][4], 1);
        assert_eq!(g[0][3], 1);
    }

    #[test]
    fn every_orbit_in_algebra_with_right_jordan_type() {
        for t in ["A1", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D3", "D4", "D5"] {
            for o in enumerate_orbits(ty(t)) {
                let c = canonical_nilpotent(ty(t), o.partition(), Field::Rational).unwrap();
                assert!(c.in_algebra(), "{t} {o}");
                assert!(c.form_is_valid(), "{t} {o}");
                assert_eq!(&jordan_type(&c.matrix.entries), o.partition(), "{t} {o}");
            }
        }
    }

    #[test]
    fn characteristic_two_rejected_for_orthogonal() {
        assert!(matches!(
            canonical_nilpotent(ty("D3"), &p("2,2,1,1"), Field::Prime(2)),
            Err(Error::UnsupportedCharacteristic(2))
        ));
        assert!(canonical_nilpotent(ty("C2"), &p("2,2"), Field::Prime(2)).is_ok());
        assert!(canonical_nilpotent(ty("C2"), &p("3,1"), Field::Rational).is_err());
    }
}
