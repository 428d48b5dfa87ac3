//! Linear algebra over a prime field F_p, with subspaces kept in reduced
//! row echelon form so that equal subspaces have equal representations.

use crate::error::{Error, Result};

pub type Vector = Vec<u64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Result<Self> {
        let prime = p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0);
        if !prime || p > 1 << 20 {
            return Err(Error::InvalidInput(format!("{p} is not a supported prime")));
        }
        Ok(Self { p })
    }

    pub fn p(self) -> u64 {
        self.p
    }

    pub fn from_i64(self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }

    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0);
        let mut base = a % self.p;
        let mut e = self.p - 2;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn dot(self, a: &[u64], b: &[u64]) -> u64 {
        a.iter().zip(b).fold(0, |s, (&x, &y)| self.add(s, self.mul(x, y)))
    }

    /// `M v` for a row-major square matrix.
    pub fn apply(self, m: &[Vector], v: &[u64]) -> Vector {
        m.iter().map(|row| self.dot(row, v)).collect()
    }

    /// Reduced row echelon form, zero rows dropped.
    pub fn rref(self, mut rows: Vec<Vector>) -> Vec<Vector> {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut r = 0;
        for c in 0..ncols {
            let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
                continue;
            };
            rows.swap(r, piv);
            let inv = self.inv(rows[r][c]);
            for x in rows[r].iter_mut() {
                *x = self.mul(*x, inv);
            }
            for i in 0..rows.len() {
                if i != r && rows[i][c] != 0 {
                    let f = rows[i][c];
                    for j in 0..ncols {
                        let t = self.mul(f, rows[r][j]);
                        rows[i][j] = self.sub(rows[i][j], t);
                    }
                }
            }
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        rows
    }

    pub fn rank(self, rows: Vec<Vector>) -> usize {
        self.rref(rows).len()
    }

    /// Basis of `{v : row · v = 0 for every row}` in F_p^ncols.
    pub fn nullspace(self, rows: &[Vector], ncols: usize) -> Vec<Vector> {
        let r = self.rref(rows.to_vec());
        let pivots: Vec<usize> = r
            .iter()
            .map(|row| row.iter().position(|&x| x != 0).expect("nonzero row"))
            .collect();
        (0..ncols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![0; ncols];
                v[free] = 1;
                for (row, &pc) in r.iter().zip(&pivots) {
                    v[pc] = self.sub(0, row[free]);
                }
                v
            })
            .collect()
    }

    pub fn contains(self, space: &[Vector], v: &[u64]) -> bool {
        let mut rows = space.to_vec();
        rows.push(v.to_vec());
        self.rank(rows) == space.len()
    }

    /// Combination `Σ coeffs[i] · basis[i]`.
    pub fn combine(self, coeffs: &[u64], basis: &[Vector]) -> Vector {
        let n = basis.first().map_or(0, Vec::len);
        let mut out = vec![0; n];
        for (&c, b) in coeffs.iter().zip(basis) {
            if c != 0 {
                for (o, &x) in out.iter_mut().zip(b) {
                    *o = self.add(*o, self.mul(c, x));
                }
            }
        }
        out
    }

    /// Every r-dimensional subspace of F_p^k, each as its RREF basis.
    pub fn subspaces(self, k: usize, r: usize) -> Vec<Vec<Vector>> {
        let mut out = Vec::new();
        if r > k {
            return out;
        }
        for pivots in itertools::Itertools::combinations(0..k, r) {
            // free slots: (row, col) with col > pivot of row and col not a pivot
            let slots: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(i, &pc)| {
                    let pivots = &pivots;
                    (pc + 1..k).filter(move |c| !pivots.contains(c)).map(move |c| (i, c))
                })
                .collect();
            let total = (self.p as usize).pow(slots.len() as u32);
            for mut code in 0..total {
                let mut m = vec![vec![0u64; k]; r];
                for (i, &pc) in pivots.iter().enumerate() {
                    m[i][pc] = 1;
                }
                for &(i, c) in &slots {
                    m[i][c] = (code % self.p as usize) as u64;
                    code /= self.p as usize;
                }
                out.push(m);
            }
        }
        out
    }
}

/// Number of r-dimensional subspaces of F_p^k.
pub fn gaussian_binomial(k: usize, r: usize, p: u64) -> u128 {
    if r > k {
        return 0;
    }
    let p = p as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..r {
        num *= p.pow((k - i) as u32) - 1;
        den *= p.pow((i + 1) as u32) - 1;
    }
    num / den
}
