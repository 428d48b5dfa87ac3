//! Exact rank computations over Q.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::oracle::nilpotent::{canonical_nilpotent, mat_mul, Field, IntMatrix};
use crate::partition::Partition;
use crate::rootsys::{Family, LieTypeClassical};

pub const CENTRALIZER_SIZE_BUDGET: usize = 12;

/// Rank of an integer matrix, by Gaussian elimination over Q.
pub fn rank_q(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect();
    let ncols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, piv);
        let inv = BigRational::one() / &m[r][c];
        let pivot_row: Vec<BigRational> = m[r].iter().map(|x| x * &inv).collect();
        for row in m.iter_mut().skip(r + 1) {
            if !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                    *x -= &f * y;
                }
            }
        }
        m[r] = pivot_row;
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Jordan type of a nilpotent integer matrix: the number of parts ≥ k is
/// `rank(y^{k-1}) - rank(y^k)`.
pub fn jordan_type(y: &IntMatrix) -> Partition {
    let n = y.len();
    let mut ranks = vec![n];
    let mut power = y.clone();
    loop {
        let r = rank_q(&power);
        ranks.push(r);
        if r == 0 || ranks.len() > n + 1 {
            break;
        }
        power = mat_mul(&power, y);
    }
    let at_least: Vec<u32> = ranks.windows(2).map(|w| (w[0] - w[1]) as u32).collect();
    // at_least[k-1] = #parts ≥ k, so the transpose has these as parts
    Partition::new(at_least.into_iter().filter(|&c| c > 0).collect())
        .expect("positive parts")
        .transpose()
}

/// Dimension of the centralizer of the canonical nilpotent of type `d` in g.
pub fn centralizer_dim(ty: LieTypeClassical, d: &Partition) -> Result<usize> {
    let m = ty.natural_size();
    if m > CENTRALIZER_SIZE_BUDGET {
        return Err(Error::budget(
            "natural size for centralizer",
            CENTRALIZER_SIZE_BUDGET as u64,
        ));
    }
    let c = canonical_nilpotent(ty, d, Field::Rational)?;
    let y = &c.matrix.entries;
    let var = |i: usize, j: usize| i * m + j;
    let mut rows: Vec<Vec<i64>> = Vec::new();
    // [y, z] = 0
    for i in 0..m {
        for j in 0..m {
            let mut row = vec![0; m * m];
            for k in 0..m {
                row[var(k, j)] += y[i][k];
                row[var(i, k)] -= y[k][j];
            }
            rows.push(row);
        }
    }
    match (&c.form, ty.family()) {
        (None, Family::A) => {
            let mut row = vec![0; m * m];
            for i in 0..m {
                row[var(i, i)] = 1;
            }
            rows.push(row);
        }
        (Some(g), _) => {
            // zᵗG + Gz = 0
            let g = &g.entries;
            for i in 0..m {
                for j in 0..m {
                    let mut row = vec![0; m * m];
                    for k in 0..m {
                        row[var(k, i)] += g[k][j];
                        row[var(k, j)] += g[i][k];
                    }
                    rows.push(row);
                }
            }
        }
        _ => unreachable!("form present exactly for B/C/D"),
    }
    rows.retain(|r| r.iter().any(|&x| x != 0));
    Ok(m * m - rank_q(&rows))
}
