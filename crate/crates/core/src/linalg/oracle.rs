//! Brute-force rank by minors. Exponential; only for tiny matrices in tests.

use super::{Fp, FpMatrix, PrimeField};
use crate::{Error, Result};

const MAX_DIM: usize = 12;

/// Determinant by cofactor expansion along the first row.
fn det(field: PrimeField, m: &[Vec<Fp>]) -> Fp {
    let k = m.len();
    match k {
        0 => Fp::ONE,
        1 => m[0][0],
        _ => {
            let mut acc = Fp::ZERO;
            for j in 0..k {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Fp>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let term = field.mul(m[0][j], det(field, &minor));
                acc = if j % 2 == 0 {
                    field.add(acc, term)
                } else {
                    field.sub(acc, term)
                };
            }
            acc
        }
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Size of the largest square submatrix with nonzero determinant.
pub fn rank_oracle(m: &FpMatrix) -> Result<usize> {
    if m.rows() > MAX_DIM || m.cols() > MAX_DIM {
        return Err(Error::InvalidParameters(format!(
            "rank_oracle is limited to {MAX_DIM}x{MAX_DIM}, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let field = m.field();
    for k in (1..=m.rows().min(m.cols())).rev() {
        for rs in subsets(m.rows(), k) {
            for cs in subsets(m.cols(), k) {
                let sub: Vec<Vec<Fp>> = rs
                    .iter()
                    .map(|&i| cs.iter().map(|&j| m.get(i, j)).collect())
                    .collect();
                if !det(field, &sub).is_zero() {
                    return Ok(k);
                }
            }
        }
    }
    Ok(0)
}
