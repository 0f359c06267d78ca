use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{ExtNat, IntMatrix};

/// Diagonal of the Smith normal form. Only the invariant factors are kept;
/// the unimodular transforms are discarded.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
}

impl SmithForm {
    /// Order of the cokernel `Z^rows / im(M)` restricted to the diagonal part:
    /// infinite as soon as one invariant factor vanishes.
    pub fn cokernel_order(&self) -> ExtNat {
        if self.diagonal.iter().any(Zero::is_zero) {
            return ExtNat::Infinite;
        }
        let p: BigInt = self.diagonal.iter().product();
        ExtNat::from_int(&p)
    }
}

/// Smith normal form by elementary row and column operations, pivoting on the
/// entry of least absolute value in the trailing submatrix.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.to_rows();
    let k_max = rows.min(cols);

    for k in 0..k_max {
        loop {
            let Some((pr, pc)) = min_abs_entry(&a, k) else {
                break;
            };
            a.swap(k, pr);
            for row in a.iter_mut() {
                row.swap(k, pc);
            }

            let mut dirty = false;
            for r in k + 1..rows {
                if a[r][k].is_zero() {
                    continue;
                }
                let q = a[r][k].div_floor(&a[k][k]);
                for c in k..cols {
                    let v = &q * &a[k][c];
                    a[r][c] -= v;
                }
                dirty |= !a[r][k].is_zero();
            }
            for c in k + 1..cols {
                if a[k][c].is_zero() {
                    continue;
                }
                let q = a[k][c].div_floor(&a[k][k]);
                for r in k..rows {
                    let v = &q * &a[r][k];
                    a[r][c] -= v;
                }
                dirty |= !a[k][c].is_zero();
            }
            if dirty {
                continue;
            }

            // row and column cleared; enforce divisibility of the remainder
            let bad_row =
                (k + 1..rows).find(|&r| (k + 1..cols).any(|c| !a[r][c].is_multiple_of(&a[k][k])));
            match bad_row {
                Some(r) => {
                    for c in k..cols {
                        let v = a[r][c].clone();
                        a[k][c] += v;
                    }
                }
                None => break,
            }
        }
    }

    let diagonal: Vec<BigInt> = (0..k_max).map(|i| a[i][i].abs()).collect();
    let rank = diagonal.iter().filter(|d| !d.is_zero()).count();
    SmithForm { diagonal, rank }
}

fn min_abs_entry(a: &[Vec<BigInt>], k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (r, row) in a.iter().enumerate().skip(k) {
        for (c, v) in row.iter().enumerate().skip(k) {
            if v.is_zero() {
                continue;
            }
            let better = match best {
                None => true,
                Some((br, bc)) => v.abs() < a[br][bc].abs(),
            };
            if better {
                best = Some((r, c));
                if v.abs().is_one() {
                    return best;
                }
            }
        }
    }
    best
}
