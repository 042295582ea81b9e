//! Dense exact linear algebra over a `Scalar` field and over F_p.

use crate::exact::{mulmod, powmod, Scalar};

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref<S: Scalar>(m: &mut Vec<Vec<S>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = S::one() / m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let (top, rest) = if i < r {
                    let (a, b) = m.split_at_mut(r);
                    (&b[0], &mut a[i])
                } else {
                    let (a, b) = m.split_at_mut(i);
                    (&a[r], &mut b[0])
                };
                for (x, y) in rest.iter_mut().zip(top.iter()) {
                    if !y.is_zero() {
                        *x = x.clone() - f.clone() * y.clone();
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<S: Scalar>(rows: &[Vec<S>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

/// Basis of the right kernel {x : M x = 0}.
pub fn nullspace<S: Scalar>(rows: &[Vec<S>], ncols: usize) -> Vec<Vec<S>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![S::zero(); ncols];
            v[f] = S::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

/// Rank of a matrix over F_p.
pub fn rank_modp(mut m: Vec<Vec<u64>>, p: u64) -> usize {
    let ncols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, piv);
        let inv = powmod(m[r][c], p - 2, p);
        for i in r + 1..m.len() {
            if m[i][c] != 0 {
                let f = mulmod(m[i][c], inv, p);
                for k in c..ncols {
                    let sub = mulmod(f, m[r][k], p);
                    m[i][k] = (m[i][k] + p - sub) % p;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rat;

    fn r(v: i64) -> Rat {
        Rat::from_int(v)
    }

    #[test]
    fn rank_and_kernel() {
        let m = vec![vec![r(1), r(2), r(3)], vec![r(2), r(4), r(6)], vec![r(0), r(1), r(1)]];
        assert_eq!(rank(&m, 3), 2);
        let k = nullspace(&m, 3);
        assert_eq!(k.len(), 1);
        for row in &m {
            let dot = row.iter().zip(&k[0]).fold(r(0), |a, (x, y)| a + x * y);
            assert_eq!(dot, r(0));
        }
    }

    #[test]
    fn modp_rank() {
        let p = 998_244_353;
        assert_eq!(rank_modp(vec![vec![1, 2], vec![2, 4]], p), 1);
        assert_eq!(rank_modp(vec![vec![1, 2], vec![3, 4]], p), 2);
    }
}
