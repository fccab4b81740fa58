//! Smith normal form of integer matrices and exact solving of integer-matrix
//! systems with right-hand sides in any ring.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::ring::{Elem, Ring};

/// `U * M * V = D` with `U`, `V` unimodular and `D` diagonal, its nonzero
/// entries `diag[0] | diag[1] | ...` positive.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
    pub diag: Vec<BigInt>,
    pub rows: usize,
    pub cols: usize,
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

pub fn smith(m: &[Vec<BigInt>], cols: usize) -> Smith {
    let rows = m.len();
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        // pivot: smallest nonzero magnitude in the remaining block
        let Some((pi, pj)) = smallest(&a, t, cols) else { break };
        a.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut a, t, pj);
        swap_cols(&mut v, t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                row_sub(&mut a, i, t, &q);
                row_sub(&mut u, i, t, &q);
                if !a[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                col_sub(&mut a, j, t, &q);
                col_sub(&mut v, j, t, &q);
                if !a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                // divisibility of the remaining block by the pivot
                let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
                match bad {
                    None => break,
                    Some(i) => {
                        row_add(&mut a, t, i);
                        row_add(&mut u, t, i);
                        continue;
                    }
                }
            }
            let (pi, pj) = smallest_in_cross(&a, t, rows, cols);
            a.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut a, t, pj);
            swap_cols(&mut v, t, pj);
        }
        if a[t][t].is_negative() {
            a[t] = a[t].iter().map(|x| -x).collect();
            u[t] = u[t].iter().map(|x| -x).collect();
        }
        diag.push(a[t][t].clone());
    }
    Smith { u, v, diag, rows, cols }
}

fn smallest(a: &[Vec<BigInt>], t: usize, cols: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().take(cols).skip(t) {
            if !x.is_zero() && best.map_or(true, |(bi, bj)| x.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn smallest_in_cross(a: &[Vec<BigInt>], t: usize, rows: usize, cols: usize) -> (usize, usize) {
    let mut best = (t, t);
    for i in t..rows {
        if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
            best = (i, t);
        }
    }
    for j in t..cols {
        if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
            best = (t, j);
        }
    }
    best
}

fn swap_cols(a: &mut [Vec<BigInt>], i: usize, j: usize) {
    if i != j {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
    }
}

/// `row_i -= q * row_t`
fn row_sub(a: &mut [Vec<BigInt>], i: usize, t: usize, q: &BigInt) {
    let src = a[t].clone();
    for (x, s) in a[i].iter_mut().zip(src.iter()) {
        *x -= q * s;
    }
}

/// `row_t += row_i`
fn row_add(a: &mut [Vec<BigInt>], t: usize, i: usize) {
    let src = a[i].clone();
    for (x, s) in a[t].iter_mut().zip(src.iter()) {
        *x += s;
    }
}

/// `col_j -= q * col_t`
fn col_sub(a: &mut [Vec<BigInt>], j: usize, t: usize, q: &BigInt) {
    for row in a.iter_mut() {
        let s = q * &row[t];
        row[j] -= s;
    }
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    /// A solution of `M x = b` over `ring`, if one exists: the particular
    /// solution with free coordinates zero.
    pub fn solve(&self, ring: &Ring, b: &[Elem]) -> Option<Vec<Elem>> {
        debug_assert_eq!(b.len(), self.rows);
        let c: Vec<Elem> = self
            .u
            .iter()
            .map(|row| {
                row.iter().zip(b).fold(ring.zero(), |acc, (k, x)| {
                    if k.is_zero() || x.is_zero() {
                        acc
                    } else {
                        ring.add(&acc, &ring.mul_int(x, k))
                    }
                })
            })
            .collect();
        if c[self.rank()..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut y = vec![ring.zero(); self.cols];
        for (i, d) in self.diag.iter().enumerate() {
            y[i] = ring.div_by_integer(&c[i], d)?;
        }
        let x = self
            .v
            .iter()
            .map(|row| {
                row.iter().zip(&y).fold(ring.zero(), |acc, (k, yi)| {
                    if k.is_zero() || yi.is_zero() {
                        acc
                    } else {
                        ring.add(&acc, &ring.mul_int(yi, k))
                    }
                })
            })
            .collect();
        Some(x)
    }
}
