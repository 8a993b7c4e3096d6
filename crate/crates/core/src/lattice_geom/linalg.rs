//! Dense exact linear algebra over the rationals and unimodular row reduction over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::num::{rat_int, LatticeVector, Rational};

pub type Matrix = Vec<Vec<Rational>>;

pub fn to_matrix(rows: &[LatticeVector]) -> Matrix {
    rows.iter().map(|r| r.to_rationals()).collect()
}

/// Reduced row echelon form; returns the reduced matrix and the pivot columns.
pub fn rref(mut m: Matrix, ncols: usize) -> (Matrix, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row >= m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in 0..ncols {
                    let delta = &f * &m[row][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    m.truncate(row);
    (m, pivots)
}

pub fn rank(m: &Matrix, ncols: usize) -> usize {
    rref(m.clone(), ncols).1.len()
}

pub fn rank_int(rows: &[LatticeVector], ncols: usize) -> usize {
    rank(&to_matrix(rows), ncols)
}

/// Basis of `{x : m x = 0}`.
pub fn nullspace(m: &Matrix, ncols: usize) -> Vec<Vec<Rational>> {
    let (r, pivots) = rref(m.clone(), ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r[i][f].clone();
            }
            v
        })
        .collect()
}

/// Integer basis of the orthogonal complement of the rows (primitive vectors).
pub fn integer_nullspace(rows: &[LatticeVector], ncols: usize) -> Vec<LatticeVector> {
    nullspace(&to_matrix(rows), ncols).iter().map(|v| crate::num::primitive_from_rationals(v)).collect()
}

/// Solves `m x = rhs` returning one solution if consistent.
pub fn solve(m: &Matrix, rhs: &[Rational], ncols: usize) -> Option<Vec<Rational>> {
    let aug: Matrix = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Rational::zero(); ncols];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = r[i][ncols].clone();
    }
    Some(x)
}

pub fn det(m: &Matrix) -> Rational {
    let n = m.len();
    let mut a = m.clone();
    let mut d = Rational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !a[i][col].is_zero()) else {
            return Rational::zero();
        };
        if p != col {
            a.swap(p, col);
            d = -d;
        }
        d *= &a[col][col];
        for i in col + 1..n {
            if !a[i][col].is_zero() {
                let f = &a[i][col] / &a[col][col];
                for j in col..n {
                    let delta = &f * &a[col][j];
                    a[i][j] -= delta;
                }
            }
        }
    }
    d
}

pub fn det_int(rows: &[LatticeVector]) -> BigInt {
    det(&to_matrix(rows)).to_integer()
}

/// Unimodular `U` (rows) with `U b_j` supported on the first `s` coordinates for
/// every input vector, `s` the rank of the inputs. The last `n - s` rows of `U`
/// give a surjection `Z^n -> Z^(n-s)` whose kernel is the saturation of the span.
pub struct UnimodularReduction {
    pub u: Vec<LatticeVector>,
    pub rank: usize,
}

pub fn unimodular_reduction(vectors: &[LatticeVector], n: usize) -> UnimodularReduction {
    // Work on the n x k matrix whose columns are the vectors.
    let k = vectors.len();
    let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| vectors.iter().map(|v| v[i].clone()).collect()).collect();
    let mut u: Vec<Vec<BigInt>> = (0..n).map(|i| LatticeVector::unit(n, i).0).collect();
    let mut row = 0;
    for col in 0..k {
        if row >= n {
            break;
        }
        loop {
            // Pick the row with smallest nonzero absolute value in this column.
            let mut best: Option<usize> = None;
            for i in row..n {
                if !a[i][col].is_zero() && best.map_or(true, |b| a[i][col].abs() < a[b][col].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            a.swap(row, b);
            u.swap(row, b);
            let mut done = true;
            for i in row + 1..n {
                if !a[i][col].is_zero() {
                    let q = a[i][col].div_floor(&a[row][col]);
                    for j in 0..k {
                        let t = &q * &a[row][j];
                        a[i][j] -= t;
                    }
                    for j in 0..n {
                        let t = &q * &u[row][j];
                        u[i][j] -= t;
                    }
                    if !a[i][col].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                row += 1;
                break;
            }
        }
    }
    UnimodularReduction { u: u.into_iter().map(LatticeVector).collect(), rank: row }
}

/// Index of the sublattice generated by linearly independent vectors inside its saturation.
pub fn lattice_index(vectors: &[LatticeVector], n: usize) -> BigInt {
    let red = unimodular_reduction(vectors, n);
    debug_assert_eq!(red.rank, vectors.len());
    let s = red.rank;
    let rows: Vec<LatticeVector> = (0..s).map(|i| LatticeVector(vectors.iter().map(|v| red.u[i].dot(v)).collect())).collect();
    det_int(&rows).abs()
}

pub fn rat_vec(v: &LatticeVector) -> Vec<Rational> {
    v.0.iter().map(rat_int).collect()
}
