//! Exact two-phase simplex (Bland's rule) and relative-interior computation for polyhedra.

use num_traits::{One, Signed, Zero};

use super::linalg::{self, Matrix};
use crate::num::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rational, x: Vec<Rational> },
    Unbounded,
    Infeasible,
}

/// Maximizes `c y` subject to `m y = h`, `y >= 0`.
pub fn simplex_standard(c: &[Rational], m: &Matrix, h: &[Rational]) -> LpOutcome {
    let nv = c.len();
    let nr = m.len();
    // Tableau columns: nv originals, nr artificials, then rhs.
    let width = nv + nr + 1;
    let mut t: Matrix = Vec::with_capacity(nr);
    for i in 0..nr {
        let neg = h[i].is_negative();
        let mut row = vec![Rational::zero(); width];
        for j in 0..nv {
            row[j] = if neg { -m[i][j].clone() } else { m[i][j].clone() };
        }
        row[nv + i] = Rational::one();
        row[width - 1] = h[i].abs();
        t.push(row);
    }
    let mut basis: Vec<usize> = (nv..nv + nr).collect();

    // Phase 1: minimize sum of artificials, i.e. maximize -sum.
    let mut obj1 = vec![Rational::zero(); width - 1];
    for j in nv..nv + nr {
        obj1[j] = -Rational::one();
    }
    let allowed1: Vec<bool> = vec![true; width - 1];
    if run_simplex(&mut t, &mut basis, &obj1, &allowed1).is_none() {
        unreachable!("phase one is bounded");
    }
    let infeas: Rational = basis.iter().enumerate().filter(|(_, &b)| b >= nv).map(|(i, _)| t[i][width - 1].clone()).fold(Rational::zero(), |a, b| a + b);
    if !infeas.is_zero() {
        return LpOutcome::Infeasible;
    }
    // Drive remaining artificials out of the basis.
    let mut i = 0;
    while i < t.len() {
        if basis[i] >= nv {
            if let Some(j) = (0..nv).find(|&j| !t[i][j].is_zero()) {
                pivot(&mut t, i, j);
                basis[i] = j;
            } else {
                t.remove(i);
                basis.remove(i);
                continue;
            }
        }
        i += 1;
    }
    let mut obj2 = vec![Rational::zero(); width - 1];
    obj2[..nv].clone_from_slice(c);
    let mut allowed2 = vec![false; width - 1];
    for a in allowed2.iter_mut().take(nv) {
        *a = true;
    }
    match run_simplex(&mut t, &mut basis, &obj2, &allowed2) {
        None => LpOutcome::Unbounded,
        Some(value) => {
            let mut x = vec![Rational::zero(); nv];
            for (i, &b) in basis.iter().enumerate() {
                if b < nv {
                    x[b] = t[i][width - 1].clone();
                }
            }
            LpOutcome::Optimal { value, x }
        }
    }
}

fn pivot(t: &mut Matrix, r: usize, c: usize) {
    let inv = t[r][c].recip();
    for x in t[r].iter_mut() {
        *x *= &inv;
    }
    for i in 0..t.len() {
        if i != r && !t[i][c].is_zero() {
            let f = t[i][c].clone();
            let width = t[i].len();
            for j in 0..width {
                if !t[r][j].is_zero() {
                    let d = &f * &t[r][j];
                    t[i][j] -= d;
                }
            }
        }
    }
}

/// Runs primal simplex with Bland's rule. Returns the optimum or `None` if unbounded.
fn run_simplex(t: &mut Matrix, basis: &mut [usize], obj: &[Rational], allowed: &[bool]) -> Option<Rational> {
    let ncols = obj.len();
    loop {
        // Reduced costs: obj_j - sum_i obj_{basis_i} t[i][j].
        let mut entering = None;
        for j in 0..ncols {
            if !allowed[j] || basis.contains(&j) {
                continue;
            }
            let mut rc = obj[j].clone();
            for (i, &b) in basis.iter().enumerate() {
                if !obj[b].is_zero() && !t[i][j].is_zero() {
                    rc -= &obj[b] * &t[i][j];
                }
            }
            if rc.is_positive() {
                entering = Some(j);
                break;
            }
        }
        let Some(e) = entering else {
            let rhs = ncols;
            let mut v = Rational::zero();
            for (i, &b) in basis.iter().enumerate() {
                v += &obj[b] * &t[i][rhs];
            }
            return Some(v);
        };
        let rhs = ncols;
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..t.len() {
            if t[i][e].is_positive() {
                let ratio = &t[i][rhs] / &t[i][e];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let (r, _) = leave?;
        pivot(t, r, e);
        basis[r] = e;
    }
}

/// A polyhedron `{x : eq x = eq_rhs, ge x >= ge_rhs}` in free variables.
#[derive(Debug, Clone, Default)]
pub struct Polyhedron {
    pub n: usize,
    pub eq: Matrix,
    pub eq_rhs: Vec<Rational>,
    pub ge: Matrix,
    pub ge_rhs: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelInt {
    pub dim: usize,
    pub point: Vec<Rational>,
    /// Indices of inequalities tight on the whole polyhedron.
    pub implicit: Vec<usize>,
}

impl Polyhedron {
    pub fn new(n: usize) -> Self {
        Polyhedron { n, ..Default::default() }
    }

    pub fn add_eq(&mut self, row: Vec<Rational>, rhs: Rational) {
        self.eq.push(row);
        self.eq_rhs.push(rhs);
    }

    pub fn add_ge(&mut self, row: Vec<Rational>, rhs: Rational) {
        self.ge.push(row);
        self.ge_rhs.push(rhs);
    }

    /// Maximizes `c x`; free variables are split into positive and negative parts.
    pub fn maximize(&self, c: &[Rational]) -> LpOutcome {
        self.maximize_with_aux(c, &[], 0)
    }

    // Variables: x+ (n), x- (n), aux (k), slack per ge row.
    // `aux_rows[i]` adds -1 * aux_{j} to ge row i for listed j (used for strictness slacks),
    // and every aux variable is bounded by 1.
    fn maximize_with_aux(&self, c: &[Rational], aux: &[(usize, usize)], naux: usize) -> LpOutcome {
        let n = self.n;
        let ng = self.ge.len();
        let nv = 2 * n + naux + ng + naux;
        let mut m: Matrix = Vec::new();
        let mut h = Vec::new();
        for (row, rhs) in self.eq.iter().zip(&self.eq_rhs) {
            let mut r = vec![Rational::zero(); nv];
            for j in 0..n {
                r[j] = row[j].clone();
                r[n + j] = -row[j].clone();
            }
            m.push(r);
            h.push(rhs.clone());
        }
        for (i, (row, rhs)) in self.ge.iter().zip(&self.ge_rhs).enumerate() {
            let mut r = vec![Rational::zero(); nv];
            for j in 0..n {
                r[j] = row[j].clone();
                r[n + j] = -row[j].clone();
            }
            for &(gi, a) in aux {
                if gi == i {
                    r[2 * n + a] = -Rational::one();
                }
            }
            r[2 * n + naux + i] = -Rational::one();
            m.push(r);
            h.push(rhs.clone());
        }
        for a in 0..naux {
            let mut r = vec![Rational::zero(); nv];
            r[2 * n + a] = Rational::one();
            r[2 * n + naux + ng + a] = Rational::one();
            m.push(r);
            h.push(Rational::one());
        }
        let mut cc = vec![Rational::zero(); nv];
        for j in 0..c.len().min(n) {
            cc[j] = c[j].clone();
            cc[n + j] = -c[j].clone();
        }
        for j in n..c.len() {
            cc[2 * n + (j - n)] = c[j].clone();
        }
        match simplex_standard(&cc, &m, &h) {
            LpOutcome::Optimal { value, x } => {
                let mut out: Vec<Rational> = (0..n).map(|j| &x[j] - &x[n + j]).collect();
                out.extend(x[2 * n..2 * n + naux].iter().cloned());
                LpOutcome::Optimal { value, x: out }
            }
            o => o,
        }
    }

    pub fn is_feasible(&self) -> bool {
        !matches!(self.maximize(&vec![Rational::zero(); self.n]), LpOutcome::Infeasible)
    }

    /// Dimension, a relative-interior point, and the implicit equalities. `None` if empty.
    pub fn relative_interior(&self) -> Option<RelInt> {
        let n = self.n;
        let ng = self.ge.len();
        let mut unknown: Vec<usize> = (0..ng).collect();
        let mut strict: Vec<usize> = Vec::new();
        let mut samples: Vec<Vec<Rational>> = Vec::new();
        loop {
            if unknown.is_empty() {
                if samples.is_empty() {
                    match self.maximize(&vec![Rational::zero(); n]) {
                        LpOutcome::Optimal { x, .. } => samples.push(x),
                        _ => return None,
                    }
                }
                break;
            }
            let aux: Vec<(usize, usize)> = unknown.iter().enumerate().map(|(a, &g)| (g, a)).collect();
            let mut c = vec![Rational::zero(); n + unknown.len()];
            for a in 0..unknown.len() {
                c[n + a] = Rational::one();
            }
            match self.maximize_with_aux(&c, &aux, unknown.len()) {
                LpOutcome::Infeasible => return None,
                LpOutcome::Unbounded => unreachable!("aux variables are bounded"),
                LpOutcome::Optimal { value, x } => {
                    if value.is_zero() {
                        samples.push(x[..n].to_vec());
                        break;
                    }
                    let pos: Vec<usize> = unknown.iter().enumerate().filter(|(a, _)| x[n + a].is_positive()).map(|(_, &g)| g).collect();
                    strict.extend(&pos);
                    unknown.retain(|g| !pos.contains(g));
                    samples.push(x[..n].to_vec());
                }
            }
        }
        let k = Rational::from_integer(samples.len().into());
        let point: Vec<Rational> = (0..n).map(|j| samples.iter().map(|s| s[j].clone()).fold(Rational::zero(), |a, b| a + b) / &k).collect();
        let implicit = unknown;
        let mut aff: Matrix = self.eq.clone();
        for &i in &implicit {
            aff.push(self.ge[i].clone());
        }
        let dim = n - linalg::rank(&aff, n);
        Some(RelInt { dim, point, implicit })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat;

    fn r(v: i64) -> Rational {
        rat(v, 1)
    }

    #[test]
    fn simple_max() {
        // max x + y, x <= 2, y <= 3, x,y >= 0 as ge constraints.
        let mut p = Polyhedron::new(2);
        p.add_ge(vec![r(-1), r(0)], r(-2));
        p.add_ge(vec![r(0), r(-1)], r(-3));
        p.add_ge(vec![r(1), r(0)], r(0));
        p.add_ge(vec![r(0), r(1)], r(0));
        match p.maximize(&[r(1), r(1)]) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, r(5)),
            o => panic!("{o:?}"),
        }
        let ri = p.relative_interior().unwrap();
        assert_eq!(ri.dim, 2);
        assert!(ri.implicit.is_empty());
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut p = Polyhedron::new(1);
        p.add_ge(vec![r(1)], r(1));
        p.add_ge(vec![r(-1)], r(0));
        assert!(!p.is_feasible());
        assert!(p.relative_interior().is_none());
        let mut q = Polyhedron::new(1);
        q.add_ge(vec![r(1)], r(0));
        assert_eq!(q.maximize(&[r(1)]), LpOutcome::Unbounded);
    }

    #[test]
    fn detects_implicit_equalities() {
        // x >= 0, -x >= 0, y >= 1  -> dimension 1 line x = 0, y >= 1
        let mut p = Polyhedron::new(2);
        p.add_ge(vec![r(1), r(0)], r(0));
        p.add_ge(vec![r(-1), r(0)], r(0));
        p.add_ge(vec![r(0), r(1)], r(1));
        let ri = p.relative_interior().unwrap();
        assert_eq!(ri.dim, 1);
        assert_eq!(ri.implicit, vec![0, 1]);
        assert!(ri.point[1] > r(1));
        assert_eq!(ri.point[0], r(0));
    }
}
