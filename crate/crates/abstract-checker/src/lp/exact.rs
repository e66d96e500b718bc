use geometry::Scalar;
use num_traits::{One, Signed, Zero};

use super::{layout, Raw, Rel};

struct Tableau {
    rows: Vec<Vec<Scalar>>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            *v /= &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Maximises `obj` over columns below `limit`; false when unbounded.
    fn optimise(&mut self, obj: &[Scalar], limit: usize) -> bool {
        let rhs = self.ncols;
        loop {
            let entering = (0..limit).filter(|j| !self.basis.contains(j)).find(|&j| {
                let mut rc = obj[j].clone();
                for (i, row) in self.rows.iter().enumerate() {
                    let cb = &obj[self.basis[i]];
                    if !cb.is_zero() && !row[j].is_zero() {
                        rc -= cb * &row[j];
                    }
                }
                rc.is_positive()
            });
            let Some(c) = entering else { return true };
            let mut leave: Option<(usize, Scalar)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[c].is_positive() {
                    let ratio = &row[rhs] / &row[c];
                    let better = match &leave {
                        None => true,
                        Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            match leave {
                None => return false,
                Some((r, _)) => self.pivot(r, c),
            }
        }
    }
}

pub(super) fn solve(a: &[Vec<Scalar>], rel: &[Rel], b: &[Scalar], c: &[Scalar]) -> Raw {
    let n = c.len();
    let l = layout(a, rel, b, n);
    let (ncols, first_art) = (l.ncols, l.first_art);
    let mut t = Tableau { rows: l.rows, basis: l.basis, ncols };
    if l.n_art > 0 {
        let mut phase1 = vec![Scalar::zero(); ncols];
        for v in phase1.iter_mut().skip(first_art) {
            *v = -Scalar::one();
        }
        t.optimise(&phase1, ncols);
        if t.basis.iter().enumerate().any(|(i, &bv)| bv >= first_art && !t.rows[i][ncols].is_zero()) {
            return Raw::Infeasible;
        }
        // drive zero-valued artificials out, dropping redundant rows
        let mut i = 0;
        while i < t.rows.len() {
            if t.basis[i] < first_art {
                i += 1;
                continue;
            }
            match (0..first_art).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => {
                    t.pivot(i, j);
                    i += 1;
                }
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                }
            }
        }
    }
    let mut obj = vec![Scalar::zero(); ncols];
    obj[..n].clone_from_slice(c);
    if !t.optimise(&obj, first_art) {
        return Raw::Unbounded;
    }
    let mut point = vec![Scalar::zero(); n];
    for (i, &bv) in t.basis.iter().enumerate() {
        if bv < n {
            point[bv] = t.rows[i][ncols].clone();
        }
    }
    Raw::Optimal(point)
}
