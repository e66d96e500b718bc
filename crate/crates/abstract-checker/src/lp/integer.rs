//! Fraction-free simplex: every entry is an integer and the true tableau is
//! the integer one divided by a shared positive denominator. Each pivot
//! divides exactly by the previous pivot, so entries stay small.

use geometry::Scalar;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{layout, Raw, Rel};

struct Tableau {
    rows: Vec<Vec<i128>>,
    basis: Vec<usize>,
    ncols: usize,
    denom: i128,
}

fn mul(a: i128, b: i128) -> Option<i128> {
    a.checked_mul(b)
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) -> Option<()> {
        let p = self.rows[r][c];
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c];
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                let num = mul(*v, p)?.checked_sub(mul(f, *pv)?)?;
                debug_assert_eq!(num % self.denom, 0);
                *v = num / self.denom;
            }
        }
        self.denom = p;
        if p < 0 {
            for row in self.rows.iter_mut() {
                row.iter_mut().for_each(|v| *v = -*v);
            }
            self.denom = -p;
        }
        self.basis[r] = c;
        Some(())
    }

    /// Sign of the reduced cost of column `j` (scaled by the denominator).
    fn reduced_positive(&self, obj: &[i128], j: usize) -> Option<bool> {
        let mut rc = mul(obj[j], self.denom)?;
        for (i, row) in self.rows.iter().enumerate() {
            let cb = obj[self.basis[i]];
            if cb != 0 && row[j] != 0 {
                rc = rc.checked_sub(mul(cb, row[j])?)?;
            }
        }
        Some(rc > 0)
    }

    fn optimise(&mut self, obj: &[i128], limit: usize) -> Option<bool> {
        let rhs = self.ncols;
        loop {
            let mut entering = None;
            for j in 0..limit {
                if !self.basis.contains(&j) && self.reduced_positive(obj, j)? {
                    entering = Some(j);
                    break;
                }
            }
            let Some(c) = entering else { return Some(true) };
            let mut leave: Option<usize> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[c] <= 0 {
                    continue;
                }
                let better = match leave {
                    None => true,
                    Some(l) => {
                        // row[rhs]/row[c] against rows[l][rhs]/rows[l][c], both divisors positive
                        let lhs = mul(row[rhs], self.rows[l][c])?;
                        let other = mul(self.rows[l][rhs], row[c])?;
                        lhs < other || (lhs == other && self.basis[i] < self.basis[l])
                    }
                };
                if better {
                    leave = Some(i);
                }
            }
            match leave {
                None => return Some(false),
                Some(r) => self.pivot(r, c)?,
            }
        }
    }
}

/// Scales a rational row to integers.
fn integer_row(row: &[Scalar]) -> Option<Vec<i128>> {
    let mut l: i128 = 1;
    for v in row {
        if v.denom().is_one() {
            continue;
        }
        let d = v.denom().to_i128()?;
        l = (l / l.gcd(&d)).checked_mul(d)?;
    }
    row.iter().map(|v| v.numer().to_i128()?.checked_mul(l / v.denom().to_i128()?)).collect()
}

pub(super) fn solve(a: &[Vec<Scalar>], rel: &[Rel], b: &[Scalar], c: &[Scalar]) -> Option<Raw> {
    let n = c.len();
    let l = layout(a, rel, b, n);
    let (ncols, first_art) = (l.ncols, l.first_art);
    let rows = l.rows.iter().map(|r| integer_row(r)).collect::<Option<Vec<_>>>()?;
    let mut t = Tableau { rows, basis: l.basis, ncols, denom: 1 };
    if l.n_art > 0 {
        let mut phase1 = vec![0i128; ncols];
        for v in phase1.iter_mut().skip(first_art) {
            *v = -1;
        }
        t.optimise(&phase1, ncols)?;
        if t.basis.iter().enumerate().any(|(i, &bv)| bv >= first_art && t.rows[i][ncols] != 0) {
            return Some(Raw::Infeasible);
        }
        let mut i = 0;
        while i < t.rows.len() {
            if t.basis[i] < first_art {
                i += 1;
                continue;
            }
            match (0..first_art).find(|&j| t.rows[i][j] != 0) {
                Some(j) => {
                    t.pivot(i, j)?;
                    i += 1;
                }
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                }
            }
        }
    }
    let mut obj = vec![0i128; ncols];
    obj[..n].clone_from_slice(&integer_row(c)?);
    if !t.optimise(&obj, first_art)? {
        return Some(Raw::Unbounded);
    }
    let mut point = vec![Scalar::zero(); n];
    for (i, &bv) in t.basis.iter().enumerate() {
        if bv < n {
            point[bv] = Scalar::new(t.rows[i][ncols].into(), t.denom.into());
        }
    }
    debug_assert!(point.iter().all(|v| !v.is_negative()));
    Some(Raw::Optimal(point))
}
