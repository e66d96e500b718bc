//! Dense two-phase simplex over exact rationals.
//!
//! Small problems only (tens of rows and columns). Every variable is
//! implicitly non-negative. Bland's rule keeps it from cycling. Problems are
//! first tried on a fraction-free 128-bit integer tableau and redone with
//! big rationals if that overflows.

use geometry::Scalar;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rel {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: Scalar, point: Vec<Scalar> },
}

mod exact;
mod integer;

/// Maximise `c·x` subject to `a_i·x (rel_i) b_i` and `x >= 0`.
pub fn maximize(a: &[Vec<Scalar>], rel: &[Rel], b: &[Scalar], c: &[Scalar]) -> LpOutcome {
    let point = match integer::solve(a, rel, b, c) {
        Some(raw) => raw,
        None => exact::solve(a, rel, b, c),
    };
    match point {
        Raw::Infeasible => LpOutcome::Infeasible,
        Raw::Unbounded => LpOutcome::Unbounded,
        Raw::Optimal(point) => {
            let value = point.iter().zip(c).map(|(x, ci)| x * ci).sum();
            LpOutcome::Optimal { value, point }
        }
    }
}

enum Raw {
    Infeasible,
    Unbounded,
    Optimal(Vec<Scalar>),
}

/// Rows with non-negative right-hand sides: (coefficients, relation, rhs).
fn normalise(a: &[Vec<Scalar>], rel: &[Rel], b: &[Scalar]) -> Vec<(Vec<Scalar>, Rel, Scalar)> {
    a.iter()
        .zip(rel)
        .zip(b)
        .map(|((row, r), rhs)| {
            if rhs.is_negative() {
                let flipped = match r {
                    Rel::Le => Rel::Ge,
                    Rel::Ge => Rel::Le,
                    Rel::Eq => Rel::Eq,
                };
                (row.iter().map(|v| -v).collect(), flipped, -rhs)
            } else {
                (row.clone(), *r, rhs.clone())
            }
        })
        .collect()
}

/// Initial tableau with slack, surplus and artificial columns appended and
/// the right-hand side last.
struct Layout {
    rows: Vec<Vec<Scalar>>,
    basis: Vec<usize>,
    ncols: usize,
    first_art: usize,
    n_art: usize,
}

fn layout(a: &[Vec<Scalar>], rel: &[Rel], b: &[Scalar], n: usize) -> Layout {
    let specs = normalise(a, rel, b);
    let n_slack = rel.iter().filter(|r| **r != Rel::Eq).count();
    let n_art = specs.iter().filter(|(_, r, _)| *r != Rel::Le).count();
    let ncols = n + n_slack + n_art;
    let first_art = n + n_slack;
    let mut rows = Vec::with_capacity(specs.len());
    let mut basis = Vec::with_capacity(specs.len());
    let (mut s, mut art) = (n, first_art);
    for (i, (row, r, rhs)) in specs.into_iter().enumerate() {
        let mut full = vec![Scalar::zero(); ncols + 1];
        full[..n].clone_from_slice(&row);
        full[ncols] = rhs;
        if rel[i] != Rel::Eq {
            if r == Rel::Le {
                full[s] = Scalar::one();
                basis.push(s);
            } else {
                full[s] = -Scalar::one();
            }
            s += 1;
        }
        if r != Rel::Le {
            full[art] = Scalar::one();
            basis.push(art);
            art += 1;
        }
        rows.push(full);
    }
    Layout { rows, basis, ncols, first_art, n_art }
}
