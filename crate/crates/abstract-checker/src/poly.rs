//! Convex polyhedra over non-negative rational variables, with strict rows.

use std::fmt;

use geometry::{format_scalar, Scalar};
use num_traits::{One, Signed, Zero};

use crate::lp::{maximize, LpOutcome, Rel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cmp {
    Le,
    Lt,
    Eq,
}

/// `coef · v  cmp  rhs`
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Constraint {
    pub coef: Vec<Scalar>,
    pub cmp: Cmp,
    pub rhs: Scalar,
}

impl Constraint {
    pub fn new(dim: usize, terms: &[(usize, Scalar)], cmp: Cmp, rhs: Scalar) -> Self {
        let mut coef = vec![Scalar::zero(); dim];
        for (v, c) in terms {
            coef[*v] += c;
        }
        Constraint { coef, cmp, rhs }
    }

    fn is_trivial(&self) -> bool {
        self.coef.iter().all(Zero::is_zero)
    }

    fn trivially_holds(&self) -> bool {
        let z = Scalar::zero();
        match self.cmp {
            Cmp::Le => z <= self.rhs,
            Cmp::Lt => z < self.rhs,
            Cmp::Eq => z == self.rhs,
        }
    }

    /// Scales so the first non-zero coefficient is +1 or -1.
    fn normalised(mut self) -> Self {
        if let Some(lead) = self.coef.iter().find(|c| !c.is_zero()).cloned() {
            let f = lead.abs();
            self.coef.iter_mut().for_each(|c| *c /= &f);
            self.rhs /= &f;
            if self.cmp == Cmp::Eq && lead.is_negative() {
                self.coef.iter_mut().for_each(|c| *c = -c.clone());
                self.rhs = -self.rhs.clone();
            }
        }
        self
    }

    /// The complement, as one or two half-spaces.
    fn negations(&self) -> Vec<Constraint> {
        let neg = |c: &Constraint, cmp| Constraint {
            coef: c.coef.iter().map(|v| -v.clone()).collect(),
            cmp,
            rhs: -c.rhs.clone(),
        };
        match self.cmp {
            Cmp::Le => vec![neg(self, Cmp::Lt)],
            Cmp::Lt => vec![neg(self, Cmp::Le)],
            Cmp::Eq => vec![Constraint { cmp: Cmp::Lt, ..self.clone() }, neg(self, Cmp::Lt)],
        }
    }

    pub fn eval(&self, point: &[Scalar]) -> bool {
        let lhs: Scalar = self.coef.iter().zip(point).map(|(c, x)| c * x).sum();
        match self.cmp {
            Cmp::Le => lhs <= self.rhs,
            Cmp::Lt => lhs < self.rhs,
            Cmp::Eq => lhs == self.rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sup {
    Empty,
    Unbounded,
    Value(Scalar),
}

impl Sup {
    pub fn value(&self) -> Option<&Scalar> {
        match self {
            Sup::Value(v) => Some(v),
            _ => None,
        }
    }
}

/// Conjunction of constraints; every variable is also implicitly `>= 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polyhedron {
    dim: usize,
    cons: Vec<Constraint>,
}

impl Polyhedron {
    pub fn universe(dim: usize) -> Self {
        Polyhedron { dim, cons: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.cons
    }

    pub fn with(mut self, c: Constraint) -> Self {
        self.push(c);
        self
    }

    pub fn push(&mut self, c: Constraint) {
        assert_eq!(c.coef.len(), self.dim, "constraint dimension");
        self.cons.push(c);
    }

    /// `sum terms  cmp  rhs`
    pub fn add(&mut self, terms: &[(usize, Scalar)], cmp: Cmp, rhs: Scalar) {
        let c = Constraint::new(self.dim, terms, cmp, rhs);
        self.push(c);
    }

    pub fn and(&self, terms: &[(usize, Scalar)], cmp: Cmp, rhs: Scalar) -> Self {
        let mut p = self.clone();
        p.add(terms, cmp, rhs);
        p
    }

    fn lp(&self, objective: Option<&[Scalar]>) -> LpOutcome {
        // one extra column for epsilon when strict rows are present
        let strict = self.cons.iter().any(|c| c.cmp == Cmp::Lt) && objective.is_none();
        let n = self.dim + usize::from(strict);
        let mut a = Vec::with_capacity(self.cons.len() + 1);
        let mut rel = Vec::with_capacity(self.cons.len() + 1);
        let mut b = Vec::with_capacity(self.cons.len() + 1);
        for c in &self.cons {
            let mut row = c.coef.clone();
            if strict {
                row.push(if c.cmp == Cmp::Lt { Scalar::one() } else { Scalar::zero() });
            }
            a.push(row);
            rel.push(if c.cmp == Cmp::Eq { Rel::Eq } else { Rel::Le });
            b.push(c.rhs.clone());
        }
        let mut obj = vec![Scalar::zero(); n];
        match objective {
            Some(o) => obj[..self.dim].clone_from_slice(o),
            None if strict => {
                let mut cap = vec![Scalar::zero(); n];
                cap[self.dim] = Scalar::one();
                a.push(cap);
                rel.push(Rel::Le);
                b.push(Scalar::one());
                obj[self.dim] = Scalar::one();
            }
            None => {}
        }
        maximize(&a, &rel, &b, &obj)
    }

    /// Some point satisfies every constraint, strict ones included.
    pub fn is_feasible(&self) -> bool {
        self.witness().is_some()
    }

    /// A point satisfying every constraint, strict ones included.
    pub fn witness(&self) -> Option<Vec<Scalar>> {
        if self.cons.iter().any(|c| c.is_trivial() && !c.trivially_holds()) {
            return None;
        }
        let strict = self.cons.iter().any(|c| c.cmp == Cmp::Lt);
        match self.lp(None) {
            LpOutcome::Optimal { value, mut point } if !strict || value.is_positive() => {
                point.truncate(self.dim);
                Some(point)
            }
            _ => None,
        }
    }

    /// Supremum of `obj · v`. Strict rows are relaxed, which does not change
    /// the supremum of a non-empty set.
    pub fn sup(&self, obj: &[Scalar]) -> Sup {
        if !self.is_feasible() {
            return Sup::Empty;
        }
        match self.lp(Some(obj)) {
            LpOutcome::Optimal { value, .. } => Sup::Value(value),
            LpOutcome::Unbounded => Sup::Unbounded,
            LpOutcome::Infeasible => Sup::Empty,
        }
    }

    pub fn sup_of(&self, terms: &[(usize, Scalar)]) -> Sup {
        let mut obj = vec![Scalar::zero(); self.dim];
        for (v, c) in terms {
            obj[*v] += c;
        }
        self.sup(&obj)
    }

    /// Infimum of the linear form, `None` when empty or unbounded below.
    pub fn inf_of(&self, terms: &[(usize, Scalar)]) -> Option<Scalar> {
        let neg: Vec<(usize, Scalar)> = terms.iter().map(|(v, c)| (*v, -c.clone())).collect();
        self.sup_of(&neg).value().map(|v| -v.clone())
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Polyhedron) -> bool {
        if !other.is_feasible() {
            return true;
        }
        self.cons.iter().all(|c| c.negations().into_iter().all(|n| !other.clone().with(n).is_feasible()))
    }

    /// Existentially quantifies variable `v` away (its column becomes zero).
    pub fn eliminate(&self, v: usize) -> Polyhedron {
        if let Some(pos) = self.cons.iter().position(|c| c.cmp == Cmp::Eq && !c.coef[v].is_zero()) {
            let e = &self.cons[pos];
            let mut out = Polyhedron::universe(self.dim);
            for (i, c) in self.cons.iter().enumerate() {
                if i == pos {
                    continue;
                }
                if c.coef[v].is_zero() {
                    out.cons.push(c.clone());
                    continue;
                }
                let f = &c.coef[v] / &e.coef[v];
                let coef = c.coef.iter().zip(&e.coef).map(|(a, b)| a - &f * b).collect();
                out.cons.push(Constraint { coef, cmp: c.cmp, rhs: &c.rhs - &f * &e.rhs });
            }
            // v >= 0 becomes (rhs_e - rest) / coef_v >= 0
            let mut rest: Vec<Scalar> = e.coef.iter().map(|a| a / &e.coef[v]).collect();
            rest[v] = Scalar::zero();
            out.cons.push(Constraint { coef: rest, cmp: Cmp::Le, rhs: &e.rhs / &e.coef[v] });
            return out.tidy();
        }
        let mut keep = Vec::new();
        let mut upper = Vec::new();
        let mut lower = Vec::new();
        lower.push(Constraint::new(self.dim, &[(v, -Scalar::one())], Cmp::Le, Scalar::zero()));
        for c in &self.cons {
            if c.coef[v].is_positive() {
                upper.push(c.clone());
            } else if c.coef[v].is_negative() {
                lower.push(c.clone());
            } else {
                keep.push(c.clone());
            }
        }
        for u in &upper {
            for l in &lower {
                let fu = Scalar::one() / &u.coef[v];
                let fl = Scalar::one() / -l.coef[v].clone();
                let mut coef: Vec<Scalar> = u.coef.iter().zip(&l.coef).map(|(a, b)| a * &fu + b * &fl).collect();
                coef[v] = Scalar::zero();
                let cmp = if u.cmp == Cmp::Lt || l.cmp == Cmp::Lt { Cmp::Lt } else { Cmp::Le };
                keep.push(Constraint { coef, cmp, rhs: &u.rhs * &fu + &l.rhs * &fl });
            }
        }
        Polyhedron { dim: self.dim, cons: keep }.tidy()
    }

    pub fn eliminate_all(&self, vars: &[usize]) -> Polyhedron {
        let mut p = self.clone();
        for &v in vars {
            if p.cons.iter().any(|c| !c.coef[v].is_zero()) {
                p = p.eliminate(v).tidy();
            }
        }
        p.prune()
    }

    /// Normalises rows and removes syntactic duplicates.
    pub fn tidy(self) -> Polyhedron {
        let mut cons: Vec<Constraint> = Vec::new();
        let mut contradiction = false;
        for c in self.cons {
            if c.is_trivial() {
                if !c.trivially_holds() {
                    contradiction = true;
                }
                continue;
            }
            let c = c.normalised();
            match cons.iter_mut().find(|d| d.coef == c.coef && d.cmp != Cmp::Eq && c.cmp != Cmp::Eq) {
                Some(d) => {
                    if c.rhs < d.rhs || (c.rhs == d.rhs && c.cmp == Cmp::Lt) {
                        *d = c;
                    }
                }
                None => {
                    if !cons.contains(&c) {
                        cons.push(c);
                    }
                }
            }
        }
        if contradiction {
            cons = vec![Constraint::new(self.dim, &[], Cmp::Le, -Scalar::one())];
        }
        cons.sort();
        Polyhedron { dim: self.dim, cons }
    }

    /// Drops inequalities implied by the others.
    pub fn prune(self) -> Polyhedron {
        if !self.is_feasible() {
            return self;
        }
        let mut cons = self.cons.clone();
        let mut i = 0;
        while i < cons.len() {
            if cons[i].cmp == Cmp::Eq {
                i += 1;
                continue;
            }
            let mut rest = Polyhedron { dim: self.dim, cons: cons.clone() };
            let c = rest.cons.remove(i);
            let redundant = c.negations().into_iter().all(|n| !rest.clone().with(n).is_feasible());
            if redundant {
                cons.remove(i);
            } else {
                i += 1;
            }
        }
        Polyhedron { dim: self.dim, cons }
    }

    /// Moves variable `i` to slot `map[i]` in a space of dimension `dim`.
    /// Variables mapped to `None` must not occur in any row.
    pub fn remap(&self, map: &[Option<usize>], dim: usize) -> Polyhedron {
        let cons = self
            .cons
            .iter()
            .map(|c| {
                let mut coef = vec![Scalar::zero(); dim];
                for (i, v) in c.coef.iter().enumerate() {
                    if v.is_zero() {
                        continue;
                    }
                    let j = map[i].expect("remapped variable still constrained");
                    coef[j] += v;
                }
                Constraint { coef, cmp: c.cmp, rhs: c.rhs.clone() }
            })
            .collect();
        Polyhedron { dim, cons }.tidy()
    }

    /// Points `y` for which some `x` in `self` has `x[ghost] <= y[ghost]` and
    /// `x = y - c` on the `shift` coordinates for one real `c`; every other
    /// coordinate is equal.
    pub fn shadow(&self, ghost: usize, shift: &[usize]) -> Polyhedron {
        let (g, up, down) = (self.dim, self.dim + 1, self.dim + 2);
        let big = self.dim + 3;
        let mut out = Polyhedron::universe(big);
        for c in &self.cons {
            let mut coef = vec![Scalar::zero(); big];
            for (i, a) in c.coef.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                coef[if i == ghost { g } else { i }] += a;
                if shift.contains(&i) {
                    coef[up] -= a;
                    coef[down] += a;
                }
            }
            out.cons.push(Constraint { coef, cmp: c.cmp, rhs: c.rhs.clone() });
        }
        let one = Scalar::one;
        for &v in shift {
            out.add(&[(v, -one()), (up, one()), (down, -one())], Cmp::Le, Scalar::zero());
        }
        out.add(&[(g, one()), (ghost, -one())], Cmp::Le, Scalar::zero());
        let map: Vec<Option<usize>> = (0..big).map(|i| (i < self.dim).then_some(i)).collect();
        out.eliminate_all(&[g, up, down]).remap(&map, self.dim)
    }

    /// Every point of `self` satisfies `c`.
    pub fn entails(&self, c: &Constraint) -> bool {
        c.negations().into_iter().all(|n| !self.clone().with(n).is_feasible())
    }

    /// Standard widening: the rows of `self` that still hold on all of
    /// `newer`. The result contains both.
    pub fn widen(&self, newer: &Polyhedron) -> Polyhedron {
        let cons = self.cons.iter().filter(|c| newer.entails(c)).cloned().collect();
        Polyhedron { dim: self.dim, cons }
    }

    pub fn contains_point(&self, point: &[Scalar]) -> bool {
        point.iter().all(|x| !x.is_negative()) && self.cons.iter().all(|c| c.eval(point))
    }
}

impl fmt::Display for Polyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .cons
            .iter()
            .map(|c| {
                let terms: Vec<String> = c
                    .coef
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(i, v)| format!("{}*v{}", format_scalar(v), i))
                    .collect();
                let op = match c.cmp {
                    Cmp::Le => "<=",
                    Cmp::Lt => "<",
                    Cmp::Eq => "=",
                };
                format!("{} {} {}", terms.join(" + "), op, format_scalar(&c.rhs))
            })
            .collect();
        write!(f, "{{{}}}", rows.join(", "))
    }
}
