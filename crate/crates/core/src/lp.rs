//! Exact two-phase simplex over the rationals with Bland's rule.
//!
//! Variables are nonnegative. Infeasible programs come with a Farkas
//! multiplier vector `y` such that `y_i >= 0` on `>=` rows, `y_i <= 0` on `<=`
//! rows, `sum_i y_i a_i <= 0` componentwise and `sum_i y_i b_i > 0`.

use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coefficients: Vec<BigRational>,
    pub relation: Relation,
    pub rhs: BigRational,
}

/// Minimize `objective . x` subject to the constraints and `x >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearProgram {
    pub variables: usize,
    pub objective: Vec<BigRational>,
    pub constraints: Vec<Constraint>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { point: Vec<BigRational>, value: BigRational },
    Infeasible { farkas: Vec<BigRational> },
    Unbounded,
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

struct Tableau {
    rows: Vec<Vec<BigRational>>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn rhs(&self, r: usize) -> &BigRational {
        &self.rows[r][self.width]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for x in self.rows[r].iter_mut() {
            *x = &*x / &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.basis[r] = c;
    }

    fn reduced_cost(&self, cost: &[BigRational], j: usize) -> BigRational {
        let mut d = cost[j].clone();
        for (r, &b) in self.basis.iter().enumerate() {
            if !cost[b].is_zero() && !self.rows[r][j].is_zero() {
                d -= &cost[b] * &self.rows[r][j];
            }
        }
        d
    }

    /// Runs to optimality; `false` means unbounded.
    fn optimize(&mut self, cost: &[BigRational], allowed: &[bool]) -> bool {
        loop {
            let entering = (0..self.width)
                .filter(|&j| allowed[j] && !self.basis.contains(&j))
                .find(|&j| self.reduced_cost(cost, j).is_negative());
            let Some(c) = entering else {
                return true;
            };
            let mut best: Option<(usize, BigRational)> = None;
            for r in 0..self.rows.len() {
                if !self.rows[r][c].is_positive() {
                    continue;
                }
                let ratio = self.rhs(r) / &self.rows[r][c];
                let better = match &best {
                    None => true,
                    Some((br, bv)) => ratio < *bv || (ratio == *bv && self.basis[r] < self.basis[*br]),
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }
}

/// Solve `lp` exactly.
pub fn minimize(lp: &LinearProgram) -> LpOutcome {
    let n = lp.variables;
    let m = lp.constraints.len();
    let slack_rows: Vec<usize> = (0..m).filter(|&i| lp.constraints[i].relation != Relation::Eq).collect();
    let s = slack_rows.len();
    let width = n + s + m;
    let art = n + s;
    let mut signs = Vec::with_capacity(m);
    let mut rows = Vec::with_capacity(m);
    for (i, con) in lp.constraints.iter().enumerate() {
        let sign = if con.rhs.is_negative() { -BigRational::one() } else { BigRational::one() };
        let mut row = vec![BigRational::zero(); width + 1];
        for (j, a) in con.coefficients.iter().enumerate() {
            row[j] = a * &sign;
        }
        if let Some(t) = slack_rows.iter().position(|&r| r == i) {
            let unit = if con.relation == Relation::Le { sign.clone() } else { -sign.clone() };
            row[n + t] = unit;
        }
        row[art + i] = BigRational::one();
        row[width] = &con.rhs * &sign;
        signs.push(sign);
        rows.push(row);
    }
    let mut tab = Tableau { rows, basis: (art..art + m).collect(), width };

    let mut phase1 = vec![BigRational::zero(); width];
    for c in phase1.iter_mut().skip(art) {
        *c = BigRational::one();
    }
    let all = vec![true; width];
    tab.optimize(&phase1, &all);
    let infeasibility = (0..m).fold(BigRational::zero(), |acc, r| acc + &phase1[tab.basis[r]] * tab.rhs(r));
    if infeasibility.is_positive() {
        let farkas = (0..m)
            .map(|i| {
                let y = (0..m).fold(BigRational::zero(), |acc, r| acc + &phase1[tab.basis[r]] * &tab.rows[r][art + i]);
                y * &signs[i]
            })
            .collect();
        return LpOutcome::Infeasible { farkas };
    }

    // drive zero-level artificials out of the basis, dropping redundant rows
    let mut r = 0;
    while r < tab.rows.len() {
        if tab.basis[r] >= art {
            match (0..art).find(|&j| !tab.rows[r][j].is_zero()) {
                Some(j) => tab.pivot(r, j),
                None => {
                    tab.rows.remove(r);
                    tab.basis.remove(r);
                    continue;
                }
            }
        }
        r += 1;
    }

    let mut cost = vec![BigRational::zero(); width];
    cost[..n].clone_from_slice(&lp.objective);
    let allowed: Vec<bool> = (0..width).map(|j| j < art).collect();
    if !tab.optimize(&cost, &allowed) {
        return LpOutcome::Unbounded;
    }
    let mut point = vec![BigRational::zero(); n];
    for (r, &b) in tab.basis.iter().enumerate() {
        if b < n {
            point[b] = tab.rhs(r).clone();
        }
    }
    let value = dot(&lp.objective, &point);
    LpOutcome::Optimal { point, value }
}

/// Minimize the objectives in turn, each over the optimal face of the ones
/// before it. The reported value is that of the first objective.
pub fn minimize_lexicographic(lp: &LinearProgram, objectives: &[Vec<BigRational>]) -> LpOutcome {
    let mut current = lp.clone();
    let mut first_value = None;
    let mut last = None;
    for obj in objectives {
        current.objective = obj.clone();
        match minimize(&current) {
            LpOutcome::Optimal { point, value } => {
                first_value.get_or_insert_with(|| value.clone());
                current.constraints.push(Constraint { coefficients: obj.clone(), relation: Relation::Eq, rhs: value });
                last = Some(point);
            }
            other => return other,
        }
    }
    match (last, first_value) {
        (Some(point), Some(value)) => LpOutcome::Optimal { point, value },
        _ => minimize(lp),
    }
}

/// Check that `y` proves infeasibility of the constraints of `lp` with `x >= 0`.
pub fn is_farkas_witness(lp: &LinearProgram, y: &[BigRational]) -> bool {
    if y.len() != lp.constraints.len() {
        return false;
    }
    let signs_ok = lp.constraints.iter().zip(y).all(|(c, yi)| match c.relation {
        Relation::Eq => true,
        Relation::Ge => !yi.is_negative(),
        Relation::Le => !yi.is_positive(),
    });
    let combo_ok = (0..lp.variables).all(|j| {
        let s = lp.constraints.iter().zip(y).fold(BigRational::zero(), |acc, (c, yi)| acc + yi * &c.coefficients[j]);
        !s.is_positive()
    });
    let rhs = lp.constraints.iter().zip(y).fold(BigRational::zero(), |acc, (c, yi)| acc + yi * &c.rhs);
    signs_ok && combo_ok && rhs.is_positive()
}
