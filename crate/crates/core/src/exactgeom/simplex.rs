//! Dense two-phase primal simplex over exact rationals with Bland's rule.

use num_traits::{One, Signed, Zero};

use super::{dot, Rat};

/// Result of a linear program.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rat, point: Vec<Rat> },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<Rat>>,
    rhs: Vec<Rat>,
    basis: Vec<usize>,
}

enum Step {
    Optimal,
    Unbounded,
    Pivoted,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = Rat::one() / &self.rows[r][c];
        for v in self.rows[r].iter_mut() {
            *v *= &inv;
        }
        self.rhs[r] *= &inv;
        let prow = self.rows[r].clone();
        let prhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for (x, y) in self.rows[i].iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            self.rhs[i] -= &f * &prhs;
        }
        self.basis[r] = c;
    }

    fn step(&mut self, obj: &[Rat], allowed: usize) -> Step {
        let entering = (0..allowed).find(|&j| {
            if self.basis.contains(&j) {
                return false;
            }
            let mut rc = obj[j].clone();
            for (i, &b) in self.basis.iter().enumerate() {
                if !obj[b].is_zero() && !self.rows[i][j].is_zero() {
                    rc -= &obj[b] * &self.rows[i][j];
                }
            }
            rc.is_positive()
        });
        let Some(c) = entering else {
            return Step::Optimal;
        };
        let mut best: Option<(usize, Rat)> = None;
        for i in 0..self.rows.len() {
            if self.rows[i][c].is_positive() {
                let ratio = &self.rhs[i] / &self.rows[i][c];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
        }
        match best {
            None => Step::Unbounded,
            Some((r, _)) => {
                self.pivot(r, c);
                Step::Pivoted
            }
        }
    }

    fn run(&mut self, obj: &[Rat], allowed: usize) -> bool {
        loop {
            match self.step(obj, allowed) {
                Step::Optimal => return true,
                Step::Unbounded => return false,
                Step::Pivoted => {}
            }
        }
    }

    fn value_of(&self, ncols: usize) -> Vec<Rat> {
        let mut z = vec![Rat::zero(); ncols];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < ncols {
                z[b] = self.rhs[i].clone();
            }
        }
        z
    }
}

/// Maximizes `objective · x` over free variables `x` subject to
/// `form · x = rhs` for each equality and `form · x ≥ rhs` for each inequality.
pub fn maximize(objective: &[Rat], equalities: &[(Vec<Rat>, Rat)], inequalities: &[(Vec<Rat>, Rat)]) -> LpOutcome {
    let n = objective.len();
    let m_ineq = inequalities.len();
    // Columns: x⁺ (n), x⁻ (n), surplus (m_ineq), artificials (one per row).
    let nstruct = 2 * n + m_ineq;
    let nrows = equalities.len() + m_ineq;
    let ncols = nstruct + nrows;
    let mut rows = Vec::with_capacity(nrows);
    let mut rhs = Vec::with_capacity(nrows);
    let all = equalities
        .iter()
        .map(|r| (r, None))
        .chain(inequalities.iter().enumerate().map(|(k, r)| (r, Some(k))));
    for (idx, ((form, b), surplus)) in all.enumerate() {
        let mut row = vec![Rat::zero(); ncols];
        for (j, a) in form.iter().enumerate() {
            row[j] = a.clone();
            row[n + j] = -a.clone();
        }
        if let Some(k) = surplus {
            row[2 * n + k] = -Rat::one();
        }
        let mut b = b.clone();
        if b.is_negative() {
            for v in row.iter_mut() {
                *v = -v.clone();
            }
            b = -b;
        }
        row[nstruct + idx] = Rat::one();
        rows.push(row);
        rhs.push(b);
    }
    let mut tab = Tableau {
        rows,
        rhs,
        basis: (nstruct..ncols).collect(),
    };

    let mut phase1 = vec![Rat::zero(); ncols];
    for v in phase1.iter_mut().skip(nstruct) {
        *v = -Rat::one();
    }
    tab.run(&phase1, ncols);
    let infeas: Rat = tab
        .basis
        .iter()
        .zip(&tab.rhs)
        .filter(|(&b, _)| b >= nstruct)
        .map(|(_, v)| v.clone())
        .fold(Rat::zero(), |a, v| a + v);
    if infeas.is_positive() {
        return LpOutcome::Infeasible;
    }

    let mut i = 0;
    while i < tab.rows.len() {
        if tab.basis[i] >= nstruct {
            if let Some(c) = (0..nstruct).find(|&c| !tab.rows[i][c].is_zero()) {
                tab.pivot(i, c);
                i += 1;
            } else {
                tab.rows.remove(i);
                tab.rhs.remove(i);
                tab.basis.remove(i);
            }
        } else {
            i += 1;
        }
    }

    let mut phase2 = vec![Rat::zero(); ncols];
    for (j, c) in objective.iter().enumerate() {
        phase2[j] = c.clone();
        phase2[n + j] = -c.clone();
    }
    if !tab.run(&phase2, nstruct) {
        return LpOutcome::Unbounded;
    }
    let z = tab.value_of(nstruct);
    let point: Vec<Rat> = (0..n).map(|j| &z[j] - &z[n + j]).collect();
    LpOutcome::Optimal {
        value: dot(objective, &point),
        point,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::{int, rat};

    #[test]
    fn box_maximum() {
        let ineqs = vec![
            (vec![int(1), int(0)], int(0)),
            (vec![int(0), int(1)], int(0)),
            (vec![int(-1), int(0)], int(-2)),
            (vec![int(0), int(-1)], int(-3)),
        ];
        match maximize(&[int(1), int(1)], &[], &ineqs) {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, int(5));
                assert_eq!(point, vec![int(2), int(3)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn detects_infeasible_and_unbounded() {
        let ineqs = vec![(vec![int(1)], int(1)), (vec![int(-1)], int(0))];
        assert_eq!(maximize(&[int(0)], &[], &ineqs), LpOutcome::Infeasible);
        let ineqs = vec![(vec![int(1)], int(1))];
        assert_eq!(maximize(&[int(1)], &[], &ineqs), LpOutcome::Unbounded);
    }

    #[test]
    fn equality_constraints_and_negative_values() {
        let eqs = vec![(vec![int(1), int(1)], int(-1))];
        let ineqs = vec![(vec![int(1), int(0)], rat(-5, 2))];
        match maximize(&[int(0), int(1)], &eqs, &ineqs) {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, rat(3, 2));
                assert_eq!(point, vec![rat(-5, 2), rat(3, 2)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn redundant_equalities_are_tolerated() {
        let eqs = vec![(vec![int(1), int(1)], int(1)), (vec![int(2), int(2)], int(2))];
        let ineqs = vec![(vec![int(1), int(0)], int(0)), (vec![int(0), int(1)], int(0))];
        match maximize(&[int(1), int(0)], &eqs, &ineqs) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, int(1)),
            other => panic!("{other:?}"),
        }
    }
}
