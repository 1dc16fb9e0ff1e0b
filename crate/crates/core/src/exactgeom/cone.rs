use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{dot, lp_feasible, nullspace, primitive_integer, rank, HPolytope, Rat};

/// Polyhedral cone `{x : e·x = 0 for e in equalities, f·x ≥ 0 for f in inequalities}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    pub ambient_dim: usize,
    pub equalities: Vec<Vec<Rat>>,
    pub inequalities: Vec<Vec<Rat>>,
    pub lineality_hint: Option<Vec<Vec<Rat>>>,
}

/// Generators of a cone: a lineality basis plus primitive extreme rays of the
/// pointed part taken inside the orthogonal complement of the lineality space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeRays {
    pub lineality: Vec<Vec<Rat>>,
    pub rays: Vec<Vec<BigInt>>,
}

impl Cone {
    pub fn new(ambient_dim: usize) -> Self {
        Cone {
            ambient_dim,
            equalities: Vec::new(),
            inequalities: Vec::new(),
            lineality_hint: None,
        }
    }

    /// True when `x` lies in the cone.
    pub fn contains(&self, x: &[Rat]) -> bool {
        self.equalities.iter().all(|e| dot(e, x).is_zero())
            && self.inequalities.iter().all(|f| !dot(f, x).is_negative())
    }

    /// Same cone viewed as a polyhedron with zero right-hand sides.
    pub fn as_hpolytope(&self) -> HPolytope {
        let z = Rat::zero();
        HPolytope {
            ambient_dim: self.ambient_dim,
            equalities: self.equalities.iter().map(|e| (e.clone(), z.clone())).collect(),
            inequalities: self.inequalities.iter().map(|f| (f.clone(), z.clone())).collect(),
        }
    }

    /// Point with every inequality strict, if one exists.
    pub fn interior_witness(&self) -> Option<Vec<Rat>> {
        let all: Vec<usize> = (0..self.inequalities.len()).collect();
        lp_feasible(&self.as_hpolytope(), &all)
    }

    /// Linear dimension of the cone.
    pub fn dim(&self) -> usize {
        let g = cone_rays(self);
        let mut span: Vec<Vec<Rat>> = g.lineality.clone();
        span.extend(g.rays.iter().map(|r| to_rat(r)));
        rank(&span, self.ambient_dim)
    }

    /// True when every generator of `self` lies in `other`.
    pub fn is_subset_of(&self, other: &Cone) -> bool {
        let g = cone_rays(self);
        g.lineality.iter().all(|l| other.contains(l) && other.contains(&neg(l)))
            && g.rays.iter().all(|r| other.contains(&to_rat(r)))
    }

    /// Intersection as an H-representation.
    pub fn intersect(&self, other: &Cone) -> Cone {
        let mut c = self.clone();
        c.equalities.extend(other.equalities.iter().cloned());
        c.inequalities.extend(other.inequalities.iter().cloned());
        c.lineality_hint = None;
        c
    }
}

fn neg(v: &[Rat]) -> Vec<Rat> {
    v.iter().map(|x| -x.clone()).collect()
}

/// Converts an integer vector to rationals.
pub(crate) fn to_rat(v: &[BigInt]) -> Vec<Rat> {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

/// Extreme rays of a cone modulo its lineality space.
pub fn cone_rays(cone: &Cone) -> ConeRays {
    let n = cone.ambient_dim;
    let mut all = cone.equalities.clone();
    all.extend(cone.inequalities.iter().cloned());
    let lineality = nullspace(&all, n);

    let mut span_rows = cone.equalities.clone();
    span_rows.extend(lineality.iter().cloned());
    let basis = nullspace(&span_rows, n);
    let k = basis.len();
    if k == 0 {
        return ConeRays {
            lineality,
            rays: Vec::new(),
        };
    }
    let rows: Vec<Vec<Rat>> = cone
        .inequalities
        .iter()
        .map(|f| basis.iter().map(|b| dot(f, b)).collect())
        .collect();

    let mut found: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    let mut consider = |d: Vec<Rat>| {
        for cand in [d.clone(), neg(&d)] {
            if rows.iter().all(|r| !dot(r, &cand).is_negative()) {
                let mut x = vec![Rat::zero(); n];
                for (b, c) in basis.iter().zip(&cand) {
                    for (xj, bj) in x.iter_mut().zip(b) {
                        *xj += c * bj;
                    }
                }
                found.insert(primitive_integer(&x));
            }
        }
    };
    let mut chosen: Vec<usize> = Vec::new();
    subsets(&rows, k - 1, 0, &mut chosen, k, &mut consider);
    ConeRays {
        lineality,
        rays: found.into_iter().collect(),
    }
}

fn subsets(
    rows: &[Vec<Rat>],
    need: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    k: usize,
    consider: &mut impl FnMut(Vec<Rat>),
) {
    if chosen.len() == need {
        let sel: Vec<Vec<Rat>> = chosen.iter().map(|&i| rows[i].clone()).collect();
        let ns = nullspace(&sel, k);
        if ns.len() == 1 {
            consider(ns.into_iter().next().expect("one vector"));
        }
        return;
    }
    for i in start..rows.len() {
        if rows.len() - i < need - chosen.len() {
            break;
        }
        chosen.push(i);
        let sel: Vec<Vec<Rat>> = chosen.iter().map(|&j| rows[j].clone()).collect();
        if rank(&sel, k) == chosen.len() {
            subsets(rows, need, i + 1, chosen, k, consider);
        }
        chosen.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::int;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn orthant_rays() {
        let mut c = Cone::new(2);
        c.inequalities = vec![vec![int(1), int(0)], vec![int(0), int(1)]];
        let r = cone_rays(&c);
        assert!(r.lineality.is_empty());
        assert_eq!(r.rays, vec![ints(&[0, 1]), ints(&[1, 0])]);
    }

    #[test]
    fn chain_order_cone_rays() {
        let mut c = Cone::new(2);
        c.inequalities = vec![vec![int(1), int(-1)], vec![int(0), int(1)]];
        let r = cone_rays(&c);
        assert_eq!(r.rays, vec![ints(&[1, 0]), ints(&[1, 1])]);
        assert_eq!(c.dim(), 2);
    }

    #[test]
    fn lineality_and_containment() {
        let mut half = Cone::new(2);
        half.inequalities = vec![vec![int(1), int(0)]];
        let r = cone_rays(&half);
        assert_eq!(r.lineality.len(), 1);
        assert_eq!(r.rays, vec![ints(&[1, 0])]);
        let mut quad = Cone::new(2);
        quad.inequalities = vec![vec![int(1), int(0)], vec![int(0), int(1)]];
        assert!(quad.is_subset_of(&half));
        assert!(!half.is_subset_of(&quad));
    }

    #[test]
    fn hexagon_first_matryoshka_cone() {
        // x3-x2 >= x2-x1 >= 0 and x3-x2 >= x3-x4 >= 0 modulo the all-ones line.
        let mut c = Cone::new(4);
        c.inequalities = vec![
            vec![int(1), int(-2), int(1), int(0)],
            vec![int(-1), int(1), int(0), int(0)],
            vec![int(0), int(-1), int(0), int(1)],
            vec![int(0), int(0), int(1), int(-1)],
        ];
        let r = cone_rays(&c);
        assert_eq!(r.lineality.len(), 1);
        assert_eq!(r.rays.len(), 4);
        let w = c.interior_witness().unwrap();
        assert!(c.inequalities.iter().all(|f| dot(f, &w).is_positive()));
    }
}
