use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::{dot, maximize, solve_affine, GeomError, LpOutcome, Rat};

/// Polyhedron `{x : e·x = c for (e, c) in equalities, f·x ≥ d for (f, d) in inequalities}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPolytope {
    pub ambient_dim: usize,
    pub equalities: Vec<(Vec<Rat>, Rat)>,
    pub inequalities: Vec<(Vec<Rat>, Rat)>,
}

/// A vertex together with the indices of the inequalities tight at it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Vertex {
    pub coords: Vec<Rat>,
    pub tight: Vec<usize>,
}

impl HPolytope {
    pub fn new(ambient_dim: usize) -> Self {
        HPolytope {
            ambient_dim,
            equalities: Vec::new(),
            inequalities: Vec::new(),
        }
    }

    /// True when `x` satisfies every constraint exactly.
    pub fn contains(&self, x: &[Rat]) -> bool {
        self.equalities.iter().all(|(f, c)| dot(f, x) == *c) && self.inequalities.iter().all(|(f, d)| dot(f, x) >= *d)
    }

    /// Indices of inequalities holding with equality at `x`.
    pub fn tight_set(&self, x: &[Rat]) -> Vec<usize> {
        self.inequalities
            .iter()
            .enumerate()
            .filter(|(_, (f, d))| dot(f, x) == *d)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Returns a point satisfying every constraint of `p`, with the inequalities
/// listed in `strict` holding strictly, or `None` when no such point exists.
pub fn lp_feasible(p: &HPolytope, strict: &[usize]) -> Option<Vec<Rat>> {
    let n = p.ambient_dim;
    let widen = |f: &Vec<Rat>, t: Rat| {
        let mut g = f.clone();
        g.push(t);
        g
    };
    let eqs: Vec<(Vec<Rat>, Rat)> = p
        .equalities
        .iter()
        .map(|(f, c)| (widen(f, Rat::zero()), c.clone()))
        .collect();
    let mut ineqs: Vec<(Vec<Rat>, Rat)> = p
        .inequalities
        .iter()
        .enumerate()
        .map(|(i, (f, d))| {
            let t = if strict.contains(&i) { -Rat::one() } else { Rat::zero() };
            (widen(f, t), d.clone())
        })
        .collect();
    let mut cap = vec![Rat::zero(); n + 1];
    cap[n] = -Rat::one();
    ineqs.push((cap, -Rat::one()));
    let mut obj = vec![Rat::zero(); n + 1];
    obj[n] = Rat::one();
    match maximize(&obj, &eqs, &ineqs) {
        LpOutcome::Optimal { value, mut point } => {
            if strict.is_empty() || value.is_positive() {
                point.truncate(n);
                Some(point)
            } else {
                None
            }
        }
        LpOutcome::Infeasible => None,
        LpOutcome::Unbounded => unreachable!("objective is capped"),
    }
}

/// Incrementally maintained row-echelon basis used for rank pruning.
#[derive(Clone)]
struct Echelon {
    rows: Vec<(usize, Vec<Rat>)>,
}

impl Echelon {
    fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        v
    }

    fn try_push(&self, v: &[Rat]) -> Option<Echelon> {
        let r = self.reduce(v);
        let p = r.iter().position(|x| !x.is_zero())?;
        let inv = Rat::one() / &r[p];
        let r: Vec<Rat> = r.into_iter().map(|x| x * &inv).collect();
        let mut rows: Vec<(usize, Vec<Rat>)> = self
            .rows
            .iter()
            .map(|(q, row)| {
                if row[p].is_zero() {
                    (*q, row.clone())
                } else {
                    let f = row[p].clone();
                    (*q, row.iter().zip(&r).map(|(a, b)| a - &f * b).collect())
                }
            })
            .collect();
        rows.push((p, r));
        Some(Echelon { rows })
    }
}

/// Enumerates the vertices of a bounded polyhedron by tight-set search.
///
/// Equalities are eliminated first; then every rank-complete family of tight
/// inequalities is solved and kept when feasible. The result is deduplicated
/// and sorted lexicographically, and each vertex lists its tight inequalities.
pub fn enumerate_vertices(p: &HPolytope) -> Result<Vec<Vertex>, GeomError> {
    let sol = solve_affine(&p.equalities, p.ambient_dim)?;
    let k = sol.dim();
    let rows: Vec<Vec<Rat>> = p
        .inequalities
        .iter()
        .map(|(f, _)| sol.basis.iter().map(|b| dot(f, b)).collect())
        .collect();
    let rhs: Vec<Rat> = p.inequalities.iter().map(|(f, d)| d - dot(f, &sol.point)).collect();

    if k > 0 {
        if super::rank(&rows, k) < k {
            return Err(GeomError::UnboundedPolyhedron);
        }
        let mut sum = vec![Rat::zero(); k];
        for r in &rows {
            for (s, x) in sum.iter_mut().zip(r) {
                *s += x;
            }
        }
        let homog: Vec<(Vec<Rat>, Rat)> = rows.iter().map(|r| (r.clone(), Rat::zero())).collect();
        let recession = HPolytope {
            ambient_dim: k,
            equalities: vec![(sum, Rat::one())],
            inequalities: homog,
        };
        if lp_feasible(&recession, &[]).is_some() {
            return Err(GeomError::UnboundedPolyhedron);
        }
    }

    let lift = |z: &[Rat]| -> Vec<Rat> {
        let mut x = sol.point.clone();
        for (b, zi) in sol.basis.iter().zip(z) {
            if !zi.is_zero() {
                for (xj, bj) in x.iter_mut().zip(b) {
                    *xj += zi * bj;
                }
            }
        }
        x
    };

    let found: Vec<Vec<Rat>> = if k == 0 {
        if rhs.iter().all(|r| !r.is_positive()) {
            vec![sol.point.clone()]
        } else {
            Vec::new()
        }
    } else {
        let m = rows.len();
        (0..m)
            .into_par_iter()
            .flat_map_iter(|first| {
                let mut out = Vec::new();
                if let Some(ech) = (Echelon { rows: Vec::new() }).try_push(&rows[first]) {
                    let mut chosen = vec![first];
                    search(&rows, &rhs, k, &mut chosen, &ech, &mut out);
                }
                out
            })
            .collect()
    };

    let mut uniq: BTreeMap<Vec<Rat>, ()> = BTreeMap::new();
    for z in found {
        uniq.insert(lift(&z), ());
    }
    Ok(uniq
        .into_keys()
        .map(|coords| {
            let tight = p.tight_set(&coords);
            Vertex { coords, tight }
        })
        .collect())
}

fn search(rows: &[Vec<Rat>], rhs: &[Rat], k: usize, chosen: &mut Vec<usize>, ech: &Echelon, out: &mut Vec<Vec<Rat>>) {
    if chosen.len() == k {
        let eqs: Vec<(Vec<Rat>, Rat)> = chosen.iter().map(|&i| (rows[i].clone(), rhs[i].clone())).collect();
        if let Ok(s) = solve_affine(&eqs, k) {
            let z = s.point;
            if rows.iter().zip(rhs).all(|(r, d)| dot(r, &z) >= *d) {
                out.push(z);
            }
        }
        return;
    }
    let last = *chosen.last().expect("nonempty");
    let need = k - chosen.len();
    for i in last + 1..rows.len() {
        if rows.len() - i < need {
            break;
        }
        if let Some(next) = ech.try_push(&rows[i]) {
            chosen.push(i);
            search(rows, rhs, k, chosen, &next, out);
            chosen.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::int;

    fn unit_square() -> HPolytope {
        let mut p = HPolytope::new(2);
        p.inequalities = vec![
            (vec![int(1), int(0)], int(0)),
            (vec![int(0), int(1)], int(0)),
            (vec![int(-1), int(0)], int(-1)),
            (vec![int(0), int(-1)], int(-1)),
        ];
        p
    }

    #[test]
    fn square_has_four_vertices() {
        let vs = enumerate_vertices(&unit_square()).unwrap();
        assert_eq!(vs.len(), 4);
        assert_eq!(vs[0].coords, vec![int(0), int(0)]);
        assert_eq!(vs[0].tight, vec![0, 1]);
    }

    #[test]
    fn permuted_constraints_give_same_vertices() {
        let p = unit_square();
        let mut q = p.clone();
        q.inequalities.reverse();
        let a: Vec<_> = enumerate_vertices(&p).unwrap().into_iter().map(|v| v.coords).collect();
        let b: Vec<_> = enumerate_vertices(&q).unwrap().into_iter().map(|v| v.coords).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn unbounded_is_reported() {
        let mut p = HPolytope::new(2);
        p.inequalities = vec![(vec![int(1), int(0)], int(0)), (vec![int(0), int(1)], int(0))];
        assert_eq!(enumerate_vertices(&p), Err(GeomError::UnboundedPolyhedron));
        let mut strip = HPolytope::new(2);
        strip.inequalities = vec![(vec![int(1), int(0)], int(0)), (vec![int(-1), int(0)], int(-1))];
        assert_eq!(enumerate_vertices(&strip), Err(GeomError::UnboundedPolyhedron));
    }

    #[test]
    fn strict_feasibility() {
        let mut p = HPolytope::new(1);
        p.inequalities = vec![(vec![int(1)], int(0)), (vec![int(-1)], int(0))];
        assert!(lp_feasible(&p, &[0, 1]).is_none());
        assert!(lp_feasible(&p, &[]).is_some());
        let mut orthant = HPolytope::new(3);
        for i in 0..3 {
            let mut f = vec![int(0); 3];
            f[i] = int(1);
            orthant.inequalities.push((f, int(0)));
        }
        let w = lp_feasible(&orthant, &[0, 1, 2]).unwrap();
        assert!(w.iter().all(|x| x.is_positive()));
    }

    #[test]
    fn simplex_with_equality() {
        let mut p = HPolytope::new(3);
        p.equalities.push((vec![int(1), int(1), int(1)], int(1)));
        for i in 0..3 {
            let mut f = vec![int(0); 3];
            f[i] = int(1);
            p.inequalities.push((f, int(0)));
        }
        let vs = enumerate_vertices(&p).unwrap();
        assert_eq!(vs.len(), 3);
        for v in &vs {
            assert_eq!(v.tight.len(), 2);
        }
    }
}
