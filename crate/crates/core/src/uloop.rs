//! Curves on the once-punctured `n`-gon, the one-loop associahedron `L1(c)`,
//! and the chiseled U-polytope together with its normal fan.
//!
//! Curves are modelled in the universal cover of the annulus. Boundary marked
//! points are lifted to the integers with period `n`. A chord from `i` to `j`
//! keeping the puncture on its right lifts to an arc from `i` to
//! `i + len`, where `len ∈ [2, n]` and `len = n` is the tadpole. A spoke from
//! `k` ends on the inner boundary. Two chords cross when some pair of lifts
//! interleaves strictly, a chord crosses a spoke when some lift of the spoke's
//! base lies strictly inside the chord's lift, and spokes cross exactly when
//! their orientations differ.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactgeom::{
    dot, enumerate_vertices, int, lp_feasible, nullspace, primitive_integer, rank, solve_affine, GeomError, HPolytope,
    Rat,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LoopError {
    #[error("crossing model mismatch: {0}")]
    ModelMismatch(String),
    #[error("parameters make L1(c) infeasible")]
    InfeasibleParams,
    #[error("epsilon too large: {0}")]
    EpsilonTooLarge(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Cw,
    Ccw,
}

/// A curve on the punctured polygon. Labels are in `1..=n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum LoopCurve {
    Chord { i: usize, j: usize },
    Spoke { k: usize, orient: Orientation },
}

impl LoopCurve {
    pub fn is_spoke(&self) -> bool {
        matches!(self, LoopCurve::Spoke { .. })
    }

    pub fn is_tadpole(&self) -> bool {
        matches!(self, LoopCurve::Chord { i, j } if i == j)
    }

    /// Lift `(a, a + len)` of a chord, with `a = i`.
    fn chord_lift(&self, n: usize) -> Option<(i64, i64)> {
        match *self {
            LoopCurve::Chord { i, j } => {
                let len = (j + n - i) % n;
                let len = if len == 0 { n } else { len };
                Some((i as i64, (i + len) as i64))
            }
            LoopCurve::Spoke { .. } => None,
        }
    }

    /// True when the labels are in range and a chord is not a boundary edge.
    pub fn is_valid(&self, n: usize) -> bool {
        match *self {
            LoopCurve::Chord { i, j } => {
                (1..=n).contains(&i) && (1..=n).contains(&j) && self.chord_lift(n).is_some_and(|(a, b)| b - a >= 2)
            }
            LoopCurve::Spoke { k, .. } => (1..=n).contains(&k),
        }
    }
}

impl fmt::Display for LoopCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoopCurve::Chord { i, j } => write!(f, "x{i},{j}"),
            LoopCurve::Spoke {
                k,
                orient: Orientation::Cw,
            } => write!(f, "y{k}"),
            LoopCurve::Spoke {
                k,
                orient: Orientation::Ccw,
            } => write!(f, "~y{k}"),
        }
    }
}

fn wrap(i: i64, n: usize) -> usize {
    ((i - 1).rem_euclid(n as i64) + 1) as usize
}

fn chord_from_lift(a: i64, b: i64, n: usize) -> Option<LoopCurve> {
    (b - a >= 2).then(|| LoopCurve::Chord {
        i: wrap(a, n),
        j: wrap(b, n),
    })
}

/// All curves in canonical order: chords by start and length, then spokes
/// `y_k`, `ỹ_k` for each `k`.
pub fn loop_curves(n: usize) -> Vec<LoopCurve> {
    let mut out = Vec::new();
    for a in 1..=n {
        for len in 2..=n {
            out.push(LoopCurve::Chord {
                i: a,
                j: wrap((a + len) as i64, n),
            });
        }
    }
    for k in 1..=n {
        out.push(LoopCurve::Spoke {
            k,
            orient: Orientation::Cw,
        });
        out.push(LoopCurve::Spoke {
            k,
            orient: Orientation::Ccw,
        });
    }
    out
}

/// Whether two curves can be drawn without crossing.
pub fn compatible(n: usize, c1: &LoopCurve, c2: &LoopCurve) -> bool {
    let shifts = -2..=2i64;
    let nn = n as i64;
    match (c1, c2) {
        (LoopCurve::Spoke { orient: o1, .. }, LoopCurve::Spoke { orient: o2, .. }) => o1 == o2,
        (LoopCurve::Spoke { k, .. }, ch) | (ch, LoopCurve::Spoke { k, .. }) => {
            let (a, b) = ch.chord_lift(n).expect("chord");
            !shifts.clone().any(|t| {
                let p = *k as i64 + t * nn;
                a < p && p < b
            })
        }
        _ => {
            let (a, b) = c1.chord_lift(n).expect("chord");
            let (c, d) = c2.chord_lift(n).expect("chord");
            !shifts.clone().any(|t| {
                let (c, d) = (c + t * nn, d + t * nn);
                (a < c && c < b && b < d) || (c < a && a < d && d < b)
            })
        }
    }
}

/// A maximal set of pairwise compatible curves.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct LoopTriangulation {
    pub curves: Vec<LoopCurve>,
}

impl LoopTriangulation {
    pub fn spokes(&self) -> Vec<LoopCurve> {
        self.curves.iter().copied().filter(LoopCurve::is_spoke).collect()
    }

    pub fn chords(&self) -> Vec<LoopCurve> {
        self.curves.iter().copied().filter(|c| !c.is_spoke()).collect()
    }

    pub fn color(&self) -> Option<Orientation> {
        self.spokes().first().map(|s| match s {
            LoopCurve::Spoke { orient, .. } => *orient,
            LoopCurve::Chord { .. } => unreachable!(),
        })
    }
}

fn compat_matrix(n: usize, curves: &[LoopCurve]) -> Vec<Vec<bool>> {
    curves
        .iter()
        .map(|a| curves.iter().map(|b| compatible(n, a, b)).collect())
        .collect()
}

/// Every pairwise compatible set of curves (including the empty set), as index sets into [`loop_curves`].
pub fn compatible_sets(n: usize) -> Vec<Vec<usize>> {
    let curves = loop_curves(n);
    let comp = compat_matrix(n, &curves);
    let mut out = Vec::new();
    fn go(start: usize, cur: &mut Vec<usize>, comp: &[Vec<bool>], out: &mut Vec<Vec<usize>>) {
        out.push(cur.clone());
        for j in start..comp.len() {
            if cur.iter().all(|&i| comp[i][j]) {
                cur.push(j);
                go(j + 1, cur, comp, out);
                cur.pop();
            }
        }
    }
    go(0, &mut Vec::new(), &comp, &mut out);
    out
}

/// All triangulations, checked against the structural facts: `n` curves,
/// at least one spoke, and all spokes of one orientation.
pub fn enumerate_loop_triangulations(n: usize) -> Result<Vec<LoopTriangulation>, LoopError> {
    let curves = loop_curves(n);
    let comp = compat_matrix(n, &curves);
    let sets = compatible_sets(n);
    let mut out = Vec::new();
    for s in sets {
        let maximal = (0..curves.len()).all(|j| s.contains(&j) || !s.iter().all(|&i| comp[i][j]));
        if !maximal {
            continue;
        }
        let t = LoopTriangulation {
            curves: s.iter().map(|&i| curves[i]).collect(),
        };
        let spokes = t.spokes();
        let colors: BTreeSet<bool> = spokes
            .iter()
            .map(|s| {
                matches!(
                    s,
                    LoopCurve::Spoke {
                        orient: Orientation::Cw,
                        ..
                    }
                )
            })
            .collect();
        if t.curves.len() != n || spokes.is_empty() || colors.len() != 1 {
            let names: Vec<String> = t.curves.iter().map(|c| c.to_string()).collect();
            return Err(LoopError::ModelMismatch(format!(
                "maximal set {{{}}}",
                names.join(", ")
            )));
        }
        out.push(t);
    }
    Ok(out)
}

/// Labels of the mesh relations, in the order used by [`loop_assoc_h_rep`].
pub fn mesh_labels(n: usize) -> Vec<String> {
    let mut out = Vec::new();
    for a in 1..=n {
        for len in 2..n {
            out.push(format!("c[{a},{len}]"));
        }
        out.push(format!("c[{a},tadpole]"));
        out.push(format!("c[{a},spoke]"));
    }
    out
}

/// Coefficient rows of the mesh relations over [`loop_curves`].
///
/// For each start `a`: the chord relations
/// `X(a, a+L) + X(a+1, a+1+L) − X(a+1, a+L) − X(a, a+L+1)` for `2 ≤ L < n`,
/// the tadpole relation `X(a, a+n) + X(a+1, a+1+n) − X(a+1, a+n) − y_{a+1} − ỹ_a`,
/// and the spoke relation `y_a + ỹ_a − X(a, a+n)`. Boundary edges contribute 0.
pub fn mesh_rows(n: usize) -> Vec<Vec<i64>> {
    let curves = loop_curves(n);
    let idx: BTreeMap<LoopCurve, usize> = curves.iter().enumerate().map(|(i, c)| (*c, i)).collect();
    let chord = |a: i64, b: i64| chord_from_lift(a, b, n).map(|c| idx[&c]);
    let spoke = |k: i64, orient| idx[&LoopCurve::Spoke { k: wrap(k, n), orient }];
    let nn = n as i64;
    let mut rows = Vec::new();
    for a in 1..=nn {
        for len in 2..nn {
            let mut r = vec![0i64; curves.len()];
            r[chord(a, a + len).expect("curve")] += 1;
            r[chord(a + 1, a + 1 + len).expect("curve")] += 1;
            for x in [chord(a + 1, a + len), chord(a, a + len + 1)].into_iter().flatten() {
                r[x] -= 1;
            }
            rows.push(r);
        }
        let mut r = vec![0i64; curves.len()];
        r[chord(a, a + nn).expect("tadpole")] += 1;
        r[chord(a + 1, a + 1 + nn).expect("tadpole")] += 1;
        if let Some(x) = chord(a + 1, a + nn) {
            r[x] -= 1;
        }
        r[spoke(a + 1, Orientation::Cw)] -= 1;
        r[spoke(a, Orientation::Ccw)] -= 1;
        rows.push(r);
        let mut r = vec![0i64; curves.len()];
        r[spoke(a, Orientation::Cw)] += 1;
        r[spoke(a, Orientation::Ccw)] += 1;
        r[chord(a, a + nn).expect("tadpole")] -= 1;
        rows.push(r);
    }
    rows
}

/// Combinatorial g-vector model: chord `(a, b)` ↦ `e_{b−1} − e_a`, `y_k` ↦ `e_{k−1}`, `ỹ_k` ↦ `−e_k`.
pub fn combinatorial_g_vector(n: usize, c: &LoopCurve) -> Vec<i64> {
    let e = |i: i64| {
        let mut v = vec![0i64; n];
        v[wrap(i, n) - 1] = 1;
        v
    };
    match *c {
        LoopCurve::Chord { .. } => {
            let (a, b) = c.chord_lift(n).expect("chord");
            e(b - 1).iter().zip(e(a)).map(|(p, q)| p - q).collect()
        }
        LoopCurve::Spoke {
            k,
            orient: Orientation::Cw,
        } => e(k as i64 - 1),
        LoopCurve::Spoke {
            k,
            orient: Orientation::Ccw,
        } => e(k as i64).iter().map(|x| -x).collect(),
    }
}

/// Parameters of `L1(c)` and of its chiseling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopParams {
    pub n: usize,
    /// One positive constant per mesh relation, in [`mesh_labels`] order.
    #[serde(with = "crate::exactgeom::rat_vec_serde")]
    pub c: Vec<Rat>,
    /// `ε_S` keyed by the bitmask of `S ⊆ [n]` (bit `k−1` for label `k`).
    pub eps: BTreeMap<u32, String>,
    pub eps_tilde: BTreeMap<u32, String>,
}

impl LoopParams {
    pub fn eps(&self, mask: u32, orient: Orientation) -> Rat {
        let table = match orient {
            Orientation::Cw => &self.eps,
            Orientation::Ccw => &self.eps_tilde,
        };
        table
            .get(&mask)
            .map(|s| crate::exactgeom::parse_rat(s).expect("valid rational"))
            .unwrap_or_else(Rat::zero)
    }

    /// Violations of positivity, the modular equalities and the wall-crossing inequalities.
    pub fn problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.c.len() != self.n * self.n {
            out.push(format!(
                "expected {} mesh constants, found {}",
                self.n * self.n,
                self.c.len()
            ));
        }
        for (l, c) in mesh_labels(self.n).iter().zip(&self.c) {
            if !c.is_positive() {
                out.push(format!("{l} = {c} is not positive"));
            }
        }
        let full = (1u32 << self.n) - 1;
        for orient in [Orientation::Cw, Orientation::Ccw] {
            let tag = if orient == Orientation::Cw { "eps" } else { "eps~" };
            for table in [&self.eps, &self.eps_tilde] {
                for (m, s) in table.iter() {
                    if *m == 0 || *m > full || crate::exactgeom::parse_rat(s).is_err() {
                        out.push(format!("bad entry {m} = {s}"));
                    }
                }
            }
            for k in 0..self.n {
                if self.eps(1 << k, orient).is_negative() {
                    out.push(format!("{tag}{{{}}} is negative", k + 1));
                }
            }
            for s1 in 1..=full {
                for s2 in s1..=full {
                    if s1 & s2 != 0 {
                        let lhs = self.eps(s1, orient) + self.eps(s2, orient);
                        let rhs = self.eps(s1 | s2, orient) + self.eps(s1 & s2, orient);
                        if lhs != rhs {
                            out.push(format!("{tag} modular equality fails for {s1:b}, {s2:b}"));
                        }
                    }
                }
            }
            for i in 0..self.n {
                for j in i + 1..self.n {
                    let pair = self.eps((1 << i) | (1 << j), orient);
                    if pair <= self.eps(1 << i, orient) + self.eps(1 << j, orient) {
                        out.push(format!(
                            "{tag} wall-crossing inequality fails for {{{}, {}}}",
                            i + 1,
                            j + 1
                        ));
                    }
                }
            }
        }
        out
    }
}

/// `c ≡ 1` and `ε_S = ε̃_S = (|S| − 1) ε`.
pub fn default_loop_params(n: usize, epsilon: &Rat) -> LoopParams {
    let eps: BTreeMap<u32, String> = (1..(1u32 << n))
        .map(|m| {
            let v = epsilon * Rat::from_integer(BigInt::from(m.count_ones() as i64 - 1));
            (m, crate::exactgeom::fmt_rat(&v))
        })
        .collect();
    LoopParams {
        n,
        c: vec![Rat::one(); n * n],
        eps: eps.clone(),
        eps_tilde: eps,
    }
}

/// `ε_S = Σ_{s∈S} ε_s + (|S| − 1) ε` for given singletons and `ε`.
pub fn closed_form_family(singletons: &[Rat], epsilon: &Rat) -> BTreeMap<u32, String> {
    let n = singletons.len();
    (1..(1u32 << n))
        .map(|m| {
            let base: Rat = (0..n).filter(|k| m >> k & 1 == 1).map(|k| singletons[k].clone()).sum();
            let v = base + epsilon * Rat::from_integer(BigInt::from(m.count_ones() as i64 - 1));
            (m, crate::exactgeom::fmt_rat(&v))
        })
        .collect()
}

/// Dimension of the solution space of the modular equalities in the unknowns
/// `ε_S`, and whether the closed-form family spans it.
pub fn modular_solution_space(n: usize) -> (usize, bool) {
    let full = (1u32 << n) - 1;
    let cols = full as usize;
    let mut rows = Vec::new();
    for s1 in 1..=full {
        for s2 in s1..=full {
            if s1 & s2 != 0 {
                let mut r = vec![Rat::zero(); cols];
                r[(s1 - 1) as usize] += Rat::one();
                r[(s2 - 1) as usize] += Rat::one();
                r[((s1 | s2) - 1) as usize] -= Rat::one();
                r[((s1 & s2) - 1) as usize] -= Rat::one();
                rows.push(r);
            }
        }
    }
    let space = nullspace(&rows, cols);
    let mut family: Vec<Vec<Rat>> = (0..n)
        .map(|k| {
            (1..=full)
                .map(|m| if m >> k & 1 == 1 { Rat::one() } else { Rat::zero() })
                .collect()
        })
        .collect();
    family.push((1..=full).map(|m| int(m.count_ones() as i64 - 1)).collect());
    let solves = family.iter().all(|v| rows.iter().all(|r| dot(r, v).is_zero()));
    let spans = rank(&family, cols) == space.len();
    (space.len(), solves && spans)
}

/// `L1(c)` in curve coordinates: mesh equalities plus `X_C ≥ 0`, in [`loop_curves`] order.
pub fn loop_assoc_h_rep(params: &LoopParams) -> HPolytope {
    let n = params.n;
    let m = loop_curves(n).len();
    let mut p = HPolytope::new(m);
    for (r, c) in mesh_rows(n).into_iter().zip(&params.c) {
        p.equalities.push((r.into_iter().map(int).collect(), c.clone()));
    }
    for i in 0..m {
        let mut f = vec![Rat::zero(); m];
        f[i] = Rat::one();
        p.inequalities.push((f, Rat::zero()));
    }
    p
}

/// Spoke subset of a U-polytope inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SpokeSet {
    pub mask: u32,
    pub orient: Orientation,
}

/// The U-polytope: `L1(c)` with `y_k ≥ ε_{k}` and `Σ_{k∈S} y_k ≥ ε_S` for
/// `|S| ≥ 2`, and likewise for `ỹ`. Inequality `i < #curves` is the curve
/// bound for curve `i`; the rest follow [`u_spoke_sets`].
pub fn u_polytope_h_rep(params: &LoopParams) -> HPolytope {
    let n = params.n;
    let curves = loop_curves(n);
    let mut p = loop_assoc_h_rep(params);
    for (i, c) in curves.iter().enumerate() {
        if let LoopCurve::Spoke { k, orient } = *c {
            p.inequalities[i].1 = params.eps(1 << (k - 1), orient);
        }
    }
    for s in u_spoke_sets(n) {
        p.inequalities
            .push((spoke_sum_form(&curves, s), params.eps(s.mask, s.orient)));
    }
    p
}

/// Spoke subsets with `|S| ≥ 2`, blue first, by mask.
pub fn u_spoke_sets(n: usize) -> Vec<SpokeSet> {
    [Orientation::Cw, Orientation::Ccw]
        .into_iter()
        .flat_map(|orient| {
            (1..(1u32 << n))
                .filter(|m| m.count_ones() >= 2)
                .map(move |mask| SpokeSet { mask, orient })
        })
        .collect()
}

fn spoke_sum_form(curves: &[LoopCurve], s: SpokeSet) -> Vec<Rat> {
    curves
        .iter()
        .map(|c| match *c {
            LoopCurve::Spoke { k, orient } if orient == s.orient && s.mask >> (k - 1) & 1 == 1 => Rat::one(),
            _ => Rat::zero(),
        })
        .collect()
}

/// Vertex of `L1(c)` with its triangulation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LoopVertex {
    pub triangulation: Vec<LoopCurve>,
    pub spoke: Option<LoopCurve>,
    #[serde(with = "crate::exactgeom::rat_vec_serde")]
    pub coords: Vec<Rat>,
}

/// Vertices of `L1(c)` matched to triangulations through their zero sets.
///
/// Fails with [`LoopError::ModelMismatch`] unless the zero set of every vertex
/// is exactly the curve set of a triangulation and the matching is bijective.
pub fn loop_assoc_vertices(params: &LoopParams) -> Result<Vec<LoopVertex>, LoopError> {
    let curves = loop_curves(params.n);
    let tris = enumerate_loop_triangulations(params.n)?;
    let p = loop_assoc_h_rep(params);
    let vs = match enumerate_vertices(&p) {
        Err(GeomError::InconsistentSystem) => return Err(LoopError::InfeasibleParams),
        other => other?,
    };
    if vs.is_empty() {
        return Err(LoopError::InfeasibleParams);
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for v in vs {
        let zero: Vec<LoopCurve> = v.tight.iter().map(|&i| curves[i]).collect();
        let Some(t) = tris.iter().find(|t| t.curves == zero) else {
            return Err(LoopError::ModelMismatch(format!(
                "vertex zero set {zero:?} is not a triangulation"
            )));
        };
        seen.insert(t.clone());
        out.push(LoopVertex {
            triangulation: t.curves.clone(),
            spoke: None,
            coords: v.coords,
        });
    }
    if seen.len() != tris.len() || out.len() != tris.len() {
        return Err(LoopError::ModelMismatch(format!(
            "{} vertices for {} triangulations",
            out.len(),
            tris.len()
        )));
    }
    Ok(out)
}

/// Vertices of the U-polytope, each matched to a pair `(T, s)` with `s` a
/// spoke of the triangulation `T`.
///
/// A vertex matches `(T, s)` when its tight curve bounds are the chords of `T`
/// and the spoke `s`, and its tight subset inequalities are exactly the sets
/// `S` with `s ∈ S ⊆ Spokes(T)`. Every pair must be matched exactly once;
/// otherwise the chiseling destroyed a face and
/// [`LoopError::EpsilonTooLarge`] is returned.
pub fn u_polytope_vertices(params: &LoopParams) -> Result<Vec<LoopVertex>, LoopError> {
    let problems = params.problems();
    if !problems.is_empty() {
        return Err(LoopError::InvalidParams(problems.join("; ")));
    }
    let n = params.n;
    let curves = loop_curves(n);
    let nc = curves.len();
    let sets = u_spoke_sets(n);
    let tris = enumerate_loop_triangulations(n)?;
    let p = u_polytope_h_rep(params);
    let vs = match enumerate_vertices(&p) {
        Err(GeomError::InconsistentSystem) => return Err(LoopError::InfeasibleParams),
        other => other?,
    };
    let mut expected: BTreeMap<(Vec<usize>, Vec<usize>), (usize, LoopCurve)> = BTreeMap::new();
    let idx: BTreeMap<LoopCurve, usize> = curves.iter().enumerate().map(|(i, c)| (*c, i)).collect();
    for (ti, t) in tris.iter().enumerate() {
        let orient = t.color().expect("spoke");
        let spoke_mask: u32 = t
            .spokes()
            .iter()
            .map(|s| match s {
                LoopCurve::Spoke { k, .. } => 1 << (k - 1),
                LoopCurve::Chord { .. } => 0,
            })
            .sum();
        for s in t.spokes() {
            let LoopCurve::Spoke { k, .. } = s else { unreachable!() };
            let bit = 1u32 << (k - 1);
            let mut tight_curves: Vec<usize> = t.chords().iter().map(|c| idx[c]).collect();
            tight_curves.push(idx[&s]);
            tight_curves.sort_unstable();
            let tight_sets: Vec<usize> = sets
                .iter()
                .enumerate()
                .filter(|(_, q)| q.orient == orient && q.mask & bit != 0 && q.mask & !spoke_mask == 0)
                .map(|(i, _)| nc + i)
                .collect();
            expected.insert((tight_curves, tight_sets), (ti, s));
        }
    }
    let mut out = Vec::new();
    let mut matched = BTreeSet::new();
    for v in vs {
        let (tc, ts): (Vec<usize>, Vec<usize>) = v.tight.iter().partition(|&&i| i < nc);
        match expected.get(&(tc.clone(), ts)) {
            Some(&(ti, s)) if matched.insert((ti, s)) => out.push(LoopVertex {
                triangulation: tris[ti].curves.clone(),
                spoke: Some(s),
                coords: v.coords,
            }),
            _ => {
                let names: Vec<String> = tc.iter().map(|&i| curves[i].to_string()).collect();
                return Err(LoopError::EpsilonTooLarge(format!(
                    "unexpected vertex with tight curves {{{}}}",
                    names.join(", ")
                )));
            }
        }
    }
    if matched.len() != expected.len() {
        return Err(LoopError::EpsilonTooLarge(format!(
            "{} of {} expected vertices present",
            matched.len(),
            expected.len()
        )));
    }
    Ok(out)
}

/// `Σ_T |Spokes(T)|` over all triangulations.
pub fn expected_u_vertex_count(n: usize) -> Result<usize, LoopError> {
    Ok(enumerate_loop_triangulations(n)?.iter().map(|t| t.spokes().len()).sum())
}

/// g-vectors as outer facet normals of `L1(c)` in coordinates of its
/// direction space, one per curve in [`loop_curves`] order.
pub fn geometric_g_vectors(params: &LoopParams) -> Result<Vec<Vec<Rat>>, LoopError> {
    let p = loop_assoc_h_rep(params);
    let sol = solve_affine(&p.equalities, p.ambient_dim).map_err(|_| LoopError::InfeasibleParams)?;
    Ok((0..p.ambient_dim)
        .map(|c| sol.basis.iter().map(|b| -b[c].clone()).collect())
        .collect())
}

fn add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Normal vector of a U-polytope inequality in g-vector coordinates.
fn spoke_set_normal(n: usize, g: &[Vec<Rat>], s: SpokeSet) -> Vec<Rat> {
    let curves = loop_curves(n);
    curves
        .iter()
        .zip(g)
        .filter(
            |(c, _)| matches!(c, LoopCurve::Spoke { k, orient } if *orient == s.orient && s.mask >> (k - 1) & 1 == 1),
        )
        .fold(vec![Rat::zero(); n], |acc, (_, v)| add(&acc, v))
}

/// Whether `x` is a non-negative combination of `gens`.
pub fn in_cone(gens: &[Vec<Rat>], x: &[Rat]) -> bool {
    let m = gens.len();
    let d = x.len();
    let mut p = HPolytope::new(m);
    for j in 0..d {
        p.equalities
            .push((gens.iter().map(|g| g[j].clone()).collect(), x[j].clone()));
    }
    for i in 0..m {
        let mut f = vec![Rat::zero(); m];
        f[i] = Rat::one();
        p.inequalities.push((f, Rat::zero()));
    }
    lp_feasible(&p, &[]).is_some()
}

/// Whether the generators indexed by `face` span a face of the pointed cone
/// generated by `gens`, containing no other generator.
pub fn is_face(gens: &[Vec<Rat>], face: &[usize]) -> bool {
    let d = gens[0].len();
    let mut p = HPolytope::new(d);
    for (i, g) in gens.iter().enumerate() {
        if face.contains(&i) {
            p.equalities.push((g.clone(), Rat::zero()));
        } else {
            p.inequalities.push((g.clone(), Rat::one()));
        }
    }
    lp_feasible(&p, &[]).is_some()
}

fn primitive(v: &[Rat]) -> Vec<BigInt> {
    primitive_integer(v)
}

/// Outcome of [`u_fan_check`].
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct UFanReport {
    pub n: usize,
    pub triangulations: usize,
    pub l1_vertices: usize,
    pub u_vertices: usize,
    pub expected_u_vertices: usize,
    pub g_model_agrees: bool,
    pub ray_set_ok: bool,
    pub rays: usize,
    pub cones_ok: bool,
    pub subdivision_ok: bool,
    pub coverage_samples: usize,
    pub cube_checks: usize,
    pub cube_ok: bool,
    pub ridge_pairing_ok: bool,
    pub three_spoke_new_rays: Option<usize>,
    pub three_spoke_cones: Option<usize>,
    pub failures: Vec<String>,
}

impl UFanReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Faces of the cone generated by `gens`, as generator index sets.
fn cone_faces(gens: &[Vec<Rat>]) -> Vec<Vec<usize>> {
    let m = gens.len();
    (0u32..(1 << m))
        .map(|mask| (0..m).filter(|i| mask >> i & 1 == 1).collect::<Vec<_>>())
        .filter(|f| is_face(gens, f))
        .collect()
}

/// Checks the normal fan of the U-polytope against the subdivision of the
/// `L1(c)` fan: ray set, maximal cones `cone(T, {s})`, coverage of each
/// `cone(T)`, the cube structure of `cone(T, S)`, ridge pairing, and the
/// three-spoke example.
pub fn u_fan_check(params: &LoopParams, seed: u64) -> Result<UFanReport, LoopError> {
    let n = params.n;
    let curves = loop_curves(n);
    let idx: BTreeMap<LoopCurve, usize> = curves.iter().enumerate().map(|(i, c)| (*c, i)).collect();
    let tris = enumerate_loop_triangulations(n)?;
    let l1 = loop_assoc_vertices(params)?;
    let uv = u_polytope_vertices(params)?;
    let g = geometric_g_vectors(params)?;
    let sets = u_spoke_sets(n);
    let mut rep = UFanReport {
        n,
        triangulations: tris.len(),
        l1_vertices: l1.len(),
        u_vertices: uv.len(),
        expected_u_vertices: expected_u_vertex_count(n)?,
        ..Default::default()
    };

    let mut joint: Vec<Vec<Rat>> = curves
        .iter()
        .zip(&g)
        .map(|(c, gv)| {
            let mut row: Vec<Rat> = combinatorial_g_vector(n, c).into_iter().map(int).collect();
            row.extend(gv.iter().cloned());
            row
        })
        .collect();
    let comb: Vec<Vec<Rat>> = joint.iter().map(|r| r[..n].to_vec()).collect();
    rep.g_model_agrees = rank(&comb, n) == n && rank(&joint, 2 * n) == n;
    joint.clear();
    if !rep.g_model_agrees {
        rep.failures
            .push("geometric g-vectors are not a linear image of the combinatorial model".into());
    }

    let p = u_polytope_h_rep(params);
    let normals: Vec<Vec<Rat>> = (0..p.inequalities.len())
        .map(|i| {
            if i < curves.len() {
                g[i].clone()
            } else {
                spoke_set_normal(n, &g, sets[i - curves.len()])
            }
        })
        .collect();
    let mut expected_rays: BTreeSet<Vec<BigInt>> = g.iter().map(|v| primitive(v)).collect();
    expected_rays.extend(sets.iter().map(|s| primitive(&spoke_set_normal(n, &g, *s))));

    let mut found_rays: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    let mut max_cones: Vec<BTreeSet<Vec<BigInt>>> = Vec::new();
    let mut cones_ok = true;
    for v in &uv {
        let tight = p.tight_set(&v.coords);
        let gens: Vec<Vec<Rat>> = tight.iter().map(|&i| normals[i].clone()).collect();
        let rays: BTreeSet<Vec<BigInt>> = (0..gens.len())
            .filter(|&i| is_face(&gens, &[i]))
            .map(|i| primitive(&gens[i]))
            .collect();
        found_rays.extend(rays.iter().cloned());
        let LoopCurve::Spoke { k, orient } = v.spoke.expect("spoke") else {
            unreachable!()
        };
        let t = LoopTriangulation {
            curves: v.triangulation.clone(),
        };
        let spoke_mask: u32 = t
            .spokes()
            .iter()
            .map(|s| match s {
                LoopCurve::Spoke { k, .. } => 1 << (k - 1),
                LoopCurve::Chord { .. } => 0,
            })
            .sum();
        let mut want: BTreeSet<Vec<BigInt>> = t.chords().iter().map(|c| primitive(&g[idx[c]])).collect();
        want.insert(primitive(&g[idx[&LoopCurve::Spoke { k, orient }]]));
        for s in &sets {
            if s.orient == orient && s.mask >> (k - 1) & 1 == 1 && s.mask & !spoke_mask == 0 {
                want.insert(primitive(&spoke_set_normal(n, &g, *s)));
            }
        }
        if rays != want || rank(&gens, n) != n {
            cones_ok = false;
            rep.failures.push(format!(
                "normal cone at ({}, y{k}) differs from cone(T, {{s}})",
                t.curves.len()
            ));
        }
        max_cones.push(rays);
    }
    rep.cones_ok = cones_ok;
    rep.rays = found_rays.len();
    rep.ray_set_ok = found_rays == expected_rays;
    if !rep.ray_set_ok {
        rep.failures.push(format!(
            "{} fan rays, expected {}",
            found_rays.len(),
            expected_rays.len()
        ));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut subdivision_ok = true;
    let mut cube_ok = true;
    for t in &tris {
        let spokes = t.spokes();
        let chords = t.chords();
        let sub: Vec<&LoopVertex> = uv.iter().filter(|v| v.triangulation == t.curves).collect();
        if sub.len() != spokes.len() {
            subdivision_ok = false;
            rep.failures.push("triangulation not split into |Spokes| cones".into());
            continue;
        }
        let sub_gens: Vec<Vec<Vec<Rat>>> = sub
            .iter()
            .map(|v| p.tight_set(&v.coords).iter().map(|&i| normals[i].clone()).collect())
            .collect();
        for _ in 0..8 {
            let mut x = vec![Rat::zero(); n];
            let mut weights: Vec<i64> = (0..spokes.len()).map(|i| 1000 * (i as i64 + 1)).collect();
            for w in weights.iter_mut() {
                *w += rng.gen_range(0..1000);
            }
            for c in &chords {
                let r = int(rng.gen_range(1..50));
                x = add(&x, &g[idx[c]].iter().map(|v| v * &r).collect::<Vec<_>>());
            }
            for (s, w) in spokes.iter().zip(&weights) {
                x = add(&x, &g[idx[s]].iter().map(|v| v * int(*w)).collect::<Vec<_>>());
            }
            let holders = sub_gens.iter().filter(|gens| in_cone(gens, &x)).count();
            rep.coverage_samples += 1;
            if holders != 1 {
                subdivision_ok = false;
                rep.failures.push(format!("sample point lies in {holders} sub-cones"));
            }
        }
        if n <= 3 {
            let orient = t.color().expect("spoke");
            let kmask: Vec<u32> = spokes
                .iter()
                .map(|s| match s {
                    LoopCurve::Spoke { k, .. } => 1 << (k - 1),
                    LoopCurve::Chord { .. } => 0,
                })
                .collect();
            let full: u32 = kmask.iter().sum();
            for smask in 1..=full {
                if smask & !full != 0 {
                    continue;
                }
                let mut gens: Vec<Vec<Rat>> = chords.iter().map(|c| g[idx[c]].clone()).collect();
                for tmask in smask..=full {
                    if tmask & smask == smask && tmask & !full == 0 {
                        let normal = if tmask.count_ones() == 1 {
                            g[idx[&LoopCurve::Spoke {
                                k: tmask.trailing_zeros() as usize + 1,
                                orient,
                            }]]
                                .clone()
                        } else {
                            spoke_set_normal(n, &g, SpokeSet { mask: tmask, orient })
                        };
                        gens.push(normal);
                    }
                }
                let d = full.count_ones() - smask.count_ones();
                let want = (1usize << chords.len()) * (1 + 3usize.pow(d));
                let got = cone_faces(&gens).len();
                rep.cube_checks += 1;
                if got != want {
                    cube_ok = false;
                    rep.failures
                        .push(format!("cone(T, S) has {got} faces, expected {want}"));
                }
            }
        }
        if spokes.len() == 3 && n == 3 {
            let old: BTreeSet<Vec<BigInt>> = t.curves.iter().map(|c| primitive(&g[idx[c]])).collect();
            let union: BTreeSet<Vec<BigInt>> = sub
                .iter()
                .flat_map(|v| max_cones[uv.iter().position(|u| std::ptr::eq(u, *v)).expect("present")].clone())
                .collect();
            if t.color() == Some(Orientation::Cw) {
                rep.three_spoke_new_rays = Some(union.difference(&old).count());
                rep.three_spoke_cones = Some(sub.len());
            }
        }
    }
    rep.cube_ok = cube_ok;
    rep.subdivision_ok = subdivision_ok;

    let mut ridges: BTreeMap<BTreeSet<Vec<BigInt>>, usize> = BTreeMap::new();
    for cone in &max_cones {
        let rays: Vec<Vec<BigInt>> = cone.iter().cloned().collect();
        let gens: Vec<Vec<Rat>> = rays
            .iter()
            .map(|r| r.iter().map(|x| Rat::from_integer(x.clone())).collect())
            .collect();
        for f in cone_faces(&gens) {
            let sel: Vec<Vec<Rat>> = f.iter().map(|&i| gens[i].clone()).collect();
            if rank(&sel, n) == n - 1 {
                *ridges.entry(f.iter().map(|&i| rays[i].clone()).collect()).or_insert(0) += 1;
            }
        }
    }
    rep.ridge_pairing_ok = ridges.values().all(|&c| c == 2);
    if !rep.ridge_pairing_ok {
        rep.failures
            .push("a ridge is not shared by exactly two maximal cones".into());
    }
    if rep.l1_vertices != rep.triangulations {
        rep.failures
            .push("L1 vertex count differs from triangulation count".into());
    }
    if rep.u_vertices != rep.expected_u_vertices {
        rep.failures.push("U vertex count differs from the spoke total".into());
    }
    if n == 3 && (rep.three_spoke_new_rays != Some(4) || rep.three_spoke_cones != Some(3)) {
        rep.failures.push("three-spoke cone subdivision differs".into());
    }
    Ok(rep)
}

/// Vertices of `L1(c)` for every parameter vector in `cs`, in parallel.
pub fn loop_vertex_counts(n: usize, cs: &[Vec<Rat>]) -> Vec<Result<usize, LoopError>> {
    cs.par_iter()
        .map(|c| {
            let mut p = default_loop_params(n, &Rat::zero());
            p.c = c.clone();
            loop_assoc_vertices(&p).map(|v| v.len())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::rat;

    fn y(k: usize) -> LoopCurve {
        LoopCurve::Spoke {
            k,
            orient: Orientation::Cw,
        }
    }

    fn yt(k: usize) -> LoopCurve {
        LoopCurve::Spoke {
            k,
            orient: Orientation::Ccw,
        }
    }

    #[test]
    fn crossing_examples() {
        assert!(!compatible(3, &y(1), &yt(2)));
        assert!(compatible(3, &y(1), &y(2)));
        let t = LoopCurve::Chord { i: 1, j: 1 };
        assert!(compatible(3, &t, &t));
        assert!(t.is_valid(3) && !LoopCurve::Chord { i: 1, j: 2 }.is_valid(3));
        assert!(LoopCurve::Chord { i: 2, j: 1 }.is_valid(3));
    }

    #[test]
    fn triangulation_counts() {
        let t2 = enumerate_loop_triangulations(2).unwrap();
        assert_eq!(t2.len(), 6);
        let blue: Vec<usize> = t2
            .iter()
            .filter(|t| t.color() == Some(Orientation::Cw))
            .map(|t| t.spokes().len())
            .collect();
        assert_eq!(blue.len(), 3);
        assert_eq!(blue.iter().filter(|&&k| k == 2).count(), 1);
        let t3 = enumerate_loop_triangulations(3).unwrap();
        assert_eq!(t3.iter().filter(|t| t.color() == Some(Orientation::Cw)).count(), 10);
        assert_eq!(t3.len(), 20);
    }

    #[test]
    fn mesh_kills_g_vectors() {
        for n in 2..=4 {
            let curves = loop_curves(n);
            for r in mesh_rows(n) {
                for k in 0..n {
                    let s: i64 = r
                        .iter()
                        .zip(&curves)
                        .map(|(a, c)| a * combinatorial_g_vector(n, c)[k])
                        .sum();
                    assert_eq!(s, 0);
                }
            }
        }
    }

    #[test]
    fn l1_vertices() {
        for n in 2..=3 {
            let p = default_loop_params(n, &Rat::zero());
            assert_eq!(loop_assoc_vertices(&p).unwrap().len(), if n == 2 { 6 } else { 20 });
        }
    }

    #[test]
    fn u_polytope_counts() {
        let p = default_loop_params(2, &rat(1, 10));
        assert_eq!(u_polytope_vertices(&p).unwrap().len(), 8);
        let p3 = default_loop_params(3, &rat(1, 10));
        assert_eq!(
            u_polytope_vertices(&p3).unwrap().len(),
            expected_u_vertex_count(3).unwrap()
        );
        let flat = u_polytope_h_rep(&default_loop_params(2, &Rat::zero()));
        assert_eq!(enumerate_vertices(&flat).unwrap().len(), 6);
    }

    #[test]
    fn large_epsilon_is_rejected() {
        let p = default_loop_params(2, &int(5));
        assert!(matches!(u_polytope_vertices(&p), Err(LoopError::EpsilonTooLarge(_))));
    }

    #[test]
    fn epsilon_family() {
        let p = default_loop_params(3, &rat(1, 10));
        assert!(p.problems().is_empty());
        assert_eq!(
            p.eps(0b011, Orientation::Cw) + p.eps(0b110, Orientation::Cw),
            p.eps(0b111, Orientation::Cw) + p.eps(0b010, Orientation::Cw)
        );
        let mut bad = p.clone();
        bad.eps.insert(0b011, "1/20".into());
        assert!(!bad.problems().is_empty());
        for n in 2..=4 {
            assert_eq!(modular_solution_space(n), (n + 1, true));
        }
        let mut q = p.clone();
        q.eps = closed_form_family(&[rat(1, 50), rat(1, 40), rat(1, 30)], &rat(1, 20));
        assert!(q.problems().is_empty());
    }

    #[test]
    fn fan_n2() {
        let rep = u_fan_check(&default_loop_params(2, &rat(1, 10)), 7).unwrap();
        assert!(rep.ok(), "{:?}", rep.failures);
    }

    #[test]
    fn fan_n3() {
        let rep = u_fan_check(&default_loop_params(3, &rat(1, 10)), 7).unwrap();
        assert!(rep.ok(), "{:?}", rep.failures);
        assert_eq!(rep.three_spoke_new_rays, Some(4));
        assert_eq!(rep.three_spoke_cones, Some(3));
        assert!(rep.cube_ok && rep.ridge_pairing_ok && rep.ray_set_ok);
    }

    #[test]
    fn curve_json() {
        let s = serde_json::to_string(&y(2)).unwrap();
        assert_eq!(s, r#"{"kind":"spoke","k":2,"orient":"cw"}"#);
        let c: LoopCurve = serde_json::from_str(r#"{"kind":"chord","i":2,"j":1}"#).unwrap();
        assert_eq!(c, LoopCurve::Chord { i: 2, j: 1 });
    }
}
