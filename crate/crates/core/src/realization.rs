//! Polytope realizations: the Loday associahedron, Devadoss bracket
//! associahedra, the cosmohedron with its vertex and facet descriptions, and
//! the kinematic-space (AFV/ABHY) coordinates.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cosmofan::{hexagon_m1, hexagon_m2, subdivision_rays_below};
use crate::exactgeom::{dot, enumerate_vertices, int, primitive_integer, rank, HPolytope, Rat};
use crate::matryoshka::{enumerate, Matryoshka};
use crate::polygon::{diagonals, diagonals_plus, enumerate_subdivisions, ChordSet, Diagonal, SubPolygon};
use crate::trees::{
    dual_tree, edge_ids, enumerate_bracketings, extended_children, Bracketing, EdgeSet, ExtendedChild, PlaneTree,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RealizationError {
    #[error("vertex routes disagree for {matryoshka}: {definition:?} vs {closed_form:?}")]
    FormulaMismatch {
        matryoshka: String,
        definition: Vec<String>,
        closed_form: Vec<String>,
    },
    #[error("Matryoshka is not maximal")]
    NotMaximal,
}

/// Rule giving `b(P)` for polygons without an explicit override.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BRule {
    /// `0` for at most four vertices, `3^{|P|-5}` otherwise.
    Preferred,
    /// Identically zero.
    Zero,
    /// The negative of [`BRule::Preferred`].
    NegatedPreferred,
}

/// Data `(a, b, ε)` of a cosmohedron.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizationParams {
    pub n: usize,
    /// Positive weight per augmented diagonal (diagonals plus the base edge).
    pub a: BTreeMap<Diagonal, Rat>,
    pub b_rule: BRule,
    pub b_overrides: BTreeMap<SubPolygon, Rat>,
    pub epsilon: Rat,
}

fn pow3(k: usize) -> Rat {
    Rat::from_integer(BigInt::from(3u32).pow(k as u32))
}

impl RealizationParams {
    pub fn a(&self, d: &Diagonal) -> Rat {
        self.a[d].clone()
    }

    pub fn b(&self, p: &SubPolygon) -> Rat {
        if let Some(v) = self.b_overrides.get(p) {
            return v.clone();
        }
        let k = p.size();
        let preferred = if k <= 4 { Rat::zero() } else { pow3(k - 5) };
        match self.b_rule {
            BRule::Preferred => preferred,
            BRule::Zero => Rat::zero(),
            BRule::NegatedPreferred => -preferred,
        }
    }

    /// Smallest entry of `a`.
    pub fn min_a(&self) -> Rat {
        self.a.values().min().cloned().unwrap_or_else(Rat::one)
    }

    /// Largest `|b(P)|` over all polygons with at least three vertices.
    pub fn max_abs_b(&self) -> Rat {
        let k = self.n + 2;
        let rule = if k >= 5 && self.b_rule != BRule::Zero {
            pow3(k - 5)
        } else {
            Rat::zero()
        };
        self.b_overrides
            .values()
            .map(|v| v.abs())
            .fold(rule, |m, v| if v > m { v } else { m })
    }

    /// `m / (24·Mx)`, or `None` when every `b` vanishes.
    pub fn epsilon_bound(&self) -> Option<Rat> {
        let mx = self.max_abs_b();
        if mx.is_zero() {
            None
        } else {
            Some(self.min_a() / (int(24) * mx))
        }
    }

    /// Replaces `ε`.
    pub fn with_epsilon(mut self, eps: Rat) -> Self {
        self.epsilon = eps;
        self
    }

    /// Problems with the parameters: nonpositive `a`, nonpositive `ε` or `ε`
    /// at or above the bound.
    pub fn problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (d, v) in &self.a {
            if !v.is_positive() {
                out.push(format!("a{d} is not positive"));
            }
        }
        if diagonals_plus(self.n).iter().any(|d| !self.a.contains_key(d)) {
            out.push("a is missing entries".into());
        }
        if !self.epsilon.is_positive() {
            out.push("epsilon is not positive".into());
        }
        if let Some(bound) = self.epsilon_bound() {
            if self.epsilon >= bound {
                out.push(format!(
                    "epsilon {} is not below the bound {}",
                    crate::exactgeom::fmt_rat(&self.epsilon),
                    crate::exactgeom::fmt_rat(&bound)
                ));
            }
        }
        out
    }
}

/// Preferred parameters: `a ≡ 1`, the preferred `b`, and `ε` at half the bound.
pub fn default_params(n: usize) -> RealizationParams {
    let a = diagonals_plus(n).into_iter().map(|d| (d, Rat::one())).collect();
    let mut p = RealizationParams {
        n,
        a,
        b_rule: BRule::Preferred,
        b_overrides: BTreeMap::new(),
        epsilon: Rat::zero(),
    };
    p.epsilon = match p.epsilon_bound() {
        Some(bound) => bound / int(2),
        None => Rat::new(1.into(), 48.into()),
    };
    p
}

fn weight(params: &RealizationParams, i: usize, j: usize) -> Rat {
    params.a(&Diagonal { i, j })
}

/// Loday vertex of a triangulation: coordinate `v` sums `a_ij` over augmented
/// diagonals crossing triangle `v` transversally.
pub fn loday_vertex(params: &RealizationParams, triangulation: &ChordSet) -> Vec<Rat> {
    let n = params.n;
    let mut x = vec![Rat::zero(); n];
    for cell in triangulation.cells() {
        let vs = cell.vertices();
        let (u, v, w) = (vs[0], vs[1], vs[2]);
        for i in u..v {
            for j in v + 1..=w {
                if j >= i + 2 {
                    x[v - 1] += weight(params, i, j);
                }
            }
        }
    }
    x
}

fn lca(tree: &PlaneTree, mut a: usize, mut b: usize) -> usize {
    let depth = |mut v: usize| {
        let mut d = 0;
        while let Some(p) = tree.nodes[v].parent {
            v = p;
            d += 1;
        }
        d
    };
    let (mut da, mut db) = (depth(a), depth(b));
    while da > db {
        a = tree.nodes[a].parent.expect("deeper node has a parent");
        da -= 1;
    }
    while db > da {
        b = tree.nodes[b].parent.expect("deeper node has a parent");
        db -= 1;
    }
    while a != b {
        a = tree.nodes[a].parent.expect("distinct nodes below the root");
        b = tree.nodes[b].parent.expect("distinct nodes below the root");
    }
    a
}

/// Loday vertex of a binary tree via lowest common ancestors:
/// coordinate `v` sums `a_{i-1,j+1}` over `i ≤ j` with `i ∨ j = v`.
pub fn loday_vertex_lca(params: &RealizationParams, tree: &PlaneTree) -> Vec<Rat> {
    let n = params.n;
    let mut x = vec![Rat::zero(); n];
    for i in 1..=n {
        for j in i..=n {
            let top = lca(tree, tree.node_of_label(i), tree.node_of_label(j));
            let v = tree.nodes[top].labels[0];
            x[v - 1] += weight(params, i - 1, j + 1);
        }
    }
    x
}

/// Loday associahedron: `Σ x = Σ a` and `Σ_{r≤i≤s} x_i ≥ Σ_{r-1≤i, j≤s+1} a_ij`.
/// Inequality `k` corresponds to the diagonal returned at position `k`.
pub fn loday_h_rep(params: &RealizationParams) -> (HPolytope, Vec<Diagonal>) {
    let n = params.n;
    let mut p = HPolytope::new(n);
    p.equalities.push((vec![Rat::one(); n], params.a.values().sum()));
    let mut labels = Vec::new();
    for r in 1..=n {
        for s in r..=n {
            if (r, s) == (1, n) {
                continue;
            }
            let form = (1..=n)
                .map(|i| if r <= i && i <= s { Rat::one() } else { Rat::zero() })
                .collect();
            let rhs = params
                .a
                .iter()
                .filter(|(d, _)| r - 1 <= d.i && d.j <= s + 1)
                .map(|(_, v)| v.clone())
                .sum();
            p.inequalities.push((form, rhs));
            labels.push(Diagonal::new(r - 1, s + 1));
        }
    }
    (p, labels)
}

/// Orientation of the bracket inequalities of a Devadoss polytope.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BracketSense {
    /// `Σ_{e∈β} y_e ≤ b(β)`, for concave `b`.
    AtMost,
    /// `Σ_{e∈β} y_e ≥ b(β)`, for convex `b`.
    AtLeast,
}

/// Orientation matching the parameters: concave `b` bounds bracket sums from
/// above, convex `b` from below.
pub fn bracket_sense(params: &RealizationParams) -> BracketSense {
    match params.b_rule {
        BRule::NegatedPreferred => BracketSense::AtMost,
        _ => BracketSense::AtLeast,
    }
}

/// `b⁻(β) = b(polygon of β) − Σ_{v ∈ β} b(cell v)`.
pub fn b_minus(tree: &PlaneTree, b: &dyn Fn(&SubPolygon) -> Rat, beta: EdgeSet) -> Rat {
    let verts = tree.vertices_of(beta);
    let cells: Rat = (0..tree.num_nodes())
        .filter(|v| verts >> v & 1 == 1)
        .map(|v| b(&tree.nodes[v].cell))
        .sum();
    b(&tree.polygon_of(beta)) - cells
}

/// Devadoss vertex of a maximal bracketing, indexed by edge id (entry 0 is
/// unused): `y_e = b(bracket(e)) − Σ b(children of bracket(e))` in the
/// extended bracket tree.
pub fn devadoss_vertex(tree: &PlaneTree, bracketing: &Bracketing, b: &dyn Fn(&SubPolygon) -> Rat) -> Vec<Rat> {
    let mut y = vec![Rat::zero(); tree.num_nodes()];
    for (beta, kids) in extended_children(tree, bracketing) {
        let covered = kids.iter().fold(0u64, |acc, k| match k {
            ExtendedChild::Bracket(s) => acc | s,
            ExtendedChild::Vertex(_) => acc,
        });
        let own: Vec<usize> = edge_ids(beta & !covered).collect();
        assert_eq!(own.len(), 1, "maximal bracketing adds one edge per bracket");
        let below: Rat = kids
            .iter()
            .map(|k| match k {
                ExtendedChild::Bracket(s) => b(&tree.polygon_of(*s)),
                ExtendedChild::Vertex(v) => b(&tree.nodes[*v].cell),
            })
            .sum();
        y[own[0]] = b(&tree.polygon_of(beta)) - below;
    }
    y
}

/// Devadoss bracket associahedron of `tree` for `b⁻`, in `ℝ^{nodes}` with
/// coordinate 0 pinned to zero. Inequality `k` belongs to the bracket at
/// position `k` of the returned list.
pub fn devadoss_h_rep(
    tree: &PlaneTree,
    b: &dyn Fn(&SubPolygon) -> Rat,
    sense: BracketSense,
) -> (HPolytope, Vec<EdgeSet>) {
    let k = tree.num_nodes();
    let mut p = HPolytope::new(k);
    let mut pin = vec![Rat::zero(); k];
    pin[0] = Rat::one();
    p.equalities.push((pin, Rat::zero()));
    let ind = |s: EdgeSet| -> Vec<Rat> {
        (0..k)
            .map(|e| if s >> e & 1 == 1 { Rat::one() } else { Rat::zero() })
            .collect()
    };
    let all = tree.all_edges();
    p.equalities.push((ind(all), b_minus(tree, b, all)));
    let mut brackets = Vec::new();
    for beta in tree.connected_edge_sets() {
        if beta == all {
            continue;
        }
        let (form, rhs) = (ind(beta), b_minus(tree, b, beta));
        match sense {
            BracketSense::AtLeast => p.inequalities.push((form, rhs)),
            BracketSense::AtMost => p.inequalities.push((form.iter().map(|x| -x).collect(), -rhs)),
        }
        brackets.push(beta);
    }
    (p, brackets)
}

/// `b_M(P) = b(P) − Σ b(maximal proper members of P)`.
pub fn b_m(params: &RealizationParams, m: &Matryoshka, p: &SubPolygon) -> Rat {
    let below: Rat = m.maximal_below(p).iter().map(|q| params.b(q)).sum();
    params.b(p) - below
}

/// `b_M` of the smallest polygon carrying `(i, j)`, zero for polygon edges.
fn b_m_of_segment(params: &RealizationParams, m: &Matryoshka, i: usize, j: usize) -> Rat {
    if j < i + 2 || (i == 0 && j == params.n + 1) {
        return Rat::zero();
    }
    let p = m
        .min_polygon(&Diagonal::new(i, j))
        .expect("diagonal of the triangulation");
    b_m(params, m, &p)
}

/// Cosmohedron vertex from the Matryoshka directly:
/// `(c_M)_v = (a_M)_v + ε (b_M(P(l_v)) + b_M(P(r_v)) − b_M(P(u_v)))`.
pub fn cosmo_vertex_closed_form(params: &RealizationParams, m: &Matryoshka) -> Vec<Rat> {
    let s = m.subdivision();
    let mut x = loday_vertex(params, &s);
    for cell in s.cells() {
        let vs = cell.vertices();
        let (u, v, w) = (vs[0], vs[1], vs[2]);
        let bv = b_m_of_segment(params, m, u, v) + b_m_of_segment(params, m, v, w) - b_m_of_segment(params, m, u, w);
        x[v - 1] += &params.epsilon * bv;
    }
    x
}

/// Cosmohedron vertex from the tree data: `c_M = a_T + ε f^T(b_B)` with
/// `f^T(e_pc) = e_p − e_c`.
pub fn cosmo_vertex_def(params: &RealizationParams, m: &Matryoshka) -> Vec<Rat> {
    let bt = m.to_bracketed_tree();
    let tree = &bt.tree;
    let mut x = loday_vertex_lca(params, tree);
    let y = devadoss_vertex(tree, &bt.bracketing, &|p| params.b(p));
    for (e, ye) in y.iter().enumerate().take(tree.num_nodes()).skip(1) {
        let (p, c) = tree.endpoints(e);
        let t = &params.epsilon * ye;
        x[tree.nodes[p].labels[0] - 1] += &t;
        x[tree.nodes[c].labels[0] - 1] -= &t;
    }
    x
}

/// Cosmohedron vertex of a maximal Matryoshka, computed by both routes.
pub fn cosmo_vertex(params: &RealizationParams, m: &Matryoshka) -> Result<Vec<Rat>, RealizationError> {
    if !m.is_maximal() {
        return Err(RealizationError::NotMaximal);
    }
    let d = cosmo_vertex_def(params, m);
    let p = cosmo_vertex_closed_form(params, m);
    if d != p {
        let show = |v: &[Rat]| v.iter().map(crate::exactgeom::fmt_rat).collect();
        return Err(RealizationError::FormulaMismatch {
            matryoshka: format!("{:?}", m.polygons().iter().map(|p| p.to_string()).collect::<Vec<_>>()),
            definition: show(&d),
            closed_form: show(&p),
        });
    }
    Ok(d)
}

/// A vertex of the cosmohedron with its Matryoshka.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CosmoVertex {
    pub matryoshka: Matryoshka,
    #[serde(with = "crate::exactgeom::rat_vec_serde")]
    pub coords: Vec<Rat>,
}

/// All vertices, in the canonical Matryoshka order.
pub fn cosmo_vertices(params: &RealizationParams) -> Result<Vec<CosmoVertex>, RealizationError> {
    enumerate(params.n, true)
        .into_par_iter()
        .map(|m| cosmo_vertex(params, &m).map(|coords| CosmoVertex { matryoshka: m, coords }))
        .collect()
}

/// A facet inequality `normal · x ≥ rhs` with its subdivision.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CosmoFacet {
    pub subdivision: ChordSet,
    #[serde(with = "crate::exactgeom::rat_vec_serde")]
    pub normal: Vec<Rat>,
    #[serde(with = "crate::exactgeom::rat_serde")]
    pub rhs: Rat,
}

/// Facet of a subdivision: `Σ d_S(i) x_i ≥ Σ d_S(ij) a_ij + ε(Σ_{P∈S} b(P) − b(full))`.
pub fn cosmo_facet(params: &RealizationParams, s: &ChordSet) -> CosmoFacet {
    let normal = s.vertex_depths().iter().map(|&d| int(d as i64)).collect();
    let loday: Rat = params.a.iter().map(|(d, a)| a * int(s.diagonal_depth(d) as i64)).sum();
    let cells: Rat = s.cells().iter().map(|p| params.b(p)).sum();
    let rhs = loday + &params.epsilon * (cells - params.b(&SubPolygon::full(params.n)));
    CosmoFacet {
        subdivision: s.clone(),
        normal,
        rhs,
    }
}

/// One facet per non-trivial subdivision, in subdivision enumeration order.
pub fn cosmo_facets(params: &RealizationParams) -> Vec<CosmoFacet> {
    enumerate_subdivisions(params.n, false)
        .iter()
        .map(|s| cosmo_facet(params, s))
        .collect()
}

/// The coordinate-sum equality `Σ x_i = Σ_{diag⁺} a_ij`.
pub fn coordinate_sum(params: &RealizationParams) -> Rat {
    params.a.values().sum()
}

/// H-description of the cosmohedron.
pub fn cosmo_h_rep(params: &RealizationParams) -> HPolytope {
    let n = params.n;
    let mut p = HPolytope::new(n);
    p.equalities.push((vec![Rat::one(); n], coordinate_sum(params)));
    for f in cosmo_facets(params) {
        p.inequalities.push((f.normal, f.rhs));
    }
    p
}

/// How many `(M, ray, M′)` support triples to test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sampling {
    Exhaustive,
    Random { seed: u64, triples: usize },
}

/// Trapezoid formed by the vertices of the long-plus-short diagonal facet of the hexagon.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrapezoidReport {
    pub edges_ok: bool,
    pub parallel: bool,
    pub unequal: bool,
    #[serde(with = "crate::exactgeom::rat_vec_serde")]
    pub c_m2: Vec<Rat>,
    pub eps_part_m2: Vec<String>,
    pub printed_eps_part_m2: Vec<i64>,
}

/// Outcome of [`verify_cosmohedron`].
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CosmoReport {
    pub n: usize,
    pub vertices: usize,
    pub facets: usize,
    pub params_ok: bool,
    pub feasibility_ok: bool,
    pub tightness_ok: bool,
    pub incidence_ok: bool,
    pub support_checks: usize,
    pub support_ok: bool,
    pub strict_ok: bool,
    pub trapezoid: Option<TrapezoidReport>,
    pub failures: Vec<String>,
}

impl CosmoReport {
    pub fn ok(&self) -> bool {
        self.params_ok
            && self.feasibility_ok
            && self.tightness_ok
            && self.incidence_ok
            && self.support_ok
            && self.strict_ok
            && self
                .trapezoid
                .as_ref()
                .is_none_or(|t| t.edges_ok && t.parallel && t.unequal)
            && self.failures.is_empty()
    }
}

fn to_rat(v: &[BigInt]) -> Vec<Rat> {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

fn quads(m: &Matryoshka) -> usize {
    m.polygons().iter().filter(|p| p.size() == 4).count()
}

/// Builds the vertices and verifies them.
pub fn verify_cosmohedron(params: &RealizationParams, sampling: Sampling) -> CosmoReport {
    match cosmo_vertices(params) {
        Ok(vs) => verify_cosmohedron_vertices(params, &vs, sampling),
        Err(e) => CosmoReport {
            n: params.n,
            failures: vec![e.to_string()],
            ..CosmoReport::default()
        },
    }
}

/// Verifies a vertex list against the facet description and the cosmohedral
/// fan: every vertex satisfies every facet, facet `S` is tight at `c_M`
/// exactly when the cells of `S` lie in `M`, each vertex lies on at least
/// `n − 1` facets with equality exactly for one quadrilateral, each vertex has
/// `n − 2 + #quadrilaterals` edges (downward covers of `M`), and the rays of
/// `cone(M)` (and their sum, strictly) are maximized at `c_M`.
pub fn verify_cosmohedron_vertices(params: &RealizationParams, vs: &[CosmoVertex], sampling: Sampling) -> CosmoReport {
    let n = params.n;
    let facets = cosmo_facets(params);
    let mut r = CosmoReport {
        n,
        vertices: vs.len(),
        facets: facets.len(),
        ..CosmoReport::default()
    };
    let problems = params.problems();
    r.params_ok = problems.is_empty();
    r.failures.extend(problems);

    let sum = coordinate_sum(params);
    let check: Vec<(bool, bool, bool, Option<String>)> = vs
        .par_iter()
        .map(|v| {
            let mut feas = v.coords.iter().sum::<Rat>() == sum;
            let mut tight_ok = true;
            let mut count = 0;
            let mut msg = None;
            for f in &facets {
                let val = dot(&f.normal, &v.coords);
                feas &= val >= f.rhs;
                let tight = val == f.rhs;
                count += tight as usize;
                let refines = f.subdivision.cells().iter().all(|c| v.matryoshka.contains(c));
                if tight != refines {
                    tight_ok = false;
                    msg.get_or_insert_with(|| format!("facet {:?} at vertex {:?}", f.subdivision.chords(), v.coords));
                }
            }
            let q = quads(&v.matryoshka);
            let inc =
                n < 2 || (count >= n - 1 && (count == n - 1) == (q == 1) && v.matryoshka.covers().len() == n - 2 + q);
            (feas, tight_ok, inc, msg)
        })
        .collect();
    r.feasibility_ok = check.iter().all(|c| c.0);
    r.tightness_ok = check.iter().all(|c| c.1);
    r.incidence_ok = check.iter().all(|c| c.2);
    if let Some(m) = check.iter().find_map(|c| c.3.clone()) {
        r.failures.push(format!("tightness mismatch: {m}"));
    }
    if !r.feasibility_ok {
        r.failures.push("a vertex violates the facet description".into());
    }

    let rays: Vec<Vec<Vec<Rat>>> = vs
        .par_iter()
        .map(|v| {
            subdivision_rays_below(&v.matryoshka)
                .iter()
                .map(|s| to_rat(&s.ray))
                .collect()
        })
        .collect();
    let interior: Vec<Vec<Rat>> = rays
        .iter()
        .map(|rs| {
            rs.iter().fold(vec![Rat::zero(); n], |acc, w| {
                acc.iter().zip(w).map(|(a, b)| a + b).collect()
            })
        })
        .collect();
    let k = vs.len();
    let (support, strict, checks) = match sampling {
        Sampling::Exhaustive => {
            let res: Vec<(bool, bool, usize)> = (0..k)
                .into_par_iter()
                .map(|i| {
                    let mut sup = true;
                    let mut st = true;
                    let mut c = 0;
                    for w in &rays[i] {
                        let top = dot(w, &vs[i].coords);
                        for other in vs {
                            c += 1;
                            sup &= top >= dot(w, &other.coords);
                        }
                    }
                    let top = dot(&interior[i], &vs[i].coords);
                    for (j, other) in vs.iter().enumerate() {
                        if j != i {
                            st &= top > dot(&interior[i], &other.coords);
                        }
                    }
                    (sup, st, c)
                })
                .collect();
            (
                res.iter().all(|x| x.0),
                res.iter().all(|x| x.1),
                res.iter().map(|x| x.2).sum(),
            )
        }
        Sampling::Random { seed, triples } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let picks: Vec<(usize, usize, usize)> = (0..triples)
                .map(|_| {
                    let i = rng.gen_range(0..k);
                    let w = rng.gen_range(0..rays[i].len());
                    let mut j = rng.gen_range(0..k - 1);
                    if j >= i {
                        j += 1;
                    }
                    (i, w, j)
                })
                .collect();
            let res: Vec<(bool, bool)> = picks
                .par_iter()
                .map(|&(i, w, j)| {
                    let sup = dot(&rays[i][w], &vs[i].coords) >= dot(&rays[i][w], &vs[j].coords);
                    let st = dot(&interior[i], &vs[i].coords) > dot(&interior[i], &vs[j].coords);
                    (sup, st)
                })
                .collect();
            (res.iter().all(|x| x.0), res.iter().all(|x| x.1), triples)
        }
    };
    r.support_ok = support;
    r.strict_ok = strict;
    r.support_checks = checks;
    if !support {
        r.failures.push("a cone ray is not maximized at its vertex".into());
    }
    if !strict {
        r.failures
            .push("an interior direction is not uniquely maximized".into());
    }
    if n == 4 {
        r.trapezoid = Some(trapezoid_report(params, vs));
        if let Some(t) = &r.trapezoid {
            if !(t.edges_ok && t.parallel && t.unequal) {
                r.failures.push("trapezoid edge identities fail".into());
            }
        }
    }
    r
}

/// The four hexagon Matryoshkas of the trapezoidal face, in the order
/// `M₁, N₁, M₂, N₂`.
pub fn trapezoid_matryoshkas() -> [Matryoshka; 4] {
    let sp = SubPolygon::from_vertices;
    let n1 = Matryoshka::new(
        4,
        vec![
            sp(&[0, 1, 3]),
            sp(&[1, 2, 3]),
            sp(&[0, 3, 5]),
            sp(&[3, 4, 5]),
            sp(&[0, 1, 2, 3]),
            sp(&[0, 3, 4, 5]),
        ],
    )
    .expect("valid Matryoshka");
    let n2 = Matryoshka::new(
        4,
        vec![
            sp(&[0, 1, 2]),
            sp(&[0, 2, 3]),
            sp(&[0, 3, 5]),
            sp(&[3, 4, 5]),
            sp(&[0, 1, 2, 3]),
            sp(&[0, 1, 2, 3, 5]),
        ],
    )
    .expect("valid Matryoshka");
    [hexagon_m1(), n1, hexagon_m2(), n2]
}

fn e(i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); 4];
    v[i - 1] = Rat::one();
    v
}

fn scaled_diff(s: &Rat, a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| s * (x - y)).collect()
}

fn trapezoid_report(params: &RealizationParams, vs: &[CosmoVertex]) -> TrapezoidReport {
    let find = |m: &Matryoshka| {
        vs.iter()
            .find(|v| v.matryoshka == *m)
            .map(|v| v.coords.clone())
            .unwrap_or_else(|| vec![Rat::zero(); 4])
    };
    let [m1, n1, m2, n2] = trapezoid_matryoshkas();
    let (cm1, cn1, cm2, cn2) = (find(&m1), find(&n1), find(&m2), find(&n2));
    let eps = &params.epsilon;
    let d1 = scaled_diff(&Rat::one(), &cm1, &cn1);
    let d2 = scaled_diff(&Rat::one(), &cm2, &cn2);
    let want1 = scaled_diff(&(Rat::one() - int(3) * eps), &e(2), &e(1));
    let want2 = scaled_diff(&(Rat::one() - eps), &e(1), &e(2));
    let loday = loday_vertex(params, &m2.subdivision());
    let eps_part: Vec<String> = cm2
        .iter()
        .zip(&loday)
        .map(|(c, a)| crate::exactgeom::fmt_rat(&((c - a) / eps)))
        .collect();
    TrapezoidReport {
        edges_ok: d1 == want1 && d2 == want2,
        parallel: primitive_integer(&d1) == primitive_integer(&d2).iter().map(|x| -x).collect::<Vec<_>>(),
        unequal: d1.iter().zip(&d2).any(|(a, b)| a.abs() != b.abs()),
        c_m2: cm2,
        eps_part_m2: eps_part,
        printed_eps_part_m2: vec![-1, 0, 3, 2],
    }
}

/// Edge census of the cosmohedron.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct EdgeDirections {
    pub edges: usize,
    /// Every edge is parallel to `e_i − e_j` or `e_i − e_j + e_k − e_l` with `i ≠ j`, `k ≠ l`.
    pub all_of_braid_type: bool,
    /// Edges whose direction needs a repeated index, such as `2e_k − e_i − e_j`.
    pub with_repeated_index: usize,
}

/// Classifies the edges of the cosmohedron, detected from facet incidences.
pub fn edge_directions(params: &RealizationParams, vs: &[CosmoVertex]) -> EdgeDirections {
    let n = params.n;
    let facets = cosmo_facets(params);
    let tight: Vec<BTreeSet<usize>> = vs
        .iter()
        .map(|v| {
            facets
                .iter()
                .enumerate()
                .filter(|(_, f)| dot(&f.normal, &v.coords) == f.rhs)
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    let pairs: Vec<(usize, usize)> = (0..vs.len())
        .flat_map(|i| (i + 1..vs.len()).map(move |j| (i, j)))
        .collect();
    let res: Vec<Option<(bool, bool)>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let common: Vec<usize> = tight[i].intersection(&tight[j]).copied().collect();
            let mut rows: Vec<Vec<Rat>> = common.iter().map(|&f| facets[f].normal.clone()).collect();
            rows.push(vec![Rat::one(); n]);
            if rank(&rows, n) + 1 != n {
                return None;
            }
            if (0..vs.len()).any(|k| k != i && k != j && common.iter().all(|f| tight[k].contains(f))) {
                return None;
            }
            let d = primitive_integer(&scaled_diff(&Rat::one(), &vs[i].coords, &vs[j].coords));
            let pos: BigInt = d.iter().filter(|x| x.is_positive()).sum();
            let neg: BigInt = -d.iter().filter(|x| x.is_negative()).sum::<BigInt>();
            let big = d.iter().any(|x| x.abs() > BigInt::one());
            let braid = pos == neg && (pos == BigInt::one() || pos == BigInt::from(2));
            Some((braid, big))
        })
        .collect();
    let edges: Vec<(bool, bool)> = res.into_iter().flatten().collect();
    EdgeDirections {
        edges: edges.len(),
        all_of_braid_type: edges.iter().all(|e| e.0),
        with_repeated_index: edges.iter().filter(|e| e.1).count(),
    }
}

/// Kinematic coordinates `X_{r,s} = Σ_{r<i<s} x_i − Σ_{r≤i, j≤s} a_ij` on the
/// diagonals of the polygon.
pub fn afv_transform(params: &RealizationParams, x: &[Rat]) -> BTreeMap<Diagonal, Rat> {
    diagonals(params.n)
        .into_iter()
        .map(|d| {
            let lin: Rat = (d.i + 1..d.j).map(|i| x[i - 1].clone()).sum();
            let cst: Rat = params
                .a
                .iter()
                .filter(|(c, _)| c.is_below(&d))
                .map(|(_, v)| v.clone())
                .sum();
            (d, lin - cst)
        })
        .collect()
}

fn kin(xs: &BTreeMap<Diagonal, Rat>, i: usize, j: usize, n: usize) -> Rat {
    if j < i + 2 || (i == 0 && j == n + 1) {
        Rat::zero()
    } else {
        xs[&Diagonal::new(i, j)].clone()
    }
}

/// Residuals `X_{r,s} + X_{r+1,s+1} − X_{r,s+1} − X_{r+1,s} − a_{r,s+1}` for `0 ≤ r ≪ s ≤ n`.
pub fn abhy_residuals(params: &RealizationParams, xs: &BTreeMap<Diagonal, Rat>) -> Vec<Rat> {
    let n = params.n;
    let mut out = Vec::new();
    for r in 0..=n {
        for s in r + 2..=n {
            let lhs = kin(xs, r, s, n) + kin(xs, r + 1, s + 1, n) - kin(xs, r, s + 1, n) - kin(xs, r + 1, s, n);
            out.push(lhs - params.a(&Diagonal::new(r, s + 1)));
        }
    }
    out
}

/// Outcome of [`afv_check`].
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AfvReport {
    pub n: usize,
    pub vertices: usize,
    pub equality_rows: usize,
    pub residuals_zero: bool,
    pub subdivision_ok: bool,
    pub tightness_ok: bool,
    pub present_chords_ok: bool,
    pub present_zero: usize,
    pub present_total: usize,
    pub negative_entries: usize,
    pub injective: bool,
    pub rank: usize,
    pub failures: Vec<String>,
}

impl AfvReport {
    pub fn ok(&self) -> bool {
        self.residuals_zero
            && self.subdivision_ok
            && self.tightness_ok
            && self.present_chords_ok
            && self.injective
            && self.rank + 1 == self.n
            && self.failures.is_empty()
    }
}

/// Checks the kinematic images of all vertices: zero ABHY residuals, the
/// subdivision inequalities `Σ_{C∈S} X_C ≥ Σ_{P∈S} B(P) − B(full)` with
/// `B = εb` and the same tightness as in `x`-space, `X_C = −ε b_M(P(C))` for the
/// chords of each vertex's subdivision, injectivity and rank `n − 1` of the
/// linear part on the coordinate-sum hyperplane. Negative coordinates are
/// counted.
pub fn afv_check(params: &RealizationParams, vs: &[CosmoVertex]) -> AfvReport {
    let n = params.n;
    let mut r = AfvReport {
        n,
        vertices: vs.len(),
        ..AfvReport::default()
    };
    let images: Vec<BTreeMap<Diagonal, Rat>> = vs.par_iter().map(|v| afv_transform(params, &v.coords)).collect();
    r.equality_rows = n * n.saturating_sub(1) / 2;
    r.residuals_zero = images.iter().all(|x| {
        let res = abhy_residuals(params, x);
        res.len() == r.equality_rows && res.iter().all(Zero::is_zero)
    });
    let subs = enumerate_subdivisions(n, false);
    let full = params.b(&SubPolygon::full(n));
    let mut sub_ok = true;
    let mut tight_ok = true;
    for (v, x) in vs.iter().zip(&images) {
        for s in &subs {
            let lhs: Rat = s.chords().iter().map(|c| x[c].clone()).sum();
            let rhs: Rat = &params.epsilon * (s.cells().iter().map(|p| params.b(p)).sum::<Rat>() - &full);
            sub_ok &= lhs >= rhs;
            let refines = s.cells().iter().all(|c| v.matryoshka.contains(c));
            tight_ok &= (lhs == rhs) == refines;
        }
    }
    r.subdivision_ok = sub_ok;
    r.tightness_ok = tight_ok;
    let mut present_ok = true;
    for (v, x) in vs.iter().zip(&images) {
        let s = v.matryoshka.subdivision();
        for c in s.chords() {
            let p = v.matryoshka.min_polygon(c).expect("chord of the subdivision");
            let expect = -(&params.epsilon * b_m(params, &v.matryoshka, &p));
            present_ok &= x[c] == expect;
            r.present_total += 1;
            r.present_zero += x[c].is_zero() as usize;
        }
        r.negative_entries += x.values().filter(|v| v.is_negative()).count();
    }
    r.present_chords_ok = present_ok;
    let distinct: BTreeSet<Vec<Rat>> = images.iter().map(|x| x.values().cloned().collect()).collect();
    r.injective = distinct.len() == images.len();
    let zero = vec![Rat::zero(); n];
    let base = afv_transform(params, &zero);
    let cols: Vec<Vec<Rat>> = (1..n)
        .map(|i| {
            let mut u = zero.clone();
            u[i - 1] = Rat::one();
            u[n - 1] = -Rat::one();
            let img = afv_transform(params, &u);
            img.iter().map(|(d, v)| v - &base[d]).collect()
        })
        .collect();
    let rows = diagonals(n).len();
    r.rank = rank(&cols, rows);
    if !r.residuals_zero {
        r.failures.push("ABHY residual is nonzero".into());
    }
    if !sub_ok {
        r.failures.push("a subdivision inequality fails".into());
    }
    if !tight_ok {
        r.failures.push("kinematic tightness differs from x-space".into());
    }
    if !present_ok {
        r.failures
            .push("X_C differs from -ε b_M(P(C)) on a present chord".into());
    }
    r
}

/// Outcome of a facet factorization check.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct FactorizationReport {
    pub interval_size: usize,
    pub product_size: usize,
    pub bijective: bool,
    pub order_preserving: bool,
}

impl FactorizationReport {
    pub fn ok(&self) -> bool {
        self.interval_size == self.product_size && self.bijective && self.order_preserving
    }
}

/// Restriction of `m` to the polygons inside cell `p`, relabelled as a
/// Matryoshka on a `|p|`-gon.
fn restrict(m: &Matryoshka, p: &SubPolygon) -> Matryoshka {
    let vs = p.vertices();
    let pos = |v: usize| vs.iter().position(|&w| w == v).expect("vertex of the cell");
    let ps = m
        .polygons()
        .iter()
        .filter(|q| q.is_subset(p))
        .map(|q| SubPolygon(q.vertices().iter().fold(0, |acc, &v| acc | 1 << pos(v))))
        .collect();
    Matryoshka::from_sorted_unchecked(vs.len() - 2, ps)
}

type Factors = (Vec<SubPolygon>, Vec<Matryoshka>);

/// Checks that the Matryoshkas refining `s` correspond bijectively and
/// order-preservingly to pairs (bracketing of the dual tree of `s`, one
/// Matryoshka per cell of `s`).
pub fn facet_factorization_check(n: usize, s: &ChordSet) -> FactorizationReport {
    let cells = s.cells();
    let full = SubPolygon::full(n);
    let interval: Vec<Matryoshka> = enumerate(n, false)
        .into_iter()
        .filter(|m| cells.iter().all(|c| m.contains(c)))
        .collect();
    let tree = dual_tree(s);
    let brs = enumerate_bracketings(&tree, false).len();
    let product_size = cells
        .iter()
        .map(|c| enumerate(c.size() - 2, false).len())
        .product::<usize>()
        * brs;
    let factor = |m: &Matryoshka| -> Option<Factors> {
        let outer: Vec<SubPolygon> = m
            .polygons()
            .iter()
            .copied()
            .filter(|q| cells.iter().any(|c| c.is_subset(q) && c != q))
            .collect();
        let edges: Vec<EdgeSet> = outer
            .iter()
            .map(|q| {
                (1..tree.num_nodes())
                    .filter(|&e| {
                        let (p, c) = tree.endpoints(e);
                        tree.nodes[p].cell.is_subset(q) && tree.nodes[c].cell.is_subset(q)
                    })
                    .fold(0u64, |acc, e| acc | 1 << e)
            })
            .collect();
        let valid = outer
            .iter()
            .zip(&edges)
            .all(|(q, &b)| tree.is_connected(b) && tree.polygon_of(b) == *q)
            && Bracketing::new(edges).is_valid_on(&tree, 0);
        let locals: Vec<Matryoshka> = cells.iter().map(|c| restrict(m, c)).collect();
        (valid && outer.contains(&full) && locals.iter().all(|l| l.validate().is_ok())).then_some((outer, locals))
    };
    let images: Vec<Option<Factors>> = interval.iter().map(factor).collect();
    let all_valid = images.iter().all(Option::is_some);
    let images: Vec<Factors> = images.into_iter().flatten().collect();
    let distinct: BTreeSet<&Factors> = images.iter().collect();
    let mut order = true;
    for (i, a) in interval.iter().enumerate() {
        for (j, b) in interval.iter().enumerate() {
            if !all_valid {
                break;
            }
            let (fa, fb) = (&images[i], &images[j]);
            let prod = fa.0.iter().all(|q| fb.0.contains(q)) && fa.1.iter().zip(&fb.1).all(|(x, y)| x.leq(y));
            order &= a.leq(b) == prod;
        }
    }
    FactorizationReport {
        interval_size: interval.len(),
        product_size,
        bijective: all_valid && distinct.len() == interval.len(),
        order_preserving: all_valid && order,
    }
}

/// A path graph with `k` edges; edge `e` joins vertices `e` and `e + 1`.
/// Brackets are nonempty runs of consecutive edges.
fn path_brackets(k: usize) -> Vec<(usize, usize)> {
    (0..k).flat_map(|a| (a + 1..=k).map(move |b| (a, b))).collect()
}

/// Bracket associahedron of a path with `k` edges under weights `w` on runs
/// `[a, b)`, with bracket sums bounded above.
fn path_brassoc(k: usize, w: &dyn Fn(usize, usize) -> Rat) -> HPolytope {
    let mut p = HPolytope::new(k);
    let ind = |a: usize, b: usize| {
        (0..k)
            .map(|e| if a <= e && e < b { Rat::one() } else { Rat::zero() })
            .collect::<Vec<_>>()
    };
    p.equalities.push((ind(0, k), w(0, k)));
    for (a, b) in path_brackets(k) {
        if (a, b) != (0, k) {
            p.inequalities.push((ind(a, b).iter().map(|x| -x).collect(), -w(a, b)));
        }
    }
    p
}

fn vertex_set(p: &HPolytope) -> BTreeSet<Vec<Rat>> {
    enumerate_vertices(p)
        .expect("bounded polytope")
        .into_iter()
        .map(|v| v.coords)
        .collect()
}

/// Checks that every bracket facet of the path bracket associahedron with
/// `k` edges equals the product of the bracket associahedra of the bracket
/// and of the contracted path, for the concave weight `b(j) = j(2k + 1 − j)`
/// of the edge count.
pub fn path_facet_factorization(k: usize) -> bool {
    let f = |j: usize| int((j * (2 * k + 1 - j)) as i64);
    let whole = path_brassoc(k, &|a, b| f(b - a));
    path_brackets(k)
        .into_iter()
        .filter(|&(a, b)| (a, b) != (0, k))
        .all(|(a, b)| {
            let mut facet = whole.clone();
            let ind = (0..k)
                .map(|e| if a <= e && e < b { Rat::one() } else { Rat::zero() })
                .collect();
            facet.equalities.push((ind, f(b - a)));
            let inner = vertex_set(&path_brassoc(b - a, &|s, t| f(t - s)));
            let rest = k - (b - a);
            let quotient_weight = |s: usize, t: usize| {
                let touches = s <= a && a <= t;
                if touches {
                    f(t - s + (b - a)) - f(b - a)
                } else {
                    f(t - s)
                }
            };
            let outer = if rest == 0 {
                BTreeSet::from([Vec::new()])
            } else {
                vertex_set(&path_brassoc(rest, &quotient_weight))
            };
            let product: BTreeSet<Vec<Rat>> = inner
                .iter()
                .flat_map(|x| {
                    outer.iter().map(move |y| {
                        let mut v = y[..a].to_vec();
                        v.extend(x.iter().cloned());
                        v.extend(y[a..].iter().cloned());
                        v
                    })
                })
                .collect();
            vertex_set(&facet) == product
        })
}

/// Canonical shape of the extended bracket tree, with and without the
/// Devadoss coordinates attached.
fn poset_shapes(tree: &PlaneTree, b: &Bracketing, y: &[Rat]) -> (String, String) {
    let kids: BTreeMap<EdgeSet, Vec<ExtendedChild>> = extended_children(tree, b).into_iter().collect();
    fn walk(beta: EdgeSet, kids: &BTreeMap<EdgeSet, Vec<ExtendedChild>>, y: &[Rat], with: bool) -> String {
        let covered = kids[&beta].iter().fold(0u64, |a, k| match k {
            ExtendedChild::Bracket(s) => a | s,
            ExtendedChild::Vertex(_) => a,
        });
        let own = edge_ids(beta & !covered).next().expect("one new edge");
        let mut parts: Vec<String> = kids[&beta]
            .iter()
            .map(|k| match k {
                ExtendedChild::Bracket(s) => walk(*s, kids, y, with),
                ExtendedChild::Vertex(_) => "v".to_string(),
            })
            .collect();
        parts.sort();
        let tag = if with {
            crate::exactgeom::fmt_rat(&y[own])
        } else {
            String::new()
        };
        format!("({tag};{})", parts.join(","))
    }
    let top = tree.all_edges();
    (walk(top, &kids, y, false), walk(top, &kids, y, true))
}

/// True when, for every maximal Matryoshka of size `n`, the Devadoss vertex is
/// determined by the shape of the bracket poset.
pub fn devadoss_depends_only_on_poset(params: &RealizationParams) -> bool {
    let mut seen: BTreeMap<String, String> = BTreeMap::new();
    for m in enumerate(params.n, true) {
        let bt = m.to_bracketed_tree();
        if bt.tree.num_edges() == 0 {
            continue;
        }
        let y = devadoss_vertex(&bt.tree, &bt.bracketing, &|p| params.b(p));
        let (shape, valued) = poset_shapes(&bt.tree, &bt.bracketing, &y);
        if let Some(prev) = seen.insert(shape, valued.clone()) {
            if prev != valued {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::rat;
    use crate::polygon::enumerate_triangulations;

    fn ints(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn hexagon_defaults() {
        let p = default_params(4);
        assert_eq!(p.b(&SubPolygon::from_vertices(&[0, 1, 2, 3, 4])), int(1));
        assert_eq!(p.b(&SubPolygon::full(4)), int(3));
        assert_eq!(p.epsilon, rat(1, 144));
        assert_eq!(default_params(2).epsilon, rat(1, 48));
    }

    #[test]
    fn loday_square_symbolic() {
        let mut p = default_params(2);
        p.a.insert(Diagonal::new(0, 2), int(2));
        p.a.insert(Diagonal::new(0, 3), int(3));
        p.a.insert(Diagonal::new(1, 3), int(5));
        let s = ChordSet::new(2, vec![Diagonal::new(0, 2)]);
        assert_eq!(loday_vertex(&p, &s), ints(&[2, 8]));
    }

    #[test]
    fn loday_second_hexagon() {
        let p = default_params(4);
        assert_eq!(loday_vertex(&p, &hexagon_m2().subdivision()), ints(&[2, 1, 6, 1]));
    }

    #[test]
    fn loday_routes_agree_and_match_h_rep() {
        for n in 1..=5 {
            let mut p = default_params(n);
            for (k, v) in p.a.values_mut().enumerate() {
                *v = int(1 + (k as i64 * 7) % 5);
            }
            let (h, labels) = loday_h_rep(&p);
            for t in enumerate_triangulations(n) {
                let x = loday_vertex(&p, &t);
                assert_eq!(x, loday_vertex_lca(&p, &dual_tree(&t)));
                assert!(h.contains(&x));
                let tight: Vec<Diagonal> = h.tight_set(&x).into_iter().map(|i| labels[i]).collect();
                let expect: Vec<Diagonal> = labels.iter().copied().filter(|d| t.contains(d)).collect();
                assert_eq!(tight, expect);
            }
        }
    }

    #[test]
    fn second_hexagon_vertex() {
        let p = default_params(4);
        let c = cosmo_vertex(&p, &hexagon_m2()).unwrap();
        let e = &p.epsilon;
        let want: Vec<Rat> = ints(&[2, 1, 6, 1])
            .iter()
            .zip(ints(&[-1, 0, 3, -2]))
            .map(|(a, b)| a + e * b)
            .collect();
        assert_eq!(c, want);
        let bt = hexagon_m2().to_bracketed_tree();
        let y = devadoss_vertex(&bt.tree, &bt.bracketing, &|q| p.b(q));
        let mut nz: Vec<Rat> = y.into_iter().filter(|v| !v.is_zero()).collect();
        nz.sort();
        assert_eq!(nz, ints(&[1, 2]));
    }

    #[test]
    fn first_hexagon_vertex() {
        let p = default_params(4);
        let c = cosmo_vertex(&p, &hexagon_m1()).unwrap();
        let e = &p.epsilon;
        let want: Vec<Rat> = ints(&[1, 2, 6, 1])
            .iter()
            .zip(ints(&[0, -3, 3, 0]))
            .map(|(a, b)| a + e * b)
            .collect();
        assert_eq!(c, want);
    }

    #[test]
    fn square_h_rep() {
        let p = default_params(2);
        let h = cosmo_h_rep(&p);
        assert_eq!(h.inequalities.len(), 2);
        let mut forms: Vec<(Vec<Rat>, Rat)> = h.inequalities.clone();
        forms.sort();
        assert_eq!(forms, vec![(ints(&[0, 1]), int(1)), (ints(&[1, 0]), int(1))]);
        assert_eq!(cosmo_facets(&default_params(3)).len(), 10);
        assert_eq!(cosmo_facets(&default_params(4)).len(), 44);
    }

    #[test]
    fn devadoss_h_rep_tightness() {
        for n in 2..=5 {
            for params in [
                default_params(n),
                RealizationParams {
                    b_rule: BRule::NegatedPreferred,
                    ..default_params(n)
                },
            ] {
                let b = |q: &SubPolygon| params.b(q);
                for t in enumerate_triangulations(n) {
                    let tree = dual_tree(&t);
                    let (h, brackets) = devadoss_h_rep(&tree, &b, bracket_sense(&params));
                    for bb in enumerate_bracketings(&tree, true) {
                        let y = devadoss_vertex(&tree, &bb, &b);
                        assert!(h.contains(&y));
                        let tight: Vec<EdgeSet> = h.tight_set(&y).into_iter().map(|i| brackets[i]).collect();
                        let want: Vec<EdgeSet> = brackets.iter().copied().filter(|&x| bb.contains(x)).collect();
                        assert_eq!(tight, want);
                    }
                }
            }
        }
    }

    #[test]
    fn verify_small_cosmohedra() {
        for n in 1..=4 {
            let r = verify_cosmohedron(&default_params(n), Sampling::Exhaustive);
            assert!(r.ok(), "{r:?}");
        }
        let r = verify_cosmohedron(&default_params(2), Sampling::Exhaustive);
        assert_eq!((r.vertices, r.facets), (2, 2));
    }

    #[test]
    fn negated_b_does_not_realize() {
        let p = RealizationParams {
            b_rule: BRule::NegatedPreferred,
            ..default_params(4)
        };
        let r = verify_cosmohedron(&p, Sampling::Exhaustive);
        assert!(r.params_ok && !r.support_ok && !r.ok());
    }

    #[test]
    fn large_epsilon_is_flagged() {
        let p = default_params(4);
        let big = p.epsilon_bound().unwrap() * int(10);
        let r = verify_cosmohedron(&p.with_epsilon(big), Sampling::Exhaustive);
        assert!(!r.params_ok && !r.ok());
    }

    #[test]
    fn hexagon_edges() {
        let p = default_params(4);
        let vs = cosmo_vertices(&p).unwrap();
        let e = edge_directions(&p, &vs);
        assert!(e.all_of_braid_type);
        let degrees: usize = vs.iter().map(|v| 2 + quads(&v.matryoshka)).sum();
        assert_eq!(2 * e.edges, degrees);
        assert!(e.with_repeated_index > 0);
    }

    #[test]
    fn afv_hexagon() {
        for n in 2..=4 {
            let p = default_params(n);
            let vs = cosmo_vertices(&p).unwrap();
            let r = afv_check(&p, &vs);
            assert!(r.ok(), "{r:?}");
            assert_eq!(r.rank, n - 1);
        }
        let p = default_params(4).with_epsilon(Rat::zero());
        let vs = cosmo_vertices(&p).unwrap();
        let r = afv_check(&p, &vs);
        assert_eq!(r.present_zero, r.present_total);
        assert_eq!(r.negative_entries, 0);
    }

    #[test]
    fn afv_square() {
        let mut p = default_params(2);
        p.a.insert(Diagonal::new(0, 2), int(2));
        p.a.insert(Diagonal::new(0, 3), int(3));
        p.a.insert(Diagonal::new(1, 3), int(5));
        let x = afv_transform(&p, &ints(&[2, 8]));
        assert_eq!(x[&Diagonal::new(0, 2)], int(0));
        assert_eq!(x[&Diagonal::new(1, 3)], int(3));
    }

    #[test]
    fn factorization() {
        let s = ChordSet::new(4, vec![Diagonal::new(0, 3), Diagonal::new(3, 5)]);
        let r = facet_factorization_check(4, &s);
        assert!(r.ok(), "{r:?}");
        assert_eq!(r.interval_size, 9);
        for n in 2..=4 {
            for s in enumerate_subdivisions(n, false) {
                assert!(facet_factorization_check(n, &s).ok());
            }
        }
        for k in 1..=4 {
            assert!(path_facet_factorization(k), "path with {k} edges");
        }
    }

    #[test]
    fn devadoss_poset_dependence() {
        assert!(devadoss_depends_only_on_poset(&default_params(5)));
    }
}
