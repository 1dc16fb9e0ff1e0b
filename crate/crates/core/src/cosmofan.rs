//! Cones of Matryoshkas, the cosmohedral fan and its relatives, exact fan
//! verification, fan meets and the nested braid fan witness.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::exactgeom::{cone_rays, dot, int, lp_feasible, primitive_integer, rank, Cone, HPolytope, Rat};
use crate::matryoshka::{enumerate, BracketedTree, Matryoshka};
use crate::polygon::{enumerate_subdivisions, ChordSet, Diagonal, SubPolygon};
use crate::trees::{
    dual_tree, edge_ids, enumerate_prebracketings, meet_prebracketings, prebracketing_leq, Bracketing, EdgeSet,
    PlaneTree, PreBracketing,
};

fn unit(n: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n];
    v[i] = Rat::one();
    v
}

fn diff(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn ints_to_rat(v: &[BigInt]) -> Vec<Rat> {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

/// Linear form `x_rep(parent) - x_rep(child)` of a tree edge, where `rep` is the
/// smallest label of a node. Coordinates are indexed by label minus one.
pub fn edge_form(tree: &PlaneTree, e: usize) -> Vec<Rat> {
    let (p, c) = tree.endpoints(e);
    let n = tree.n;
    diff(
        &unit(n, tree.nodes[p].labels[0] - 1),
        &unit(n, tree.nodes[c].labels[0] - 1),
    )
}

/// Equalities `x_i = x_rep` for the labels sharing a node.
fn cell_equalities(tree: &PlaneTree) -> Vec<Vec<Rat>> {
    let n = tree.n;
    tree.nodes
        .iter()
        .flat_map(|nd| {
            let r = nd.labels[0] - 1;
            nd.labels[1..].iter().map(move |&l| diff(&unit(n, l - 1), &unit(n, r)))
        })
        .collect()
}

/// Cone of a bracketed tree in `ℝⁿ`: equal coordinates on each node, equal edge
/// forms within each class of the bracket pre-order, each cover giving
/// `y_upper ≥ y_lower`, and `y ≥ 0` on minimal classes.
pub fn cone_of_bracketed(bt: &BracketedTree) -> Cone {
    let tree = &bt.tree;
    let mut cone = Cone::new(tree.n);
    cone.equalities = cell_equalities(tree);
    let poset = bt.bracketing.poset();
    let rep: Vec<usize> = poset
        .classes
        .iter()
        .map(|c| edge_ids(c.edges).next().expect("nonempty class"))
        .collect();
    for (k, c) in poset.classes.iter().enumerate() {
        for e in edge_ids(c.edges).skip(1) {
            cone.equalities
                .push(diff(&edge_form(tree, e), &edge_form(tree, rep[k])));
        }
    }
    for (up, low) in poset.covers() {
        cone.inequalities
            .push(diff(&edge_form(tree, rep[up]), &edge_form(tree, rep[low])));
    }
    for k in poset.minimal_classes() {
        cone.inequalities.push(edge_form(tree, rep[k]));
    }
    cone.lineality_hint = Some(vec![vec![Rat::one(); tree.n]]);
    cone
}

/// Cone of a Matryoshka in `ℝⁿ`; its lineality space is spanned by the all-ones vector.
pub fn cone_of(m: &Matryoshka) -> Cone {
    cone_of_bracketed(&m.to_bracketed_tree())
}

/// The map `f_T` sending the edge-coordinate vector `y` to
/// `Σ_e y_e · 1[parent side of e]`.
pub fn f_tree(tree: &PlaneTree, y: &[Rat]) -> Vec<Rat> {
    let mut x = vec![Rat::zero(); tree.n];
    for (e, ye) in y.iter().enumerate().take(tree.num_nodes()).skip(1) {
        if ye.is_zero() {
            continue;
        }
        for l in tree.parent_side_labels(e) {
            x[l - 1] += ye;
        }
    }
    x
}

/// Inverse of [`f_tree`] modulo the all-ones line: `y_e = x_parent − x_child`.
pub fn f_tree_inverse(tree: &PlaneTree, x: &[Rat]) -> Vec<Rat> {
    let mut y = vec![Rat::zero(); tree.num_nodes()];
    for (e, ye) in y.iter_mut().enumerate().skip(1) {
        *ye = dot(&edge_form(tree, e), x);
    }
    y
}

/// Positive cone of a pre-bracketing in edge coordinates `ℝ^{nodes}` (coordinate
/// 0 is pinned to zero): contracted edges vanish, classes are equal, covers are
/// ordered and minimal classes are nonnegative.
pub fn prebracket_cone(tree: &PlaneTree, pb: &PreBracketing) -> Cone {
    let k = tree.num_nodes();
    let mut cone = Cone::new(k);
    cone.equalities.push(unit(k, 0));
    for e in edge_ids(pb.contracted) {
        cone.equalities.push(unit(k, e));
    }
    let poset = pb.poset();
    let rep: Vec<usize> = poset
        .classes
        .iter()
        .map(|c| edge_ids(c.edges).next().expect("nonempty class"))
        .collect();
    for (j, c) in poset.classes.iter().enumerate() {
        for e in edge_ids(c.edges).skip(1) {
            cone.equalities.push(diff(&unit(k, e), &unit(k, rep[j])));
        }
    }
    for (up, low) in poset.covers() {
        cone.inequalities.push(diff(&unit(k, rep[up]), &unit(k, rep[low])));
    }
    for j in poset.minimal_classes() {
        cone.inequalities.push(unit(k, rep[j]));
    }
    cone
}

/// Associahedral cone of a subdivision: coordinates equal on each cell and
/// every edge form nonnegative.
pub fn assoc_cone(s: &ChordSet) -> Cone {
    let tree = dual_tree(s);
    let mut cone = Cone::new(s.n);
    cone.equalities = cell_equalities(&tree);
    for e in 1..tree.num_nodes() {
        cone.inequalities.push(edge_form(&tree, e));
    }
    cone
}

/// Adds the equality `x_n = 0`, making cones with lineality `ℝ·1` pointed.
pub fn slice(cone: &Cone) -> Cone {
    let mut c = cone.clone();
    c.equalities.push(unit(cone.ambient_dim, cone.ambient_dim - 1));
    c.lineality_hint = None;
    c
}

/// Representative of `v` modulo the all-ones line with minimum entry 0,
/// scaled to a primitive integer vector.
pub fn display_ray(v: &[Rat]) -> Vec<BigInt> {
    let min = v.iter().min().cloned().unwrap_or_else(Rat::zero);
    let shifted: Vec<Rat> = v.iter().map(|x| x - &min).collect();
    primitive_integer(&shifted)
}

/// Ray of a subdivision's one-dimensional cone, with its comparison to the
/// vertex-depth vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubdivisionRay {
    pub subdivision: ChordSet,
    pub ray: Vec<BigInt>,
    pub depth_sign: i32,
}

/// Generator of the cone of the subdivision Matryoshka of `s`, in display form,
/// and the sign `σ` with `ray ≡ σ·(d_S(1), …, d_S(n))` modulo the all-ones line
/// (0 if neither sign matches).
pub fn subdivision_ray(s: &ChordSet) -> SubdivisionRay {
    let cone = slice(&cone_of(&Matryoshka::of_subdivision(s)));
    let g = cone_rays(&cone);
    assert_eq!(g.rays.len(), 1, "subdivision cone is a ray");
    let ray = display_ray(&ints_to_rat(&g.rays[0]));
    let depth: Vec<Rat> = s.vertex_depths().iter().map(|&d| int(d as i64)).collect();
    let neg: Vec<Rat> = depth.iter().map(|d| -d.clone()).collect();
    let depth_sign = if display_ray(&depth) == ray {
        1
    } else if display_ray(&neg) == ray {
        -1
    } else {
        0
    };
    SubdivisionRay {
        subdivision: s.clone(),
        ray,
        depth_sign,
    }
}

/// Rays of all non-trivial subdivision Matryoshkas whose polygons lie in `m`.
pub fn subdivision_rays_below(m: &Matryoshka) -> Vec<SubdivisionRay> {
    enumerate_subdivisions(m.n, false)
        .iter()
        .filter(|s| s.cells().iter().all(|c| m.contains(c)))
        .map(subdivision_ray)
        .collect()
}

/// Contracts the Matryoshka so that the chords not in `keep` disappear: every
/// polygon strictly inside the smallest polygon carrying a lost chord is removed.
fn drop_chords(m: &Matryoshka, keep: &BTreeSet<Diagonal>) -> Matryoshka {
    let lost: Vec<Diagonal> = m
        .subdivision()
        .chords()
        .iter()
        .copied()
        .filter(|d| !keep.contains(d))
        .collect();
    let tops: Vec<SubPolygon> = lost
        .iter()
        .map(|d| m.min_polygon(d).expect("chord of the subdivision"))
        .collect();
    let ps = m
        .polygons()
        .iter()
        .copied()
        .filter(|p| !tops.iter().any(|t| p != t && p.is_subset(t)))
        .collect();
    Matryoshka::from_sorted_unchecked(m.n, ps)
}

/// Polygon of a bracket of `tree` after contracting the edges in `zero`.
fn contracted_polygon(tree: &PlaneTree, beta: EdgeSet, zero: EdgeSet) -> SubPolygon {
    let mut nodes = tree.vertices_of(beta);
    loop {
        let grow = edge_ids(zero).fold(nodes, |acc, e| {
            let (p, c) = tree.endpoints(e);
            if acc >> p & 1 == 1 || acc >> c & 1 == 1 {
                acc | 1 << p | 1 << c
            } else {
                acc
            }
        });
        if grow == nodes {
            break;
        }
        nodes = grow;
    }
    SubPolygon(
        (0..tree.num_nodes())
            .filter(|v| nodes >> v & 1 == 1)
            .fold(0, |a, v| a | tree.nodes[v].cell.0),
    )
}

/// Matryoshka of a pre-bracketing of `tree`.
pub fn prebracketing_matryoshka(tree: &PlaneTree, pb: &PreBracketing) -> Matryoshka {
    let n = tree.n;
    let mut ps = vec![SubPolygon::full(n)];
    for v in 0..tree.num_nodes() {
        let incident = edge_ids(pb.contracted)
            .find(|&e| {
                let (p, c) = tree.endpoints(e);
                p == v || c == v
            })
            .map(|e| 1u64 << e)
            .unwrap_or(0);
        ps.push(if incident == 0 {
            tree.nodes[v].cell
        } else {
            contracted_polygon(tree, incident, pb.contracted)
        });
    }
    for &b in pb.bracketing.brackets() {
        ps.push(contracted_polygon(tree, b, pb.contracted));
    }
    Matryoshka::from_sorted_unchecked(n, ps)
}

/// The Matryoshka whose cone is `cone(m1) ∩ cone(m2)`.
///
/// Both Matryoshkas are contracted until their subdivisions agree with the
/// common chords, then their bracketings on the common tree are met.
pub fn fan_meet(m1: &Matryoshka, m2: &Matryoshka) -> Matryoshka {
    let (mut a, mut b) = (m1.clone(), m2.clone());
    loop {
        let ca: BTreeSet<Diagonal> = a.subdivision().chords().iter().copied().collect();
        let cb: BTreeSet<Diagonal> = b.subdivision().chords().iter().copied().collect();
        let common: BTreeSet<Diagonal> = ca.intersection(&cb).copied().collect();
        if ca == common && cb == common {
            break;
        }
        a = drop_chords(&a, &common);
        b = drop_chords(&b, &common);
    }
    let ta = a.to_bracketed_tree();
    let tb = b.to_bracketed_tree();
    let tree = ta.tree.clone();
    let pa = PreBracketing::uncontracted(ta.bracketing);
    let pb = PreBracketing::uncontracted(tb.bracketing);
    prebracketing_matryoshka(&tree, &meet_prebracketings(&tree, &pa, &pb))
}

/// Outcome of an exact fan verification.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct FanReport {
    pub faces: usize,
    pub maximal: usize,
    pub dims_ok: bool,
    pub proper_intersections: bool,
    pub pairs_checked: usize,
    pub ridge_pairing: bool,
    pub connected: bool,
    pub order_isomorphic: bool,
    pub failures: Vec<String>,
}

impl FanReport {
    pub fn ok(&self) -> bool {
        self.dims_ok
            && self.proper_intersections
            && self.ridge_pairing
            && self.connected
            && self.order_isomorphic
            && self.failures.is_empty()
    }
}

/// How many face pairs to test for proper intersection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairSampling {
    All,
    Random { seed: u64, count: usize },
}

type RaySet = Vec<Vec<BigInt>>;

/// Pointed cones with cached extreme rays.
struct Faces {
    cones: Vec<Cone>,
    rays: Vec<RaySet>,
    dims: Vec<usize>,
}

impl Faces {
    fn new(cones: Vec<Cone>) -> Self {
        let rays: Vec<RaySet> = cones.par_iter().map(|c| cone_rays(c).rays).collect();
        let dims = rays
            .iter()
            .zip(&cones)
            .map(|(r, c)| {
                let rs: Vec<Vec<Rat>> = r.iter().map(|x| ints_to_rat(x)).collect();
                rank(&rs, c.ambient_dim)
            })
            .collect();
        Faces { cones, rays, dims }
    }

    fn tight(cone: &Cone, rays: &[Vec<BigInt>]) -> Vec<usize> {
        let rs: Vec<Vec<Rat>> = rays.iter().map(|r| ints_to_rat(r)).collect();
        (0..cone.inequalities.len())
            .filter(|&i| rs.iter().all(|r| dot(&cone.inequalities[i], r).is_zero()))
            .collect()
    }

    fn rays_on(cone: &Cone, rays: &[Vec<BigInt>], ineqs: &[usize]) -> RaySet {
        rays.iter()
            .filter(|r| {
                let x = ints_to_rat(r);
                ineqs.iter().all(|&i| dot(&cone.inequalities[i], &x).is_zero())
            })
            .cloned()
            .collect()
    }

    /// True when face `f` is a face of cone `a`.
    fn is_face(&self, f: &RaySet, a: usize) -> bool {
        if !f.iter().all(|r| self.cones[a].contains(&ints_to_rat(r))) {
            return false;
        }
        let i = Self::tight(&self.cones[a], f);
        Self::rays_on(&self.cones[a], &self.rays[a], &i) == *f
    }

    fn contains_face(&self, inner: usize, outer: usize) -> bool {
        self.rays[inner]
            .iter()
            .all(|r| self.cones[outer].contains(&ints_to_rat(r)))
    }
}

/// Verifies that pointed cones form a fan.
///
/// Checks that every cone has the expected dimension, that intersections of
/// sampled pairs are common faces found in the list, that every facet of a
/// maximal cone lies in exactly two maximal cones (or one, on the boundary of
/// the nonnegative orthant when `positive`), that maximal cones are connected
/// through shared facets, and that `leq` matches cone containment.
pub fn check_fan(
    cones: Vec<Cone>,
    expected_dims: &[usize],
    full_dim: usize,
    leq: impl Fn(usize, usize) -> bool + Sync,
    positive: bool,
    sampling: PairSampling,
) -> FanReport {
    let faces = Faces::new(cones);
    let k = faces.cones.len();
    let mut report = FanReport {
        faces: k,
        ..FanReport::default()
    };
    report.dims_ok = faces.dims.as_slice() == expected_dims;
    if !report.dims_ok {
        report.failures.push("cone dimensions differ from expectation".into());
    }
    let by_rays: BTreeMap<&RaySet, usize> = faces.rays.iter().enumerate().map(|(i, r)| (r, i)).collect();
    if by_rays.len() != k {
        report.failures.push("two faces share the same ray set".into());
    }

    let pairs: Vec<(usize, usize)> = match sampling {
        PairSampling::All => (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect(),
        PairSampling::Random { seed, count } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let idx: Vec<usize> = (0..k).collect();
            (0..count)
                .map(|_| {
                    let v: Vec<&usize> = idx.choose_multiple(&mut rng, 2).collect();
                    (*v[0], *v[1])
                })
                .collect()
        }
    };
    report.pairs_checked = pairs.len();
    let bad_pairs: Vec<(usize, usize)> = pairs
        .par_iter()
        .copied()
        .filter(|&(i, j)| {
            let inter = faces.cones[i].intersect(&faces.cones[j]);
            let rays = cone_rays(&inter).rays;
            !(by_rays.contains_key(&rays) && faces.is_face(&rays, i) && faces.is_face(&rays, j))
        })
        .collect();
    report.proper_intersections = bad_pairs.is_empty();
    for (i, j) in bad_pairs.iter().take(5) {
        report.failures.push(format!("faces {i} and {j} meet improperly"));
    }

    let maximal: Vec<usize> = (0..k).filter(|&i| faces.dims[i] == full_dim).collect();
    report.maximal = maximal.len();
    let facets: Vec<BTreeSet<RaySet>> = maximal
        .par_iter()
        .map(|&a| {
            let c = &faces.cones[a];
            (0..c.inequalities.len())
                .map(|i| Faces::rays_on(c, &faces.rays[a], &[i]))
                .filter(|r| {
                    let rs: Vec<Vec<Rat>> = r.iter().map(|x| ints_to_rat(x)).collect();
                    rank(&rs, c.ambient_dim) + 1 == full_dim
                })
                .collect()
        })
        .collect();
    let mut owners: BTreeMap<&RaySet, Vec<usize>> = BTreeMap::new();
    for (m, fs) in facets.iter().enumerate() {
        for f in fs {
            owners.entry(f).or_default().push(m);
        }
    }
    let on_boundary = |r: &RaySet| {
        positive && (0..r.first().map_or(0, |v| v.len())).any(|coord| r.iter().all(|v| v[coord].is_zero()))
    };
    report.ridge_pairing = true;
    for (f, own) in &owners {
        let ok = own.len() == 2 || (own.len() == 1 && on_boundary(f));
        if !ok {
            report.ridge_pairing = false;
            report
                .failures
                .push(format!("a ridge lies in {} maximal cones", own.len()));
            break;
        }
    }

    let mut adj = vec![Vec::new(); maximal.len()];
    for own in owners.values() {
        if own.len() == 2 {
            adj[own[0]].push(own[1]);
            adj[own[1]].push(own[0]);
        }
    }
    let mut seen = vec![false; maximal.len()];
    let mut queue = VecDeque::new();
    if !maximal.is_empty() {
        seen[0] = true;
        queue.push_back(0);
    }
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    report.connected = seen.iter().all(|&s| s);

    let order_bad: Vec<(usize, usize)> = (0..k)
        .into_par_iter()
        .flat_map_iter(|i| (0..k).map(move |j| (i, j)))
        .filter(|&(i, j)| leq(i, j) != faces.contains_face(i, j))
        .collect();
    report.order_isomorphic = order_bad.is_empty();
    for (i, j) in order_bad.iter().take(5) {
        report
            .failures
            .push(format!("order relation {i} <= {j} disagrees with containment"));
    }
    report
}

/// Verifies the cosmohedral fan of the `(n+2)`-gon.
pub fn verify_fan(n: usize, sampling: PairSampling) -> FanReport {
    let ms = enumerate(n, false);
    let cones: Vec<Cone> = ms.par_iter().map(|m| slice(&cone_of(m))).collect();
    let dims: Vec<usize> = ms.iter().map(|m| m.codim()).collect();
    check_fan(cones, &dims, n - 1, |i, j| ms[i].leq(&ms[j]), false, sampling)
}

/// Verifies the associahedral fan: cones of all subdivisions ordered by reverse chord containment.
pub fn verify_assoc_fan(n: usize) -> FanReport {
    let ss = enumerate_subdivisions(n, true);
    let cones: Vec<Cone> = ss.iter().map(|s| slice(&assoc_cone(s))).collect();
    let dims: Vec<usize> = ss.iter().map(|s| s.len()).collect();
    let leq = |i: usize, j: usize| ss[i].chords().iter().all(|d| ss[j].contains(d));
    check_fan(cones, &dims, n - 1, leq, false, PairSampling::All)
}

/// Verifies the positive bracket fan of a tree: pre-bracketing cones in edge coordinates.
pub fn verify_bracket_fan(tree: &PlaneTree) -> FanReport {
    let pbs = enumerate_prebracketings(tree);
    let cones: Vec<Cone> = pbs.iter().map(|pb| prebracket_cone(tree, pb)).collect();
    let dims: Vec<usize> = pbs.iter().map(|pb| pb.poset().classes.len()).collect();
    check_fan(
        cones,
        &dims,
        tree.num_edges(),
        |i, j| prebracketing_leq(&pbs[i], &pbs[j]),
        true,
        PairSampling::All,
    )
}

/// Compares `fan_meet` with exact cone intersection for every pair at size `n`.
/// Returns the pairs that disagree.
pub fn check_fan_meet(n: usize) -> Vec<(Matryoshka, Matryoshka)> {
    let ms = enumerate(n, false);
    let rays: Vec<RaySet> = ms.par_iter().map(|m| cone_rays(&slice(&cone_of(m))).rays).collect();
    let idx: BTreeMap<&Matryoshka, usize> = ms.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let cones: Vec<Cone> = ms.iter().map(|m| slice(&cone_of(m))).collect();
    (0..ms.len())
        .into_par_iter()
        .flat_map_iter(|i| (0..ms.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| {
            let meet = fan_meet(&ms[i], &ms[j]);
            let inter = cone_rays(&cones[i].intersect(&cones[j])).rays;
            match idx.get(&meet) {
                Some(&k) => rays[k] != inter,
                None => true,
            }
        })
        .map(|(i, j)| (ms[i].clone(), ms[j].clone()))
        .collect()
}

/// The two witness points showing that a maximal nested braid cone meets the
/// cone of the second worked hexagon Matryoshka without being contained in it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidWitness {
    pub inside: Vec<Rat>,
    pub outside: Vec<Rat>,
    pub inside_ok: bool,
    pub outside_ok: bool,
}

/// Forms `x_a − x_b` in `ℝ⁴` with 1-based labels.
fn d4(a: usize, b: usize) -> Vec<Rat> {
    diff(&unit(4, a - 1), &unit(4, b - 1))
}

fn braid_cone() -> Vec<Vec<Rat>> {
    vec![
        d4(3, 1),
        d4(1, 4),
        d4(4, 2),
        diff(&d4(3, 1), &d4(1, 4)),
        diff(&d4(1, 4), &d4(4, 2)),
    ]
}

/// The second worked hexagon Matryoshka.
pub fn hexagon_m2() -> Matryoshka {
    let sp = SubPolygon::from_vertices;
    Matryoshka::new(
        4,
        vec![
            sp(&[0, 1, 3]),
            sp(&[1, 2, 3]),
            sp(&[0, 3, 5]),
            sp(&[3, 4, 5]),
            sp(&[0, 1, 2, 3]),
            sp(&[0, 1, 2, 3, 5]),
        ],
    )
    .expect("valid Matryoshka")
}

/// The first worked hexagon Matryoshka.
pub fn hexagon_m1() -> Matryoshka {
    let sp = SubPolygon::from_vertices;
    Matryoshka::new(
        4,
        vec![
            sp(&[0, 1, 2]),
            sp(&[0, 2, 3]),
            sp(&[0, 3, 5]),
            sp(&[3, 4, 5]),
            sp(&[0, 1, 2, 3]),
            sp(&[0, 3, 4, 5]),
        ],
    )
    .expect("valid Matryoshka")
}

/// Builds exact witnesses in the nested braid cone: one in the interior of
/// `cone(M₂)`, one violating `x₃ − x₁ ≥ x₁ − x₂`.
pub fn braid2_witness() -> BraidWitness {
    let m2 = cone_of(&hexagon_m2());
    let mut p = HPolytope::new(4);
    for f in braid_cone() {
        p.inequalities.push((f, Rat::zero()));
    }
    let mut inside = p.clone();
    for f in &m2.inequalities {
        inside.inequalities.push((f.clone(), Rat::zero()));
    }
    let strict: Vec<usize> = (0..inside.inequalities.len()).collect();
    let x_in = lp_feasible(&inside, &strict).expect("braid cone meets cone(M2)");
    let mut outside = p.clone();
    outside.inequalities.push((diff(&d4(1, 2), &d4(3, 1)), Rat::zero()));
    let strict: Vec<usize> = (0..outside.inequalities.len()).collect();
    let x_out = lp_feasible(&outside, &strict).expect("braid cone leaves cone(M2)");
    let pos = |f: &Vec<Rat>, x: &[Rat]| dot(f, x).is_positive();
    let in_braid = |x: &[Rat]| braid_cone().iter().all(|f| pos(f, x));
    let inside_ok = in_braid(&x_in) && m2.inequalities.iter().all(|f| pos(f, &x_in));
    let outside_ok = in_braid(&x_out) && !m2.contains(&x_out);
    BraidWitness {
        inside: x_in,
        outside: x_out,
        inside_ok,
        outside_ok,
    }
}

/// Tree and bracketing on the common tree used to express the meet of the two
/// worked hexagon Matryoshkas.
pub fn hexagon_meet() -> Matryoshka {
    fan_meet(&hexagon_m1(), &hexagon_m2())
}

/// Bracketing helper for tests and examples.
pub fn bracketing_from_names(tree: &PlaneTree, groups: &[&[&str]]) -> Bracketing {
    Bracketing::new(groups.iter().map(|g| tree.edges_by_names(g)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::rat;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn first_hexagon_cone_matches_worked_inequalities() {
        let c = cone_of(&hexagon_m1());
        assert!(c.equalities.is_empty());
        let expected: BTreeSet<Vec<Rat>> = [
            diff(&d4(3, 2), &d4(2, 1)),
            diff(&d4(3, 2), &d4(3, 4)),
            d4(2, 1),
            d4(3, 4),
        ]
        .into_iter()
        .collect();
        let got: BTreeSet<Vec<Rat>> = c.inequalities.into_iter().collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn second_hexagon_cone() {
        let c = cone_of(&hexagon_m2());
        let got: BTreeSet<Vec<Rat>> = c.inequalities.into_iter().collect();
        let expected: BTreeSet<Vec<Rat>> = [diff(&d4(3, 4), &d4(3, 1)), diff(&d4(3, 1), &d4(1, 2)), d4(1, 2)]
            .into_iter()
            .collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn trivial_cone_is_the_lineality_line() {
        let c = cone_of(&Matryoshka::trivial(4));
        assert_eq!(c.dim(), 1);
        assert!(cone_rays(&slice(&c)).rays.is_empty());
    }

    #[test]
    fn single_chord_hexagon_cone() {
        let s = ChordSet::new(4, vec![Diagonal::new(0, 3)]);
        let c = cone_of(&Matryoshka::of_subdivision(&s));
        assert_eq!(c.equalities.len(), 2);
        assert_eq!(c.inequalities.len(), 1);
        assert_eq!(c.dim(), 2);
    }

    #[test]
    fn square_ray_is_negative_depth() {
        let s = ChordSet::new(2, vec![Diagonal::new(0, 2)]);
        let r = subdivision_ray(&s);
        assert_eq!(r.ray, ints(&[0, 1]));
        assert_eq!(r.depth_sign, -1);
    }

    #[test]
    fn first_hexagon_has_four_rays() {
        let m = hexagon_m1();
        let below = subdivision_rays_below(&m);
        assert_eq!(below.len(), 4);
        let rays: BTreeSet<Vec<BigInt>> = below.iter().map(|r| r.ray.clone()).collect();
        let g = cone_rays(&slice(&cone_of(&m)));
        let from_cone: BTreeSet<Vec<BigInt>> = g.rays.iter().map(|r| display_ray(&ints_to_rat(r))).collect();
        assert_eq!(rays, from_cone);
    }

    #[test]
    fn hexagon_meet_is_the_expected_ray() {
        let m = hexagon_meet();
        let s = ChordSet::new(4, vec![Diagonal::new(0, 3), Diagonal::new(3, 5)]);
        assert_eq!(m, Matryoshka::of_subdivision(&s));
        let r = subdivision_ray(&s);
        assert_eq!(r.ray, ints(&[0, 0, 1, 0]));
    }

    #[test]
    fn braid_witness_exists() {
        let w = braid2_witness();
        assert!(w.inside_ok && w.outside_ok);
        let x = &w.inside;
        assert!(dot(&d4(3, 4), x) > dot(&d4(3, 1), x));
        assert!(dot(&d4(1, 2), x) > rat(0, 1));
        let y = &w.outside;
        assert!(dot(&d4(3, 1), y) < dot(&d4(1, 2), y));
    }

    #[test]
    fn small_fans_are_complete() {
        let r2 = verify_fan(2, PairSampling::All);
        assert!(r2.ok(), "{r2:?}");
        assert_eq!((r2.faces, r2.maximal), (3, 2));
        let r3 = verify_fan(3, PairSampling::All);
        assert!(r3.ok(), "{r3:?}");
        assert_eq!((r3.faces, r3.maximal), (21, 10));
    }

    #[test]
    fn associahedral_fan_at_n3() {
        let r = verify_assoc_fan(3);
        assert!(r.ok(), "{r:?}");
        assert_eq!(r.maximal, 5);
    }

    #[test]
    fn path_bracket_fan() {
        let t = dual_tree(&ChordSet::new(
            4,
            vec![Diagonal::new(0, 4), Diagonal::new(0, 3), Diagonal::new(0, 2)],
        ));
        let r = verify_bracket_fan(&t);
        assert!(r.ok(), "{r:?}");
        assert_eq!(r.maximal, 5);
    }

    #[test]
    fn meet_agrees_with_intersection_at_n3() {
        assert!(check_fan_meet(3).is_empty());
    }

    #[test]
    fn f_tree_inverts() {
        for s in crate::polygon::enumerate_triangulations(4) {
            let t = dual_tree(&s);
            for e in 1..t.num_nodes() {
                let y = unit(t.num_nodes(), e);
                let back = f_tree_inverse(&t, &f_tree(&t, &y));
                assert_eq!(back, y);
            }
        }
    }
}
