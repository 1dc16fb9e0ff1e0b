//! Matryoshkas: nested families of sub-polygons of the `(n+2)`-gon in which
//! every non-minimal member is tiled by its maximal proper members.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::polygon::{chords_of_tiling, crossing, enumerate_subdivisions, ChordSet, Diagonal, SubPolygon};
use crate::trees::{dual_tree, edge_ids, Bracketing, EdgeSet, PlaneTree};

/// Failures of Matryoshka operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatryoshkaError {
    #[error("diagonal {0} is not interior to any polygon of the Matryoshka")]
    DiagonalNotInterior(Diagonal),
    #[error("not a Matryoshka: polygon {0} is not tiled by its maximal members")]
    Invalid(SubPolygon),
}

/// A Matryoshka of the `(n+2)`-gon, polygons in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matryoshka {
    pub n: usize,
    polygons: Vec<SubPolygon>,
}

impl PartialOrd for Matryoshka {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Matryoshka {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.n, self.codim(), &self.polygons).cmp(&(other.n, other.codim(), &other.polygons))
    }
}

impl Serialize for Matryoshka {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Matryoshka", 3)?;
        st.serialize_field("polygons", &self.polygons)?;
        st.serialize_field("codim", &self.codim())?;
        st.serialize_field("maximal", &self.is_maximal())?;
        st.end()
    }
}

/// True when `parts` tile the polygon `x`.
pub fn tiles(x: &SubPolygon, parts: &[SubPolygon]) -> bool {
    if parts.is_empty() || parts.iter().any(|p| !p.is_subset(x) || p == x) {
        return false;
    }
    let area: usize = parts.iter().map(|p| p.size() - 2).sum();
    if area != x.size() - 2 {
        return false;
    }
    let mut chords: BTreeSet<Diagonal> = BTreeSet::new();
    for p in parts {
        for (u, v) in p.edges() {
            let d = Diagonal { i: u, j: v };
            if v >= u + 2 && x.has_interior_diagonal(&d) {
                chords.insert(d);
            }
        }
    }
    let cs: Vec<Diagonal> = chords.into_iter().collect();
    for (k, a) in cs.iter().enumerate() {
        if cs[k + 1..].iter().any(|b| crossing(a, b)) {
            return false;
        }
    }
    let vs = x.vertices();
    let pos = |v: usize| vs.iter().position(|&w| w == v).expect("vertex of x");
    let local: Vec<Diagonal> = cs.iter().map(|d| Diagonal::new(pos(d.i), pos(d.j))).collect();
    let local_cells = ChordSet::new(vs.len() - 2, local).cells();
    let mut cells: Vec<SubPolygon> = local_cells
        .iter()
        .map(|c| SubPolygon::from_vertices(&c.vertices().iter().map(|&i| vs[i]).collect::<Vec<_>>()))
        .collect();
    cells.sort();
    let mut ps = parts.to_vec();
    ps.sort();
    cells == ps
}

impl Matryoshka {
    /// Builds and validates a Matryoshka; the full polygon is added if absent.
    pub fn new(n: usize, polygons: Vec<SubPolygon>) -> Result<Self, MatryoshkaError> {
        let mut set: BTreeSet<SubPolygon> = polygons.into_iter().collect();
        set.insert(SubPolygon::full(n));
        let m = Matryoshka {
            n,
            polygons: set.into_iter().collect(),
        };
        m.validate()?;
        Ok(m)
    }

    /// Builds without validation; polygons are sorted.
    pub fn from_sorted_unchecked(n: usize, mut polygons: Vec<SubPolygon>) -> Self {
        polygons.sort();
        polygons.dedup();
        Matryoshka { n, polygons }
    }

    /// The Matryoshka consisting of the full polygon alone.
    pub fn trivial(n: usize) -> Self {
        Matryoshka {
            n,
            polygons: vec![SubPolygon::full(n)],
        }
    }

    /// The Matryoshka of a subdivision: its cells and the full polygon.
    pub fn of_subdivision(s: &ChordSet) -> Self {
        let mut ps = s.cells();
        ps.push(SubPolygon::full(s.n));
        Self::from_sorted_unchecked(s.n, ps)
    }

    pub fn polygons(&self) -> &[SubPolygon] {
        &self.polygons
    }

    pub fn contains(&self, p: &SubPolygon) -> bool {
        self.polygons.binary_search(p).is_ok()
    }

    /// Checks the tiling condition, returning the failing polygon.
    pub fn validate(&self) -> Result<(), MatryoshkaError> {
        let full = SubPolygon::full(self.n);
        if !self.contains(&full) {
            return Err(MatryoshkaError::Invalid(full));
        }
        for p in &self.polygons {
            if !p.is_subset(&full) || p.size() < 3 {
                return Err(MatryoshkaError::Invalid(*p));
            }
            let subs = self.maximal_below(p);
            if !subs.is_empty() && !tiles(p, &subs) {
                return Err(MatryoshkaError::Invalid(*p));
            }
        }
        Ok(())
    }

    /// Inclusion-maximal members properly contained in `x`.
    pub fn maximal_below(&self, x: &SubPolygon) -> Vec<SubPolygon> {
        let below: Vec<SubPolygon> = self
            .polygons
            .iter()
            .copied()
            .filter(|p| p != x && p.is_subset(x))
            .collect();
        below
            .iter()
            .copied()
            .filter(|p| !below.iter().any(|q| q != p && p.is_subset(q)))
            .collect()
    }

    pub fn is_minimal(&self, p: &SubPolygon) -> bool {
        !self.polygons.iter().any(|q| q != p && q.is_subset(p))
    }

    /// Minimal members: the cells of the underlying subdivision.
    pub fn minimal(&self) -> Vec<SubPolygon> {
        self.polygons.iter().copied().filter(|p| self.is_minimal(p)).collect()
    }

    pub fn non_minimal(&self) -> Vec<SubPolygon> {
        self.polygons.iter().copied().filter(|p| !self.is_minimal(p)).collect()
    }

    /// Number of non-minimal polygons.
    pub fn codim(&self) -> usize {
        self.polygons.len() - self.minimal().len()
    }

    pub fn is_maximal(&self) -> bool {
        self.codim() + 1 == self.n
    }

    /// Chords of the subdivision by minimal polygons.
    pub fn subdivision(&self) -> ChordSet {
        chords_of_tiling(self.n, &self.minimal())
    }

    /// Smallest polygon of the Matryoshka having `d` as an interior diagonal.
    pub fn min_polygon(&self, d: &Diagonal) -> Result<SubPolygon, MatryoshkaError> {
        self.polygons
            .iter()
            .copied()
            .filter(|p| p.has_interior_diagonal(d))
            .min_by_key(|p| p.size())
            .ok_or(MatryoshkaError::DiagonalNotInterior(*d))
    }

    /// Set containment.
    pub fn leq(&self, other: &Matryoshka) -> bool {
        self.polygons.iter().all(|p| other.contains(p))
    }

    /// Matryoshkas covered by this one: remove a non-minimal polygon other than
    /// the full polygon, or remove the minimal polygons tiling a next-to-minimal one.
    pub fn covers(&self) -> Vec<Matryoshka> {
        let full = SubPolygon::full(self.n);
        let mut out = BTreeSet::new();
        for x in self.non_minimal() {
            if x != full {
                let ps = self.polygons.iter().copied().filter(|p| *p != x).collect();
                out.insert(Matryoshka::from_sorted_unchecked(self.n, ps));
            }
            let subs = self.maximal_below(&x);
            if subs.iter().all(|s| self.is_minimal(s)) {
                let ps = self.polygons.iter().copied().filter(|p| !subs.contains(p)).collect();
                out.insert(Matryoshka::from_sorted_unchecked(self.n, ps));
            }
        }
        out.into_iter().collect()
    }

    /// Bracketed tree: the dual tree of the minimal polygons and, for every
    /// non-minimal polygon, the set of tree edges inside it.
    pub fn to_bracketed_tree(&self) -> BracketedTree {
        let tree = dual_tree(&self.subdivision());
        let brackets = self.non_minimal().iter().map(|x| edges_inside(&tree, x)).collect();
        BracketedTree {
            tree,
            bracketing: Bracketing::new(brackets),
        }
    }
}

fn edges_inside(tree: &PlaneTree, x: &SubPolygon) -> EdgeSet {
    (1..tree.num_nodes())
        .filter(|&e| {
            let (p, c) = tree.endpoints(e);
            tree.nodes[p].cell.is_subset(x) && tree.nodes[c].cell.is_subset(x)
        })
        .fold(0, |acc, e| acc | 1 << e)
}

/// A plane tree together with a bracketing of its edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketedTree {
    pub tree: PlaneTree,
    pub bracketing: Bracketing,
}

impl BracketedTree {
    /// Matryoshka of cells, bracket polygons and the full polygon.
    pub fn to_matryoshka(&self) -> Matryoshka {
        let n = self.tree.n;
        let mut ps: Vec<SubPolygon> = self.tree.nodes.iter().map(|nd| nd.cell).collect();
        ps.extend(self.bracketing.brackets().iter().map(|&b| self.tree.polygon_of(b)));
        ps.push(SubPolygon::full(n));
        Matryoshka::from_sorted_unchecked(n, ps)
    }

    /// Order on bracketed trees through contraction: `self ≤ other` when
    /// `self`'s tree is `other`'s tree with a downset `E` of `other`'s
    /// bracket pre-order contracted and every bracket of `self` is a bracket of
    /// `other` contracted by `E`.
    pub fn leq(&self, other: &BracketedTree) -> bool {
        let chords =
            |t: &PlaneTree| -> BTreeSet<Diagonal> { (1..t.num_nodes()).map(|e| t.nodes[e].cell.top_edge()).collect() };
        let (c1, c2) = (chords(&self.tree), chords(&other.tree));
        if !c1.is_subset(&c2) {
            return false;
        }
        let lost: EdgeSet = (1..other.tree.num_nodes())
            .filter(|&e| !c1.contains(&other.tree.nodes[e].cell.top_edge()))
            .fold(0, |a, e| a | 1 << e);
        if !other.bracketing.poset().is_downset(lost) {
            return false;
        }
        let as_chords = |t: &PlaneTree, b: EdgeSet| -> BTreeSet<Diagonal> {
            edge_ids(b).map(|e| t.nodes[e].cell.top_edge()).collect()
        };
        let contracted: BTreeSet<BTreeSet<Diagonal>> = other
            .bracketing
            .brackets()
            .iter()
            .map(|&b| as_chords(&other.tree, b & !lost))
            .filter(|s| !s.is_empty())
            .collect();
        self.bracketing
            .brackets()
            .iter()
            .all(|&b| contracted.contains(&as_chords(&self.tree, b)))
    }
}

/// Subdivisions of abstract `k`-gons for `k = 3..=n+2`, as local cell lists.
struct LocalSubdivisions {
    by_size: Vec<Vec<Vec<u32>>>,
}

impl LocalSubdivisions {
    fn new(n: usize) -> Self {
        let mut by_size = vec![Vec::new(); n + 3];
        for (k, slot) in by_size.iter_mut().enumerate().skip(4) {
            *slot = enumerate_subdivisions(k - 2, false)
                .iter()
                .map(|s| s.cells().iter().map(|c| c.0).collect())
                .collect();
        }
        LocalSubdivisions { by_size }
    }

    fn relabel(&self, p: &SubPolygon) -> Vec<Vec<SubPolygon>> {
        let vs = p.vertices();
        self.by_size[vs.len()]
            .iter()
            .map(|cells| {
                cells
                    .iter()
                    .map(|&m| SubPolygon((0..vs.len()).filter(|i| m >> i & 1 == 1).fold(0, |a, i| a | 1 << vs[i])))
                    .collect()
            })
            .collect()
    }
}

/// Calls `visit(polygons, codim)` once for every Matryoshka of the `(n+2)`-gon.
///
/// Enumeration proceeds from the outside in: each pending polygon is either
/// left minimal or split by a non-trivial subdivision whose cells become
/// pending in turn. Polygons are passed unsorted.
pub fn for_each_matryoshka(n: usize, mut visit: impl FnMut(&[SubPolygon], usize)) {
    let local = LocalSubdivisions::new(n);
    let full = SubPolygon::full(n);
    let mut current = vec![full];
    let mut pending = vec![full];
    walk(&local, &mut current, &mut pending, 0, &mut visit);
}

fn walk(
    local: &LocalSubdivisions,
    current: &mut Vec<SubPolygon>,
    pending: &mut Vec<SubPolygon>,
    codim: usize,
    visit: &mut impl FnMut(&[SubPolygon], usize),
) {
    let Some(p) = pending.pop() else {
        visit(current, codim);
        return;
    };
    walk(local, current, pending, codim, visit);
    if p.size() > 3 {
        for cells in local.relabel(&p) {
            let (c0, p0) = (current.len(), pending.len());
            current.extend(cells.iter().copied());
            pending.extend(cells.iter().copied());
            walk(local, current, pending, codim + 1, visit);
            current.truncate(c0);
            pending.truncate(p0);
        }
    }
    pending.push(p);
}

/// Counts Matryoshkas of the `(n+2)`-gon by codimension, in parallel over
/// the first subdivision of the full polygon.
pub fn f_vector_by_enumeration(n: usize) -> Vec<u64> {
    let local = LocalSubdivisions::new(n);
    let full = SubPolygon::full(n);
    let mut total = vec![0u64; n];
    total[0] = 1;
    if full.size() <= 3 {
        return total;
    }
    let parts: Vec<Vec<u64>> = local
        .relabel(&full)
        .into_par_iter()
        .map(|cells| {
            let mut counts = vec![0u64; n];
            let mut current = vec![full];
            current.extend(cells.iter().copied());
            let mut pending = cells.clone();
            walk(&local, &mut current, &mut pending, 1, &mut |_, c| counts[c] += 1);
            counts
        })
        .collect();
    for p in parts {
        for (t, c) in total.iter_mut().zip(p) {
            *t += c;
        }
    }
    total
}

/// All Matryoshkas (or only maximal ones) in canonical order: by codimension,
/// then by polygon list.
pub fn enumerate(n: usize, maximal_only: bool) -> Vec<Matryoshka> {
    let mut out = Vec::new();
    for_each_matryoshka(n, |ps, codim| {
        if !maximal_only || codim + 1 == n {
            out.push(Matryoshka::from_sorted_unchecked(n, ps.to_vec()));
        }
    });
    out.sort();
    out
}

/// Index from Matryoshka to position in a canonical list.
pub fn index_of(list: &[Matryoshka]) -> BTreeMap<Matryoshka, usize> {
    list.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect()
}
