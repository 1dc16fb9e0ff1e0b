//! Combinatorics of the convex `(n+2)`-gon with vertices `0..=n+1` and base
//! edge `(0, n+1)`: diagonals, subdivisions, cells, labels and depths.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A diagonal `(i, j)` with `i + 2 <= j`. The base edge `(0, n+1)` is allowed
/// where the augmented diagonal set is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Diagonal {
    pub i: usize,
    pub j: usize,
}

impl Diagonal {
    pub fn new(i: usize, j: usize) -> Self {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        assert!(j >= i + 2, "diagonal ({i},{j}) joins adjacent vertices");
        Diagonal { i, j }
    }

    /// The base edge of the `(n+2)`-gon.
    pub fn base(n: usize) -> Self {
        Diagonal { i: 0, j: n + 1 }
    }

    /// True when `(a, b)` lies weakly above this diagonal, i.e. `a <= i` and `j <= b`.
    pub fn is_below(&self, above: &Diagonal) -> bool {
        above.i <= self.i && self.j <= above.j
    }
}

impl fmt::Display for Diagonal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

impl Serialize for Diagonal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.i, self.j].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Diagonal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [i, j] = <[usize; 2]>::deserialize(d)?;
        if i.abs_diff(j) < 2 {
            return Err(serde::de::Error::custom("diagonal endpoints must differ by at least 2"));
        }
        Ok(Diagonal::new(i, j))
    }
}

/// True when the two diagonals cross in their interiors.
pub fn crossing(d1: &Diagonal, d2: &Diagonal) -> bool {
    (d1.i < d2.i && d2.i < d1.j && d1.j < d2.j) || (d2.i < d1.i && d1.i < d2.j && d2.j < d1.j)
}

/// All plain diagonals of the `(n+2)`-gon, in lexicographic order.
pub fn diagonals(n: usize) -> Vec<Diagonal> {
    let m = n + 1;
    let mut out = Vec::new();
    for i in 0..=m {
        for j in i + 2..=m {
            if (i, j) != (0, m) {
                out.push(Diagonal { i, j });
            }
        }
    }
    out
}

/// Plain diagonals together with the base edge.
pub fn diagonals_plus(n: usize) -> Vec<Diagonal> {
    let mut out = diagonals(n);
    out.push(Diagonal::base(n));
    out.sort();
    out
}

/// A sub-polygon stored as a bitmask over vertex labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SubPolygon(pub u32);

impl SubPolygon {
    pub fn from_vertices(vs: &[usize]) -> Self {
        let mut m = 0u32;
        for &v in vs {
            m |= 1 << v;
        }
        SubPolygon(m)
    }

    /// The whole `(n+2)`-gon.
    pub fn full(n: usize) -> Self {
        SubPolygon((1u32 << (n + 2)) - 1)
    }

    pub fn size(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.0 >> v & 1 == 1
    }

    pub fn vertices(&self) -> Vec<usize> {
        (0..32).filter(|&v| self.contains_vertex(v)).collect()
    }

    pub fn min(&self) -> usize {
        self.0.trailing_zeros() as usize
    }

    pub fn max(&self) -> usize {
        31 - self.0.leading_zeros() as usize
    }

    /// The edge of this polygon nearest the base edge.
    pub fn top_edge(&self) -> Diagonal {
        Diagonal {
            i: self.min(),
            j: self.max(),
        }
    }

    /// Vertex labels carried by this polygon as a cell: all vertices except the
    /// endpoints of its top edge.
    pub fn labels(&self) -> Vec<usize> {
        let (a, b) = (self.min(), self.max());
        self.vertices().into_iter().filter(|&v| v != a && v != b).collect()
    }

    /// True when every vertex of `self` is a vertex of `other`.
    pub fn is_subset(&self, other: &SubPolygon) -> bool {
        self.0 & !other.0 == 0
    }

    /// Boundary edges of the polygon as vertex pairs `(u, v)` with `u < v`,
    /// listed from the lowest vertex around to the top edge.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let vs = self.vertices();
        let mut out: Vec<(usize, usize)> = vs.windows(2).map(|w| (w[0], w[1])).collect();
        out.push((vs[0], vs[vs.len() - 1]));
        out
    }

    /// True when `(a, b)` is a diagonal of this polygon (both endpoints are
    /// vertices and they are not adjacent in it).
    pub fn has_interior_diagonal(&self, d: &Diagonal) -> bool {
        if !self.contains_vertex(d.i) || !self.contains_vertex(d.j) {
            return false;
        }
        let span = (((1u64 << (d.j + 1)) - 1) & !((1u64 << d.i) - 1)) as u32;
        let inner = span & !(1 << d.i) & !(1 << d.j);
        self.0 & inner != 0 && self.0 & !span != 0
    }
}

impl Ord for SubPolygon {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| self.vertices().cmp(&other.vertices()))
    }
}

impl PartialOrd for SubPolygon {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SubPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self.vertices().iter().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", vs.join(","))
    }
}

impl Serialize for SubPolygon {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.vertices().serialize(s)
    }
}

impl<'de> Deserialize<'de> for SubPolygon {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let vs = Vec::<usize>::deserialize(d)?;
        if vs.len() < 3 || vs.iter().any(|&v| v >= 32) {
            return Err(serde::de::Error::custom(
                "sub-polygon needs at least 3 vertices below 32",
            ));
        }
        Ok(SubPolygon::from_vertices(&vs))
    }
}

/// A set of pairwise non-crossing diagonals of the `(n+2)`-gon.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChordSet {
    pub n: usize,
    chords: Vec<Diagonal>,
}

impl ChordSet {
    /// Builds a chord set, sorting the chords. Panics if two chords cross or a
    /// chord does not belong to the polygon.
    pub fn new(n: usize, mut chords: Vec<Diagonal>) -> Self {
        chords.sort();
        chords.dedup();
        for (k, a) in chords.iter().enumerate() {
            assert!(a.j <= n + 1 && *a != Diagonal::base(n), "{a} is not a diagonal");
            for b in &chords[k + 1..] {
                assert!(!crossing(a, b), "{a} crosses {b}");
            }
        }
        ChordSet { n, chords }
    }

    pub fn empty(n: usize) -> Self {
        ChordSet { n, chords: Vec::new() }
    }

    pub fn chords(&self) -> &[Diagonal] {
        &self.chords
    }

    pub fn len(&self) -> usize {
        self.chords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chords.is_empty()
    }

    pub fn contains(&self, d: &Diagonal) -> bool {
        self.chords.binary_search(d).is_ok()
    }

    pub fn is_triangulation(&self) -> bool {
        self.chords.len() + 1 == self.n
    }

    /// Cells of the induced subdivision, in canonical order.
    pub fn cells(&self) -> Vec<SubPolygon> {
        let mut tops: Vec<Diagonal> = self.chords.clone();
        tops.push(Diagonal::base(self.n));
        let mut out: Vec<SubPolygon> = tops.iter().map(|t| self.cell_below(t)).collect();
        out.sort();
        out
    }

    /// The cell whose top edge is `top`, which must be a chord or the base edge.
    pub fn cell_below(&self, top: &Diagonal) -> SubPolygon {
        let mut vs = vec![top.i];
        let mut v = top.i;
        while v != top.j {
            let jump = self
                .chords
                .iter()
                .filter(|c| c.i == v && c.j <= top.j && **c != *top)
                .map(|c| c.j)
                .max();
            v = jump.unwrap_or(v + 1);
            vs.push(v);
        }
        SubPolygon::from_vertices(&vs)
    }

    /// The cell containing `d` other than the one whose top edge is `d`.
    pub fn cell_above(&self, d: &Diagonal) -> SubPolygon {
        self.cells()
            .into_iter()
            .find(|c| c.top_edge() != *d && c.contains_vertex(d.i) && c.contains_vertex(d.j))
            .expect("every chord borders two cells")
    }

    /// Vertex depths `d(1), …, d(n)`: number of chords strictly above each vertex.
    pub fn vertex_depths(&self) -> Vec<usize> {
        (1..=self.n)
            .map(|v| self.chords.iter().filter(|c| c.i < v && v < c.j).count())
            .collect()
    }

    /// Depth of a diagonal: number of chords weakly above it.
    pub fn diagonal_depth(&self, d: &Diagonal) -> usize {
        self.chords.iter().filter(|c| d.is_below(c)).count()
    }

    /// Canonical labelling of the subdivision.
    pub fn canonical_labels(&self) -> CanonicalLabels {
        let cells = self.cells().into_iter().map(|c| (c, c.labels())).collect();
        let diagonals = self
            .chords
            .iter()
            .map(|d| (*d, (self.cell_above(d), self.cell_below(d))))
            .collect();
        CanonicalLabels { cells, diagonals }
    }
}

impl Serialize for ChordSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.chords.serialize(s)
    }
}

/// Labels of a subdivision: each cell with its vertex labels, and each chord
/// with its pair `(V, W)` where `W` hangs below the chord and `V` lies between
/// the chord and the base edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalLabels {
    pub cells: Vec<(SubPolygon, Vec<usize>)>,
    pub diagonals: Vec<(Diagonal, (SubPolygon, SubPolygon))>,
}

/// True when diagonal `d` (possibly the base edge) crosses the triangle
/// `{u < v < w}` through its two edges `uv` and `vw`.
pub fn transversal_cross(d: &Diagonal, triangle: &SubPolygon) -> bool {
    let vs = triangle.vertices();
    assert_eq!(vs.len(), 3, "transversal crossing needs a triangle");
    let (u, v, w) = (vs[0], vs[1], vs[2]);
    u <= d.i && d.i < v && v < d.j && d.j <= w
}

/// All chord sets of the `(n+2)`-gon, ordered by chord count then lexicographically.
pub fn enumerate_subdivisions(n: usize, include_trivial: bool) -> Vec<ChordSet> {
    let all = diagonals(n);
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    extend_noncrossing(&all, 0, &mut chosen, &mut |c| {
        if include_trivial || !c.is_empty() {
            out.push(ChordSet { n, chords: c.to_vec() });
        }
    });
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.chords.cmp(&b.chords)));
    out
}

/// All triangulations of the `(n+2)`-gon in canonical order.
pub fn enumerate_triangulations(n: usize) -> Vec<ChordSet> {
    enumerate_subdivisions(n, true)
        .into_iter()
        .filter(|c| c.is_triangulation())
        .collect()
}

fn extend_noncrossing(all: &[Diagonal], start: usize, chosen: &mut Vec<Diagonal>, visit: &mut impl FnMut(&[Diagonal])) {
    visit(chosen);
    for k in start..all.len() {
        let d = all[k];
        if chosen.iter().all(|c| !crossing(c, &d)) {
            chosen.push(d);
            extend_noncrossing(all, k + 1, chosen, visit);
            chosen.pop();
        }
    }
}

/// Subdivisions of an arbitrary sub-polygon, each given by its cells.
///
/// Results are computed on the abstract `|P|`-gon and relabelled onto `P`.
pub fn subdivide_polygon(p: &SubPolygon, include_trivial: bool) -> Vec<Vec<SubPolygon>> {
    let vs = p.vertices();
    let k = vs.len();
    let relabel = |c: &SubPolygon| SubPolygon::from_vertices(&c.vertices().iter().map(|&i| vs[i]).collect::<Vec<_>>());
    enumerate_subdivisions(k - 2, include_trivial)
        .iter()
        .map(|s| {
            let mut cells: Vec<SubPolygon> = s.cells().iter().map(relabel).collect();
            cells.sort();
            cells
        })
        .collect()
}

/// Chord set inducing the given tiling of the full `(n+2)`-gon.
pub fn chords_of_tiling(n: usize, cells: &[SubPolygon]) -> ChordSet {
    let base = Diagonal::base(n);
    let mut chords: Vec<Diagonal> = cells.iter().map(|c| c.top_edge()).filter(|d| *d != base).collect();
    chords.sort();
    ChordSet { n, chords }
}

/// Memoised map from polygon size to the subdivisions of the abstract polygon.
#[derive(Debug, Default)]
pub struct SubdivisionCache {
    by_size: BTreeMap<usize, Vec<ChordSet>>,
}

impl SubdivisionCache {
    pub fn get(&mut self, k: usize) -> &[ChordSet] {
        self.by_size
            .entry(k)
            .or_insert_with(|| enumerate_subdivisions(k - 2, false))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(vs: &[usize]) -> SubPolygon {
        SubPolygon::from_vertices(vs)
    }

    #[test]
    fn crossing_examples() {
        assert!(crossing(&Diagonal::new(0, 2), &Diagonal::new(1, 3)));
        assert!(!crossing(&Diagonal::new(0, 2), &Diagonal::new(2, 4)));
        assert!(!crossing(&Diagonal::new(0, 2), &Diagonal::new(0, 2)));
    }

    #[test]
    fn square_cells_and_labels() {
        let s = ChordSet::new(2, vec![Diagonal::new(0, 2)]);
        assert_eq!(s.cells(), vec![sp(&[0, 1, 2]), sp(&[0, 2, 3])]);
        let l = s.canonical_labels();
        assert_eq!(l.cells, vec![(sp(&[0, 1, 2]), vec![1]), (sp(&[0, 2, 3]), vec![2])]);
        assert_eq!(
            l.diagonals,
            vec![(Diagonal::new(0, 2), (sp(&[0, 2, 3]), sp(&[0, 1, 2])))]
        );
        assert_eq!(s.vertex_depths(), vec![1, 0]);
        assert_eq!(s.diagonal_depth(&Diagonal::new(0, 2)), 1);
        assert_eq!(s.diagonal_depth(&Diagonal::new(1, 3)), 0);
    }

    #[test]
    fn trivial_and_fan_subdivisions() {
        assert_eq!(ChordSet::empty(3).cells(), vec![sp(&[0, 1, 2, 3, 4])]);
        let fan = ChordSet::new(3, vec![Diagonal::new(0, 2), Diagonal::new(0, 3)]);
        let l = fan.canonical_labels();
        let labels: BTreeMap<SubPolygon, Vec<usize>> = l.cells.into_iter().collect();
        assert_eq!(labels[&sp(&[0, 1, 2])], vec![1]);
        assert_eq!(labels[&sp(&[0, 2, 3])], vec![2]);
        assert_eq!(labels[&sp(&[0, 3, 4])], vec![3]);
        assert_eq!(ChordSet::empty(4).canonical_labels().cells[0].1, vec![1, 2, 3, 4]);
    }

    #[test]
    fn hexagon_depths() {
        let s = ChordSet::new(4, vec![Diagonal::new(0, 3), Diagonal::new(3, 5)]);
        assert_eq!(s.vertex_depths(), vec![1, 1, 0, 1]);
    }

    #[test]
    fn subdivision_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| enumerate_subdivisions(n, true).len()).collect();
        assert_eq!(counts, vec![1, 3, 11, 45, 197, 903]);
        assert_eq!(enumerate_subdivisions(2, false).len(), 2);
        assert_eq!(enumerate_subdivisions(3, false).len(), 10);
        assert_eq!(enumerate_subdivisions(4, false).len(), 44);
        assert_eq!(enumerate_triangulations(3).len(), 5);
    }

    #[test]
    fn transversal_examples() {
        let t = sp(&[0, 1, 2]);
        assert!(transversal_cross(&Diagonal::new(0, 2), &t));
        assert!(!transversal_cross(&Diagonal::new(1, 3), &t));
    }

    #[test]
    fn interior_diagonals_of_subpolygons() {
        let p = sp(&[0, 2, 3, 5]);
        assert!(p.has_interior_diagonal(&Diagonal::new(0, 3)));
        assert!(p.has_interior_diagonal(&Diagonal::new(2, 5)));
        assert!(!p.has_interior_diagonal(&Diagonal::new(0, 2)));
        assert!(!p.has_interior_diagonal(&Diagonal::new(0, 5)));
        assert!(!p.has_interior_diagonal(&Diagonal::new(1, 3)));
    }

    #[test]
    fn subpolygon_order_is_size_then_lex() {
        let mut v = vec![sp(&[0, 1, 2, 3]), sp(&[1, 2, 3]), sp(&[0, 2, 3])];
        v.sort();
        assert_eq!(v, vec![sp(&[0, 2, 3]), sp(&[1, 2, 3]), sp(&[0, 1, 2, 3])]);
    }
}
