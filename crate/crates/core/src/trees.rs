//! Plane trees dual to subdivisions, bracketings of their edge sets, the
//! bracket tree poset, contraction by downsets and meets of pre-bracketings.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::polygon::{ChordSet, Diagonal, SubPolygon};

/// Set of tree edges as a bitmask; edge `c` is the edge from node `c` to its parent.
pub type EdgeSet = u64;

/// Iterates over the edge ids in an edge set.
pub fn edge_ids(s: EdgeSet) -> impl Iterator<Item = usize> {
    (0..64).filter(move |&e| s >> e & 1 == 1)
}

/// Failures of tree operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("edge set {0:#b} is not a downset of the tree poset")]
    NotADownset(EdgeSet),
}

/// A child slot of a tree node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeChild {
    Node(usize),
    Leaf(usize, usize),
}

/// An internal node of a plane tree: a cell of the subdivision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeNode {
    pub cell: SubPolygon,
    pub labels: Vec<usize>,
    pub parent: Option<usize>,
    pub children: Vec<TreeChild>,
}

/// Plane tree dual to a subdivision, with nodes numbered in preorder from the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneTree {
    pub n: usize,
    pub nodes: Vec<TreeNode>,
}

/// Nested-array view of a plane tree: `[labels, [children…]]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Nested(pub Vec<usize>, pub Vec<Nested>);

/// Dual tree of a subdivision, rooted at the cell adjacent to the base edge.
pub fn dual_tree(chords: &ChordSet) -> PlaneTree {
    let mut nodes = Vec::new();
    build_node(chords, Diagonal::base(chords.n), None, &mut nodes);
    PlaneTree { n: chords.n, nodes }
}

fn build_node(chords: &ChordSet, top: Diagonal, parent: Option<usize>, nodes: &mut Vec<TreeNode>) -> usize {
    let cell = chords.cell_below(&top);
    let id = nodes.len();
    nodes.push(TreeNode {
        cell,
        labels: cell.labels(),
        parent,
        children: Vec::new(),
    });
    let vs = cell.vertices();
    let mut children = Vec::new();
    for w in vs.windows(2) {
        let (u, v) = (w[0], w[1]);
        if v == u + 1 {
            children.push(TreeChild::Leaf(u, v));
        } else {
            let c = build_node(chords, Diagonal::new(u, v), Some(id), nodes);
            children.push(TreeChild::Node(c));
        }
    }
    nodes[id].children = children;
    id
}

impl PlaneTree {
    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn num_edges(&self) -> usize {
        self.nodes.len() - 1
    }

    /// All internal edges.
    pub fn all_edges(&self) -> EdgeSet {
        let k = self.nodes.len();
        ((1u128 << k) - 2) as u64
    }

    /// `(parent, child)` node ids of edge `e`.
    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        (self.nodes[e].parent.expect("edge id is a non-root node"), e)
    }

    /// Nodes touched by the edges in `s`, as a bitmask over node ids.
    pub fn vertices_of(&self, s: EdgeSet) -> u64 {
        edge_ids(s).fold(0, |acc, e| {
            let (p, c) = self.endpoints(e);
            acc | 1 << p | 1 << c
        })
    }

    /// True when the edges of `s` form a nonempty connected subgraph.
    pub fn is_connected(&self, s: EdgeSet) -> bool {
        s != 0 && self.vertices_of(s).count_ones() == s.count_ones() + 1
    }

    /// Polygon formed by the cells at the nodes touched by `s` (a single cell
    /// when `s` names one node via [`PlaneTree::node_polygon`]).
    pub fn polygon_of(&self, s: EdgeSet) -> SubPolygon {
        let vs = self.vertices_of(s);
        SubPolygon(
            (0..self.nodes.len())
                .filter(|&v| vs >> v & 1 == 1)
                .fold(0, |acc, v| acc | self.nodes[v].cell.0),
        )
    }

    pub fn node_polygon(&self, v: usize) -> SubPolygon {
        self.nodes[v].cell
    }

    /// Node carrying vertex label `l`.
    pub fn node_of_label(&self, l: usize) -> usize {
        self.nodes
            .iter()
            .position(|nd| nd.labels.contains(&l))
            .expect("every label sits on a node")
    }

    /// Human-readable edge name: parent labels followed by child labels.
    pub fn edge_name(&self, e: usize) -> String {
        let (p, c) = self.endpoints(e);
        let j = |v: usize| self.nodes[v].labels.iter().map(|l| l.to_string()).collect::<String>();
        format!("{}{}", j(p), j(c))
    }

    /// Edge id whose name is `name`, if any.
    pub fn edge_by_name(&self, name: &str) -> Option<usize> {
        (1..self.nodes.len()).find(|&e| self.edge_name(e) == name)
    }

    /// Edge set from a list of edge names. Panics on unknown names.
    pub fn edges_by_names(&self, names: &[&str]) -> EdgeSet {
        names.iter().fold(0, |acc, n| {
            acc | 1 << self.edge_by_name(n).unwrap_or_else(|| panic!("no edge named {n}"))
        })
    }

    /// Labels on the parent side of edge `e`, i.e. outside the subtree of its child.
    pub fn parent_side_labels(&self, e: usize) -> Vec<usize> {
        let sub = self.subtree(e);
        let mut out: Vec<usize> = (0..self.nodes.len())
            .filter(|v| sub >> v & 1 == 0)
            .flat_map(|v| self.nodes[v].labels.clone())
            .collect();
        out.sort();
        out
    }

    /// Node ids in the subtree rooted at `v`, as a bitmask.
    pub fn subtree(&self, v: usize) -> u64 {
        let mut m = 1u64 << v;
        for c in &self.nodes[v].children {
            if let TreeChild::Node(c) = c {
                m |= self.subtree(*c);
            }
        }
        m
    }

    /// Number of leaves (boundary edges other than the base edge).
    pub fn num_leaves(&self) -> usize {
        self.nodes
            .iter()
            .flat_map(|nd| &nd.children)
            .filter(|c| matches!(c, TreeChild::Leaf(..)))
            .count()
    }

    /// True when every node is a triangle.
    pub fn is_binary(&self) -> bool {
        self.nodes.iter().all(|nd| nd.cell.size() == 3)
    }

    /// Nested-array view rooted at node 0.
    pub fn nested(&self) -> Nested {
        self.nested_at(0)
    }

    fn nested_at(&self, v: usize) -> Nested {
        let kids = self.nodes[v]
            .children
            .iter()
            .filter_map(|c| match c {
                TreeChild::Node(c) => Some(self.nested_at(*c)),
                TreeChild::Leaf(..) => None,
            })
            .collect();
        Nested(self.nodes[v].labels.clone(), kids)
    }

    /// All connected nonempty edge subsets, ordered by size then bitmask.
    pub fn connected_edge_sets(&self) -> Vec<EdgeSet> {
        let all = self.all_edges();
        let mut out: Vec<EdgeSet> = Vec::new();
        let mut s = all;
        while s != 0 {
            if self.is_connected(s) {
                out.push(s);
            }
            s = (s - 1) & all;
        }
        out.sort_by_key(|&s| (s.count_ones(), s));
        out
    }
}

/// A nested-or-disjoint family of brackets (connected edge sets).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bracketing {
    brackets: Vec<EdgeSet>,
}

impl Bracketing {
    /// Builds a bracketing from brackets, sorting and deduplicating.
    pub fn new(mut brackets: Vec<EdgeSet>) -> Self {
        brackets.retain(|&b| b != 0);
        brackets.sort_by_key(|&b| (b.count_ones(), b));
        brackets.dedup();
        Bracketing { brackets }
    }

    pub fn brackets(&self) -> &[EdgeSet] {
        &self.brackets
    }

    pub fn len(&self) -> usize {
        self.brackets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.brackets.is_empty()
    }

    pub fn contains(&self, b: EdgeSet) -> bool {
        self.brackets.contains(&b)
    }

    /// Union of all brackets.
    pub fn support(&self) -> EdgeSet {
        self.brackets.iter().fold(0, |a, b| a | b)
    }

    /// Smallest bracket containing edge `e`.
    pub fn bracket_of(&self, e: usize) -> Option<EdgeSet> {
        self.brackets.iter().copied().find(|b| b >> e & 1 == 1)
    }

    /// Bracket tree poset on the edges covered by the brackets.
    pub fn poset(&self) -> TreePoset {
        TreePoset::from_brackets(&self.brackets)
    }

    /// Validity on `tree` after contracting `contracted`.
    pub fn is_valid_on(&self, tree: &PlaneTree, contracted: EdgeSet) -> bool {
        let remaining = tree.all_edges() & !contracted;
        let uf = ContractedVertices::new(tree, contracted);
        let verts = |b: EdgeSet| uf.vertices_of(tree, b);
        for &b in &self.brackets {
            if b & !remaining != 0 || verts(b).count_ones() != b.count_ones() + 1 {
                return false;
            }
        }
        if remaining != 0 && !self.contains(remaining) {
            return false;
        }
        for (k, &a) in self.brackets.iter().enumerate() {
            for &b in &self.brackets[k + 1..] {
                let nested = a & b == a || a & b == b;
                let disjoint = verts(a) & verts(b) == 0;
                if !nested && !disjoint {
                    return false;
                }
            }
        }
        true
    }

    /// Brackets with the edges in `e` removed, dropping empties.
    fn minus(&self, e: EdgeSet) -> Bracketing {
        Bracketing::new(self.brackets.iter().map(|b| b & !e).collect())
    }
}

impl fmt::Display for Bracketing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .brackets
            .iter()
            .map(|&b| {
                let ids: Vec<String> = edge_ids(b).map(|e| e.to_string()).collect();
                format!("{{{}}}", ids.join(","))
            })
            .collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// Node partition of a tree after contracting some edges.
struct ContractedVertices {
    rep: Vec<usize>,
}

impl ContractedVertices {
    fn new(tree: &PlaneTree, contracted: EdgeSet) -> Self {
        let rep = (0..tree.num_nodes())
            .map(|v| {
                let mut r = v;
                while r != 0 && contracted >> r & 1 == 1 {
                    r = tree.nodes[r].parent.expect("non-root");
                }
                r
            })
            .collect();
        ContractedVertices { rep }
    }

    fn vertices_of(&self, tree: &PlaneTree, s: EdgeSet) -> u64 {
        edge_ids(s).fold(0, |acc, e| {
            let (p, c) = tree.endpoints(e);
            acc | 1 << self.rep[p] | 1 << self.rep[c]
        })
    }
}

/// A bracketing of a contraction: contracted edges plus brackets on the rest.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PreBracketing {
    pub contracted: EdgeSet,
    pub bracketing: Bracketing,
}

impl PreBracketing {
    pub fn uncontracted(b: Bracketing) -> Self {
        PreBracketing {
            contracted: 0,
            bracketing: b,
        }
    }

    pub fn poset(&self) -> TreePoset {
        self.bracketing.poset()
    }

    pub fn is_valid_on(&self, tree: &PlaneTree) -> bool {
        self.bracketing.is_valid_on(tree, self.contracted)
    }
}

/// A class of the bracket tree pre-order: the edges sharing one smallest bracket.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosetClass {
    pub bracket: EdgeSet,
    pub edges: EdgeSet,
}

/// The bracket tree pre-order: classes with their parent (covering) class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreePoset {
    pub classes: Vec<PosetClass>,
    pub parent: Vec<Option<usize>>,
}

impl TreePoset {
    fn from_brackets(brackets: &[EdgeSet]) -> Self {
        let mut sorted: Vec<EdgeSet> = brackets.to_vec();
        sorted.sort_by_key(|&b| (b.count_ones(), b));
        let classes: Vec<PosetClass> = sorted
            .iter()
            .enumerate()
            .map(|(k, &b)| {
                let inner = sorted[..k].iter().filter(|&&s| s & b == s).fold(0, |a, s| a | s);
                PosetClass {
                    bracket: b,
                    edges: b & !inner,
                }
            })
            .collect();
        let parent = sorted
            .iter()
            .enumerate()
            .map(|(k, &b)| {
                sorted
                    .iter()
                    .enumerate()
                    .skip(k + 1)
                    .find(|(_, &s)| s & b == b)
                    .map(|(j, _)| j)
            })
            .collect();
        TreePoset { classes, parent }
    }

    /// Index of the class containing edge `e`.
    pub fn class_of(&self, e: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.edges >> e & 1 == 1)
    }

    /// True when `f ≤ e`, i.e. bracket(f) ⊆ bracket(e).
    pub fn leq(&self, f: usize, e: usize) -> bool {
        match (self.class_of(f), self.class_of(e)) {
            (Some(a), Some(b)) => {
                let (ba, bb) = (self.classes[a].bracket, self.classes[b].bracket);
                ba & bb == ba
            }
            _ => false,
        }
    }

    /// Cover relations `(upper class, lower class)`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.parent
            .iter()
            .enumerate()
            .filter_map(|(c, p)| p.map(|p| (p, c)))
            .collect()
    }

    /// Classes with no class below them.
    pub fn minimal_classes(&self) -> Vec<usize> {
        (0..self.classes.len())
            .filter(|&c| !self.parent.contains(&Some(c)))
            .collect()
    }

    /// Classes at the top of the pre-order.
    pub fn maximal_classes(&self) -> Vec<usize> {
        (0..self.classes.len()).filter(|&c| self.parent[c].is_none()).collect()
    }

    /// True when the pre-order is a chain.
    pub fn is_chain(&self) -> bool {
        let mut children = vec![0usize; self.classes.len()];
        for p in self.parent.iter().flatten() {
            children[*p] += 1;
        }
        children.iter().all(|&c| c <= 1) && self.maximal_classes().len() <= 1
    }

    /// True when `e` is closed downward: every edge of `e` has its whole bracket in `e`.
    pub fn is_downset(&self, e: EdgeSet) -> bool {
        edge_ids(e).all(|x| match self.class_of(x) {
            Some(c) => self.classes[c].bracket & !e == 0,
            None => true,
        })
    }

    /// Smallest downset containing `e`.
    pub fn downset_closure(&self, e: EdgeSet) -> EdgeSet {
        edge_ids(e).fold(e, |acc, x| match self.class_of(x) {
            Some(c) => acc | self.classes[c].bracket,
            None => acc,
        })
    }
}

/// Child of a bracket in the extended tree poset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtendedChild {
    Bracket(EdgeSet),
    Vertex(usize),
}

/// Children of each bracket in the extended tree poset: its maximal
/// sub-brackets plus the tree vertices of the bracket lying in no sub-bracket.
pub fn extended_children(tree: &PlaneTree, b: &Bracketing) -> Vec<(EdgeSet, Vec<ExtendedChild>)> {
    b.brackets()
        .iter()
        .map(|&beta| {
            let subs: Vec<EdgeSet> = b
                .brackets()
                .iter()
                .copied()
                .filter(|&s| s != beta && s & beta == s)
                .collect();
            let maximal: Vec<EdgeSet> = subs
                .iter()
                .copied()
                .filter(|&s| !subs.iter().any(|&t| t != s && t & s == s))
                .collect();
            let covered = maximal.iter().fold(0u64, |a, &s| a | tree.vertices_of(s));
            let verts = tree.vertices_of(beta) & !covered;
            let mut kids: Vec<ExtendedChild> = maximal.into_iter().map(ExtendedChild::Bracket).collect();
            kids.extend(
                (0..tree.num_nodes())
                    .filter(|v| verts >> v & 1 == 1)
                    .map(ExtendedChild::Vertex),
            );
            (beta, kids)
        })
        .collect()
}

/// All bracketings of `tree` containing the full edge set, or only the maximal ones.
pub fn enumerate_bracketings(tree: &PlaneTree, maximal_only: bool) -> Vec<Bracketing> {
    let all = tree.all_edges();
    if all == 0 {
        return vec![Bracketing::new(Vec::new())];
    }
    let cands: Vec<EdgeSet> = tree.connected_edge_sets().into_iter().filter(|&s| s != all).collect();
    let compatible =
        |a: EdgeSet, b: EdgeSet| a & b == a || a & b == b || tree.vertices_of(a) & tree.vertices_of(b) == 0;
    let mut out = Vec::new();
    let mut chosen = vec![all];
    extend_family(&cands, 0, &mut chosen, &compatible, &mut |fam| {
        if maximal_only {
            let extendable = cands
                .iter()
                .any(|&c| !fam.contains(&c) && fam.iter().all(|&f| compatible(c, f)));
            if extendable {
                return;
            }
        }
        out.push(Bracketing::new(fam.to_vec()));
    });
    out.sort();
    out
}

fn extend_family(
    cands: &[EdgeSet],
    start: usize,
    chosen: &mut Vec<EdgeSet>,
    compatible: &impl Fn(EdgeSet, EdgeSet) -> bool,
    visit: &mut impl FnMut(&[EdgeSet]),
) {
    visit(chosen);
    for k in start..cands.len() {
        let c = cands[k];
        if chosen.iter().all(|&f| compatible(c, f)) {
            chosen.push(c);
            extend_family(cands, k + 1, chosen, compatible, visit);
            chosen.pop();
        }
    }
}

/// All pre-bracketings of `tree`: every bracketing contracted by every downset
/// of its tree pre-order, deduplicated and sorted.
pub fn enumerate_prebracketings(tree: &PlaneTree) -> Vec<PreBracketing> {
    let mut out = BTreeSet::new();
    for b in enumerate_bracketings(tree, false) {
        let pb = PreBracketing::uncontracted(b);
        let poset = pb.poset();
        let support = pb.bracketing.support();
        let mut e = support;
        loop {
            if poset.is_downset(e) {
                out.insert(contract(&pb, e).expect("downset"));
            }
            if e == 0 {
                break;
            }
            e = (e - 1) & support;
        }
    }
    out.into_iter().collect()
}

/// Order on pre-bracketings of one tree: `b1 ≤ b2` when `b1` contracts
/// a superset of edges, the extra edges form a downset of `b2`'s pre-order,
/// and every bracket of `b1` is a bracket of `b2` after that contraction.
pub fn prebracketing_leq(b1: &PreBracketing, b2: &PreBracketing) -> bool {
    if b2.contracted & !b1.contracted != 0 {
        return false;
    }
    match contract(b2, b1.contracted & !b2.contracted) {
        Ok(c) => b1.bracketing.brackets().iter().all(|&x| c.bracketing.contains(x)),
        Err(_) => false,
    }
}

/// Contracts a downset of the bracket tree pre-order.
pub fn contract(b: &PreBracketing, e: EdgeSet) -> Result<PreBracketing, TreeError> {
    let e = e & !b.contracted;
    if !b.poset().is_downset(e) {
        return Err(TreeError::NotADownset(e));
    }
    Ok(PreBracketing {
        contracted: b.contracted | e,
        bracketing: b.bracketing.minus(e),
    })
}

/// Meet of two pre-bracketings of the same tree: the pre-bracketing whose
/// positive cone is the intersection of the two positive cones.
pub fn meet_prebracketings(tree: &PlaneTree, b1: &PreBracketing, b2: &PreBracketing) -> PreBracketing {
    let all = tree.all_edges();
    let (p1, p2) = (b1.poset(), b2.poset());
    let below = |p: &TreePoset, x: usize| -> EdgeSet { p.class_of(x).map(|c| p.classes[c].bracket).unwrap_or(0) };

    let mut zero = b1.contracted | b2.contracted;
    loop {
        let next = edge_ids(zero).fold(zero, |acc, x| acc | below(&p1, x) | below(&p2, x));
        if next == zero {
            break;
        }
        zero = next;
    }
    let rest: Vec<usize> = edge_ids(all & !zero).collect();
    let idx = |x: usize| rest.iter().position(|&r| r == x).expect("remaining edge");
    let k = rest.len();
    let mut down = vec![0u64; k];
    for (i, &x) in rest.iter().enumerate() {
        down[i] = (below(&p1, x) | below(&p2, x) | 1 << x) & !zero;
    }
    loop {
        let mut changed = false;
        for i in 0..k {
            let acc = edge_ids(down[i]).fold(down[i], |a, y| a | down[idx(y)]);
            if acc != down[i] {
                down[i] = acc;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let brackets: BTreeSet<EdgeSet> = down.into_iter().collect();
    PreBracketing {
        contracted: zero,
        bracketing: Bracketing::new(brackets.into_iter().collect()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::enumerate_triangulations;

    fn d(i: usize, j: usize) -> Diagonal {
        Diagonal::new(i, j)
    }

    /// Dual tree of the hexagon triangulation used by the first worked Matryoshka.
    fn m1_tree() -> PlaneTree {
        dual_tree(&ChordSet::new(4, vec![d(0, 2), d(0, 3), d(3, 5)]))
    }

    /// A path with three edges.
    fn path3() -> PlaneTree {
        dual_tree(&ChordSet::new(4, vec![d(0, 4), d(0, 3), d(0, 2)]))
    }

    #[test]
    fn square_dual_tree() {
        let t = dual_tree(&ChordSet::new(2, vec![d(0, 2)]));
        assert_eq!(t.num_nodes(), 2);
        assert_eq!(t.nodes[0].labels, vec![2]);
        assert_eq!(t.nodes[1].labels, vec![1]);
        assert_eq!(t.num_leaves(), 3);
    }

    #[test]
    fn pentagon_trivial_tree_and_binary_count() {
        let t = dual_tree(&ChordSet::empty(3));
        assert_eq!(t.num_nodes(), 1);
        assert_eq!(t.nodes[0].labels, vec![1, 2, 3]);
        let trees: Vec<PlaneTree> = enumerate_triangulations(3).iter().map(dual_tree).collect();
        assert_eq!(trees.len(), 5);
        assert!(trees.iter().all(|t| t.is_binary() && t.num_leaves() == 4));
    }

    #[test]
    fn hexagon_edge_names() {
        let t = m1_tree();
        let mut names: Vec<String> = (1..t.num_nodes()).map(|e| t.edge_name(e)).collect();
        names.sort();
        assert_eq!(names, vec!["21", "32", "34"]);
    }

    #[test]
    fn bracketing_counts_on_paths() {
        let one = dual_tree(&ChordSet::new(2, vec![d(0, 2)]));
        assert_eq!(enumerate_bracketings(&one, true).len(), 1);
        let two = dual_tree(&ChordSet::new(3, vec![d(0, 3), d(0, 2)]));
        assert_eq!(enumerate_bracketings(&two, true).len(), 2);
        let p3 = path3();
        let max = enumerate_bracketings(&p3, true);
        assert_eq!(max.len(), 5);
        assert!(max.iter().all(|b| b.len() == 3));
    }

    #[test]
    fn first_matryoshka_poset() {
        let t = m1_tree();
        let b = Bracketing::new(vec![
            t.edges_by_names(&["21"]),
            t.edges_by_names(&["21", "32", "34"]),
            t.edges_by_names(&["34"]),
        ]);
        assert!(b.is_valid_on(&t, 0));
        let p = b.poset();
        let f = t.edge_by_name("32").unwrap();
        let e = t.edge_by_name("21").unwrap();
        let g = t.edge_by_name("34").unwrap();
        assert!(p.leq(e, f) && p.leq(g, f) && !p.leq(f, e));
        assert_eq!(p.maximal_classes().len(), 1);
        assert_eq!(p.minimal_classes().len(), 2);
    }

    #[test]
    fn full_bracket_gives_one_class() {
        let t = dual_tree(&ChordSet::new(3, vec![d(0, 3), d(0, 2)]));
        let b = Bracketing::new(vec![t.all_edges()]);
        let p = b.poset();
        assert_eq!(p.classes.len(), 1);
        assert!(p.leq(1, 2) && p.leq(2, 1));
    }

    #[test]
    fn contraction_rules() {
        let t = m1_tree();
        let e21 = t.edges_by_names(&["21"]);
        let all = t.all_edges();
        let b = PreBracketing::uncontracted(Bracketing::new(vec![e21, all, t.edges_by_names(&["34"])]));
        assert_eq!(contract(&b, 0).unwrap(), b);
        let c = contract(&b, e21).unwrap();
        assert_eq!(c.bracketing.len(), 2);
        assert!(c.is_valid_on(&t));
        assert_eq!(
            contract(&b, t.edges_by_names(&["32"])),
            Err(TreeError::NotADownset(t.edges_by_names(&["32"])))
        );
    }

    #[test]
    fn meet_is_idempotent_and_respects_containment() {
        let t = path3();
        let coarse = PreBracketing::uncontracted(Bracketing::new(vec![t.all_edges()]));
        let all = enumerate_bracketings(&t, false);
        for b in &all {
            let pb = PreBracketing::uncontracted(b.clone());
            assert_eq!(meet_prebracketings(&t, &pb, &pb), pb);
            assert_eq!(meet_prebracketings(&t, &pb, &coarse), coarse);
            for big in &all {
                if b.brackets().iter().all(|x| big.contains(*x)) {
                    let pbig = PreBracketing::uncontracted(big.clone());
                    assert_eq!(meet_prebracketings(&t, &pb, &pbig), pb);
                }
            }
        }
    }

    #[test]
    fn extended_children_of_first_matryoshka() {
        let t = m1_tree();
        let all = t.all_edges();
        let b = Bracketing::new(vec![t.edges_by_names(&["21"]), all, t.edges_by_names(&["34"])]);
        let ext = extended_children(&t, &b);
        let top = ext.iter().find(|(beta, _)| *beta == all).unwrap();
        assert_eq!(top.1.len(), 2);
        let small = ext.iter().find(|(beta, _)| *beta != all).unwrap();
        assert_eq!(small.1.len(), 2);
        assert!(small.1.iter().all(|c| matches!(c, ExtendedChild::Vertex(_))));
    }
}
