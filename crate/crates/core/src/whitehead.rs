//! Whitehead graphs over finite subtrees of the Cayley tree.
//!
//! The graph over a subtree X has one node per frontier direction of X and
//! one edge per pattern line crossing X, joining the two directions where
//! the line leaves X. Edges carry their Line as a label; since a geodesic
//! crosses a tree edge at most once, the label is a perfect matching key for
//! splicing, and at any node the incident labels are distinct.
//!
//! Deleting a node keeps the incident half-edges as loose ends tagged with
//! the node's direction; an edge with both ends loose is a free edge and
//! forms a component of its own.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::pattern::{Direction, Line, LinePattern, Subtree, TreeEdge, TreeVertex};

#[derive(Debug, Error)]
pub enum WhError {
    #[error("supports must be disjoint and joined exactly by the given edge")]
    SupportsNotAdjacent,
    #[error("line {0:?} crosses the splice edge in only one of the graphs")]
    LineMismatch(Line),
    #[error("{0:?} is not a node of the graph")]
    NotANode(Direction),
    #[error("no edge is labeled by the given line")]
    NoSuchEdge,
}

/// One endpoint of a Whitehead-graph edge: attached at a frontier-direction
/// node, or loose where such a node used to be.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum WhEnd {
    Node(Direction),
    Loose(Direction),
}

impl WhEnd {
    pub fn direction(&self) -> &Direction {
        match self {
            WhEnd::Node(d) | WhEnd::Loose(d) => d,
        }
    }

    pub fn is_loose(&self) -> bool {
        matches!(self, WhEnd::Loose(_))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WhEdge {
    pub line: Line,
    pub ends: [WhEnd; 2],
}

impl WhEdge {
    fn new(line: Line, a: WhEnd, b: WhEnd) -> WhEdge {
        let mut ends = [a, b];
        ends.sort();
        WhEdge { line, ends }
    }

    pub fn is_free(&self) -> bool {
        self.ends[0].is_loose() && self.ends[1].is_loose()
    }

    /// The node end at direction d, if present.
    fn has_node(&self, d: &Direction) -> bool {
        self.ends
            .iter()
            .any(|e| matches!(e, WhEnd::Node(n) if n == d))
    }
}

/// A connected component: its node set and the labels of its edges. A free
/// edge yields a component with no nodes and a single line.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WhComponent {
    pub nodes: BTreeSet<Direction>,
    pub lines: BTreeSet<Line>,
}

impl WhComponent {
    pub fn is_free_edge(&self) -> bool {
        self.nodes.is_empty() && self.lines.len() == 1
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct WhGraph {
    rank: usize,
    support: Subtree,
    nodes: BTreeSet<Direction>,
    edges: Vec<WhEdge>,
}

impl WhGraph {
    fn finish(mut self) -> WhGraph {
        self.edges.sort_by(|a, b| (&a.line, &a.ends).cmp(&(&b.line, &b.ends)));
        self
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn support(&self) -> &Subtree {
        &self.support
    }

    pub fn nodes(&self) -> &BTreeSet<Direction> {
        &self.nodes
    }

    pub fn edges(&self) -> &[WhEdge] {
        &self.edges
    }

    pub fn edge_for_line(&self, line: &Line) -> Option<&WhEdge> {
        self.edges.iter().find(|e| &e.line == line)
    }

    pub fn loose_ends(&self) -> Vec<(Direction, Line)> {
        let mut out = Vec::new();
        for e in &self.edges {
            for end in &e.ends {
                if let WhEnd::Loose(d) = end {
                    out.push((d.clone(), e.line.clone()));
                }
            }
        }
        out.sort();
        out
    }

    /// Loose ends tagged at one former node.
    pub fn loose_ends_at(&self, d: &Direction) -> Vec<Line> {
        let mut out: Vec<Line> = self
            .edges
            .iter()
            .filter(|e| {
                e.ends
                    .iter()
                    .any(|end| matches!(end, WhEnd::Loose(x) if x == d))
            })
            .map(|e| e.line.clone())
            .collect();
        out.sort();
        out
    }

    pub fn valence(&self, d: &Direction) -> usize {
        self.edges.iter().filter(|e| e.has_node(d)).count()
    }

    /// Number of parallel edges joining two node directions.
    pub fn edge_multiplicity(&self, u: &Direction, v: &Direction) -> usize {
        self.edges
            .iter()
            .filter(|e| e.has_node(u) && e.has_node(v))
            .count()
    }

    /// Lines incident to the node d (one per incident edge).
    pub fn lines_at(&self, d: &Direction) -> BTreeSet<Line> {
        self.edges
            .iter()
            .filter(|e| e.has_node(d))
            .map(|e| e.line.clone())
            .collect()
    }

    /// Connected components. Loose ends belong to their edge's component;
    /// isolated nodes count as components.
    pub fn components(&self) -> Vec<WhComponent> {
        let node_list: Vec<&Direction> = self.nodes.iter().collect();
        let index: BTreeMap<&Direction, usize> =
            node_list.iter().enumerate().map(|(i, d)| (*d, i)).collect();
        let n = node_list.len();
        let mut uf = UnionFind::new(n + self.edges.len());
        for (ei, e) in self.edges.iter().enumerate() {
            for end in &e.ends {
                if let WhEnd::Node(d) = end {
                    uf.union(n + ei, index[d]);
                }
            }
        }
        let mut groups: BTreeMap<usize, WhComponent> = BTreeMap::new();
        for (i, d) in node_list.iter().enumerate() {
            let g = groups.entry(uf.find(i)).or_insert_with(empty_component);
            g.nodes.insert((*d).clone());
        }
        for (ei, e) in self.edges.iter().enumerate() {
            let g = groups
                .entry(uf.find(n + ei))
                .or_insert_with(empty_component);
            g.lines.insert(e.line.clone());
        }
        let mut out: Vec<WhComponent> = groups.into_values().collect();
        out.sort_by(|a, b| {
            let ka = (a.nodes.iter().next(), a.lines.iter().next());
            let kb = (b.nodes.iter().next(), b.lines.iter().next());
            ka.cmp(&kb)
        });
        out
    }

    /// Components that are a single free edge.
    pub fn free_edge_components(&self) -> Vec<Line> {
        self.edges
            .iter()
            .filter(|e| e.is_free())
            .map(|e| e.line.clone())
            .collect()
    }

    /// Nodes whose removal, together with their incident edges, strictly
    /// increases the number of components.
    pub fn cut_vertices(&self) -> Vec<Direction> {
        let base = self.components().len();
        self.nodes
            .iter()
            .filter(|d| self.without_closed_star(d).components().len() > base)
            .cloned()
            .collect()
    }

    fn without_closed_star(&self, d: &Direction) -> WhGraph {
        let mut g = self.clone();
        g.nodes.remove(d);
        g.edges.retain(|e| !e.has_node(d));
        g
    }

    /// Removes a node, keeping incident half-edges as loose ends.
    pub fn delete_node(&self, d: &Direction) -> Result<WhGraph, WhError> {
        if !self.nodes.contains(d) {
            return Err(WhError::NotANode(d.clone()));
        }
        let mut g = self.clone();
        g.nodes.remove(d);
        for e in &mut g.edges {
            for end in &mut e.ends {
                if matches!(end, WhEnd::Node(x) if x == d) {
                    *end = WhEnd::Loose(d.clone());
                }
            }
            e.ends.sort();
        }
        Ok(g.finish())
    }

    /// Removes the interiors of all edges labeled by S; nodes stay.
    pub fn delete_lines(&self, s: &BTreeSet<Line>) -> WhGraph {
        let mut g = self.clone();
        g.edges.retain(|e| !s.contains(&e.line));
        g
    }

    /// Removes an edge together with both endpoint nodes; other edges at
    /// those nodes become loose.
    pub fn delete_line_closed(&self, line: &Line) -> Result<WhGraph, WhError> {
        let edge = self.edge_for_line(line).ok_or(WhError::NoSuchEdge)?;
        let node_dirs: Vec<Direction> = edge
            .ends
            .iter()
            .filter_map(|end| match end {
                WhEnd::Node(d) => Some(d.clone()),
                WhEnd::Loose(_) => None,
            })
            .collect();
        let mut g = self.clone();
        g.edges.retain(|e| &e.line != line);
        for d in &node_dirs {
            g = g.delete_node(d)?;
        }
        Ok(g)
    }

    /// Glues two graphs along a shared tree edge by matching half-edges of
    /// the same line. The result equals wh_over on the union support.
    pub fn splice(&self, other: &WhGraph, across: &TreeEdge) -> Result<WhGraph, WhError> {
        // Orient the edge from self's support into other's.
        let d = if self.support.contains(&across.from)
            && other.support.contains(&across.head())
        {
            across.clone()
        } else if self.support.contains(&across.head())
            && other.support.contains(&across.from)
        {
            across.reversed()
        } else {
            return Err(WhError::SupportsNotAdjacent);
        };
        let d_rev = d.reversed();
        if !self.nodes.contains(&d) || !other.nodes.contains(&d_rev) {
            return Err(WhError::SupportsNotAdjacent);
        }
        if self
            .support
            .vertices()
            .any(|v| other.support.contains(v))
        {
            return Err(WhError::SupportsNotAdjacent);
        }

        let mut mine: BTreeMap<Line, WhEnd> = BTreeMap::new();
        let mut rest: Vec<WhEdge> = Vec::new();
        for e in &self.edges {
            if e.has_node(&d) {
                let other_end = e
                    .ends
                    .iter()
                    .find(|end| !matches!(end, WhEnd::Node(x) if *x == d))
                    .expect("no loops: the two ends are distinct")
                    .clone();
                mine.insert(e.line.clone(), other_end);
            } else {
                rest.push(e.clone());
            }
        }
        let mut theirs: BTreeMap<Line, WhEnd> = BTreeMap::new();
        for e in &other.edges {
            if e.has_node(&d_rev) {
                let other_end = e
                    .ends
                    .iter()
                    .find(|end| !matches!(end, WhEnd::Node(x) if *x == d_rev))
                    .expect("no loops: the two ends are distinct")
                    .clone();
                theirs.insert(e.line.clone(), other_end);
            } else {
                rest.push(e.clone());
            }
        }
        if let Some(l) = mine.keys().find(|l| !theirs.contains_key(*l)) {
            return Err(WhError::LineMismatch(l.clone()));
        }
        if let Some(l) = theirs.keys().find(|l| !mine.contains_key(*l)) {
            return Err(WhError::LineMismatch(l.clone()));
        }
        for (line, my_end) in mine {
            let their_end = theirs.remove(&line).unwrap();
            rest.push(WhEdge::new(line, my_end, their_end));
        }

        let mut support = self.support.clone();
        for v in other.support.vertices() {
            support.insert(v.clone());
        }
        let mut nodes = self.nodes.clone();
        nodes.remove(&d);
        for nd in &other.nodes {
            if *nd != d_rev {
                nodes.insert(nd.clone());
            }
        }
        Ok(WhGraph {
            rank: self.rank,
            support,
            nodes,
            edges: rest,
        }
        .finish())
    }
}

impl fmt::Debug for WhGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "WhGraph over {} vertices, {} nodes, {} edges",
            self.support.len(),
            self.nodes.len(),
            self.edges.len()
        )?;
        for e in &self.edges {
            writeln!(f, "  {:?} -- {:?}  [{:?}]", e.ends[0], e.ends[1], e.line)?;
        }
        Ok(())
    }
}

fn empty_component() -> WhComponent {
    WhComponent {
        nodes: BTreeSet::new(),
        lines: BTreeSet::new(),
    }
}

/// Whitehead graph at a single vertex: nodes are the 2n directions, one edge
/// per line incidence.
pub fn wh_at_vertex(p: &LinePattern, v: &TreeVertex) -> WhGraph {
    let support = Subtree::vertex(v.clone());
    let nodes: BTreeSet<Direction> = support.frontier(p.rank()).into_iter().collect();
    let edges = p
        .lines_through_vertex(v)
        .into_iter()
        .map(|(line, bwd, fwd)| WhEdge::new(line, WhEnd::Node(bwd), WhEnd::Node(fwd)))
        .collect();
    WhGraph {
        rank: p.rank(),
        support,
        nodes,
        edges,
    }
    .finish()
}

/// Whitehead graph over a connected subtree: one edge per line crossing the
/// support, joining the entry and exit frontier directions.
pub fn wh_over(p: &LinePattern, x: &Subtree) -> WhGraph {
    let nodes: BTreeSet<Direction> = x.frontier(p.rank()).into_iter().collect();
    let mut lines: BTreeSet<Line> = BTreeSet::new();
    for v in x.vertices() {
        for (line, _, _) in p.lines_through_vertex(v) {
            lines.insert(line);
        }
    }
    let mut edges = Vec::with_capacity(lines.len());
    for line in lines {
        let (lo, hi) = line
            .clip_to(x.vertex_set())
            .expect("line was found through a support vertex");
        let entry = Direction::new(line.point(lo), line.gen.letter_at(lo - 1).inverse());
        let exit = Direction::new(line.point(hi), line.gen.letter_at(hi));
        debug_assert!(nodes.contains(&entry) && nodes.contains(&exit));
        debug_assert_ne!(entry, exit, "a geodesic cannot double back");
        edges.push(WhEdge::new(line, WhEnd::Node(entry), WhEnd::Node(exit)));
    }
    WhGraph {
        rank: p.rank(),
        support: x.clone(),
        nodes,
        edges,
    }
    .finish()
}

/// Partition of the half-edges incident to one designated node, identified
/// by their line labels. A geodesic leaves a vertex through a given
/// direction at most once, so at any node the incident lines are distinct
/// and label the half-edges faithfully.
#[derive(Clone, PartialEq, Eq)]
pub struct NodePartition {
    // Invariants: blocks nonempty, pairwise disjoint, sorted.
    blocks: Vec<BTreeSet<Line>>,
}

impl NodePartition {
    /// Assemble a partition from blocks. Empty blocks are dropped and block
    /// order is canonicalized, so equality of values is equality of
    /// partitions. Panics if the blocks overlap.
    pub fn from_blocks(blocks: impl IntoIterator<Item = BTreeSet<Line>>) -> NodePartition {
        let mut blocks: Vec<BTreeSet<Line>> =
            blocks.into_iter().filter(|b| !b.is_empty()).collect();
        blocks.sort();
        let total: usize = blocks.iter().map(|b| b.len()).sum();
        let distinct: BTreeSet<&Line> = blocks.iter().flatten().collect();
        assert_eq!(total, distinct.len(), "partition blocks must be disjoint");
        NodePartition { blocks }
    }

    /// Partition a ground set by a key function: one block per key value.
    pub fn group_by<K: Ord>(
        ground: impl IntoIterator<Item = Line>,
        mut key: impl FnMut(&Line) -> K,
    ) -> NodePartition {
        let mut by_key: BTreeMap<K, BTreeSet<Line>> = BTreeMap::new();
        for l in ground {
            by_key.entry(key(&l)).or_default().insert(l);
        }
        NodePartition::from_blocks(by_key.into_values())
    }

    pub fn blocks(&self) -> &[BTreeSet<Line>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.blocks.len() == 1
    }

    pub fn ground(&self) -> BTreeSet<Line> {
        self.blocks.iter().flatten().cloned().collect()
    }

    pub fn block_of(&self, l: &Line) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(l))
    }

    /// Whether `l` sits in a block by itself.
    pub fn is_singleton(&self, l: &Line) -> bool {
        self.block_of(l)
            .is_some_and(|i| self.blocks[i].len() == 1)
    }

    /// Image partition under a relabeling of the half-edges; the map must be
    /// injective on the ground set.
    pub fn map(&self, mut f: impl FnMut(&Line) -> Line) -> NodePartition {
        let mut out = Vec::with_capacity(self.blocks.len());
        for b in &self.blocks {
            out.push(b.iter().map(&mut f).collect());
        }
        NodePartition::from_blocks(out)
    }

    /// Finest common coarsening with another partition of the same ground
    /// set: the result's blocks are the connected components of the overlap
    /// graph of the two block families.
    pub fn join(&self, other: &NodePartition) -> NodePartition {
        debug_assert_eq!(self.ground(), other.ground());
        let ground: Vec<Line> = self.ground().into_iter().collect();
        let index: BTreeMap<&Line, usize> =
            ground.iter().enumerate().map(|(i, l)| (l, i)).collect();
        let mut uf = UnionFind::new(ground.len());
        for b in self.blocks.iter().chain(other.blocks.iter()) {
            let mut it = b.iter();
            if let Some(first) = it.next() {
                for l in it {
                    uf.union(index[first], index[l]);
                }
            }
        }
        let mut by_root: BTreeMap<usize, BTreeSet<Line>> = BTreeMap::new();
        for (i, l) in ground.iter().enumerate() {
            by_root.entry(uf.find(i)).or_default().insert(l.clone());
        }
        NodePartition::from_blocks(by_root.into_values())
    }
}

impl fmt::Debug for NodePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, " | ")?;
            }
            let mut first = true;
            for l in b {
                if !first {
                    write!(f, ", ")?;
                }
                write!(f, "{l:?}")?;
                first = false;
            }
        }
        write!(f, "}}")
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, i: usize) -> usize {
        if self.parent[i] != i {
            let root = self.find(self.parent[i]);
            self.parent[i] = root;
        }
        self.parent[i]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{Letter, Word};

    fn pat(rank: usize, words: &[&str]) -> LinePattern {
        LinePattern::parse(rank, words).unwrap()
    }

    fn dir(v: &str, l: char) -> Direction {
        Direction::new(Word::parse(v, 3).unwrap(), Letter::parse(l).unwrap())
    }

    fn base_dir(l: char) -> Direction {
        dir("", l)
    }

    #[test]
    fn single_generator_graph() {
        let g = wh_at_vertex(&pat(2, &["a"]), &Word::identity());
        assert_eq!(g.nodes().len(), 4);
        assert_eq!(g.edges().len(), 1);
        assert_eq!(g.edge_multiplicity(&base_dir('a'), &base_dir('A')), 1);
        assert_eq!(g.components().len(), 3);
        assert!(g.cut_vertices().is_empty());
        assert!(g.free_edge_components().is_empty());
    }

    #[test]
    fn ab2_path_graph() {
        let g = wh_at_vertex(&pat(2, &["abb"]), &Word::identity());
        assert_eq!(g.edges().len(), 3);
        assert_eq!(g.components().len(), 1);
        assert_eq!(g.valence(&base_dir('a')), 1);
        assert_eq!(g.valence(&base_dir('A')), 1);
        assert_eq!(g.valence(&base_dir('b')), 2);
        assert_eq!(g.valence(&base_dir('B')), 2);
        assert_eq!(g.cut_vertices(), vec![base_dir('b'), base_dir('B')]);
    }

    #[test]
    fn commutator_four_cycle() {
        let g = wh_at_vertex(&pat(2, &["abAB"]), &Word::identity());
        assert_eq!(g.edges().len(), 4);
        assert_eq!(g.components().len(), 1);
        assert!(g.cut_vertices().is_empty());
        for l in ['a', 'A', 'b', 'B'] {
            assert_eq!(g.valence(&base_dir(l)), 2);
        }
    }

    #[test]
    fn double_edge_graph() {
        // aabaaBB: seven edges, with {a, A} doubled.
        let g = wh_at_vertex(&pat(2, &["aabaaBB"]), &Word::identity());
        assert_eq!(g.edges().len(), 7);
        assert_eq!(g.edge_multiplicity(&base_dir('a'), &base_dir('A')), 2);
        assert_eq!(g.components().len(), 1);
        assert!(g.cut_vertices().is_empty());
        assert_eq!(g.valence(&base_dir('a')), 4);
        assert_eq!(g.valence(&base_dir('b')), 3);
    }

    #[test]
    fn wh_over_singleton_matches_vertex_graph() {
        for words in [vec!["a"], vec!["abb"], vec!["abAB"], vec!["ab", "aB"]] {
            let p = pat(2, &words);
            let direct = wh_at_vertex(&p, &Word::identity());
            let over = wh_over(&p, &Subtree::vertex(Word::identity()));
            assert_eq!(direct, over, "pattern {words:?}");
        }
    }

    #[test]
    fn wh_over_disjoint_supports_lines() {
        // {a} over {identity, b}: one a-axis edge at each vertex, two
        // isolated nodes.
        let p = pat(2, &["a"]);
        let x = Subtree::segment(&Word::identity(), &Word::parse("b", 2).unwrap());
        let g = wh_over(&p, &x);
        assert_eq!(g.nodes().len(), 6);
        assert_eq!(g.edges().len(), 2);
        assert_eq!(g.components().len(), 4);
    }

    #[test]
    fn six_cycle_from_splice() {
        let p = pat(2, &["ab", "aB"]);
        let a = Word::parse("a", 2).unwrap();
        let direct = wh_over(&p, &Subtree::segment(&Word::identity(), &a));
        assert_eq!(direct.nodes().len(), 6);
        assert_eq!(direct.edges().len(), 6);
        assert_eq!(direct.components().len(), 1);
        for d in direct.nodes() {
            assert_eq!(direct.valence(d), 2, "cycle vertex {d:?}");
        }
        let g1 = wh_at_vertex(&p, &Word::identity());
        let g2 = wh_at_vertex(&p, &a);
        let spliced = g1
            .splice(&g2, &Direction::new(Word::identity(), Letter::parse('a').unwrap()))
            .unwrap();
        assert_eq!(spliced, direct);
    }

    #[test]
    fn splice_order_is_immaterial() {
        let p = pat(2, &["ab", "aB"]);
        let b1 = Subtree::ball(2, 1);
        let direct = wh_over(&p, &b1);
        // Build by splicing single vertices onto the center in two orders.
        let center = wh_at_vertex(&p, &Word::identity());
        let leaves = ["a", "A", "b", "B"];
        let mut acc = center.clone();
        for l in leaves {
            let v = Word::parse(l, 2).unwrap();
            let e = Direction::new(Word::identity(), v.letters()[0]);
            acc = acc.splice(&wh_at_vertex(&p, &v), &e).unwrap();
        }
        assert_eq!(acc, direct);
        let mut acc2 = center;
        for l in leaves.iter().rev() {
            let v = Word::parse(l, 2).unwrap();
            let e = Direction::new(Word::identity(), v.letters()[0]);
            acc2 = acc2.splice(&wh_at_vertex(&p, &v), &e).unwrap();
        }
        assert_eq!(acc2, direct);
    }

    #[test]
    fn splice_rejects_bad_inputs() {
        let p = pat(2, &["ab", "aB"]);
        let g1 = wh_at_vertex(&p, &Word::identity());
        let a_edge = Direction::new(Word::identity(), Letter::parse('a').unwrap());
        // Same support on both sides.
        assert!(matches!(
            g1.splice(&g1.clone(), &a_edge),
            Err(WhError::SupportsNotAdjacent)
        ));
        // Supports not joined by the given edge.
        let far = wh_at_vertex(&p, &Word::parse("bb", 2).unwrap());
        assert!(matches!(
            g1.splice(&far, &a_edge),
            Err(WhError::SupportsNotAdjacent)
        ));
        // Mismatched incident lines: different patterns.
        let other = wh_at_vertex(&pat(2, &["b"]), &Word::parse("a", 2).unwrap());
        assert!(matches!(
            g1.splice(&other, &a_edge),
            Err(WhError::LineMismatch(_))
        ));
    }

    #[test]
    fn delete_node_keeps_loose_ends() {
        let p = pat(2, &["abb"]);
        let g = wh_at_vertex(&p, &Word::identity());
        let cut = g.delete_node(&base_dir('b')).unwrap();
        assert_eq!(cut.components().len(), 2);
        assert_eq!(cut.loose_ends_at(&base_dir('b')).len(), 2);
        // Deleting the other cut vertex frees the {b, B} edge.
        let cut2 = cut.delete_node(&base_dir('B')).unwrap();
        assert_eq!(cut2.free_edge_components().len(), 1);
        assert_eq!(cut2.components().len(), 3);
        assert!(matches!(
            cut2.delete_node(&base_dir('b')),
            Err(WhError::NotANode(_))
        ));
    }

    #[test]
    fn delete_lines_and_closed_deletion() {
        let p = pat(2, &["b", "abAB"]);
        let g = wh_at_vertex(&p, &Word::identity());
        assert_eq!(g.edges().len(), 5);
        let axis = Line::new(
            crate::words::CyclicWord::parse("b", 2).unwrap(),
            &Word::identity(),
        );
        // Interior deletion leaves the commutator 4-cycle connected.
        let open = g.delete_lines(&[axis.clone()].into_iter().collect());
        assert_eq!(open.edges().len(), 4);
        assert_eq!(open.components().len(), 1);
        // Closed deletion also removes the nodes b, B and disconnects.
        let closed = g.delete_line_closed(&axis).unwrap();
        assert_eq!(closed.nodes().len(), 2);
        assert_eq!(closed.components().len(), 2);
        assert_eq!(closed.loose_ends().len(), 4);
        assert!(closed.delete_line_closed(&axis).is_err());
    }

    #[test]
    fn valence_counts_lines_through_edge() {
        let p = pat(2, &["ab", "aB"]);
        let x = Subtree::ball(2, 1);
        let g = wh_over(&p, &x);
        for d in g.nodes() {
            let through = p.lines_through_edge(d);
            assert_eq!(g.valence(d), through.len(), "node {d:?}");
        }
        // End count matches twice the edges plus loose ends.
        let total: usize = g.nodes().iter().map(|d| g.valence(d)).sum();
        assert_eq!(total, 2 * g.edges().len() - g.loose_ends().len());
    }

    #[test]
    fn partition_blocks_are_canonical() {
        let p = pat(2, &["a", "b", "abAB"]);
        let lines: Vec<Line> = p
            .lines_through_vertex(&Word::identity())
            .into_iter()
            .map(|(l, _, _)| l)
            .collect();
        assert_eq!(lines.len(), 6);
        let coarse = NodePartition::group_by(lines.iter().cloned(), |_| 0);
        assert!(coarse.is_trivial());
        let fine = NodePartition::group_by(lines.iter().cloned(), |l| l.clone());
        assert_eq!(fine.len(), 6);
        assert!(lines.iter().all(|l| fine.is_singleton(l)));
        assert_eq!(fine.ground(), lines.iter().cloned().collect());
        // Empty blocks are dropped and order is immaterial.
        let rebuilt = NodePartition::from_blocks(vec![BTreeSet::new(), fine.ground()]);
        assert_eq!(rebuilt, coarse);
    }

    #[test]
    fn partition_join_coarsens_by_overlap() {
        let p = pat(2, &["a", "b", "abAB"]);
        let lines: Vec<Line> = p
            .lines_through_vertex(&Word::identity())
            .into_iter()
            .map(|(l, _, _)| l)
            .collect();
        let pos = |l: &Line| lines.iter().position(|m| m == l).unwrap();
        // {01}{23}{45} joined with {0}{12}{3}{4}{5} chains 0-1-2-3 together.
        let x = NodePartition::group_by(lines.iter().cloned(), |l| pos(l) / 2);
        let y = NodePartition::group_by(lines.iter().cloned(), |l| match pos(l) {
            1 | 2 => 10,
            k => k,
        });
        let joined = x.join(&y);
        assert_eq!(joined.len(), 2);
        assert_eq!(joined.block_of(&lines[0]), joined.block_of(&lines[3]));
        assert_ne!(joined.block_of(&lines[0]), joined.block_of(&lines[4]));
        assert_eq!(joined.block_of(&lines[4]), joined.block_of(&lines[5]));
    }
}
