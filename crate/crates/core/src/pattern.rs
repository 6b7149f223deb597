//! Line patterns and the tree geometry of their lines.
//!
//! A pattern is a finite set of cyclic words w1..wk over a fixed basis; the
//! associated family of lines consists of all cosets g<wi>. Vertices of the
//! Cayley tree are identified with reduced words, the edge between v and
//! v*x is labeled by the direction (v, x).

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::words::{CyclicWord, Letter, WhiteheadAut, Word, WordError};

#[derive(Debug, Error)]
pub enum PatternError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("pattern is empty after discarding trivial words")]
    Empty,
    #[error("basis rank {0} cannot hold generator index {1}")]
    RankTooSmall(usize, usize),
}

/// A vertex of the Cayley tree: the reduced word spelling the geodesic from
/// the base vertex.
pub type TreeVertex = Word;

/// A direction at a vertex: the germ of the edge from `from` toward
/// `from * letter`. Directions are in bijection with oriented edges.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Direction {
    pub from: TreeVertex,
    pub letter: Letter,
}

impl Direction {
    pub fn new(from: TreeVertex, letter: Letter) -> Direction {
        Direction { from, letter }
    }

    pub fn head(&self) -> TreeVertex {
        self.from.mul_letter(self.letter)
    }

    /// Same edge seen from the other end.
    pub fn reversed(&self) -> Direction {
        Direction {
            from: self.head(),
            letter: self.letter.inverse(),
        }
    }

    /// Canonical unoriented form: the orientation whose `from` is closer to
    /// the base vertex.
    pub fn canonical_edge(&self) -> Direction {
        let rev = self.reversed();
        if self.from.len() <= rev.from.len() {
            self.clone()
        } else {
            rev
        }
    }

    pub fn translate(&self, g: &Word) -> Direction {
        Direction {
            from: g.mul(&self.from),
            letter: self.letter,
        }
    }
}

impl fmt::Debug for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.from.text(), self.letter.render())
    }
}

/// An unoriented edge of the tree, stored in canonical orientation.
pub type TreeEdge = Direction;

/// One line of the pattern: the coset `rep * <gen>`, recorded by its
/// canonical coset representative (shortest element, shortlex tie-break)
/// and the generator. Equality of the pair is equality of lines.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Line {
    pub gen: CyclicWord,
    pub rep: Word,
}

impl Line {
    /// Canonical form of the coset g<gen>: slide g by powers of gen and keep
    /// the shortlex-least result. Scanning |k| <= |g|/|gen| + 1 suffices:
    /// beyond that range the prefix gen^±1 survives reduction and lengths
    /// grow strictly.
    pub fn new(gen: CyclicWord, g: &Word) -> Line {
        let gl = gen.len() as i64;
        let bound = g.len() as i64 / gl + 1;
        let mut best: Option<Word> = None;
        for k in -bound..=bound {
            let cand = g.mul(&gen.ray_prefix(k * gl));
            if best.as_ref().map_or(true, |b| cand < *b) {
                best = Some(cand);
            }
        }
        Line {
            gen,
            rep: best.unwrap(),
        }
    }

    pub fn translate(&self, h: &Word) -> Line {
        Line::new(self.gen.clone(), &h.mul(&self.rep))
    }

    /// The vertex of the line's geodesic at signed position k, namely
    /// rep * gen^(k/|gen|) read letterwise.
    pub fn point(&self, k: i64) -> TreeVertex {
        self.rep.mul(&self.gen.ray_prefix(k))
    }

    /// Position of the vertex on the line closest to `v`, together with that
    /// vertex (the foot of the perpendicular from v to the line).
    ///
    /// Writing h = rep⁻¹ v, the overlap of h with gen^inf and with
    /// (gen⁻¹)^inf measures how far the geodesic from the line's basepoint
    /// to v runs along the line before leaving it.
    pub fn foot(&self, v: &TreeVertex) -> (i64, TreeVertex) {
        let h = self.rep.inverse().mul(v);
        let fwd = self.gen.match_forward(h.letters()) as i64;
        let bwd = self.gen.match_backward(h.letters()) as i64;
        let k = if fwd >= bwd { fwd } else { -bwd };
        (k, self.point(k))
    }

    /// Whether the line's geodesic passes through v.
    pub fn passes_through(&self, v: &TreeVertex) -> bool {
        self.foot(v).1 == *v
    }

    /// The two directions in which the line leaves the vertex v, where the
    /// line passes through v. Returned as (backward, forward) with respect
    /// to the line's own orientation.
    pub fn directions_at(&self, v: &TreeVertex) -> Option<(Direction, Direction)> {
        let (k, foot) = self.foot(v);
        if foot != *v {
            return None;
        }
        let fwd_letter = self.gen.letter_at(k);
        let bwd_letter = self.gen.letter_at(k - 1).inverse();
        Some((
            Direction::new(v.clone(), bwd_letter),
            Direction::new(v.clone(), fwd_letter),
        ))
    }

    /// Whether the line runs through the unoriented edge `e`, i.e. through
    /// both of its endpoints consecutively.
    pub fn crosses_edge(&self, e: &TreeEdge) -> bool {
        let (k, foot) = self.foot(&e.from);
        if foot != e.from {
            return false;
        }
        self.gen.letter_at(k) == e.letter || self.gen.letter_at(k - 1).inverse() == e.letter
    }

    /// The interval of line positions lying inside the set of vertices,
    /// returned as inclusive endpoints, when nonempty. The vertex set must
    /// be tree-convex for the interval reading to be faithful.
    pub fn clip_to(&self, verts: &BTreeSet<TreeVertex>) -> Option<(i64, i64)> {
        // Find any vertex of the set on the line, then extend both ways.
        let mut seed = None;
        for v in verts {
            let (k, foot) = self.foot(v);
            if foot == *v {
                seed = Some(k);
                break;
            }
        }
        let seed = seed?;
        let mut lo = seed;
        while verts.contains(&self.point(lo - 1)) {
            lo -= 1;
        }
        let mut hi = seed;
        while verts.contains(&self.point(hi + 1)) {
            hi += 1;
        }
        Some((lo, hi))
    }
}

impl fmt::Debug for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}<{}>", self.rep.text(), self.gen.text())
    }
}

/// Report of what the loader did to the input words.
#[derive(Debug, Default, Clone)]
pub struct LoadReport {
    pub cyclically_reduced: Vec<(String, String)>,
    pub dropped_trivial: Vec<String>,
    pub dropped_duplicates: Vec<String>,
    pub replaced_by_root: Vec<(String, String)>,
}

/// A line pattern: distinct canonical cyclic words over a basis of the given
/// rank. Generators are primitive (imprimitive input is replaced by its
/// root, which spans the same family of lines).
#[derive(Clone, PartialEq, Eq)]
pub struct LinePattern {
    rank: usize,
    gens: Vec<CyclicWord>,
}

impl LinePattern {
    pub fn new(rank: usize, words: &[Word]) -> Result<(LinePattern, LoadReport), PatternError> {
        let mut report = LoadReport::default();
        let mut gens: Vec<CyclicWord> = Vec::new();
        let mut seen = BTreeSet::new();
        for word in words {
            let original = word.text();
            let core = match word.cyclic_reduce() {
                Ok(r) => r.core,
                Err(WordError::EmptyWord) => {
                    report.dropped_trivial.push(original);
                    continue;
                }
                Err(e) => return Err(e.into()),
            };
            if core.text() != original {
                report
                    .cyclically_reduced
                    .push((original.clone(), core.text()));
            }
            let (root, e) = core.primitive_root();
            if e > 1 {
                report.replaced_by_root.push((core.text(), root.text()));
            }
            if let Some(i) = root.max_index() {
                if i >= rank {
                    return Err(PatternError::RankTooSmall(rank, i));
                }
            }
            if seen.insert(root.clone()) {
                gens.push(root);
            } else {
                report.dropped_duplicates.push(original);
            }
        }
        if gens.is_empty() {
            return Err(PatternError::Empty);
        }
        gens.sort();
        Ok((LinePattern { rank, gens }, report))
    }

    pub fn parse(rank: usize, texts: &[&str]) -> Result<LinePattern, PatternError> {
        let words = texts
            .iter()
            .map(|t| Word::parse(t, rank))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LinePattern::new(rank, &words)?.0)
    }

    pub fn gens(&self) -> &[CyclicWord] {
        &self.gens
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[CyclicWord] {
        &self.gens
    }

    /// Image pattern under a Whitehead automorphism (same rank).
    pub fn transform(&self, phi: &WhiteheadAut) -> LinePattern {
        let words: Vec<Word> = self
            .gens
            .iter()
            .map(|g| phi.apply(&g.as_word()))
            .collect();
        LinePattern::new(self.rank, &words)
            .expect("automorphism image of a pattern is a pattern")
            .0
    }

    /// Total length of the generators. This is the number of edges of the
    /// Whitehead graph at a vertex.
    pub fn complexity(&self) -> usize {
        self.gens.iter().map(|g| g.len()).sum()
    }

    /// All (line, backward direction, forward direction) incidences at a
    /// vertex. A generator of length m passing through v in j distinct ways
    /// contributes j entries; a position where the line's two directions at
    /// v coincide cannot happen (words are reduced).
    pub fn lines_through_vertex(&self, v: &TreeVertex) -> Vec<(Line, Direction, Direction)> {
        let mut out = Vec::new();
        for gen in &self.gens {
            let m = gen.len() as i64;
            // One incidence per cyclic position p: translate the line so
            // position p sits at v, giving the coset (v * prefix_p⁻¹)<gen>.
            // A geodesic visits a tree vertex once, so incidences of one
            // line at v come from distinct positions of the cyclic word.
            for p in 0..m {
                let shift = gen.ray_prefix(p);
                let line = Line::new(gen.clone(), &v.mul(&shift.inverse()));
                let (bwd, fwd) = line
                    .directions_at(v)
                    .expect("constructed line passes through v");
                out.push((line, bwd, fwd));
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Lines crossing an unoriented edge.
    pub fn lines_through_edge(&self, e: &TreeEdge) -> Vec<Line> {
        let head = e.head();
        let mut out: Vec<Line> = self
            .lines_through_vertex(&e.from)
            .into_iter()
            .filter_map(|(line, _, _)| {
                if line.passes_through(&head) && line.crosses_edge(e) {
                    Some(line)
                } else {
                    None
                }
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

impl fmt::Debug for LinePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(|g| g.text()).collect();
        write!(f, "{{{}}} in F{}", gens.join(", "), self.rank)
    }
}

/// A finite subtree, stored as its vertex set (must be nonempty and
/// connected; constructors guarantee this).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subtree {
    verts: BTreeSet<TreeVertex>,
}

impl Subtree {
    pub fn vertex(v: TreeVertex) -> Subtree {
        Subtree {
            verts: [v].into_iter().collect(),
        }
    }

    pub fn base() -> Subtree {
        Subtree::vertex(Word::identity())
    }

    /// Ball of the given radius around the base vertex.
    pub fn ball(rank: usize, radius: usize) -> Subtree {
        let mut verts = BTreeSet::new();
        let mut frontier = vec![Word::identity()];
        verts.insert(Word::identity());
        for _ in 0..radius {
            let mut next = Vec::new();
            for v in frontier {
                for l in Letter::alphabet(rank) {
                    let u = v.mul_letter(l);
                    if u.len() > v.len() && verts.insert(u.clone()) {
                        next.push(u);
                    }
                }
            }
            frontier = next;
        }
        Subtree { verts }
    }

    /// Geodesic segment between two vertices.
    pub fn segment(u: &TreeVertex, v: &TreeVertex) -> Subtree {
        let mut verts = BTreeSet::new();
        for p in tree_path(u, v) {
            verts.insert(p);
        }
        Subtree { verts }
    }

    /// Convex hull of a nonempty set of vertices: union of pairwise
    /// geodesics (which is already convex in a tree).
    pub fn hull(points: impl IntoIterator<Item = TreeVertex>) -> Option<Subtree> {
        let pts: Vec<TreeVertex> = points.into_iter().collect();
        if pts.is_empty() {
            return None;
        }
        let mut verts = BTreeSet::new();
        for i in 0..pts.len() {
            for j in i..pts.len() {
                for v in tree_path(&pts[i], &pts[j]) {
                    verts.insert(v);
                }
            }
        }
        Some(Subtree { verts })
    }

    pub fn contains(&self, v: &TreeVertex) -> bool {
        self.verts.contains(v)
    }

    pub fn vertices(&self) -> impl Iterator<Item = &TreeVertex> {
        self.verts.iter()
    }

    pub fn vertex_set(&self) -> &BTreeSet<TreeVertex> {
        &self.verts
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    pub fn insert(&mut self, v: TreeVertex) {
        self.verts.insert(v);
    }

    /// Extends with the geodesic to v (keeps connectivity).
    pub fn extend_to(&mut self, v: &TreeVertex) {
        let nearest = self.nearest(v);
        for p in tree_path(&nearest, v) {
            self.verts.insert(p);
        }
    }

    /// The vertex of the subtree closest to v.
    pub fn nearest(&self, v: &TreeVertex) -> TreeVertex {
        self.verts
            .iter()
            .min_by_key(|u| tree_distance(u, v))
            .expect("subtree is nonempty")
            .clone()
    }

    pub fn translate(&self, g: &Word) -> Subtree {
        Subtree {
            verts: self.verts.iter().map(|v| g.mul(v)).collect(),
        }
    }

    /// Interior edges: both endpoints in the subtree.
    pub fn edges(&self) -> Vec<TreeEdge> {
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        for v in &self.verts {
            for (_, l) in neighbors_in(&self.verts, v) {
                let d = Direction::new(v.clone(), l).canonical_edge();
                if seen.insert(d.clone()) {
                    out.push(d);
                }
            }
        }
        out.sort();
        out
    }

    /// Frontier directions: directions from a subtree vertex to a vertex
    /// outside. These are the boundary germs a Whitehead graph over the
    /// subtree uses as nodes.
    pub fn frontier(&self, rank: usize) -> Vec<Direction> {
        let mut out = Vec::new();
        for v in &self.verts {
            for l in Letter::alphabet(rank) {
                if !self.verts.contains(&v.mul_letter(l)) {
                    out.push(Direction::new(v.clone(), l));
                }
            }
        }
        out.sort();
        out
    }

    pub fn diameter(&self) -> usize {
        let mut d = 0;
        for u in &self.verts {
            for v in &self.verts {
                d = d.max(tree_distance(u, v));
            }
        }
        d
    }
}

/// Distance in the Cayley tree: |u⁻¹ v|.
pub fn tree_distance(u: &TreeVertex, v: &TreeVertex) -> usize {
    let lcp = u.common_prefix_len(v);
    (u.len() - lcp) + (v.len() - lcp)
}

/// Vertices of the geodesic from u to v, inclusive.
pub fn tree_path(u: &TreeVertex, v: &TreeVertex) -> Vec<TreeVertex> {
    let lcp = u.common_prefix_len(v);
    let mut out = Vec::new();
    let mut cur = u.clone();
    // Walk up from u to the meet, then down to v.
    out.push(cur.clone());
    for _ in lcp..u.len() {
        cur = Word::reduce(cur.letters()[..cur.len() - 1].iter().copied());
        out.push(cur.clone());
    }
    for i in lcp..v.len() {
        cur = cur.mul_letter(v.letters()[i]);
        out.push(cur.clone());
    }
    out
}

fn neighbors_in<'a>(
    verts: &'a BTreeSet<TreeVertex>,
    v: &'a TreeVertex,
) -> impl Iterator<Item = (TreeVertex, Letter)> + 'a {
    // The rank is not stored here, so take the alphabet from the letters the
    // set itself uses; a neighbor inside the set only differs by such a
    // letter.
    let mut alphabet = BTreeSet::new();
    for w in verts.iter() {
        for l in w.letters() {
            alphabet.insert(*l);
            alphabet.insert(l.inverse());
        }
    }
    alphabet.into_iter().filter_map(move |l| {
        let u = v.mul_letter(l);
        if verts.contains(&u) {
            Some((u, l))
        } else {
            None
        }
    })
}

/// Convex hull of the pairwise interaction sets of the lines: for each pair,
/// the overlap segment (when the lines share vertices) or the bridge path
/// between them (when disjoint). See `interaction`.
pub fn interaction_hull(lines: &[Line]) -> Option<Subtree> {
    let mut points = Vec::new();
    for i in 0..lines.len() {
        for j in (i + 1)..lines.len() {
            let (u, v) = interaction(&lines[i], &lines[j]);
            points.push(u);
            points.push(v);
        }
    }
    Subtree::hull(points)
}

/// Endpoints of the interaction of two distinct lines: the two ends of their
/// overlap segment when they share at least one vertex, otherwise the two
/// feet of the shortest bridge between them. For a single shared vertex both
/// endpoints coincide.
///
/// Distinct lines overlap in a bounded segment (unbounded overlap of the
/// axes of non-commuting elements is impossible; commuting ones share a
/// primitive root and then the cosets coincide).
pub fn interaction(a: &Line, b: &Line) -> (TreeVertex, TreeVertex) {
    // Foot of b's basepoint on a, then descend the distance function
    // d(x, b) along a from there. On a tree the distance from a point
    // moving along a geodesic to another geodesic is unimodal, so local
    // descent finds the global minimum; the minimum set is the overlap
    // (distance 0) or a single closest point.
    let (k0, _) = a.foot(&b.point(0));
    let dist_at = |k: i64| -> usize {
        let p = a.point(k);
        let (_, foot) = b.foot(&p);
        tree_distance(&p, &foot)
    };
    let mut k = k0;
    let mut d = dist_at(k);
    loop {
        let dn = dist_at(k + 1);
        let dp = dist_at(k - 1);
        if dn < d {
            k += 1;
            d = dn;
        } else if dp < d {
            k -= 1;
            d = dp;
        } else {
            break;
        }
    }
    if d > 0 {
        // Unique closest point on a; bridge runs from it to its foot on b.
        let p = a.point(k);
        let (_, q) = b.foot(&p);
        (p, q)
    } else {
        // Walk the zero plateau both ways.
        let mut lo = k;
        while dist_at(lo - 1) == 0 {
            lo -= 1;
        }
        let mut hi = k;
        while dist_at(hi + 1) == 0 {
            hi += 1;
        }
        (a.point(lo), a.point(hi))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(s: &str) -> Word {
        Word::parse(s, 3).unwrap()
    }

    fn cyc(s: &str) -> CyclicWord {
        CyclicWord::parse(s, 3).unwrap()
    }

    #[test]
    fn line_canonical_rep_is_shortest() {
        // Sliding aa by powers of ab only makes it longer.
        let l = Line::new(cyc("ab"), &word("aa"));
        assert_eq!(l.rep.text(), "aa");
        let l = Line::new(cyc("ab"), &word("a"));
        assert_eq!(l.rep.text(), "a");
        // ab(ab)⁻¹ is the identity, the shortest element of the coset.
        let l = Line::new(cyc("ab"), &word("ab"));
        assert_eq!(l.rep.text(), "1");
    }

    #[test]
    fn line_identity_is_coset_identity() {
        // Same coset reached via different offsets gives equal Line values.
        let g = cyc("ab");
        let a = Line::new(g.clone(), &word("abab"));
        let b = Line::new(g.clone(), &Word::identity());
        assert_eq!(a, b);
        // Different cosets stay distinct.
        let c = Line::new(g.clone(), &word("a"));
        assert_ne!(a, c);
    }

    #[test]
    fn foot_and_passes_through() {
        let l = Line::new(cyc("ab"), &Word::identity());
        assert!(l.passes_through(&Word::identity()));
        assert!(l.passes_through(&word("a")));
        assert!(l.passes_through(&word("ab")));
        assert!(l.passes_through(&word("BA")));
        assert!(!l.passes_through(&word("b")));
        let (k, foot) = l.foot(&word("ab"));
        assert_eq!((k, foot.text().as_str()), (2, "ab"));
        let (k, foot) = l.foot(&word("abb"));
        assert_eq!((k, foot.text().as_str()), (2, "ab"));
        let (k, foot) = l.foot(&word("BA"));
        assert_eq!((k, foot.text().as_str()), (-2, "BA"));
    }

    #[test]
    fn directions_at_vertex() {
        let l = Line::new(cyc("ab"), &Word::identity());
        let (bwd, fwd) = l.directions_at(&word("a")).unwrap();
        // At vertex a the line came from 1 (direction A) and continues to ab
        // (direction b).
        assert_eq!(bwd.letter.render(), 'A');
        assert_eq!(fwd.letter.render(), 'b');
        assert!(l.directions_at(&word("b")).is_none());
    }

    #[test]
    fn crosses_edge_checks_consecutive() {
        let l = Line::new(cyc("ab"), &Word::identity());
        let e = Direction::new(Word::identity(), Letter::parse('a').unwrap());
        assert!(l.crosses_edge(&e));
        let e = Direction::new(Word::identity(), Letter::parse('b').unwrap());
        assert!(!l.crosses_edge(&e));
        // Edge between a and ab, seen from either side.
        let e = Direction::new(word("a"), Letter::parse('b').unwrap());
        assert!(l.crosses_edge(&e));
        assert!(l.crosses_edge(&e.reversed()));
    }

    #[test]
    fn loader_normalizes() {
        let words = vec![word("baB"), word("abab"), word("BA"), word("aA")];
        let (p, report) = LinePattern::new(2, &words).unwrap();
        // baB reduces to core a; abab has root ab; BA is the inverse of ab
        // so it collides with the root of abab.
        let gens: Vec<String> = p.generators().iter().map(|g| g.text()).collect();
        assert_eq!(gens, vec!["a", "ab"]);
        assert_eq!(report.dropped_trivial.len(), 1);
        assert_eq!(report.dropped_duplicates.len(), 1);
        assert_eq!(report.replaced_by_root.len(), 1);
    }

    #[test]
    fn lines_through_vertex_counts_occurrences() {
        // Pattern {a}: the single a-axis passes through the base vertex.
        let p = LinePattern::parse(2, &["a"]).unwrap();
        let inc = p.lines_through_vertex(&Word::identity());
        assert_eq!(inc.len(), 1);
        let (line, bwd, fwd) = &inc[0];
        assert_eq!(line.rep.text(), "1");
        assert_eq!(bwd.letter.render(), 'A');
        assert_eq!(fwd.letter.render(), 'a');
        // {abAB}: length 4, one line per position, all distinct cosets.
        let p = LinePattern::parse(2, &["abAB"]).unwrap();
        let inc = p.lines_through_vertex(&Word::identity());
        assert_eq!(inc.len(), 4);
        let reps: BTreeSet<String> = inc.iter().map(|(l, _, _)| l.rep.text()).collect();
        assert_eq!(reps.len(), 4, "four distinct commutator lines");
    }

    #[test]
    fn lines_through_edge_examples() {
        let p = LinePattern::parse(2, &["a", "b"]).unwrap();
        let e = Direction::new(Word::identity(), Letter::parse('a').unwrap());
        let through = p.lines_through_edge(&e);
        assert_eq!(through.len(), 1);
        assert_eq!(through[0].gen.text(), "a");
        // The b-axis at vertex a crosses the edge (a, b), not (1, a).
        let e2 = Direction::new(word("a"), Letter::parse('b').unwrap());
        let through = p.lines_through_edge(&e2);
        assert_eq!(through.len(), 1);
        assert_eq!(through[0].gen.text(), "b");
        assert_eq!(through[0].rep.text(), "a");
    }

    #[test]
    fn subtree_ball_and_frontier() {
        let b1 = Subtree::ball(2, 1);
        assert_eq!(b1.len(), 5);
        // Each of the 4 leaves has 3 outward directions; the base has none.
        assert_eq!(b1.frontier(2).len(), 12);
        assert_eq!(b1.edges().len(), 4);
        assert_eq!(b1.diameter(), 2);
    }

    #[test]
    fn subtree_segment_path() {
        let s = Subtree::segment(&word("a"), &word("b"));
        let texts: BTreeSet<String> = s.vertices().map(|v| v.text()).collect();
        assert_eq!(
            texts,
            ["a", "1", "b"].iter().map(|s| s.to_string()).collect()
        );
        assert_eq!(tree_distance(&word("a"), &word("b")), 2);
        assert_eq!(tree_path(&word("aab"), &word("aac")).len(), 3);
    }

    #[test]
    fn interaction_overlap_and_bridge() {
        // a-axis and b-axis meet exactly at the base vertex.
        let la = Line::new(cyc("a"), &Word::identity());
        let lb = Line::new(cyc("b"), &Word::identity());
        let (u, v) = interaction(&la, &lb);
        assert_eq!((u.text().as_str(), v.text().as_str()), ("1", "1"));
        // a-axis and b·a-axis: bridge from 1 to b.
        let lba = Line::new(cyc("a"), &word("b"));
        let (u, v) = interaction(&la, &lba);
        assert_eq!((u.text().as_str(), v.text().as_str()), ("1", "b"));
        // ab-axis and a-axis overlap along the edge from 1 to a.
        let lab = Line::new(cyc("ab"), &Word::identity());
        let (u, v) = interaction(&lab, &la);
        let ends: BTreeSet<String> = [u.text(), v.text()].into_iter().collect();
        assert_eq!(ends, ["1", "a"].iter().map(|s| s.to_string()).collect());
    }

    #[test]
    fn clip_line_to_subtree() {
        let l = Line::new(cyc("ab"), &Word::identity());
        let ball = Subtree::ball(2, 2);
        let (lo, hi) = l.clip_to(ball.vertex_set()).unwrap();
        assert_eq!((lo, hi), (-2, 2));
        let far = Line::new(cyc("b"), &word("aaa"));
        assert!(far.clip_to(Subtree::ball(2, 1).vertex_set()).is_none());
    }
}
