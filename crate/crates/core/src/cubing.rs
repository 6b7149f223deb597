//! Dual cube complex of a cut set catalog over a finite window. The window
//! collects the finitely many translated cut set instances near the base
//! vertex; each instance contributes one coordinate with two sides. Vertices
//! come from majority votes of bad point triples, edges from single
//! coordinate flips, and higher cubes are filled wherever all corners exist.
//! On top of the complex sit hyperplane crossing statistics, a tree test,
//! quasi-isometry diagnostics, and the end-to-end classification pipeline.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rayon::prelude::*;

use crate::cutsets::{
    detect_cut_pairs, enumerate, has_cut_point, letter_toward, Catalog, CutError, CutPairWitness,
    CutPairs, CutSet, DEFAULT_DEPTH_CAP,
};
use crate::pattern::{tree_distance, Direction, Line, LinePattern, Subtree, TreeEdge, TreeVertex};
use crate::reduction::{decomposition_connectivity, minimize, Connectivity, ReductionTrace};
use crate::whitehead::wh_at_vertex;
use crate::words::{Letter, Word};

/// One translated cut set in the window: the catalog orbit it comes from,
/// the translating element, and the carried cut set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Instance {
    pub orbit: usize,
    pub shift: Word,
    pub cut: CutSet,
}

/// The finitely many cut set instances whose pruned cores meet the ball of
/// the given radius, each one a coordinate of the cube complex, together
/// with the pairwise half-space intersection tables that drive every
/// consistency check.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Window {
    pub radius: usize,
    pub rank: usize,
    pub instances: Vec<Instance>,
    /// Longest distance from the base vertex to any instance pruned core
    /// vertex; rays must outrun it to read their sides off.
    max_core_depth: usize,
    /// For i < j, whether side ε of instance i and side δ of instance j
    /// share boundary points, flattened at `pair_index(i, j)`.
    tables: Vec<[[bool; 2]; 2]>,
}

/// Side of the cut set seen from a vertex strictly outside its pruned core:
/// the side of the core's gate direction toward that vertex.
fn side_toward(cut: &CutSet, target: &TreeVertex) -> u8 {
    let u = cut.pruned_core.nearest(target);
    debug_assert_ne!(&u, target, "target must lie outside the pruned core");
    let d = Direction::new(u.clone(), letter_toward(&u, target));
    cut.sides[&d]
}

/// Side of the whole subtree hanging off a direction that points away from
/// the pruned core. Frontier directions of the core read their side map
/// entry; farther directions read the gate.
fn direction_side(cut: &CutSet, d: &Direction) -> u8 {
    if let Some(s) = cut.sides.get(d) {
        *s
    } else {
        side_toward(cut, &d.head())
    }
}

/// Which of the four side intersections of two cut sets are inhabited.
/// Every boundary point escapes through exactly one frontier direction of
/// the joint hull, and both side assignments are constant beyond it.
fn half_space_table(a: &CutSet, b: &CutSet, rank: usize) -> [[bool; 2]; 2] {
    let hull = Subtree::hull(
        a.pruned_core
            .vertices()
            .chain(b.pruned_core.vertices())
            .cloned(),
    )
    .expect("pruned cores are nonempty");
    let mut t = [[false; 2]; 2];
    for d in hull.frontier(rank) {
        t[direction_side(a, &d) as usize][direction_side(b, &d) as usize] = true;
    }
    t
}

impl Window {
    fn pair_index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j);
        let n = self.instances.len();
        i * n - i * (i + 1) / 2 + (j - i - 1)
    }

    /// Whether choosing side `si` for instance i and `sj` for instance j is
    /// simultaneously inhabited.
    pub fn pair_ok(&self, i: usize, j: usize, si: u8, sj: u8) -> bool {
        if i == j {
            return si == sj;
        }
        if i < j {
            self.tables[self.pair_index(i, j)][si as usize][sj as usize]
        } else {
            self.tables[self.pair_index(j, i)][sj as usize][si as usize]
        }
    }

    /// Whether the two instances cross: all four side combinations are
    /// inhabited.
    pub fn instances_cross(&self, i: usize, j: usize) -> bool {
        i != j
            && (0..2).all(|a| (0..2).all(|b| self.pair_ok(i, j, a as u8, b as u8)))
    }

    /// Full Sageev consistency of an orientation: every pairwise side choice
    /// is inhabited.
    pub fn is_consistent(&self, orientation: &[u8]) -> bool {
        let n = self.instances.len();
        (0..n).all(|i| (i + 1..n).all(|j| self.pair_ok(i, j, orientation[i], orientation[j])))
    }
}

/// Collects, up to nothing, every translate of every catalog orbit whose
/// pruned core meets the ball of the given radius, deduplicated by line set
/// and ordered canonically.
pub fn instances_in_window(catalog: &Catalog, radius: usize) -> Window {
    let rank = catalog.basis_rank;
    let mut dedup: BTreeMap<Vec<Line>, Instance> = BTreeMap::new();
    for entry in &catalog.entries {
        let diam = entry.cut.pruned_core.diameter();
        let reach = Subtree::ball(rank, radius + diam);
        for t in reach.vertices() {
            let cut = entry.cut.translate(t);
            if cut.pruned_core.vertices().all(|v| v.len() > radius) {
                continue;
            }
            let key: Vec<Line> = cut.lines.iter().cloned().collect();
            dedup.entry(key).or_insert(Instance {
                orbit: entry.id,
                shift: t.clone(),
                cut,
            });
        }
    }
    let instances: Vec<Instance> = dedup.into_values().collect();
    let max_core_depth = instances
        .iter()
        .flat_map(|inst| inst.cut.pruned_core.vertices())
        .map(|v| v.len())
        .max()
        .unwrap_or(0);
    let n = instances.len();
    let mut pairs = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            pairs.push((i, j));
        }
    }
    let tables: Vec<[[bool; 2]; 2]> = pairs
        .par_iter()
        .map(|(i, j)| half_space_table(&instances[*i].cut, &instances[*j].cut, rank))
        .collect();
    Window {
        radius,
        rank,
        instances,
        max_core_depth,
        tables,
    }
}

/// Three rays leaving a common anchor in distinct directions, with
/// deterministic aperiodic tails. Aperiodicity keeps each ray off every
/// pattern line, whose ends are eventually periodic.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BadTriple {
    pub anchor: TreeVertex,
    pub firsts: [Letter; 3],
}

/// The canonical bad triple at a vertex: rays leaving through the three
/// lexicographically smallest directions.
pub fn bad_triple_at(rank: usize, anchor: &TreeVertex) -> BadTriple {
    assert!(rank >= 2, "three distinct directions need rank at least two");
    let mut it = Letter::alphabet(rank);
    let firsts = [
        it.next().unwrap(),
        it.next().unwrap(),
        it.next().unwrap(),
    ];
    BadTriple {
        anchor: anchor.clone(),
        firsts,
    }
}

/// The aperiodic tail schedule: x y x y² x y³ …, where at every step x and y
/// are the two lexicographically smallest non-backtracking letters. The x
/// blocks appear at unbounded gaps, so no tail is eventually periodic and no
/// ray converges to a line end.
fn bad_ray(rank: usize, t: &BadTriple, which: usize, len: usize) -> Vec<TreeVertex> {
    let mut out = Vec::with_capacity(len + 1);
    out.push(t.anchor.clone());
    let mut last = t.firsts[which];
    let mut v = t.anchor.mul_letter(last);
    out.push(v.clone());
    let mut run = 1usize;
    let mut in_run = 0usize;
    let mut on_x = true;
    while out.len() <= len {
        let mut avail = Letter::alphabet(rank).filter(|l| *l != last.inverse());
        let x = avail.next().expect("rank is at least one");
        let y = avail.next().expect("rank is at least two");
        let c = if on_x { x } else { y };
        if on_x {
            on_x = false;
            in_run = 0;
        } else {
            in_run += 1;
            if in_run == run {
                on_x = true;
                run += 1;
            }
        }
        v = v.mul_letter(c);
        last = c;
        out.push(v.clone());
    }
    out
}

/// Side of a ray with respect to a cut set: the side of the direction
/// through which the ray finally leaves the pruned core, or of the gate
/// toward the whole ray when it never enters.
fn ray_side(cut: &CutSet, ray: &[TreeVertex]) -> u8 {
    let last_inside = ray
        .iter()
        .rposition(|v| cut.pruned_core.contains(v));
    match last_inside {
        Some(k) => {
            assert!(k + 1 < ray.len(), "ray ends inside a pruned core");
            let d = Direction::new(ray[k].clone(), letter_toward(&ray[k], &ray[k + 1]));
            cut.sides[&d]
        }
        None => side_toward(cut, &ray[0]),
    }
}

/// A cubing vertex: one side per window instance.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct CubingVertex {
    pub orientation: Vec<u8>,
}

/// Orients every instance by the majority vote of the triple's three rays.
/// Two rays always agree, and a point of the space would vote the same way
/// on every instance separating it from neither ray.
pub fn vertex_from_bad_triple(w: &Window, t: &BadTriple) -> CubingVertex {
    let len = t.anchor.len() + w.max_core_depth + 2;
    let rays: Vec<Vec<TreeVertex>> = (0..3).map(|k| bad_ray(w.rank, t, k, len)).collect();
    let orientation: Vec<u8> = w
        .instances
        .iter()
        .map(|inst| {
            let votes: u8 = rays.iter().map(|r| ray_side(&inst.cut, r)).sum();
            u8::from(votes >= 2)
        })
        .collect();
    CubingVertex { orientation }
}

/// An edge of the cube complex: the two vertex indices and the coordinate
/// they differ in.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct SkeletonEdge {
    pub ends: [usize; 2],
    pub coordinate: usize,
}

/// The 1-skeleton: vertices closed under consistent single coordinate
/// flips, reached from the seed vertices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Skeleton {
    pub window_radius: usize,
    pub vertices: Vec<CubingVertex>,
    pub edges: Vec<SkeletonEdge>,
    /// First seed vertex id built at each anchor.
    pub seed_anchors: BTreeMap<TreeVertex, usize>,
}

/// Grows the vertex set from the seeds by flipping one coordinate at a time,
/// keeping exactly the flips whose result stays pairwise consistent. A flip
/// is admissible precisely when the flipped side is not forced by a strictly
/// smaller half-space, so this is the minimal-coordinate rule.
pub fn build_skeleton(w: &Window, seeds: &[BadTriple]) -> Skeleton {
    let n = w.instances.len();
    let mut ids: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
    let mut vertices: Vec<CubingVertex> = Vec::new();
    let mut seed_anchors = BTreeMap::new();
    let mut queue: VecDeque<usize> = VecDeque::new();
    for t in seeds {
        let v = vertex_from_bad_triple(w, t);
        assert!(
            w.is_consistent(&v.orientation),
            "majority vote produced an inconsistent orientation"
        );
        let id = *ids.entry(v.orientation.clone()).or_insert_with(|| {
            vertices.push(v.clone());
            queue.push_back(vertices.len() - 1);
            vertices.len() - 1
        });
        seed_anchors.entry(t.anchor.clone()).or_insert(id);
    }
    let mut edges: BTreeSet<SkeletonEdge> = BTreeSet::new();
    while let Some(id) = queue.pop_front() {
        let o = vertices[id].orientation.clone();
        for i in 0..n {
            let flipped = 1 - o[i];
            let ok = (0..n).all(|j| j == i || w.pair_ok(i, j, flipped, o[j]));
            if !ok {
                continue;
            }
            let mut o2 = o.clone();
            o2[i] = flipped;
            let other = match ids.get(&o2) {
                Some(k) => *k,
                None => {
                    vertices.push(CubingVertex {
                        orientation: o2.clone(),
                    });
                    ids.insert(o2, vertices.len() - 1);
                    queue.push_back(vertices.len() - 1);
                    vertices.len() - 1
                }
            };
            edges.insert(SkeletonEdge {
                ends: [id.min(other), id.max(other)],
                coordinate: i,
            });
        }
    }
    Skeleton {
        window_radius: w.radius,
        vertices,
        edges: edges.into_iter().collect(),
        seed_anchors,
    }
}

/// A filled cube of dimension ≥ 2: its flipping coordinates and its 2^d
/// corner vertex ids.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Cube {
    pub coordinates: Vec<usize>,
    pub vertices: Vec<usize>,
}

/// The cube complex: the skeleton plus every filled cube.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CubeComplex {
    pub window_radius: usize,
    pub vertices: Vec<CubingVertex>,
    pub edges: Vec<SkeletonEdge>,
    pub seed_anchors: BTreeMap<TreeVertex, usize>,
    pub cubes: Vec<Cube>,
}

impl CubeComplex {
    pub fn squares(&self) -> impl Iterator<Item = &Cube> {
        self.cubes.iter().filter(|c| c.coordinates.len() == 2)
    }

    pub fn vertex_valence(&self, id: usize) -> usize {
        self.edges.iter().filter(|e| e.ends.contains(&id)).count()
    }
}

/// Glues in a d-cube wherever all 2^d corners obtained by flipping d
/// coordinates off one vertex exist; faces of a filled cube are then filled
/// too, so the filling is inductive.
pub fn fill_cubes(s: &Skeleton) -> CubeComplex {
    let ids: BTreeMap<&[u8], usize> = s
        .vertices
        .iter()
        .enumerate()
        .map(|(i, v)| (v.orientation.as_slice(), i))
        .collect();
    let mut incident: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); s.vertices.len()];
    for e in &s.edges {
        incident[e.ends[0]].insert(e.coordinate);
        incident[e.ends[1]].insert(e.coordinate);
    }
    let mut cubes: BTreeSet<Cube> = BTreeSet::new();
    for (vid, vert) in s.vertices.iter().enumerate() {
        let coords: Vec<usize> = incident[vid].iter().copied().collect();
        let deg = coords.len();
        // Subsets of the flippable coordinates, sizes 2 and up. Degrees are
        // small: a coordinate is flippable only when its instance is not
        // shielded by a strictly smaller one.
        for mask in 1u64..(1u64 << deg.min(20)) {
            if mask.count_ones() < 2 {
                continue;
            }
            let chosen: Vec<usize> = (0..deg)
                .filter(|k| mask & (1 << k) != 0)
                .map(|k| coords[k])
                .collect();
            let mut corner_ids = Vec::with_capacity(1 << chosen.len());
            let mut all = true;
            'corners: for sub in 0u64..(1u64 << chosen.len()) {
                let mut o = vert.orientation.clone();
                for (b, c) in chosen.iter().enumerate() {
                    if sub & (1 << b) != 0 {
                        o[*c] = 1 - o[*c];
                    }
                }
                match ids.get(o.as_slice()) {
                    Some(k) => corner_ids.push(*k),
                    None => {
                        all = false;
                        break 'corners;
                    }
                }
            }
            if all {
                corner_ids.sort_unstable();
                cubes.insert(Cube {
                    coordinates: chosen,
                    vertices: corner_ids,
                });
            }
        }
    }
    CubeComplex {
        window_radius: s.window_radius,
        vertices: s.vertices.clone(),
        edges: s.edges.clone(),
        seed_anchors: s.seed_anchors.clone(),
        cubes: cubes.into_iter().collect(),
    }
}

/// Pairs of instances spanning at least one square.
pub fn hyperplane_crossings(c: &CubeComplex) -> BTreeSet<(usize, usize)> {
    c.squares()
        .map(|q| (q.coordinates[0], q.coordinates[1]))
        .collect()
}

/// Number of crossing partners per instance, from the square census.
pub fn crossing_degrees(c: &CubeComplex, instance_count: usize) -> Vec<usize> {
    let cross = hyperplane_crossings(c);
    let mut deg = vec![0usize; instance_count];
    for (i, j) in cross {
        deg[i] += 1;
        deg[j] += 1;
    }
    deg
}

/// Whether the complex is a tree: no filled cubes, connected, and exactly
/// one fewer edge than vertices.
pub fn is_tree(c: &CubeComplex) -> bool {
    if !c.cubes.is_empty() {
        return false;
    }
    let n = c.vertices.len();
    if n == 0 {
        return false;
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut components = n;
    for e in &c.edges {
        let a = find(&mut parent, e.ends[0]);
        let b = find(&mut parent, e.ends[1]);
        if a != b {
            parent[a] = b;
            components -= 1;
        }
    }
    components == 1 && c.edges.len() == n - 1
}

/// One sampled tree-edge pair in the quasi-isometry report.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QiSample {
    pub first: TreeEdge,
    pub second: TreeEdge,
    pub tree_distance: usize,
    pub complex_distance: usize,
}

/// Empirical comparison of tree distances with complex distances between
/// hyperplane carriers, plus the carrier size bound check.
#[derive(Clone, PartialEq, Debug)]
pub struct QiReport {
    pub samples: Vec<QiSample>,
    /// Largest ratio complex distance / tree distance over the sample.
    pub empirical_c: f64,
    /// Tree distance never exceeded complex distance on the sample.
    pub lower_bound_ok: bool,
    /// Complex distance is monotone in tree distance on the sample.
    pub monotone: bool,
    pub max_carrier_size: usize,
    /// 2^(k+1) for k the largest crossing degree: the theoretical cap on a
    /// hyperplane carrier.
    pub carrier_bound: usize,
}

fn hamming(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

fn edge_pair_distance(a: &TreeEdge, b: &TreeEdge) -> usize {
    let av = [a.from.clone(), a.head()];
    let bv = [b.from.clone(), b.head()];
    av.iter()
        .flat_map(|x| bv.iter().map(move |y| tree_distance(x, y)))
        .min()
        .unwrap()
}

/// Samples tree edges deep inside the window, maps each to the carrier of
/// its edge cut set's hyperplane, and compares distances. Distances in the
/// complex count the coordinates two vertices disagree on, which is the
/// hyperplanes separating them.
pub fn qi_diagnostics(p: &LinePattern, c: &CubeComplex, w: &Window) -> QiReport {
    let by_lines: BTreeMap<&BTreeSet<Line>, usize> = w
        .instances
        .iter()
        .enumerate()
        .map(|(i, inst)| (&inst.cut.lines, i))
        .collect();
    let mut carriers: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for e in &c.edges {
        let entry = carriers.entry(e.coordinate).or_default();
        entry.insert(e.ends[0]);
        entry.insert(e.ends[1]);
    }
    let max_core_diam = w
        .instances
        .iter()
        .map(|i| i.cut.pruned_core.diameter())
        .max()
        .unwrap_or(0);
    let sample_radius = w.radius.saturating_sub(max_core_diam + 2).max(1);
    let sample_edges: Vec<TreeEdge> = Subtree::ball(w.rank, sample_radius + 1).edges();
    let mut located: Vec<(TreeEdge, usize)> = Vec::new();
    for e in sample_edges {
        let family: BTreeSet<Line> = p.lines_through_edge(&e).into_iter().collect();
        if let Some(idx) = by_lines.get(&family) {
            if carriers.contains_key(idx) {
                located.push((e, *idx));
            }
        }
    }
    let mut samples = Vec::new();
    for i in 0..located.len() {
        for j in i + 1..located.len() {
            let (e1, i1) = &located[i];
            let (e2, i2) = &located[j];
            let d_t = edge_pair_distance(e1, e2);
            let d_x = carriers[i1]
                .iter()
                .flat_map(|v| {
                    carriers[i2].iter().map(move |u| {
                        hamming(
                            &c.vertices[*v].orientation,
                            &c.vertices[*u].orientation,
                        )
                    })
                })
                .min()
                .unwrap();
            samples.push(QiSample {
                first: e1.clone(),
                second: e2.clone(),
                tree_distance: d_t,
                complex_distance: d_x,
            });
        }
    }
    let empirical_c = samples
        .iter()
        .filter(|s| s.tree_distance > 0)
        .map(|s| s.complex_distance as f64 / s.tree_distance as f64)
        .fold(0.0f64, f64::max);
    let lower_bound_ok = samples
        .iter()
        .all(|s| s.tree_distance <= s.complex_distance);
    let monotone = samples.iter().all(|s1| {
        samples
            .iter()
            .all(|s2| s1.tree_distance >= s2.tree_distance || s1.complex_distance <= s2.complex_distance)
    });
    let max_carrier_size = carriers.values().map(|c| c.len()).max().unwrap_or(0);
    let k = crossing_degrees(c, w.instances.len())
        .into_iter()
        .max()
        .unwrap_or(0);
    QiReport {
        samples,
        empirical_c,
        lower_bound_ok,
        monotone,
        max_carrier_size,
        carrier_bound: 1 << (k + 1),
    }
}

/// Knobs of the classification pipeline. Radii left unset fall back to the
/// documented defaults: max size b = largest edge family, core radius
/// D = 2·(max generator length)·(b−1), window radius ρ = D + 2. The default
/// radii are safe but far beyond what finishes quickly; real runs pass
/// explicit values.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClassifyOptions {
    pub depth_cap: usize,
    pub max_size: Option<usize>,
    pub core_radius: Option<usize>,
    pub window_radius: Option<usize>,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            depth_cap: DEFAULT_DEPTH_CAP,
            max_size: None,
            core_radius: None,
            window_radius: None,
        }
    }
}

/// Everything the rigid verdict is based on.
#[derive(Clone, PartialEq, Debug)]
pub struct RigidReport {
    pub catalog: Catalog,
    pub window_size: usize,
    pub complex: CubeComplex,
    pub tree: bool,
    pub qi: QiReport,
}

/// Final verdict on the decomposition space of a pattern.
#[derive(Clone, PartialEq, Debug)]
pub enum Classification {
    Disconnected {
        sides: (BTreeSet<Letter>, BTreeSet<Letter>),
    },
    HasCutPoint {
        axis: crate::words::CyclicWord,
    },
    /// Flexible: the pattern group has infinite index in its
    /// quasi-isometry group.
    HasCutPair {
        witness: CutPairWitness,
    },
    /// The space is a circle; all circle patterns are equivalent to the
    /// commutator pattern.
    Circle,
    Rigid(Box<RigidReport>),
    Inconclusive {
        depth: usize,
    },
}

/// The classification verdict together with the minimization trace that
/// produced the pattern it was computed on.
#[derive(Clone, Debug)]
pub struct Classified {
    pub trace: ReductionTrace,
    pub verdict: Classification,
}

fn is_circle_graph(p: &LinePattern) -> bool {
    let g = wh_at_vertex(p, &Word::identity());
    g.components().len() == 1 && g.nodes().iter().all(|d| g.valence(d) == 2)
}

fn default_max_size(p: &LinePattern) -> usize {
    Letter::alphabet(p.rank())
        .map(|x| {
            let e = Direction::new(Word::identity(), x).canonical_edge();
            p.lines_through_edge(&e).len()
        })
        .max()
        .unwrap_or(3)
        .max(3)
}

/// Full pipeline: minimize, then read connectivity, cut points, the circle
/// shortcut, cut pairs, and finally the catalog and its cubing for the
/// rigid case.
pub fn classify(p: &LinePattern, opts: &ClassifyOptions) -> Classified {
    let trace = minimize(p);
    let q = trace.final_pattern.clone();
    if let Connectivity::Disconnected { sides } = decomposition_connectivity(&q) {
        return Classified {
            trace,
            verdict: Classification::Disconnected { sides },
        };
    }
    match has_cut_point(&q) {
        Ok(Some(axis)) => {
            return Classified {
                trace,
                verdict: Classification::HasCutPoint { axis },
            }
        }
        Ok(None) => {}
        Err(e) => unreachable!("minimized connected pattern rejected: {e}"),
    }
    if is_circle_graph(&q) {
        return Classified {
            trace,
            verdict: Classification::Circle,
        };
    }
    match detect_cut_pairs(&q, opts.depth_cap).expect("pattern was verified minimized") {
        CutPairs::CutPairWitness(witness) => {
            return Classified {
                trace,
                verdict: Classification::HasCutPair { witness },
            }
        }
        CutPairs::Inconclusive { depth } => {
            return Classified {
                trace,
                verdict: Classification::Inconclusive { depth },
            }
        }
        CutPairs::NoCutPairs => {}
    }
    let b = opts.max_size.unwrap_or_else(|| default_max_size(&q));
    let maxgen = q.gens().iter().map(|g| g.len()).max().unwrap_or(1);
    let d = opts.core_radius.unwrap_or(2 * maxgen * (b - 1));
    let rho = opts.window_radius.unwrap_or(d + 2);
    let catalog = match enumerate(&q, b, d) {
        Ok(c) => c,
        Err(CutError::HasCutPoint(axis)) => {
            return Classified {
                trace,
                verdict: Classification::HasCutPoint { axis },
            }
        }
        Err(CutError::HasCutPair(witness)) => {
            return Classified {
                trace,
                verdict: Classification::HasCutPair { witness },
            }
        }
        Err(CutError::CutPairsUnresolved(depth)) => {
            return Classified {
                trace,
                verdict: Classification::Inconclusive { depth },
            }
        }
        Err(e) => unreachable!("enumeration rejected a checked pattern: {e}"),
    };
    let window = instances_in_window(&catalog, rho);
    let seeds: Vec<BadTriple> = Subtree::ball(q.rank(), rho)
        .vertices()
        .map(|v| bad_triple_at(q.rank(), v))
        .collect();
    let skeleton = build_skeleton(&window, &seeds);
    let complex = fill_cubes(&skeleton);
    let tree = is_tree(&complex);
    let qi = qi_diagnostics(&q, &complex, &window);
    Classified {
        trace,
        verdict: Classification::Rigid(Box::new(RigidReport {
            catalog,
            window_size: window.instances.len(),
            complex,
            tree,
            qi,
        })),
    }
}
