//! Exhaustive enumeration of triangulations.
//!
//! The workhorse is a breadth-first traversal of the flip graph from the
//! deterministic seed triangulation, deduplicating states by canonical key.
//! Connectivity of the flip graph of a planar point set is a classical fact
//! the traversal relies on; the independent brute-force oracle (maximal
//! non-crossing edge sets) re-derives small instances from scratch and the
//! test suite checks the two agree.
//!
//! Point deletion and insertion enumerate, for a fixed triangulation, every
//! way of removing or adding one vertex; their result sizes obey Catalan
//! bounds that the verification suites assert.

use crate::formulas::BigCount;
use crate::geom::{
    cone_is_empty_among, general_position_check, orient, point_in_triangle,
    segments_properly_cross, GeomError, Point, PointSet, TrianglePosition,
};
use crate::polygon::enumerate_polygon_triangulations;
use crate::tri::{CanonicalKey, GroundSet, Triangulation, Violation};
use num_traits::Zero;
use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::sync::Arc;
use std::time::{Duration, Instant};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EnumError {
    #[error("state limit {0} exceeded")]
    LimitExceeded(u64),
    #[error("input too large: {what} = {got}, limit {limit}")]
    TooLarge {
        what: &'static str,
        got: usize,
        limit: usize,
    },
    #[error("point set is not in general position: indices {0}, {1}, {2} are collinear")]
    NotGeneralPosition(u32, u32, u32),
    #[error(transparent)]
    Geometry(#[from] GeomError),
    #[error(transparent)]
    Invalid(#[from] Violation),
}

/// How a count was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    FlipBfs,
    BruteForce,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::FlipBfs => "flip_bfs",
            Method::BruteForce => "brute_force",
        }
    }
}

/// Options for [`enumerate_all`].
#[derive(Debug, Clone)]
pub struct EnumOptions {
    pub want_list: bool,
    pub want_degree_sums: bool,
    /// Hard cap on distinct states the traversal may visit.
    pub max_states: u64,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            want_list: false,
            want_degree_sums: false,
            max_states: 10_000_000_000,
        }
    }
}

/// Result of a full enumeration.
#[derive(Debug, Clone)]
pub struct EnumerationResult {
    pub count: BigCount,
    /// i -> V_i: over all triangulations, total interior vertices of degree i.
    pub degree_sums_interior: BTreeMap<u32, BigCount>,
    /// j -> B_j: over all triangulations, total boundary vertices of degree j.
    pub degree_sums_boundary: BTreeMap<u32, BigCount>,
    /// Strictly increasing canonical keys, when requested.
    pub canonical_list: Option<Vec<CanonicalKey>>,
    pub elapsed: Duration,
    pub method: Method,
}

fn check_general_position(ps: &PointSet) -> Result<(), EnumError> {
    if let Some([i, j, k]) = general_position_check(ps) {
        return Err(EnumError::NotGeneralPosition(i, j, k));
    }
    Ok(())
}

/// Visit every triangulation of the ground set exactly once (flip-graph
/// BFS). Returns the number visited. Deterministic visiting order.
pub fn visit_all<F>(
    ground: &Arc<GroundSet>,
    max_states: u64,
    mut visit: F,
) -> Result<u64, EnumError>
where
    F: FnMut(&Triangulation),
{
    let seed = Triangulation::seed(Arc::clone(ground));
    let mut seen: HashSet<CanonicalKey> = HashSet::new();
    seen.insert(seed.canonical_key());
    let mut queue: VecDeque<Triangulation> = VecDeque::new();
    visit(&seed);
    queue.push_back(seed);
    let mut count: u64 = 1;
    while let Some(t) = queue.pop_front() {
        for (_, next) in t.flips() {
            let key = next.canonical_key();
            if seen.insert(key) {
                count += 1;
                if count > max_states {
                    return Err(EnumError::LimitExceeded(max_states));
                }
                visit(&next);
                queue.push_back(next);
            }
        }
    }
    Ok(count)
}

/// Count (and optionally list) all triangulations of the active vertices,
/// aggregating per-degree vertex sums when requested.
pub fn enumerate_all(
    ground: &Arc<GroundSet>,
    opts: &EnumOptions,
) -> Result<EnumerationResult, EnumError> {
    check_general_position(ground.points())?;
    let start = Instant::now();
    let mut vi: BTreeMap<u32, u64> = BTreeMap::new();
    let mut bj: BTreeMap<u32, u64> = BTreeMap::new();
    let mut list: Vec<CanonicalKey> = Vec::new();
    let count = visit_all(ground, opts.max_states, |t| {
        if opts.want_degree_sums {
            let profile = t.degree_profile();
            for (&d, &c) in &profile.v_deg {
                *vi.entry(d).or_insert(0) += c as u64;
            }
            for (&d, &c) in &profile.b_deg {
                *bj.entry(d).or_insert(0) += c as u64;
            }
        }
        if opts.want_list {
            list.push(t.canonical_key());
        }
    })?;
    list.sort_unstable();
    Ok(EnumerationResult {
        count: BigCount::from(count),
        degree_sums_interior: vi
            .into_iter()
            .map(|(k, v)| (k, BigCount::from(v)))
            .collect(),
        degree_sums_boundary: bj
            .into_iter()
            .map(|(k, v)| (k, BigCount::from(v)))
            .collect(),
        canonical_list: if opts.want_list { Some(list) } else { None },
        elapsed: start.elapsed(),
        method: Method::FlipBfs,
    })
}

/// Largest point count the brute-force oracle accepts.
pub const ORACLE_MAX_POINTS: usize = 8;

/// Independent oracle: enumerate all non-crossing edge sets of size
/// `3v + 2b - 3` over all candidate segments. Such sets are exactly the
/// triangulations. Shares only the primitive predicates with the BFS path.
pub fn brute_force_oracle(
    ground: &Arc<GroundSet>,
    opts: &EnumOptions,
) -> Result<EnumerationResult, EnumError> {
    check_general_position(ground.points())?;
    let n = ground.n();
    if n > ORACLE_MAX_POINTS {
        return Err(EnumError::TooLarge {
            what: "points for brute-force oracle",
            got: n,
            limit: ORACLE_MAX_POINTS,
        });
    }
    let start = Instant::now();
    let active = ground.active();
    let mut segs: Vec<(u32, u32)> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            segs.push((active[i], active[j]));
        }
    }
    let m = segs.len();
    assert!(m <= 64, "edge conflicts are stored in u64 masks");
    let mut conflict: Vec<u64> = vec![0; m];
    for a in 0..m {
        for b in (a + 1)..m {
            let (p, q) = segs[a];
            let (r, s) = segs[b];
            if segments_properly_cross(
                ground.point(p),
                ground.point(q),
                ground.point(r),
                ground.point(s),
            ) {
                conflict[a] |= 1 << b;
                conflict[b] |= 1 << a;
            }
        }
    }

    let target = ground.expected_edges();
    let mut found: Vec<Vec<(u32, u32)>> = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    // Depth-first over increasing edge indices; `banned` tracks conflicts
    // with everything chosen so far.
    fn go(
        at: usize,
        banned: u64,
        chosen: &mut Vec<usize>,
        segs: &[(u32, u32)],
        conflict: &[u64],
        target: usize,
        found: &mut Vec<Vec<(u32, u32)>>,
    ) {
        if chosen.len() == target {
            found.push(chosen.iter().map(|&i| segs[i]).collect());
            return;
        }
        let m = segs.len();
        let need = target - chosen.len();
        if at + need > m {
            return;
        }
        for i in at..=(m - need) {
            if banned & (1 << i) != 0 {
                continue;
            }
            chosen.push(i);
            go(
                i + 1,
                banned | conflict[i],
                chosen,
                segs,
                conflict,
                target,
                found,
            );
            chosen.pop();
        }
    }
    go(0, 0, &mut chosen, &segs, &conflict, target, &mut found);

    let mut vi: BTreeMap<u32, u64> = BTreeMap::new();
    let mut bj: BTreeMap<u32, u64> = BTreeMap::new();
    let mut list: Vec<CanonicalKey> = Vec::new();
    for edge_set in &found {
        if opts.want_degree_sums {
            let mut degree: HashMap<u32, u32> = HashMap::new();
            for &(a, b) in edge_set {
                *degree.entry(a).or_insert(0) += 1;
                *degree.entry(b).or_insert(0) += 1;
            }
            for (&vtx, &d) in &degree {
                if ground.is_boundary(vtx) {
                    *bj.entry(d).or_insert(0) += 1;
                } else {
                    *vi.entry(d).or_insert(0) += 1;
                }
            }
        }
        let mut sorted = edge_set.clone();
        sorted.sort_unstable();
        list.push(CanonicalKey::from_edges(&sorted));
    }
    list.sort_unstable();
    let count = BigCount::from(found.len());
    Ok(EnumerationResult {
        count,
        degree_sums_interior: vi
            .into_iter()
            .map(|(k, v)| (k, BigCount::from(v)))
            .collect(),
        degree_sums_boundary: bj
            .into_iter()
            .map(|(k, v)| (k, BigCount::from(v)))
            .collect(),
        canonical_list: if opts.want_list { Some(list) } else { None },
        elapsed: start.elapsed(),
        method: Method::BruteForce,
    })
}

/// All triangulations of the ground set minus `p` that keep every edge of
/// `t` not incident to `p`: the hole left by `p`'s star, clipped to the new
/// hull, is retriangulated in every possible way.
///
/// The result size is between 1 and `C_{deg(p)-2}`.
pub fn delete_point(t: &Triangulation, p: u32) -> Vec<Triangulation> {
    let ground = t.ground();
    assert!(ground.active().contains(&p), "vertex {p} not active");
    assert!(ground.n() > 3, "removal must leave at least 3 points");
    let reduced = ground.without(p).expect("reduced ground set");
    let ps = ground.points();

    let kept: Vec<[u32; 3]> = t
        .triangles()
        .iter()
        .copied()
        .filter(|tri| !tri.contains(&p))
        .collect();

    let link = t.link_polygon(p);
    let holes: Vec<Vec<u32>> = if link.closed {
        vec![link.ring.clone()]
    } else {
        boundary_pockets(&link.ring, &reduced, p, ps)
    };

    let mut out: Vec<Vec<[u32; 3]>> = vec![kept];
    for hole in &holes {
        let fills = enumerate_polygon_triangulations(hole, ps).expect("hole ring is simple");
        let mut next = Vec::with_capacity(out.len() * fills.len());
        for base in &out {
            for fill in &fills {
                let mut tris = base.clone();
                tris.extend(fill.iter().copied());
                next.push(tris);
            }
        }
        out = next;
    }
    out.into_iter()
        .map(|tris| {
            Triangulation::new(Arc::clone(&reduced), tris).expect("hole refill is a triangulation")
        })
        .collect()
}

/// Pockets between the link path of a deleted boundary vertex and the hull
/// chain that replaces it, each a simple polygon to retriangulate. Pockets
/// collapse wherever the link path already runs along the new hull.
fn boundary_pockets(
    link_path: &[u32],
    reduced: &Arc<GroundSet>,
    p: u32,
    ps: &Arc<PointSet>,
) -> Vec<Vec<u32>> {
    let hull = &reduced.hull().boundary;
    let m = hull.len();
    let pp = ps.point(p);
    // Hull edges p lies beyond form one contiguous visible arc.
    let beyond: Vec<bool> = (0..m)
        .map(|w| orient(ps.point(hull[w]), ps.point(hull[(w + 1) % m]), pp) < 0)
        .collect();
    let arc_start = (0..m)
        .find(|&w| !beyond[(w + m - 1) % m] && beyond[w])
        .expect("deleted hull vertex sees part of the new hull");
    let mut chain: Vec<u32> = vec![hull[arc_start]];
    let mut w = arc_start;
    while beyond[w] {
        w = (w + 1) % m;
        chain.push(hull[w]);
    }

    let mut link: Vec<u32> = link_path.to_vec();
    if link.first() != chain.first() {
        link.reverse();
    }
    assert_eq!(link.first(), chain.first(), "link and hull chain endpoints");
    assert_eq!(link.last(), chain.last(), "link and hull chain endpoints");

    let chain_pos: HashMap<u32, usize> = chain.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut cuts: Vec<(usize, usize)> = Vec::new();
    for (li, &v) in link.iter().enumerate() {
        if let Some(&ci) = chain_pos.get(&v) {
            cuts.push((li, ci));
        }
    }
    assert!(cuts.windows(2).all(|w| w[0].1 < w[1].1), "chain order");

    let mut pockets = Vec::new();
    for pair in cuts.windows(2) {
        let (l0, c0) = pair[0];
        let (l1, c1) = pair[1];
        if l1 - l0 == 1 && c1 - c0 == 1 {
            continue; // link already runs along the hull here
        }
        let mut ring: Vec<u32> = link[l0..=l1].to_vec();
        for ci in (c0 + 1..c1).rev() {
            ring.push(chain[ci]);
        }
        pockets.push(ring);
    }
    pockets
}

/// Dual-graph forest of the triangles visible from an insertion point;
/// subtrees containing the root are insertion star candidates.
#[derive(Debug, Clone)]
pub struct VisibilityForest {
    /// Visible triangles; beyond-triangles (boundary insertion) come first.
    pub nodes: Vec<[u32; 3]>,
    /// Dual edges between visible triangles (indices into `nodes`).
    pub adjacency: Vec<(usize, usize)>,
    /// Index of the root triangle (contains p, or the first beyond-triangle).
    pub root: usize,
    /// Node indices every candidate star must contain (beyond-triangles).
    pub required: Vec<usize>,
}

impl VisibilityForest {
    /// Build for inserting `p` into `tp` (a triangulation not using `p`).
    pub fn build(tp: &Triangulation, p: u32) -> Self {
        let ground = tp.ground();
        let ps = ground.points();
        let pp = ps.point(p);
        let active_points: Vec<Point> = ground.active().iter().map(|&i| ps.point(i)).collect();

        let mut nodes: Vec<[u32; 3]> = Vec::new();
        let mut required: Vec<usize> = Vec::new();

        // Boundary insertion: p lies beyond a contiguous arc of hull edges;
        // their beyond-triangles are forced into every star.
        let hull = &ground.hull().boundary;
        let m = hull.len();
        for w in 0..m {
            let (a, b) = (hull[w], hull[(w + 1) % m]);
            if orient(ps.point(a), ps.point(b), pp) < 0 {
                required.push(nodes.len());
                let mut tri = [a, b, p];
                tri.sort_unstable();
                nodes.push(tri);
            }
        }

        for tri in tp.triangles() {
            let t = [ps.point(tri[0]), ps.point(tri[1]), ps.point(tri[2])];
            if cone_is_empty_among(t, pp, active_points.iter().copied()) {
                nodes.push(*tri);
            }
        }

        // Dual adjacency: shared edge.
        let mut by_edge: HashMap<(u32, u32), Vec<usize>> = HashMap::new();
        for (i, t) in nodes.iter().enumerate() {
            for &(a, b) in &[(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
                by_edge.entry((a, b)).or_default().push(i);
            }
        }
        let mut adjacency: Vec<(usize, usize)> = Vec::new();
        for ids in by_edge.values() {
            if ids.len() == 2 {
                adjacency.push((ids[0].min(ids[1]), ids[0].max(ids[1])));
            }
        }
        adjacency.sort_unstable();

        let root = if required.is_empty() {
            nodes
                .iter()
                .position(|tri| {
                    point_in_triangle(pp, ps.point(tri[0]), ps.point(tri[1]), ps.point(tri[2]))
                        == TrianglePosition::StrictlyInside
                })
                .expect("some visible triangle contains the interior insertion point")
        } else {
            required[0]
        };
        VisibilityForest {
            nodes,
            adjacency,
            root,
            required,
        }
    }

    /// The subgraph induced on the triangles visible from one point can
    /// contain no cycle; verified by the property tests.
    pub fn is_forest(&self) -> bool {
        let mut parent: Vec<usize> = (0..self.nodes.len()).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let r = find(parent, parent[x]);
                parent[x] = r;
            }
            parent[x]
        }
        for &(a, b) in &self.adjacency {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                return false;
            }
            parent[ra] = rb;
        }
        true
    }
}

/// All ways to insert `p` into `tp`, keyed by the degree `p` ends up with.
///
/// Every connected subtree of the visibility forest containing the root (and
/// all beyond-triangles, for boundary insertion) is a candidate star; each
/// one is verified geometrically: the union must be a simple polygon with
/// `p` in its kernel and no other vertex inside.
pub fn insert_point(tp: &Triangulation, p: u32) -> BTreeMap<u32, Vec<Triangulation>> {
    let ground = tp.ground();
    assert!(
        !ground.active().contains(&p),
        "vertex {p} already in the triangulation"
    );
    let enlarged = ground.with(p).expect("enlarged ground set");
    let ps = ground.points();
    let pp = ps.point(p);

    let forest = VisibilityForest::build(tp, p);
    assert!(forest.is_forest(), "visible dual subgraph has a cycle");
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); forest.nodes.len()];
    for &(a, b) in &forest.adjacency {
        adj[a].push(b);
        adj[b].push(a);
    }

    // Enumerate connected subtrees containing the root by rooted recursion:
    // a subtree is the root plus, for each child, either nothing or a
    // subtree of that child.
    let mut subtrees: Vec<Vec<usize>> = Vec::new();
    let mut stack_set: Vec<usize> = vec![forest.root];
    grow_subtrees(&adj, forest.root, usize::MAX, &mut stack_set, &mut subtrees);

    let p_is_boundary = !forest.required.is_empty();
    let mut out: BTreeMap<u32, Vec<Triangulation>> = BTreeMap::new();
    'candidate: for subtree in &subtrees {
        if !forest.required.iter().all(|r| subtree.contains(r)) {
            continue;
        }
        // Union polygon boundary: edges used exactly once.
        let mut edge_count: HashMap<(u32, u32), usize> = HashMap::new();
        for &i in subtree {
            let t = forest.nodes[i];
            for &(a, b) in &[(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
                *edge_count.entry((a, b)).or_insert(0) += 1;
            }
        }
        let boundary_edges: Vec<(u32, u32)> = edge_count
            .iter()
            .filter(|&(_, &c)| c == 1)
            .map(|(&e, _)| e)
            .collect();
        let ring = match stitch_ring(&boundary_edges) {
            Some(r) => r,
            None => continue,
        };
        // All subtree triangle vertices must lie on the ring, otherwise the
        // union is pinched or has an interior vertex.
        for &i in subtree {
            if !forest.nodes[i].iter().all(|v| ring.contains(v)) {
                continue 'candidate;
            }
        }
        // p in the kernel: strictly left of every boundary edge not at p,
        // with the ring oriented counterclockwise.
        let ring = orient_ccw(ring, ps);
        let rl = ring.len();
        for w in 0..rl {
            let (a, b) = (ring[w], ring[(w + 1) % rl]);
            if a == p || b == p {
                continue;
            }
            if orient(ps.point(a), ps.point(b), pp) != 1 {
                continue 'candidate;
            }
        }
        if p_is_boundary != ring.contains(&p) {
            continue;
        }

        // Assemble: drop the star's original triangles, cone p to the ring.
        let subtree_set: HashSet<[u32; 3]> = subtree.iter().map(|&i| forest.nodes[i]).collect();
        let mut tris: Vec<[u32; 3]> = tp
            .triangles()
            .iter()
            .copied()
            .filter(|t| !subtree_set.contains(t))
            .collect();
        let mut degree = 0u32;
        for w in 0..rl {
            let (a, b) = (ring[w], ring[(w + 1) % rl]);
            if a == p || b == p {
                continue;
            }
            let mut t = [a, b, p];
            t.sort_unstable();
            tris.push(t);
            degree += 1;
        }
        let degree = degree + if p_is_boundary { 1 } else { 0 };

        let t_new = Triangulation::new(Arc::clone(&enlarged), tris)
            .expect("verified star yields a valid triangulation");
        out.entry(degree).or_default().push(t_new);
    }
    out
}

fn grow_subtrees(
    adj: &[Vec<usize>],
    node: usize,
    parent: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    // Children of `node` in the tree rooted at the start node.
    let children: Vec<usize> = adj[node].iter().copied().filter(|&c| c != parent).collect();
    // For each child independently: either skip its branch or descend.
    // Recursing over the child list index keeps the enumeration linear in
    // the number of produced subtrees.
    fn expand(
        adj: &[Vec<usize>],
        node: usize,
        children: &[usize],
        at: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if at == children.len() {
            out.push(current.clone());
            return;
        }
        // Skip this child's branch entirely.
        expand(adj, node, children, at + 1, current, out);
        // Or include the child and every subtree shape below it.
        let child = children[at];
        let grand: Vec<usize> = adj[child].iter().copied().filter(|&c| c != node).collect();
        let mark = current.len();
        current.push(child);
        let mut sub: Vec<Vec<usize>> = Vec::new();
        expand_collect(adj, child, &grand, 0, current, &mut sub, mark + 1);
        for shape in sub {
            current.truncate(mark + 1);
            current.extend(shape.iter().copied());
            expand(adj, node, children, at + 1, current, out);
        }
        current.truncate(mark);
    }
    // Collect subtree shapes below `node` (excluding `node` itself) as the
    // extra vertices they add.
    fn expand_collect(
        adj: &[Vec<usize>],
        node: usize,
        children: &[usize],
        at: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        base: usize,
    ) {
        if at == children.len() {
            out.push(current[base..].to_vec());
            return;
        }
        expand_collect(adj, node, children, at + 1, current, out, base);
        let child = children[at];
        let grand: Vec<usize> = adj[child].iter().copied().filter(|&c| c != node).collect();
        let mark = current.len();
        current.push(child);
        let mut sub: Vec<Vec<usize>> = Vec::new();
        expand_collect(adj, child, &grand, 0, current, &mut sub, mark + 1);
        for shape in sub {
            current.truncate(mark + 1);
            current.extend(shape.iter().copied());
            expand_collect(adj, node, children, at + 1, current, out, base);
        }
        current.truncate(mark);
    }
    expand(adj, node, &children, 0, current, out);
}

/// Stitch undirected boundary edges into a single simple cycle; `None` if
/// they form anything else (pinched union).
fn stitch_ring(edges: &[(u32, u32)]) -> Option<Vec<u32>> {
    let mut adj: HashMap<u32, Vec<u32>> = HashMap::new();
    for &(a, b) in edges {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    if adj.values().any(|nbrs| nbrs.len() != 2) {
        return None;
    }
    let start = *adj.keys().min()?;
    let mut ring = vec![start];
    let mut prev = start;
    let mut cur = adj[&start][0];
    while cur != start {
        ring.push(cur);
        let nbrs = &adj[&cur];
        let next = if nbrs[0] == prev { nbrs[1] } else { nbrs[0] };
        prev = cur;
        cur = next;
    }
    if ring.len() == adj.len() {
        Some(ring)
    } else {
        None
    }
}

fn orient_ccw(ring: Vec<u32>, ps: &Arc<PointSet>) -> Vec<u32> {
    let mut area2: i128 = 0;
    let m = ring.len();
    for i in 0..m {
        let p = ps.point(ring[i]);
        let q = ps.point(ring[(i + 1) % m]);
        area2 += p.x as i128 * q.y as i128 - q.x as i128 * p.y as i128;
    }
    if area2 < 0 {
        ring.into_iter().rev().collect()
    } else {
        ring
    }
}

/// Guard for [`subset_triangulation_count`]: at most this many interior
/// points (the sum ranges over all their subsets).
pub const SUBSET_MAX_INTERIOR: usize = 12;

/// Total number of triangulations with vertex set *contained* in the active
/// set: all boundary points plus any subset of the interior points.
pub fn subset_triangulation_count(ground: &Arc<GroundSet>) -> Result<BigCount, EnumError> {
    check_general_position(ground.points())?;
    let interior = &ground.hull().interior;
    if interior.len() > SUBSET_MAX_INTERIOR {
        return Err(EnumError::TooLarge {
            what: "interior points for subset counting",
            got: interior.len(),
            limit: SUBSET_MAX_INTERIOR,
        });
    }
    let boundary = ground.hull().boundary.clone();
    let mut total = BigCount::zero();
    for mask in 0u64..(1 << interior.len()) {
        let mut active = boundary.clone();
        for (bit, &i) in interior.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                active.push(i);
            }
        }
        let sub = GroundSet::subset(Arc::clone(ground.points()), active)?;
        let result = enumerate_all(&sub, &EnumOptions::default())?;
        total += result.count;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::catalan;
    use crate::geom::PointSet;

    fn ground_of(points: Vec<(i64, i64)>) -> Arc<GroundSet> {
        let ps =
            PointSet::new(points.into_iter().map(|(x, y)| Point::new(x, y)).collect()).unwrap();
        GroundSet::full(Arc::new(ps)).unwrap()
    }

    fn convex_ngon(n: i64) -> Arc<GroundSet> {
        ground_of((0..n).map(|i| (i, i * i)).collect())
    }

    #[test]
    fn convex_counts_match_catalan() {
        for n in 3..=9 {
            let g = convex_ngon(n);
            let r = enumerate_all(&g, &EnumOptions::default()).unwrap();
            assert_eq!(r.count, catalan(n as u64 - 2), "n = {n}");
        }
    }

    #[test]
    fn oracle_matches_bfs_small() {
        let opts = EnumOptions {
            want_list: true,
            want_degree_sums: true,
            ..Default::default()
        };
        let cases: Vec<Arc<GroundSet>> = vec![
            convex_ngon(5),
            convex_ngon(6),
            ground_of(vec![(0, 0), (10, 0), (0, 10), (1, 1)]),
            ground_of(vec![(0, 0), (10, 0), (10, 10), (0, 10), (3, 4), (6, 5)]),
            ground_of(vec![(0, 0), (9, 1), (7, 8), (2, 9), (4, 4), (5, 6), (1, 3)]),
        ];
        for g in cases {
            let bfs = enumerate_all(&g, &opts).unwrap();
            let oracle = brute_force_oracle(&g, &opts).unwrap();
            assert_eq!(bfs.count, oracle.count);
            assert_eq!(bfs.canonical_list, oracle.canonical_list);
            assert_eq!(bfs.degree_sums_interior, oracle.degree_sums_interior);
            assert_eq!(bfs.degree_sums_boundary, oracle.degree_sums_boundary);
        }
    }

    #[test]
    fn oracle_trivial_cases() {
        let g = ground_of(vec![(0, 0), (5, 1), (2, 6)]);
        let r = brute_force_oracle(&g, &EnumOptions::default()).unwrap();
        assert_eq!(r.count, BigCount::from(1u32));

        // Triangle plus one interior point: only the cone.
        let g = ground_of(vec![(0, 0), (10, 0), (0, 10), (2, 2)]);
        let r = brute_force_oracle(&g, &EnumOptions::default()).unwrap();
        assert_eq!(r.count, BigCount::from(1u32));

        let g = convex_ngon(5);
        let r = brute_force_oracle(&g, &EnumOptions::default()).unwrap();
        assert_eq!(r.count, BigCount::from(5u32));
    }

    #[test]
    fn oracle_rejects_large_input() {
        let g = convex_ngon(9);
        assert!(matches!(
            brute_force_oracle(&g, &EnumOptions::default()),
            Err(EnumError::TooLarge { .. })
        ));
    }

    #[test]
    fn limit_is_enforced() {
        let g = convex_ngon(8);
        let opts = EnumOptions {
            max_states: 10,
            ..Default::default()
        };
        assert!(matches!(
            enumerate_all(&g, &opts),
            Err(EnumError::LimitExceeded(10))
        ));
    }

    #[test]
    fn non_general_position_detected() {
        // Collinear triple on the hull: rejected while classifying.
        let ps = PointSet::new(
            vec![(0, 0), (1, 0), (2, 0), (0, 5)]
                .into_iter()
                .map(|(x, y)| Point::new(x, y))
                .collect(),
        )
        .unwrap();
        assert!(GroundSet::full(Arc::new(ps)).is_err());

        // Collinear triple strictly inside: the hull builds, the
        // general-position scan in enumerate_all reports it.
        let ps = PointSet::new(
            vec![(0, 0), (20, 0), (20, 20), (0, 20), (3, 5), (9, 7), (15, 9)]
                .into_iter()
                .map(|(x, y)| Point::new(x, y))
                .collect(),
        )
        .unwrap();
        let g = GroundSet::full(Arc::new(ps)).unwrap();
        assert!(matches!(
            enumerate_all(&g, &EnumOptions::default()),
            Err(EnumError::NotGeneralPosition(4, 5, 6))
        ));
    }

    #[test]
    fn canonical_list_is_strictly_increasing() {
        let g = ground_of(vec![(0, 0), (10, 0), (10, 10), (0, 10), (3, 4), (6, 5)]);
        let r = enumerate_all(
            &g,
            &EnumOptions {
                want_list: true,
                ..Default::default()
            },
        )
        .unwrap();
        let list = r.canonical_list.as_ref().unwrap();
        assert_eq!(BigCount::from(list.len()), r.count);
        assert!(list.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn degree_sums_are_consistent() {
        let g = ground_of(vec![(0, 0), (10, 0), (10, 10), (0, 10), (3, 4), (6, 5)]);
        let r = enumerate_all(
            &g,
            &EnumOptions {
                want_degree_sums: true,
                ..Default::default()
            },
        )
        .unwrap();
        let sum_vi: BigCount = r.degree_sums_interior.values().cloned().sum();
        let sum_bj: BigCount = r.degree_sums_boundary.values().cloned().sum();
        assert_eq!(sum_vi, r.count.clone() * BigCount::from(g.v()));
        assert_eq!(sum_bj, r.count.clone() * BigCount::from(g.b()));
    }

    #[test]
    fn delete_interior_degree3_unique() {
        let g = ground_of(vec![(0, 0), (10, 0), (0, 10), (2, 2)]);
        let t = Triangulation::seed(Arc::clone(&g));
        let results = delete_point(&t, 3);
        assert_eq!(results.len(), 1);
        assert_eq!(results[0].triangles().len(), 1);
    }

    #[test]
    fn delete_respects_catalan_bound() {
        // All triangulations of a 6-point set, all vertices.
        let g = ground_of(vec![(0, 0), (10, 0), (10, 10), (0, 10), (3, 4), (6, 5)]);
        let all = collect_all(&g);
        for t in &all {
            for &p in g.active() {
                if g.n() <= 3 {
                    continue;
                }
                let results = delete_point(t, p);
                let deg = vertex_degree(t, p);
                assert!(!results.is_empty());
                assert!(
                    BigCount::from(results.len()) <= catalan(deg as u64 - 2),
                    "deg {deg} produced {}",
                    results.len()
                );
                for r in &results {
                    assert_eq!(r.validate(), Ok(()));
                }
            }
        }
    }

    #[test]
    fn delete_hull_apex_with_split_hole() {
        // Removing the apex leaves a hole clipped by the new hull into two
        // separate triangle pockets whenever the promoted vertex (0,3) is
        // in the middle of the apex's link.
        let g = ground_of(vec![(-10, 0), (10, 0), (0, 5), (0, 3), (-4, 1), (4, 1)]);
        let mut hit = 0;
        visit_all(&g, u64::MAX, |t| {
            let link = t.link_polygon(2);
            if link.ring.len() == 5 && link.ring[2] == 3 {
                hit += 1;
                let results = delete_point(t, 2);
                assert_eq!(results.len(), 1, "both pockets are triangles");
                assert_eq!(results[0].validate(), Ok(()));
            }
        })
        .unwrap();
        assert_eq!(hit, 2, "the mid-link configurations must occur");
    }

    #[test]
    fn insert_interior_h3_is_one() {
        let g = ground_of(vec![(0, 0), (10, 0), (0, 10), (2, 2)]);
        let reduced = g.without(3).unwrap();
        let tp = Triangulation::seed(reduced);
        let by_degree = insert_point(&tp, 3);
        assert_eq!(by_degree.get(&3).map(|v| v.len()), Some(1));
    }

    #[test]
    fn deletion_insertion_duality_small() {
        let g = ground_of(vec![(0, 0), (10, 0), (10, 10), (0, 10), (3, 4), (6, 5)]);
        let all = collect_all(&g);
        for p in [4u32, 5] {
            let reduced = g.without(p).unwrap();
            let all_reduced = collect_all(&reduced);
            // Covering: every triangulation of the full set arises from some
            // insertion into some reduced triangulation.
            let mut covered: HashSet<CanonicalKey> = HashSet::new();
            for tp in &all_reduced {
                for (deg, ts) in insert_point(tp, p) {
                    for t in ts {
                        assert_eq!(vertex_degree(&t, p), deg);
                        covered.insert(t.canonical_key());
                    }
                }
            }
            let full_keys: HashSet<CanonicalKey> = all.iter().map(|t| t.canonical_key()).collect();
            assert_eq!(covered, full_keys, "covering failed for p = {p}");

            // Duality: T' in delete(T, p) iff T in insert(T', p)[deg_T(p)].
            for t in &all {
                let deg = vertex_degree(t, p);
                let deleted: HashSet<CanonicalKey> = delete_point(t, p)
                    .iter()
                    .map(|r| r.canonical_key())
                    .collect();
                for tp in &all_reduced {
                    let ins = insert_point(tp, p);
                    let from_tp: HashSet<CanonicalKey> = ins
                        .get(&deg)
                        .map(|v| v.iter().map(|x| x.canonical_key()).collect())
                        .unwrap_or_default();
                    let forwards = deleted.contains(&tp.canonical_key());
                    let backwards = from_tp.contains(&t.canonical_key());
                    assert_eq!(forwards, backwards, "duality failed");
                }
            }
        }
    }

    /// Deletion and insertion checked against their definitions: T' is
    /// obtained from T by deleting p (equivalently T from T' by inserting
    /// p) iff every edge of T not incident to p appears in T'. The subset
    /// filter over the full enumerations is a route independent of both
    /// the hole-retriangulation and the visibility-subtree machinery.
    #[test]
    fn delete_insert_match_definition() {
        let sets: Vec<Vec<(i64, i64)>> = vec![
            vec![(0, 0), (9, 1), (7, 8), (2, 9), (4, 4), (5, 6), (1, 3)],
            vec![(0, 0), (10, 0), (10, 10), (0, 10), (3, 4), (6, 5)],
            vec![(0, 0), (12, 1), (6, 11), (4, 4), (8, 5)],
            // Deleting the apex (0,5) promotes (0,3) onto the hull; in the
            // triangulations where (0,3) sits mid-link the hole splits into
            // two pockets around it.
            vec![(-10, 0), (10, 0), (0, 5), (0, 3), (-4, 1), (4, 1)],
            // (-20,0) lies beyond three hull edges of the other five points,
            // so reinserting it forces three beyond-triangles into the star.
            vec![(-20, 0), (0, 6), (-2, 2), (-2, -2), (0, -6), (6, 0)],
        ];
        for pts in sets {
            let g = ground_of(pts);
            let all = collect_all(&g);
            for &p in g.active() {
                let reduced = g.without(p).unwrap();
                let all_reduced = collect_all(&reduced);
                for t in &all {
                    let kept: HashSet<(u32, u32)> = t
                        .edges()
                        .into_iter()
                        .filter(|&(a, b)| a != p && b != p)
                        .collect();
                    let by_definition: HashSet<CanonicalKey> = all_reduced
                        .iter()
                        .filter(|tp| {
                            let edges: HashSet<(u32, u32)> = tp.edges().into_iter().collect();
                            kept.is_subset(&edges)
                        })
                        .map(|tp| tp.canonical_key())
                        .collect();
                    let computed: HashSet<CanonicalKey> = delete_point(t, p)
                        .iter()
                        .map(|tp| tp.canonical_key())
                        .collect();
                    assert_eq!(computed, by_definition, "delete definition mismatch");
                }
                for tp in &all_reduced {
                    let tp_edges: HashSet<(u32, u32)> = tp.edges().into_iter().collect();
                    let mut by_definition: BTreeMap<u32, HashSet<CanonicalKey>> = BTreeMap::new();
                    for t in &all {
                        let deg = vertex_degree(t, p);
                        let kept_in_tp = t
                            .edges()
                            .iter()
                            .filter(|&&(a, b)| a != p && b != p)
                            .all(|e| tp_edges.contains(e));
                        if kept_in_tp {
                            by_definition
                                .entry(deg)
                                .or_default()
                                .insert(t.canonical_key());
                        }
                    }
                    let computed: BTreeMap<u32, HashSet<CanonicalKey>> = insert_point(tp, p)
                        .into_iter()
                        .map(|(deg, ts)| (deg, ts.iter().map(|t| t.canonical_key()).collect()))
                        .collect();
                    assert_eq!(computed, by_definition, "insert definition mismatch");
                }
            }
        }
    }

    #[test]
    fn subset_count_examples() {
        // Convex polygon: no interior points, sum has one term.
        let g = convex_ngon(6);
        assert_eq!(subset_triangulation_count(&g).unwrap(), catalan(4));
        // Triangle + interior point: use it (1) or skip it (1).
        let g = ground_of(vec![(0, 0), (10, 0), (0, 10), (2, 2)]);
        assert_eq!(
            subset_triangulation_count(&g).unwrap(),
            BigCount::from(2u32)
        );
    }

    fn collect_all(g: &Arc<GroundSet>) -> Vec<Triangulation> {
        let mut out = Vec::new();
        visit_all(g, u64::MAX, |t| out.push(t.clone())).unwrap();
        out
    }

    fn vertex_degree(t: &Triangulation, p: u32) -> u32 {
        t.edges().iter().filter(|&&(a, b)| a == p || b == p).count() as u32
    }

    #[test]
    fn enumeration_is_deterministic() {
        let g = ground_of(vec![(0, 0), (10, 0), (10, 10), (0, 10), (3, 4), (6, 5)]);
        let opts = EnumOptions {
            want_list: true,
            want_degree_sums: true,
            ..Default::default()
        };
        let a = enumerate_all(&g, &opts).unwrap();
        let b = enumerate_all(&g, &opts).unwrap();
        assert_eq!(a.count, b.count);
        assert_eq!(a.canonical_list, b.canonical_list);
        assert_eq!(a.degree_sums_interior, b.degree_sums_interior);
        assert_eq!(a.degree_sums_boundary, b.degree_sums_boundary);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]
            #[test]
            fn bfs_agrees_with_oracle(pts in proptest::collection::hash_set(
                (0i64..12, 0i64..12), 4..=6)) {
                let points: Vec<Point> = pts.into_iter().map(|(x, y)| Point::new(x, y)).collect();
                let ps = match PointSet::new(points) {
                    Ok(ps) => ps,
                    Err(_) => return Ok(()),
                };
                prop_assume!(general_position_check(&ps).is_none());
                let g = GroundSet::full(Arc::new(ps)).unwrap();
                let opts = EnumOptions {
                    want_list: true,
                    ..Default::default()
                };
                let bfs = enumerate_all(&g, &opts).unwrap();
                let oracle = brute_force_oracle(&g, &opts).unwrap();
                prop_assert_eq!(bfs.count, oracle.count);
                prop_assert_eq!(bfs.canonical_list, oracle.canonical_list);
            }
        }
    }

    #[test]
    fn visibility_forest_is_forest() {
        let g = ground_of(vec![
            (0, 0),
            (12, 0),
            (12, 12),
            (0, 12),
            (3, 4),
            (7, 6),
            (5, 9),
        ]);
        for p in [4u32, 5, 6] {
            let reduced = g.without(p).unwrap();
            let mut checked = 0;
            visit_all(&reduced, u64::MAX, |tp| {
                let f = VisibilityForest::build(tp, p);
                assert!(f.is_forest());
                checked += 1;
            })
            .unwrap();
            assert!(checked > 0);
        }
    }
}
