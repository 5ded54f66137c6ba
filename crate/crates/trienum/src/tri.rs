//! The triangulation value type: validity checking, degree accounting,
//! canonical keys, link extraction, and Lawson flips.
//!
//! A `Triangulation` lives over a [`GroundSet`]: a point set plus the subset
//! of labels actually used as vertices (the whole set in the common case).
//! Sharing one index space across vertex subsets keeps point deletion and
//! insertion comparable by canonical key.

use crate::geom::{
    convex_hull_of, orient, point_in_triangle, segments_properly_cross, GeomError, Point, PointSet,
    TrianglePosition,
};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// A point set together with the active vertex labels and their hull
/// classification. Immutable and shared by every triangulation over it.
#[derive(Debug)]
pub struct GroundSet {
    points: Arc<PointSet>,
    active: Vec<u32>,
    hull: crate::geom::HullClassification,
    boundary_mask: Vec<bool>,
}

impl GroundSet {
    /// Ground set using every point.
    pub fn full(points: Arc<PointSet>) -> Result<Arc<Self>, GeomError> {
        let active = crate::geom::identity_labels(points.len());
        Self::subset(points, active)
    }

    /// Ground set restricted to `active` labels (sorted, distinct, >= 3).
    pub fn subset(points: Arc<PointSet>, mut active: Vec<u32>) -> Result<Arc<Self>, GeomError> {
        active.sort_unstable();
        active.dedup();
        let hull = convex_hull_of(&points, &active)?;
        let mut boundary_mask = vec![false; points.len()];
        for &i in &hull.boundary {
            boundary_mask[i as usize] = true;
        }
        Ok(Arc::new(GroundSet {
            points,
            active,
            hull,
            boundary_mask,
        }))
    }

    pub fn points(&self) -> &Arc<PointSet> {
        &self.points
    }

    pub fn active(&self) -> &[u32] {
        &self.active
    }

    pub fn hull(&self) -> &crate::geom::HullClassification {
        &self.hull
    }

    #[inline]
    pub fn point(&self, label: u32) -> Point {
        self.points.point(label)
    }

    /// Number of active vertices.
    pub fn n(&self) -> usize {
        self.active.len()
    }

    /// Number of active interior points.
    pub fn v(&self) -> usize {
        self.hull.v()
    }

    /// Number of hull points.
    pub fn b(&self) -> usize {
        self.hull.b()
    }

    #[inline]
    pub fn is_boundary(&self, label: u32) -> bool {
        self.boundary_mask[label as usize]
    }

    /// Every triangulation has exactly `3v + 2b - 3` edges.
    pub fn expected_edges(&self) -> usize {
        3 * self.v() + 2 * self.b() - 3
    }

    /// Every triangulation has exactly `2v + b - 2` triangles.
    pub fn expected_triangles(&self) -> usize {
        2 * self.v() + self.b() - 2
    }

    /// Ground set with one active label removed.
    pub fn without(self: &Arc<Self>, p: u32) -> Result<Arc<Self>, GeomError> {
        let active: Vec<u32> = self.active.iter().copied().filter(|&i| i != p).collect();
        Self::subset(Arc::clone(&self.points), active)
    }

    /// Ground set with one more active label.
    pub fn with(self: &Arc<Self>, p: u32) -> Result<Arc<Self>, GeomError> {
        let mut active = self.active.clone();
        debug_assert!(!active.contains(&p));
        active.push(p);
        Self::subset(Arc::clone(&self.points), active)
    }
}

/// First violated invariant found by [`Triangulation::validate`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Violation {
    #[error("triangle {0:?} is degenerate")]
    DegenerateTriangle([u32; 3]),
    #[error("triangle {0:?} repeated")]
    DuplicateTriangle([u32; 3]),
    #[error("triangle {0:?} uses an inactive vertex")]
    InactiveVertex([u32; 3]),
    #[error("vertex {0} is not used by any triangle")]
    UnusedVertex(u32),
    #[error("vertex {0} lies strictly inside triangle {1:?}")]
    VertexInsideTriangle(u32, [u32; 3]),
    #[error("edges ({0},{1}) and ({2},{3}) properly cross")]
    CrossingEdges(u32, u32, u32, u32),
    #[error("edge ({0},{1}) is in {2} triangles, expected {3}")]
    BadEdgeIncidence(u32, u32, usize, usize),
    #[error("hull edge ({0},{1}) is missing")]
    MissingHullEdge(u32, u32),
    #[error("expected {expected} triangles, found {found}")]
    TriangleCount { expected: usize, found: usize },
    #[error("expected {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
}

/// Canonical identity of a triangulation: its sorted edge list, serialized
/// as little-endian 32-bit pair count followed by little-endian 32-bit
/// index pairs. Bit-exact across platforms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(pub Vec<u8>);

impl CanonicalKey {
    pub fn from_edges(edges: &[(u32, u32)]) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        let mut bytes = Vec::with_capacity(4 + edges.len() * 8);
        bytes.extend_from_slice(&(edges.len() as u32).to_le_bytes());
        for &(a, b) in edges {
            bytes.extend_from_slice(&a.to_le_bytes());
            bytes.extend_from_slice(&b.to_le_bytes());
        }
        CanonicalKey(bytes)
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Per-degree vertex counts of a triangulation, split by hull location.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DegreeProfile {
    /// degree -> number of interior vertices of that degree (degrees >= 3)
    pub v_deg: BTreeMap<u32, u32>,
    /// degree -> number of boundary vertices of that degree (degrees >= 2)
    pub b_deg: BTreeMap<u32, u32>,
}

impl DegreeProfile {
    /// `sum (6-i) v_i + sum (4-j) b_j`; equals 6 for every triangulation.
    pub fn euler_identity_lhs(&self) -> i64 {
        let vi: i64 = self
            .v_deg
            .iter()
            .map(|(&i, &c)| (6 - i as i64) * c as i64)
            .sum();
        let bj: i64 = self
            .b_deg
            .iter()
            .map(|(&j, &c)| (4 - j as i64) * c as i64)
            .sum();
        vi + bj
    }

    /// `|A| + 6 <= 4 v3 + 3 v4 + 2 v5 + v6 + 3 b2 + 2 b3 + b4`.
    pub fn low_degree_inequality_holds(&self) -> bool {
        let n: i64 = self.v_deg.values().map(|&c| c as i64).sum::<i64>()
            + self.b_deg.values().map(|&c| c as i64).sum::<i64>();
        n + 6 <= self.low_degree_weight()
    }

    /// `4 v3 + 3 v4 + 2 v5 + v6 + 3 b2 + 2 b3 + b4`.
    pub fn low_degree_weight(&self) -> i64 {
        let v = |i: u32| *self.v_deg.get(&i).unwrap_or(&0) as i64;
        let b = |j: u32| *self.b_deg.get(&j).unwrap_or(&0) as i64;
        4 * v(3) + 3 * v(4) + 2 * v(5) + v(6) + 3 * b(2) + 2 * b(3) + b(4)
    }
}

/// The link of a vertex: its neighbors in counterclockwise order, a closed
/// cycle for an interior center and an open path for a boundary center.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkPolygon {
    pub center: u32,
    pub ring: Vec<u32>,
    pub closed: bool,
}

/// A triangulation of the active vertices of a ground set. Triangles are
/// stored as sorted index triples in sorted order; the edge set and the
/// adjacency used by flips are derived.
#[derive(Clone)]
pub struct Triangulation {
    ground: Arc<GroundSet>,
    tris: Vec<[u32; 3]>,
}

impl fmt::Debug for Triangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Triangulation({:?})", self.tris)
    }
}

fn sort3(mut t: [u32; 3]) -> [u32; 3] {
    t.sort_unstable();
    t
}

impl Triangulation {
    /// Build and fully validate.
    pub fn new(ground: Arc<GroundSet>, triangles: Vec<[u32; 3]>) -> Result<Self, Violation> {
        let t = Self::new_unvalidated(ground, triangles);
        t.validate()?;
        Ok(t)
    }

    /// Build without the full validity scan. Used on hot paths that produce
    /// structurally correct results (flips); debug builds still validate.
    pub(crate) fn new_unchecked(ground: Arc<GroundSet>, triangles: Vec<[u32; 3]>) -> Self {
        let t = Self::new_unvalidated(ground, triangles);
        debug_assert_eq!(t.validate(), Ok(()));
        t
    }

    fn new_unvalidated(ground: Arc<GroundSet>, triangles: Vec<[u32; 3]>) -> Self {
        let mut tris: Vec<[u32; 3]> = triangles.into_iter().map(sort3).collect();
        tris.sort_unstable();
        Triangulation { ground, tris }
    }

    pub fn ground(&self) -> &Arc<GroundSet> {
        &self.ground
    }

    pub fn triangles(&self) -> &[[u32; 3]] {
        &self.tris
    }

    /// Sorted list of edges (index pairs with a < b).
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut edges: Vec<(u32, u32)> = Vec::with_capacity(self.tris.len() * 3);
        for t in &self.tris {
            edges.push((t[0], t[1]));
            edges.push((t[0], t[2]));
            edges.push((t[1], t[2]));
        }
        edges.sort_unstable();
        edges.dedup();
        edges
    }

    /// Map edge -> incident triangle indices (1 for hull edges, 2 inside).
    fn edge_incidence(&self) -> HashMap<(u32, u32), Vec<usize>> {
        let mut map: HashMap<(u32, u32), Vec<usize>> = HashMap::with_capacity(self.tris.len() * 2);
        for (idx, t) in self.tris.iter().enumerate() {
            for &(a, b) in &[(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
                map.entry((a, b)).or_default().push(idx);
            }
        }
        map
    }

    /// Check every structural invariant; returns the first violation found.
    pub fn validate(&self) -> Result<(), Violation> {
        let g = &self.ground;
        let expected_t = g.expected_triangles();
        if self.tris.len() != expected_t {
            return Err(Violation::TriangleCount {
                expected: expected_t,
                found: self.tris.len(),
            });
        }
        let mut used = vec![false; g.points().len()];
        let active_set: std::collections::HashSet<u32> = g.active().iter().copied().collect();
        for w in self.tris.windows(2) {
            if w[0] == w[1] {
                return Err(Violation::DuplicateTriangle(w[0]));
            }
        }
        for t in &self.tris {
            if t[0] == t[1] || t[1] == t[2] {
                return Err(Violation::DegenerateTriangle(*t));
            }
            for &i in t {
                if !active_set.contains(&i) {
                    return Err(Violation::InactiveVertex(*t));
                }
                used[i as usize] = true;
            }
            if orient(g.point(t[0]), g.point(t[1]), g.point(t[2])) == 0 {
                return Err(Violation::DegenerateTriangle(*t));
            }
        }
        for &i in g.active() {
            if !used[i as usize] {
                return Err(Violation::UnusedVertex(i));
            }
        }
        // No active vertex strictly inside a triangle.
        for t in &self.tris {
            let (a, b, c) = (g.point(t[0]), g.point(t[1]), g.point(t[2]));
            for &i in g.active() {
                if t.contains(&i) {
                    continue;
                }
                if point_in_triangle(g.point(i), a, b, c) == TrianglePosition::StrictlyInside {
                    return Err(Violation::VertexInsideTriangle(i, *t));
                }
            }
        }
        let edges = self.edges();
        let expected_e = g.expected_edges();
        if edges.len() != expected_e {
            return Err(Violation::EdgeCount {
                expected: expected_e,
                found: edges.len(),
            });
        }
        // Pairwise non-crossing.
        for (i, &(a, b)) in edges.iter().enumerate() {
            for &(c, d) in &edges[i + 1..] {
                if segments_properly_cross(g.point(a), g.point(b), g.point(c), g.point(d)) {
                    return Err(Violation::CrossingEdges(a, b, c, d));
                }
            }
        }
        // Edge incidences: hull edges once, interior edges twice.
        let incidence = self.edge_incidence();
        let hull = &g.hull().boundary;
        for w in 0..hull.len() {
            let a = hull[w];
            let b = hull[(w + 1) % hull.len()];
            let key = (a.min(b), a.max(b));
            match incidence.get(&key) {
                Some(v) if v.len() == 1 => {}
                Some(v) => return Err(Violation::BadEdgeIncidence(key.0, key.1, v.len(), 1)),
                None => return Err(Violation::MissingHullEdge(key.0, key.1)),
            }
        }
        let hull_edge = |a: u32, b: u32| -> bool {
            let m = hull.len();
            (0..m).any(|w| {
                let p = hull[w];
                let q = hull[(w + 1) % m];
                (p.min(q), p.max(q)) == (a, b)
            })
        };
        for (&(a, b), tris) in &incidence {
            let expected = if hull_edge(a, b) { 1 } else { 2 };
            if tris.len() != expected {
                return Err(Violation::BadEdgeIncidence(a, b, tris.len(), expected));
            }
        }
        Ok(())
    }

    /// Deterministic seed triangulation: lexicographic incremental scan,
    /// coning each new point to the hull edges it sees.
    pub fn seed(ground: Arc<GroundSet>) -> Self {
        let g = &ground;
        let mut order: Vec<u32> = g.active().to_vec();
        order.sort_by_key(|&i| {
            let p = g.point(i);
            (p.x, p.y)
        });

        let mut tris: Vec<[u32; 3]> = Vec::with_capacity(g.expected_triangles());
        // Current hull as a CCW ring.
        let (a, b, c) = (order[0], order[1], order[2]);
        let mut hull: Vec<u32> = if orient(g.point(a), g.point(b), g.point(c)) > 0 {
            vec![a, b, c]
        } else {
            vec![a, c, b]
        };
        tris.push(sort3([a, b, c]));

        for &p in &order[3..] {
            let pp = g.point(p);
            let m = hull.len();
            let visible: Vec<bool> = (0..m)
                .map(|w| orient(g.point(hull[w]), g.point(hull[(w + 1) % m]), pp) < 0)
                .collect();
            for (w, &vis) in visible.iter().enumerate() {
                if vis {
                    tris.push(sort3([hull[w], hull[(w + 1) % m], p]));
                }
            }
            // Visible edges form one contiguous arc; splice p in its place.
            let start = (0..m)
                .find(|&w| !visible[(w + m - 1) % m] && visible[w])
                .expect("new point sees a contiguous non-empty hull arc");
            let mut len = 0;
            while visible[(start + len) % m] {
                len += 1;
            }
            let mut new_hull: Vec<u32> = Vec::with_capacity(m - len + 2);
            new_hull.push(hull[start]);
            new_hull.push(p);
            let mut w = (start + len) % m;
            while w != start {
                new_hull.push(hull[w]);
                w = (w + 1) % m;
            }
            hull = new_hull;
        }
        Self::new_unchecked(ground, tris)
    }

    /// Canonical key: the serialized sorted edge list.
    pub fn canonical_key(&self) -> CanonicalKey {
        CanonicalKey::from_edges(&self.edges())
    }

    /// All Lawson flips: one entry per interior edge whose two incident
    /// triangles form a strictly convex quadrilateral, with the flipped
    /// triangulation.
    pub fn flips(&self) -> Vec<((u32, u32), Triangulation)> {
        let mut out = Vec::new();
        let incidence = self.edge_incidence();
        let mut keys: Vec<(u32, u32)> = incidence.keys().copied().collect();
        keys.sort_unstable();
        for (a, b) in keys {
            let tris = &incidence[&(a, b)];
            if tris.len() != 2 {
                continue;
            }
            let other = |idx: usize| -> u32 {
                *self.tris[idx]
                    .iter()
                    .find(|&&v| v != a && v != b)
                    .expect("triangle has a third vertex")
            };
            let x = other(tris[0]);
            let y = other(tris[1]);
            // Strict convexity of the quad around (a, b): the new diagonal
            // (x, y) must separate a from b.
            let g = &self.ground;
            if orient(g.point(x), g.point(y), g.point(a))
                * orient(g.point(x), g.point(y), g.point(b))
                >= 0
            {
                continue;
            }
            let mut tris_new = self.tris.clone();
            tris_new[tris[0]] = sort3([x, y, a]);
            tris_new[tris[1]] = sort3([x, y, b]);
            // No validation here: flips run millions of times inside the
            // enumeration loops; `flip_walk_stays_valid` and the oracle
            // cross-checks cover their correctness.
            out.push(((a, b), Self::new_unvalidated(Arc::clone(g), tris_new)));
        }
        out
    }

    /// Edge-degree counts per vertex, split interior/boundary.
    pub fn degree_profile(&self) -> DegreeProfile {
        let mut degree: HashMap<u32, u32> = HashMap::with_capacity(self.ground.n());
        for &(a, b) in &self.edges() {
            *degree.entry(a).or_insert(0) += 1;
            *degree.entry(b).or_insert(0) += 1;
        }
        let mut profile = DegreeProfile::default();
        for (&vtx, &d) in &degree {
            if self.ground.is_boundary(vtx) {
                *profile.b_deg.entry(d).or_insert(0) += 1;
            } else {
                *profile.v_deg.entry(d).or_insert(0) += 1;
            }
        }
        profile
    }

    /// True iff `|A| + 6 <= 4v3 + 3v4 + 2v5 + v6 + 3b2 + 2b3 + b4`. Always
    /// true for a valid triangulation; false signals a bug.
    pub fn euler_inequality_check(&self) -> bool {
        self.degree_profile().low_degree_inequality_holds()
    }

    /// Neighbors of `p` in counterclockwise order; a closed cycle when `p`
    /// is interior, an open path between its two hull neighbors otherwise.
    pub fn link_polygon(&self, p: u32) -> LinkPolygon {
        let g = &self.ground;
        let pp = g.point(p);
        // CCW-directed arcs a -> b over the triangles at p.
        let mut succ: HashMap<u32, u32> = HashMap::new();
        let mut has_pred: HashMap<u32, bool> = HashMap::new();
        for t in &self.tris {
            if !t.contains(&p) {
                continue;
            }
            let others: Vec<u32> = t.iter().copied().filter(|&v| v != p).collect();
            let (mut a, mut b) = (others[0], others[1]);
            if orient(pp, g.point(a), g.point(b)) < 0 {
                std::mem::swap(&mut a, &mut b);
            }
            succ.insert(a, b);
            has_pred.entry(a).or_insert(false);
            *has_pred.entry(b).or_insert(false) = true;
        }
        assert!(!succ.is_empty(), "vertex {p} is not used");
        let closed = !g.is_boundary(p);
        let start = if closed {
            *succ.keys().min().expect("nonempty link")
        } else {
            *has_pred
                .iter()
                .find(|&(_, &pred)| !pred)
                .map(|(k, _)| k)
                .expect("open link has a start")
        };
        let mut ring = vec![start];
        let mut cur = start;
        while let Some(&next) = succ.get(&cur) {
            if closed && next == start {
                break;
            }
            ring.push(next);
            cur = next;
        }
        assert_eq!(
            ring.len(),
            succ.len() + usize::from(!closed),
            "link of {p} is not a single chain"
        );
        LinkPolygon {
            center: p,
            ring,
            closed,
        }
    }
}
