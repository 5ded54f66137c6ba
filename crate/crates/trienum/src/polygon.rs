//! Triangulation counting and enumeration for simple polygons.
//!
//! A diagonal is admissible iff it lies inside the polygon and properly
//! crosses no boundary edge. The counting recursion splits on the apex of
//! the triangle attached to the chord `(i, j)`; an apex is valid when the
//! triangle is oriented with the polygon, both sides are boundary edges or
//! admissible diagonals, and no ring vertex lies strictly inside it.
//!
//! Ring vertices must come from a point set in general position; that rules
//! out vertices on chords and collinear ring corners.

use crate::formulas::BigCount;
use crate::geom::{
    orient, point_in_triangle, segments_properly_cross, Point, PointSet, TrianglePosition,
};
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolygonError {
    #[error("polygon ring needs at least 3 vertices, got {0}")]
    TooSmall(usize),
    #[error("ring repeats vertex {0}")]
    RepeatedVertex(u32),
    #[error("ring is not a simple polygon: edges ({0},{1}) and ({2},{3}) cross")]
    NotSimple(u32, u32, u32, u32),
    #[error("ring has zero signed area")]
    Degenerate,
}

struct Poly {
    labels: Vec<u32>,
    pts: Vec<Point>,
    /// side_ok[i][j]: chord or boundary edge from ring position i to j is
    /// usable as a triangle side.
    side_ok: Vec<Vec<bool>>,
}

impl Poly {
    fn new(ring: &[u32], ps: &PointSet) -> Result<Self, PolygonError> {
        let m = ring.len();
        if m < 3 {
            return Err(PolygonError::TooSmall(m));
        }
        let mut sorted = ring.to_vec();
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(PolygonError::RepeatedVertex(w[0]));
            }
        }
        let mut labels = ring.to_vec();
        let mut pts: Vec<Point> = labels.iter().map(|&i| ps.point(i)).collect();

        // Simplicity: non-adjacent edges must not properly cross.
        for i in 0..m {
            for j in (i + 1)..m {
                let (a, b) = (pts[i], pts[(i + 1) % m]);
                let (c, d) = (pts[j], pts[(j + 1) % m]);
                if segments_properly_cross(a, b, c, d) {
                    return Err(PolygonError::NotSimple(
                        labels[i],
                        labels[(i + 1) % m],
                        labels[j],
                        labels[(j + 1) % m],
                    ));
                }
            }
        }

        // Normalize to counterclockwise.
        let mut area2: i128 = 0;
        for i in 0..m {
            let p = pts[i];
            let q = pts[(i + 1) % m];
            area2 += p.x as i128 * q.y as i128 - q.x as i128 * p.y as i128;
        }
        if area2 == 0 {
            return Err(PolygonError::Degenerate);
        }
        if area2 < 0 {
            labels.reverse();
            pts.reverse();
        }

        let mut poly = Poly {
            labels,
            pts,
            side_ok: vec![vec![false; m]; m],
        };
        for i in 0..m {
            poly.side_ok[i][(i + 1) % m] = true;
            poly.side_ok[(i + 1) % m][i] = true;
        }
        for i in 0..m {
            for j in (i + 2)..m {
                if i == 0 && j == m - 1 {
                    continue; // boundary edge, already marked
                }
                if poly.diagonal_admissible(i, j) {
                    poly.side_ok[i][j] = true;
                    poly.side_ok[j][i] = true;
                }
            }
        }
        Ok(poly)
    }

    fn m(&self) -> usize {
        self.pts.len()
    }

    /// The open segment from ring position `i` to `j` lies strictly inside
    /// the polygon: it leaves `i` through the interior wedge and crosses no
    /// boundary edge. General position excludes vertices on the segment.
    fn diagonal_admissible(&self, i: usize, j: usize) -> bool {
        let m = self.m();
        let a = self.pts[i];
        let d = self.pts[j];
        let prev = self.pts[(i + m - 1) % m];
        let next = self.pts[(i + 1) % m];
        // Interior wedge at a CCW vertex sweeps from the outgoing edge
        // (a -> next) counterclockwise to the incoming edge (a -> prev).
        let s_next = orient(a, next, d);
        let s_prev = orient(a, d, prev);
        let inside_wedge = if orient(a, next, prev) > 0 {
            s_next > 0 && s_prev > 0
        } else {
            s_next > 0 || s_prev > 0
        };
        if !inside_wedge {
            return false;
        }
        for e in 0..m {
            let (c, dd) = (self.pts[e], self.pts[(e + 1) % m]);
            if segments_properly_cross(a, d, c, dd) {
                return false;
            }
        }
        true
    }

    /// Apex `k` forms a valid triangle over the chord `(i, j)`.
    fn apex_ok(&self, i: usize, k: usize, j: usize) -> bool {
        if orient(self.pts[i], self.pts[k], self.pts[j]) != 1 {
            return false;
        }
        if !self.side_ok[i][k] || !self.side_ok[k][j] {
            return false;
        }
        for t in 0..self.m() {
            if t == i || t == k || t == j {
                continue;
            }
            if point_in_triangle(self.pts[t], self.pts[i], self.pts[k], self.pts[j])
                == TrianglePosition::StrictlyInside
            {
                return false;
            }
        }
        true
    }

    fn tri(&self, i: usize, k: usize, j: usize) -> [u32; 3] {
        let mut t = [self.labels[i], self.labels[k], self.labels[j]];
        t.sort_unstable();
        t
    }
}

/// Exact number of triangulations of the simple polygon given by `ring`
/// (labels into `ps`, either orientation).
pub fn count_polygon_triangulations(ring: &[u32], ps: &PointSet) -> Result<BigCount, PolygonError> {
    let poly = Poly::new(ring, ps)?;
    let m = poly.m();
    let mut memo: Vec<Vec<Option<BigCount>>> = vec![vec![None; m]; m];
    Ok(count_chain(&poly, 0, m - 1, &mut memo))
}

fn count_chain(poly: &Poly, i: usize, j: usize, memo: &mut Vec<Vec<Option<BigCount>>>) -> BigCount {
    if j - i < 2 {
        return BigCount::one();
    }
    if let Some(v) = &memo[i][j] {
        return v.clone();
    }
    let mut total = BigCount::zero();
    for k in (i + 1)..j {
        if poly.apex_ok(i, k, j) {
            total += count_chain(poly, i, k, memo) * count_chain(poly, k, j, memo);
        }
    }
    memo[i][j] = Some(total.clone());
    total
}

/// All triangulations of the simple polygon, as sorted triangle triples of
/// point-set labels. Intended for small rings (hole retriangulation).
pub fn enumerate_polygon_triangulations(
    ring: &[u32],
    ps: &PointSet,
) -> Result<Vec<Vec<[u32; 3]>>, PolygonError> {
    let poly = Poly::new(ring, ps)?;
    Ok(enumerate_chain(&poly, 0, poly.m() - 1))
}

fn enumerate_chain(poly: &Poly, i: usize, j: usize) -> Vec<Vec<[u32; 3]>> {
    if j - i < 2 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for k in (i + 1)..j {
        if !poly.apex_ok(i, k, j) {
            continue;
        }
        for left in enumerate_chain(poly, i, k) {
            for right in enumerate_chain(poly, k, j) {
                let mut tris = left.clone();
                tris.extend(right.iter().copied());
                tris.push(poly.tri(i, k, j));
                out.push(tris);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::PointSet;

    fn parabola_ngon(n: usize) -> PointSet {
        // Strictly convex position.
        let pts = (0..n as i64).map(|i| Point::new(i, i * i)).collect();
        PointSet::new(pts).unwrap()
    }

    #[test]
    fn convex_rings_give_catalan() {
        for n in 3..=9usize {
            let ps = parabola_ngon(n);
            let ring: Vec<u32> = (0..n as u32).collect();
            let count = count_polygon_triangulations(&ring, &ps).unwrap();
            assert_eq!(count, crate::formulas::catalan(n as u64 - 2), "n = {n}");
            let all = enumerate_polygon_triangulations(&ring, &ps).unwrap();
            assert_eq!(BigCount::from(all.len()), count);
            // Each triangulation of an m-gon has m - 2 triangles, all distinct.
            for t in &all {
                assert_eq!(t.len(), n - 2);
            }
        }
    }

    #[test]
    fn reversed_ring_same_count() {
        let ps = parabola_ngon(6);
        let ring: Vec<u32> = (0..6).rev().collect();
        assert_eq!(
            count_polygon_triangulations(&ring, &ps).unwrap(),
            crate::formulas::catalan(4)
        );
    }

    #[test]
    fn reflex_quad_has_one_triangulation() {
        // (5,4) is reflex inside the quad (0,0),(5,4),(10,0),(5,10).
        let ps = PointSet::new(vec![
            Point::new(0, 0),
            Point::new(5, 4),
            Point::new(10, 0),
            Point::new(5, 10),
        ])
        .unwrap();
        let ring = [0u32, 1, 2, 3];
        assert_eq!(
            count_polygon_triangulations(&ring, &ps).unwrap(),
            BigCount::one()
        );
    }

    #[test]
    fn funnel_with_base_counts_apexes() {
        // Base corners and a shallow sagging ceiling chain of 3. Every base
        // corner sees every chain vertex, ceiling chords are blocked by the
        // sag, so each triangulation is the base-apex triangle plus two
        // forced fans: 3 choices of apex.
        let ps = PointSet::new(vec![
            Point::new(-10, 0), // base left
            Point::new(-4, 5),  // ceiling chain, sagging to (0, 4)
            Point::new(0, 4),
            Point::new(4, 5),
            Point::new(10, 0), // base right
        ])
        .unwrap();
        let ring = [0u32, 1, 2, 3, 4];
        assert_eq!(
            count_polygon_triangulations(&ring, &ps).unwrap(),
            BigCount::from(3u32)
        );
    }

    #[test]
    fn self_intersecting_ring_rejected() {
        let ps = PointSet::new(vec![
            Point::new(0, 0),
            Point::new(4, 0),
            Point::new(4, 4),
            Point::new(0, 4),
        ])
        .unwrap();
        // Bowtie order.
        let ring = [0u32, 1, 3, 2];
        assert!(matches!(
            count_polygon_triangulations(&ring, &ps),
            Err(PolygonError::NotSimple(..))
        ));
    }

    #[test]
    fn enumeration_matches_count_on_funnels() {
        // Two facing chains of 3 (a double-chain core): C(4, 2) = 6 ways.
        let mut pts = Vec::new();
        for &x in &[-2i64, 0, 2] {
            pts.push(Point::new(x, x * x + 12));
        }
        for &x in &[-2i64, 0, 2] {
            pts.push(Point::new(x, -(x * x + 12)));
        }
        let ps = PointSet::new(pts).unwrap();
        let ring = [0u32, 1, 2, 5, 4, 3];
        let count = count_polygon_triangulations(&ring, &ps).unwrap();
        assert_eq!(count, BigCount::from(6u32));
        let all = enumerate_polygon_triangulations(&ring, &ps).unwrap();
        assert_eq!(all.len(), 6);
        let mut keys: Vec<Vec<[u32; 3]>> = all
            .iter()
            .map(|t| {
                let mut s = t.clone();
                s.sort_unstable();
                s
            })
            .collect();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), 6, "triangulations must be pairwise distinct");
    }
}
