//! Exact integer geometric predicates and point-set classification.
//!
//! All predicates are computed in integer arithmetic with 128-bit
//! intermediates; there is no floating point and no epsilon anywhere.
//! Coordinates are bounded by [`COORD_LIMIT`] so every determinant fits
//! comfortably in an `i128`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Coordinate type for input points.
pub type Coord = i64;

/// Coordinates must satisfy `|x|, |y| <= COORD_LIMIT` (2^30).
pub const COORD_LIMIT: Coord = 1 << 30;

/// A planar point with integer coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Point {
    pub x: Coord,
    pub y: Coord,
}

impl Point {
    pub const fn new(x: Coord, y: Coord) -> Self {
        Point { x, y }
    }
}

impl From<(Coord, Coord)> for Point {
    fn from((x, y): (Coord, Coord)) -> Self {
        Point { x, y }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeomError {
    #[error("point set needs at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("coordinate out of range at index {0} (|x|,|y| must be <= 2^30)")]
    CoordinateOutOfRange(u32),
    #[error("duplicate points at indices {0} and {1}")]
    DuplicatePoint(u32, u32),
    #[error("collinear points at indices {0}, {1}, {2}")]
    CollinearInput(u32, u32, u32),
}

/// Sign of the orientation determinant of `(b - a, c - a)`.
///
/// `+1` when `a -> b -> c` turns counterclockwise, `-1` clockwise,
/// `0` when the three points are collinear.
#[inline]
pub fn orient(a: Point, b: Point, c: Point) -> i8 {
    let det = (b.x as i128 - a.x as i128) * (c.y as i128 - a.y as i128)
        - (b.y as i128 - a.y as i128) * (c.x as i128 - a.x as i128);
    match det.cmp(&0) {
        std::cmp::Ordering::Less => -1,
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Greater => 1,
    }
}

/// True iff the open segments `ab` and `cd` intersect in exactly one point
/// interior to both. Segments sharing an endpoint never properly cross.
#[inline]
pub fn segments_properly_cross(a: Point, b: Point, c: Point, d: Point) -> bool {
    let abc = orient(a, b, c);
    let abd = orient(a, b, d);
    let cda = orient(c, d, a);
    let cdb = orient(c, d, b);
    abc * abd < 0 && cda * cdb < 0
}

/// Position of a point relative to a (non-degenerate) triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrianglePosition {
    StrictlyInside,
    OnBoundary,
    Outside,
}

/// Classify `p` against triangle `abc` by three orientation signs.
pub fn point_in_triangle(p: Point, a: Point, b: Point, c: Point) -> TrianglePosition {
    let (a, b, c) = match orient(a, b, c) {
        1 => (a, b, c),
        -1 => (a, c, b),
        _ => panic!("degenerate triangle"),
    };
    let s1 = orient(a, b, p);
    let s2 = orient(b, c, p);
    let s3 = orient(c, a, p);
    if s1 < 0 || s2 < 0 || s3 < 0 {
        TrianglePosition::Outside
    } else if s1 > 0 && s2 > 0 && s3 > 0 {
        TrianglePosition::StrictlyInside
    } else {
        TrianglePosition::OnBoundary
    }
}

/// A labeled point set. Indices `0..n-1` are the canonical labels; all
/// structural invariants except general position are enforced on
/// construction (general position has its own O(n^3) check).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<Point>,
}

impl PointSet {
    pub fn new(points: Vec<Point>) -> Result<Self, GeomError> {
        if points.len() < 3 {
            return Err(GeomError::TooFewPoints(points.len()));
        }
        for (i, p) in points.iter().enumerate() {
            if p.x.abs() > COORD_LIMIT || p.y.abs() > COORD_LIMIT {
                return Err(GeomError::CoordinateOutOfRange(i as u32));
            }
        }
        let mut seen: Vec<(Point, u32)> = points
            .iter()
            .enumerate()
            .map(|(i, &p)| (p, i as u32))
            .collect();
        seen.sort_by_key(|&(p, _)| (p.x, p.y));
        for w in seen.windows(2) {
            if w[0].0 == w[1].0 {
                let (i, j) = (w[0].1.min(w[1].1), w[0].1.max(w[1].1));
                return Err(GeomError::DuplicatePoint(i, j));
            }
        }
        Ok(PointSet { points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    #[inline]
    pub fn point(&self, i: u32) -> Point {
        self.points[i as usize]
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }
}

/// Convex-hull classification of a point set: boundary labels in
/// counterclockwise order starting from the lexicographically smallest
/// point, and the sorted set of interior labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HullClassification {
    pub boundary: Vec<u32>,
    pub interior: Vec<u32>,
}

impl HullClassification {
    pub fn b(&self) -> usize {
        self.boundary.len()
    }

    pub fn v(&self) -> usize {
        self.interior.len()
    }
}

/// Convex hull of the whole point set (monotone chain over lexicographic
/// order). Fails with `CollinearInput` when a point lies on the hull
/// boundary without being a vertex of it.
pub fn convex_hull(ps: &PointSet) -> Result<HullClassification, GeomError> {
    convex_hull_of(ps, &identity_labels(ps.len()))
}

pub(crate) fn identity_labels(n: usize) -> Vec<u32> {
    (0..n as u32).collect()
}

/// Convex hull restricted to the given labels (which must be distinct and
/// at least 3). Used for triangulations on vertex subsets.
pub fn convex_hull_of(ps: &PointSet, labels: &[u32]) -> Result<HullClassification, GeomError> {
    if labels.len() < 3 {
        return Err(GeomError::TooFewPoints(labels.len()));
    }
    let mut order: Vec<u32> = labels.to_vec();
    order.sort_by_key(|&i| {
        let p = ps.point(i);
        (p.x, p.y)
    });

    // Strict turns only: collinear candidates are popped and later rejected
    // by the containment pass below.
    let chain = |iter: &mut dyn Iterator<Item = u32>| -> Vec<u32> {
        let mut out: Vec<u32> = Vec::new();
        for i in iter {
            while out.len() >= 2 {
                let a = ps.point(out[out.len() - 2]);
                let b = ps.point(out[out.len() - 1]);
                if orient(a, b, ps.point(i)) <= 0 {
                    out.pop();
                } else {
                    break;
                }
            }
            out.push(i);
        }
        out
    };
    let mut lower = chain(&mut order.iter().copied());
    let mut upper = chain(&mut order.iter().rev().copied());
    lower.pop();
    upper.pop();
    lower.extend(upper);
    let boundary = lower;

    let on_hull: std::collections::HashSet<u32> = boundary.iter().copied().collect();
    let mut interior: Vec<u32> = Vec::new();
    for &i in labels {
        if on_hull.contains(&i) {
            continue;
        }
        // Strictly inside the hull polygon, or the input was degenerate.
        let p = ps.point(i);
        for w in 0..boundary.len() {
            let a = boundary[w];
            let b = boundary[(w + 1) % boundary.len()];
            match orient(ps.point(a), ps.point(b), p) {
                1 => {}
                0 => {
                    return Err(GeomError::CollinearInput(
                        a.min(b.min(i)),
                        mid3(a, b, i),
                        a.max(b.max(i)),
                    ))
                }
                _ => unreachable!("non-hull point outside its own hull"),
            }
        }
        interior.push(i);
    }
    interior.sort_unstable();
    Ok(HullClassification { boundary, interior })
}

fn mid3(a: u32, b: u32, c: u32) -> u32 {
    a ^ b ^ c ^ a.min(b.min(c)) ^ a.max(b.max(c))
}

/// Exhaustive O(n^3) scan for collinear triples. Returns the
/// lexicographically first violating triple `(i, j, k)`, or `None` when the
/// set is in general position.
pub fn general_position_check(ps: &PointSet) -> Option<[u32; 3]> {
    let n = ps.len() as u32;
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                if orient(ps.point(i), ps.point(j), ps.point(k)) == 0 {
                    return Some([i, j, k]);
                }
            }
        }
    }
    None
}

/// True iff no point of `others` except `p` itself lies strictly inside
/// `conv(t ∪ {p})` (comparison by value). The triangle's own vertices
/// usually sit on the hull boundary and pass; when `p` wraps beyond one of
/// them the wrapped vertex is strictly inside and correctly blocks.
pub fn cone_is_empty_among<I>(t: [Point; 3], p: Point, others: I) -> bool
where
    I: IntoIterator<Item = Point>,
{
    let hull = tiny_hull(&[t[0], t[1], t[2], p]);
    'outer: for q in others {
        if q == p {
            continue;
        }
        for w in 0..hull.len() {
            let a = hull[w];
            let b = hull[(w + 1) % hull.len()];
            if orient(a, b, q) <= 0 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Spec-shaped wrapper over [`cone_is_empty_among`] checking every point of
/// the set.
pub fn cone_is_empty(t: [Point; 3], p: Point, ps: &PointSet) -> bool {
    cone_is_empty_among(t, p, ps.points().iter().copied())
}

/// Convex hull (CCW, strict) of up to a handful of points by value.
fn tiny_hull(pts: &[Point]) -> Vec<Point> {
    let mut order: Vec<Point> = pts.to_vec();
    order.sort_by_key(|p| (p.x, p.y));
    order.dedup();
    if order.len() == 1 {
        return order;
    }
    let chain = |iter: &mut dyn Iterator<Item = Point>| -> Vec<Point> {
        let mut out: Vec<Point> = Vec::new();
        for p in iter {
            while out.len() >= 2 && orient(out[out.len() - 2], out[out.len() - 1], p) <= 0 {
                out.pop();
            }
            out.push(p);
        }
        out
    };
    let mut lower = chain(&mut order.iter().copied());
    let mut upper = chain(&mut order.iter().rev().copied());
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}
