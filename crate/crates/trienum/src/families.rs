//! Integer-coordinate generators for the extremal point families, with
//! construct-then-certify: every generated set passes the general-position
//! scan and a per-family hull-shape predicate, and (where enumeration is
//! feasible) the enumerated count must equal the closed-form count.
//!
//! Family layouts (label order is part of the format):
//!
//! * `convex n`: points `(i, i^2)` on a parabola, labels in x order.
//! * `double chain k`: upper chain labels `0..k` left to right on
//!   `y = x^2 + H` with `H = 3k^2`, lower chain labels `k..2k` mirrored.
//!   The chains sag toward each other; the four chain ends are the hull.
//! * `double circle k`: hull k-gon on a scaled parabola plus its closing
//!   chord, one interior point just inside each hull edge. Labels `0..k`
//!   are hull vertices, `k..2k-1` the points near the chain edges in
//!   order, `2k-1` the point near the chord.
//! * `modified double chain k`: two chains of `k - 1` points facing each
//!   other across a central gap under the top hull edge, plus a point in
//!   the well below the gap and the hull apex beneath it; certified
//!   against the known counts 8, 150, 3920 for k = 3, 4, 5.
//! * `random n`: uniform points in `[0, 2^20)^2` from a SplitMix64 stream,
//!   resampling any point that collides or creates a collinear triple.

use crate::enumerate::{enumerate_all, EnumError, EnumOptions};
use crate::formulas::{
    catalan, count_double_chain, count_double_circle, count_modified_double_chain, BigCount,
};
use crate::geom::{general_position_check, GeomError, Point, PointSet};
use crate::tri::GroundSet;
use serde::{Deserialize, Serialize};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum FamilySpec {
    Convex { n: u32 },
    DoubleChain { k: u32 },
    DoubleCircle { k: u32, extra_interior: bool },
    ModifiedDoubleChain { k: u32 },
    Random { n: u32, seed: u64 },
}

impl FamilySpec {
    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::Convex { .. } => "convex",
            FamilySpec::DoubleChain { .. } => "double-chain",
            FamilySpec::DoubleCircle { .. } => "double-circle",
            FamilySpec::ModifiedDoubleChain { .. } => "modified-double-chain",
            FamilySpec::Random { .. } => "random",
        }
    }

    /// Number of points the family generates.
    pub fn point_count(&self) -> usize {
        match *self {
            FamilySpec::Convex { n } => n as usize,
            FamilySpec::DoubleChain { k } => 2 * k as usize,
            FamilySpec::DoubleCircle { k, extra_interior } => {
                2 * k as usize + usize::from(extra_interior)
            }
            FamilySpec::ModifiedDoubleChain { k } => 2 * k as usize,
            FamilySpec::Random { n, .. } => n as usize,
        }
    }

    /// Exact closed-form triangulation count, when the family has one.
    pub fn closed_form_count(&self) -> Option<BigCount> {
        match *self {
            FamilySpec::Convex { n } => Some(catalan(n as u64 - 2)),
            FamilySpec::DoubleChain { k } => Some(count_double_chain(k as u64)),
            FamilySpec::DoubleCircle {
                k,
                extra_interior: false,
            } => Some(count_double_circle(k as u64)),
            FamilySpec::DoubleCircle { .. } => None,
            FamilySpec::ModifiedDoubleChain { k } => Some(count_modified_double_chain(k as u64)),
            FamilySpec::Random { .. } => None,
        }
    }

    /// Expected hull classification (boundary, interior point counts).
    pub fn expected_hull_shape(&self) -> Option<(usize, usize)> {
        match *self {
            FamilySpec::Convex { n } => Some((n as usize, 0)),
            FamilySpec::DoubleChain { k } => Some((4, 2 * k as usize - 4)),
            FamilySpec::DoubleCircle { k, extra_interior } => {
                Some((k as usize, k as usize + usize::from(extra_interior)))
            }
            FamilySpec::ModifiedDoubleChain { k } => Some((3, 2 * k as usize - 3)),
            FamilySpec::Random { .. } => None,
        }
    }

    /// Whether the certification enumeration is considered feasible.
    pub fn enumeration_feasible(&self) -> bool {
        match *self {
            FamilySpec::Convex { n } => n <= 12,
            FamilySpec::DoubleChain { k } => k <= 6,
            FamilySpec::DoubleCircle { k, .. } => k <= 6,
            FamilySpec::ModifiedDoubleChain { k } => k <= 5,
            FamilySpec::Random { .. } => false,
        }
    }
}

#[derive(Debug, Error)]
pub enum FamilyError {
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("generated set failed certification: {0}")]
    GenerationFailed(String),
    #[error(transparent)]
    Geometry(#[from] GeomError),
    #[error(transparent)]
    Enumeration(#[from] EnumError),
}

/// Outcome of the structural certification run at generation time.
#[derive(Debug, Clone, Serialize)]
pub struct Certification {
    pub general_position: bool,
    pub hull_boundary: usize,
    pub hull_interior: usize,
    pub hull_shape_ok: Option<bool>,
}

/// A generated family instance with its structural certification.
#[derive(Debug)]
pub struct GeneratedFamily {
    pub spec: FamilySpec,
    pub points: PointSet,
    pub certification: Certification,
}

/// Generate the family and certify general position and hull shape.
/// Certification failure is a bug in the generator, not a user error.
pub fn gen_family(spec: &FamilySpec) -> Result<GeneratedFamily, FamilyError> {
    let raw = match *spec {
        FamilySpec::Convex { n } => {
            if n < 3 {
                return Err(FamilyError::InvalidParam("convex needs n >= 3".into()));
            }
            convex_points(n as i64)
        }
        FamilySpec::DoubleChain { k } => {
            if k < 2 {
                return Err(FamilyError::InvalidParam(
                    "double chain needs k >= 2".into(),
                ));
            }
            double_chain_points(k as i64)
        }
        FamilySpec::DoubleCircle { k, extra_interior } => {
            if k < 3 {
                return Err(FamilyError::InvalidParam(
                    "double circle needs k >= 3".into(),
                ));
            }
            double_circle_points(k as i64, extra_interior)
        }
        FamilySpec::ModifiedDoubleChain { k } => {
            if k < 3 {
                return Err(FamilyError::InvalidParam(
                    "modified double chain needs k >= 3".into(),
                ));
            }
            modified_double_chain_points(k as i64)
        }
        FamilySpec::Random { n, seed } => {
            if n < 3 {
                return Err(FamilyError::InvalidParam("random needs n >= 3".into()));
            }
            random_points(n as usize, seed)
        }
    };
    let points = PointSet::new(raw)?;
    if let Some([a, b, c]) = general_position_check(&points) {
        return Err(FamilyError::GenerationFailed(format!(
            "collinear triple ({a}, {b}, {c})"
        )));
    }
    let ground = GroundSet::full(Arc::new(points.clone()))?;
    let (b, v) = (ground.b(), ground.v());
    let hull_shape_ok = spec
        .expected_hull_shape()
        .map(|(eb, ev)| (b, v) == (eb, ev));
    if hull_shape_ok == Some(false) {
        return Err(FamilyError::GenerationFailed(format!(
            "hull shape (b, v) = ({b}, {v}), expected {:?}",
            spec.expected_hull_shape().unwrap()
        )));
    }
    Ok(GeneratedFamily {
        spec: spec.clone(),
        points,
        certification: Certification {
            general_position: true,
            hull_boundary: b,
            hull_interior: v,
            hull_shape_ok,
        },
    })
}

/// Result of the count-certification enumeration.
#[derive(Debug, Clone, Serialize)]
pub struct CountCheck {
    pub expected: String,
    pub enumerated: String,
    pub ok: bool,
}

/// Enumerate and compare to the closed form. `None` when the family has no
/// closed form or enumeration is infeasible at this size.
pub fn certify_count(
    spec: &FamilySpec,
    points: &PointSet,
) -> Result<Option<CountCheck>, FamilyError> {
    let expected = match spec.closed_form_count() {
        Some(e) if spec.enumeration_feasible() => e,
        _ => return Ok(None),
    };
    let ground = GroundSet::full(Arc::new(points.clone()))?;
    let result = enumerate_all(&ground, &EnumOptions::default())?;
    Ok(Some(CountCheck {
        ok: result.count == expected,
        expected: expected.to_string(),
        enumerated: result.count.to_string(),
    }))
}

fn convex_points(n: i64) -> Vec<Point> {
    (0..n).map(|i| Point::new(i, i * i)).collect()
}

/// Chain x positions: `k` symmetric integers with spacing 2.
fn chain_xs(k: i64) -> Vec<i64> {
    (0..k).map(|i| 2 * i - (k - 1)).collect()
}

fn double_chain_points(k: i64) -> Vec<Point> {
    let h = 3 * k * k;
    let mut pts = Vec::with_capacity(2 * k as usize);
    for &x in &chain_xs(k) {
        pts.push(Point::new(x, x * x + h));
    }
    for &x in &chain_xs(k) {
        pts.push(Point::new(x, -(x * x + h)));
    }
    pts
}

/// Ring of the inner non-convex 2k-gon of the double chain (both chains,
/// counterclockwise), in generated-label space.
pub fn double_chain_inner_ring(k: u32) -> Vec<u32> {
    let mut ring: Vec<u32> = (0..k).collect();
    ring.extend((k..2 * k).rev());
    ring
}

fn double_circle_points(k: i64, extra_interior: bool) -> Vec<Point> {
    let s = (4 * k).max(8);
    let mut pts = Vec::new();
    // Hull vertices on a scaled parabola; the hull is the chain plus the
    // chord from the first to the last vertex.
    for i in 0..k {
        pts.push(Point::new(2 * s * i, 2 * s * i * i));
    }
    // One point just inside each chain edge, at the midpoint pushed up.
    for i in 0..(k - 1) {
        let x = s * (2 * i + 1);
        let y = s * (2 * i * i + 2 * i + 1) + 1;
        pts.push(Point::new(x, y));
    }
    // One point just under the chord midpoint.
    pts.push(Point::new(s * (k - 1), s * (k - 1) * (k - 1) - 1));
    if extra_interior {
        // Odd variant: an extra interior point near hull vertex 0.
        pts.push(Point::new(4, 2 * k + 1));
    }
    pts
}

/// Ring of the central non-convex 2k-gon of the double circle: hull
/// vertices alternating with the interior point of each edge.
pub fn double_circle_inner_ring(k: u32) -> Vec<u32> {
    let mut ring = Vec::with_capacity(2 * k as usize);
    for i in 0..(k - 1) {
        ring.push(i);
        ring.push(k + i);
    }
    ring.push(k - 1);
    ring.push(2 * k - 1);
    ring
}

/// Modified double chain: the two chains of `k - 1` points face each other
/// across a central gap, sagging from the two top hull corners; the region
/// between them and the top hull edge is the non-convex (2k-2)-gon of a
/// double chain. A point at the bottom of the well under the gap and the
/// hull apex far below close two fully-visible (k+1)-gon regions, one
/// under each chain, plus one forced triangle.
///
/// Labels: `0..k-1` left chain from the top corner inward, `k-1..2k-2`
/// right chain from the gap outward, then the well point, then the apex.
fn modified_double_chain_points(k: i64) -> Vec<Point> {
    let g = k * k; // half-width of the central gap
    let w = 2 * k * k * k; // well point depth
    let z = 4 * k * k * k; // hull apex depth
    let m = k - 1;
    // Chain heights above the gap: strictly concave, steepening inward.
    let height = |t: i64| t * (k - 1) - t * (t + 1) / 2;
    let mut pts = Vec::with_capacity(2 * k as usize);
    for t in (0..m).rev() {
        pts.push(Point::new(-(g + t), height(t)));
    }
    for t in 0..m {
        pts.push(Point::new(g + t, height(t)));
    }
    pts.push(Point::new(0, -w));
    pts.push(Point::new(0, -z));
    pts
}

const SPLITMIX64_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64: the fixed, documented generator behind `random` families.
/// The algorithm is part of the file-format contract and never changes.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(SPLITMIX64_GAMMA);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

/// Uniform points in `[0, 2^20)^2`, one candidate at a time; a candidate
/// duplicating an accepted point or collinear with two of them is dropped
/// and the stream continues.
fn random_points(n: usize, seed: u64) -> Vec<Point> {
    let mut rng = SplitMix64::new(seed);
    let mut pts: Vec<Point> = Vec::with_capacity(n);
    let mut attempts = 0u64;
    while pts.len() < n {
        attempts += 1;
        assert!(attempts < 1_000_000, "rejection sampling runaway");
        let x = (rng.next_u64() & 0xF_FFFF) as i64;
        let y = (rng.next_u64() & 0xF_FFFF) as i64;
        let cand = Point::new(x, y);
        if pts.contains(&cand) {
            continue;
        }
        let collides = pts.iter().enumerate().any(|(i, &a)| {
            pts[i + 1..]
                .iter()
                .any(|&b| crate::geom::orient(a, b, cand) == 0)
        });
        if !collides {
            pts.push(cand);
        }
    }
    pts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::count_polygon_triangulations;

    #[test]
    fn convex_family() {
        let fam = gen_family(&FamilySpec::Convex { n: 8 }).unwrap();
        assert_eq!(fam.points.len(), 8);
        assert_eq!(fam.certification.hull_boundary, 8);
        let check = certify_count(&fam.spec, &fam.points).unwrap().unwrap();
        assert!(
            check.ok,
            "expected {} got {}",
            check.expected, check.enumerated
        );
    }

    #[test]
    fn double_chain_family_counts() {
        for (k, expect) in [(3u32, 6u64), (4, 80), (5, 1750)] {
            let spec = FamilySpec::DoubleChain { k };
            let fam = gen_family(&spec).unwrap();
            let check = certify_count(&spec, &fam.points).unwrap().unwrap();
            assert!(
                check.ok,
                "k={k}: expected {expect}, got {}",
                check.enumerated
            );
            assert_eq!(check.enumerated, expect.to_string());
        }
    }

    #[test]
    fn double_chain_inner_polygon() {
        // The non-convex 2k-gon between the chains has C(2k-2, k-1)
        // triangulations; k = 4 gives C(6, 3) = 20.
        let fam = gen_family(&FamilySpec::DoubleChain { k: 4 }).unwrap();
        let ring = double_chain_inner_ring(4);
        let count = count_polygon_triangulations(&ring, &fam.points).unwrap();
        assert_eq!(count, BigCount::from(20u32));
    }

    #[test]
    fn double_circle_family_counts() {
        for (k, expect) in [(3u32, 4u64), (4, 30), (5, 250)] {
            let spec = FamilySpec::DoubleCircle {
                k,
                extra_interior: false,
            };
            let fam = gen_family(&spec).unwrap();
            assert_eq!(fam.certification.hull_boundary, k as usize);
            assert_eq!(fam.certification.hull_interior, k as usize);
            let check = certify_count(&spec, &fam.points).unwrap().unwrap();
            assert!(
                check.ok,
                "k={k}: expected {expect}, got {}",
                check.enumerated
            );
        }
    }

    #[test]
    fn double_circle_inner_polygon() {
        // Triangulating the double circle is triangulating its central
        // non-convex 2k-gon: 30 for k = 4.
        let fam = gen_family(&FamilySpec::DoubleCircle {
            k: 4,
            extra_interior: false,
        })
        .unwrap();
        let ring = double_circle_inner_ring(4);
        let count = count_polygon_triangulations(&ring, &fam.points).unwrap();
        assert_eq!(count, BigCount::from(30u32));
    }

    #[test]
    fn larger_feasible_certifications() {
        // The largest sizes the certification enumeration covers for the
        // families not already exercised at that size elsewhere.
        let spec = FamilySpec::DoubleCircle {
            k: 6,
            extra_interior: false,
        };
        let fam = gen_family(&spec).unwrap();
        let check = certify_count(&spec, &fam.points).unwrap().unwrap();
        assert!(check.ok);
        assert_eq!(check.enumerated, "2236");

        let spec = FamilySpec::Convex { n: 12 };
        let fam = gen_family(&spec).unwrap();
        let check = certify_count(&spec, &fam.points).unwrap().unwrap();
        assert!(check.ok);
        assert_eq!(check.enumerated, "16796");
    }

    #[test]
    fn double_circle_odd_variant_generates() {
        let spec = FamilySpec::DoubleCircle {
            k: 4,
            extra_interior: true,
        };
        let fam = gen_family(&spec).unwrap();
        assert_eq!(fam.points.len(), 9);
        assert_eq!(fam.certification.hull_interior, 5);
        // No count assertion: the placement of the extra point is a choice.
        assert!(spec.closed_form_count().is_none());
    }

    #[test]
    fn modified_double_chain_counts() {
        for (k, expect) in [(3u32, 8u64), (4, 150), (5, 3920)] {
            let spec = FamilySpec::ModifiedDoubleChain { k };
            let fam = gen_family(&spec).unwrap();
            let check = certify_count(&spec, &fam.points).unwrap().unwrap();
            assert!(
                check.ok,
                "k={k}: expected {expect}, got {}",
                check.enumerated
            );
        }
    }

    #[test]
    fn random_family_deterministic() {
        let a = gen_family(&FamilySpec::Random { n: 9, seed: 42 }).unwrap();
        let b = gen_family(&FamilySpec::Random { n: 9, seed: 42 }).unwrap();
        assert_eq!(a.points, b.points);
        let c = gen_family(&FamilySpec::Random { n: 9, seed: 43 }).unwrap();
        assert_ne!(a.points, c.points);
    }

    #[test]
    fn generators_are_general_position() {
        let specs = vec![
            FamilySpec::Convex { n: 10 },
            FamilySpec::DoubleChain { k: 6 },
            FamilySpec::DoubleCircle {
                k: 6,
                extra_interior: false,
            },
            FamilySpec::DoubleCircle {
                k: 5,
                extra_interior: true,
            },
            FamilySpec::ModifiedDoubleChain { k: 5 },
            FamilySpec::Random { n: 12, seed: 7 },
        ];
        for spec in specs {
            let fam = gen_family(&spec).unwrap();
            assert!(general_position_check(&fam.points).is_none(), "{spec:?}");
        }
    }

    #[test]
    fn generators_scale_beyond_enumeration() {
        // Structural certification (general position, hull shape) must keep
        // holding far past the count-feasible sizes.
        for k in [12u32, 33, 64] {
            for spec in [
                FamilySpec::DoubleChain { k },
                FamilySpec::DoubleCircle {
                    k,
                    extra_interior: false,
                },
                FamilySpec::DoubleCircle {
                    k,
                    extra_interior: true,
                },
                FamilySpec::ModifiedDoubleChain { k },
            ] {
                gen_family(&spec).unwrap_or_else(|e| panic!("{spec:?}: {e}"));
            }
        }
        gen_family(&FamilySpec::Convex { n: 200 }).unwrap();
    }
}
