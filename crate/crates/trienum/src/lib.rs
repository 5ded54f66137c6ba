//! Exact enumeration and verification of straight-edge triangulations of
//! planar point sets.
//!
//! The crate enumerates every triangulation of a small point set in
//! general position (flip-graph traversal with an independent brute-force
//! oracle), checks per-triangulation degree identities, enumerates the
//! ways a single vertex can be deleted from or inserted into a
//! triangulation, generates the classical extremal point families with
//! exact closed-form counts, and evaluates the rational upper bounds the
//! counts are verified against. All arithmetic on counts and bounds is
//! exact: integer predicates, big integers, big rationals.

pub mod enumerate;
pub mod families;
pub mod formulas;
pub mod geom;
pub mod pointfile;
pub mod polygon;
pub mod report;
pub mod suite;
pub mod tri;

pub use enumerate::{
    brute_force_oracle, delete_point, enumerate_all, insert_point, subset_triangulation_count,
    visit_all, EnumOptions, EnumerationResult, Method, VisibilityForest,
};
pub use families::{certify_count, gen_family, FamilySpec, GeneratedFamily};
pub use formulas::{
    binomial, catalan, count_double_chain, count_double_circle, count_modified_double_chain,
    count_upper_bound, insertion_bound, subset_count_upper_bound, BigCount, ExactRational,
    VertexLocation,
};
pub use geom::{
    convex_hull, general_position_check, orient, point_in_triangle, segments_properly_cross,
    HullClassification, Point, PointSet,
};
pub use polygon::{count_polygon_triangulations, enumerate_polygon_triangulations};
pub use tri::{CanonicalKey, DegreeProfile, GroundSet, LinkPolygon, Triangulation};
