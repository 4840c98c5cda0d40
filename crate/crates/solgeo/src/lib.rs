//! Numerical toolkit for the Sol geometry.
//!
//! Sol is the solvable 3-dimensional Thurston geometry with left-invariant
//! metric `ds^2 = e^{2z} dx^2 + e^{-2z} dy^2 + dz^2` in the affine model
//! used throughout this crate.  The library computes:
//!
//! - the metric, translations and the dihedral origin stabilizer ([`sol`]);
//! - translation curves, their inversion, translation distance, spheres and
//!   antipodes ([`translation`]);
//! - geodesics (closed-form families plus adaptive integration of the
//!   general case), a shooting boundary-value solver and geodesic distance
//!   ([`geodesic`]);
//! - interior angles and angle sums of geodesic triangles ([`triangle`]);
//! - translation-like isoptic surfaces and Thaloids with their
//!   bounded/unbounded classification ([`isoptic`]);
//! - marching-cubes extraction of implicit surfaces ([`mesh`]).
//!
//! Everything is generic over the scalar type through the [`Real`] trait;
//! the `*64` aliases fix `f64`, which is what all documented tolerances
//! assume.

pub mod error;
mod mc_tables;
mod ode;
pub mod scalar;

pub mod geodesic;
pub mod isoptic;
pub mod mesh;
pub mod sol;
pub mod translation;
pub mod triangle;

pub use error::{SolError, SolResult};
pub use scalar::Real;

pub use geodesic::{
    geodesic_distance, halfplane_map, hyperbolic_halfplane_distance, solve_geodesic_bvp,
    solve_geodesic_bvp_with, BvpOptions, GeodesicArc, GeodesicFamily, GeodesicInitial,
};
pub use isoptic::{
    classify_surface, fiber_limit, isoptic_tangents, isoptic_value, limit_extrema,
    thaloid_sphere_deviation, thaloid_value, FiberDirection, IsopticSpec, LimitExtrema,
    SurfaceClassification, SurfaceKind,
};
pub use mesh::{march, GridSpec, TriMesh};
pub use sol::{
    angle_between, inverse_translation, metric_at, stabilizer_elements, translation_to,
    MetricTensor, SolIsometry, SolPoint, SolTangent,
};
pub use translation::{
    antipodal_point, invert_translation_point, translation_distance, translation_point,
    translation_sphere_value, translation_tangent_at_origin, DirectionParams,
};
pub use triangle::{
    find_pi_sum_triangle, geodesic_triangle_angles, horizontal_isosceles_angles,
    hyperbolic_like_angles, scan_horizontal_like, translation_angle_at, PiSumTriangle,
    ScanReport, TriangleAngles,
};

/// `f64` aliases for the main types.
pub type SolPoint64 = SolPoint<f64>;
pub type SolTangent64 = SolTangent<f64>;
pub type SolIsometry64 = SolIsometry<f64>;
pub type DirectionParams64 = DirectionParams<f64>;
pub type GeodesicArc64 = GeodesicArc<f64>;
pub type TriangleAngles64 = TriangleAngles<f64>;
pub type IsopticSpec64 = IsopticSpec<f64>;
pub type TriMesh64 = TriMesh<f64>;
