//! Ideal triangulations of link complements in unit tangent bundles of
//! hyperbolic orbifolds, built from combinatorial curve diagrams, together
//! with a hyperbolic shape solver and the volume bounds that go with them.
//!
//! The pipeline: a [`CurveDiagram`] describes a filling multi-curve on a
//! surface or orbifold; a [`LiftDiagram`] adds fiber data; the builder
//! produces an [`IdealTriangulation`] of the complement with every face
//! fiber drilled; [`geometry`] solves its gluing equations; [`bounds`]
//! evaluates the volume estimates.

pub mod bounds;
pub mod curve;
pub mod error;
pub mod geometry;
pub mod lift;
pub mod pipeline;
pub mod triangulation;

pub use bounds::{
    canonical_arc_class, count_classes, family_lower_bound, pants_lower_bound, six_simple_classes,
    upper_bound, ArcClass, BoundsReport, PantsArcs, Word,
};
pub use curve::{
    filling_check, genus, parse_base_diagram, parse_diagram, self_intersection, trace_faces,
    validate_components, write_diagram, Component, Corner, CrossingId, CurveDiagram, Decoration,
    Face, FaceKey, FillingReport, Passage, Ribbon, Sign, Slot,
};
pub use error::{Error, Result};
pub use geometry::{
    bloch_wigner, build_gluing_system, lobachevsky, solve_shapes, volume, GluingSystem,
    ShapeSolution, SolveStatus, V3, V8,
};
pub use lift::{
    attach_lift, export_pants_arcs, gen_twist_family, is_alternating, make_alternating,
    parse_lift, star_sum, write_lift, LiftDiagram,
};
pub use pipeline::{run_pipeline, RunReport};
pub use triangulation::{
    build_drilled_complement, parse_tri, validate, write_tri, CuspLabel, IdealTriangulation,
    ValidationReport,
};
