//! Hyperbolic structures on ideal triangulations.

mod gluing;
mod solver;
mod special;

pub use gluing::{build_gluing_system, edge_shape_kind, Equation, EquationKind, GluingSystem};
pub use solver::{solve_shapes, solve_shapes_with, volume, ShapeSolution, SolveStatus, SolverOptions};
pub use special::{bloch_wigner, clausen, lobachevsky};

/// Volume of the regular ideal tetrahedron, `3 Л(π/3)`.
pub const V3: f64 = 1.0149416064096536;
/// Volume of the regular ideal octahedron, `8 Л(π/4)`.
pub const V8: f64 = 3.663862376708876;
