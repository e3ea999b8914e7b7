//! Small census triangulations with known complete structures.

use super::{parse_tri, IdealTriangulation};

pub const FIGURE_EIGHT_TRI: &str = include_str!("../../../../fixtures/fig8.tri");
pub const WHITEHEAD_TRI: &str = include_str!("../../../../fixtures/whitehead.tri");

/// Two tetrahedra, one cusp; complete structure has both shapes `e^{iπ/3}`.
pub fn figure_eight() -> IdealTriangulation {
    parse_tri(FIGURE_EIGHT_TRI).expect("fixture parses")
}

/// Four tetrahedra, two cusps; complete structure has all shapes `i`.
pub fn whitehead() -> IdealTriangulation {
    parse_tri(WHITEHEAD_TRI).expect("fixture parses")
}
