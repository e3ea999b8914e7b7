//! Volume bounds: the tetrahedron-count upper bound, the lower bound for the
//! twist family, and the pants-decomposition lower bound.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{V3, V8};

mod pants;
mod words;

pub use pants::{count_classes, parse_pants_arcs, six_simple_classes, write_pants_arcs, Arc, Pants, PantsArcs};
pub use words::{boundary_word, canonical_arc_class, double_coset_min, ArcClass, Letter, Word};

/// `8 v3 c`.
pub fn upper_bound(c: usize) -> Result<f64> {
    if c < 1 {
        return Err(Error::Precondition("upper bound needs at least one crossing".into()));
    }
    Ok(8.0 * V3 * c as f64)
}

/// `(v8 / 2) (i - (2 - 2g))`, valid for the alternating family lifts.
pub fn family_lower_bound(g: u32, i: usize) -> f64 {
    V8 / 2.0 * (i as f64 - (2.0 - 2.0 * g as f64))
}

/// Literal `(v3 / 2) sum (k - 3)` and the variant with negative terms clamped.
pub fn pants_lower_bound(counts: &[usize]) -> (f64, f64) {
    let literal: i64 = counts.iter().map(|&k| k as i64 - 3).sum();
    let clamped: i64 = counts.iter().map(|&k| (k as i64 - 3).max(0)).sum();
    (V3 / 2.0 * literal as f64, V3 / 2.0 * clamped as f64)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsReport {
    pub upper: f64,
    pub family_lower: Option<f64>,
    pub pants_lower: f64,
    pub pants_lower_clamped: f64,
    pub per_pants_counts: Vec<usize>,
}

/// Collects all bounds for a diagram with `c` crossings. `family_genus` is
/// given when the caller vouches that the lift comes from the twist family or
/// a star sum of its members.
pub fn bounds_report(c: usize, family_genus: Option<u32>, arcs: Option<&PantsArcs>) -> Result<BoundsReport> {
    let counts = arcs.map(count_classes).unwrap_or_default();
    let (pants_lower, pants_lower_clamped) = pants_lower_bound(&counts);
    Ok(BoundsReport {
        upper: upper_bound(c)?,
        family_lower: family_genus.map(|g| family_lower_bound(g, c)),
        pants_lower,
        pants_lower_clamped,
        per_pants_counts: counts,
    })
}
