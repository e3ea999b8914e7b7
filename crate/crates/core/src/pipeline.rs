//! End-to-end run on a lift file: checks, triangulation, shapes and bounds.

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::bounds::{bounds_report, BoundsReport, PantsArcs};
use crate::curve::{filling_check, self_intersection, FillingReport};
use crate::error::Result;
use crate::geometry::{build_gluing_system, solve_shapes_with, volume, SolveStatus, SolverOptions};
use crate::lift::parse_lift;
use crate::triangulation::{build_drilled_complement, validate, IdealTriangulation};

/// Tolerance on each side of the volume sandwich.
pub const SANDWICH_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Debug, Default)]
pub struct PipelineOptions {
    pub family_genus: Option<u32>,
    pub arcs: Option<PantsArcs>,
    pub solver: Option<SolverOptions>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TriangulationStats {
    pub tetrahedra: usize,
    pub edges: usize,
    pub cusps: Vec<String>,
    pub valid: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolverOutcome {
    pub status: SolveStatus,
    pub geometric: bool,
    pub converged: bool,
    pub residual: f64,
    pub iterations: usize,
    pub volume: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sandwich {
    Holds,
    Violated,
    Indeterminate,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub version: String,
    pub input_digest: String,
    pub filling: FillingReport,
    pub self_intersection: usize,
    pub triangulation: TriangulationStats,
    pub solver: SolverOutcome,
    pub bounds: BoundsReport,
    pub sandwich: Sandwich,
}

pub fn digest(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

pub fn triangulation_stats(t: &IdealTriangulation) -> TriangulationStats {
    let v = validate(t);
    TriangulationStats {
        tetrahedra: v.num_tetrahedra,
        edges: v.num_edges,
        cusps: t.cusps.iter().map(|c| c.to_string()).collect(),
        valid: v.valid,
    }
}

/// Solves a triangulation and summarizes the outcome.
pub fn solve_triangulation(t: &IdealTriangulation, opts: &SolverOptions) -> Result<SolverOutcome> {
    let system = build_gluing_system(t)?;
    let sol = solve_shapes_with(&system, opts);
    Ok(SolverOutcome {
        status: sol.status,
        geometric: sol.geometric,
        converged: sol.converged,
        residual: sol.residual,
        iterations: sol.iterations,
        volume: volume(&sol).ok(),
    })
}

/// Holds when the structure is geometric and `lower <= vol < upper` up to
/// [`SANDWICH_TOLERANCE`], taking the largest available lower bound.
pub fn sandwich_verdict(solver: &SolverOutcome, bounds: &BoundsReport) -> Sandwich {
    let Some(vol) = solver.volume.filter(|_| solver.geometric) else {
        return Sandwich::Indeterminate;
    };
    let lower = bounds
        .family_lower
        .into_iter()
        .chain([bounds.pants_lower, 0.0])
        .fold(f64::NEG_INFINITY, f64::max);
    if lower <= vol + SANDWICH_TOLERANCE && vol < bounds.upper + SANDWICH_TOLERANCE {
        Sandwich::Holds
    } else {
        Sandwich::Violated
    }
}

pub fn run_pipeline(text: &str, opts: &PipelineOptions) -> Result<RunReport> {
    let lift = parse_lift(text)?;
    let filling = filling_check(lift.base());
    let c = self_intersection(lift.base())?;
    let tri = build_drilled_complement(&lift)?;
    let solver_opts = opts.solver.unwrap_or_else(SolverOptions::from_env);
    let solver = solve_triangulation(&tri, &solver_opts)?;
    let bounds = bounds_report(c, opts.family_genus, opts.arcs.as_ref())?;
    let sandwich = sandwich_verdict(&solver, &bounds);
    Ok(RunReport {
        version: env!("CARGO_PKG_VERSION").to_string(),
        input_digest: digest(text),
        filling,
        self_intersection: c,
        triangulation: triangulation_stats(&tri),
        solver,
        bounds,
        sandwich,
    })
}
