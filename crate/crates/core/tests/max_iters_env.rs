//! Kept in its own binary: it mutates the process environment.

use fibered_links::triangulation::fixtures::whitehead;
use fibered_links::{build_gluing_system, solve_shapes, SolveStatus};

#[test]
fn iteration_cap_comes_from_the_environment() {
    let s = build_gluing_system(&whitehead()).unwrap();
    std::env::set_var("FIBERED_LINKS_MAX_ITERS", "0");
    let capped = solve_shapes(&s);
    assert!(!capped.converged);
    assert_eq!(capped.iterations, 0);
    assert_eq!(capped.status, SolveStatus::Failed);

    std::env::set_var("FIBERED_LINKS_MAX_ITERS", "50");
    let sol = solve_shapes(&s);
    assert!(sol.converged);
    assert_eq!(sol.status, SolveStatus::Geometric);
    std::env::remove_var("FIBERED_LINKS_MAX_ITERS");
}
