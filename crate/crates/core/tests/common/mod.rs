#![allow(dead_code)]

use std::collections::BTreeMap;

use fibered_links::bounds::{boundary_word, Word};
use fibered_links::lift::planar_diagram;
use fibered_links::{
    attach_lift, Component, CrossingId, CurveDiagram, Decoration, LiftDiagram, Passage, Ribbon,
    Sign, Slot,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random connected signed Gauss code; any genus.
pub fn random_ribbon(rng: &mut ChaCha8Rng, max_crossings: usize) -> Ribbon {
    loop {
        let c = rng.gen_range(1..=max_crossings);
        let mut passages: Vec<Passage> = (1..=c)
            .flat_map(|i| [Passage::new(i, Slot::A), Passage::new(i, Slot::B)])
            .collect();
        passages.shuffle(rng);
        let k = rng.gen_range(1..=3.min(2 * c));
        let mut cuts: Vec<usize> = (1..2 * c).collect();
        cuts.shuffle(rng);
        let mut cuts: Vec<usize> = cuts.into_iter().take(k - 1).collect();
        cuts.sort();
        cuts.push(2 * c);
        let mut components = Vec::new();
        let mut start = 0;
        for (n, &end) in cuts.iter().enumerate() {
            components.push(Component {
                name: format!("k{n}"),
                passages: passages[start..end].to_vec(),
            });
            start = end;
        }
        let signs = (1..=c)
            .map(|i| (CrossingId::from(i), if rng.gen() { Sign::Positive } else { Sign::Negative }))
            .collect();
        if let Ok(r) = Ribbon::new(signs, components) {
            return r;
        }
    }
}

/// Random closed polygons in general position with a connected diagram.
pub fn random_planar_ribbon(rng: &mut ChaCha8Rng) -> Ribbon {
    loop {
        let n = rng.gen_range(1..=2);
        let polys: Vec<Vec<(i64, i64)>> = (0..n)
            .map(|_| {
                let m = rng.gen_range(3..=6);
                (0..m).map(|_| (rng.gen_range(0..12), rng.gen_range(0..12))).collect()
            })
            .collect();
        if let Ok(r) = planar_diagram(&polys) {
            return r;
        }
    }
}

pub fn all_punctured(r: Ribbon) -> CurveDiagram {
    CurveDiagram::decorate(r, |_, _| Decoration::Puncture).unwrap()
}

pub fn random_lift(rng: &mut ChaCha8Rng, d: CurveDiagram) -> LiftDiagram {
    let over: BTreeMap<CrossingId, Slot> = d
        .crossings()
        .iter()
        .map(|(id, _)| (id.clone(), if rng.gen() { Slot::A } else { Slot::B }))
        .collect();
    attach_lift(d, over, BTreeMap::new()).unwrap()
}

/// Uniform random freely reduced word of length at most `max_len`.
pub fn random_word(rng: &mut ChaCha8Rng, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    let mut letters: Vec<i8> = Vec::new();
    while letters.len() < len {
        let l = *[1i8, -1, 2, -2].choose(rng).unwrap();
        if letters.last() != Some(&-l) {
            letters.push(l);
        }
    }
    Word::reduce(letters)
}

/// Shortlex minimum of `x_i^m w x_j^n` over `|m|, |n| <= range`.
pub fn brute_force_min(w: &Word, i: u8, j: u8, range: i64) -> Word {
    let (xi, xj) = (boundary_word(i), boundary_word(j));
    let mut best: Option<Word> = None;
    for m in -range..=range {
        for n in -range..=range {
            let c = xi.pow(m).mul(w).mul(&xj.pow(n));
            if best.as_ref().is_none_or(|b| c < *b) {
                best = Some(c);
            }
        }
    }
    best.unwrap()
}

pub fn random_decorations(rng: &mut ChaCha8Rng, r: Ribbon) -> CurveDiagram {
    CurveDiagram::decorate(r, |_, _| match rng.gen_range(0..3) {
        0 => Decoration::Disk,
        1 => Decoration::Puncture,
        _ => Decoration::Cone(rng.gen_range(2..=5)),
    })
    .unwrap()
}

pub fn fixture(name: &str) -> String {
    let path = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

pub fn random_upper_half_plane(rng: &mut ChaCha8Rng) -> num_complex::Complex64 {
    // log-uniform radius so that points near 0, 1 and infinity all show up
    let r = 10f64.powf(rng.gen_range(-3.0..3.0));
    let t = rng.gen_range(1e-3..std::f64::consts::PI - 1e-3);
    num_complex::Complex64::from_polar(r, t) + rng.gen_range(-2.0..2.0)
}

/// A gluing system with random small integer coefficients.
pub fn random_system(rng: &mut ChaCha8Rng) -> fibered_links::GluingSystem {
    use fibered_links::geometry::{Equation, EquationKind};
    let n = rng.gen_range(1..=8);
    let m = rng.gen_range(1..=2 * n + 2);
    let coeffs = |rng: &mut ChaCha8Rng| -> Vec<i64> { (0..n).map(|_| rng.gen_range(-2..=2)).collect() };
    let equations = (0..m)
        .map(|_| Equation {
            kind: if rng.gen() { EquationKind::Edge } else { EquationKind::Cusp },
            a: coeffs(rng),
            b: coeffs(rng),
            c: coeffs(rng),
            target: rng.gen_range(0..=2) as f64 * std::f64::consts::PI,
        })
        .collect();
    fibered_links::GluingSystem { num_tetrahedra: n, equations }
}

/// Random log-shapes with imaginary parts strictly inside (0, pi).
pub fn random_log_shapes(rng: &mut ChaCha8Rng, n: usize) -> Vec<num_complex::Complex64> {
    (0..n)
        .map(|_| num_complex::Complex64::new(rng.gen_range(-1.5..1.5), rng.gen_range(0.2..2.9)))
        .collect()
}

/// Largest relative gap between the analytic Jacobian and central differences.
pub fn jacobian_fd_error(s: &fibered_links::GluingSystem, w: &[num_complex::Complex64]) -> f64 {
    let h = 1e-6;
    let jac = s.jacobian(w);
    let mut worst: f64 = 0.0;
    for j in 0..w.len() {
        let (mut wp, mut wm) = (w.to_vec(), w.to_vec());
        wp[j] += h;
        wm[j] -= h;
        let (fp, fm) = (s.residual_vector(&wp), s.residual_vector(&wm));
        for r in 0..fp.len() {
            let fd = (fp[r] - fm[r]) / (2.0 * h);
            let exact = jac[(r, j)];
            worst = worst.max((fd - exact).norm() / exact.norm().max(1.0));
        }
    }
    worst
}

/// Brute-force canonical class: ordered endpoints, window search, both
/// orientations when the endpoints agree. `None` if the window minimum moves
/// between ranges 6 and 8.
pub fn oracle_class(w: &Word, i: u8, j: u8) -> Option<(u8, u8, Word)> {
    let (i, j, w) = if i > j { (j, i, w.inverse()) } else { (i, j, w.clone()) };
    let mut cands = vec![w.clone()];
    if i == j {
        cands.push(w.inverse());
    }
    let mut best: Option<Word> = None;
    for c in cands {
        let m6 = brute_force_min(&c, i, j, 6);
        if brute_force_min(&c, i, j, 8) != m6 {
            return None;
        }
        if best.as_ref().is_none_or(|b| m6 < *b) {
            best = Some(m6);
        }
    }
    Some((i, j, best.unwrap()))
}
