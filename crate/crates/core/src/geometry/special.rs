//! Lobachevsky function and Bloch–Wigner dilogarithm.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

const TERMS: usize = 40;

/// `ζ(2k)` for `k = 1..=TERMS`.
fn zeta_even() -> &'static [f64; TERMS] {
    static TABLE: OnceLock<[f64; TERMS]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [0.0; TERMS];
        t[0] = PI.powi(2) / 6.0;
        t[1] = PI.powi(4) / 90.0;
        t[2] = PI.powi(6) / 945.0;
        for (k, z) in t.iter_mut().enumerate().skip(3) {
            let s = 2 * (k as i32 + 1);
            let n = 64;
            // head sum plus Euler–Maclaurin tail
            let head: f64 = (1..n).rev().map(|m| (m as f64).powi(-s)).sum();
            let nf = n as f64;
            *z = head + nf.powi(1 - s) / (s - 1) as f64 + 0.5 * nf.powi(-s);
        }
        t
    })
}

/// Clausen function `Cl2(x) = Σ sin(nx)/n²`.
pub fn clausen(x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    let mut x = x.rem_euclid(2.0 * PI);
    if x > PI {
        x -= 2.0 * PI;
    }
    if x == 0.0 {
        return 0.0;
    }
    // Cl2(x) = x - x ln|x| + Σ ζ(2k) x (x/2π)^{2k} / (k (2k+1))
    let r2 = (x / (2.0 * PI)).powi(2);
    let zeta = zeta_even();
    let mut sum = 0.0;
    let mut pow = 1.0;
    for k in 1..=TERMS {
        pow *= r2;
        let term = zeta[k - 1] * pow / (k as f64 * (2 * k + 1) as f64);
        sum += term;
        if term < 1e-18 * sum {
            break;
        }
    }
    x - x * x.abs().ln() + x * sum
}

/// Lobachevsky function `Л(θ) = -∫₀^θ log|2 sin t| dt = Cl2(2θ) / 2`.
pub fn lobachevsky(theta: f64) -> f64 {
    0.5 * clausen(2.0 * theta)
}

/// `Li2(z)` for `|z| <= 1`, `Re z <= 1/2`, via the Bernoulli series in
/// `u = -log(1 - z)`.
fn li2_near_zero(z: Complex64) -> Complex64 {
    let u = -(Complex64::new(1.0, 0.0) - z).ln();
    // B0 u + B1 u²/2 + Σ_k B_2k u^{2k+1}/(2k+1)!
    let mut sum = u - u * u / 4.0;
    let zeta = zeta_even();
    let r = u / (2.0 * PI);
    let r2 = r * r;
    let mut pow = Complex64::new(1.0, 0.0);
    for k in 1..=TERMS {
        pow *= r2;
        let sign = if k % 2 == 1 { 2.0 } else { -2.0 };
        let term = u * pow * (sign * zeta[k - 1] / (2 * k + 1) as f64);
        sum += term;
        if term.norm() < 1e-18 * sum.norm() {
            break;
        }
    }
    sum
}

/// Bloch–Wigner dilogarithm `D(z) = Im Li2(z) + arg(1 - z) log|z|`: the
/// volume of the ideal tetrahedron of shape `z`, negative below the real axis.
pub fn bloch_wigner(z: Complex64) -> f64 {
    if z.im == 0.0 || !z.is_finite() {
        return 0.0;
    }
    let one = Complex64::new(1.0, 0.0);
    let images: [(Complex64, f64); 6] = [
        (z, 1.0),
        (one - one / z, 1.0),
        (one / (one - z), 1.0),
        (one / z, -1.0),
        (one - z, -1.0),
        (z / (z - one), -1.0),
    ];
    let (w, sign) = images
        .into_iter()
        .find(|(w, _)| w.norm() <= 1.0 && w.re <= 0.5)
        .expect("one image lies in the fundamental region");
    let li2 = li2_near_zero(w);
    sign * (li2.im + (one - w).arg() * w.norm().ln())
}
