//! Special-function support: complex log-Gamma (Lanczos) and cached
//! Gauss–Legendre rules.

use num_complex::Complex64;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Lanczos coefficients, g = 7, 9 terms. Relative accuracy ~1e-14 on the
/// half-plane Re z >= 0.5 after the shifted evaluation below.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_C: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Principal-branch log-Gamma for complex arguments off the non-positive
/// real axis. Arguments with Re z < 0.5 are shifted up by the recurrence
/// ln Γ(z) = ln Γ(z+1) - ln z, which covers the purely imaginary arguments
/// used by the Plancherel density.
pub(crate) fn ln_gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // Shift into the well-conditioned half-plane.
        return ln_gamma(z + 1.0) - z.ln();
    }
    let zm1 = z - 1.0;
    let mut x = Complex64::new(LANCZOS_C[0], 0.0);
    for (i, &c) in LANCZOS_C.iter().enumerate().skip(1) {
        x += c / (zm1 + i as f64);
    }
    let t = zm1 + LANCZOS_G + 0.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (zm1 + 0.5) * t.ln() - t + x.ln()
}

/// Real Gamma for positive arguments (used for sphere areas and the
/// normalisation of the spherical-function quadrature).
pub(crate) fn gamma_real(x: f64) -> f64 {
    ln_gamma(Complex64::new(x, 0.0)).re.exp()
}

/// Gauss–Legendre rule on [-1, 1].
pub(crate) struct GlRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GlRule {
    /// Integrates f over [a, b].
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = 0.0;
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + half * x);
        }
        acc * half
    }
}

fn build_gl(order: usize) -> GlRule {
    assert!(order >= 1);
    let m = order;
    let mut nodes = vec![0.0; m];
    let mut weights = vec![0.0; m];
    let half = m.div_ceil(2);
    for i in 0..half {
        // Tricomi-style initial guess, then Newton on P_m.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
        let mut pp = 0.0;
        for _ in 0..100 {
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=m {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            // p1 = P_m(x), p0 = P_{m-1}(x).
            pp = m as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / pp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * pp * pp);
        nodes[i] = -x;
        weights[i] = w;
        nodes[m - 1 - i] = x;
        weights[m - 1 - i] = w;
    }
    if m % 2 == 1 {
        // Central node of odd rules is exactly zero.
        nodes[m / 2] = 0.0;
    }
    GlRule { nodes, weights }
}

/// Cached Gauss–Legendre rule lookup. Rules are immutable once built and
/// shared freely across threads.
pub(crate) fn gauss_legendre(order: usize) -> Arc<GlRule> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GlRule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(r) = cache.lock().unwrap().get(&order) {
        return Arc::clone(r);
    }
    let built = Arc::new(build_gl(order));
    let mut guard = cache.lock().unwrap();
    Arc::clone(guard.entry(order).or_insert(built))
}
