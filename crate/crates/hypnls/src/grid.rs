//! Radial grids on ℍ^d and the measure-weighted operations over them.
//!
//! A grid holds the interior nodes r_j = j·dr, j = 1..n-1 of an equispaced
//! subdivision of [0, r_max]; the endpoints are excluded (the origin by
//! radial regularity, r_max by the Dirichlet truncation). The volume weights
//! ω_{d-1} sinh^{d-1}(r_j) dr turn node sums into trapezoid-rule integrals
//! against the hyperbolic measure dμ — both endpoint integrand values vanish
//! (sinh^{d-1} at 0, the Dirichlet zero at r_max), so plain weighted sums are
//! already the full rule.

use crate::error::{Error, Result};
use crate::params::ModelParams;
use num_complex::Complex64;
use std::sync::Arc;

#[derive(Debug)]
pub struct RadialGrid {
    pub params: ModelParams,
    pub r_max: f64,
    /// Subdivision count; the grid stores the n-1 interior nodes.
    pub n: usize,
    pub dr: f64,
    nodes: Vec<f64>,
    vol_weights: Vec<f64>,
}

impl RadialGrid {
    pub fn new(params: ModelParams, r_max: f64, n: usize) -> Result<Arc<Self>> {
        if !(r_max > 0.0) || !r_max.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "r_max = {r_max} must be positive and finite"
            )));
        }
        if n < 8 {
            return Err(Error::InvalidConfig(format!(
                "grid subdivision n = {n} too small; need n >= 8"
            )));
        }
        let dr = r_max / n as f64;
        let omega = params.sphere_area();
        let exponent = (params.d - 1) as i32;
        let mut nodes = Vec::with_capacity(n - 1);
        let mut vol_weights = Vec::with_capacity(n - 1);
        for j in 1..n {
            let r = j as f64 * dr;
            nodes.push(r);
            vol_weights.push(omega * r.sinh().powi(exponent) * dr);
        }
        Ok(Arc::new(Self {
            params,
            r_max,
            n,
            dr,
            nodes,
            vol_weights,
        }))
    }

    /// Interior nodes r_1 .. r_{n-1}.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Trapezoid weights against dμ at the interior nodes.
    pub fn vol_weights(&self) -> &[f64] {
        &self.vol_weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Structural compatibility: same dimension and identical node layout.
    pub fn compatible(&self, other: &RadialGrid) -> bool {
        std::ptr::eq(self, other)
            || (self.params.d == other.params.d && self.r_max == other.r_max && self.n == other.n)
    }

    fn check_len(&self, len: usize, what: &str) -> Result<()> {
        if len != self.len() {
            return Err(Error::GridMismatch(format!(
                "{what}: field length {len} does not match grid length {}",
                self.len()
            )));
        }
        Ok(())
    }

    /// ∫ f dμ by the trapezoid rule.
    pub fn integrate(&self, values: &[Complex64]) -> Result<Complex64> {
        self.check_len(values.len(), "integrate")?;
        let mut acc = Complex64::new(0.0, 0.0);
        for (v, w) in values.iter().zip(&self.vol_weights) {
            acc += v * w;
        }
        Ok(acc)
    }

    /// ∫ g dμ for real samples.
    pub fn integrate_real(&self, values: &[f64]) -> Result<f64> {
        self.check_len(values.len(), "integrate_real")?;
        Ok(values
            .iter()
            .zip(&self.vol_weights)
            .map(|(v, w)| v * w)
            .sum())
    }

    /// L^p(μ) norm; `p = f64::INFINITY` gives the max norm.
    pub fn lp_norm(&self, values: &[Complex64], p: f64) -> Result<f64> {
        self.check_len(values.len(), "lp_norm")?;
        if p == f64::INFINITY {
            return Ok(values.iter().map(|v| v.norm()).fold(0.0, f64::max));
        }
        if !(p >= 1.0) {
            return Err(Error::ExponentOutOfRange(format!(
                "lp_norm requires p >= 1 or infinity, got {p}"
            )));
        }
        let mut acc = 0.0;
        for (v, w) in values.iter().zip(&self.vol_weights) {
            acc += v.norm().powf(p) * w;
        }
        Ok(acc.powf(1.0 / p))
    }

    /// Hermitian inner product ⟨f, g⟩ = ∫ f ḡ dμ.
    pub fn l2_inner(&self, f: &[Complex64], g: &[Complex64]) -> Result<Complex64> {
        self.check_len(f.len(), "l2_inner lhs")?;
        self.check_len(g.len(), "l2_inner rhs")?;
        let mut acc = Complex64::new(0.0, 0.0);
        for ((a, b), w) in f.iter().zip(g).zip(&self.vol_weights) {
            acc += a * b.conj() * w;
        }
        Ok(acc)
    }

    /// Fraction of the L² mass sitting within the outer 10% of the domain.
    pub fn boundary_mass_fraction(&self, values: &[Complex64]) -> Result<f64> {
        self.check_len(values.len(), "boundary_mass_fraction")?;
        let cut = 0.9 * self.r_max;
        let mut outer = 0.0;
        let mut total = 0.0;
        for ((v, w), &r) in values.iter().zip(&self.vol_weights).zip(&self.nodes) {
            let m = v.norm_sqr() * w;
            total += m;
            if r >= cut {
                outer += m;
            }
        }
        if total == 0.0 {
            return Ok(0.0);
        }
        Ok(outer / total)
    }

    /// Radial Laplacian ∂_r² + (d-1) coth(r) ∂_r by second-order central
    /// differences. The ghost value below r_1 is the origin value of the
    /// even extension f(-r) = f(r) (quadratic fit with f'(0) = 0); the ghost
    /// at r_max is the Dirichlet zero.
    pub fn laplacian(&self, values: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_len(values.len(), "laplacian")?;
        let m = self.len();
        let inv_dr2 = 1.0 / (self.dr * self.dr);
        let inv_2dr = 0.5 / self.dr;
        let dm1 = (self.params.d - 1) as f64;
        let mut out = vec![Complex64::new(0.0, 0.0); m];
        for j in 0..m {
            let below = if j == 0 {
                // Even-extension origin value: f(0) ≈ (4 f_1 - f_2) / 3.
                (4.0 * values[0] - values[1]) / 3.0
            } else {
                values[j - 1]
            };
            let above = if j + 1 == m {
                Complex64::new(0.0, 0.0)
            } else {
                values[j + 1]
            };
            let second = (above - 2.0 * values[j] + below) * inv_dr2;
            let first = (above - below) * inv_2dr;
            let coth = 1.0 / self.nodes[j].tanh();
            out[j] = second + dm1 * coth * first;
        }
        Ok(out)
    }
}

/// Complex field sampled on the interior nodes of a grid.
#[derive(Debug, Clone)]
pub struct RadialField {
    pub grid: Arc<RadialGrid>,
    pub values: Vec<Complex64>,
}

impl RadialField {
    pub fn zeros(grid: &Arc<RadialGrid>) -> Self {
        Self {
            grid: Arc::clone(grid),
            values: vec![Complex64::new(0.0, 0.0); grid.len()],
        }
    }

    pub fn from_fn<F: FnMut(f64) -> Complex64>(grid: &Arc<RadialGrid>, mut f: F) -> Self {
        Self {
            grid: Arc::clone(grid),
            values: grid.nodes().iter().map(|&r| f(r)).collect(),
        }
    }

    pub fn from_real_fn<F: FnMut(f64) -> f64>(grid: &Arc<RadialGrid>, mut f: F) -> Self {
        Self::from_fn(grid, |r| Complex64::new(f(r), 0.0))
    }

    pub fn l2_norm(&self) -> f64 {
        self.grid
            .lp_norm(&self.values, 2.0)
            .expect("field length matches its own grid")
    }

    pub fn scale(&mut self, c: Complex64) {
        for v in &mut self.values {
            *v *= c;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn params(d: usize) -> ModelParams {
        ModelParams::new(d, 0.5).unwrap()
    }

    #[test]
    fn rejects_degenerate_configs() {
        assert!(matches!(
            RadialGrid::new(params(3), 0.0, 64),
            Err(Error::InvalidConfig(_))
        ));
        assert!(matches!(
            RadialGrid::new(params(3), -4.0, 64),
            Err(Error::InvalidConfig(_))
        ));
        assert!(matches!(
            RadialGrid::new(params(3), 10.0, 7),
            Err(Error::InvalidConfig(_))
        ));
    }

    #[test]
    fn nodes_are_interior_and_equispaced() {
        let g = RadialGrid::new(params(3), 10.0, 64).unwrap();
        assert_eq!(g.len(), 63);
        assert!((g.nodes()[0] - g.dr).abs() < 1e-15);
        assert!((g.nodes()[62] - (10.0 - g.dr)).abs() < 1e-12);
        for w in g.nodes().windows(2) {
            assert!((w[1] - w[0] - g.dr).abs() < 1e-12);
        }
    }

    #[test]
    fn d2_ball_volume_matches_closed_form() {
        // ∫_0^1 2π sinh r dr = 2π (cosh 1 - 1); the interior trapezoid sum
        // converges to it at first order in dr (missing right endpoint half).
        let oracle = 2.0 * PI * (1.0_f64.cosh() - 1.0);
        let coarse: f64 = RadialGrid::new(params(2), 1.0, 512)
            .unwrap()
            .vol_weights()
            .iter()
            .sum();
        let fine: f64 = RadialGrid::new(params(2), 1.0, 4096)
            .unwrap()
            .vol_weights()
            .iter()
            .sum();
        assert!((coarse - oracle).abs() < 2.0 * PI * 1.0_f64.sinh() / 512.0);
        assert!((fine - oracle).abs() < (coarse - oracle).abs() / 4.0);
    }

    #[test]
    fn exponential_integrals_match_closed_forms() {
        // d = 3: ∫ e^{-4r} dμ = 4π ∫ e^{-4r} sinh² r dr = π/6.
        let g3 = RadialGrid::new(params(3), 40.0, 4096).unwrap();
        let f3 = RadialField::from_real_fn(&g3, |r| (-4.0 * r).exp());
        let v3 = g3.integrate(&f3.values).unwrap().re;
        assert!((v3 - PI / 6.0).abs() < 1e-6, "got {v3}, want {}", PI / 6.0);

        // d = 2: ∫ e^{-2r} dμ = 2π ∫ e^{-2r} sinh r dr = 2π/3.
        let g2 = RadialGrid::new(params(2), 40.0, 4096).unwrap();
        let f2 = RadialField::from_real_fn(&g2, |r| (-2.0 * r).exp());
        let v2 = g2.integrate(&f2.values).unwrap().re;
        assert!(
            (v2 - 2.0 * PI / 3.0).abs() < 1e-4,
            "got {v2}, want {}",
            2.0 * PI / 3.0
        );
    }

    #[test]
    fn lp_norm_basics() {
        let g = RadialGrid::new(params(3), 10.0, 128).unwrap();
        let f = RadialField::from_real_fn(&g, |r| (-r * r).exp());
        let n2 = g.lp_norm(&f.values, 2.0).unwrap();
        assert!(n2 > 0.0);
        // Homogeneity.
        let mut f3 = f.clone();
        f3.scale(Complex64::new(3.0, 0.0));
        let n2s = g.lp_norm(&f3.values, 2.0).unwrap();
        assert!((n2s / n2 - 3.0).abs() < 1e-12);
        // Max norm of e^{-r²} on interior nodes is attained at r_1.
        let ninf = g.lp_norm(&f.values, f64::INFINITY).unwrap();
        assert!((ninf - (-g.dr * g.dr).exp()).abs() < 1e-15);
        // Consistency with the inner product.
        let ip = g.l2_inner(&f.values, &f.values).unwrap();
        assert!((ip.re.sqrt() - n2).abs() < 1e-12);
        assert!(ip.im.abs() < 1e-18);
        // p < 1 rejected.
        assert!(g.lp_norm(&f.values, 0.5).is_err());
    }

    #[test]
    fn laplacian_of_a_smooth_profile_converges_at_second_order() {
        // f = e^{-r²}: Δf = f'' + (d-1) coth(r) f' with
        // f' = -2r e^{-r²}, f'' = (4r² - 2) e^{-r²}.
        let p = params(3);
        let exact = |r: f64| {
            let e = (-r * r).exp();
            (4.0 * r * r - 2.0) * e + 2.0 / r.tanh() * (-2.0 * r * e)
        };
        let mut errs = Vec::new();
        for n in [128usize, 256, 512] {
            let g = RadialGrid::new(p, 12.0, n).unwrap();
            let f = RadialField::from_real_fn(&g, |r| (-r * r).exp());
            let lap = g.laplacian(&f.values).unwrap();
            let mut worst = 0.0_f64;
            for (j, &r) in g.nodes().iter().enumerate() {
                if r > 0.9 * g.r_max {
                    continue;
                }
                worst = worst.max((lap[j].re - exact(r)).abs());
            }
            errs.push(worst);
        }
        let order1 = (errs[0] / errs[1]).log2();
        let order2 = (errs[1] / errs[2]).log2();
        assert!(order1 > 1.8, "orders {order1:.2}, {order2:.2}, errs {errs:?}");
        assert!(order2 > 1.8, "orders {order1:.2}, {order2:.2}, errs {errs:?}");
    }

    #[test]
    fn boundary_fraction_detects_outer_mass() {
        let g = RadialGrid::new(params(3), 10.0, 256).unwrap();
        let inner = RadialField::from_real_fn(&g, |r| (-(r - 1.0).powi(2) / 0.1).exp());
        let outer = RadialField::from_real_fn(&g, |r| (-(r - 9.8).powi(2) / 0.01).exp());
        assert!(g.boundary_mass_fraction(&inner.values).unwrap() < 1e-10);
        assert!(g.boundary_mass_fraction(&outer.values).unwrap() > 0.99);
        let zero = RadialField::zeros(&g);
        assert_eq!(g.boundary_mass_fraction(&zero.values).unwrap(), 0.0);
    }

    #[test]
    fn mismatched_lengths_are_rejected() {
        let g = RadialGrid::new(params(3), 10.0, 64).unwrap();
        let bad = vec![Complex64::new(1.0, 0.0); 10];
        assert!(matches!(g.integrate(&bad), Err(Error::GridMismatch(_))));
        assert!(matches!(g.laplacian(&bad), Err(Error::GridMismatch(_))));
    }
}
