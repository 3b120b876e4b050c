//! Gauss–Legendre and Gauss–Hermite rules and composite integration of
//! complex-valued integrands.

use num_complex::Complex64;
use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Nodes and weights of an n-point Gaussian rule.
#[derive(Debug, Clone)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    /// Legendre rule on `[-1, 1]`.
    pub fn legendre(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, d) = legendre_eval(n, z);
                let dz = p / d;
                z -= dz;
                if dz.abs() <= 1e-16 {
                    break;
                }
            }
            let (_, dp) = legendre_eval(n, z);
            let w = 2.0 / ((1.0 - z * z) * dp * dp);
            nodes[i] = -z;
            nodes[n - 1 - i] = z;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    /// Hermite rule for the weight `e^{-t²}` on the real line.
    pub fn hermite(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        let m = n.div_ceil(2);
        let mut z = 0.0f64;
        for i in 0..m {
            z = match i {
                0 => (2.0 * nf + 1.0).sqrt() - 1.855_75 * (2.0 * nf + 1.0).powf(-1.0 / 6.0),
                1 => z - 1.14 * nf.powf(0.426) / z,
                2 => 1.86 * z - 0.86 * nodes[n - 1],
                3 => 1.91 * z - 0.91 * nodes[n - 2],
                _ => 2.0 * z - nodes[n - 1 - (i - 2)],
            };
            let mut pp = 0.0;
            for _ in 0..100 {
                let (p, d) = hermite_eval(n, z);
                pp = d;
                let dz = p / d;
                z -= dz;
                if dz.abs() <= 1e-15 * z.abs().max(1.0) {
                    break;
                }
            }
            let (_, d) = hermite_eval(n, z);
            if d != 0.0 {
                pp = d;
            }
            let w = 2.0 / (pp * pp);
            nodes[n - 1 - i] = z;
            nodes[i] = -z;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    /// Applies the rule mapped onto `[lo, hi]`.
    pub fn integrate<F>(&self, lo: f64, hi: f64, f: F) -> Complex64
    where
        F: Fn(f64) -> Complex64,
    {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        let mut acc = Complex64::new(0.0, 0.0);
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += f(mid + half * x) * *w;
        }
        acc * half
    }
}

// Legendre P_n(z) and its derivative.
fn legendre_eval(n: usize, z: f64) -> (f64, f64) {
    let mut p1 = 1.0;
    let mut p2 = 0.0;
    for j in 0..n {
        let p3 = p2;
        p2 = p1;
        let jf = j as f64;
        p1 = ((2.0 * jf + 1.0) * z * p2 - jf * p3) / (jf + 1.0);
    }
    let nf = n as f64;
    let dp = nf * (z * p1 - p2) / (z * z - 1.0);
    (p1, dp)
}

// Orthonormal Hermite function recurrence; returns (H̃_n(z), sqrt(2n) H̃_{n-1}(z)).
fn hermite_eval(n: usize, z: f64) -> (f64, f64) {
    let mut p1 = PI.powf(-0.25);
    let mut p2 = 0.0;
    for j in 1..=n {
        let p3 = p2;
        p2 = p1;
        let jf = j as f64;
        p1 = z * (2.0 / jf).sqrt() * p2 - ((jf - 1.0) / jf).sqrt() * p3;
    }
    (p1, (2.0 * n as f64).sqrt() * p2)
}

/// Order of the panel rule used by [`integrate`].
pub const PANEL_ORDER: usize = 20;

/// Nodes used by Gauss–Hermite integration of Gaussian-decay integrands.
pub const HERMITE_ORDER: usize = 96;

pub fn panel_rule() -> &'static GaussRule {
    static RULE: OnceLock<GaussRule> = OnceLock::new();
    RULE.get_or_init(|| GaussRule::legendre(PANEL_ORDER))
}

pub fn hermite_rule() -> &'static GaussRule {
    static RULE: OnceLock<GaussRule> = OnceLock::new();
    RULE.get_or_init(|| GaussRule::hermite(HERMITE_ORDER))
}

/// Composite Gauss–Legendre with a fixed number of equal panels.
pub fn integrate_panels<F>(f: &F, lo: f64, hi: f64, panels: usize) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    let rule = panel_rule();
    let width = (hi - lo) / panels as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for p in 0..panels {
        let a = lo + p as f64 * width;
        acc += rule.integrate(a, a + width, f);
    }
    acc
}

/// Composite Gauss–Legendre on `[lo, hi]`, doubling the panel count until two
/// successive estimates agree to `tol` (absolute, or relative when the value
/// exceeds one). `max_width` bounds the initial panel width.
pub fn integrate<F>(f: F, lo: f64, hi: f64, max_width: f64, tol: f64) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    if hi <= lo {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let mut panels = ((hi - lo) / max_width).ceil().max(1.0) as usize;
    let mut prev = integrate_panels(&f, lo, hi, panels);
    let mut estimate = f64::INFINITY;
    for _ in 0..6 {
        panels *= 2;
        let next = integrate_panels(&f, lo, hi, panels);
        estimate = (next - prev).norm();
        if estimate <= tol * next.norm().max(1.0) {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::QuadratureNonConvergence { estimate, tol })
}

/// `∫ g(t) e^{-(t-center)²/(2 width²)} dt` by Gauss–Hermite.
pub fn integrate_gaussian<F>(g: F, center: f64, width: f64) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    let rule = hermite_rule();
    let scale = std::f64::consts::SQRT_2 * width;
    let mut acc = Complex64::new(0.0, 0.0);
    for (t, w) in rule.nodes.iter().zip(&rule.weights) {
        acc += g(center + scale * t) * *w;
    }
    acc * scale
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_is_exact_for_polynomials() {
        let rule = GaussRule::legendre(8);
        for k in 0..16 {
            let got = rule.integrate(-1.0, 1.0, |x| Complex64::new(x.powi(k), 0.0)).re;
            let want = if k % 2 == 0 { 2.0 / (k as f64 + 1.0) } else { 0.0 };
            assert!((got - want).abs() < 1e-14, "k={k}: {got} vs {want}");
        }
        let wsum: f64 = panel_rule().weights.iter().sum();
        assert!((wsum - 2.0).abs() < 1e-14);
    }

    #[test]
    fn hermite_moments() {
        let rule = hermite_rule();
        let wsum: f64 = rule.weights.iter().sum();
        assert!((wsum - PI.sqrt()).abs() < 1e-13);
        // ∫ t^4 e^{-t²} = 3√π/4
        let m4: f64 = rule
            .nodes
            .iter()
            .zip(&rule.weights)
            .map(|(t, w)| w * t.powi(4))
            .sum();
        assert!((m4 - 0.75 * PI.sqrt()).abs() < 1e-13);
        assert!(rule.nodes.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn oscillatory_gaussian() {
        // ∫ e^{iyt} e^{-t²/2} dt = √(2π) e^{-y²/2}
        for y in [0.0, 1.5, 4.0, 9.0] {
            let got = integrate_gaussian(|t| Complex64::new(0.0, y * t).exp(), 0.0, 1.0);
            let want = (2.0 * PI).sqrt() * (-y * y / 2.0f64).exp();
            assert!((got.re - want).abs() < 1e-13 && got.im.abs() < 1e-13, "y={y}");
            let gl = integrate(
                |t| Complex64::new(-t * t / 2.0, y * t).exp(),
                -12.0,
                12.0,
                0.5,
                1e-13,
            )
            .unwrap();
            assert!((gl.re - want).abs() < 1e-13);
        }
    }

    #[test]
    fn non_convergence_is_reported() {
        let r = integrate(|t| Complex64::new((1.0 / t).sin(), 0.0), 1e-9, 1.0, 1.0, 1e-14);
        assert!(matches!(r, Err(Error::QuadratureNonConvergence { .. })));
    }
}
