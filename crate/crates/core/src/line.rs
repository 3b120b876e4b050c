//! Complex functions on the real line: the reduced functions `h(P)` of the
//! Landau construction and the inputs of the Zak transform.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::cascade::SampledFunction;
use crate::error::Result;
use crate::quadrature;

/// Multiples of the Gaussian width beyond which a Gaussian is treated as zero
/// (`e^{-R²/2} < 1e-21`).
pub const GAUSSIAN_CUTOFF: f64 = 10.0;

#[derive(Debug, Clone, PartialEq)]
pub enum LineFunction {
    /// `scale · Σ_l c_l e^{-i l ω frequency}` for `ω ∈ [lo, hi)`, zero elsewhere.
    TrigPoly {
        terms: Vec<(i64, Complex64)>,
        frequency: f64,
        scale: f64,
        lo: f64,
        hi: f64,
    },
    /// `amplitude · e^{-(ω−center)²/(2 width²)} · e^{i momentum ω}`.
    Gaussian {
        amplitude: Complex64,
        center: f64,
        width: f64,
        momentum: f64,
    },
    /// Piecewise constant on a uniform grid, zero off it.
    Sampled(SampledFunction),
}

/// Where a function lives, for quadrature and truncation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Support {
    Compact { lo: f64, hi: f64 },
    Gaussian { center: f64, width: f64 },
}

impl LineFunction {
    /// Unit-norm Gaussian of the given center and width.
    pub fn gaussian(center: f64, width: f64) -> Self {
        LineFunction::Gaussian {
            amplitude: Complex64::new((PI * width * width).powf(-0.25), 0.0),
            center,
            width,
            momentum: 0.0,
        }
    }

    /// `π^{-1/4} e^{-ω²/2}`.
    pub fn ground_gaussian() -> Self {
        Self::gaussian(0.0, 1.0)
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        match self {
            LineFunction::TrigPoly {
                terms,
                frequency,
                scale,
                lo,
                hi,
            } => {
                if x < *lo || x >= *hi {
                    return Complex64::new(0.0, 0.0);
                }
                terms
                    .iter()
                    .map(|(l, c)| c * Complex64::from_polar(1.0, -(*l as f64) * x * frequency))
                    .sum::<Complex64>()
                    * *scale
            }
            LineFunction::Gaussian {
                amplitude,
                center,
                width,
                momentum,
            } => {
                let t = (x - center) / width;
                amplitude * Complex64::new(-0.5 * t * t, momentum * x).exp()
            }
            LineFunction::Sampled(s) => s.eval(x),
        }
    }

    pub fn support(&self) -> Support {
        match self {
            LineFunction::TrigPoly { lo, hi, .. } => Support::Compact { lo: *lo, hi: *hi },
            LineFunction::Gaussian { center, width, .. } => Support::Gaussian {
                center: *center,
                width: *width,
            },
            LineFunction::Sampled(s) => {
                let (lo, hi) = s.support();
                Support::Compact { lo, hi }
            }
        }
    }

    pub fn is_compact(&self) -> bool {
        matches!(self.support(), Support::Compact { .. })
    }

    /// Interval outside of which the function is zero or negligible.
    pub fn window(&self) -> (f64, f64) {
        match self.support() {
            Support::Compact { lo, hi } => (lo, hi),
            Support::Gaussian { center, width } => (
                center - GAUSSIAN_CUTOFF * width,
                center + GAUSSIAN_CUTOFF * width,
            ),
        }
    }

    /// Points where the function or its derivatives jump, within the window.
    pub fn breakpoints(&self) -> Vec<f64> {
        match self {
            LineFunction::Sampled(s) => (0..=s.len()).map(|i| s.x(i)).collect(),
            _ => {
                let (lo, hi) = self.window();
                vec![lo, hi]
            }
        }
    }

    /// Length over which the function changes appreciably.
    pub fn length_scale(&self) -> f64 {
        match self {
            LineFunction::TrigPoly {
                terms,
                frequency,
                lo,
                hi,
                ..
            } => {
                let deg = terms.iter().map(|(l, _)| l.unsigned_abs()).max().unwrap_or(0) as f64;
                let osc = if deg * frequency.abs() > 0.0 {
                    PI / (deg * frequency.abs())
                } else {
                    f64::INFINITY
                };
                osc.min(hi - lo)
            }
            LineFunction::Gaussian {
                width, momentum, ..
            } => {
                let osc = if *momentum != 0.0 {
                    PI / momentum.abs()
                } else {
                    f64::INFINITY
                };
                width.min(osc)
            }
            LineFunction::Sampled(s) => s.step,
        }
    }

    /// `∫ |f|²`.
    pub fn norm_sqr(&self) -> Result<f64> {
        match self {
            LineFunction::Gaussian {
                amplitude, width, ..
            } => Ok(amplitude.norm_sqr() * width * PI.sqrt()),
            LineFunction::Sampled(s) => Ok(s.norm_sqr()),
            LineFunction::TrigPoly { .. } => {
                let (lo, hi) = self.window();
                let v = quadrature::integrate(
                    |x| Complex64::new(self.eval(x).norm_sqr(), 0.0),
                    lo,
                    hi,
                    0.5 * self.length_scale(),
                    1e-14,
                )?;
                Ok(v.re)
            }
        }
    }

    /// Upper bound on `|f(x)|` used to bound Zak-transform tails: the
    /// Gaussian envelope, or zero/infinity outside/inside a compact support.
    pub fn decay_bound(&self, x: f64) -> f64 {
        match self {
            LineFunction::Gaussian {
                amplitude,
                center,
                width,
                ..
            } => {
                let t = (x - center) / width;
                amplitude.norm() * (-0.5 * t * t).exp()
            }
            _ => {
                let (lo, hi) = self.window();
                if x < lo || x >= hi {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
        }
    }

    /// `∫ g(x) f(x) dx` over `[lo, hi] ∩ window`, Gauss–Legendre panels.
    pub fn integrate_against<G>(&self, g: G, lo: f64, hi: f64, max_width: f64, tol: f64) -> Result<Complex64>
    where
        G: Fn(f64) -> Complex64,
    {
        let (wlo, whi) = self.window();
        let lo = lo.max(wlo);
        let hi = hi.min(whi);
        if hi <= lo {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let width = max_width.min(0.5 * self.length_scale());
        let integrand = |x: f64| g(x) * self.eval(x);
        match self {
            LineFunction::Sampled(_) => {
                let mut acc = Complex64::new(0.0, 0.0);
                let rule = quadrature::GaussRule::legendre(8);
                let breaks = self.breakpoints();
                for w in breaks.windows(2) {
                    let (a, b) = (w[0].max(lo), w[1].min(hi));
                    if b > a {
                        acc += rule.integrate(a, b, &integrand);
                    }
                }
                Ok(acc)
            }
            _ => quadrature::integrate(integrand, lo, hi, width, tol),
        }
    }
}

impl From<SampledFunction> for LineFunction {
    fn from(s: SampledFunction) -> Self {
        LineFunction::Sampled(s)
    }
}

/// Product `e^{-(x−c1)²/(2w1²)} e^{-(x−c2)²/(2w2²)} = e^{log_scale} e^{-(x−center)²/(2 width²)}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianProduct {
    pub center: f64,
    pub width: f64,
    pub log_scale: f64,
}

pub fn gaussian_product(c1: f64, w1: f64, c2: f64, w2: f64) -> GaussianProduct {
    let p1 = 1.0 / (w1 * w1);
    let p2 = 1.0 / (w2 * w2);
    let p = p1 + p2;
    GaussianProduct {
        center: (c1 * p1 + c2 * p2) / p,
        width: p.sqrt().recip(),
        log_scale: -(c1 - c2).powi(2) / (2.0 * (w1 * w1 + w2 * w2)),
    }
}
