//! Scaling function and mother wavelet by the cascade algorithm.
//!
//! Starting from the indicator of `[0, 1)`, the two-scale relation
//! `φ(x) = √2 Σ h_n φ(2x − n)` is iterated in the time domain. After `d`
//! steps the iterate is piecewise constant on cells of width `2^{-d}`, so it is
//! stored by its value on each cell.

use num_complex::Complex64;
use std::f64::consts::SQRT_2;

use crate::error::{Error, Result};
use crate::filters::FilterBank;

/// Default number of cascade steps.
pub const DEFAULT_DEPTH: u32 = 10;

/// Complex samples on a uniform grid; sample `i` is the value on
/// `[origin + i·step, origin + (i+1)·step)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    pub samples: Vec<Complex64>,
    pub step: f64,
    pub origin: f64,
}

impl SampledFunction {
    pub fn new(samples: Vec<Complex64>, step: f64, origin: f64) -> Result<Self> {
        if !(step > 0.0) || !step.is_finite() || !origin.is_finite() {
            return Err(Error::InvalidArgument(format!("grid step {step} must be positive")));
        }
        if samples.iter().any(|s| !s.re.is_finite() || !s.im.is_finite()) {
            return Err(Error::InvalidArgument("non-finite sample".into()));
        }
        Ok(Self { samples, step, origin })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn x(&self, i: usize) -> f64 {
        self.origin + i as f64 * self.step
    }

    /// Support `[origin, origin + len·step)`.
    pub fn support(&self) -> (f64, f64) {
        (self.origin, self.origin + self.len() as f64 * self.step)
    }

    /// Piecewise-constant evaluation; zero off the grid.
    pub fn eval(&self, x: f64) -> Complex64 {
        let t = ((x - self.origin) / self.step).floor();
        if t < 0.0 || t >= self.len() as f64 {
            return Complex64::new(0.0, 0.0);
        }
        self.samples[t as usize]
    }

    pub fn integral(&self) -> Complex64 {
        self.samples.iter().sum::<Complex64>() * self.step
    }

    pub fn norm_sqr(&self) -> f64 {
        self.samples.iter().map(|s| s.norm_sqr()).sum::<f64>() * self.step
    }

    /// `∫ conj(self) · other` for two functions on the same grid spacing.
    pub fn inner(&self, other: &SampledFunction) -> Result<Complex64> {
        if (self.step - other.step).abs() > 1e-15 * self.step {
            return Err(Error::InvalidArgument("grids differ in step".into()));
        }
        let shift = (other.origin - self.origin) / self.step;
        if (shift - shift.round()).abs() > 1e-9 {
            return Err(Error::InvalidArgument("grids are not aligned".into()));
        }
        let shift = shift.round() as i64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, a) in self.samples.iter().enumerate() {
            let j = i as i64 - shift;
            if j >= 0 && (j as usize) < other.len() {
                acc += a.conj() * other.samples[j as usize];
            }
        }
        Ok(acc * self.step)
    }
}

// Cell values on the grid of width 2^{-depth}; `first` is the index of the
// first stored cell.
#[derive(Debug, Clone)]
struct Cells {
    first: i64,
    values: Vec<Complex64>,
    depth: u32,
}

impl Cells {
    fn seed() -> Self {
        Self {
            first: 0,
            values: vec![Complex64::new(1.0, 0.0)],
            depth: 0,
        }
    }

    fn get(&self, k: i64) -> Complex64 {
        let i = k - self.first;
        if i < 0 || i as usize >= self.values.len() {
            Complex64::new(0.0, 0.0)
        } else {
            self.values[i as usize]
        }
    }

    // v'[K] = √2 Σ_n f_n v[K − n·2^depth] on the grid one level finer.
    fn refine(&self, taps: &[(i64, Complex64)]) -> Self {
        let stride = 1i64 << self.depth;
        let n_lo = taps.iter().map(|t| t.0).min().unwrap_or(0);
        let n_hi = taps.iter().map(|t| t.0).max().unwrap_or(0);
        let first = self.first + n_lo * stride;
        let last = self.first + self.values.len() as i64 - 1 + n_hi * stride;
        let mut values = vec![Complex64::new(0.0, 0.0); (last - first + 1) as usize];
        for (i, v) in self.values.iter().enumerate() {
            let k = self.first + i as i64;
            for &(n, h) in taps {
                values[(k + n * stride - first) as usize] += *v * h * SQRT_2;
            }
        }
        Self {
            first,
            values,
            depth: self.depth + 1,
        }
    }

    // sup over the coarse grid of |finer[2k] − coarse[k]|.
    fn step_residual(finer: &Cells, coarse: &Cells) -> f64 {
        let lo = coarse.first.min(finer.first.div_euclid(2));
        let hi = (coarse.first + coarse.values.len() as i64)
            .max((finer.first + finer.values.len() as i64).div_euclid(2) + 1);
        (lo..hi)
            .map(|k| (finer.get(2 * k) - coarse.get(k)).norm())
            .fold(0.0, f64::max)
    }

    fn into_sampled(self) -> SampledFunction {
        let step = 1.0 / (1u64 << self.depth) as f64;
        SampledFunction {
            origin: self.first as f64 * step,
            samples: self.values,
            step,
        }
    }
}

fn scaling_taps(fb: &FilterBank) -> Vec<(i64, Complex64)> {
    fb.iter().collect()
}

// g_n = (−1)^n h_{1−n}
fn wavelet_taps(fb: &FilterBank) -> Vec<(i64, Complex64)> {
    fb.iter()
        .map(|(m, h)| {
            let n = 1 - m;
            let sign = if n.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            (n, h * sign)
        })
        .collect()
}

/// Sup-norm steps `‖φ_d − φ_{d−1}‖_∞` (on the coarser grid) for `d = 1..=depth`.
pub fn cascade_residuals(fb: &FilterBank, depth: u32) -> Vec<f64> {
    run_cascade(fb, depth).1
}

fn run_cascade(fb: &FilterBank, depth: u32) -> (Cells, Vec<f64>) {
    let taps = scaling_taps(fb);
    let mut cells = Cells::seed();
    let mut residuals = Vec::with_capacity(depth as usize);
    for _ in 0..depth {
        let next = cells.refine(&taps);
        residuals.push(Cells::step_residual(&next, &cells));
        cells = next;
    }
    (cells, residuals)
}

fn checked_cascade(fb: &FilterBank, depth: u32) -> Result<Cells> {
    fb.require_verified()?;
    let (cells, residuals) = run_cascade(fb, depth);
    if let [.., prev, last] = residuals[..] {
        if last > prev * (1.0 + 1e-9) && last > 1e-12 {
            return Err(Error::NonConvergentCascade {
                depth,
                residual: last,
            });
        }
    }
    Ok(cells)
}

/// Cascade approximation of the scaling function on the grid `2^{-depth}`.
pub fn scaling_function(fb: &FilterBank, depth: u32) -> Result<SampledFunction> {
    if depth < 1 {
        return Err(Error::InvalidArgument("cascade depth must be at least 1".into()));
    }
    Ok(checked_cascade(fb, depth)?.into_sampled())
}

/// `ψ(x) = √2 Σ (−1)^n h_{1−n} φ(2x − n)` on the grid `2^{-depth}`, built from
/// the depth−1 cascade iterate so that it shares the grid of
/// `scaling_function(fb, depth)`.
pub fn mother_wavelet(fb: &FilterBank, depth: u32) -> Result<SampledFunction> {
    if depth < 1 {
        return Err(Error::InvalidArgument("cascade depth must be at least 1".into()));
    }
    let phi = if depth >= 2 {
        checked_cascade(fb, depth - 1)?
    } else {
        fb.require_verified()?;
        Cells::seed()
    };
    Ok(phi.refine(&wavelet_taps(fb)).into_sampled())
}
