//! Haar-wavelet orbitals in closed form.
//!
//! `T2` is the lowest-level orbital of the Haar `T_2` reduced function,
//! `(√a e^{ixy/2}/(2^{3/2} π^{5/4})) ∫_0^a e^{iQy − (x+Q)²/2} (1 + e^{−iQa}) dQ`.
//! `H00` is the orbital of the earlier dilation-based construction.
//!
//! Completing the square in the second half of the `T2` integral produces a
//! factor `e^{ay + iax − π}` in front of its pair of error functions. The
//! `*_unphased` variants drop that factor and are kept for comparison.

use num_complex::Complex64;
use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt::Write as _;

use crate::erf::{self, check_envelope, scaled_erf_diff};
use crate::error::{Error, Result};
use crate::filters::FilterBank;
use crate::landau::{build_t, LandauLevel, LandauOrbital};
use crate::LATTICE_A;

/// Smallest `|x − iy|` accepted by the asymptotic forms.
pub const ASYMPTOTIC_RADIUS: f64 = 3.0;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn t2_prefactor(x: f64, y: f64) -> Complex64 {
    Complex64::from_polar(LATTICE_A.sqrt() / (4.0 * PI.powf(0.75)), -0.5 * x * y)
}

// (A1, B1, A2, B2)
fn t2_arguments(x: f64, y: f64) -> Result<[Complex64; 4]> {
    let a = LATTICE_A;
    let args = [
        c(x + a, -y) * FRAC_1_SQRT_2,
        c(x, -y) * FRAC_1_SQRT_2,
        c(x + a, -(y - a)) * FRAC_1_SQRT_2,
        c(x, -(y - a)) * FRAC_1_SQRT_2,
    ];
    for z in args {
        check_envelope(z)?;
    }
    Ok(args)
}

/// Closed form of `T2(x, y)` in error functions.
pub fn t2_closed(x: f64, y: f64) -> Result<Complex64> {
    let a = LATTICE_A;
    let [a1, b1, a2, b2] = t2_arguments(x, y)?;
    let s1 = c(-0.5 * y * y, 0.0);
    let s2 = c(-0.5 * y * y + a * y - PI, a * x);
    Ok(t2_prefactor(x, y) * (scaled_erf_diff(s1, a1, b1) + scaled_erf_diff(s2, a2, b2)))
}

/// Without the phase factor: the four error functions share `e^{−y²/2}`.
pub fn t2_closed_unphased(x: f64, y: f64) -> Result<Complex64> {
    let [a1, b1, a2, b2] = t2_arguments(x, y)?;
    let s = c(-0.5 * y * y, 0.0);
    Ok(t2_prefactor(x, y) * (scaled_erf_diff(s, a1, b1) + scaled_erf_diff(s, a2, b2)))
}

fn require_asymptotic(x: f64, y: f64) -> Result<()> {
    if x < 0.0 || x.hypot(y) < ASYMPTOTIC_RADIUS {
        return Err(Error::NotAsymptotic { x, y });
    }
    Ok(())
}

fn t2_asym_prefactor(x: f64, y: f64) -> Complex64 {
    Complex64::from_polar(
        LATTICE_A.sqrt() * (-0.5 * x * x).exp() / (2f64.powf(1.5) * PI.powf(1.25)),
        0.5 * x * y,
    )
}

/// The four pole terms of the large-`x` expansion, without the common
/// prefactor. Their sum times the prefactor is [`t2_asym`].
pub fn t2_asym_terms(x: f64, y: f64) -> Result<[Complex64; 4]> {
    require_asymptotic(x, y)?;
    let a = LATTICE_A;
    let e = Complex64::from_polar((-a * x - PI).exp(), a * y);
    Ok([
        1.0 / c(x, -y),
        1.0 / c(x, -(y - a)),
        -e / c(x + a, -y),
        -e / c(x + a, -(y - a)),
    ])
}

/// Pole terms without the phase factor.
pub fn t2_asym_terms_unphased(x: f64, y: f64) -> Result<[Complex64; 4]> {
    require_asymptotic(x, y)?;
    let a = LATTICE_A;
    let z = c(x, -y);
    let i = Complex64::i();
    Ok([
        1.0 / z,
        (PI - i * a * z).exp() / c(x, -(y - a)),
        -(-PI - a * z).exp() / c(x + a, -y),
        -(-a * z * c(1.0, 1.0)).exp() / c(x + a, -(y - a)),
    ])
}

/// Leading large-`x` behaviour of `T2`; requires `x ≥ 0` and
/// `|x − iy| ≥ 3`.
pub fn t2_asym(x: f64, y: f64) -> Result<Complex64> {
    let terms = t2_asym_terms(x, y)?;
    Ok(t2_asym_prefactor(x, y) * terms.iter().sum::<Complex64>())
}

pub fn t2_asym_unphased(x: f64, y: f64) -> Result<Complex64> {
    let terms = t2_asym_terms_unphased(x, y)?;
    Ok(t2_asym_prefactor(x, y) * terms.iter().sum::<Complex64>())
}

/// `H00(x, y)` from error functions.
pub fn h00_closed(x: f64, y: f64) -> Result<Complex64> {
    let z = c(x, -y);
    let b = z * FRAC_1_SQRT_2;
    let cc = (z + 0.5) * FRAC_1_SQRT_2;
    let d = (z + 1.0) * FRAC_1_SQRT_2;
    for w in [b, cc, d] {
        check_envelope(w)?;
    }
    let s = c(-0.5 * y * y, 0.0);
    // 2φ(C) − φ(B) − φ(D) as two stable differences
    let braces = scaled_erf_diff(s, cc, b) + scaled_erf_diff(s, cc, d);
    Ok(Complex64::from_polar(0.5 * PI.powf(-0.25), -0.5 * x * y) * braces)
}

/// Three-pole asymptote of `H00`; same regime as [`t2_asym`].
pub fn h00_asym(x: f64, y: f64) -> Result<Complex64> {
    require_asymptotic(x, y)?;
    let z = c(x, -y);
    let poles = 1.0 / z + (-0.5 - z).exp() / (z + 1.0) - 2.0 * (-0.125 - 0.5 * z).exp() / (z + 0.5);
    let pre = Complex64::from_polar(
        (-0.5 * x * x).exp() * 0.5 * PI.powf(-0.25) * (2.0 / PI).sqrt(),
        0.5 * x * y,
    );
    Ok(pre * poles)
}

/// The Haar `T_2` orbital through quadrature.
pub fn haar_orbital() -> Result<LandauOrbital> {
    LandauOrbital::new(LandauLevel::Lowest, build_t(&FilterBank::builtin("haar")?, 1)?)
}

/// One row of the closed-form/quadrature/asymptote comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonRow {
    pub x: f64,
    pub y: f64,
    pub closed: Complex64,
    pub quad: Complex64,
    pub asym: Option<Complex64>,
}

impl ComparisonRow {
    /// `| |closed| − |quad| | / |quad|`.
    pub fn rel_err(&self) -> f64 {
        (self.closed.norm() - self.quad.norm()).abs() / self.quad.norm()
    }

    /// `arg(closed / quad)`.
    pub fn phase_gap(&self) -> f64 {
        (self.closed / self.quad).arg()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonTable {
    pub rows: Vec<ComparisonRow>,
}

impl ComparisonTable {
    pub fn max_rel_err(&self) -> f64 {
        self.rows.iter().map(ComparisonRow::rel_err).fold(0.0, f64::max)
    }

    pub fn max_phase_gap(&self) -> f64 {
        self.rows.iter().map(|r| r.phase_gap().abs()).fold(0.0, f64::max)
    }

    /// Rows `x y absClosed absQuad absAsym relErr`; `absAsym` is `nan`
    /// outside the asymptotic regime.
    pub fn to_text(&self) -> String {
        let mut out = String::from("# x y absClosed absQuad absAsym relErr\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:.14e} {:.14e} {:.14e} {:.14e} {:.14e} {:.14e}",
                r.x,
                r.y,
                r.closed.norm(),
                r.quad.norm(),
                r.asym.map_or(f64::NAN, |v| v.norm()),
                r.rel_err()
            );
        }
        out
    }
}

/// `n × n` uniform grid over `[−half_width, half_width]²`.
pub fn compare_grid(n: usize, half_width: f64) -> Result<ComparisonTable> {
    use rayon::prelude::*;
    if n < 2 {
        return Err(Error::InvalidArgument("comparison grid needs at least 2 points".into()));
    }
    let orb = haar_orbital()?;
    let step = 2.0 * half_width / (n - 1) as f64;
    let pts: Vec<(f64, f64)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (-half_width + i as f64 * step, -half_width + j as f64 * step)))
        .collect();
    let rows = pts
        .into_par_iter()
        .map(|(x, y)| {
            Ok(ComparisonRow {
                x,
                y,
                closed: t2_closed(x, y)?,
                quad: orb.eval(x, y)?,
                asym: t2_asym(x, y).ok(),
            })
        })
        .collect::<Result<_>>()?;
    Ok(ComparisonTable { rows })
}

/// Asymptote against closed form along the positive x axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoteRow {
    pub x: f64,
    pub closed: f64,
    pub asym: f64,
}

impl AsymptoteRow {
    pub fn rel_err(&self) -> f64 {
        (self.asym - self.closed).abs() / self.closed
    }
}

fn ray<F, G>(xs: &[f64], closed: F, asym: G) -> Result<Vec<AsymptoteRow>>
where
    F: Fn(f64, f64) -> Result<Complex64>,
    G: Fn(f64, f64) -> Result<Complex64>,
{
    xs.iter()
        .map(|&x| {
            Ok(AsymptoteRow {
                x,
                closed: closed(x, 0.0)?.norm(),
                asym: asym(x, 0.0)?.norm(),
            })
        })
        .collect()
}

pub fn t2_asymptote_ray(xs: &[f64]) -> Result<Vec<AsymptoteRow>> {
    ray(xs, t2_closed, t2_asym)
}

pub fn h00_asymptote_ray(xs: &[f64]) -> Result<Vec<AsymptoteRow>> {
    ray(xs, h00_closed, h00_asym)
}

/// Whether the relative errors strictly decrease along the ray.
pub fn monotone_improvement(rows: &[AsymptoteRow]) -> bool {
    rows.windows(2).all(|w| w[1].rel_err() < w[0].rel_err())
}

/// Least-squares slope of `log|f|` against `t²` at the given `t`.
pub fn log_slope<F>(ts: &[f64], f: F) -> Result<f64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let pts: Vec<(f64, f64)> = ts
        .iter()
        .map(|&t| Ok((t * t, f(t)?.norm().ln())))
        .collect::<Result<_>>()?;
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Ok(sxy / sxx)
}

/// Envelope comparison between the two Haar orbitals.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalizationReport {
    /// Slope of `log|T2(x, 0)|` vs `x²` on `x ∈ [3, 6]`.
    pub t2_x_slope: f64,
    pub h00_x_slope: f64,
    /// Slope of `log|·(0, y)|` vs `y²` on `y ∈ [3, 6]`.
    pub t2_y_slope: f64,
    pub h00_y_slope: f64,
    /// `|H00(0, y)| e^{y²/4}` at `y = 2, 4, 6`.
    pub h00_y_envelope: [f64; 3],
    /// `|H00(x, 0)| e^{x²/4}` at `x = 2, 4, 6`.
    pub h00_x_envelope: [f64; 3],
}

pub const X_SLOPE_BAND: (f64, f64) = (-0.55, -0.45);
pub const Y_SLOPE_LIMIT: f64 = 0.1;

impl LocalizationReport {
    pub fn x_gaussian(&self) -> bool {
        let ok = |s: f64| s >= X_SLOPE_BAND.0 && s <= X_SLOPE_BAND.1;
        ok(self.t2_x_slope) && ok(self.h00_x_slope)
    }

    pub fn y_slow(&self) -> bool {
        self.t2_y_slope.abs() < Y_SLOPE_LIMIT && self.h00_y_slope.abs() < Y_SLOPE_LIMIT
    }

    pub fn h00_monotone(&self) -> bool {
        let y = self.h00_y_envelope;
        let x = self.h00_x_envelope;
        y[0] < y[1] && y[1] < y[2] && x[0] > x[1] && x[1] > x[2]
    }

    pub fn passed(&self) -> bool {
        self.x_gaussian() && self.y_slow() && self.h00_monotone()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# quantity value");
        let rows = [
            ("t2_x_slope", self.t2_x_slope),
            ("h00_x_slope", self.h00_x_slope),
            ("t2_y_slope", self.t2_y_slope),
            ("h00_y_slope", self.h00_y_slope),
        ];
        for (k, v) in rows {
            let _ = writeln!(out, "{k} {v:.14e}");
        }
        for (i, t) in [2, 4, 6].iter().enumerate() {
            let _ = writeln!(out, "h00_y_envelope_{t} {:.14e}", self.h00_y_envelope[i]);
            let _ = writeln!(out, "h00_x_envelope_{t} {:.14e}", self.h00_x_envelope[i]);
        }
        out
    }
}

pub fn localization_compare() -> Result<LocalizationReport> {
    let ts: Vec<f64> = (0..=12).map(|i| 3.0 + 0.25 * i as f64).collect();
    let env = |f: &dyn Fn(f64) -> Result<Complex64>| -> Result<[f64; 3]> {
        let mut out = [0.0; 3];
        for (i, t) in [2.0f64, 4.0, 6.0].iter().enumerate() {
            out[i] = f(*t)?.norm() * (t * t / 4.0).exp();
        }
        Ok(out)
    };
    Ok(LocalizationReport {
        t2_x_slope: log_slope(&ts, |x| t2_closed(x, 0.0))?,
        h00_x_slope: log_slope(&ts, |x| h00_closed(x, 0.0))?,
        t2_y_slope: log_slope(&ts, |y| t2_closed(0.0, y))?,
        h00_y_slope: log_slope(&ts, |y| h00_closed(0.0, y))?,
        h00_y_envelope: env(&|y| h00_closed(0.0, y))?,
        h00_x_envelope: env(&|x| h00_closed(x, 0.0))?,
    })
}

/// `φ(z)` within the accuracy envelope; re-exported for callers of this module.
pub fn cerf(z: Complex64) -> Result<Complex64> {
    erf::cerf(z)
}
