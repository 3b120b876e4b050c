//! The kq (Zak) representation on the unit cell `[0, a) × [0, a)`, `a² = 2π`.
//!
//! `(ZH)(k, q) = a^{-1/2} Σ_n e^{-ikna} H(q + na)` and its inverse
//! `H(x + na) = a^{-1/2} ∫_0^a dk e^{ikna} h(k, x)`. Functions in this
//! representation obey `h(k + a, q) = h(k, q)` and `h(k, q + a) = e^{ika} h(k, q)`.

use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::line::{LineFunction, Support};
use crate::LATTICE_A;

/// Default number of samples per cell direction.
pub const DEFAULT_GRID: usize = 64;

/// Sampling of the unit cell: `k_i = i a / n_k`, `q_j = j a / n_q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KqGrid {
    pub n_k: usize,
    pub n_q: usize,
}

impl Default for KqGrid {
    fn default() -> Self {
        Self::square(DEFAULT_GRID)
    }
}

impl KqGrid {
    pub fn new(n_k: usize, n_q: usize) -> Result<Self> {
        if n_k == 0 || n_q == 0 {
            return Err(Error::InvalidArgument("kq grid sizes must be positive".into()));
        }
        Ok(Self { n_k, n_q })
    }

    pub fn square(n: usize) -> Self {
        Self { n_k: n, n_q: n }
    }

    pub fn k(&self, i: usize) -> f64 {
        LATTICE_A * i as f64 / self.n_k as f64
    }

    pub fn q(&self, j: usize) -> f64 {
        LATTICE_A * j as f64 / self.n_q as f64
    }

    pub fn len(&self) -> usize {
        self.n_k * self.n_q
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Trapezoid (equivalently rectangle, on the periodic cell) weight.
    pub fn cell_weight(&self) -> f64 {
        LATTICE_A * LATTICE_A / (self.n_k * self.n_q) as f64
    }
}

/// How many Zak-sum terms to keep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Truncation {
    /// Keep `|n| <= n_max`; fail if the tail estimate exceeds `tol`.
    Fixed { n_max: usize, tol: f64 },
    /// Pick `n_max` from the decay bound (exact term count for compact
    /// support), with a safety factor of two.
    Auto { tol: f64 },
}

impl Default for Truncation {
    fn default() -> Self {
        Truncation::Auto { tol: 1e-16 }
    }
}

/// A smooth phase `θ(k, q) = Σ c_j sin(a(p_j k + r_j q) + φ_j)`, periodic on
/// the cell.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseTerm {
    pub coef: f64,
    pub k_order: i32,
    pub q_order: i32,
    pub offset: f64,
}

/// Closed-form rule behind a [`KqFunction`].
#[derive(Debug, Clone, PartialEq)]
pub enum KqRule {
    /// Zak transform of a line function, evaluable on the whole plane.
    Zak { line: LineFunction, n_max: usize },
    /// Constant on the cell, extended by the boundary conditions.
    Constant(Complex64),
    /// `amplitude · e^{iθ(k,q)}` on the cell, extended by the boundary conditions.
    Phase { amplitude: f64, terms: Vec<PhaseTerm> },
    /// Samples only; evaluated by bilinear interpolation on the cell.
    Tabulated,
}

/// A complex field on the unit cell with quasi-periodic extension.
#[derive(Debug, Clone, PartialEq)]
pub struct KqFunction {
    grid: KqGrid,
    values: Vec<Complex64>,
    rule: KqRule,
}

impl KqFunction {
    /// Tabulates `rule` on `grid`.
    pub fn from_rule(rule: KqRule, grid: KqGrid) -> Self {
        let mut f = KqFunction {
            grid,
            values: Vec::new(),
            rule,
        };
        f.values = (0..grid.len())
            .into_par_iter()
            .map(|idx| f.eval_rule(grid.k(idx / grid.n_q), grid.q(idx % grid.n_q)))
            .collect();
        f
    }

    pub fn constant(c: Complex64, grid: KqGrid) -> Self {
        Self::from_rule(KqRule::Constant(c), grid)
    }

    /// `e^{iθ}/√(2π)`: a pure phase of the modulus that makes the
    /// magnetic-translate family orthonormal at filling one.
    pub fn phase(terms: Vec<PhaseTerm>, grid: KqGrid) -> Self {
        Self::from_rule(
            KqRule::Phase {
                amplitude: (2.0 * PI).sqrt().recip(),
                terms,
            },
            grid,
        )
    }

    /// Samples without a closed form, `values[i * n_q + j] = h(k_i, q_j)`.
    pub fn tabulated(values: Vec<Complex64>, grid: KqGrid) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} samples, got {}",
                grid.len(),
                values.len()
            )));
        }
        Ok(KqFunction {
            grid,
            values,
            rule: KqRule::Tabulated,
        })
    }

    pub fn grid(&self) -> KqGrid {
        self.grid
    }

    pub fn rule(&self) -> &KqRule {
        &self.rule
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Stored sample `h(k_i, q_j)`.
    pub fn sample(&self, i: usize, j: usize) -> Complex64 {
        self.values[i * self.grid.n_q + j]
    }

    /// Overwrites one stored sample, leaving the rule untouched.
    pub fn set_sample(&mut self, i: usize, j: usize, v: Complex64) {
        self.values[i * self.grid.n_q + j] = v;
    }

    /// Whether [`eval`](Self::eval) computes points off the cell independently
    /// of the boundary conditions.
    pub fn has_extension(&self) -> bool {
        matches!(self.rule, KqRule::Zak { .. })
    }

    /// `h(k, q)` anywhere in the plane.
    pub fn eval(&self, k: f64, q: f64) -> Complex64 {
        self.eval_rule(k, q)
    }

    fn eval_rule(&self, k: f64, q: f64) -> Complex64 {
        match &self.rule {
            KqRule::Zak { line, n_max } => zak_sum(line, *n_max as i64, k, q),
            _ => {
                // reduce to the cell: h(k, q' + ja) = e^{ijka} h(k, q')
                let j = (q / LATTICE_A).floor();
                let qc = q - j * LATTICE_A;
                let kc = k - (k / LATTICE_A).floor() * LATTICE_A;
                Complex64::from_polar(1.0, j * k * LATTICE_A) * self.eval_cell(kc, qc)
            }
        }
    }

    fn eval_cell(&self, k: f64, q: f64) -> Complex64 {
        match &self.rule {
            KqRule::Zak { .. } => unreachable!(),
            KqRule::Constant(c) => *c,
            KqRule::Phase { amplitude, terms } => {
                let theta: f64 = terms
                    .iter()
                    .map(|t| {
                        t.coef
                            * (LATTICE_A * (t.k_order as f64 * k + t.q_order as f64 * q) + t.offset)
                                .sin()
                    })
                    .sum();
                Complex64::from_polar(*amplitude, theta)
            }
            KqRule::Tabulated => self.interpolate(k, q),
        }
    }

    // Bilinear on the cell: periodic in k, quasi-periodic wrap in q.
    fn interpolate(&self, k: f64, q: f64) -> Complex64 {
        let g = self.grid;
        let u = k / LATTICE_A * g.n_k as f64;
        let v = q / LATTICE_A * g.n_q as f64;
        let i0 = (u.floor() as usize).min(g.n_k - 1);
        let j0 = (v.floor() as usize).min(g.n_q - 1);
        let fu = u - i0 as f64;
        let fv = v - j0 as f64;
        let i1 = (i0 + 1) % g.n_k;
        let at = |i: usize, j: usize| -> Complex64 {
            if j == g.n_q {
                Complex64::from_polar(1.0, g.k(i) * LATTICE_A) * self.sample(i, 0)
            } else {
                self.sample(i, j)
            }
        };
        let j1 = j0 + 1;
        at(i0, j0) * (1.0 - fu) * (1.0 - fv)
            + at(i1, j0) * fu * (1.0 - fv)
            + at(i0, j1) * (1.0 - fu) * fv
            + at(i1, j1) * fu * fv
    }

    /// `∫_□ |h|²` by the rectangle rule on the periodic cell.
    pub fn norm_sqr(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.grid.cell_weight()
    }

    /// Largest variation along k of the stored samples, over all q.
    pub fn max_k_variation(&self) -> f64 {
        let g = self.grid;
        (0..g.n_q)
            .map(|j| {
                let first = self.sample(0, j);
                (1..g.n_k)
                    .map(|i| (self.sample(i, j) - first).norm())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max)
    }

    /// Delimited text: a `#` header with `a`, `N_k`, `N_q`, then `k q re im`
    /// rows with 15 significant digits.
    pub fn to_text(&self) -> String {
        let g = self.grid;
        let mut out = String::new();
        let _ = writeln!(out, "# a {:.14e} N_k {} N_q {}", LATTICE_A, g.n_k, g.n_q);
        let _ = writeln!(out, "# k q re im");
        for i in 0..g.n_k {
            for j in 0..g.n_q {
                let v = self.sample(i, j);
                let _ = writeln!(
                    out,
                    "{:.14e} {:.14e} {:.14e} {:.14e}",
                    g.k(i),
                    g.q(j),
                    v.re,
                    v.im
                );
            }
        }
        out
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }

    /// Reads the [`to_text`](Self::to_text) format back as a tabulated field.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or(Error::GridParse {
            line: 1,
            msg: "empty input".into(),
        })?;
        let fields: Vec<&str> = header.trim_start_matches('#').split_whitespace().collect();
        let bad_header = || Error::GridParse {
            line: 1,
            msg: "expected `# a <a> N_k <n> N_q <n>`".into(),
        };
        if fields.len() != 6 || fields[0] != "a" || fields[2] != "N_k" || fields[4] != "N_q" {
            return Err(bad_header());
        }
        let a: f64 = fields[1].parse().map_err(|_| bad_header())?;
        if (a * a - 2.0 * PI).abs() > 1e-12 {
            return Err(Error::GridParse {
                line: 1,
                msg: format!("lattice constant {a} does not satisfy a² = 2π"),
            });
        }
        let n_k: usize = fields[3].parse().map_err(|_| bad_header())?;
        let n_q: usize = fields[5].parse().map_err(|_| bad_header())?;
        let grid = KqGrid::new(n_k, n_q)?;
        let mut values = Vec::with_capacity(grid.len());
        for (i, line) in lines {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let nums: Vec<f64> = line
                .split_whitespace()
                .map(|t| t.parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::GridParse {
                    line: i + 1,
                    msg: "non-numeric field".into(),
                })?;
            if nums.len() != 4 {
                return Err(Error::GridParse {
                    line: i + 1,
                    msg: format!("expected `k q re im`, got {} fields", nums.len()),
                });
            }
            values.push(Complex64::new(nums[2], nums[3]));
        }
        KqFunction::tabulated(values, grid)
    }
}

fn zak_sum(line: &LineFunction, n_max: i64, k: f64, q: f64) -> Complex64 {
    let (lo, hi) = line.window();
    // skip terms whose argument lies outside the window
    let n_lo = (-n_max).max(((lo - q) / LATTICE_A).floor() as i64 - 1);
    let n_hi = n_max.min(((hi - q) / LATTICE_A).ceil() as i64 + 1);
    let mut acc = Complex64::new(0.0, 0.0);
    for n in n_lo..=n_hi {
        let x = q + n as f64 * LATTICE_A;
        acc += Complex64::from_polar(1.0, -k * n as f64 * LATTICE_A) * line.eval(x);
    }
    acc / LATTICE_A.sqrt()
}

/// `max_{q ∈ [0,a)} Σ_{|n| > n_max} |H(q + na)|`, sampled on `n_q` points.
pub fn tail_estimate(line: &LineFunction, n_max: usize, n_q: usize) -> f64 {
    let (lo, hi) = line.window();
    let reach = ((hi.abs().max(lo.abs())) / LATTICE_A).ceil() as i64 + 2;
    let mut worst = 0.0f64;
    for j in 0..=n_q {
        let q = LATTICE_A * j as f64 / n_q as f64;
        let mut tail = 0.0;
        for n in (n_max as i64 + 1)..=(n_max as i64 + 1).max(reach) {
            tail += line.decay_bound(q + n as f64 * LATTICE_A);
            tail += line.decay_bound(q - n as f64 * LATTICE_A);
        }
        worst = worst.max(tail);
    }
    worst
}

fn auto_n_max(line: &LineFunction, tol: f64, n_q: usize) -> usize {
    match line.support() {
        Support::Compact { lo, hi } => {
            let reach = (lo.abs().max(hi.abs()) / LATTICE_A).ceil() as usize;
            reach + 1
        }
        Support::Gaussian { .. } => {
            let mut n = 0usize;
            while tail_estimate(line, n, n_q) > tol && n < 10_000 {
                n += 1;
            }
            2 * n.max(1)
        }
    }
}

/// Zak transform of `line` tabulated on `grid`.
pub fn zak_transform(line: &LineFunction, grid: KqGrid, truncation: Truncation) -> Result<KqFunction> {
    let n_max = match truncation {
        Truncation::Fixed { n_max, tol } => {
            let tail = tail_estimate(line, n_max, grid.n_q);
            if tail > tol {
                return Err(Error::TruncationBound { n_max, tail, tol });
            }
            n_max
        }
        Truncation::Auto { tol } => auto_n_max(line, tol, grid.n_q),
    };
    Ok(KqFunction::from_rule(
        KqRule::Zak {
            line: line.clone(),
            n_max,
        },
        grid,
    ))
}

/// `H(x + na) = a^{-1/2} ∫_0^a dk e^{ikna} h(k, x)`, rectangle rule over the
/// k-grid (the integrand is a-periodic in k).
pub fn inverse_zak(h: &KqFunction, n: i64, x: f64) -> Complex64 {
    let g = h.grid();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..g.n_k {
        let k = g.k(i);
        acc += Complex64::from_polar(1.0, k * n as f64 * LATTICE_A) * h.eval(k, x);
    }
    acc * (LATTICE_A / g.n_k as f64) / LATTICE_A.sqrt()
}

/// Worst violations of the two boundary conditions on the stored grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryReport {
    /// `max |h(k + a, q) − h(k, q)|`
    pub k_periodicity: f64,
    /// `max |h(k, q + a) − e^{ika} h(k, q)|`
    pub q_quasi_periodicity: f64,
    pub tol: f64,
    pub passed: bool,
}

impl BoundaryReport {
    pub fn max_residual(&self) -> f64 {
        self.k_periodicity.max(self.q_quasi_periodicity)
    }
}

/// Compares the stored samples against the extended-plane evaluation.
pub fn check_boundary(h: &KqFunction, tol: f64) -> Result<BoundaryReport> {
    if !h.has_extension() {
        return Err(Error::NoExtension);
    }
    let g = h.grid();
    let (kp, qp) = (0..g.len())
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx / g.n_q, idx % g.n_q);
            let (k, q) = (g.k(i), g.q(j));
            let stored = h.sample(i, j);
            let kr = (h.eval(k + LATTICE_A, q) - stored).norm();
            let qr = (h.eval(k, q + LATTICE_A) - Complex64::from_polar(1.0, k * LATTICE_A) * stored)
                .norm();
            (kr, qr)
        })
        .reduce(|| (0.0, 0.0), |a, b| (a.0.max(b.0), a.1.max(b.1)));
    Ok(BoundaryReport {
        k_periodicity: kp,
        q_quasi_periodicity: qp,
        tol,
        passed: kp.max(qp) <= tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compact_support_gives_k_independent_transform() {
        let line = LineFunction::TrigPoly {
            terms: vec![(0, Complex64::new(0.3, 0.1)), (1, Complex64::new(-0.2, 0.4))],
            frequency: LATTICE_A,
            scale: 1.0,
            lo: 0.0,
            hi: LATTICE_A,
        };
        let h = zak_transform(&line, KqGrid::square(16), Truncation::default()).unwrap();
        assert!(h.max_k_variation() <= 1e-12);
        for j in 0..16 {
            let q = h.grid().q(j);
            let want = line.eval(q) / LATTICE_A.sqrt();
            assert!((h.sample(3, j) - want).norm() < 1e-15);
        }
    }

    #[test]
    fn gaussian_theta_sum_at_origin() {
        let line = LineFunction::Gaussian {
            amplitude: Complex64::new(1.0, 0.0),
            center: 0.0,
            width: 1.0,
            momentum: 0.0,
        };
        let h = zak_transform(&line, KqGrid::square(8), Truncation::Fixed { n_max: 6, tol: 1e-14 })
            .unwrap();
        // oracle: direct theta sum
        let theta: f64 = (-6i32..=6)
            .map(|n| (-(n as f64 * LATTICE_A).powi(2) / 2.0).exp())
            .sum();
        let want = theta / LATTICE_A.sqrt();
        assert!((h.sample(0, 0).re - want).abs() < 1e-15);
        assert!(h.sample(0, 0).im.abs() < 1e-15);
    }

    #[test]
    fn fixed_truncation_reports_tail() {
        let line = LineFunction::gaussian(0.0, 3.0);
        let r = zak_transform(&line, KqGrid::square(8), Truncation::Fixed { n_max: 1, tol: 1e-12 });
        assert!(matches!(r, Err(Error::TruncationBound { n_max: 1, .. })));
    }

    #[test]
    fn constant_field_inverts_to_indicator() {
        let h = KqFunction::constant(Complex64::new(LATTICE_A.sqrt().recip(), 0.0), KqGrid::square(32));
        for x in [0.0, 0.7, 2.1] {
            assert!((inverse_zak(&h, 0, x) - 1.0).norm() < 1e-14);
            for n in [-2, -1, 1, 3] {
                assert!(inverse_zak(&h, n, x).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn cell_rules_extend_quasi_periodically() {
        let h = KqFunction::constant(Complex64::new(1.0, 0.0), KqGrid::square(8));
        let (k, q) = (0.4, 1.1);
        assert!((h.eval(k, q + LATTICE_A) - Complex64::from_polar(1.0, k * LATTICE_A)).norm() < 1e-14);
        assert!((h.eval(k + LATTICE_A, q) - 1.0).norm() < 1e-14);
        assert!(matches!(check_boundary(&h, 1e-10), Err(Error::NoExtension)));
    }

    #[test]
    fn text_roundtrip_keeps_samples() {
        let line = LineFunction::ground_gaussian();
        let h = zak_transform(&line, KqGrid::new(4, 6).unwrap(), Truncation::default()).unwrap();
        let text = h.to_text();
        assert!(text.starts_with("# a 2.50662827463100e0 N_k 4 N_q 6\n"));
        let back = KqFunction::parse(&text).unwrap();
        assert_eq!(back.grid(), h.grid());
        for (a, b) in back.values().iter().zip(h.values()) {
            assert!((a - b).norm() <= 1e-14 * b.norm().max(1e-300));
        }
        assert!(matches!(KqFunction::parse("# a 3.0 N_k 1 N_q 1\n"), Err(Error::GridParse { .. })));
    }
}
