//! Lowest and first Landau level orbitals built from a reduced function
//! `h(P)`, their magnetic translates, and the overlap criteria that decide
//! when the translates are orthonormal.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use std::collections::HashMap;
use std::f64::consts::{PI, SQRT_2};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::filters::FilterBank;
use crate::line::{gaussian_product, LineFunction};
use crate::quadrature;
use crate::zak::{zak_transform, KqFunction, KqGrid, Truncation};
use crate::LATTICE_A;

/// Tolerance on `‖h‖² = 1` accepted by [`LandauOrbital::new`].
pub const NORM_TOL: f64 = 1e-8;

const SYNTH_TOL: f64 = 1e-13;
const OVERLAP_TOL: f64 = 1e-13;
// e^{-t²/2} < 1e-31 beyond this many widths of the kernel Gaussian
const KERNEL_REACH: f64 = 12.0;

/// Filling `ν = 1/(2L)`: orthonormality is required on the `(1, M)`
/// sublattice with `M = 2L`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeSpec {
    l: u32,
}

impl LatticeSpec {
    pub fn new(l: u32) -> Result<Self> {
        if l == 0 {
            return Err(Error::InvalidArgument("L must be a positive integer".into()));
        }
        Ok(Self { l })
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn m(&self) -> i64 {
        2 * self.l as i64
    }

    pub fn a(&self) -> f64 {
        LATTICE_A
    }
}

/// `T_{2L}(ω) = a^{-1/2} Σ_l h_l e^{-ilωLa}` on `[0, a)`, zero elsewhere.
pub fn build_t(fb: &FilterBank, l: u32) -> Result<LineFunction> {
    LatticeSpec::new(l)?;
    fb.require_verified()?;
    Ok(LineFunction::TrigPoly {
        terms: fb.iter().collect(),
        frequency: l as f64 * LATTICE_A,
        scale: LATTICE_A.sqrt().recip(),
        lo: 0.0,
        hi: LATTICE_A,
    })
}

/// `t_{2L}(k, q) = a^{-1/2} T_{2L}(q)` on the cell; independent of `k`.
pub fn t_kq(fb: &FilterBank, l: u32, _k: f64, q: f64) -> Result<Complex64> {
    Ok(build_t(fb, l)?.eval(q) / LATTICE_A.sqrt())
}

/// The kq field of `T_{2L}` on `grid`, through the Zak transform.
pub fn t_field(fb: &FilterBank, l: u32, grid: KqGrid) -> Result<KqFunction> {
    zak_transform(&build_t(fb, l)?, grid, Truncation::default())
}

/// `J_M(k, q) = Σ_{j<M} |h(k, (q + ja)/M)|²` on the grid of `h`.
#[derive(Debug, Clone, PartialEq)]
pub struct JReport {
    pub grid: KqGrid,
    pub m: i64,
    /// k-major, like [`KqFunction::values`].
    pub field: Vec<f64>,
    pub target: f64,
    pub max_dev: f64,
}

pub fn j_criterion(h: &KqFunction, m: i64) -> Result<JReport> {
    if m < 1 {
        return Err(Error::InvalidArgument(format!("M must be positive, got {m}")));
    }
    let g = h.grid();
    let mf = m as f64;
    let field: Vec<f64> = (0..g.len())
        .into_par_iter()
        .map(|idx| {
            let (k, q) = (g.k(idx / g.n_q), g.q(idx % g.n_q));
            (0..m)
                .map(|j| h.eval(k, (q + j as f64 * LATTICE_A) / mf).norm_sqr())
                .sum()
        })
        .collect();
    let target = mf / (2.0 * PI);
    let max_dev = field.iter().map(|j| (j - target).abs()).fold(0.0, f64::max);
    Ok(JReport {
        grid: g,
        m,
        field,
        target,
        max_dev,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LandauLevel {
    Lowest,
    First,
}

impl LandauLevel {
    pub fn from_index(i: u32) -> Result<Self> {
        match i {
            0 => Ok(LandauLevel::Lowest),
            1 => Ok(LandauLevel::First),
            _ => Err(Error::InvalidArgument(format!("Landau level {i} not supported (0 or 1)"))),
        }
    }

    pub fn index(&self) -> u32 {
        match self {
            LandauLevel::Lowest => 0,
            LandauLevel::First => 1,
        }
    }
}

/// `T_1^m T_2^n ψ` where `ψ` is the Landau-level-`level` orbital of `hp`.
#[derive(Debug, Clone, PartialEq)]
pub struct LandauOrbital {
    pub level: LandauLevel,
    pub hp: LineFunction,
    pub m: i64,
    pub n: i64,
}

impl LandauOrbital {
    pub fn new(level: LandauLevel, hp: LineFunction) -> Result<Self> {
        let norm = hp.norm_sqr()?;
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidArgument(format!(
                "reduced function has squared norm {norm}, expected 1"
            )));
        }
        Ok(Self { level, hp, m: 0, n: 0 })
    }

    /// Applies `T_1^m T_2^n`. Translations compose exactly because `a² = 2π`.
    pub fn translated(&self, m: i64, n: i64) -> Self {
        Self {
            m: self.m + m,
            n: self.n + n,
            ..self.clone()
        }
    }

    pub fn eval(&self, x: f64, y: f64) -> Result<Complex64> {
        let base = |x: f64, y: f64| untranslated(self.level, &self.hp, x, y);
        translate_value(base, self.m, self.n, x, y)
    }
}

/// `ψ_{m,n}(x, y) = (−1)^{mn} e^{i(a/2)(my − nx)} ψ(x + ma, y + na)`.
pub fn translate_value<F>(f: F, m: i64, n: i64, x: f64, y: f64) -> Result<Complex64>
where
    F: Fn(f64, f64) -> Result<Complex64>,
{
    let a = LATTICE_A;
    let sign = if (m * n).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let phase = Complex64::from_polar(sign, 0.5 * a * (m as f64 * y - n as f64 * x));
    Ok(phase * f(x + m as f64 * a, y + n as f64 * a)?)
}

/// Wavefunction of `orb` at `(x, y)`.
pub fn synth(orb: &LandauOrbital, x: f64, y: f64) -> Result<Complex64> {
    orb.eval(x, y)
}

// Lowest level: e^{ixy/2}/(√2 π^{3/4}) ∫ e^{iyP} e^{-(x+P)²/2} h(P) dP.
// First level, after P → P + x in the kernel:
// i e^{ixy/2}/π^{3/4} ∫ e^{iyP} e^{-(x+P)²/2} (x+P) h(P) dP.
fn untranslated(level: LandauLevel, hp: &LineFunction, x: f64, y: f64) -> Result<Complex64> {
    let weight = move |t: f64| match level {
        LandauLevel::Lowest => 1.0,
        LandauLevel::First => t,
    };
    let integral = match hp {
        LineFunction::Gaussian {
            amplitude,
            center,
            width,
            momentum,
        } => {
            let gp = gaussian_product(-x, 1.0, *center, *width);
            let k = y + momentum;
            let v = quadrature::integrate_gaussian(
                |u| Complex64::from_polar(weight(u + x), k * u),
                gp.center,
                gp.width,
            );
            amplitude * gp.log_scale.exp() * v
        }
        _ => {
            let max_width = (2.0 / (1.0 + y.abs())).min(1.0);
            hp.integrate_against(
                |u| Complex64::from_polar(weight(u + x) * (-0.5 * (u + x).powi(2)).exp(), y * u),
                -x - KERNEL_REACH,
                -x + KERNEL_REACH,
                max_width,
                SYNTH_TOL,
            )?
        }
    };
    let phase = Complex64::from_polar(1.0, 0.5 * x * y);
    Ok(match level {
        LandauLevel::Lowest => phase * integral / (SQRT_2 * PI.powf(0.75)),
        LandauLevel::First => Complex64::i() * phase * integral / PI.powf(0.75),
    })
}

/// One exported wavefunction sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub x: f64,
    pub y: f64,
    pub value: Complex64,
}

/// Evaluates `orb` on the tensor grid `xs × ys`, x-major.
pub fn wavefunction_grid(orb: &LandauOrbital, xs: &[f64], ys: &[f64]) -> Result<Vec<GridPoint>> {
    let pts: Vec<(f64, f64)> = xs.iter().flat_map(|&x| ys.iter().map(move |&y| (x, y))).collect();
    pts.into_par_iter()
        .map(|(x, y)| {
            Ok(GridPoint {
                x,
                y,
                value: orb.eval(x, y)?,
            })
        })
        .collect()
}

/// Rows `x y re im abs`.
pub fn grid_text(points: &[GridPoint]) -> String {
    let mut out = String::from("# x y re im abs\n");
    for p in points {
        let _ = writeln!(
            out,
            "{:.14e} {:.14e} {:.14e} {:.14e} {:.14e}",
            p.x,
            p.y,
            p.value.re,
            p.value.im,
            p.value.norm()
        );
    }
    out
}

/// `S_{m,n} = ∫ e^{inap} conj(h(p + ma)) h(p) dp`.
pub fn overlap_s(hp: &LineFunction, m: i64, n: i64) -> Result<Complex64> {
    let shift = m as f64 * LATTICE_A;
    let freq = n as f64 * LATTICE_A;
    match hp {
        LineFunction::Gaussian {
            amplitude,
            center,
            width,
            momentum,
        } => {
            let gp = gaussian_product(center - shift, *width, *center, *width);
            let scale = amplitude.norm_sqr()
                * gp.log_scale.exp()
                * Complex64::from_polar(1.0, -momentum * shift);
            if scale.norm() == 0.0 {
                return Ok(Complex64::new(0.0, 0.0));
            }
            let v = if freq.abs() * gp.width <= 6.0 {
                quadrature::integrate_gaussian(|p| Complex64::from_polar(1.0, freq * p), gp.center, gp.width)
            } else {
                let reach = 2.0 * KERNEL_REACH * gp.width;
                quadrature::integrate(
                    |p| {
                        let t = (p - gp.center) / gp.width;
                        Complex64::from_polar((-0.5 * t * t).exp(), freq * p)
                    },
                    gp.center - reach,
                    gp.center + reach,
                    gp.width.min(PI / (freq.abs() + 1.0)),
                    OVERLAP_TOL,
                )?
            };
            Ok(scale * v)
        }
        _ => {
            let (lo, hi) = hp.window();
            let (a, b) = (lo.max(lo - shift), hi.min(hi - shift));
            if b <= a {
                return Ok(Complex64::new(0.0, 0.0));
            }
            let mut cuts: Vec<f64> = hp
                .breakpoints()
                .into_iter()
                .flat_map(|p| [p, p - shift])
                .filter(|p| *p > a && *p < b)
                .chain([a, b])
                .collect();
            cuts.sort_by(|x, y| x.total_cmp(y));
            cuts.dedup_by(|x, y| (*x - *y).abs() <= 1e-14 * (1.0 + y.abs()));
            let max_width = (0.5 * hp.length_scale()).min(PI / (freq.abs() + 1.0));
            let f = |p: f64| Complex64::from_polar(1.0, freq * p) * hp.eval(p + shift).conj() * hp.eval(p);
            let mut acc = Complex64::new(0.0, 0.0);
            for w in cuts.windows(2) {
                acc += quadrature::integrate(&f, w[0], w[1], max_width, OVERLAP_TOL)?;
            }
            Ok(acc)
        }
    }
}

/// `S_{m,n} = ∫_□ dk dq e^{inaq − ikma} |h(k, q)|²` by the rectangle rule.
pub fn overlap_s_kq(h: &KqFunction, m: i64, n: i64) -> Complex64 {
    let g = h.grid();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..g.n_k {
        let k = g.k(i);
        for j in 0..g.n_q {
            let q = g.q(j);
            let ph = LATTICE_A * (n as f64 * q - m as f64 * k);
            acc += Complex64::from_polar(h.sample(i, j).norm_sqr(), ph);
        }
    }
    acc * g.cell_weight()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OverlapEntry {
    pub m: i64,
    pub n: i64,
    /// Real-line quadrature.
    pub line: Complex64,
    /// Cell quadrature of the kq form, when a kq field was supplied.
    pub kq: Option<Complex64>,
    pub target: f64,
    /// Whether `(m, n)` lies on the `(1, M)` sublattice; other entries are
    /// informational.
    pub sublattice: bool,
}

impl OverlapEntry {
    pub fn deviation(&self) -> f64 {
        (self.line - self.target).norm()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OverlapReport {
    pub stride: i64,
    pub entries: Vec<OverlapEntry>,
    /// `max |S − δ|` over sublattice entries.
    pub max_dev: f64,
    /// `max |S_line − S_kq|` over all entries carrying both.
    pub max_cross: f64,
}

impl OverlapReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.max_dev <= tol
    }

    pub fn get(&self, m: i64, n: i64) -> Option<&OverlapEntry> {
        self.entries.iter().find(|e| e.m == m && e.n == n)
    }

    /// Rows `m n re im |S−δ|`, with kq values when present.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# sublattice stride M = {}", self.stride);
        let _ = writeln!(out, "# m n re im absdev kq_re kq_im sublattice");
        for e in &self.entries {
            let (kr, ki) = e.kq.map_or((f64::NAN, f64::NAN), |v| (v.re, v.im));
            let _ = writeln!(
                out,
                "{} {} {:.14e} {:.14e} {:.14e} {:.14e} {:.14e} {}",
                e.m,
                e.n,
                e.line.re,
                e.line.im,
                e.deviation(),
                kr,
                ki,
                if e.sublattice { "yes" } else { "info" }
            );
        }
        let _ = writeln!(out, "# max_dev {:.14e}", self.max_dev);
        let _ = writeln!(out, "# max_cross {:.14e}", self.max_cross);
        out
    }
}

/// Overlaps on `(m, M j)` for `|m|, |j| ≤ radius`, plus the off-sublattice
/// entries `(0, 1..M)` as information.
pub fn overlap_report(
    hp: &LineFunction,
    kq: Option<&KqFunction>,
    stride: i64,
    radius: i64,
) -> Result<OverlapReport> {
    if stride < 1 {
        return Err(Error::InvalidArgument(format!("stride must be positive, got {stride}")));
    }
    let mut sites: Vec<(i64, i64, bool)> = Vec::new();
    for m in -radius..=radius {
        for j in -radius..=radius {
            sites.push((m, stride * j, true));
        }
    }
    sites.extend((1..stride).map(|j| (0, j, false)));
    let entries: Vec<OverlapEntry> = sites
        .into_par_iter()
        .map(|(m, n, sublattice)| {
            Ok(OverlapEntry {
                m,
                n,
                line: overlap_s(hp, m, n)?,
                kq: kq.map(|h| overlap_s_kq(h, m, n)),
                target: if m == 0 && n == 0 { 1.0 } else { 0.0 },
                sublattice,
            })
        })
        .collect::<Result<_>>()?;
    let max_dev = entries
        .iter()
        .filter(|e| e.sublattice)
        .map(OverlapEntry::deviation)
        .fold(0.0, f64::max);
    let max_cross = entries
        .iter()
        .filter_map(|e| e.kq.map(|v| (v - e.line).norm()))
        .fold(0.0, f64::max);
    Ok(OverlapReport {
        stride,
        entries,
        max_dev,
        max_cross,
    })
}

/// Gram matrix of the translates at `sites` and its determinant.
#[derive(Debug, Clone, PartialEq)]
pub struct GramReport {
    pub sites: Vec<(i64, i64)>,
    pub matrix: DMatrix<Complex64>,
    pub det: Complex64,
}

impl GramReport {
    /// `max |G − I|` entrywise.
    pub fn max_offset_from_identity(&self) -> f64 {
        let n = self.sites.len();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let id = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((self.matrix[(i, j)] - id).norm());
            }
        }
        worst
    }
}

/// `G_ij = ⟨ψ_{m_i,n_i}, ψ_{m_j,n_j}⟩ = S_{m_j−m_i, n_j−n_i}`. The norm of the
/// Slater determinant built from these orbitals is `det G`.
pub fn gram_slater(hp: &LineFunction, sites: &[(i64, i64)], stride: i64) -> Result<GramReport> {
    if stride < 1 {
        return Err(Error::InvalidArgument(format!("stride must be positive, got {stride}")));
    }
    for (i, s) in sites.iter().enumerate() {
        if s.1.rem_euclid(stride) != 0 {
            return Err(Error::OffSublattice(s.0, s.1, stride));
        }
        if sites[..i].contains(s) {
            return Err(Error::DuplicateSite(s.0, s.1));
        }
    }
    let mut diffs: Vec<(i64, i64)> = sites
        .iter()
        .flat_map(|a| sites.iter().map(move |b| (b.0 - a.0, b.1 - a.1)))
        .collect();
    diffs.sort();
    diffs.dedup();
    let values: HashMap<(i64, i64), Complex64> = diffs
        .into_par_iter()
        .map(|d| Ok((d, overlap_s(hp, d.0, d.1)?)))
        .collect::<Result<_>>()?;
    let n = sites.len();
    let matrix = DMatrix::from_fn(n, n, |i, j| {
        values[&(sites[j].0 - sites[i].0, sites[j].1 - sites[i].1)]
    });
    let det = if n == 0 {
        Complex64::new(1.0, 0.0)
    } else {
        matrix.clone().determinant()
    };
    Ok(GramReport {
        sites: sites.to_vec(),
        matrix,
        det,
    })
}

/// Row-major `side × side` patch of sublattice sites `(i, M j)`.
pub fn square_patch(side: usize, stride: i64) -> Vec<(i64, i64)> {
    (0..side as i64)
        .flat_map(|i| (0..side as i64).map(move |j| (i, stride * j)))
        .collect()
}

/// `S_{m,n}` between first-level translates, from the reduced form
/// `(2/√π) ∫dx ∫dq e^{inaq} conj(h(q)) h(q − ma) (q + x)² e^{-(q+x)²}`,
/// integrated as a genuine double integral.
pub fn first_level_overlap(hp: &LineFunction, m: i64, n: i64) -> Result<Complex64> {
    let shift = m as f64 * LATTICE_A;
    let freq = n as f64 * LATTICE_A;
    let (lo, hi) = hp.window();
    let (qa, qb) = (lo.max(lo + shift), hi.min(hi + shift));
    if qb <= qa {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let mut cuts: Vec<f64> = hp
        .breakpoints()
        .into_iter()
        .flat_map(|p| [p, p + shift])
        .filter(|p| *p > qa && *p < qb)
        .chain([qa, qb])
        .collect();
    cuts.sort_by(|x, y| x.total_cmp(y));
    cuts.dedup_by(|x, y| (*x - *y).abs() <= 1e-14 * (1.0 + y.abs()));
    let piece_width = (0.5 * hp.length_scale()).min(0.25).min(PI / (freq.abs() + 1.0));
    let g = |q: f64| Complex64::from_polar(1.0, freq * q) * hp.eval(q).conj() * hp.eval(q - shift);
    let inner = |x: f64| {
        let f = |q: f64| {
            let t = q + x;
            g(q) * (t * t * (-t * t).exp())
        };
        let mut acc = Complex64::new(0.0, 0.0);
        for w in cuts.windows(2) {
            // only the part of the piece within reach of the Gaussian matters
            let (a, b) = (w[0].max(-x - 7.0), w[1].min(-x + 7.0));
            if b > a {
                let panels = ((b - a) / piece_width).ceil().max(1.0) as usize;
                acc += quadrature::integrate_panels(&f, a, b, panels);
            }
        }
        acc
    };
    let v = quadrature::integrate(inner, -qb - 7.0, -qa + 7.0, 0.5, 1e-11)?;
    Ok(v * 2.0 / PI.sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelComparison {
    pub m: i64,
    pub n: i64,
    pub lowest: Complex64,
    pub first: Complex64,
}

impl LevelComparison {
    pub fn difference(&self) -> f64 {
        (self.lowest - self.first).norm()
    }
}

/// Compares first-level and lowest-level overlaps at each `(m, n)`; the
/// maximum difference is the largest [`LevelComparison::difference`].
pub fn ill_overlap_equivalence(hp: &LineFunction, pairs: &[(i64, i64)]) -> Result<Vec<LevelComparison>> {
    pairs
        .par_iter()
        .map(|&(m, n)| {
            Ok(LevelComparison {
                m,
                n,
                lowest: overlap_s(hp, m, n)?,
                first: first_level_overlap(hp, m, n)?,
            })
        })
        .collect()
}

pub fn max_level_difference(rows: &[LevelComparison]) -> f64 {
    rows.iter().map(LevelComparison::difference).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn haar_t2() -> LineFunction {
        build_t(&FilterBank::builtin("haar").unwrap(), 1).unwrap()
    }

    #[test]
    fn haar_t2_modulus() {
        let t = haar_t2();
        for w in [0.0, 0.4, 1.3, 2.2] {
            let want = (1.0 + (LATTICE_A * w).cos()) / LATTICE_A;
            assert!((t.eval(w).norm_sqr() - want).abs() < 1e-15);
        }
        assert_eq!(t.eval(LATTICE_A), Complex64::new(0.0, 0.0));
        assert!((t.norm_sqr().unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn haar_off_sublattice_witness() {
        let s = overlap_s(&haar_t2(), 0, 1).unwrap();
        assert!((s - 0.5).norm() < 1e-12, "{s}");
        assert_eq!(overlap_s(&haar_t2(), 1, 0).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn translation_composes_exactly() {
        let orb = LandauOrbital::new(LandauLevel::Lowest, LineFunction::gaussian(0.3, 1.0)).unwrap();
        let f = |x: f64, y: f64| orb.eval(x, y);
        for (x, y) in [(0.1, -0.4), (1.2, 0.7)] {
            let twice = translate_value(|x, y| translate_value(f, 1, 0, x, y), 0, 1, x, y).unwrap();
            let once = orb.translated(1, 1).eval(x, y).unwrap();
            assert!((twice - once).norm() < 1e-14);
        }
    }

    #[test]
    fn gaussian_orbital_profile() {
        // ∫ e^{-P² - P(x-iy)} dP = √π e^{(x-iy)²/4}
        let orb = LandauOrbital::new(LandauLevel::Lowest, LineFunction::ground_gaussian()).unwrap();
        for (x, y) in [(0.0, 0.0), (1.0, 0.5), (-2.0, 1.5)] {
            let want = (PI.sqrt() * PI.powf(-0.25) / (SQRT_2 * PI.powf(0.75))) * (-(x * x + y * y) / 4.0f64).exp();
            let got = orb.eval(x, y).unwrap().norm();
            assert!((got - want).abs() < 1e-14, "{x},{y}: {got} vs {want}");
        }
    }

    #[test]
    fn gram_rejects_bad_sites() {
        let hp = haar_t2();
        assert!(matches!(gram_slater(&hp, &[(0, 0), (0, 0)], 2), Err(Error::DuplicateSite(0, 0))));
        assert!(matches!(gram_slater(&hp, &[(0, 1)], 2), Err(Error::OffSublattice(0, 1, 2))));
        let single = gram_slater(&hp, &[(3, 4)], 2).unwrap();
        assert!((single.det - 1.0).norm() < 1e-12);
    }

    #[test]
    fn unnormalized_reduced_function_is_rejected() {
        let hp = LineFunction::Gaussian {
            amplitude: Complex64::new(1.0, 0.0),
            center: 0.0,
            width: 1.0,
            momentum: 0.0,
        };
        assert!(LandauOrbital::new(LandauLevel::First, hp).is_err());
    }
}
