//! From a kq field that generates an orthonormal family back to filter
//! coefficients: `h_n(k) = c ∫_0^a dq e^{inaq} h(k, q)`.

use num_complex::Complex64;
use rayon::prelude::*;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::filters::FilterBank;
use crate::landau::t_field;
use crate::zak::{KqFunction, KqGrid};
use crate::LATTICE_A;

/// The constant `c` in the extraction integral. With the forward field
/// `t_{2L} = a^{-1} Σ_l h_l e^{-ilqLa}` and `a² = 2π`, `c = 1` returns the
/// original coefficients at indices `n = lL`.
pub const EXTRACTION_NORMALIZATION: f64 = 1.0;

/// Nodes of the periodic rectangle rule in q. Exact for trigonometric
/// polynomials of degree below this.
pub const EXTRACTION_NODES: usize = 512;

/// Coefficients are kept until this many consecutive indices fall below
/// [`NEGLIGIBLE`].
pub const DEFAULT_WINDOW: i64 = 8;
pub const NEGLIGIBLE: f64 = 1e-14;
// scan limit for the automatic window
const SCAN_LIMIT: i64 = 4096;

/// `h_n(k)` by the rectangle rule over one period in q.
pub fn extract_hn(h: &KqFunction, n: i64, k: f64) -> Complex64 {
    let step = LATTICE_A / EXTRACTION_NODES as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..EXTRACTION_NODES {
        let q = j as f64 * step;
        acc += Complex64::from_polar(1.0, n as f64 * LATTICE_A * q) * h.eval(k, q);
    }
    acc * step * EXTRACTION_NORMALIZATION
}

/// Coefficients `h_n(k)` for `n` in `offset..offset + coeffs.len()`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtractedFilter {
    pub k: f64,
    pub offset: i64,
    pub coeffs: Vec<Complex64>,
    /// Indices scanned, inclusive.
    pub n_range: (i64, i64),
}

impl ExtractedFilter {
    pub fn coeff(&self, n: i64) -> Complex64 {
        let i = n - self.offset;
        if i < 0 || i as usize >= self.coeffs.len() {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[i as usize]
        }
    }

    /// `Σ_n h_n conj(h_{n+2l})` over the kept coefficients.
    pub fn qmf_sum(&self, l: i64) -> Complex64 {
        (0..self.coeffs.len() as i64)
            .map(|i| {
                let n = self.offset + i;
                self.coeff(n) * self.coeff(n + 2 * l).conj()
            })
            .sum()
    }

    /// The coefficients as a filter bank (not verified).
    pub fn to_filter_bank(&self, name: &str) -> Result<FilterBank> {
        FilterBank::new(name, self.offset, self.coeffs.clone())
    }

    /// Filter text format with a `# k = ...` header.
    pub fn to_text(&self) -> Result<String> {
        let fb = self.to_filter_bank("extracted")?;
        Ok(fb.to_text(&[
            format!("k = {:.14e}", self.k),
            format!("scanned n in [{}, {}]", self.n_range.0, self.n_range.1),
        ]))
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text()?)?;
        Ok(())
    }
}

/// Scans `n = 0, ±1, ±2, ...` in each direction until `window` consecutive
/// coefficients are negligible and keeps the span of the rest.
pub fn extract_filter(h: &KqFunction, k: f64, window: i64) -> Result<ExtractedFilter> {
    if window < 1 {
        return Err(Error::InvalidArgument(format!("window must be positive, got {window}")));
    }
    let scan = |dir: i64| -> Result<(i64, i64)> {
        // returns (last significant index, last scanned index)
        let mut last = 0i64;
        let mut n = 0i64;
        loop {
            n += dir;
            if n.abs() > SCAN_LIMIT {
                return Err(Error::TailNotNegligible {
                    n,
                    magnitude: extract_hn(h, n - dir, k).norm(),
                });
            }
            if extract_hn(h, n, k).norm() > NEGLIGIBLE {
                last = n;
            } else if (n - last).abs() >= window {
                return Ok((last, n));
            }
        }
    };
    let (hi, scanned_hi) = scan(1)?;
    let (lo, scanned_lo) = scan(-1)?;
    let coeffs: Vec<Complex64> = (lo..=hi).into_par_iter().map(|n| extract_hn(h, n, k)).collect();
    Ok(ExtractedFilter {
        k,
        offset: lo,
        coeffs,
        n_range: (scanned_lo, scanned_hi),
    })
}

/// `Σ_{|n| ≤ n_window} h_n(k) conj(h_{n+2l}(k))`. Fails when the
/// coefficients at the window edge are not negligible.
pub fn verify_mra_condition(h: &KqFunction, l: i64, k: f64, n_window: i64) -> Result<Complex64> {
    if n_window < 0 {
        return Err(Error::InvalidArgument(format!("window must be non-negative, got {n_window}")));
    }
    let reach = n_window + 2 * l.abs();
    let coeffs: Vec<Complex64> = (-reach..=reach).into_par_iter().map(|n| extract_hn(h, n, k)).collect();
    let at = |n: i64| coeffs[(n + reach) as usize];
    for edge in [-n_window, n_window] {
        let magnitude = at(edge).norm();
        if magnitude > NEGLIGIBLE {
            return Err(Error::TailNotNegligible { n: edge, magnitude });
        }
    }
    Ok((-n_window..=n_window).map(|n| at(n) * at(n + 2 * l).conj()).sum())
}

/// Largest coefficient deviation after the forward map `fb → t_{2L}` and
/// back, and the spread of the recovered coefficients over the sampled `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct RoundtripReport {
    pub filter: String,
    pub l: u32,
    pub ks: Vec<f64>,
    pub recovered: Vec<ExtractedFilter>,
    pub max_deviation: f64,
    pub k_variation: f64,
}

/// `k_i = i a / count`.
pub fn sample_ks(count: usize) -> Vec<f64> {
    (0..count).map(|i| LATTICE_A * i as f64 / count as f64).collect()
}

/// Recovers `h_l` as `h_{lL}(k)` and compares. Indices not of the form `lL`
/// must come back as zero.
pub fn roundtrip(fb: &FilterBank, l: u32, ks: &[f64]) -> Result<RoundtripReport> {
    let h = t_field(fb, l, KqGrid::default())?;
    let stride = l as i64;
    let recovered: Vec<ExtractedFilter> = ks
        .iter()
        .map(|&k| extract_filter(&h, k, DEFAULT_WINDOW * stride))
        .collect::<Result<_>>()?;
    let mut max_deviation = 0.0f64;
    for ex in &recovered {
        let (lo, hi) = (
            ex.offset.min(fb.n_min() * stride),
            (ex.offset + ex.coeffs.len() as i64).max(fb.n_max() * stride + 1),
        );
        for n in lo..hi {
            let want = if n.rem_euclid(stride) == 0 {
                fb.coeff(n.div_euclid(stride))
            } else {
                Complex64::new(0.0, 0.0)
            };
            max_deviation = max_deviation.max((ex.coeff(n) - want).norm());
        }
    }
    let mut k_variation = 0.0f64;
    if let Some(first) = recovered.first() {
        for ex in &recovered[1..] {
            for n in ex.offset.min(first.offset)..(ex.offset + ex.coeffs.len() as i64).max(first.offset + first.coeffs.len() as i64) {
                k_variation = k_variation.max((ex.coeff(n) - first.coeff(n)).norm());
            }
        }
    }
    Ok(RoundtripReport {
        filter: fb.name().to_string(),
        l,
        ks: ks.to_vec(),
        recovered,
        max_deviation,
        k_variation,
    })
}

impl RoundtripReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# filter {} L {}", self.filter, self.l);
        let _ = writeln!(out, "# k n re im");
        for ex in &self.recovered {
            for (i, c) in ex.coeffs.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "{:.14e} {} {:.14e} {:.14e}",
                    ex.k,
                    ex.offset + i as i64,
                    c.re,
                    c.im
                );
            }
        }
        let _ = writeln!(out, "# max_deviation {:.14e}", self.max_deviation);
        let _ = writeln!(out, "# k_variation {:.14e}", self.k_variation);
        out
    }
}
