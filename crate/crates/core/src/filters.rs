//! Filter banks `{h_n}` seeding a multi-resolution analysis, their QMF
//! identities and the plain-text coefficient format.

use num_complex::Complex64;
use std::f64::consts::{PI, SQRT_2};
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Number of ω samples on `[0, 2π)` for the sampled identities.
pub const QMF_GRID: usize = 256;

/// QMF tolerance applied to the builtin banks.
pub const BUILTIN_TOL: f64 = 1e-12;

/// QMF tolerance applied to user-supplied banks.
pub const USER_TOL: f64 = 1e-10;

/// A finite complex coefficient sequence `h_n`, `n = offset .. offset + len`.
#[derive(Debug, Clone, PartialEq)]
pub struct FilterBank {
    name: String,
    offset: i64,
    coeffs: Vec<Complex64>,
    builtin: bool,
}

/// What to build a [`FilterBank`] from.
#[derive(Debug, Clone, PartialEq)]
pub enum FilterSpec {
    Builtin(String),
    Coefficients { offset: i64, coeffs: Vec<Complex64> },
}

impl FromStr for FilterSpec {
    type Err = Error;

    /// A builtin name, or a bracketed list of real taps starting at `n = 0`
    /// such as `[1, 0]`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) else {
            return Ok(FilterSpec::Builtin(s.to_string()));
        };
        let coeffs = inner
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<f64>()
                    .map(|v| Complex64::new(v, 0.0))
                    .map_err(|_| Error::InvalidArgument(format!("cannot parse coefficient `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FilterSpec::Coefficients { offset: 0, coeffs })
    }
}

pub fn make_filter(spec: FilterSpec) -> Result<FilterBank> {
    match spec {
        FilterSpec::Builtin(name) => FilterBank::builtin(&name),
        FilterSpec::Coefficients { offset, coeffs } => FilterBank::new("user", offset, coeffs),
    }
}

impl FilterBank {
    pub fn new(name: impl Into<String>, offset: i64, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptyFilter);
        }
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidArgument("non-finite filter coefficient".into()));
        }
        Ok(Self {
            name: name.into(),
            offset,
            coeffs,
            builtin: false,
        })
    }

    /// Real coefficients starting at `n = 0`.
    pub fn from_real(name: impl Into<String>, taps: &[f64]) -> Result<Self> {
        Self::new(name, 0, taps.iter().map(|&t| Complex64::new(t, 0.0)).collect())
    }

    pub fn builtin(name: &str) -> Result<Self> {
        let taps: Vec<f64> = match name.to_ascii_lowercase().as_str() {
            "haar" => vec![1.0 / SQRT_2, 1.0 / SQRT_2],
            "d4" => {
                let s3 = 3f64.sqrt();
                let d = 4.0 * SQRT_2;
                vec![(1.0 + s3) / d, (3.0 + s3) / d, (3.0 - s3) / d, (1.0 - s3) / d]
            }
            "d6" => {
                let s10 = 10f64.sqrt();
                let r = (5.0 + 2.0 * s10).sqrt();
                let d = 16.0 * SQRT_2;
                vec![
                    (1.0 + s10 + r) / d,
                    (5.0 + s10 + 3.0 * r) / d,
                    (10.0 - 2.0 * s10 + 2.0 * r) / d,
                    (10.0 - 2.0 * s10 - 2.0 * r) / d,
                    (5.0 + s10 - 3.0 * r) / d,
                    (1.0 + s10 - r) / d,
                ]
            }
            _ => return Err(Error::UnknownFilter(name.to_string())),
        };
        let mut fb = Self::from_real(name.to_ascii_lowercase(), &taps)?;
        fb.builtin = true;
        Ok(fb)
    }

    pub fn builtin_names() -> [&'static str; 3] {
        ["haar", "d4", "d6"]
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_builtin(&self) -> bool {
        self.builtin
    }

    /// Smallest index with a stored coefficient.
    pub fn n_min(&self) -> i64 {
        self.offset
    }

    /// Largest index with a stored coefficient.
    pub fn n_max(&self) -> i64 {
        self.offset + self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `h_n`, zero outside the stored window.
    pub fn coeff(&self, n: i64) -> Complex64 {
        if n < self.n_min() || n > self.n_max() {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[(n - self.offset) as usize]
        }
    }

    /// `(n, h_n)` pairs in index order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, c)| (self.offset + i as i64, *c))
    }

    /// Tolerance used when this bank is checked before use.
    pub fn default_tolerance(&self) -> f64 {
        if self.builtin {
            BUILTIN_TOL
        } else {
            USER_TOL
        }
    }

    /// `m_o(ω) = (1/√2) Σ h_n e^{-inω}`.
    pub fn m_o(&self, omega: f64) -> Complex64 {
        self.iter()
            .map(|(n, h)| h * Complex64::from_polar(1.0, -(n as f64) * omega))
            .sum::<Complex64>()
            / SQRT_2
    }

    pub fn verify_qmf(&self, tol: f64) -> QmfReport {
        verify_qmf(self, tol)
    }

    /// Checks the bank at its default tolerance and returns it, or the
    /// residual that made it fail.
    pub fn require_verified(&self) -> Result<&Self> {
        let report = self.verify_qmf(self.default_tolerance());
        if report.passed {
            Ok(self)
        } else {
            Err(Error::UnverifiedFilter {
                name: self.name.clone(),
                residual: report.max_residual(),
            })
        }
    }

    /// Parses the `n re im` text format. Missing indices inside the range are
    /// zero; `#` starts a comment.
    pub fn parse(name: impl Into<String>, text: &str) -> Result<Self> {
        let mut entries: Vec<(i64, Complex64)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(Error::FilterParse {
                    line: i + 1,
                    msg: format!("expected `n re im`, got {} fields", fields.len()),
                });
            }
            let bad = |what: &str| Error::FilterParse {
                line: i + 1,
                msg: format!("cannot parse {what}"),
            };
            let n: i64 = fields[0].parse().map_err(|_| bad("index"))?;
            let re: f64 = fields[1].parse().map_err(|_| bad("real part"))?;
            let im: f64 = fields[2].parse().map_err(|_| bad("imaginary part"))?;
            if entries.iter().any(|(m, _)| *m == n) {
                return Err(Error::FilterParse {
                    line: i + 1,
                    msg: format!("duplicate index {n}"),
                });
            }
            entries.push((n, Complex64::new(re, im)));
        }
        if entries.is_empty() {
            return Err(Error::EmptyFilter);
        }
        entries.sort_by_key(|(n, _)| *n);
        let lo = entries[0].0;
        let hi = entries[entries.len() - 1].0;
        let mut coeffs = vec![Complex64::new(0.0, 0.0); (hi - lo + 1) as usize];
        for (n, c) in entries {
            coeffs[(n - lo) as usize] = c;
        }
        Self::new(name, lo, coeffs)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "user".into());
        Self::parse(name, &text)
    }

    /// Serializes in the `n re im` format, with `header` lines emitted as
    /// comments.
    pub fn to_text(&self, header: &[String]) -> String {
        let mut out = String::new();
        for h in header {
            let _ = writeln!(out, "# {h}");
        }
        for (n, c) in self.iter() {
            let _ = writeln!(out, "{n} {:.16e} {:.16e}", c.re, c.im);
        }
        out
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text(&[format!("filter {}", self.name)]))?;
        Ok(())
    }
}

/// Residuals of the four equivalent QMF identities.
#[derive(Debug, Clone, PartialEq)]
pub struct QmfReport {
    /// `|Σ |h_n|² − 1|`
    pub normalization: f64,
    /// `max_k |Σ h_n conj(h_{n+2k}) − δ_{k,0}|`
    pub shifted_orthogonality: f64,
    /// `max_ω ||m_o(ω)|² + |m_o(ω+π)|² − 1|`
    pub modulus_identity: f64,
    /// `max_ω |½ Σ_{n,l} h_n conj(h_l) e^{i(l−n)ω}(1+(−1)^{l+n}) − 1|`
    pub double_sum: f64,
    pub tol: f64,
    pub passed: bool,
}

impl QmfReport {
    pub fn max_residual(&self) -> f64 {
        self.normalization
            .max(self.shifted_orthogonality)
            .max(self.modulus_identity)
            .max(self.double_sum)
    }

    pub fn rows(&self) -> [(&'static str, f64); 4] {
        [
            ("normalization", self.normalization),
            ("shifted_orthogonality", self.shifted_orthogonality),
            ("modulus_identity", self.modulus_identity),
            ("double_sum", self.double_sum),
        ]
    }
}

pub fn verify_qmf(fb: &FilterBank, tol: f64) -> QmfReport {
    let norm: f64 = fb.coeffs.iter().map(|c| c.norm_sqr()).sum();
    let normalization = (norm - 1.0).abs();

    let span = fb.n_max() - fb.n_min();
    let mut shifted_orthogonality = 0.0f64;
    for k in -(span / 2 + 1)..=(span / 2 + 1) {
        let s: Complex64 = fb
            .iter()
            .map(|(n, h)| h * fb.coeff(n + 2 * k).conj())
            .sum();
        let target = if k == 0 { 1.0 } else { 0.0 };
        shifted_orthogonality = shifted_orthogonality.max((s - target).norm());
    }

    let mut modulus_identity = 0.0f64;
    let mut double_sum = 0.0f64;
    for j in 0..QMF_GRID {
        let omega = 2.0 * PI * j as f64 / QMF_GRID as f64;
        let m = fb.m_o(omega).norm_sqr() + fb.m_o(omega + PI).norm_sqr();
        modulus_identity = modulus_identity.max((m - 1.0).abs());

        let mut acc = Complex64::new(0.0, 0.0);
        for (n, hn) in fb.iter() {
            for (l, hl) in fb.iter() {
                if (l + n).rem_euclid(2) == 0 {
                    acc += hn * hl.conj() * Complex64::from_polar(2.0, (l - n) as f64 * omega);
                }
            }
        }
        double_sum = double_sum.max((acc * 0.5 - 1.0).norm());
    }

    let mut report = QmfReport {
        normalization,
        shifted_orthogonality,
        modulus_identity,
        double_sum,
        tol,
        passed: false,
    };
    report.passed = report.max_residual() <= tol;
    report
}
