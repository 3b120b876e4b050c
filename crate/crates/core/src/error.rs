use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown builtin filter `{0}` (expected haar, d4 or d6)")]
    UnknownFilter(String),

    #[error("filter bank has no coefficients")]
    EmptyFilter,

    #[error("filter file line {line}: {msg}")]
    FilterParse { line: usize, msg: String },

    #[error("kq grid file line {line}: {msg}")]
    GridParse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("filter bank `{name}` fails the QMF identities (max residual {residual:.3e})")]
    UnverifiedFilter { name: String, residual: f64 },

    #[error("cascade does not converge: sup-norm step {residual:.3e} at depth {depth} exceeds the previous step")]
    NonConvergentCascade { depth: u32, residual: f64 },

    #[error("Zak truncation at |n| <= {n_max} leaves a tail estimate {tail:.3e} above {tol:.3e}")]
    TruncationBound { n_max: usize, tail: f64, tol: f64 },

    #[error("kq function has no evaluator on the extended plane")]
    NoExtension,

    #[error("quadrature did not converge: error estimate {estimate:.3e} above {tol:.3e}")]
    QuadratureNonConvergence { estimate: f64, tol: f64 },

    #[error("duplicate lattice site ({0}, {1})")]
    DuplicateSite(i64, i64),

    #[error("site ({0}, {1}) is not on the stride-{2} sublattice")]
    OffSublattice(i64, i64, i64),

    #[error("filter coefficient tail not negligible: |h_{n}| = {magnitude:.3e} at the window edge")]
    TailNotNegligible { n: i64, magnitude: f64 },

    #[error("argument {re} + {im}i is outside the error-function accuracy envelope |Im z| <= 12")]
    OutsideEnvelope { re: f64, im: f64 },

    #[error("point ({x}, {y}) is outside the asymptotic region (x >= 0, |x - iy| >= 3)")]
    NotAsymptotic { x: f64, y: f64 },
}
