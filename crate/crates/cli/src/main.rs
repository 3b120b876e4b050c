mod report;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use report::{num, Format, Report};
use wavelet_landau::filters::{make_filter, FilterBank, FilterSpec};
use wavelet_landau::haar;
use wavelet_landau::inverse::{extract_filter, roundtrip, sample_ks, verify_mra_condition, DEFAULT_WINDOW};
use wavelet_landau::landau::{
    build_t, gram_slater, grid_text, j_criterion, overlap_report, square_patch, t_field, wavefunction_grid,
    LandauLevel, LandauOrbital,
};
use wavelet_landau::line::LineFunction;
use wavelet_landau::zak::{check_boundary, zak_transform, KqFunction, KqGrid, Truncation};
use wavelet_landau::{Error, Result};

const THREADS_ENV: &str = "WAVELET_LANDAU_THREADS";
const MIN_GRID: usize = 8;
const OVERLAP_RADIUS: i64 = 3;
const INVERT_SAMPLES: usize = 8;

#[derive(Parser)]
#[command(name = "wavelet-landau", version, about = "Verification and export commands for wavelet filters and Landau orbitals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the QMF identities of a filter bank.
    VerifyFilter(Common),
    /// Overlap table on the sublattice and the J criterion.
    Overlaps(Common),
    /// Forward map to the kq field and recovery of the filter.
    Invert(Common),
    /// Wavefunction and kq field exports.
    Grid {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        orbital: OrbitalArgs,
        /// Half width of the square xy window.
        #[arg(long, default_value_t = 6.0)]
        extent: f64,
        /// Lattice translation (m, n) applied to the orbital.
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        m: i64,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        n: i64,
    },
    /// Haar closed forms against quadrature, asymptotes and localization.
    HaarCompare(Common),
    /// Gram matrix and Slater determinant norm of a sublattice patch.
    Slater {
        #[command(flatten)]
        common: Common,
        /// Number of sites, taken row-major from a square patch.
        #[arg(long, default_value_t = 4)]
        sites: usize,
        #[arg(long, value_enum, default_value_t = Profile::Filter)]
        hp: Profile,
    },
}

#[derive(Args)]
struct Common {
    /// Builtin name (haar, d4, d6), a list such as "[1, 0]", or a filter file.
    #[arg(long, default_value = "haar")]
    filter: String,
    #[arg(long = "L", default_value_t = 1)]
    l: u32,
    /// "N" for every size or "N_k,N_q,N_xy".
    #[arg(long, default_value = "64,64,21")]
    grid: String,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args)]
struct OrbitalArgs {
    #[arg(long, default_value_t = 0)]
    level: u32,
    #[arg(long, value_enum, default_value_t = Profile::Filter)]
    hp: Profile,
}

/// Source of the reduced function `h(P)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Profile {
    /// `T_{2L}` built from the filter.
    Filter,
    /// Unit Gaussian; not orthonormal on the lattice.
    Gaussian,
}

#[derive(Debug, Clone, Copy)]
struct GridSizes {
    n_k: usize,
    n_q: usize,
    n_xy: usize,
}

fn parse_grid(s: &str) -> Result<GridSizes> {
    let parts: Vec<usize> = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidArgument(format!("cannot parse grid size `{t}`")))
        })
        .collect::<Result<_>>()?;
    let g = match parts[..] {
        [n] => GridSizes { n_k: n, n_q: n, n_xy: n },
        [n_k, n_q, n_xy] => GridSizes { n_k, n_q, n_xy },
        _ => return Err(Error::InvalidArgument(format!("grid must be N or N_k,N_q,N_xy, got `{s}`"))),
    };
    if [g.n_k, g.n_q, g.n_xy].iter().any(|&n| n < MIN_GRID) {
        return Err(Error::InvalidArgument(format!("grid sizes must be at least {MIN_GRID}, got `{s}`")));
    }
    Ok(g)
}

struct Run<'a> {
    common: &'a Common,
    grid: GridSizes,
    tol: f64,
    dir: PathBuf,
}

impl<'a> Run<'a> {
    fn new(command: &str, common: &'a Common, default_tol: Option<f64>, fb: Option<&FilterBank>) -> Result<Self> {
        if common.l < 1 {
            return Err(Error::InvalidArgument("L must be positive".into()));
        }
        let grid = parse_grid(&common.grid)?;
        let tol = match (common.tol, default_tol, fb) {
            (Some(t), _, _) => t,
            (None, Some(t), _) => t,
            (None, None, Some(fb)) => fb.default_tolerance(),
            (None, None, None) => unreachable!("every command has a default tolerance"),
        };
        if !(tol > 0.0) {
            return Err(Error::InvalidArgument(format!("tol must be positive, got {tol}")));
        }
        let dir = common.out.join(command);
        std::fs::create_dir_all(&dir)?;
        Ok(Self { common, grid, tol, dir })
    }

    fn config(&self, extra: &[(&'static str, String)]) -> Vec<(&'static str, String)> {
        let g = self.grid;
        let mut cfg = vec![
            ("filter", self.common.filter.clone()),
            ("L", self.common.l.to_string()),
            ("grid", format!("{},{},{}", g.n_k, g.n_q, g.n_xy)),
            ("tol", num(self.tol)),
        ];
        cfg.extend_from_slice(extra);
        cfg
    }

    fn kq_grid(&self) -> Result<KqGrid> {
        KqGrid::new(self.grid.n_k, self.grid.n_q)
    }

    fn write(&self, name: &str, header: &Report, body: &str) -> Result<()> {
        std::fs::write(self.dir.join(name), format!("{}{body}", header.header()))?;
        Ok(())
    }

    fn finish(&self, report: &Report) -> Result<bool> {
        let path = report.write(&self.dir, self.common.format)?;
        print!("{}", report.render(self.common.format));
        eprintln!("wrote {}", path.display());
        Ok(report.passed)
    }
}

fn load_filter(spec: &str) -> Result<FilterBank> {
    let path = Path::new(spec);
    let parsed: FilterSpec = spec.parse()?;
    match parsed {
        FilterSpec::Builtin(name) if FilterBank::builtin_names().contains(&name.as_str()) => {
            FilterBank::builtin(&name)
        }
        FilterSpec::Builtin(_) if path.exists() || spec.contains(['/', '.']) => {
            FilterBank::read(path).map_err(|e| match e {
                Error::Io(io) => Error::Io(std::io::Error::new(io.kind(), format!("{spec}: {io}"))),
                e => e,
            })
        }
        other => make_filter(other),
    }
}

fn profile(hp: Profile, fb: &FilterBank, l: u32) -> Result<LineFunction> {
    match hp {
        Profile::Filter => build_t(fb, l),
        Profile::Gaussian => Ok(LineFunction::ground_gaussian()),
    }
}

fn kq_of(hp: Profile, fb: &FilterBank, l: u32, grid: KqGrid) -> Result<KqFunction> {
    match hp {
        Profile::Filter => t_field(fb, l, grid),
        Profile::Gaussian => zak_transform(&LineFunction::ground_gaussian(), grid, Truncation::default()),
    }
}

fn verify_filter(common: &Common) -> Result<bool> {
    let fb = load_filter(&common.filter)?;
    let run = Run::new("verify-filter", common, None, Some(&fb))?;
    let qmf = fb.verify_qmf(run.tol);
    let mut report = Report::new("verify-filter", run.config(&[]));
    for (name, v) in qmf.rows() {
        report.metric(name, v);
    }
    report.metric("max_residual", qmf.max_residual());
    report.require(qmf.passed);
    let taps = fb.to_text(&[]);
    run.write("filter.txt", &report, &taps)?;
    run.finish(&report)
}

fn overlaps(common: &Common) -> Result<bool> {
    let fb = load_filter(&common.filter)?;
    let run = Run::new("overlaps", common, Some(1e-8), None)?;
    fb.require_verified()?;
    let l = common.l;
    let stride = 2 * l as i64;
    let h = t_field(&fb, l, run.kq_grid()?)?;
    let j = j_criterion(&h, stride)?;
    let s = overlap_report(&build_t(&fb, l)?, Some(&h), stride, OVERLAP_RADIUS)?;
    let mut report = Report::new("overlaps", run.config(&[("M", stride.to_string())]));
    report.metric("s_max_dev", s.max_dev);
    report.metric("s_max_cross", s.max_cross);
    report.metric("j_target", j.target);
    report.metric("j_max_dev", j.max_dev);
    if let Some(e) = s.get(0, 1).filter(|e| !e.sublattice) {
        report.metric("s_0_1_re", e.line.re);
        report.metric("s_0_1_im", e.line.im);
        report.note("S(0,1) lies off the sublattice and is informational");
    }
    report.require(s.passed(run.tol));
    run.write("overlaps.txt", &report, &s.to_text())?;
    let mut jtext = String::from("# k q J\n");
    for (idx, v) in j.field.iter().enumerate() {
        let (k, q) = (j.grid.k(idx / j.grid.n_q), j.grid.q(idx % j.grid.n_q));
        let _ = writeln!(jtext, "{} {} {}", num(k), num(q), num(*v));
    }
    run.write("j_criterion.txt", &report, &jtext)?;
    run.finish(&report)
}

fn invert(common: &Common) -> Result<bool> {
    let fb = load_filter(&common.filter)?;
    let run = Run::new("invert", common, Some(1e-10), None)?;
    fb.require_verified()?;
    let l = common.l;
    let ks = sample_ks(INVERT_SAMPLES);
    let rt = roundtrip(&fb, l, &ks)?;
    let h = t_field(&fb, l, run.kq_grid()?)?;
    let window = (fb.n_min().abs().max(fb.n_max().abs()) + DEFAULT_WINDOW) * l as i64;
    let mut mra_dev = 0.0f64;
    for &k in &ks {
        for shift in 0..=2 {
            let sum = verify_mra_condition(&h, shift, k, window)?;
            let want = if shift == 0 { 1.0 } else { 0.0 };
            mra_dev = mra_dev.max((sum - want).norm());
        }
    }
    let mut report = Report::new("invert", run.config(&[("samples", INVERT_SAMPLES.to_string())]));
    report.metric("roundtrip_max_dev", rt.max_deviation);
    report.metric("k_variation", rt.k_variation);
    report.metric("mra_max_dev", mra_dev);
    report.require(rt.max_deviation <= run.tol && rt.k_variation <= run.tol && mra_dev <= run.tol);
    run.write("roundtrip.txt", &report, &rt.to_text())?;
    let ex = extract_filter(&h, 0.0, DEFAULT_WINDOW * l as i64)?;
    ex.write(&run.dir.join("extracted_k0.txt"))?;
    run.finish(&report)
}

fn grid(common: &Common, orbital: &OrbitalArgs, extent: f64, m: i64, n: i64) -> Result<bool> {
    let fb = load_filter(&common.filter)?;
    let run = Run::new("grid", common, Some(1e-10), None)?;
    if orbital.hp == Profile::Filter {
        fb.require_verified()?;
    }
    if !(extent > 0.0) {
        return Err(Error::InvalidArgument(format!("extent must be positive, got {extent}")));
    }
    let level = LandauLevel::from_index(orbital.level)?;
    let hp = profile(orbital.hp, &fb, common.l)?;
    let orb = LandauOrbital::new(level, hp)?.translated(m, n);
    let nxy = run.grid.n_xy;
    let axis: Vec<f64> = (0..nxy)
        .map(|i| -extent + 2.0 * extent * i as f64 / (nxy - 1) as f64)
        .collect();
    let points = wavefunction_grid(&orb, &axis, &axis)?;
    let h = kq_of(orbital.hp, &fb, common.l, run.kq_grid()?)?;
    let boundary = check_boundary(&h, run.tol)?;
    let hp_name = match orbital.hp {
        Profile::Filter => "filter",
        Profile::Gaussian => "gaussian",
    };
    let mut report = Report::new(
        "grid",
        run.config(&[
            ("level", orbital.level.to_string()),
            ("hp", hp_name.into()),
            ("extent", num(extent)),
            ("m", m.to_string()),
            ("n", n.to_string()),
        ]),
    );
    report.metric("kq_norm_sqr", h.norm_sqr());
    report.metric("k_periodicity", boundary.k_periodicity);
    report.metric("q_quasi_periodicity", boundary.q_quasi_periodicity);
    report.metric("max_abs_psi", points.iter().map(|p| p.value.norm()).fold(0.0, f64::max));
    report.require(boundary.passed);
    run.write("wavefunction.txt", &report, &grid_text(&points))?;
    std::fs::write(run.dir.join("kq.txt"), h.to_text())?;
    run.finish(&report)
}

fn haar_compare(common: &Common) -> Result<bool> {
    let run = Run::new("haar-compare", common, Some(1e-6), None)?;
    let table = haar::compare_grid(run.grid.n_xy, 3.0)?;
    let xs = [4.0, 6.0, 8.0];
    let t2 = haar::t2_asymptote_ray(&xs)?;
    let h00 = haar::h00_asymptote_ray(&xs)?;
    let loc = haar::localization_compare()?;
    let mut report = Report::new("haar-compare", run.config(&[("window", num(3.0))]));
    report.metric("max_rel_err", table.max_rel_err());
    report.metric("max_phase_gap", table.max_phase_gap());
    for (name, rows) in [("t2", &t2), ("h00", &h00)] {
        for r in rows.iter() {
            report.metric(format!("{name}_asym_rel_err_x{}", r.x), r.rel_err());
        }
    }
    report.require(table.max_rel_err() <= run.tol);
    report.note(format!(
        "asymptotes improving: t2 {}, h00 {}; localization {}",
        haar::monotone_improvement(&t2),
        haar::monotone_improvement(&h00),
        if loc.passed() { "consistent" } else { "inconsistent" }
    ));
    run.write("comparison.txt", &report, &table.to_text())?;
    let mut asym = String::from("# orbital x absClosed absAsym relErr\n");
    for (name, rows) in [("t2", &t2), ("h00", &h00)] {
        for r in rows.iter() {
            let _ = writeln!(asym, "{name} {} {} {} {}", num(r.x), num(r.closed), num(r.asym), num(r.rel_err()));
        }
    }
    run.write("asymptotes.txt", &report, &asym)?;
    run.write("localization.txt", &report, &loc.to_text())?;
    run.finish(&report)
}

fn slater(common: &Common, sites: usize, hp: Profile) -> Result<bool> {
    let fb = load_filter(&common.filter)?;
    let run = Run::new("slater", common, Some(1e-8), None)?;
    if hp == Profile::Filter {
        fb.require_verified()?;
    }
    if sites == 0 {
        return Err(Error::InvalidArgument("sites must be positive".into()));
    }
    let stride = 2 * common.l as i64;
    let side = (1..).find(|s| s * s >= sites).unwrap_or(1);
    let patch: Vec<(i64, i64)> = square_patch(side, stride).into_iter().take(sites).collect();
    let g = gram_slater(&profile(hp, &fb, common.l)?, &patch, stride)?;
    let hp_name = match hp {
        Profile::Filter => "filter",
        Profile::Gaussian => "gaussian",
    };
    let mut report = Report::new(
        "slater",
        run.config(&[("sites", sites.to_string()), ("hp", hp_name.into()), ("M", stride.to_string())]),
    );
    let det_dev = (g.det - Complex64::new(1.0, 0.0)).norm();
    report.metric("det_re", g.det.re);
    report.metric("det_im", g.det.im);
    report.metric("det_abs", g.det.norm());
    report.metric("det_dev", det_dev);
    report.metric("gram_max_offset", g.max_offset_from_identity());
    report.require(det_dev <= run.tol);
    let mut body = String::from("# i j m_i n_i m_j n_j re im\n");
    for (i, si) in g.sites.iter().enumerate() {
        for (j, sj) in g.sites.iter().enumerate() {
            let v = g.matrix[(i, j)];
            let _ = writeln!(body, "{i} {j} {} {} {} {} {} {}", si.0, si.1, sj.0, sj.1, num(v.re), num(v.im));
        }
    }
    let _ = writeln!(body, "# det {} {}", num(g.det.re), num(g.det.im));
    run.write("gram.txt", &report, &body)?;
    run.finish(&report)
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Io(_)
        | Error::FilterParse { .. }
        | Error::GridParse { .. }
        | Error::UnknownFilter(_)
        | Error::EmptyFilter
        | Error::InvalidArgument(_)
        | Error::DuplicateSite(..)
        | Error::OffSublattice(..) => 2,
        _ => 1,
    }
}

fn configure_threads() {
    let Ok(v) = std::env::var(THREADS_ENV) else { return };
    match v.trim().parse::<usize>() {
        Ok(n) if n > 0 => {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
        _ => eprintln!("ignoring {THREADS_ENV}={v}: expected a positive integer"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    let outcome = match &cli.command {
        Command::VerifyFilter(c) => verify_filter(c),
        Command::Overlaps(c) => overlaps(c),
        Command::Invert(c) => invert(c),
        Command::Grid { common, orbital, extent, m, n } => grid(common, orbital, *extent, *m, *n),
        Command::HaarCompare(c) => haar_compare(c),
        Command::Slater { common, sites, hp } => slater(common, *sites, *hp),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
