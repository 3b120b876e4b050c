use num_complex::Complex64;
use proptest::prelude::*;
use wavelet_landau::filters::FilterBank;
use wavelet_landau::landau::{build_t, t_field};
use wavelet_landau::line::LineFunction;
use wavelet_landau::zak::*;
use wavelet_landau::LATTICE_A;

fn shifted_gaussian() -> LineFunction {
    LineFunction::Gaussian {
        amplitude: Complex64::new(1.0, 0.0),
        center: 0.7,
        width: 1.3,
        momentum: 0.4,
    }
}

#[test]
fn gaussian_norm_is_preserved() {
    for line in [LineFunction::ground_gaussian(), shifted_gaussian()] {
        let h = zak_transform(&line, KqGrid::default(), Truncation::default()).unwrap();
        let want = line.norm_sqr().unwrap();
        assert!((h.norm_sqr() - want).abs() <= 1e-10 * want, "{} vs {want}", h.norm_sqr());
    }
}

#[test]
fn gaussian_roundtrip() {
    let line = shifted_gaussian();
    let h = zak_transform(&line, KqGrid::default(), Truncation::default()).unwrap();
    for n in -3..=3 {
        for x in [0.0, 0.4, 1.7, 2.4] {
            let got = inverse_zak(&h, n, x);
            let want = line.eval(x + n as f64 * LATTICE_A);
            assert!((got - want).norm() <= 1e-8, "n={n} x={x}");
        }
    }
}

#[test]
fn haar_t2_inverts_to_compact_support() {
    let fb = FilterBank::builtin("haar").unwrap();
    let t2 = build_t(&fb, 1).unwrap();
    let h = t_field(&fb, 1, KqGrid::default()).unwrap();
    for x in [0.1, 1.0, 2.3] {
        assert!((inverse_zak(&h, 0, x) - t2.eval(x)).norm() < 1e-13);
        for n in [-2, -1, 1, 2] {
            assert!(inverse_zak(&h, n, x).norm() < 1e-13);
        }
    }
}

#[test]
fn boundary_conditions_and_corruption() {
    let h = zak_transform(&shifted_gaussian(), KqGrid::square(32), Truncation::default()).unwrap();
    let clean = check_boundary(&h, 1e-10).unwrap();
    assert!(clean.passed, "{clean:?}");

    let t2 = t_field(&FilterBank::builtin("haar").unwrap(), 1, KqGrid::square(32)).unwrap();
    assert!(check_boundary(&t2, 1e-10).unwrap().passed);

    let mut bad = h.clone();
    bad.set_sample(5, 9, h.sample(5, 9) + Complex64::new(1e-3, 0.0));
    let r = check_boundary(&bad, 1e-10).unwrap();
    assert!(!r.passed);
    assert!((r.max_residual() - 1e-3).abs() < 1e-9, "{r:?}");
}

#[test]
fn export_and_reimport() {
    let dir = std::env::temp_dir().join(format!("zak-export-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("h.txt");
    let h = zak_transform(&LineFunction::ground_gaussian(), KqGrid::new(8, 4).unwrap(), Truncation::default()).unwrap();
    h.write(&path).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 32);
    let back = KqFunction::parse(&text).unwrap();
    assert!(!back.has_extension());
    assert!(matches!(check_boundary(&back, 1e-10), Err(wavelet_landau::Error::NoExtension)));
    std::fs::remove_dir_all(&dir).unwrap();
}

proptest! {
    #[test]
    fn quasi_periodicity_of_gaussian_transform(k in 0.0f64..2.5, q in 0.0f64..2.5, c in -1.0f64..1.0) {
        let line = LineFunction::gaussian(c, 0.8);
        let h = zak_transform(&line, KqGrid::square(8), Truncation::default()).unwrap();
        let base = h.eval(k, q);
        prop_assert!((h.eval(k + LATTICE_A, q) - base).norm() < 1e-13);
        let shifted = h.eval(k, q + LATTICE_A);
        prop_assert!((shifted - Complex64::from_polar(1.0, k * LATTICE_A) * base).norm() < 1e-13);
    }
}
