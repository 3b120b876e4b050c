use num_complex::Complex64;
use std::f64::consts::PI;
use wavelet_landau::filters::FilterBank;
use wavelet_landau::inverse::*;
use wavelet_landau::landau::{j_criterion, t_field};
use wavelet_landau::line::LineFunction;
use wavelet_landau::zak::{zak_transform, KqFunction, KqGrid, PhaseTerm, Truncation};
use wavelet_landau::LATTICE_A;

fn smooth_phase() -> KqFunction {
    let terms = vec![
        PhaseTerm { coef: 0.4, k_order: 1, q_order: 0, offset: 0.0 },
        PhaseTerm { coef: 0.3, k_order: 1, q_order: 1, offset: 0.5 },
        PhaseTerm { coef: 0.2, k_order: 0, q_order: 2, offset: -1.0 },
    ];
    KqFunction::phase(terms, KqGrid::default())
}

#[test]
fn builtin_roundtrips() {
    for name in FilterBank::builtin_names() {
        let fb = FilterBank::builtin(name).unwrap();
        for l in 1..=2 {
            let r = roundtrip(&fb, l, &sample_ks(8)).unwrap();
            assert!(r.max_deviation <= 1e-10, "{name} L={l}: {}", r.max_deviation);
            assert!(r.k_variation <= 1e-10, "{name} L={l}: {}", r.k_variation);
        }
    }
}

#[test]
fn forward_fields_satisfy_the_mra_condition() {
    for name in FilterBank::builtin_names() {
        let h = t_field(&FilterBank::builtin(name).unwrap(), 1, KqGrid::default()).unwrap();
        for k in sample_ks(8) {
            for l in 0..=2 {
                let s = verify_mra_condition(&h, l, k, 16).unwrap();
                let want = if l == 0 { 1.0 } else { 0.0 };
                assert!((s - want).norm() <= 1e-10, "{name} k={k} l={l}: {s}");
            }
        }
    }
}

#[test]
fn pure_phase_field_generates_an_mra() {
    let h = smooth_phase();
    // the defining property: constant modulus, so J_2 = 1/π
    assert!(j_criterion(&h, 2).unwrap().max_dev < 1e-14);
    let mut sums = Vec::new();
    for k in sample_ks(8) {
        let ex = extract_filter(&h, k, DEFAULT_WINDOW).unwrap();
        for l in 0..=2i64 {
            let s = verify_mra_condition(&h, l, k, 32).unwrap();
            let want = if l == 0 { 1.0 } else { 0.0 };
            assert!((s - want).norm() <= 1e-8, "k={k} l={l}: {s}");
            assert!((ex.qmf_sum(l) - want).norm() <= 1e-8);
        }
        sums.push(ex);
    }
    // this field does depend on k
    assert!((sums[0].coeff(0) - sums[3].coeff(0)).norm() > 1e-3);
    let fb = sums[2].to_filter_bank("phase").unwrap();
    assert!(fb.verify_qmf(1e-8).passed);
}

#[test]
fn non_constant_modulus_breaks_the_condition() {
    let c = (1.0f64 + 0.25).sqrt().recip();
    let line = LineFunction::TrigPoly {
        terms: vec![(0, Complex64::new(c, 0.0)), (2, Complex64::new(0.5 * c, 0.0))],
        frequency: LATTICE_A,
        scale: LATTICE_A.sqrt().recip(),
        lo: 0.0,
        hi: LATTICE_A,
    };
    let h = zak_transform(&line, KqGrid::default(), Truncation::default()).unwrap();
    let j = j_criterion(&h, 2).unwrap();
    assert!((j.target - 1.0 / PI).abs() < 1e-15);
    assert!(j.max_dev > 1e-3);
    let s = verify_mra_condition(&h, 1, 0.3, 16).unwrap();
    assert!((s.norm() - 0.5 * c * c).abs() < 1e-12);
}

#[test]
fn extraction_normalization_is_identity_on_forward_fields() {
    let fb = FilterBank::builtin("d4").unwrap();
    let h = t_field(&fb, 1, KqGrid::default()).unwrap();
    for n in 0..4 {
        let got = extract_hn(&h, n, 0.9);
        assert!((got - fb.coeff(n)).norm() < 1e-13);
    }
    assert_eq!(EXTRACTION_NORMALIZATION, 1.0);
}
