use num_complex::Complex64;
use std::f64::consts::PI;
use wavelet_landau::filters::FilterBank;
use wavelet_landau::landau::*;
use wavelet_landau::line::LineFunction;
use wavelet_landau::quadrature::GaussRule;
use wavelet_landau::zak::{check_boundary, KqFunction, KqGrid};
use wavelet_landau::LATTICE_A;

fn t2(name: &str, l: u32) -> LineFunction {
    build_t(&FilterBank::builtin(name).unwrap(), l).unwrap()
}

// Tensor Gauss–Legendre over [-r, r]², panels of width 1.
fn integrate_plane<F: Fn(f64, f64) -> Complex64 + Sync>(f: F, r: f64) -> Complex64 {
    let rule = GaussRule::legendre(16);
    let panels = (2.0 * r).ceil() as usize;
    let mut nodes = Vec::new();
    for p in 0..panels {
        let lo = -r + p as f64;
        for (t, w) in rule.nodes.iter().zip(&rule.weights) {
            nodes.push((lo + 0.5 + 0.5 * t, 0.5 * w));
        }
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for &(x, wx) in &nodes {
        for &(y, wy) in &nodes {
            acc += f(x, y) * (wx * wy);
        }
    }
    acc
}

#[test]
fn j_criterion_equals_l_over_pi() {
    for name in FilterBank::builtin_names() {
        let fb = FilterBank::builtin(name).unwrap();
        for l in 1..=3u32 {
            let h = t_field(&fb, l, KqGrid::default()).unwrap();
            let j = j_criterion(&h, 2 * l as i64).unwrap();
            assert!((j.target - l as f64 / PI).abs() < 1e-15);
            assert!(j.max_dev <= 1e-10, "{name} L={l}: {}", j.max_dev);
        }
    }
}

#[test]
fn constant_phase_field_has_flat_j() {
    let h = KqFunction::constant(Complex64::new(LATTICE_A.recip(), 0.0), KqGrid::square(16));
    let j = j_criterion(&h, 1).unwrap();
    assert!(j.max_dev < 1e-15);
    for (m, n) in [(0, 0), (1, 0), (0, 1), (2, -3)] {
        let s = overlap_s_kq(&h, m, n);
        let want = if (m, n) == (0, 0) { 1.0 } else { 0.0 };
        assert!((s - want).norm() < 1e-13, "({m},{n}) {s}");
    }
}

#[test]
fn t_field_is_k_independent_and_matches_pointwise_rule() {
    let fb = FilterBank::builtin("d4").unwrap();
    let h = t_field(&fb, 2, KqGrid::default()).unwrap();
    assert!(h.max_k_variation() <= 1e-12);
    assert!(check_boundary(&h, 1e-10).unwrap().passed);
    let g = h.grid();
    for i in [0, 17, 63] {
        for j in [0, 5, 40] {
            let direct = t_kq(&fb, 2, g.k(i), g.q(j)).unwrap();
            assert!((direct - h.sample(i, j)).norm() <= 1e-12);
        }
    }
}

#[test]
fn sublattice_orthonormality_two_ways() {
    for name in ["haar", "d4"] {
        for l in 1..=2u32 {
            let h = t_field(&FilterBank::builtin(name).unwrap(), l, KqGrid::default()).unwrap();
            let r = overlap_report(&t2(name, l), Some(&h), 2 * l as i64, 3).unwrap();
            assert!(r.passed(1e-8), "{name} L={l}: {}", r.max_dev);
            assert!(r.max_cross <= 1e-8, "{name} L={l}: {}", r.max_cross);
        }
    }
}

#[test]
fn haar_off_sublattice_entry_is_one_half() {
    let h = t_field(&FilterBank::builtin("haar").unwrap(), 1, KqGrid::default()).unwrap();
    let r = overlap_report(&t2("haar", 1), Some(&h), 2, 3).unwrap();
    let e = r.get(0, 1).unwrap();
    assert!(!e.sublattice);
    assert!((e.line - 0.5).norm() < 1e-10);
    assert!((e.kq.unwrap() - 0.5).norm() < 1e-10);
    assert!(r.to_text().contains("info"));
}

#[test]
fn phase_bound_from_cell_form() {
    // |h|² = (1 + ε cos aq)/(2π): every S_{m,n} moves by at most 2π·max||h|²−1/(2π)|
    let eps = 1e-3;
    let grid = KqGrid::square(32);
    let vals: Vec<Complex64> = (0..grid.len())
        .map(|idx| {
            let q = grid.q(idx % grid.n_q);
            Complex64::new(((1.0 + eps * (LATTICE_A * q).cos()) / (2.0 * PI)).sqrt(), 0.0)
        })
        .collect();
    let h = KqFunction::tabulated(vals, grid).unwrap();
    let dev = h.values().iter().map(|v| (v.norm_sqr() - 1.0 / (2.0 * PI)).abs()).fold(0.0, f64::max);
    for (m, n) in [(0, 0), (0, 1), (1, 0), (0, -1)] {
        let delta = if (m, n) == (0, 0) { 1.0 } else { 0.0 };
        assert!((overlap_s_kq(&h, m, n) - delta).norm() <= 2.0 * PI * dev + 1e-14);
    }
}

#[test]
fn translation_modulus_covariance() {
    let orb = LandauOrbital::new(LandauLevel::Lowest, t2("haar", 1)).unwrap();
    for (m, n) in [(1, 0), (0, 1), (-2, 3)] {
        let moved = orb.translated(m, n);
        for (x, y) in [(0.3, -0.2), (-1.1, 2.0)] {
            let lhs = moved.eval(x, y).unwrap().norm();
            let rhs = orb.eval(x + m as f64 * LATTICE_A, y + n as f64 * LATTICE_A).unwrap().norm();
            assert!((lhs - rhs).abs() <= 1e-15 * rhs.max(1e-300));
        }
    }
    assert_eq!(orb.translated(0, 0), orb);
}

#[test]
fn gaussian_orbitals_are_normalized_in_the_plane() {
    for level in [LandauLevel::Lowest, LandauLevel::First] {
        let orb = LandauOrbital::new(level, LineFunction::ground_gaussian()).unwrap();
        let norm = integrate_plane(|x, y| Complex64::new(orb.eval(x, y).unwrap().norm_sqr(), 0.0), 14.0);
        assert!((norm.re - 1.0).abs() < 1e-6, "{level:?}: {norm}");
    }
}

#[test]
fn first_level_overlaps_from_plane_quadrature() {
    // independent oracle: ⟨ψ, T_1^m T_2^n ψ⟩ integrated over the plane
    let hp = LineFunction::ground_gaussian();
    let orb = LandauOrbital::new(LandauLevel::First, hp.clone()).unwrap();
    for (m, n) in [(1, 0), (0, 1), (1, 2)] {
        let moved = orb.translated(m, n);
        let plane = integrate_plane(|x, y| orb.eval(x, y).unwrap().conj() * moved.eval(x, y).unwrap(), 14.0);
        let reduced = first_level_overlap(&hp, m, n).unwrap();
        let lowest = overlap_s(&hp, m, n).unwrap();
        assert!((plane - reduced).norm() < 1e-6, "({m},{n}) {plane} vs {reduced}");
        assert!((plane - lowest).norm() < 1e-6);
    }
}

#[test]
fn first_level_equivalence() {
    let pairs = [(0, 0), (1, 0), (0, 1), (1, 2)];
    for hp in [t2("haar", 1), LineFunction::ground_gaussian()] {
        let rows = ill_overlap_equivalence(&hp, &pairs).unwrap();
        assert!(max_level_difference(&rows) <= 1e-6);
    }
    let rows = ill_overlap_equivalence(&t2("haar", 1), &pairs).unwrap();
    assert!((rows[0].first - 1.0).norm() < 1e-6);
    assert!(rows[1].first.norm() < 1e-6);
}

#[test]
fn gram_determinants() {
    let patch = square_patch(2, 2);
    assert_eq!(patch, vec![(0, 0), (0, 2), (1, 0), (1, 2)]);
    let g = gram_slater(&t2("haar", 1), &patch, 2).unwrap();
    assert!((g.det - 1.0).norm() <= 1e-8);
    assert!(g.max_offset_from_identity() <= 1e-10);

    let hp = LineFunction::ground_gaussian();
    let g = gram_slater(&hp, &[(0, 0), (1, 0)], 1).unwrap();
    let s10 = overlap_s(&hp, 1, 0).unwrap();
    // S_{1,0} = e^{-a²/4} for the unit Gaussian
    assert!((s10.re - (-PI / 2.0).exp()).abs() < 1e-14);
    assert!((g.det.norm() - (1.0 - s10.norm_sqr())).abs() < 1e-12);
    assert!(g.det.norm() < 1.0 - 1e-3);
}

#[test]
fn wavefunction_export_rows() {
    let orb = LandauOrbital::new(LandauLevel::Lowest, LineFunction::ground_gaussian()).unwrap();
    let pts = wavefunction_grid(&orb, &[0.0, 1.0], &[0.0]).unwrap();
    let text = grid_text(&pts);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "# x y re im abs");
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[1].split_whitespace().count(), 5);
}
