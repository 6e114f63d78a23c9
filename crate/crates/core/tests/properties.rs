use proptest::prelude::*;
use ptspectra::linalg::{eigenvalues, poly_from_roots};
use ptspectra::observables::partition_function;
use ptspectra::spin::*;
use ptspectra::*;

fn conjugate_closed() -> impl Strategy<Value = Vec<C64>> {
    (
        prop::collection::vec(-5.0..5.0f64, 0..4),
        prop::collection::vec((-5.0..5.0f64, 0.01..5.0f64), 0..3),
    )
        .prop_filter("non-empty", |(r, p)| !r.is_empty() || !p.is_empty())
        .prop_map(|(reals, pairs)| {
            let mut out: Vec<C64> = reals.into_iter().map(|x| C64::new(x, 0.0)).collect();
            for (re, im) in pairs {
                out.push(C64::new(re, im));
                out.push(C64::new(re, -im));
            }
            out
        })
}

fn zn_spec() -> impl Strategy<Value = ZnSpec> {
    (2usize..=5, -1.0..1.0f64, -2.0..1.0f64, -2.0..2.0f64).prop_map(|(n, j, hr, hi)| ZnSpec::new(n, j, hr, hi))
}

/// Greedy nearest matching; enough for small well-separated spectra.
fn multiset_distance(a: &[C64], b: &[C64]) -> f64 {
    let mut used = vec![false; b.len()];
    let mut worst: f64 = 0.0;
    for x in a {
        let (i, d) = b
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .map(|(i, y)| (i, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .unwrap();
        used[i] = true;
        worst = worst.max(d);
    }
    worst
}

fn sorted(mut v: Vec<C64>) -> Vec<C64> {
    v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pairing_reconstructs_the_multiset(vals in conjugate_closed()) {
        let (ps, _) = pair_and_classify(&vals, SpectrumOrdering::ByMagnitude, 1e-8).unwrap();
        let got = sorted(ps.all());
        let want = sorted(vals.clone());
        prop_assert_eq!(got.len(), want.len());
        for (x, y) in got.iter().zip(&want) {
            prop_assert!((x - y).norm() < 1e-12);
        }
    }

    #[test]
    fn region_is_scale_invariant(vals in conjugate_closed(), s in 0.01..100.0f64) {
        let scaled: Vec<C64> = vals.iter().map(|z| z * s).collect();
        for ordering in [SpectrumOrdering::ByMagnitude, SpectrumOrdering::ByRealPart] {
            let a = pair_and_classify(&vals, ordering, 1e-8).unwrap().1.region;
            let b = pair_and_classify(&scaled, ordering, 1e-8).unwrap().1.region;
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn char_poly_of_known_roots(vals in conjugate_closed()) {
        let a = ComplexMatrix::diagonal(&vals);
        let got = char_poly(&a).unwrap();
        let want = poly_from_roots(&vals);
        let scale = want.iter().map(|z| z.norm()).fold(1.0, f64::max);
        for (x, y) in got.iter().zip(&want) {
            prop_assert!((x - y).norm() <= 1e-10 * scale);
        }
        prop_assert!(got.iter().all(|z| z.im.abs() <= 1e-10 * scale));
    }

    #[test]
    fn zn_builder_is_pt_symmetric(spec in zn_spec()) {
        let b = build_zn_transfer(&spec).unwrap();
        prop_assert!(check_pt(&b.matrix, &b.parity).unwrap().satisfied);
        prop_assert!(bender_mannheim_test(&b.matrix, 1e-10).unwrap().real_coefficients);
        prop_assert!(fourier_conjugate(&b).unwrap().max_abs_imag() <= 1e-10 * b.matrix.max_abs());
    }

    #[test]
    fn trace_and_determinant_from_spectrum(spec in zn_spec()) {
        let b = build_zn_transfer(&spec).unwrap();
        let vals = eigenvalues(&b.matrix, EigenOrder::MagnitudeDescending).unwrap();
        let tr: C64 = vals.iter().sum();
        let det: C64 = vals.iter().product();
        let coeffs = char_poly(&b.matrix).unwrap();
        let n = vals.len();
        let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
        let scale = b.matrix.max_abs() * n as f64;
        prop_assert!((tr - b.matrix.trace()).norm() <= 1e-10 * scale);
        prop_assert!((det - coeffs[n] * sign).norm() <= 1e-9 * scale.powi(n as i32));
    }

    #[test]
    fn partition_function_is_real(spec in zn_spec(), l in 1usize..40) {
        let b = build_zn_transfer(&spec).unwrap();
        let pf = partition_function(&b, l).unwrap();
        prop_assert!(pf.imag_residual <= 1e-9);
        prop_assert!(pf.direct_deviation <= 1e-9);
    }

    #[test]
    fn twisted_block_squares_to_pair_matrix(k1 in -1.5..1.5f64, k2 in -1.5..1.5f64) {
        let b = build_annni(&AnnniSpec { k1, k2 }).unwrap();
        let t4 = eigenvalues(&b.t4.matrix, EigenOrder::MagnitudeDescending).unwrap();
        let sq: Vec<C64> = eigenvalues(&b.block.matrix, EigenOrder::MagnitudeDescending)
            .unwrap()
            .iter()
            .map(|z| z * z)
            .collect();
        let scale = t4[0].norm();
        prop_assert!(multiset_distance(&t4, &sq) <= 1e-9 * scale);
    }

    #[test]
    fn enumeration_matches_trace(spec in zn_spec(), l in 2usize..6) {
        let b = build_zn_transfer(&spec).unwrap();
        let en = oracle::enumerate_zn_chain(&spec, l, Exec::Sequential).unwrap();
        let vals = eigenvalues(&b.matrix, EigenOrder::MagnitudeDescending).unwrap();
        let scale: f64 = vals.iter().map(|z| z.norm().powi(l as i32)).sum();
        prop_assert!((en.z - b.matrix.pow(l).trace()).norm() <= 1e-10 * scale);
    }
}
