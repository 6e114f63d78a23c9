use std::f64::consts::PI;

use ptspectra::linalg::eigenvalues;
use ptspectra::observables::*;
use ptspectra::spin::*;
use ptspectra::*;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn zn(hr: f64, hi: f64) -> ModelBundle {
    build_zn_transfer(&ZnSpec::new(3, 0.2, hr, hi)).unwrap()
}

fn paired(vals: &[C64]) -> PairedSpectrum {
    pair_and_classify(vals, SpectrumOrdering::ByMagnitude, 1e-8).unwrap().0
}

#[test]
fn partition_function_small_cases() {
    let d = ModelBundle::custom(ComplexMatrix::diagonal(&[c(2.0, 0.0), c(1.0, 0.0)]), MatrixKind::Transfer);
    assert!((partition_function(&d, 3).unwrap().value - 9.0).abs() < 1e-12);

    let rot = ComplexMatrix::from_real_rows(2, &[1.0, 1.0, -1.0, 1.0]).unwrap();
    let pf = partition_function(&ModelBundle::custom(rot, MatrixKind::Transfer), 2).unwrap();
    assert!(pf.value.abs() < 1e-12);
    assert!(pf.pair_part.abs() < 1e-12);
}

#[test]
fn partition_function_survives_long_chains() {
    let pf = partition_function(&zn(-0.45, 0.5), 5000).unwrap();
    assert!(pf.value.is_infinite() || pf.value > 0.0);
    assert!(pf.log_abs.is_finite() && pf.log_abs > 0.0);
    assert_eq!(pf.sign, 1.0);
}

#[test]
fn field_free_order_parameter_vanishes() {
    for j in [0.1, 0.2, 0.9] {
        let b = build_zn_transfer(&ZnSpec::new(3, j, 0.0, 0.0)).unwrap();
        assert!(one_point(&b, "w", 7).unwrap().abs() < 1e-12);
    }
}

#[test]
fn free_chain_order_parameter_is_a_site_average() {
    let (hr, hi) = (-0.3, 0.8);
    let b = build_zn_transfer(&ZnSpec::new(3, 0.0, hr, hi)).unwrap();
    let mut num = c(0.0, 0.0);
    let mut den = c(0.0, 0.0);
    for k in 0..3 {
        let w = C64::from_polar(1.0, 2.0 * PI * k as f64 / 3.0);
        let weight = ((w + w.conj()) * hr + (w - w.conj()) * hi).exp();
        num += w * weight;
        den += weight;
    }
    let want = num / den;
    assert!(want.im.abs() < 1e-14);
    assert!((one_point(&b, "w", 6).unwrap() - want.re).abs() < 1e-12);
}

#[test]
fn direct_and_spectral_correlators_agree() {
    for (hr, hi) in [(-0.45, 0.5), (0.25, 1.25), (-2.0, 1.5)] {
        let b = zn(hr, hi);
        for connected in [false, true] {
            let d = two_point(&b, "w", "wdag", 24, CorrelatorMethod::DirectTrace, connected).unwrap();
            let s = two_point(&b, "w", "wdag", 24, CorrelatorMethod::Spectral, connected).unwrap();
            let scale = d.values.iter().map(|x| x.abs()).fold(0.0, f64::max);
            for (x, y) in d.values.iter().zip(&s.values) {
                assert!((x - y).abs() <= 1e-7 * scale, "({hr}, {hi}): {x} vs {y}");
            }
        }
    }
}

#[test]
fn spectral_method_refuses_degenerate_spectrum() {
    let b = zn(0.0, 0.0);
    let err = two_point(&b, "w", "wdag", 10, CorrelatorMethod::Spectral, false).unwrap_err();
    assert!(matches!(err, Error::DegenerateSpectrum { .. }));
    assert!(two_point(&b, "w", "wdag", 10, CorrelatorMethod::DirectTrace, false).is_ok());
}

#[test]
fn correlators_refuse_partition_zero() {
    let rot = ComplexMatrix::from_real_rows(2, &[1.0, 1.0, -1.0, 1.0]).unwrap();
    let b = ModelBundle::custom(rot, MatrixKind::Transfer).with_operator("x", ComplexMatrix::identity(2));
    assert!(matches!(one_point(&b, "x", 2), Err(Error::PartitionZero { .. })));
}

#[test]
fn decay_fit_closed_forms() {
    let f = fit_decay(&paired(&[c(2.0, 0.0), c(1.0, 0.0)])).unwrap();
    assert!((f.inverse_correlation_length - 2f64.ln()).abs() < 1e-14);
    assert_eq!(f.wavenumber, 0.0);
    assert_eq!(f.class, DecayClass::Monotonic);

    let f = fit_decay(&paired(&[c(3.0, 0.0), c(1.0, 1.0), c(1.0, -1.0)])).unwrap();
    assert!((f.inverse_correlation_length - (3.0 / 2f64.sqrt()).ln()).abs() < 1e-14);
    assert!((f.wavenumber - PI / 4.0).abs() < 1e-14);
    assert_eq!(f.class, DecayClass::Modulated);

    let f = fit_decay(&paired(&[c(2.0, 1.0), c(2.0, -1.0), c(1.0, 0.0)])).unwrap();
    assert_eq!(f.class, DecayClass::Undamped);
    assert!((f.wavenumber - 2.0 * 0.5f64.atan()).abs() < 1e-14);
    assert_eq!(f.inverse_correlation_length, 0.0);

    let f = fit_decay(&paired(&[c(2.0, 0.0), c(-1.0, 0.0)])).unwrap();
    assert_eq!(f.class, DecayClass::Alternating);
    assert!(fit_decay(&paired(&[c(1.0, 0.0)])).is_err());
}

#[test]
fn decay_class_follows_region_on_z3() {
    for (hr, hi) in [(-0.45, 0.5), (0.25, 1.25), (-0.5, 0.875), (0.5, 0.3)] {
        let vals = eigenvalues(&zn(hr, hi).matrix, EigenOrder::MagnitudeDescending).unwrap();
        let (ps, label) = pair_and_classify(&vals, SpectrumOrdering::ByMagnitude, 1e-8).unwrap();
        let class = fit_decay(&ps).unwrap().class;
        let want = match label.region {
            Region::Ia | Region::Ib => vec![DecayClass::Monotonic, DecayClass::Alternating],
            Region::II => vec![DecayClass::Modulated],
            Region::III => vec![DecayClass::Undamped],
            Region::I => unreachable!(),
        };
        assert!(want.contains(&class), "({hr}, {hi}) {:?} -> {class:?}", label.region);
    }
}

#[test]
fn real_field_row_is_region_ia() {
    let grid = ScanGrid::run(
        ScanFamily::Zn { n: 3, j: 0.2 },
        [Axis::new(-2.5, 1.0, 141), Axis::new(0.0, 0.0, 1)],
        Exec::default(),
    )
    .unwrap();
    assert_eq!(grid.count(Region::Ia), 141);
}

#[test]
fn scan_is_identical_across_exec_modes() {
    let family = ScanFamily::Zn { n: 3, j: 0.2 };
    let axes = [Axis::new(-1.0, 0.5, 13), Axis::new(0.0, 2.0, 9)];
    let mut a = Vec::new();
    let mut b = Vec::new();
    ScanGrid::run(family, axes, Exec::Sequential).unwrap().write_csv(&mut a).unwrap();
    ScanGrid::run(family, axes, Exec::Parallel).unwrap().write_csv(&mut b).unwrap();
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    assert!(text.starts_with("param1,param2,region,re_lambda0,im_lambda0,re_lambda1,im_lambda1\n"));
    assert_eq!(text.lines().count(), 1 + 13 * 9);
}

#[test]
fn lee_yang_zeros_sit_in_region_three() {
    let family = |hi: f64| build_zn_transfer(&ZnSpec::new(3, 0.2, -0.5, hi));
    let path = ParameterPath::new(0.7, 1.0, 601);
    let res = lee_yang_zeros(family, 16, &path, Exec::default()).unwrap();
    assert!(!res.no_zeros_bracketed());

    let boundary = (0..=3000)
        .map(|i| 0.7 + 1e-4 * i as f64)
        .find(|&hi| {
            let vals = eigenvalues(&family(hi).unwrap().matrix, EigenOrder::MagnitudeDescending).unwrap();
            pair_and_classify(&vals, SpectrumOrdering::ByMagnitude, 1e-8).unwrap().1.region == Region::III
        })
        .unwrap();
    for z in &res.exact_zeros {
        assert!(*z >= boundary - 1e-3, "zero at {z} below boundary {boundary}");
        let pf = partition_function(&family(*z).unwrap(), 16).unwrap();
        assert!(pf.scaled().abs() < 1e-8);
    }
    for p in &res.predicted {
        if let Some(x) = p.exact {
            assert!((x - p.param - p.spectral_offset).abs() < 1e-6);
        }
    }
}

#[test]
fn synthetic_zero_ladder() {
    let path = ParameterPath::new(0.01, 1.5, 1001);
    let res = lee_yang_zeros(|b| synthetic_pair_bundle(0.2, b), 12, &path, Exec::Sequential).unwrap();
    let want: Vec<f64> = (0..)
        .map(|p| (2 * p + 1) as f64 * PI / 24.0)
        .take_while(|&b| b < 1.5)
        .collect();
    assert_eq!(res.exact_zeros.len(), want.len());
    for (x, y) in res.exact_zeros.iter().zip(&want) {
        assert!((x - y).abs() < 1e-10);
    }
}
