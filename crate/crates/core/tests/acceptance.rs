//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line. Run with
//!
//!     cargo test -p rabi-spectra --test acceptance -- --nocapture --test-threads 1
//!
//! Every tolerance and runtime budget is pinned in code here.

use std::panic::{catch_unwind, resume_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rabi_spectra::confluence::{confluence_study, ConfluenceOptions};
use rabi_spectra::degeneracy::{
    check_2qrm_condition, check_ncho_condition, CrossingKind, ScanOptions, SweepSpec,
    SweptParameter,
};
use rabi_spectra::equivalence::{
    basis_correspondence_check, verify_2qrm_to_ncho, verify_ncho_to_2qrm,
    verify_parity_disk_identity, VerifyOptions,
};
use rabi_spectra::spectrum::{converged_spectrum, eigenpairs, eigenvalues};
use rabi_spectra::{
    build_1qrm, build_2qrm, build_disk, build_ncho, models, DiskParams, Error, ModelSpec,
    NchoParams, OneQrmParams, ParitySector, TwoQrmParams,
};

fn criterion(id: u32, name: &str, body: impl FnOnce() + std::panic::UnwindSafe) {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(body));
    let elapsed = start.elapsed();
    match outcome {
        Ok(()) => println!("acceptance {id:2} [{name}]: PASS ({elapsed:.2?})"),
        Err(e) => {
            println!("acceptance {id:2} [{name}]: FAIL ({elapsed:.2?})");
            resume_unwind(e);
        }
    }
}

#[test]
fn criterion_01_dictionary_exactness() {
    criterion(1, "dictionary exactness", || {
        let start = Instant::now();
        for sector in [ParitySector::Even, ParitySector::Odd] {
            let dev = basis_correspondence_check(2000, sector).unwrap();
            assert!(
                dev.number <= 1e-13,
                "{sector}: number op deviation {}",
                dev.number
            );
            assert!(
                dev.lowering <= 1e-13,
                "{sector}: lowering deviation {}",
                dev.lowering
            );
            assert!(
                dev.raising <= 1e-13,
                "{sector}: raising deviation {}",
                dev.raising
            );
        }
        assert!(start.elapsed().as_secs_f64() < 5.0, "budget: 5 s");
    });
}

#[test]
fn criterion_02_parity_disk_identity() {
    criterion(2, "parity/disk identity", || {
        let start = Instant::now();
        let mut rng = ChaCha8Rng::seed_from_u64(0x2d15c);
        for _ in 0..20 {
            let q = TwoQrmParams::new(
                rng.gen_range(-0.45..0.45),
                rng.gen_range(-3.0..3.0),
                rng.gen_range(-3.0..3.0),
            )
            .unwrap();
            let dev = verify_parity_disk_identity(&q, 500).unwrap();
            assert!(dev.even <= 1e-13, "{q:?}: even deviation {}", dev.even);
            assert!(dev.odd <= 1e-13, "{q:?}: odd deviation {}", dev.odd);
        }
        assert!(start.elapsed().as_secs_f64() < 10.0, "budget: 10 s");
    });
}

#[test]
fn criterion_03_forward_verification() {
    criterion(3, "forward verification", || {
        let start = Instant::now();
        let opts = VerifyOptions {
            n_levels: 8,
            truncation: 600,
            certificate_tol: 1e-9,
            match_tol: 1e-7,
            ..VerifyOptions::default()
        };
        for eta in [0.0, 0.5] {
            let p = NchoParams::new(3.0, 2.0, eta).unwrap();
            for sector in [ParitySector::Even, ParitySector::Odd] {
                let report = verify_ncho_to_2qrm(&p, sector, &opts).unwrap();
                assert_eq!(
                    report.records.len(),
                    8,
                    "eta={eta} {sector}: expected 8 certified levels"
                );
                for r in &report.records {
                    assert!(
                        r.residual <= 1e-7,
                        "eta={eta} {sector}: level λ={} residual {}",
                        r.lambda,
                        r.residual
                    );
                }
                assert!(report.all_matched);
                assert!(!report.unreliable);
            }
        }
        assert!(start.elapsed().as_secs_f64() < 120.0, "budget: 2 min");
    });
}

#[test]
fn criterion_04_reverse_and_obstruction() {
    criterion(4, "reverse verification + obstruction", || {
        let opts = VerifyOptions {
            n_levels: 10,
            truncation: 400,
            certificate_tol: 1e-9,
            match_tol: 1e-7,
            ..VerifyOptions::default()
        };
        // Δ = 5 obstructs every certified level inside |μ| <= 5
        let q = TwoQrmParams::new(0.2, 5.0, 0.0).unwrap();
        let report = verify_2qrm_to_ncho(&q, ParitySector::Even, &opts).unwrap();
        assert!(
            !report.obstructed.is_empty(),
            "low levels must be obstructed"
        );
        for o in &report.obstructed {
            assert!(o.mu.abs() <= 5.0);
        }
        for r in &report.records {
            assert!(r.mu.abs() > 5.0);
            assert!(r.residual <= 1e-7, "μ={} residual {}", r.mu, r.residual);
        }
        assert!(report.all_matched);
        // Δ = 0: no nonzero level is obstructed
        let q = TwoQrmParams::new(0.25, 0.0, 0.0).unwrap();
        let report = verify_2qrm_to_ncho(&q, ParitySector::Even, &opts).unwrap();
        assert!(report.obstructed.is_empty());
        assert!(report.all_matched);
        assert!(!report.records.is_empty());
    });
}

#[test]
fn criterion_05_round_trip_maps() {
    criterion(5, "round-trip parameter maps", || {
        let start = Instant::now();
        let mut rng = ChaCha8Rng::seed_from_u64(0x0514);
        let rel = |a: f64, b: f64| (a - b).abs() / a.abs().max(b.abs()).max(1e-300);
        for _ in 0..10_000 {
            let alpha = rng.gen_range(0.05f64..20.0);
            let beta = rng.gen_range(0.05f64..20.0);
            let eta = if alpha * beta > 1.0 {
                rng.gen_range(-3.0f64..3.0)
            } else {
                0.0
            };
            let mut lambda = rng.gen_range(-50.0f64..50.0);
            if lambda.abs() < 1e-3 {
                lambda = 1e-3_f64.copysign(lambda + 0.5);
            }
            let p = NchoParams::new(alpha, beta, eta).unwrap();
            let (q, mu) = models::ncho_to_2qrm(&p, lambda).unwrap();
            let (p2, lambda2) = models::two_qrm_to_ncho(&q, mu).unwrap();
            assert!(
                rel(p2.alpha, alpha) <= 1e-12,
                "alpha {alpha} vs {}",
                p2.alpha
            );
            assert!(rel(p2.beta, beta) <= 1e-12);
            assert!((lambda2 - lambda).abs() <= 1e-12 * lambda.abs());
            assert!((p2.eta - eta).abs() <= 1e-12 * eta.abs().max(1.0));
        }
        // obstruction boundary at |μ| − |Δ| = ±1e-9, both signs of μ
        for delta in [0.5, 1.0, 3.0] {
            let q = TwoQrmParams::new(0.2, delta, 0.0).unwrap();
            for sign in [1.0, -1.0] {
                let just_out = sign * (delta + 1e-9);
                let just_in = sign * (delta - 1e-9);
                assert!(models::two_qrm_to_ncho(&q, just_out).is_ok());
                assert!(matches!(
                    models::two_qrm_to_ncho(&q, just_in),
                    Err(Error::Obstruction(_))
                ));
            }
        }
        assert!(start.elapsed().as_secs_f64() < 1.0, "budget: 1 s");
    });
}

#[test]
fn criterion_06_closed_form_oracles() {
    criterion(6, "closed-form oracles", || {
        // (a) two-photon, g = 0: {n + 1/2 ± Δ} exactly
        let delta = 0.7;
        let q = TwoQrmParams::new(0.0, delta, 0.0).unwrap();
        let h = build_2qrm(&q, 50, ParitySector::Full).unwrap();
        let got = eigenvalues(&h).unwrap().eigenvalues;
        let mut expected: Vec<f64> = (0..50)
            .flat_map(|n| {
                let base = n as f64 + 0.5;
                [base - delta, base + delta]
            })
            .collect();
        expected.sort_by(f64::total_cmp);
        assert_eq!(got, expected, "2QRM g=0 oracle must hold exactly");

        // (b) one-photon, Δ′ = ε′ = 0, g′ = 0.4: {n − g′²} doubly, n ≤ 20
        let gp = 0.4;
        let o = OneQrmParams::new(gp, 0.0, 0.0).unwrap();
        let h = build_1qrm(&o, 400).unwrap();
        let got = eigenvalues(&h).unwrap().eigenvalues;
        for n in 0..=20 {
            let expect = n as f64 - gp * gp;
            assert!(
                (got[2 * n] - expect).abs() <= 1e-10,
                "1QRM displaced-oscillator level {n}: {} vs {expect}",
                got[2 * n]
            );
            assert!((got[2 * n + 1] - expect).abs() <= 1e-10);
        }

        // (c) disk, g = 0: {2m + ν ± Δ} exactly
        let (nu, delta) = (1.5, 0.4);
        let d = DiskParams::new(nu, 0.0, delta, 0.0).unwrap();
        let h = build_disk(&d, 40).unwrap();
        let got = eigenvalues(&h).unwrap().eigenvalues;
        let mut expected: Vec<f64> = (0..40)
            .flat_map(|m| {
                let base = 2.0 * m as f64 + nu;
                [base - delta, base + delta]
            })
            .collect();
        expected.sort_by(f64::total_cmp);
        assert_eq!(got, expected, "disk g=0 oracle must hold exactly");
    });
}

#[test]
fn criterion_07_confluence_order() {
    criterion(7, "confluence order", || {
        let start = Instant::now();
        let nus = [50.0, 100.0, 200.0, 400.0];
        let opts = ConfluenceOptions {
            n_levels: 5,
            truncation: 60,
            certificate_tol: 1e-9,
            reference_truncation: 800,
            ..ConfluenceOptions::default()
        };
        let o = OneQrmParams::new(0.3, 0.4, 0.0).unwrap();
        let table = confluence_study(&o, &nus, &opts).unwrap();
        for k in 0..5 {
            assert!(!table.saturated[k], "level {k} saturated unexpectedly");
            let p = table.fitted_order[k].expect("fitted order");
            assert!(
                (0.7..=1.3).contains(&p),
                "level {k}: order {p} outside [0.7, 1.3]"
            );
            for (j, pair) in table.errors[k].windows(2).enumerate() {
                let ratio = pair[0] / pair[1];
                assert!(
                    (1.6..=2.4).contains(&ratio),
                    "level {k}: ratio {ratio} at ν={} outside [1.6, 2.4]",
                    nus[j]
                );
            }
        }
        // g' = 0 saturates every level
        let o = OneQrmParams::new(0.0, 0.4, 0.0).unwrap();
        let table = confluence_study(&o, &nus, &opts).unwrap();
        assert!(
            table.saturated.iter().all(|&s| s),
            "g'=0 run must be fully saturated"
        );
        assert!(start.elapsed().as_secs_f64() < 180.0, "budget: 3 min");
    });
}

#[test]
fn criterion_08_degeneracy_necessity() {
    criterion(8, "degeneracy necessity", || {
        let start = Instant::now();
        // one-photon Juddian sweep
        let base = ModelSpec::OneQrm(OneQrmParams::new(0.5, 0.5, 0.0).unwrap());
        let sweep = SweepSpec {
            base,
            parameter: SweptParameter::G,
            start: 0.05,
            end: 1.2,
            grid: 2000,
        };
        let opts = ScanOptions {
            n_levels: 8,
            truncation: 600,
            certificate_tol: 1e-9,
            gap_threshold: 1e-8,
            tol_int: 1e-5,
            ..ScanOptions::default()
        };
        let records =
            rabi_spectra::degeneracy::scan_crossings(&sweep, ParitySector::Full, &opts).unwrap();
        let crossings: Vec<_> = records
            .iter()
            .filter(|r| r.kind == CrossingKind::Crossing)
            .collect();
        assert!(
            crossings.len() >= 3,
            "expected several Juddian crossings over g' in (0.05, 1.2], found {}",
            crossings.len()
        );
        for r in &crossings {
            assert!(r.min_gap <= 1e-8);
            assert!(
                r.diagnostics.satisfied,
                "necessity violated at g'={}: μ'+g'^2 raw values {:?}",
                r.swept_value, r.diagnostics.raw_values
            );
            // μ' + g'^2 lands on a nonnegative integer within 1e-5
            let dev = r.diagnostics.deviations[1].min(r.diagnostics.deviations[2]);
            assert!(
                dev <= 1e-5,
                "integer deviation {dev} at g'={}",
                r.swept_value
            );
        }

        // two-photon / oscillator verdicts agree under the parameter map
        let mut rng = ChaCha8Rng::seed_from_u64(0x0815);
        let mut checked = 0;
        while checked < 100 {
            let alpha = rng.gen_range(0.8f64..4.0);
            let beta = rng.gen_range(0.8f64..4.0);
            if alpha * beta <= 1.01 {
                continue;
            }
            let eta = if rng.gen_bool(0.5) {
                0.5 * rng.gen_range(0i32..4) as f64
            } else {
                rng.gen_range(0.0f64..2.0)
            };
            let lambda = rng.gen_range(0.1f64..8.0);
            let p = NchoParams::new(alpha, beta, eta).unwrap();
            let (q, mu) = models::ncho_to_2qrm(&p, lambda).unwrap();
            for sector in [ParitySector::Even, ParitySector::Odd] {
                let a = check_ncho_condition(&p, lambda, sector, 1e-5).unwrap();
                let b = check_2qrm_condition(&q, mu, sector, 1e-5).unwrap();
                assert_eq!(
                    a.satisfied, b.satisfied,
                    "verdicts split at {p:?} λ={lambda}"
                );
            }
            checked += 1;
        }
        assert!(start.elapsed().as_secs_f64() < 600.0, "budget: 10 min");
    });
}

#[test]
fn criterion_09_structural_invariants() {
    criterion(9, "structural invariants", || {
        let start = Instant::now();
        let builds = vec![
            build_2qrm(
                &TwoQrmParams::new(0.3, 0.4, 0.2).unwrap(),
                60,
                ParitySector::Full,
            )
            .unwrap(),
            build_2qrm(
                &TwoQrmParams::new(0.3, 0.4, 0.2).unwrap(),
                60,
                ParitySector::Even,
            )
            .unwrap(),
            build_ncho(
                &NchoParams::new(3.0, 2.0, 0.5).unwrap(),
                60,
                ParitySector::Odd,
            )
            .unwrap(),
            build_1qrm(&OneQrmParams::new(0.4, 0.3, 0.1).unwrap(), 60).unwrap(),
            build_disk(&DiskParams::new(1.5, 0.2, 0.4, 0.1).unwrap(), 60).unwrap(),
        ];
        // exact Hermiticity
        for h in &builds {
            assert_eq!(h.hermiticity_deviation(), 0.0, "{}", h.model);
        }
        // nesting: the smaller build is the leading block of the larger
        let specs = [
            (
                ModelSpec::TwoQrm(TwoQrmParams::new(0.3, 0.4, 0.2).unwrap()),
                ParitySector::Full,
            ),
            (
                ModelSpec::Ncho(NchoParams::new(3.0, 2.0, 0.5).unwrap()),
                ParitySector::Even,
            ),
            (
                ModelSpec::OneQrm(OneQrmParams::new(0.4, 0.3, 0.1).unwrap()),
                ParitySector::Full,
            ),
            (
                ModelSpec::Disk(DiskParams::new(1.5, 0.2, 0.4, 0.1).unwrap()),
                ParitySector::Full,
            ),
        ];
        for (spec, sector) in &specs {
            let small = rabi_spectra::build(spec, 40, *sector).unwrap();
            let large = rabi_spectra::build(spec, 60, *sector).unwrap();
            for i in 0..small.dim() {
                for j in 0..small.dim() {
                    assert_eq!(small.entry(i, j), large.entry(i, j), "{spec}");
                }
            }
        }
        // Rayleigh-Ritz monotonicity within 1e-12 slack, every index
        for (spec, sector) in &specs {
            let a = eigenvalues(&rabi_spectra::build(spec, 60, *sector).unwrap()).unwrap();
            let b = eigenvalues(&rabi_spectra::build(spec, 90, *sector).unwrap()).unwrap();
            for (k, (x, y)) in a.eigenvalues.iter().zip(&b.eigenvalues).enumerate() {
                assert!(
                    *x >= *y - 1e-12,
                    "{spec}: level {k} rose from {y} to {x} under truncation growth"
                );
            }
        }
        // eigenpair residual bound
        for h in &builds {
            let dim = h.dim();
            let hmax = h.max_entry();
            for (lambda, v) in eigenpairs(h).unwrap() {
                let mut norm_sq = 0.0;
                for i in 0..dim {
                    let mut acc = num_complex::Complex64::new(0.0, 0.0);
                    for j in 0..dim {
                        acc += h.entry(i, j) * v[j];
                    }
                    acc -= num_complex::Complex64::new(lambda, 0.0) * v[i];
                    norm_sq += acc.norm_sqr();
                }
                assert!(
                    norm_sq.sqrt() <= 1e-10 * (1.0 + lambda.abs()) * hmax * dim as f64,
                    "{}: residual {} at λ={lambda}",
                    h.model,
                    norm_sq.sqrt()
                );
            }
        }
        // byte-identical reruns
        for (spec, sector) in &specs {
            let a = converged_spectrum(spec, *sector, 40, 1e-9).unwrap();
            let b = converged_spectrum(spec, *sector, 40, 1e-9).unwrap();
            let bits = |v: &[f64]| v.iter().map(|x| x.to_bits()).collect::<Vec<_>>();
            assert_eq!(bits(&a.eigenvalues), bits(&b.eigenvalues));
            assert_eq!(a.converged_count, b.converged_count);
        }
        assert!(start.elapsed().as_secs_f64() < 60.0, "budget: 1 min");
    });
}

#[test]
fn criterion_10_collapse_regime_honesty() {
    criterion(10, "collapse-regime honesty", || {
        // g = 1/2 build succeeds, carries the flag, certifies nothing
        let q = TwoQrmParams::new(0.5, 0.3, 0.0).unwrap();
        let h = build_2qrm(&q, 80, ParitySector::Even).unwrap();
        assert!(h.unreliable);
        let s = converged_spectrum(&ModelSpec::TwoQrm(q), ParitySector::Even, 80, 1e-9).unwrap();
        assert!(s.unreliable);
        assert_eq!(s.converged_count, 0);

        // αβ = 1 likewise
        let p = NchoParams::new(1.0, 1.0, 0.0).unwrap();
        let h = build_ncho(&p, 80, ParitySector::Even).unwrap();
        assert!(h.unreliable);
        let s = converged_spectrum(&ModelSpec::Ncho(p), ParitySector::Even, 80, 1e-9).unwrap();
        assert!(s.unreliable);
        assert_eq!(s.converged_count, 0);

        // the verifier refuses to assert matches in the collapse regime
        let opts = VerifyOptions {
            n_levels: 4,
            truncation: 80,
            ..VerifyOptions::default()
        };
        let report = verify_2qrm_to_ncho(&q, ParitySector::Even, &opts).unwrap();
        assert!(report.unreliable);
        assert!(report.records.is_empty(), "no level may be asserted");
        let report = verify_ncho_to_2qrm(&p, ParitySector::Even, &opts).unwrap();
        assert!(report.unreliable);
        assert!(report.records.is_empty());
    });
}
