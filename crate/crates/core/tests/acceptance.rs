//! Acceptance suite: one test per numbered criterion, each printing a
//! PASS/FAIL line with its timing (run with --nocapture to see them all).

use std::panic::{catch_unwind, resume_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use diffuni::gf2n::FieldContext;
use diffuni::poly::{self, Degree10Coeffs, Poly};
use diffuni::quartic;
use diffuni::theorems::{self, Conclusion, StatsMode};
use diffuni::uniformity::{ddt_row, delta_full};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn criterion(label: &str, budget: Duration, body: impl FnOnce() -> String) {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(body));
    let elapsed = start.elapsed();
    match outcome {
        Ok(detail) if elapsed <= budget => {
            println!("ACCEPTANCE criterion {label}: PASS ({detail}; {elapsed:?} within {budget:?})");
        }
        Ok(_) => {
            println!("ACCEPTANCE criterion {label}: FAIL (time budget {budget:?} exceeded: {elapsed:?})");
            panic!("criterion {label} exceeded its time budget");
        }
        Err(cause) => {
            println!("ACCEPTANCE criterion {label}: FAIL (after {elapsed:?})");
            resume_unwind(cause);
        }
    }
}

/// x^10 + x^3, the split-quartic family instance.
fn x10_x3() -> Degree10Coeffs {
    Degree10Coeffs::new([1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0]).unwrap()
}

/// x^10 + x^9 + x^7 + x^3, the main-theorem instance.
fn main_instance() -> Degree10Coeffs {
    Degree10Coeffs::new([1, 1, 0, 1, 0, 0, 0, 1, 0, 0, 0]).unwrap()
}

#[test]
fn criterion_1_f16_klein_reproduction() {
    criterion("1", Duration::from_secs(1), || {
        let f = FieldContext::new(4, Some(0x19)).unwrap();
        let theta = 0x2;
        // order 15 has prime divisors 3 and 5
        assert!(f.pow(theta, 3) != 1 && f.pow(theta, 5) != 1, "theta must generate");
        let alpha = f.pow(theta, 10);
        assert_eq!(alpha, 0xa);
        let quartic = quartic::reduce_quartic(&f, &x10_x3(), alpha).unwrap();
        let res = quartic::resolvents(&f, &quartic).unwrap();
        assert_eq!(
            res.q.coeffs(),
            &[1, alpha, 1],
            "Q(T) = T^2 + theta^10 T + 1"
        );
        let (r0, r1) = f
            .solve_artin_schreier(f.sqr(quartic.c), f.pow(quartic.b, 6))
            .unwrap()
            .expect("Q must split");
        let mut expected = [f.pow(theta, 6), f.pow(theta, 9)];
        expected.sort_unstable();
        assert_eq!([r0, r1], expected, "roots are theta^6 and theta^9");
        assert_eq!([r0, r1], [0x5, 0xf]);
        assert!(f.is_cube(r0, false).unwrap() && f.is_cube(r1, false).unwrap());
        let klein = quartic::klein_check(&f, &quartic).unwrap();
        assert!(klein.q_roots_are_cubes);
        assert_eq!(f.trace(f.pow(alpha, 7)), 0);
        assert_eq!(f.trace(f.sqr(alpha)), 0);
        format!(
            "Q = T^2 + {:x}T + 1, roots {{theta^6, theta^9}} = {{{:x}, {:x}}} both cubes, Tr(alpha^7) = Tr(alpha^2) = 0",
            alpha, r0, r1
        )
    });
}

#[test]
fn criterion_2_threshold_arithmetic() {
    criterion("2", Duration::from_secs(1), || {
        let _ = theorems::chebotarev_threshold(24, 6).unwrap();
        let clock = Instant::now();
        let main = theorems::chebotarev_threshold(24, 6).unwrap();
        let second = theorems::chebotarev_threshold(32, 8).unwrap();
        let spent = clock.elapsed();
        assert_eq!((main.g_bound, main.min_n), (37, 13));
        assert_eq!((second.g_bound, second.min_n), (81, 15));
        assert!(spent < Duration::from_millis(1), "took {spent:?}");
        format!("g_bound 37 / min_n 13 and g_bound 81 / min_n 15 in {spent:?}")
    });
}

#[test]
fn criterion_3_main_theorem_witness_n13() {
    criterion("3", Duration::from_secs(1), || {
        let f = FieldContext::new(13, None).unwrap();
        let coeffs = main_instance();
        let report = theorems::thm_main_check(&f, &coeffs).unwrap();
        assert!(report.all_pass(), "conditions (i)-(iii) must pass");
        assert_eq!(report.conclusion, Conclusion::DeltaGe6);
        let row = ddt_row(&f, &coeffs.to_poly(), 1).unwrap();
        assert_eq!(row.d_degree, 6);
        assert!(!row.split_betas.is_empty(), "a 6-preimage beta must exist");
        let beta = row.split_betas[0];
        // backward check through the derivative polynomial itself
        let d = poly::d_alpha(&f, &coeffs.to_poly(), 1).unwrap();
        let preimages = (0..f.order()).filter(|&x| d.eval(&f, x) == beta).count();
        assert_eq!(preimages, 6);
        format!(
            "conditions pass and beta = {:x} has exactly 6 preimages at alpha = 1 (of {} such betas)",
            beta,
            row.split_betas.len()
        )
    });
}

#[test]
fn criterion_4_split_quartic_witness_n16() {
    criterion("4", Duration::from_secs(10), || {
        let f = FieldContext::new(16, None).unwrap();
        let coeffs = x10_x3();
        let report = theorems::thm2_check(&f, &coeffs, None, None).unwrap();
        assert!(report.all_pass(), "the sweep must find a passing direction");
        assert_eq!(report.alpha_used, Some(0x1e));
        assert_eq!(report.conclusion, Conclusion::DeltaEq8);
        let fp = coeffs.to_poly();
        let row = ddt_row(&f, &fp, 0x1e).unwrap();
        assert_eq!(row.d_degree, 8);
        assert_eq!(row.delta_alpha, 8, "an 8-preimage beta exists");
        assert_eq!(row.split_betas.len(), 8192, "exactly 2^16/8 split betas");
        assert_eq!(&row.split_betas[..3], &[0x7, 0xa, 0x12]);
        // upper bound: every direction has degree-8 derivative, so no count
        // anywhere in the table can exceed 8
        for alpha in 1..=f.mask() {
            let d = poly::d_alpha(&f, &fp, alpha).unwrap();
            assert_eq!(d.degree(), Some(8));
            assert_eq!(d.leading(), f.sqr(alpha));
        }
        "sweep finds alpha = 1e, its row reaches 8, and deg(D_alpha f) = 8 for all alpha pins delta = 8".into()
    });
}

#[test]
fn criterion_5_klein_statistics() {
    criterion("5", Duration::from_secs(30), || {
        let f = FieldContext::new(16, None).unwrap();
        let hist = theorems::monodromy_stats(
            &f,
            &x10_x3(),
            0x1e,
            StatsMode::QuarticKlein,
            4096,
            theorems::DEFAULT_STATS_SEED,
        )
        .unwrap();
        assert_eq!(hist.excluded, 0, "constant derivative never ramifies");
        for pattern in hist.counts.keys() {
            assert!(
                matches!(pattern.as_slice(), [1, 1, 1, 1] | [2, 2]),
                "forbidden pattern {pattern:?}"
            );
        }
        let split = hist.frequency(&[1, 1, 1, 1]);
        assert!((0.20..=0.30).contains(&split), "split fraction {split}");
        format!("only patterns 1,1,1,1 and 2,2 observed; split fraction {split:.4}")
    });
}

#[test]
fn criterion_6_s3_statistics() {
    criterion("6", Duration::from_secs(30), || {
        let f = FieldContext::new(13, None).unwrap();
        let hist = theorems::monodromy_stats(
            &f,
            &main_instance(),
            1,
            StatsMode::CubicS3,
            4096,
            theorems::DEFAULT_STATS_SEED,
        )
        .unwrap();
        let mut observed = Vec::new();
        for (pattern, expected) in [
            (vec![1u32, 1, 1], 1.0 / 6.0),
            (vec![1, 2], 0.5),
            (vec![3], 1.0 / 3.0),
        ] {
            let freq = hist.frequency(&pattern);
            assert!(
                (freq - expected).abs() < 0.05,
                "pattern {pattern:?}: {freq} vs {expected}"
            );
            observed.push(format!("{freq:.4}"));
        }
        format!(
            "frequencies {} within 0.05 of 1/6, 1/2, 1/3",
            observed.join(", ")
        )
    });
}

#[test]
fn criterion_7_oracle_equivalence() {
    criterion("7", Duration::from_secs(300), || {
        let mut williams = 0u64;
        let mut artin_schreier = 0u64;
        let mut cubes = 0u64;
        let mut compositions = 0u64;
        for n in 1..=6 {
            let f = FieldContext::new(n, None).unwrap();
            // Williams classification vs brute-force roots of x^3 + bx^2 + c^2
            for b in 0..=f.mask() {
                for c in 1..=f.mask() {
                    let parts = quartic::williams_parts(&f, b, c).unwrap();
                    let c2 = f.sqr(c);
                    let brute = (0..f.order())
                        .filter(|&r| f.mul(f.sqr(r), r) ^ f.mul(b, f.sqr(r)) ^ c2 == 0)
                        .count();
                    assert_eq!(parts.pattern.root_count(), brute, "n={n} b={b:x} c={c:x}");
                    williams += 1;
                }
            }
            // Artin-Schreier solvability vs the trace test
            for alpha in 1..=f.mask() {
                for b in 0..=f.mask() {
                    let sol = f.solve_artin_schreier(alpha, b).unwrap();
                    let trace_zero = f.trace(f.div(b, f.sqr(alpha)).unwrap()) == 0;
                    assert_eq!(sol.is_some(), trace_zero, "n={n} alpha={alpha:x} b={b:x}");
                    if let Some((x0, x1)) = sol {
                        assert_eq!(f.sqr(x0) ^ f.mul(alpha, x0), b);
                        assert_eq!(x1, x0 ^ alpha);
                    }
                    artin_schreier += 1;
                }
            }
            // is_cube vs exhaustive search (base field when 3 | 2^n - 1,
            // quadratic extension otherwise)
            if n % 2 == 0 {
                for a in 0..=f.mask() {
                    let brute = (0..f.order()).any(|y| f.mul(f.sqr(y), y) == a);
                    assert_eq!(f.is_cube(a, false).unwrap(), brute);
                    assert_eq!(f.is_cube(a, true).unwrap(), brute);
                    cubes += 1;
                }
            } else {
                let ext = f.quadratic_extension();
                for a in 0..=f.mask() {
                    assert!(f.is_cube(a, false).is_err());
                    let target = ext.lift(a);
                    let mut brute = false;
                    'search: for hi in 0..=f.mask() {
                        for lo in 0..=f.mask() {
                            let y = (lo, hi);
                            if ext.mul(ext.sqr(y), y) == target {
                                brute = true;
                                break 'search;
                            }
                        }
                    }
                    assert_eq!(f.is_cube(a, true).unwrap(), brute);
                    cubes += 1;
                }
            }
        }
        // companion identity L_alpha f(x^2 + alpha x) = D_alpha f: every monic
        // f of degree 1..=10 over F_4
        let f4 = FieldContext::new(2, None).unwrap();
        let substitution = |alpha: u64| Poly::new(vec![0, alpha, 1]);
        for degree in 1usize..=10 {
            for idx in 0..4u64.pow(degree as u32) {
                let mut coeffs = vec![0u64; degree + 1];
                let mut rest = idx;
                for slot in coeffs.iter_mut().take(degree) {
                    *slot = rest & 3;
                    rest >>= 2;
                }
                coeffs[degree] = 1;
                let fp = Poly::new(coeffs);
                for alpha in 1..=3 {
                    let shifted = fp.compose(&f4, &Poly::new(vec![alpha, 1]));
                    let derivative = shifted.add(&fp);
                    assert_eq!(poly::d_alpha(&f4, &fp, alpha).unwrap(), derivative);
                    if derivative.is_zero() {
                        assert!(poly::l_alpha(&f4, &fp, alpha).is_err());
                    } else {
                        let pair = poly::l_alpha(&f4, &fp, alpha).unwrap();
                        assert_eq!(pair.l_poly.compose(&f4, &substitution(alpha)), derivative);
                    }
                    compositions += 1;
                }
            }
        }
        // and 10^4 random monic degree-10 f over F_64
        let f64 = FieldContext::new(6, None).unwrap();
        let mut rng = StdRng::seed_from_u64(7777);
        for _ in 0..10_000 {
            let mut coeffs = vec![0u64; 11];
            for slot in coeffs.iter_mut().take(10) {
                *slot = rng.gen::<u64>() & f64.mask();
            }
            coeffs[10] = 1;
            let fp = Poly::new(coeffs);
            let alpha = rng.gen_range(1..=f64.mask());
            let derivative = fp.compose(&f64, &Poly::new(vec![alpha, 1])).add(&fp);
            assert_eq!(poly::d_alpha(&f64, &fp, alpha).unwrap(), derivative);
            let pair = poly::l_alpha(&f64, &fp, alpha).unwrap();
            assert_eq!(pair.l_poly.compose(&f64, &substitution(alpha)), derivative);
            compositions += 1;
        }
        format!(
            "{williams} Williams, {artin_schreier} Artin-Schreier, {cubes} cube, {compositions} companion checks, zero mismatches"
        )
    });
}

#[test]
fn criterion_8_apn_sanity() {
    criterion("8", Duration::from_secs(1), || {
        let cube = Poly::new(vec![0, 0, 0, 1]);
        for n in [5, 7] {
            let f = FieldContext::new(n, None).unwrap();
            let summary = delta_full(&f, &cube).unwrap();
            assert_eq!(summary.delta, 2, "x^3 is APN over F_2^{n}");
        }
        "delta(x^3) = 2 over F_32 and F_128".into()
    });
}

#[test]
fn criterion_9_invariance_suite() {
    criterion("9", Duration::from_secs(120), || {
        let f = FieldContext::new(4, None).unwrap();
        let mut rng = StdRng::seed_from_u64(99);
        for _ in 0..500 {
            let mut a = [0u64; 11];
            for slot in a.iter_mut() {
                *slot = rng.gen::<u64>() & f.mask();
            }
            if a[0] == 0 {
                a[0] = 1;
            }
            let fp = Degree10Coeffs::new(a).unwrap().to_poly();
            let base = delta_full(&f, &fp).unwrap().delta;
            let c = rng.gen_range(1..=f.mask());
            assert_eq!(delta_full(&f, &fp.scale(&f, c)).unwrap().delta, base);
            // A(x) = c + c1 x + c2 x^2 + c4 x^4 + c8 x^8
            let mut additive = vec![0u64; 9];
            for k in [0usize, 1, 2, 4, 8] {
                additive[k] = rng.gen::<u64>() & f.mask();
            }
            let shifted = fp.add(&Poly::new(additive));
            assert_eq!(delta_full(&f, &shifted).unwrap().delta, base);
        }
        "500 random degree-10 polynomials: scalar and additive transforms preserve delta".into()
    });
}

#[test]
fn headline_randomized_qualifying_n13() {
    criterion("headline", Duration::from_secs(120), || {
        let f = FieldContext::new(13, None).unwrap();
        let mut rng = StdRng::seed_from_u64(1234);
        let mut accepted = 0u32;
        let mut attempts = 0u32;
        while accepted < 100 {
            attempts += 1;
            assert!(attempts < 10_000, "qualifying draws must not be this rare");
            let mut a = [0u64; 11];
            a[0] = 1;
            for slot in a.iter_mut().skip(1) {
                *slot = rng.gen::<u64>() & f.mask();
            }
            if a[1] == 0 {
                a[1] = 1;
            }
            if a[3] == 0 {
                a[3] = 1;
            }
            let coeffs = Degree10Coeffs::new(a).unwrap();
            let report = theorems::thm_main_check(&f, &coeffs).unwrap();
            if !report.all_pass() {
                continue;
            }
            accepted += 1;
            let row = ddt_row(&f, &coeffs.to_poly(), a[1]).unwrap();
            assert_eq!(row.d_degree, 6);
            assert!(
                !row.split_betas.is_empty(),
                "qualifying f must admit a 6-preimage beta at alpha = a_1"
            );
        }
        format!("100 qualifying draws at n = 13 (from {attempts} attempts) all admit a 6-preimage beta")
    });
}
