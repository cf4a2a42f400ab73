//! End-to-end checks of the reported constants. Prints one line per
//! criterion and exits non-zero if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_rational::Ratio;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rado_core::analysis::{additive_tuple_check, classify_three_term, l_statistic, robust_sum_set, sumset};
use rado_core::colorings::{
    alternating_prefix_coloring, block_coloring, lift_from_cyclic, point_coloring_cyclic, random_coloring, BlockSpec,
};
use rado_core::fourier::{
    construct_uncommon_spectrum, deviation, dft_values, expected_mu_direct, failed_assumption, idft,
    mu_expected_fourier, prob_coloring_from_spectrum, Strictness,
};
use rado_core::search::{local_search, FlipState, SearchConfig, SolutionIndex};
use rado_core::solutions::count_stats_by_enumeration;
use rado_core::verify::certificate_value;
use rado_core::{count_stats, exact_min_mu, Color, Domain, LinearEquation};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn eq(c: &[i64]) -> LinearEquation {
    LinearEquation::new(c.to_vec()).unwrap()
}

fn near(what: &str, value: f64, target: f64, tol: f64) -> Outcome {
    if (value - target).abs() <= tol {
        Ok(format!("{what} {value:.6}"))
    } else {
        Err(format!("{what} {value:.6}, expected {target:.6} +- {tol}"))
    }
}

fn rel(what: &str, value: f64, target: f64, tol: f64) -> Outcome {
    if ((value - target) / target).abs() <= tol {
        Ok(format!("{what} {value:.0}"))
    } else {
        Err(format!("{what} {value:.0}, expected {target:.0} +- {}%", tol * 100.0))
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let detail = f()?;
    let took = start.elapsed();
    ensure(took <= limit, || format!("{detail}; took {took:.2?}, limit {limit:?}"))?;
    Ok(format!("{detail} ({took:.2?})"))
}

fn all(parts: Vec<Outcome>) -> Outcome {
    let mut notes = Vec::new();
    for p in parts {
        notes.push(p?);
    }
    Ok(notes.join(", "))
}

fn schur() -> Outcome {
    timed(Duration::from_secs(5), || {
        let n = 11_000;
        let s = count_stats(&eq(&[1, 1, -1]), &block_coloring(n, &BlockSpec::schur())).map_err(|e| e.to_string())?;
        ensure(s.total == (n * (n - 1) / 2) as u64, || format!("total {}", s.total))?;
        near("mu", s.proportion_f64(), 2.0 / 11.0, 0.005)
    })
}

fn alternating_prefix() -> Outcome {
    let n = 9_000usize;
    let n2 = (n * n) as f64;
    let mut parts = Vec::new();
    for c in [3u64, 5, 7] {
        let f = alternating_prefix_coloring(n, c).unwrap();
        let s = count_stats(&eq(&[2, -2, c as i64]), &f).unwrap();
        let cf = c as f64;
        parts.push(near(&format!("c={c}: mu"), s.proportion_f64(), 1.0 / (cf * cf), 0.005));
        parts.push(rel("mono", s.monochromatic as f64, n2 / (2.0 * cf.powi(3)), 0.02));
        parts.push(rel("total", s.total as f64, n2 / (2.0 * cf), 0.02));
    }
    all(parts)
}

fn alternating_prefix_c1() -> Outcome {
    let n = 8_000i64;
    let n2 = (n * n) as f64;
    let f = alternating_prefix_coloring(n as usize, 1).unwrap();
    // 2x - 2y + z = 0 with z = 2(y - x) in [1, n]
    let (mut total, mut blue, mut red_high, mut red_low) = (0u64, 0u64, 0u64, 0u64);
    for x in 1..=n {
        for y in x + 1..=(x + n / 2).min(n) {
            let z = 2 * (y - x);
            total += 1;
            let c = f.get(x);
            if f.get(y) != c || f.get(z) != c {
                continue;
            }
            match c {
                Color::Blue => blue += 1,
                Color::Red if y > 3 * n / 4 => red_high += 1,
                Color::Red => red_low += 1,
            }
        }
    }
    let lib = count_stats(&eq(&[2, -2, 1]), &f).unwrap();
    ensure(
        lib.total == total && lib.monochromatic == blue + red_high + red_low,
        || {
            format!(
                "library counts {}/{} differ from direct {}/{}",
                lib.monochromatic,
                lib.total,
                blue + red_high + red_low,
                total
            )
        },
    )?;
    all(vec![
        near("mu", lib.proportion_f64(), 5.0 / 24.0, 0.005),
        rel("blue", blue as f64, 27.0 * n2 / 512.0, 0.02),
        rel("red y>3n/4", red_high as f64, n2 / 64.0, 0.02),
        rel("red y<=3n/4", red_low as f64, 5.0 * n2 / 512.0, 0.02),
        rel("total", total as f64, 3.0 * n2 / 8.0, 0.01),
    ])
}

fn three_block() -> Outcome {
    let e = eq(&[2, -1, 2]);
    let mut parts = Vec::new();
    for n in [80usize, 800, 8000] {
        let f = block_coloring(n, &BlockSpec::three_block_221());
        let r = l_statistic(&e, &f).unwrap();
        let s = count_stats(&e, &f).unwrap();
        ensure(4 * r.monochromatic as i64 == r.total as i64 + r.l, || {
            format!("n={n}: identity fails")
        })?;
        ensure(s.monochromatic == r.monochromatic && s.total == r.total, || {
            format!("n={n}: counting routes disagree")
        })?;
        let chain = r.total as f64 / 4.0 + r.l as f64 / 4.0;
        ensure(chain == r.monochromatic as f64, || {
            format!("n={n}: total/4 + L/4 = {chain}")
        })?;
        match n {
            800 => parts.push(near("L/n^2 at 800", r.normalized_f64(), -15.0 / 128.0, 0.005)),
            8000 => {
                parts.push(near("mu at 8000", s.proportion_f64(), 1.0 / 64.0, 0.002));
                parts.push(rel("total", s.total as f64, (n * n) as f64 / 8.0, 0.01));
            }
            _ => {}
        }
    }
    all(parts)
}

fn fourier_scan() -> Outcome {
    timed(Duration::from_secs(10), || {
        let mut scanned = 0;
        for m in 3i64..=12 {
            for a in -(m - 1)..m {
                for b in -(m - 1)..m {
                    let e = match LinearEquation::new(vec![a, b, -m]) {
                        Ok(e) if e.is_reduced() => e,
                        _ => continue,
                    };
                    if failed_assumption(a, b, -m).is_some() {
                        continue;
                    }
                    scanned += 1;
                    let s = construct_uncommon_spectrum(a, b, -m).map_err(|e| format!("({a},{b},{}): {e}", -m))?;
                    let dev = deviation(a, b, &s).unwrap();
                    let f = prob_coloring_from_spectrum(&s).unwrap();
                    let gap = (mu_expected_fourier(a, b, &s).unwrap() - expected_mu_direct(&e, &f).unwrap()).abs();
                    ensure(s.is_hermitian(), || format!("{e}: not Hermitian"))?;
                    ensure(s.off_zero_l1() <= 0.5 + 1e-12, || {
                        format!("{e}: l1 {}", s.off_zero_l1())
                    })?;
                    ensure(dev < 0.0, || format!("{e}: deviation {dev}"))?;
                    ensure(gap <= 1e-10, || format!("{e}: formula off by {gap:e}"))?;
                }
            }
        }
        let s = construct_uncommon_spectrum(1, 1, -3).unwrap();
        let d = deviation(1, 1, &s).unwrap();
        ensure(d == -0.125, || format!("a = b deviation {d}"))?;
        Ok(format!("{scanned} equations, a = b deviation {d}"))
    })
}

fn high_gcd() -> Outcome {
    let f = point_coloring_cyclic(3);
    let s = count_stats(&eq(&[3, 2, 3]), &f).unwrap();
    ensure(s.proportion == Ratio::new(1, 9), || {
        format!("Z_3 proportion {}", s.proportion)
    })?;
    let lifted = lift_from_cyclic(&f, 3000).unwrap();
    let l = count_stats(&eq(&[3, 2, -3]), &lifted).unwrap();
    near("Z_3 mu 1/9, lifted mu", l.proportion_f64(), 1.0 / 9.0, 0.01)
}

fn additive() -> Outcome {
    timed(Duration::from_secs(300), || {
        let mut worst = Ratio::from_integer(1u64);
        for n in 6..=14 {
            let r = additive_tuple_check(4, n, u64::MAX).unwrap();
            ensure(r.exhaustive, || format!("n={n}: not exhaustive"))?;
            ensure(r.min_mu >= Ratio::new(1, 8), || format!("n={n}: min mu {}", r.min_mu))?;
            worst = worst.min(r.min_mu);
        }
        Ok(format!("smallest minimum {worst}"))
    })
}

fn classifier() -> Outcome {
    let n = 5_000;
    let mut count = 0;
    let mut seen = std::collections::HashMap::new();
    for a in -10i64..=10 {
        for b in -10i64..=10 {
            for c in -10i64..=10 {
                let Ok(e) = LinearEquation::new(vec![a, b, c]) else {
                    continue;
                };
                if !e.is_reduced() {
                    continue;
                }
                let v = classify_three_term(&e).map_err(|err| format!("{e}: {err}"))?;
                ensure(v.branch.is_some(), || format!("{e}: no branch"))?;
                count += 1;
                if let Some(cert) = &v.certificate {
                    let key = v.normalized.clone().unwrap();
                    let value = *seen
                        .entry(key.clone())
                        .or_insert_with(|| certificate_value(&key, cert, n).unwrap());
                    ensure(value.is_uncommon(), || format!("{e}: {value}"))?;
                }
            }
        }
    }
    Ok(format!("{count} equations, {} distinct certificates", seen.len()))
}

fn properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut unit = move || (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;

    for m in [1usize, 2, 3, 17, 64, 256] {
        let values: Vec<f64> = (0..m).map(|_| unit()).collect();
        let back = idft(&dft_values(&values), Strictness::Strict).unwrap();
        let err = values.iter().zip(&back).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        ensure(err <= 1e-12, || format!("dft round trip m={m}: {err:e}"))?;
    }

    for (seed, text) in [[1, 1, -1], [2, -1, 2], [1, 2, -3], [3, -5, 4]].iter().enumerate() {
        let e = eq(text);
        let f = random_coloring(Domain::Interval(40), seed as u64);
        let a = count_stats(&e, &f).unwrap();
        let b = count_stats(&e, &f.complement()).unwrap();
        ensure(a.monochromatic == b.monochromatic && a.red == b.blue, || {
            format!("{e}: complement")
        })?;
        ensure(a == count_stats_by_enumeration(&e, &f).unwrap(), || {
            format!("{e}: routes disagree")
        })?;
    }

    let schur = eq(&[1, 1, -1]);
    for n in [12usize, 14, 16] {
        let exact = exact_min_mu(&schur, Domain::Interval(n), u64::MAX).unwrap();
        ensure(exact.exhaustive, || format!("n={n}: not exhaustive"))?;
        let heuristic = local_search(&schur, &SearchConfig::new(n, 1)).unwrap();
        ensure(exact.monochromatic <= heuristic.monochromatic, || {
            format!("n={n}: search below exact")
        })?;
        for seed in 0..20 {
            let r = count_stats(&schur, &random_coloring(Domain::Interval(n), seed)).unwrap();
            ensure(exact.monochromatic <= r.monochromatic, || {
                format!("n={n}: random below exact")
            })?;
        }
    }

    for _ in 0..100 {
        let a: BTreeSet<i64> = (1..=50).filter(|_| unit() < 0.3).collect();
        ensure(robust_sum_set(&a, 1) == sumset(&a), || {
            format!("robust sumset of {a:?}")
        })?;
    }

    let e = eq(&[1, 2, -3]);
    let domain = Domain::Interval(200);
    let index = Arc::new(SolutionIndex::build(&e, domain).unwrap());
    let mut state = FlipState::new(index, &random_coloring(domain, 3)).unwrap();
    for _ in 0..200 {
        state.flip((unit() * 200.0) as usize);
        let recount = count_stats(&e, &state.coloring()).unwrap().monochromatic;
        ensure(state.monochromatic() == recount, || {
            format!("incremental {} vs {recount}", state.monochromatic())
        })?;
    }
    Ok("round trip, complement, sandwich n <= 16, sumsets, 200 flips".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("Schur block coloring", schur),
        ("alternating prefix, c in {3,5,7}", alternating_prefix),
        ("alternating prefix, c = 1", alternating_prefix_c1),
        ("three-block coloring and L", three_block),
        ("uncommon spectra", fourier_scan),
        ("high-gcd point coloring", high_gcd),
        ("additive 4-tuples", additive),
        ("classifier totality", classifier),
        ("property suites", properties),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match std::panic::catch_unwind(run) {
            Ok(Ok(detail)) => println!("PASS {} {name}: {detail}", i + 1),
            Ok(Err(detail)) => {
                failed += 1;
                println!("FAIL {} {name}: {detail}", i + 1);
            }
            Err(_) => {
                failed += 1;
                println!("FAIL {} {name}: panicked", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
