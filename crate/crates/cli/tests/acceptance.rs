// SPDX-License-Identifier: Apache-2.0

//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use koethe::criteria::{compactness_verdict, continuity_verdict, tameness_check, FamilySpec, Property, SMap, Sampler};
use koethe::operators::{apply_dense, apply_fast, NormKind, Symbol, SymbolSpec, ToeplitzOperator, Variant};
use koethe::oracle::{cross_validate, dense_truncation, oracle_compactness, ratio_curve, Agreement};
use koethe::spaces::{check_subadditivity, gp_probe, nuclearity_verdict, weight, ExponentSequence, SpaceDescriptor};
use koethe::{Certificate, Outcome, Window};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn fin(a: ExponentSequence) -> SpaceDescriptor {
    SpaceDescriptor::finite(a)
}

fn inf(a: ExponentSequence) -> SpaceDescriptor {
    SpaceDescriptor::infinite(a)
}

fn m_of(o: &Outcome) -> Option<usize> {
    match o.certificate()? {
        Certificate::ExistsMForallK { m, .. } => Some(*m),
        _ => None,
    }
}

/// Curve at `N = 4096` minus the curve at `N = 1024`, for every `k` with
/// the certified `m`.
fn plateau_check(op: &ToeplitzOperator, m: usize, w: &Window) -> Result<f64, String> {
    let mut worst = 0.0f64;
    for k in 1..=w.k_max {
        let c = ratio_curve(op, k, m, &[1024, 4096], NormKind::Sum).map_err(|e| e.to_string())?;
        let g = c.growth_between(1024, 4096).ok_or("missing checkpoint")?;
        worst = worst.max(g);
    }
    ensure(worst <= 1e-6, format!("curve grew by {worst:e} between 1024 and 4096"))?;
    Ok(worst)
}

fn positive_compactness(op: &ToeplitzOperator, budget: Duration) -> Check {
    let w = Window::default();
    let t0 = Instant::now();
    let v = compactness_verdict(op, &w).map_err(|e| e.to_string())?;
    ensure(v.holds(), format!("theorem route: {:?}", v.outcome))?;
    ensure(m_of(&v.outcome) == Some(1), format!("certificate m = {:?}", m_of(&v.outcome)))?;
    let o = oracle_compactness(op, &w).map_err(|e| e.to_string())?;
    ensure(o.holds(), format!("oracle: {:?}", o.outcome()))?;
    let r = cross_validate(op, Property::Compactness, &w).map_err(|e| e.to_string())?;
    ensure(r.agreement == Agreement::Agree, format!("agreement {:?}", r.agreement))?;
    let worst = plateau_check(op, 1, &w)?;
    let dt = t0.elapsed();
    ensure(dt <= budget, format!("took {dt:?}, budget {budget:?}"))?;
    Ok(format!("{} m=1, plateau drift {worst:e}, {dt:.2?}", v.theorem_id))
}

fn c1() -> Check {
    let op = ToeplitzOperator::new(
        Variant::Lower,
        Symbol::lower(SymbolSpec::geometric((-1.0f64).exp())),
        fin(ExponentSequence::linear()),
        fin(ExponentSequence::power(2.0)),
    )
    .map_err(|e| e.to_string())?;
    positive_compactness(&op, Duration::from_secs(5))
}

fn c2() -> Check {
    let lower = SymbolSpec::ExpOfExponent {
        c: -1.0,
        alpha: ExponentSequence::power(2.0),
    };
    let upper = SymbolSpec::ExpOfExponent {
        c: 1.0,
        alpha: ExponentSequence::linear(),
    };
    let op = ToeplitzOperator::new(
        Variant::Full,
        Symbol::full(lower, upper).map_err(|e| e.to_string())?,
        inf(ExponentSequence::power(2.0)),
        inf(ExponentSequence::linear()),
    )
    .map_err(|e| e.to_string())?;
    positive_compactness(&op, Duration::from_secs(10))
}

fn c3() -> Check {
    let bad = ToeplitzOperator::new(
        Variant::Full,
        Symbol::full(SymbolSpec::geometric(0.5), SymbolSpec::geometric(0.5)).map_err(|e| e.to_string())?,
        fin(ExponentSequence::linear()),
        inf(ExponentSequence::linear()),
    )
    .map_err(|e| e.to_string())?;
    let lib_err = continuity_verdict(&bad, &Window::default()).err();
    ensure(
        matches!(lib_err, Some(koethe::Error::NotWellDefined(_))),
        format!("library returned {lib_err:?}"),
    )?;
    let json = serde_json::to_string(&bad).map_err(|e| e.to_string())?;
    let out = Command::new(env!("CARGO_BIN_EXE_koethe"))
        .args(["operator", "certify", "--operator", &json, "--property", "continuity"])
        .output()
        .map_err(|e| e.to_string())?;
    let code = out.status.code().unwrap_or(-1);
    let stderr = String::from_utf8_lossy(&out.stderr);
    ensure(code >= 4, format!("exit code {code}"))?;
    ensure(stderr.contains("not well defined"), format!("stderr: {stderr}"))?;

    let delta = bad.part(Variant::Lower).map_err(|e| e.to_string())?.with_symbol(Symbol::lower(SymbolSpec::delta())).map_err(|e| e.to_string())?;
    let mut least = f64::INFINITY;
    for m in 1..=48 {
        let c = ratio_curve(&delta, 1, m, &[1024, 2048], NormKind::Sum).map_err(|e| e.to_string())?;
        let g = c.growth_between(1024, 2048).ok_or("missing checkpoint")?;
        least = least.min(g);
    }
    ensure(least >= 1.0, format!("smallest growth {least}"))?;
    Ok(format!("exit {code}, smallest δ_0 growth {least:.1} log-units"))
}

fn c4() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let s = fin(ExponentSequence::linear());
    let n = 1024;
    let mut worst = 0.0f64;
    let mut dense_time = Duration::ZERO;
    let mut last = None;
    for _ in 0..100 {
        let sym = Symbol::full(
            SymbolSpec::geometric(rng.random_range(-0.9..=0.9)),
            SymbolSpec::geometric(rng.random_range(-0.9..=0.9)),
        )
        .map_err(|e| e.to_string())?;
        let op = ToeplitzOperator::new(Variant::Full, sym, s.clone(), s.clone()).map_err(|e| e.to_string())?;
        let x: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..=1.0)).collect();
        let t = Instant::now();
        let d = apply_dense(&op, &x, n).map_err(|e| e.to_string())?;
        dense_time += t.elapsed();
        let f = apply_fast(&op, &x, n).map_err(|e| e.to_string())?;
        let scale = d.values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        let err = d.values.iter().zip(&f.values).fold(0.0f64, |a, (p, q)| a.max((p - q).abs()));
        worst = worst.max(err / scale);
        last = Some(op);
    }
    ensure(worst <= 1e-10, format!("relative sup-error {worst:e}"))?;

    let op = last.expect("100 trials ran");
    let big = 65536;
    let x: Vec<f64> = (0..big).map(|_| rng.random_range(-1.0..=1.0)).collect();
    let t = Instant::now();
    let y = apply_fast(&op, &x, big).map_err(|e| e.to_string())?;
    let fast = t.elapsed();
    ensure(!y.overflow, "fast path overflowed")?;
    let per_dense = dense_time.as_secs_f64() / 100.0;
    let extrapolated = per_dense * (big as f64 / n as f64).powi(2);
    let speedup = extrapolated / fast.as_secs_f64();
    ensure(speedup >= 20.0, format!("speedup {speedup:.1}x"))?;
    Ok(format!("error {worst:.1e}, speedup {speedup:.0}x at N={big}"))
}

fn random_spec(rng: &mut ChaCha8Rng) -> SymbolSpec {
    if rng.random_bool(0.5) {
        SymbolSpec::geometric(rng.random_range(-0.95..=0.95))
    } else {
        let len = rng.random_range(1..=300);
        SymbolSpec::Explicit {
            values: (0..len).map(|_| rng.random_range(-2.0..=2.0)).collect(),
        }
    }
}

fn c5() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let s = inf(ExponentSequence::linear());
    let n = 256;
    for trial in 0..50 {
        let sym = Symbol::full(random_spec(&mut rng), random_spec(&mut rng)).map_err(|e| e.to_string())?;
        let full = ToeplitzOperator::new(Variant::Full, sym, s.clone(), s.clone()).map_err(|e| e.to_string())?;
        let dense = |v| -> Result<_, String> {
            let part = full.part(v).map_err(|e| e.to_string())?;
            dense_truncation(&part, n, n).map_err(|e| e.to_string())
        };
        let f = dense_truncation(&full, n, n).map_err(|e| e.to_string())?;
        let (lo, up) = (dense(Variant::Lower)?, dense(Variant::Upper)?);
        for i in 0..n * n {
            let sum = lo.data[i] + up.data[i];
            ensure(
                f.data[i].to_bits() == sum.to_bits(),
                format!("trial {trial}, entry {i}: {} vs {sum}", f.data[i]),
            )?;
        }
    }
    Ok("50 symbols bitwise equal".into())
}

/// Smallest integer `M` with `s² <= M((s−t)² + t²)` for `1 <= t < s <= n`.
fn brute_force_square(n: u64) -> u64 {
    let mut best = 1;
    for s in 2..=n {
        for t in 1..s {
            let den = (s - t) * (s - t) + t * t;
            best = best.max((s * s).div_ceil(den));
        }
    }
    best
}

fn c6() -> Check {
    let w = Window::default();
    let constant = |a: ExponentSequence, n: usize| -> Result<u32, String> {
        let r = check_subadditivity(&a, n, w.growth_m_max).map_err(|e| e.to_string())?;
        r.constant().ok_or(format!("{a:?}: {:?}", r.outcome))
    };
    let lin = constant(ExponentSequence::linear(), w.n)?;
    ensure(lin == 1, format!("α = n gives {lin}"))?;
    let sqrt = constant(ExponentSequence::power(0.5), 10_000)?;
    ensure(sqrt == 1, format!("α = √n gives {sqrt}"))?;
    for d in [3.0, 4.0] {
        let m = constant(ExponentSequence::power(1.0 / d), w.n)?;
        ensure(m <= 2, format!("α = n^(1/{d}) gives {m}"))?;
    }
    let sq = constant(ExponentSequence::power(2.0), 10_000)?;
    let oracle = brute_force_square(10_000);
    ensure(sq as u64 == oracle, format!("α = n²: checker {sq}, brute force {oracle}"))?;
    Ok(format!("n→{lin}, √n→{sqrt}, n²→{sq} (brute force {oracle})"))
}

fn c7() -> Check {
    let w = Window::default();
    let lin = inf(ExponentSequence::linear());
    let p = gp_probe(&lin, 1, 2, 60).map_err(|e| e.to_string())?;
    let total = p.total().to_linear().ok_or("probe total overflows")?;
    let target = 1.0 / (1.0f64.exp() - 1.0);
    ensure((total - target).abs() <= 1e-9, format!("gp_probe {total}, expected {target}"))?;
    let nv = nuclearity_verdict(&lin, &w);
    ensure(nv.holds(), format!("Λ_∞(n): {:?}", nv.outcome))?;
    let log = fin(ExponentSequence::Log);
    match nuclearity_verdict(&log, &w).outcome {
        Outcome::FailsOnWindow { witness } if witness.detail.contains("divergent") => {}
        other => return Err(format!("Λ_1(log(n+1)): {other:?}")),
    }
    Ok(format!("|gp - 1/(e-1)| = {:.1e}", (total - target).abs()))
}

fn c8() -> Check {
    let w = Window::default().with_n(1024);
    let template = ToeplitzOperator::new(
        Variant::Lower,
        Symbol::lower(SymbolSpec::geometric(0.5)),
        inf(ExponentSequence::linear()),
        fin(ExponentSequence::linear()),
    )
    .map_err(|e| e.to_string())?;
    let family = FamilySpec {
        sampler: Sampler::Geometric {
            r: [0.0, 0.95],
            scale: [1.0, 1.0],
            signed: true,
        },
        count: 50,
        seed: 8,
        constraint: Default::default(),
        max_retries: 20,
    };
    let v = tameness_check(&family, &SMap::Identity, &template, &w).map_err(|e| e.to_string())?;
    let samples = match &v.outcome {
        Outcome::Holds {
            certificate: Certificate::Tameness { samples },
        } => samples,
        other => return Err(format!("tameness: {other:?}")),
    };
    ensure(samples.len() == 50, format!("{} samples certified", samples.len()))?;
    let symbols = family.sample(&template, &w).map_err(|e| e.to_string())?;
    let mut worst = f64::NEG_INFINITY;
    for entry in samples {
        let op = template.with_symbol(symbols[entry.sample].clone()).map_err(|e| e.to_string())?;
        for e in &entry.per_k {
            ensure(e.m == e.k, format!("sample {}: S(k) = {} at k = {}", entry.sample, e.m, e.k))?;
            for n in 1..=w.n {
                let t = op.column_norm(n, e.k, w.n, NormKind::Sum).map_err(|e| e.to_string())?.log();
                if t == f64::NEG_INFINITY {
                    continue;
                }
                let d = weight(&op.domain, n, e.m).map_err(|e| e.to_string())?.log();
                worst = worst.max(t - d - e.log_c.log());
            }
        }
    }
    ensure(worst <= 1e-9, format!("replay exceeds a certificate by {worst:e}"))?;
    Ok(format!("50 samples, worst replay margin {worst:.1e}"))
}

struct GridRow {
    label: String,
    agreements: [Agreement; 2],
    theorem_holds: [bool; 2],
    oracle_holds: [bool; 2],
}

fn grid() -> Result<(Vec<GridRow>, Duration), String> {
    let seqs = [
        ("n", ExponentSequence::linear()),
        ("n²", ExponentSequence::power(2.0)),
        ("√n", ExponentSequence::power(0.5)),
    ];
    let w = Window::default();
    let t0 = Instant::now();
    let mut rows = Vec::new();
    for variant in [Variant::Lower, Variant::Upper] {
        for dfin in [true, false] {
            for cfin in [true, false] {
                for (an, a) in &seqs {
                    for (bn, b) in &seqs {
                        let mk = |finite: bool, s: &ExponentSequence| if finite { fin(s.clone()) } else { inf(s.clone()) };
                        for (sn, spec) in [("δ_0", SymbolSpec::delta()), ("geometric(0.5)", SymbolSpec::geometric(0.5))] {
                            let sym = match variant {
                                Variant::Lower => Symbol::lower(spec),
                                _ => Symbol::upper(spec),
                            };
                            let op = ToeplitzOperator::new(variant, sym, mk(dfin, a), mk(cfin, b)).map_err(|e| e.to_string())?;
                            let name = |f: bool| if f { "Λ_1" } else { "Λ_∞" };
                            let label = format!("{variant:?} {sn} {}({an}) -> {}({bn})", name(dfin), name(cfin));
                            let mut agreements = [Agreement::Agree; 2];
                            let mut theorem_holds = [false; 2];
                            let mut oracle_holds = [false; 2];
                            for (i, p) in [Property::Continuity, Property::Compactness].into_iter().enumerate() {
                                let r = cross_validate(&op, p, &w).map_err(|e| format!("{label}: {e}"))?;
                                agreements[i] = r.agreement;
                                theorem_holds[i] = r.theorem.holds();
                                oracle_holds[i] = r.oracle.holds();
                            }
                            rows.push(GridRow {
                                label,
                                agreements,
                                theorem_holds,
                                oracle_holds,
                            });
                        }
                    }
                }
            }
        }
    }
    Ok((rows, t0.elapsed()))
}

fn c9(rows: &[GridRow], dt: Duration) -> Check {
    let conflicts: Vec<&str> = rows
        .iter()
        .filter(|r| r.agreements.contains(&Agreement::Conflict))
        .map(|r| r.label.as_str())
        .collect();
    ensure(conflicts.is_empty(), format!("conflicts: {conflicts:?}"))?;
    ensure(dt <= Duration::from_secs(120), format!("grid took {dt:?}"))?;
    let agree = rows.iter().flat_map(|r| r.agreements).filter(|a| *a == Agreement::Agree).count();
    Ok(format!("{} operators, {agree}/{} agree, 0 conflicts, {dt:.1?}", rows.len(), 2 * rows.len()))
}

fn c10(rows: &[GridRow]) -> Check {
    for r in rows {
        ensure(!r.theorem_holds[1] || r.theorem_holds[0], format!("theorem route: {}", r.label))?;
        ensure(!r.oracle_holds[1] || r.oracle_holds[0], format!("oracle: {}", r.label))?;
    }
    let compact = rows.iter().filter(|r| r.theorem_holds[1] || r.oracle_holds[1]).count();
    Ok(format!("{compact} compact operators, all continuous"))
}

fn main() -> ExitCode {
    let mut failed = 0;
    let mut report = |id: usize, name: &str, r: Check| {
        match r {
            Ok(detail) => println!("criterion {id:>2}: PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {id:>2}: FAIL  {name}: {why}");
            }
        }
    };
    report(1, "finite-type lower compactness", c1());
    report(2, "infinite-type full compactness", c2());
    report(3, "Λ_1 -> Λ_∞ full operator is not well defined", c3());
    report(4, "fast apply matches dense apply", c4());
    report(5, "full = lower + upper, dense", c5());
    report(6, "subadditivity constant suite", c6());
    report(7, "nuclearity probes", c7());
    report(8, "identity tameness of a sampled family", c8());
    match grid() {
        Ok((rows, dt)) => {
            report(9, "cross-validation grid", c9(&rows, dt));
            report(10, "compactness implies continuity on the grid", c10(&rows));
        }
        Err(e) => {
            report(9, "cross-validation grid", Err(e.clone()));
            report(10, "compactness implies continuity on the grid", Err(e));
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
