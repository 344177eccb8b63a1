//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::time::{Duration, Instant};

use horadam::{
    decay_fit, estimate, estimate_block, estimate_general, inverse_enclosure, spectral, sum_enclosure,
    validity_check, verify_row, w_fast, w_iter, w_range, Family, RationalInterval,
    RecurrenceParams, SumSpec, VerificationRow, WeightedSelector,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn ten_pow(k: u32) -> BigInt {
    BigInt::from(10).pow(k)
}

fn eps(k: u32) -> BigRational {
    BigRational::new(BigInt::one(), ten_pow(k))
}

fn milli() -> BigRational {
    eps(3)
}

fn err<E: std::fmt::Display>(context: impl std::fmt::Display) -> impl FnOnce(E) -> String {
    move |e| format!("{context}: {e}")
}

/// Requires `|x_n|` strictly decreasing, certified by the enclosures:
/// the smallest possible `|x_n|` exceeds the largest possible `|x_{n+1}|`.
fn strictly_shrinking(label: &str, ivs: &[(u64, RationalInterval)]) -> Result<(), String> {
    for pair in ivs.windows(2) {
        let (n0, a) = &pair[0];
        let (n1, b) = &pair[1];
        if a.mignitude() <= b.magnitude() {
            return Err(format!("{label}: |x_{n0}| = {a} not certainly above |x_{n1}| = {b}"));
        }
    }
    Ok(())
}

fn below_milli(label: &str, (n, iv): &(u64, RationalInterval)) -> Result<(), String> {
    if iv.magnitude() >= milli() {
        return Err(format!("{label}: |x_{n}| = {iv} is not below 1e-3"));
    }
    Ok(())
}

fn rows(params: &RecurrenceParams, sel: &WeightedSelector, family: Family, lo: u64, hi: u64) -> Result<Vec<VerificationRow>, String> {
    (lo..=hi)
        .map(|n| verify_row(params, sel, family, n, &eps(30)).map_err(err(format!("row {n}"))))
        .collect()
}

fn geometric_exactness() -> Outcome {
    let params = RecurrenceParams::new(1, 2, 2, 0).unwrap();
    let sel = WeightedSelector::single(1);
    for n in 2..=40u64 {
        let power = BigInt::one() << (n - 1);
        let spec = SumSpec::new(params.clone(), sel.clone(), false, n).map_err(err(n))?;
        let tail = sum_enclosure(&spec, &eps(30)).map_err(err(n))?;
        let inverse = inverse_enclosure(&tail).map_err(err(n))?;
        if !inverse.contains(&BigRational::from_integer(power.clone())) {
            return Err(format!("n={n}: {inverse} misses 2^{}", n - 1));
        }
        let b = estimate_general(&params, &sel, n).map_err(err(n))?;
        if b.as_integer() != Some(&power) {
            return Err(format!("n={n}: estimate {b} != 2^{}", n - 1));
        }
    }
    Ok("n in [2,40], inverse contains 2^(n-1) and estimate is exact".into())
}

fn fibonacci_convergence() -> Outcome {
    let fib = RecurrenceParams::fibonacci();
    let mut notes = Vec::new();
    for m in 1..=3 {
        let table = rows(&fib, &WeightedSelector::single(m), Family::PlainGeneral, 6, 25)?;
        let errors: Vec<_> = table.iter().map(|r| (r.n, r.error.clone())).collect();
        let label = format!("m={m}");
        strictly_shrinking(&label, &errors)?;
        below_milli(&label, errors.last().unwrap())?;
        notes.push(format!("m={m} err25 ~ {}", sci(&errors.last().unwrap().1.midpoint())));
    }
    Ok(notes.join(", "))
}

fn decay_rate() -> Outcome {
    let margin = BigRational::new(15.into(), 100.into());
    let mut notes = Vec::new();
    for (name, params, m) in [
        ("fibonacci", RecurrenceParams::fibonacci(), 1),
        ("fibonacci", RecurrenceParams::fibonacci(), 2),
        ("pell", RecurrenceParams::pell(), 1),
    ] {
        let table = rows(&params, &WeightedSelector::single(m), Family::PlainGeneral, 6, 25)?;
        let sp = spectral(&params).map_err(err(name))?;
        let fit = decay_fit(&table, &sp, m).map_err(err(name))?;
        let shown = format!(
            "{name} m={m} fitted {} vs {}",
            decimal(&fit.ratio_estimate),
            decimal(&fit.predicted_ratio.midpoint())
        );
        if !fit.agrees_within(&margin) {
            return Err(shown);
        }
        notes.push(shown);
    }
    Ok(notes.join(", "))
}

fn alternating_convergence() -> Outcome {
    let fib = RecurrenceParams::fibonacci();
    let table = rows(&fib, &WeightedSelector::single(1), Family::AltGeneral, 6, 25)?;
    for row in &table {
        let expected = if row.n % 2 == 0 { 1 } else { -1 };
        if row.inverse.sign() != expected {
            return Err(format!("n={}: inverse {} has the wrong sign", row.n, row.inverse));
        }
        // the estimate is (-1)^n (F_n + F_{n-1}) = (-1)^n F_{n+1}
        let f = w_iter(&fib, row.n + 1) * expected;
        if row.estimate.as_integer() != Some(&f) {
            return Err(format!("n={}: estimate {} != {f}", row.n, row.estimate));
        }
    }
    let last = table.last().unwrap();
    below_milli("alternating", &(last.n, last.error.clone()))?;
    Ok(format!("signs alternate on [6,25], err25 ~ {}", sci(&last.error.midpoint())))
}

fn block_agreement() -> Outcome {
    let fib = RecurrenceParams::fibonacci();
    let mut notes = Vec::new();
    for t in 1..=2usize {
        let sel = WeightedSelector::block(1, t);
        let mut diffs = Vec::new();
        for n in 6..=25 {
            let block = estimate_block(&fib, 1, t, n).map_err(err(n))?.enclose(&eps(30));
            let general = estimate_general(&fib, &sel, n).map_err(err(n))?.enclose(&eps(30));
            diffs.push((n, block.sub(&general)));
        }
        let label = format!("t={t}");
        strictly_shrinking(&label, &diffs)?;
        below_milli(&label, diffs.last().unwrap())?;
        notes.push(format!("t={t} d25 ~ {}", sci(&diffs.last().unwrap().1.midpoint())));
    }
    Ok(notes.join(", "))
}

fn lee_specialization() -> Outcome {
    let fib = RecurrenceParams::fibonacci();
    let sel = WeightedSelector::single(1);
    // independent Fibonacci numbers: F[0] = 0, F[1] = 1
    let mut f = vec![0u128, 1];
    while f.len() < 41 {
        f.push(f[f.len() - 1] + f[f.len() - 2]);
    }
    for n in 3..=40u64 {
        let b = estimate(&fib, &sel, Family::PlainGeneral, n).map_err(err(n))?;
        let expected = BigInt::from(f[n as usize - 2]);
        if b.as_integer() != Some(&expected) {
            return Err(format!("n={n}: estimate {b} != F_(n-2) = {expected}"));
        }
    }
    Ok("estimate == F_(n-2) for n in [3,40]".into())
}

/// `|beta| < 1` from a 100-digit fixed-point evaluation of `sqrt(D)`.
/// Perfect squares come out exact, so the boundary case `|beta| = 1`
/// is decided correctly.
fn beta_below_one_fixed_point(p: i64, q: i64) -> bool {
    let scale = ten_pow(100);
    let d = BigInt::from(p * p + 4 * q);
    let root = (d * &scale * &scale).sqrt();
    // beta = (p - sqrt D) / 2, so |beta| < 1 iff |p - sqrt D| < 2
    let diff = BigInt::from(p) * &scale - root;
    diff.abs() < BigInt::from(2) * &scale
}

fn validity_oracle() -> Outcome {
    let mut points = 0;
    let mut counterexamples = Vec::new();
    for p in 1..=6i64 {
        for q in -5..=6i64 {
            if p * p + 4 * q <= 0 {
                continue;
            }
            points += 1;
            let params = RecurrenceParams::new(0, 1, p, q).unwrap();
            let report = validity_check(&params, &WeightedSelector::single(1));
            let oracle = beta_below_one_fixed_point(p, q);
            if report.beta_abs_lt_one != oracle {
                return Err(format!("p={p} q={q}: exact {} vs 100-digit {oracle}", report.beta_abs_lt_one));
            }
            if report.paper_condition_holds && !report.beta_abs_lt_one {
                counterexamples.push(format!("(p={p}, q={q})"));
            }
        }
    }
    if !counterexamples.is_empty() {
        return Err(format!("condition holds but |beta| >= 1 at {}", counterexamples.join(" ")));
    }
    Ok(format!("{points} grid points agree, 0 counterexamples"))
}

fn random_spec(rng: &mut StdRng) -> Option<SumSpec> {
    let p = rng.gen_range(1..=4);
    let q = rng.gen_range(-3..=4);
    let a = rng.gen_range(-3..=3);
    let b = rng.gen_range(-3..=3);
    let m: u64 = rng.gen_range(1..=3);
    let terms = rng.gen_range(1..=2);
    let s: Vec<u32> = (0..terms).map(|_| rng.gen_range(1..=3)).collect();
    let l: Vec<i64> = (0..terms).map(|_| rng.gen_range(1 - m as i64..=2)).collect();
    let params = RecurrenceParams::new(a, b, p, q).ok()?;
    let sel = WeightedSelector::new(m, s, l).ok()?;
    let n = rng.gen_range(1..=6);
    SumSpec::new(params, sel, rng.gen_bool(0.5), n).ok()
}

fn enclosure_soundness() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let (mut checked, mut undefined, mut draws) = (0, 0, 0);
    while checked < 50 {
        draws += 1;
        if draws > 10_000 {
            return Err(format!("only {checked} valid specs in {draws} draws"));
        }
        let Some(spec) = random_spec(&mut rng) else { continue };
        let fine = match sum_enclosure(&spec, &eps(30)) {
            Ok(t) => t.interval,
            // a zero or wrong-signed denominator makes the series itself undefined
            Err(_) => {
                undefined += 1;
                continue;
            }
        };
        let coarse = sum_enclosure(&spec, &eps(10)).map_err(err("coarse"))?.interval;
        if coarse.width() > eps(10) || !coarse.contains(&fine.midpoint()) {
            return Err(format!("{:?}: {coarse} vs fine midpoint {}", describe(&spec), fine.midpoint()));
        }
        checked += 1;
    }
    Ok(format!("50 specs sound ({undefined} drawn specs skipped for undefined terms)"))
}

fn describe(spec: &SumSpec) -> String {
    format!(
        "{} m={} s={:?} l={:?} alt={} n={}",
        spec.params(),
        spec.selector().m(),
        spec.selector().weights(),
        spec.selector().offsets(),
        spec.alternating(),
        spec.n()
    )
}

fn kernel_equivalence() -> Outcome {
    // every n up to 128, then a stride through the rest, plus the endpoint
    let mut ns: Vec<u64> = (0..=128).collect();
    ns.extend((129..2000).step_by(89));
    ns.extend([1023, 1024, 1025, 1999, 2000]);
    let mut cases = 0;
    for p in 1..=5i64 {
        for q in -3..=5i64 {
            for a in -3..=3i64 {
                for b in -3..=3i64 {
                    let params = RecurrenceParams::new(a, b, p, q).unwrap();
                    let iter = w_range(&params, 0, 2000);
                    if iter[2000] != w_iter(&params, 2000) {
                        return Err(format!("{params}: w_range disagrees with w_iter at 2000"));
                    }
                    for &n in &ns {
                        if w_fast(&params, n) != iter[n as usize] {
                            return Err(format!("{params}: w_fast != w_iter at n={n}"));
                        }
                    }
                    cases += ns.len();
                }
            }
        }
    }
    Ok(format!("{cases} (params, n) pairs agree"))
}

fn decimal(v: &BigRational) -> String {
    horadam::cli::render::decimal(v, 6)
}

fn sci(v: &BigRational) -> String {
    if v.is_zero() {
        return "0".into();
    }
    let mut exp = 0i32;
    let mut x = v.abs();
    let ten = BigRational::from_integer(10.into());
    while x < BigRational::one() {
        x *= &ten;
        exp -= 1;
    }
    while x >= ten {
        x /= &ten;
        exp += 1;
    }
    let sign = if v.is_negative() { "-" } else { "" };
    format!("{sign}{}e{exp}", horadam::cli::render::decimal(&x, 2))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("geometric exactness", Duration::from_secs(1), geometric_exactness),
        ("fibonacci convergence, m = 1, 2, 3", Duration::from_secs(10), fibonacci_convergence),
        ("decay rate within 15% of |beta|^m", Duration::from_secs(30), decay_rate),
        ("alternating convergence and sign law", Duration::from_secs(10), alternating_convergence),
        ("block and general estimates agree", Duration::from_secs(10), block_agreement),
        ("estimate equals F_(n-2)", Duration::from_secs(1), lee_specialization),
        ("validity flags against 100-digit oracle", Duration::from_secs(5), validity_oracle),
        ("enclosure soundness, 50 random specs", Duration::from_secs(60), enclosure_soundness),
        ("w_fast == w_iter up to n = 2000", Duration::from_secs(10), kernel_equivalence),
    ];
    let mut failures = 0;
    for (i, (name, budget, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let (status, detail) = match outcome {
            Ok(note) if elapsed <= *budget => ("PASS", note),
            Ok(note) => ("FAIL", format!("{note}; took longer than {budget:?}")),
            Err(why) => ("FAIL", why),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!("{status} criterion {}: {name} [{:.2?}] {detail}", i + 1, elapsed);
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}

