//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
//! fails.

use std::process::ExitCode;
use std::time::Instant;

use f4star::cantor::{cover_check, cylinder, cylinders_disjoint, cylinders_nested, enumerate_cn, generate, level_cover, ROOT_WORD};
use f4star::cf::{convergents, epsilon_seq, eval_periodic, CfWord, Mobius, PeriodicCf};
use f4star::hall::{decompose, mu_delta_bounds, product_interval, replay, run_decompose};
use f4star::subshift::{admissible, count_with_prefix};
use f4star::thickness::{certify, gamma_from_lambda, global_lambda, lemma3_bound, ratio_bounds, tau_lower};
use f4star::{constants, BigRat, QuadSurd, DEFAULT_DISC};
use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn qs(s: &str) -> QuadSurd {
    s.parse().expect("reference surd")
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn exact_constants() -> Outcome {
    let e = |x: f4star::Error| x.to_string();
    let root = f4star::cantor::root_segment();
    ensure(root.lo == qs(constants::ROOT_LO), format!("root lo = {}", root.lo))?;
    ensure(root.hi == qs(constants::ROOT_HI), format!("root hi = {}", root.hi))?;
    let lambda = global_lambda().map_err(e)?;
    ensure(lambda == qs(constants::LAMBDA), format!("lambda = {lambda}"))?;
    let tau = tau_lower().map_err(e)?;
    ensure(tau == qs(constants::TAU_LOWER), format!("tau = {tau}"))?;
    ensure(tau > QuadSurd::from_integer(1, DEFAULT_DISC).unwrap(), "tau <= 1")?;
    let gamma = gamma_from_lambda(&lambda).map_err(e)?;
    ensure(gamma == qs(constants::GAMMA), format!("gamma = {gamma}"))?;
    let (lo, hi) = product_interval();
    ensure(lo == qs(constants::PRODUCT_LO), format!("product lo = {lo}"))?;
    ensure(hi == qs(constants::PRODUCT_HI), format!("product hi = {hi}"))?;
    let (_, delta) = mu_delta_bounds().map_err(e)?;
    ensure(delta == qs(constants::DELTA), format!("delta = {delta}"))?;
    Ok(format!(
        "root, lambda, tau = {} > 1, gamma, product [{}, {}], delta = {} all exact",
        tau.to_decimal(6),
        lo.to_decimal(6),
        hi.to_decimal(6),
        delta.to_decimal(6)
    ))
}

fn type_table() -> Outcome {
    let records = ratio_bounds().map_err(|e| e.to_string())?;
    let mut notes = Vec::new();
    for (r, (left, right, cap)) in records.iter().zip(constants::TYPE_BOUNDS) {
        let [a, b, c, d] = &r.tails;
        let bound = lemma3_bound(a, b, c, d).map_err(|e| e.to_string())?;
        let (left, right) = (qs(left), qs(right));
        let reference = left.max_of(&right).clone();
        ensure(bound == reference, format!("{}: {} differs from {}", r.kind, bound, reference))?;
        let cap = QuadSurd::from_rational(BigRat::new(cap.into(), 1000.into()), DEFAULT_DISC).unwrap();
        ensure(bound <= cap, format!("{}: {} above {}", r.kind, bound.to_decimal(6), cap.to_decimal(3)))?;
        if r.bound_left != left {
            notes.push(format!("{} first term", r.kind));
        }
        if r.bound_right != right {
            notes.push(format!("{} second term {} (reference {})", r.kind, r.bound_right.pretty(), right.pretty()));
        }
    }
    let note = if notes.is_empty() {
        "all 18 terms match".to_string()
    } else {
        format!("non-maximal term differing from reference: {}", notes.join(", "))
    };
    Ok(format!("9 bounds equal their closed forms and sit under their caps; {note}"))
}

fn thickness() -> Outcome {
    let r = certify(12, 12).map_err(|e| e.to_string())?;
    ensure(r.gaps_checked == 4095, format!("{} gaps", r.gaps_checked))?;
    ensure(r.ratio_all_pass, "a gap ratio exceeds lambda")?;
    ensure(r.log_condition_all_pass, "log condition fails")?;
    ensure(r.mirrored_condition_all_pass, "mirrored log condition fails")?;
    ensure(r.type_bound_all_pass, "a ratio exceeds its type bound")?;
    ensure(r.pass, format!("{} failures, first {:?}", r.failure_count, r.failures.first()))?;
    let worst = r.worst_ratio.map(|w| w.ratio.decimal).unwrap_or_default();
    Ok(format!("4095 gaps at depth 12, worst ratio {worst} <= lambda, log conditions hold"))
}

fn oracle_cover() -> Outcome {
    let generation = generate(12).map_err(|e| e.to_string())?;
    for n in 1..=4 {
        let r = level_cover(&generation.levels[3 * n], n).map_err(|e| e.to_string())?;
        ensure(r.pass(), format!("generated level {}: {:?}", 3 * n, r.failures.first()))?;
    }
    let mut total = 0;
    for n in 1..=10 {
        let r = cover_check(n).map_err(|e| e.to_string())?;
        ensure(r.pass(), format!("n = {n}: {} hit of {}, {:?}", r.cylinders_hit, r.cylinders, r.failures.first()))?;
        let count = count_with_prefix(&ROOT_WORD, n + 2);
        ensure(count == r.cylinders.into(), format!("n = {n}: {} cylinders, automaton says {count}", r.cylinders))?;
        total += r.cylinders;
    }
    Ok(format!(
        "A_3n inside the (n+2)-digit cylinders for n <= 10, each cylinder hit; {total} cylinders, counts match the transfer matrix"
    ))
}

fn decomposition() -> Outcome {
    let (lo, hi) = product_interval();
    let scale = 1_000_000_000_000i64;
    let lo_n: BigInt = lo.floor_scaled(&BigInt::from(scale)) + 1;
    let hi_n = hi.floor_scaled(&BigInt::from(scale));
    let (lo_n, hi_n): (i64, i64) = (lo_n.try_into().unwrap(), hi_n.try_into().unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(20240601);
    let threshold = QuadSurd::from_rational(BigRat::new(1.into(), 1_000_000.into()), DEFAULT_DISC).unwrap();
    let mut worst = QuadSurd::from_integer(0, DEFAULT_DISC).unwrap();
    let mut backtracks = 0;
    for i in 0..100 {
        let t = BigRat::new(rng.gen_range(lo_n..=hi_n).into(), scale.into());
        let t = QuadSurd::from_rational(t, DEFAULT_DISC).unwrap();
        let d = decompose(&t, 60).map_err(|e| format!("target {i}: {e}"))?;
        let widths = replay(&t, &d.state.history).map_err(|step| format!("target {i}: containment lost at step {step}"))?;
        ensure(widths.windows(2).all(|p| p[1] < p[0]), format!("target {i}: width not decreasing"))?;
        let last = widths.last().expect("60 steps").clone();
        ensure(last < threshold, format!("target {i}: width {}", last.to_decimal(9)))?;
        backtracks += d.backtracks;
        if last > worst {
            worst = last;
        }
    }
    Ok(format!(
        "100 seeded targets, no Stuck, containment at every step, worst width at depth 60 {} ({backtracks} backtracks)",
        worst.to_decimal(12)
    ))
}

fn witness() -> Outcome {
    let (mu, _) = mu_delta_bounds().map_err(|e| e.to_string())?;
    let r = run_decompose(&mu, 60, 15).map_err(|e| e.to_string())?;
    let w = &r.witness;
    ensure(w.digits >= 10_000, format!("only {} digits", w.digits))?;
    ensure(w.pattern_violations.is_empty(), format!("{:?}", w.pattern_violations))?;
    ensure(w.junctions.len() == 5, format!("{} junctions checked", w.junctions.len()))?;
    ensure(w.distances_decreasing, "junction distances do not strictly decrease")?;
    ensure(w.junctions.iter().all(|j| j.within_bound), "a junction distance exceeds its cylinder bound")?;
    ensure(w.sample_failures.is_empty(), format!("non-junction products above mu at {:?}", w.sample_failures))?;
    ensure(r.pass, "witness report fails")?;
    let distances: Vec<&str> = w.junctions.iter().map(|j| j.distance.as_str()).collect();
    Ok(format!(
        "{} digits, (4,4) only at junctions, no 4,1,4,1,4; distances {}; {} non-junction products, max {} <= mu",
        w.digits,
        distances.join(" > "),
        w.sampled,
        w.worst_sample.as_ref().map(|(_, v)| v.as_str()).unwrap_or("-")
    ))
}

fn properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let d = DEFAULT_DISC;
    let mut cases = 0;
    for _ in 0..300 {
        let mut surd = || {
            QuadSurd::from_parts(
                rng.gen_range(-500..500).into(),
                rng.gen_range(-50..50).into(),
                rng.gen_range(1..300).into(),
                d,
            )
            .unwrap()
        };
        let (x, y, z) = (surd(), surd(), surd());
        ensure(&x * &(&y + &z) == &(&x * &y) + &(&x * &z), "distributivity")?;
        ensure(&(&x * &y) * &z == &x * &(&y * &z), "associativity")?;
        if !z.is_zero() {
            ensure(&(&x / &z) * &z == x, "division")?;
        }
        cases += 1;
    }
    for _ in 0..300 {
        let len = rng.gen_range(2..50);
        let digits: Vec<u32> = (0..len).map(|k| if k == 0 { 4 } else { rng.gen_range(1..=4) }).collect();
        let w = CfWord::new(digits).unwrap();
        let c = convergents(&w);
        for k in 0..c.len() as isize {
            let det = c.p_at(k) * c.q_at(k - 1) - c.p_at(k - 1) * c.q_at(k);
            let expect = if k % 2 == 0 { -BigInt::one() } else { BigInt::one() };
            ensure(det == expect, format!("determinant at {k} of {w}"))?;
        }
        let eps = epsilon_seq(&w).unwrap();
        let (fifth, one) = (BigRat::new(1.into(), 5.into()), BigRat::one());
        ensure(eps[1..].iter().all(|e| *e >= fifth && *e <= one), format!("epsilon range of {w}"))?;
        let period: Vec<u32> = (0..rng.gen_range(1..7)).map(|_| rng.gen_range(1..=5)).collect();
        let x = eval_periodic(&PeriodicCf::purely(period.clone()).unwrap()).unwrap();
        ensure((Mobius::of_digits(&period).apply(&x).unwrap() - x).is_zero(), "fixed-point residual")?;
        cases += 1;
    }
    let mut previous = enumerate_cn(1).unwrap();
    for n in 2..=8 {
        let cyl = enumerate_cn(n).unwrap();
        ensure(cylinders_disjoint(&cyl), format!("C_{n} not disjoint"))?;
        ensure(cylinders_nested(&previous, &cyl), format!("C_{n} not nested"))?;
        previous = cyl;
    }
    ensure(admissible(&cylinder(&[4, 3, 4, 1, 4]).unwrap().word), "cylinder word")?;
    Ok(format!(
        "{cases} seeded cases of field axioms, determinant, epsilon range, fixed point; C_2..C_8 disjoint and nested (full suites: cargo test --test properties)"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("1 exact constants", exact_constants),
        ("2 nine-type bound table", type_table),
        ("3 thickness certification at depth 12", thickness),
        ("4 oracle equivalence n <= 10", oracle_cover),
        ("5 decomposition of 100 targets", decomposition),
        ("6 witness word for mu", witness),
        ("7 property suites", properties),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {name}: {detail} [{secs:.1}s]"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why} [{secs:.1}s]");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
