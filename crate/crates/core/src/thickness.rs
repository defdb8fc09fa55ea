//! Thickness certificates: per-type ratio bounds, the global constant λ,
//! exact gap ratios of the construction, and the log-scale gap condition.

use std::sync::OnceLock;

use num_bigint::BigInt;
use serde::Serialize;

use crate::cantor::{root_segment, subdivide_level, Gap, Segment, SegmentType};
use crate::cf::eval_periodic_in;
use crate::constants;
use crate::error::{Error, Result};
use crate::exact::{BigRat, QuadSurd, DEFAULT_DISC};
use crate::report::{CheckRecord, ExactValue};

/// Deepest level [`certify`] accepts.
pub const CERTIFY_DEPTH_LIMIT: u32 = 24;
/// Failures kept verbatim in a report; the rest are only counted.
const FAILURES_KEPT: usize = 50;

fn int(n: i64) -> QuadSurd {
    QuadSurd::from_integer(n, DEFAULT_DISC).expect("valid radicand")
}

fn rat(n: i64, d: i64) -> QuadSurd {
    QuadSurd::from_rational(BigRat::new(n.into(), d.into()), DEFAULT_DISC).expect("valid radicand")
}

/// The four tails bounding the children of a rule, read after the parent's
/// base word and sorted `a < b < c < d`.
#[derive(Clone, Debug)]
pub struct RuleTails {
    pub values: [QuadSurd; 4],
    /// Rule position (0 or 1) of the child whose tails are `a` and `b`.
    pub low_child: usize,
}

pub fn rule_tails(kind: SegmentType) -> Result<RuleTails> {
    let mut tagged = Vec::with_capacity(4);
    for (pos, (ext, child)) in kind.rule().into_iter().enumerate() {
        for tail in [child.tail_low(), child.tail_high()] {
            tagged.push((eval_periodic_in(&tail.prepend(ext)?, DEFAULT_DISC)?, pos));
        }
    }
    tagged.sort_by(|x, y| x.0.partial_cmp(&y.0).expect("same field"));
    if tagged[0].1 != tagged[1].1 || tagged[2].1 != tagged[3].1 {
        return Err(Error::TailOrder);
    }
    let low_child = tagged[0].1;
    let values: Vec<QuadSurd> = tagged.into_iter().map(|(x, _)| x).collect();
    Ok(RuleTails { values: values.try_into().expect("four tails"), low_child })
}

fn cached_rule_tails(kind: SegmentType) -> &'static RuleTails {
    static CACHE: OnceLock<Vec<RuleTails>> = OnceLock::new();
    let all = CACHE.get_or_init(|| {
        SegmentType::ALL
            .iter()
            .map(|&t| rule_tails(t).expect("static rule"))
            .collect()
    });
    &all[kind.id() as usize - 1]
}

fn check_order(a: &QuadSurd, b: &QuadSurd, c: &QuadSurd, d: &QuadSurd) -> Result<()> {
    if a < b && b < c && c < d {
        Ok(())
    } else {
        Err(Error::TailOrder)
    }
}

/// The two bound expressions for tails `a < b < c < d`:
/// `(a+1)(c−b)/((c+1)(b−a))` and `(5d+1)(c−b)/((5b+1)(d−c))`.
pub fn lemma3_terms(a: &QuadSurd, b: &QuadSurd, c: &QuadSurd, d: &QuadSurd) -> Result<(QuadSurd, QuadSurd)> {
    check_order(a, b, c, d)?;
    let one = int(1);
    let five = int(5);
    let cb = c.checked_sub(b)?;
    let first = (a + &one) * &cb / ((c + &one) * (b - a));
    let second = (&five * d + &one) * &cb / ((&five * b + &one) * (d - c));
    Ok((first, second))
}

/// Larger of the two [`lemma3_terms`].
pub fn lemma3_bound(a: &QuadSurd, b: &QuadSurd, c: &QuadSurd, d: &QuadSurd) -> Result<QuadSurd> {
    let (x, y) = lemma3_terms(a, b, c, d)?;
    Ok(x.max_of(&y).clone())
}

/// Gap-to-child ratios for a parent whose base word has `ε = q_{n-1}/q_n`:
/// `(a+ε)(c−b)/((c+ε)(b−a))` against the child over `a, b` and
/// `(d+ε)(c−b)/((b+ε)(d−c))` against the child over `c, d`.
pub fn ratios_at_epsilon(tails: &[QuadSurd; 4], eps: &QuadSurd) -> Result<(QuadSurd, QuadSurd)> {
    let [a, b, c, d] = tails;
    check_order(a, b, c, d)?;
    let cb = c.checked_sub(b)?;
    let low = (a + eps) * &cb / ((c + eps) * (b - a));
    let high = (d + eps) * &cb / ((b + eps) * (d - c));
    Ok((low, high))
}

/// The two bound expressions of one segment type with the cap they must
/// stay below.
#[derive(Clone, Debug)]
pub struct RatioBoundRecord {
    pub kind: SegmentType,
    pub tails: [QuadSurd; 4],
    pub bound_left: QuadSurd,
    pub bound_right: QuadSurd,
    pub cap: BigRat,
}

impl RatioBoundRecord {
    pub fn max(&self) -> &QuadSurd {
        self.bound_left.max_of(&self.bound_right)
    }

    pub fn within_cap(&self) -> bool {
        let cap = QuadSurd::from_rational(self.cap.clone(), DEFAULT_DISC).expect("valid radicand");
        self.max() <= &cap
    }
}

pub fn ratio_bounds() -> Result<Vec<RatioBoundRecord>> {
    SegmentType::ALL
        .iter()
        .zip(constants::TYPE_BOUNDS)
        .map(|(&kind, (_, _, cap))| {
            let tails = cached_rule_tails(kind).values.clone();
            let [a, b, c, d] = &tails;
            let (bound_left, bound_right) = lemma3_terms(a, b, c, d)?;
            Ok(RatioBoundRecord {
                kind,
                tails,
                bound_left,
                bound_right,
                cap: BigRat::new(cap.into(), 1000.into()),
            })
        })
        .collect()
}

/// λ: the largest bound over all nine types.
pub fn global_lambda() -> Result<QuadSurd> {
    let records = ratio_bounds()?;
    let mut best = records[0].max().clone();
    for r in &records[1..] {
        if r.max() > &best {
            best = r.max().clone();
        }
    }
    Ok(best)
}

/// `1/λ`, a lower bound for the thickness.
pub fn tau_lower() -> Result<QuadSurd> {
    global_lambda()?.recip()
}

/// `|G|/|left child|` and `|G|/|right child|`.
pub fn gap_ratios_exact(left: &Segment, gap: &Gap, right: &Segment) -> Result<(QuadSurd, QuadSurd)> {
    let s = &gap.hi - &gap.lo;
    let (l, r) = (left.length(), right.length());
    if !l.is_positive() {
        return Err(Error::Degenerate { depth: left.depth, index: left.index });
    }
    if !r.is_positive() {
        return Err(Error::Degenerate { depth: right.depth, index: right.index });
    }
    Ok((s.checked_div(&l)?, s.checked_div(&r)?))
}

/// The same ratios as [`gap_ratios_exact`], from the parent's tails and
/// `ε` alone, in (left, right) order.
pub fn epsilon_ratios(parent: &Segment) -> Result<(QuadSurd, QuadSurd)> {
    let tails = cached_rule_tails(parent.kind);
    let eps = QuadSurd::from_rational(parent.epsilon(), DEFAULT_DISC)?;
    let (low, high) = ratios_at_epsilon(&tails.values, &eps)?;
    // the child over the two smallest tails sits left when values grow with the tail
    Ok(if parent.ascending { (low, high) } else { (high, low) })
}

/// Sufficient condition for `|log J2| ≤ min(|log J1|, |log J3|)` with
/// `J1 = (a, a+r)`, `J2 = (a+r, a+r+s)`, `J3 = (a+r+s, a+r+s+t)`:
/// `s ≤ r` and `s² + (a+r)s − (a+r)t ≤ 0`.
pub fn log_gap_condition(a: &QuadSurd, r: &QuadSurd, s: &QuadSurd, t: &QuadSurd) -> Result<bool> {
    if !a.is_positive() || !r.is_positive() || !t.is_positive() || s.is_negative() {
        return Err(Error::Domain("log gap condition needs a, r, t > 0 and s >= 0".into()));
    }
    if s > r {
        return Ok(false);
    }
    let ar = a.checked_add(r)?;
    let poly = s * s + &ar * s - &ar * t;
    Ok(!poly.is_positive())
}

/// [`log_gap_condition`] for the picture reflected by `x ↦ 1/x`, which keeps
/// log-lengths and swaps the roles of the two neighbours.
pub fn mirrored_log_gap_condition(left: &Segment, right: &Segment) -> Result<bool> {
    let a = right.hi.recip()?;
    let r = right.lo.recip()? - &a;
    let s = left.hi.recip()? - right.lo.recip()?;
    let t = left.lo.recip()? - left.hi.recip()?;
    log_gap_condition(&a, &r, &s, &t)
}

/// The three facts excluding a long right neighbour in the log-scale
/// argument.
#[derive(Clone, Debug, Serialize)]
pub struct GammaCheck {
    pub gamma: ExactValue,
    /// `γ = ((2/λ − 1)² − 1)/4` exactly.
    pub identity: bool,
    /// γ equals the reference closed form.
    pub closed_form: bool,
    /// `γ · min T[4,3] > 7/100`.
    pub exceeds_seven_hundredths: bool,
    /// `|T[4,3]| < 7/100`.
    pub root_shorter: bool,
    pub pass: bool,
}

/// `((2/λ − 1)² − 1)/4`.
pub fn gamma_from_lambda(lambda: &QuadSurd) -> Result<QuadSurd> {
    let x = int(2).checked_div(lambda)? - int(1);
    Ok((&x * &x - int(1)) / int(4))
}

pub fn gamma_exclusion_check(digits: usize) -> Result<GammaCheck> {
    let lambda = global_lambda()?;
    let gamma: QuadSurd = constants::GAMMA.parse()?;
    let root = root_segment();
    let seven = rat(7, 100);
    let identity = gamma == gamma_from_lambda(&lambda)?;
    let closed_form = gamma == gamma_from_lambda(&constants::LAMBDA.parse()?)?;
    let exceeds = &gamma * &root.lo > seven;
    let shorter = root.length() < seven;
    Ok(GammaCheck {
        gamma: ExactValue::of(&gamma, digits),
        identity,
        closed_form,
        exceeds_seven_hundredths: exceeds,
        root_shorter: shorter,
        pass: identity && closed_form && exceeds && shorter,
    })
}

/// Cross-checks of the root endpoints, λ, τ and γ against their reference
/// closed forms.
pub fn constant_checks(digits: usize) -> Result<Vec<CheckRecord>> {
    let root = root_segment();
    let lambda = global_lambda()?;
    let tau = lambda.recip()?;
    let gamma = gamma_from_lambda(&lambda)?;
    let expect = |name: &str, value: &QuadSurd, text: &str| -> Result<CheckRecord> {
        let want: QuadSurd = text.parse()?;
        Ok(CheckRecord::new(name, value, want.pretty(), digits, value == &want))
    };
    let one = int(1);
    Ok(vec![
        expect("root_lo", &root.lo, constants::ROOT_LO)?,
        expect("root_hi", &root.hi, constants::ROOT_HI)?,
        CheckRecord::new("root_length", &root.length(), "< 7/100", digits, root.length() < rat(7, 100)),
        expect("lambda", &lambda, constants::LAMBDA)?,
        expect("tau_lower", &tau, constants::TAU_LOWER)?,
        CheckRecord::new("tau_lower_exceeds_one", &tau, "> 1", digits, tau > one),
        expect("gamma", &gamma, constants::GAMMA)?,
        CheckRecord::new(
            "gamma_times_root_lo",
            &(&gamma * &root.lo),
            "> 7/100",
            digits,
            &gamma * &root.lo > rat(7, 100),
        ),
    ])
}

/// One row of the bound table in a report.
#[derive(Clone, Debug, Serialize)]
pub struct BoundRow {
    pub type_id: u8,
    pub bound_left: ExactValue,
    pub bound_right: ExactValue,
    /// Each term against its reference closed form.
    pub bound_left_matches: bool,
    pub bound_right_matches: bool,
    /// The larger term against the larger reference term.
    pub max_matches: bool,
    pub cap: String,
    /// `max_matches` and the larger term is within the cap.
    pub pass: bool,
}

pub fn bound_rows(digits: usize) -> Result<Vec<BoundRow>> {
    ratio_bounds()?
        .iter()
        .zip(constants::TYPE_BOUNDS)
        .map(|(r, (left, right, cap))| {
            let (left, right): (QuadSurd, QuadSurd) = (left.parse()?, right.parse()?);
            let max_matches = r.max() == left.max_of(&right);
            Ok(BoundRow {
                type_id: r.kind.id(),
                bound_left: ExactValue::of(&r.bound_left, digits),
                bound_right: ExactValue::of(&r.bound_right, digits),
                bound_left_matches: r.bound_left == left,
                bound_right_matches: r.bound_right == right,
                max_matches,
                cap: format!("{cap}/1000"),
                pass: max_matches && r.within_cap(),
            })
        })
        .collect()
}

/// A gap that failed a check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapFailure {
    pub depth: u32,
    pub index: u64,
    pub check: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct WorstGap {
    pub ratio: ExactValue,
    pub depth: u32,
    pub index: u64,
    pub side: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertReport {
    pub depth: u32,
    pub gaps_checked: u64,
    pub lambda: ExactValue,
    pub tau_lower: ExactValue,
    pub worst_ratio: Option<WorstGap>,
    /// Every gap ratio is at most λ.
    pub ratio_all_pass: bool,
    /// Every gap ratio is at most the bound of its parent's type, and agrees
    /// with the ratio rebuilt from the parent's `ε`.
    pub type_bound_all_pass: bool,
    pub log_condition_all_pass: bool,
    pub mirrored_condition_all_pass: bool,
    pub gamma: GammaCheck,
    pub bounds: Vec<BoundRow>,
    pub checks: Vec<CheckRecord>,
    pub failure_count: u64,
    pub failures: Vec<GapFailure>,
    pub pass: bool,
}

/// Per-gap outcome before reduction.
struct GapOutcome {
    depth: u32,
    index: u64,
    worst: QuadSurd,
    side: &'static str,
    failures: Vec<&'static str>,
}

fn check_gap(
    parent: &Segment,
    left: &Segment,
    gap: &Gap,
    right: &Segment,
    lambda: &QuadSurd,
    type_bounds: &[QuadSurd],
) -> Result<GapOutcome> {
    let (rl, rr) = gap_ratios_exact(left, gap, right)?;
    let mut failures = Vec::new();
    if rl > *lambda || rr > *lambda {
        failures.push("ratio exceeds lambda");
    }
    let bound = &type_bounds[parent.kind.id() as usize - 1];
    if rl > *bound || rr > *bound {
        failures.push("ratio exceeds type bound");
    }
    if epsilon_ratios(parent)? != (rl.clone(), rr.clone()) {
        failures.push("ratio differs from epsilon form");
    }
    let a = &left.lo;
    let r = left.length();
    let s = &gap.hi - &gap.lo;
    let t = right.length();
    if !log_gap_condition(a, &r, &s, &t)? {
        failures.push("log condition");
    }
    if !mirrored_log_gap_condition(left, right)? {
        failures.push("mirrored log condition");
    }
    let (worst, side) = if rl >= rr { (rl, "left") } else { (rr, "right") };
    Ok(GapOutcome { depth: gap.depth, index: gap.index, worst, side, failures })
}

/// Builds the construction to `depth` and checks every gap.
pub fn certify(depth: u32, digits: usize) -> Result<CertReport> {
    certify_against(depth, digits, &global_lambda()?)
}

/// [`certify`] with the ratio threshold replaced by `lambda`; a smaller
/// value must make the report fail.
pub fn certify_against(depth: u32, digits: usize, lambda: &QuadSurd) -> Result<CertReport> {
    use rayon::prelude::*;

    if depth == 0 {
        return Err(Error::Domain("certify needs depth >= 1".into()));
    }
    if depth > CERTIFY_DEPTH_LIMIT {
        return Err(Error::DepthLimit { requested: depth, limit: CERTIFY_DEPTH_LIMIT });
    }
    let type_bounds: Vec<QuadSurd> = ratio_bounds()?.iter().map(|r| r.max().clone()).collect();

    let mut level = vec![root_segment()];
    let mut outcomes: Vec<GapOutcome> = Vec::new();
    for _ in 0..depth {
        let (children, gaps) = subdivide_level(&level)?;
        let batch: Vec<GapOutcome> = level
            .par_iter()
            .zip(gaps.par_iter())
            .enumerate()
            .map(|(k, (parent, gap))| {
                check_gap(parent, &children[2 * k], gap, &children[2 * k + 1], lambda, &type_bounds)
            })
            .collect::<Result<_>>()?;
        outcomes.extend(batch);
        level = children;
    }

    let mut worst: Option<&GapOutcome> = None;
    let mut failures = Vec::new();
    let mut failure_count = 0u64;
    let (mut ratio_ok, mut type_ok, mut log_ok, mut mirror_ok) = (true, true, true, true);
    for o in &outcomes {
        if worst.is_none_or(|w| o.worst > w.worst) {
            worst = Some(o);
        }
        for &f in &o.failures {
            match f {
                "ratio exceeds lambda" => ratio_ok = false,
                "log condition" => log_ok = false,
                "mirrored log condition" => mirror_ok = false,
                _ => type_ok = false,
            }
            failure_count += 1;
            if failures.len() < FAILURES_KEPT {
                failures.push(GapFailure { depth: o.depth, index: o.index, check: f.to_string() });
            }
        }
    }

    let tau = lambda.recip()?;
    let gamma = gamma_exclusion_check(digits)?;
    let bounds = bound_rows(digits)?;
    let mut checks = constant_checks(digits)?;
    checks.push(CheckRecord::new(
        "lambda_used",
        lambda,
        constants::LAMBDA.parse::<QuadSurd>()?.pretty(),
        digits,
        lambda == &constants::LAMBDA.parse::<QuadSurd>()?,
    ));
    let pass = ratio_ok
        && type_ok
        && log_ok
        && mirror_ok
        && gamma.pass
        && bounds.iter().all(|b| b.pass)
        && checks.iter().all(|c| c.pass);
    Ok(CertReport {
        depth,
        gaps_checked: outcomes.len() as u64,
        lambda: ExactValue::of(lambda, digits),
        tau_lower: ExactValue::of(&tau, digits),
        worst_ratio: worst.map(|w| WorstGap {
            ratio: ExactValue::of(&w.worst, digits),
            depth: w.depth,
            index: w.index,
            side: w.side,
        }),
        ratio_all_pass: ratio_ok,
        type_bound_all_pass: type_ok,
        log_condition_all_pass: log_ok,
        mirrored_condition_all_pass: mirror_ok,
        gamma,
        bounds,
        checks,
        failure_count,
        failures,
        pass,
    })
}

/// `x ↦ x/2`, handy for tampering tests.
pub fn halve(x: &QuadSurd) -> QuadSurd {
    x / &QuadSurd::from_rational(BigRat::from(BigInt::from(2)), x.disc()).expect("valid radicand")
}
