//! Products of two elements of the Cantor set: the product interval, the
//! μ and δ bounds, a refinement search that pins down `x · y = target`,
//! and the interleaved witness word built from `x` and `y`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::cantor::{root_segment, subdivide, Segment};
use crate::cf::{eval_digits, eval_periodic_in, to_dirichlet, Mobius, PeriodicCf};
use crate::constants;
use crate::error::{Error, Result};
use crate::exact::{compare_across_fields, BigRat, QuadSurd, DEFAULT_DISC};
use crate::report::{CheckRecord, ExactValue};
use crate::subshift::FORBIDDEN;

/// Default stride `c` of the cut rule.
pub const CUT_STRIDE: usize = 3;
/// Digits kept on each side when a Perron product is truncated.
pub const PERRON_WINDOW: usize = 48;

/// `[lo², hi²]` for the root segment `T[4,3] = [lo, hi]`.
pub fn product_interval() -> (QuadSurd, QuadSurd) {
    let root = root_segment();
    (&root.lo * &root.lo, &root.hi * &root.hi)
}

/// `μ = [(4;1,4,1,3,1)] · [(3;1,4,1,4,1)]` and `δ = μ/(1+μ)`.
pub fn mu_delta_bounds() -> Result<(QuadSurd, QuadSurd)> {
    let top = eval_periodic_in(&PeriodicCf::purely(vec![4, 1, 4, 1, 3, 1])?, DEFAULT_DISC)?;
    let second = eval_periodic_in(&PeriodicCf::purely(vec![3, 1, 4, 1, 4, 1])?, DEFAULT_DISC)?;
    let mu = top.checked_mul(&second)?;
    let delta = to_dirichlet(&mu)?;
    Ok((mu, delta))
}

/// Exact checks on the product interval and the μ, δ bounds.
pub fn product_checks(digits: usize) -> Result<Vec<CheckRecord>> {
    let (lo, hi) = product_interval();
    let (mu, delta) = mu_delta_bounds()?;
    let reference_lo: QuadSurd = constants::PRODUCT_LO.parse()?;
    let reference_hi: QuadSurd = constants::PRODUCT_HI.parse()?;
    let reference_delta: QuadSurd = constants::DELTA.parse()?;
    let ceiling = QuadSurd::parse_in(constants::TEN_PLUS_SIX_ROOT_TWO, 2)?;
    let below = compare_across_fields(&mu, &ceiling, 200) == Some(Ordering::Less);
    let ceiling_inside = compare_across_fields(&lo, &ceiling, 200) == Some(Ordering::Less)
        && compare_across_fields(&ceiling, &hi, 200) == Some(Ordering::Less);
    Ok(vec![
        CheckRecord::new("product_lo", &lo, constants::PRODUCT_LO, digits, lo == reference_lo),
        CheckRecord::new("product_hi", &hi, constants::PRODUCT_HI, digits, hi == reference_hi),
        CheckRecord::new("mu", &mu, "< 10+6*sqrt(2), inside the product interval", digits, below && lo < mu && mu < hi),
        CheckRecord::new("delta", &delta, constants::DELTA, digits, delta == reference_delta),
        CheckRecord::new("ten_plus_six_root_two", &ceiling, "inside the product interval", digits, ceiling_inside),
    ])
}

/// A rational within `10^-digits` of `x` (its floor at that scale), for
/// targets whose field differs from the construction's.
pub fn rational_surrogate(x: &QuadSurd, digits: usize) -> BigRat {
    let scale = BigInt::from(10u32).pow(digits as u32);
    BigRat::new(x.floor_scaled(&scale), scale)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Factor {
    X,
    Y,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    Left,
    Right,
}

/// Current pair of segments with the target inside their product.
#[derive(Clone, Debug)]
pub struct ProductState {
    pub seg_x: Segment,
    pub seg_y: Segment,
    pub target: QuadSurd,
    pub history: Vec<(Factor, Side)>,
}

impl ProductState {
    pub fn lo(&self) -> QuadSurd {
        &self.seg_x.lo * &self.seg_y.lo
    }

    pub fn hi(&self) -> QuadSurd {
        &self.seg_x.hi * &self.seg_y.hi
    }

    pub fn width(&self) -> QuadSurd {
        self.hi() - self.lo()
    }

    pub fn contains_target(&self) -> bool {
        product_contains(&self.seg_x, &self.seg_y, &self.target)
    }
}

fn product_contains(x: &Segment, y: &Segment, t: &QuadSurd) -> bool {
    &(&x.lo * &y.lo) <= t && t <= &(&x.hi * &y.hi)
}

/// `hi_a/lo_a < hi_b/lo_b`, decided without division.
fn log_shorter(a: &Segment, b: &Segment) -> bool {
    &a.hi * &b.lo < &b.hi * &a.lo
}

/// One step of a decomposition transcript.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepRecord {
    pub step: usize,
    pub factor: Factor,
    pub side: Side,
    pub kind: u8,
    pub lo: String,
    pub hi: String,
    pub width: String,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub state: ProductState,
    pub steps: Vec<StepRecord>,
    /// Dead ends abandoned on the way.
    pub backtracks: usize,
}

struct Frame {
    x: Segment,
    y: Segment,
    moves: Vec<(Factor, Side, Segment)>,
}

impl Frame {
    fn new(x: Segment, y: Segment, t: &QuadSurd) -> Result<Self> {
        let factor = if log_shorter(&x, &y) { Factor::Y } else { Factor::X };
        let moves = moves_for(&x, &y, factor, t)?;
        Ok(Frame { x, y, moves })
    }
}

/// Children of `factor` whose product with the other factor still holds
/// `t`, in the order they are popped.
fn moves_for(x: &Segment, y: &Segment, factor: Factor, t: &QuadSurd) -> Result<Vec<(Factor, Side, Segment)>> {
    let (split, other) = match factor {
        Factor::X => (x, y),
        Factor::Y => (y, x),
    };
    let (left, _, right) = subdivide(split)?;
    let fits = |c: &Segment| match factor {
        Factor::X => product_contains(c, other, t),
        Factor::Y => product_contains(other, c, t),
    };
    let mut out = Vec::with_capacity(2);
    // shorter child first, left on ties
    let order = if log_shorter(&right, &left) {
        [(Side::Left, left), (Side::Right, right)]
    } else {
        [(Side::Right, right), (Side::Left, left)]
    };
    // popped from the back
    for (side, seg) in order {
        if fits(&seg) {
            out.push((factor, side, seg));
        }
    }
    Ok(out)
}

/// Refines `x, y ∈ T[4,3]` for `depth` steps keeping `target` inside
/// `[x.lo·y.lo, x.hi·y.hi]`. Each step splits the factor that is longer on
/// a log scale. When neither child fits, no `y` in the other factor's part
/// of the set can pair with the current `x` range, so the search backtracks.
pub fn decompose(target: &QuadSurd, depth: usize) -> Result<Decomposition> {
    decompose_until(target, depth, None)
}

/// Like [`decompose`], stopping early once the product width is below
/// `width`.
pub fn decompose_until(target: &QuadSurd, depth: usize, width: Option<&BigRat>) -> Result<Decomposition> {
    let (lo, hi) = product_interval();
    if target < &lo || target > &hi {
        return Err(Error::Domain(format!(
            "target {} lies outside the product interval",
            target.to_decimal(12)
        )));
    }
    let width = width.map(|w| QuadSurd::from_rational(w.clone(), DEFAULT_DISC)).transpose()?;
    let root = root_segment();
    let mut stack = vec![Frame::new(root.clone(), root, target)?];
    let mut path: Vec<(Factor, Side)> = Vec::new();
    let mut backtracks = 0;
    let mut deepest = 0;
    while path.len() < depth {
        if let Some(w) = &width {
            let top = stack.last().expect("non-empty stack");
            if &(&top.x.hi * &top.y.hi - &top.x.lo * &top.y.lo) < w {
                break;
            }
        }
        let top = stack.last_mut().expect("non-empty stack");
        if let Some((factor, side, seg)) = top.moves.pop() {
            let (x, y) = match factor {
                Factor::X => (seg, top.y.clone()),
                Factor::Y => (top.x.clone(), seg),
            };
            stack.push(Frame::new(x, y, target)?);
            path.push((factor, side));
            deepest = deepest.max(path.len());
        } else {
            stack.pop();
            path.pop();
            backtracks += 1;
            if stack.is_empty() {
                return Err(Error::Stuck { step: deepest });
            }
        }
    }
    let steps = stack
        .iter()
        .skip(1)
        .zip(&path)
        .enumerate()
        .map(|(i, (f, &(factor, side)))| {
            let seg = match factor {
                Factor::X => &f.x,
                Factor::Y => &f.y,
            };
            let w = &f.x.hi * &f.y.hi - &f.x.lo * &f.y.lo;
            StepRecord {
                step: i + 1,
                factor,
                side,
                kind: seg.kind.id(),
                lo: seg.lo.pretty(),
                hi: seg.hi.pretty(),
                width: w.to_decimal(12),
            }
        })
        .collect();
    let last = stack.pop().expect("non-empty stack");
    Ok(Decomposition {
        state: ProductState { seg_x: last.x, seg_y: last.y, target: target.clone(), history: path },
        steps,
        backtracks,
    })
}

/// Replays a history from the root, returning the product widths after each
/// step, or the first step (from 1) at which the target falls outside.
pub fn replay(target: &QuadSurd, history: &[(Factor, Side)]) -> std::result::Result<Vec<QuadSurd>, usize> {
    let root = root_segment();
    let (mut x, mut y) = (root.clone(), root);
    let mut widths = Vec::with_capacity(history.len());
    for (i, &(factor, side)) in history.iter().enumerate() {
        let seg = match factor {
            Factor::X => &x,
            Factor::Y => &y,
        };
        let (l, _, r) = subdivide(seg).map_err(|_| i + 1)?;
        let child = match side {
            Side::Left => l,
            Side::Right => r,
        };
        match factor {
            Factor::X => x = child,
            Factor::Y => y = child,
        }
        if !product_contains(&x, &y, target) {
            return Err(i + 1);
        }
        widths.push(&x.hi * &y.hi - &x.lo * &y.lo);
    }
    Ok(widths)
}

/// The continued fraction of the segment's left endpoint, an element of the
/// Cantor set.
pub fn lower_expansion(s: &Segment) -> Result<PeriodicCf> {
    let tail = if s.ascending { s.kind.tail_low() } else { s.kind.tail_high() };
    tail.prepend(&s.prefix)
}

/// `n_i` = first index `≥ i·stride` whose digit is not 4, for `i = 1..=blocks`.
pub fn choose_cuts(x: &PeriodicCf, blocks: usize, stride: usize) -> Vec<usize> {
    (1..=blocks)
        .map(|i| (i * stride..).find(|&k| x.digit(k) != 4).expect("no run of 4s"))
        .collect()
}

/// The interleaved word `x = [S_1, S_2, ...]` with
/// `S_i = (x_{n_i}, ..., x_1, x_0, y_0, y_1, ..., y_{m_i})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessWord {
    pub digits: Vec<u32>,
    /// Index of `x_0` inside each block.
    pub junctions: Vec<usize>,
    /// `(n_i, m_i)`.
    pub cuts: Vec<(usize, usize)>,
    /// Start of each block.
    pub starts: Vec<usize>,
}

impl WitnessWord {
    pub fn block(&self, i: usize) -> &[u32] {
        let end = self.starts.get(i + 1).copied().unwrap_or(self.digits.len());
        &self.digits[self.starts[i]..end]
    }

    /// Every `(4,4)` position, every forbidden `(4,1,4,1,4)` position, and
    /// cut digits equal to 4, as messages. Empty when the word is as built.
    pub fn pattern_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let d = &self.digits;
        let pairs: Vec<usize> = (0..d.len().saturating_sub(1)).filter(|&k| d[k] == 4 && d[k + 1] == 4).collect();
        if pairs != self.junctions {
            out.push(format!("(4,4) at {pairs:?}, junctions at {:?}", self.junctions));
        }
        let long = FORBIDDEN[1];
        for k in 0..d.len().saturating_sub(long.len() - 1) {
            if &d[k..k + long.len()] == long {
                out.push(format!("(4,1,4,1,4) at {k}"));
            }
        }
        for i in 0..self.starts.len() {
            let b = self.block(i);
            if b[0] == 4 || b[b.len() - 1] == 4 {
                out.push(format!("block {} has a cut digit 4", i + 1));
            }
        }
        out
    }
}

/// Concatenates the blocks for the given cuts `(n_i, m_i)`.
pub fn interleave(x: &[u32], y: &[u32], cuts: &[(usize, usize)]) -> Result<WitnessWord> {
    let mut w = WitnessWord { digits: Vec::new(), junctions: Vec::new(), cuts: cuts.to_vec(), starts: Vec::new() };
    for (i, &(n, m)) in cuts.iter().enumerate() {
        if i > 0 && (n <= cuts[i - 1].0 || m <= cuts[i - 1].1) {
            return Err(Error::Domain(format!("cuts are not strictly increasing at block {}", i + 1)));
        }
        for (digits, k) in [(x, n), (y, m)] {
            match digits.get(k) {
                None => return Err(Error::IndexOutOfRange { index: k, len: digits.len() }),
                Some(4) => return Err(Error::BadCut { block: i + 1, index: k }),
                Some(_) => {}
            }
        }
        w.starts.push(w.digits.len());
        w.digits.extend(x[..=n].iter().rev());
        w.junctions.push(w.digits.len() - 1);
        w.digits.extend(&y[..=m]);
    }
    Ok(w)
}

/// Witness word for `x` and `y` with `blocks` blocks under the stride rule.
pub fn build_witness(x: &PeriodicCf, y: &PeriodicCf, blocks: usize, stride: usize) -> Result<WitnessWord> {
    let n = choose_cuts(x, blocks, stride);
    let m = choose_cuts(y, blocks, stride);
    let len = n.last().max(m.last()).map_or(0, |k| k + 1);
    interleave(&x.take(len), &y.take(len), &n.into_iter().zip(m).collect::<Vec<_>>())
}

/// Smallest number of blocks whose word has at least `len` digits.
pub fn blocks_for_length(len: usize, stride: usize) -> usize {
    let mut total = 0;
    (1..)
        .find(|&i| {
            total += 2 * i * stride + 4;
            total >= len
        })
        .expect("unbounded")
}

/// Enclosure of `[d_0; d_1, ...]` from its first `take` digits: the tail
/// after them lies in `[1, 5]` (or is absent when the slice ends).
fn enclose(digits: &[u32], take: usize) -> (BigRat, BigRat) {
    if digits.len() <= take {
        let v = eval_digits(digits);
        return (v.clone(), v);
    }
    let m = Mobius::of_digits(&digits[..take]);
    let a = m.apply_rat(&BigRat::one()).expect("positive tail");
    let b = m.apply_rat(&BigRat::from_integer(5.into())).expect("positive tail");
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Perron product `ρ_k` of a finite word, each side truncated to `take`
/// digits: the truncated value and an interval holding the product for any
/// continuation of the truncated sides by digits 1 to 4.
pub fn perron_enclosure(w: &[u32], k: usize, take: usize) -> (BigRat, BigRat, BigRat) {
    let back: Vec<u32> = w[..=k].iter().rev().take(take + 1).copied().collect();
    let fwd = &w[k + 1..(k + 2 + take).min(w.len())];
    let point = eval_digits(&back[..back.len().min(take)]) * eval_digits(&fwd[..fwd.len().min(take)]);
    let (b0, b1) = enclose(&back, take);
    let (f0, f1) = enclose(fwd, take);
    (point, b0 * f0, b1 * f1)
}

/// `[lo, hi]` of all values `[w_0; ..., w_n, t]` with `t ∈ [1, 5]`.
fn plain_cylinder(w: &[u32]) -> (BigRat, BigRat) {
    enclose(&[w, &[1]].concat(), w.len())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JunctionRecord {
    pub block: usize,
    pub index: usize,
    pub rho: String,
    pub distance: String,
    /// Width of the product of the plain cylinders of `x_0..x_{n_i}` and
    /// `y_0..y_{m_i}`; the distance must not exceed it.
    pub bound: String,
    pub within_bound: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub digits: usize,
    pub blocks: usize,
    pub junctions: Vec<JunctionRecord>,
    pub distances_decreasing: bool,
    pub sampled: usize,
    pub worst_sample: Option<(usize, String)>,
    pub sample_failures: Vec<usize>,
    pub pattern_violations: Vec<String>,
    pub pass: bool,
}

/// Checks the witness word against `target` and the bound `mu`:
/// junction products for blocks `1..=i_max` approach the target with
/// strictly decreasing distance, each within its cylinder bound; at every
/// `sample_step`-th non-junction index the truncated product is at most
/// `mu` plus its enclosure width; the digit patterns are as built.
pub fn verify_construction(
    w: &WitnessWord,
    target: &QuadSurd,
    mu: &QuadSurd,
    i_max: usize,
    sample_step: usize,
    digits: usize,
) -> Result<WitnessReport> {
    let i_max = i_max.min(w.junctions.len().saturating_sub(1));
    let mut junctions = Vec::with_capacity(i_max);
    let mut enclosed = Vec::with_capacity(i_max);
    for i in 0..i_max {
        let k = w.junctions[i];
        let fwd_len = w.digits.len() - k - 1;
        let (point, lo, hi) = perron_enclosure(&w.digits, k, fwd_len.min(4 * PERRON_WINDOW));
        let to = |r: &BigRat| QuadSurd::from_rational(r.clone(), target.disc());
        let d_lo = (to(&lo)? - target.clone()).abs();
        let d_hi = (to(&hi)? - target.clone()).abs();
        let inside = &to(&lo)? <= target && target <= &to(&hi)?;
        let (near, far) = if inside {
            (QuadSurd::from_integer(0, target.disc())?, d_lo.max_of(&d_hi).clone())
        } else {
            (d_lo.min_of(&d_hi).clone(), d_lo.max_of(&d_hi).clone())
        };
        let (n, m) = w.cuts[i];
        let start = w.starts[i];
        let xs: Vec<u32> = w.digits[start..=k].iter().rev().copied().collect();
        let ys = &w.digits[k + 1..=k + 1 + m];
        debug_assert_eq!(xs.len(), n + 1);
        let (x0, x1) = plain_cylinder(&xs);
        let (y0, y1) = plain_cylinder(ys);
        let bound = to(&(x1 * y1 - x0 * y0))?;
        let distance = (to(&point)? - target.clone()).abs();
        junctions.push(JunctionRecord {
            block: i + 1,
            index: k,
            rho: to(&point)?.to_decimal(digits),
            distance: distance.to_decimal(digits),
            within_bound: far <= bound,
            bound: bound.to_decimal(digits),
        });
        enclosed.push((near, far));
    }
    let distances_decreasing = enclosed.windows(2).all(|p| p[1].1 < p[0].0);

    let limit = w.digits.len().saturating_sub(PERRON_WINDOW + 2);
    let mut sampled = 0;
    let mut worst: Option<(usize, BigRat)> = None;
    let mut sample_failures = Vec::new();
    let mut j = 0;
    while j < w.junctions.len() && w.junctions[j] == 0 {
        j += 1;
    }
    for k in (0..limit).step_by(sample_step.max(1)) {
        while j < w.junctions.len() && w.junctions[j] < k {
            j += 1;
        }
        if w.junctions.get(j) == Some(&k) {
            continue;
        }
        sampled += 1;
        let (point, lo, hi) = perron_enclosure(&w.digits, k, PERRON_WINDOW);
        let slack = QuadSurd::from_rational(&hi - &lo, mu.disc())?;
        let rho = QuadSurd::from_rational(point.clone(), mu.disc())?;
        if rho > mu.clone() + slack {
            sample_failures.push(k);
        }
        if worst.as_ref().is_none_or(|(_, v)| &point > v) {
            worst = Some((k, point));
        }
    }
    let pattern_violations = w.pattern_violations();
    let pass = junctions.iter().all(|j| j.within_bound)
        && distances_decreasing
        && sample_failures.is_empty()
        && pattern_violations.is_empty();
    Ok(WitnessReport {
        digits: w.digits.len(),
        blocks: w.junctions.len(),
        junctions,
        distances_decreasing,
        sampled,
        worst_sample: worst.map(|(k, v)| {
            let v = QuadSurd::from_rational(v, DEFAULT_DISC).expect("rational");
            (k, v.to_decimal(digits))
        }),
        sample_failures,
        pattern_violations,
        pass,
    })
}

/// Full run for one target: decomposition to `depth` steps for the
/// transcript, then a deeper refinement (product width below
/// `10^-witness_digits`) to fix `x` and `y` for the witness word.
#[derive(Clone, Debug, Serialize)]
pub struct DecomposeReport {
    pub target: ExactValue,
    /// Distance to the original target when a rational stand-in was used.
    pub surrogate_error: Option<String>,
    pub depth: usize,
    pub steps: Vec<StepRecord>,
    pub backtracks: usize,
    pub width: ExactValue,
    pub x_prefix: Vec<u32>,
    pub y_prefix: Vec<u32>,
    pub witness: WitnessReport,
    pub junction_indices: Vec<usize>,
    pub witness_head: Vec<u32>,
    pub pass: bool,
}

pub const WITNESS_LENGTH: usize = 10_000;
pub const WITNESS_BLOCKS_CHECKED: usize = 5;
pub const WITNESS_WIDTH_DIGITS: usize = 40;
pub const WITNESS_DEPTH_LIMIT: usize = 4000;

pub fn run_decompose(original: &QuadSurd, depth: usize, digits: usize) -> Result<DecomposeReport> {
    let (target, surrogate_error) = if original.disc() != DEFAULT_DISC && !original.is_rational() {
        let r = rational_surrogate(original, 50);
        let t = QuadSurd::from_rational(r, DEFAULT_DISC)?;
        let err = original.checked_sub(&QuadSurd::from_rational(t.rat(), original.disc())?)?;
        (t, Some(err.to_decimal(60)))
    } else {
        (original.with_disc(DEFAULT_DISC)?, None)
    };
    let run = decompose(&target, depth)?;
    let fine_width = BigRat::new(BigInt::one(), BigInt::from(10u32).pow(WITNESS_WIDTH_DIGITS as u32));
    let fine = decompose_until(&target, WITNESS_DEPTH_LIMIT, Some(&fine_width))?;
    let x = lower_expansion(&fine.state.seg_x)?;
    let y = lower_expansion(&fine.state.seg_y)?;
    let w = build_witness(&x, &y, blocks_for_length(WITNESS_LENGTH, CUT_STRIDE), CUT_STRIDE)?;
    let (mu, _) = mu_delta_bounds()?;
    let witness = verify_construction(&w, &target, &mu, WITNESS_BLOCKS_CHECKED, 1, digits)?;
    let width = run.state.width();
    let pass = run.state.contains_target() && witness.pass && !width.is_zero();
    Ok(DecomposeReport {
        target: ExactValue::of(original, digits),
        surrogate_error,
        depth: run.state.history.len(),
        backtracks: run.backtracks,
        width: ExactValue::of(&width, digits),
        x_prefix: run.state.seg_x.word(),
        y_prefix: run.state.seg_y.word(),
        steps: run.steps,
        witness,
        junction_indices: w.junctions.iter().take(12).copied().collect(),
        witness_head: w.digits.iter().take(120).copied().collect(),
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cantor::ROOT_WORD;
    use crate::subshift::admissible;

    fn qs(s: &str) -> QuadSurd {
        s.parse().unwrap()
    }

    #[test]
    fn interval_and_bounds() {
        let (lo, hi) = product_interval();
        assert_eq!(lo, qs(constants::PRODUCT_LO));
        assert_eq!(hi, qs(constants::PRODUCT_HI));
        assert_eq!(lo.to_decimal(6), "18.157876");
        let (mu, delta) = mu_delta_bounds().unwrap();
        assert_eq!(delta, qs(constants::DELTA));
        assert_eq!(mu.to_decimal(4), "18.4811");
        assert_eq!(delta.to_decimal(6), "0.948668");
        assert!(product_checks(10).unwrap().iter().all(|c| c.pass));
    }

    #[test]
    fn left_endpoint_takes_extreme_children() {
        let (lo, _) = product_interval();
        let d = decompose(&lo, 12).unwrap();
        assert_eq!(d.backtracks, 0);
        let root = root_segment();
        assert_eq!(d.state.seg_x.lo, root.lo);
        assert_eq!(d.state.seg_y.lo, root.lo);
        assert!(d.state.contains_target());
    }

    #[test]
    fn outside_target_rejected() {
        assert!(matches!(decompose(&qs("18"), 3), Err(Error::Domain(_))));
    }

    #[test]
    fn mu_to_depth_40() {
        let (mu, _) = mu_delta_bounds().unwrap();
        let d = decompose(&mu, 40).unwrap();
        assert_eq!(d.state.history.len(), 40);
        let widths = replay(&mu, &d.state.history).unwrap();
        assert!(widths.windows(2).all(|p| p[1] < p[0]));
        assert!(widths.last().unwrap() < &qs("1/1000000"));
        assert_eq!(d.steps.len(), 40);
    }

    #[test]
    fn single_block() {
        let w = interleave(&[4, 3, 1], &[4, 3, 2], &[(2, 2)]).unwrap();
        assert_eq!(w.digits, [1, 3, 4, 4, 3, 2]);
        assert_eq!(w.junctions, [2]);
        assert_eq!(&w.digits[2..4], &[4, 4]);
        assert!(w.pattern_violations().is_empty());
        assert!(matches!(interleave(&[4, 3, 1], &[4, 3, 2], &[(0, 2)]), Err(Error::BadCut { block: 1, index: 0 })));
    }

    #[test]
    fn cuts_skip_fours() {
        let x = PeriodicCf::new(ROOT_WORD.to_vec(), vec![1, 4, 1, 4, 1, 3]).unwrap();
        let cuts = choose_cuts(&x, 10, 3);
        assert!(cuts.windows(2).all(|p| p[0] < p[1]));
        for (i, &n) in cuts.iter().enumerate() {
            assert!(n >= 3 * (i + 1) && x.digit(n) != 4);
        }
    }

    #[test]
    fn witness_for_mu() {
        let (mu, _) = mu_delta_bounds().unwrap();
        let width = BigRat::new(BigInt::one(), BigInt::from(10u32).pow(40));
        let fine = decompose_until(&mu, WITNESS_DEPTH_LIMIT, Some(&width)).unwrap();
        let x = lower_expansion(&fine.state.seg_x).unwrap();
        let y = lower_expansion(&fine.state.seg_y).unwrap();
        assert!(admissible(&x.take(200)) && admissible(&y.take(200)));
        let w = build_witness(&x, &y, 20, CUT_STRIDE).unwrap();
        for (i, b) in (0..w.junctions.len()).map(|i| (i, w.block(i))) {
            let (n, m) = w.cuts[i];
            let mut rev = b.to_vec();
            rev.reverse();
            let expect: Vec<u32> = y.take(m + 1).into_iter().rev().chain(x.take(n + 1)).collect();
            assert_eq!(rev, expect);
        }
        let r = verify_construction(&w, &mu, &mu, 5, 1, 12).unwrap();
        assert!(r.pass, "{r:#?}");
    }
}
