use f4star::cantor::{cylinder, cylinders_disjoint, cylinders_nested, enumerate_cn};
use f4star::cf::{convergents, epsilon_seq, eval_periodic, CfWord, Mobius, PeriodicCf};
use f4star::hall::{decompose, interleave, product_interval, replay};
use f4star::subshift::admissible;
use f4star::{BigRat, QuadSurd, DEFAULT_DISC};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn surd() -> impl Strategy<Value = QuadSurd> {
    (-500i64..500, -50i64..50, 1i64..300).prop_map(|(p, q, r)| {
        QuadSurd::from_parts(p.into(), q.into(), r.into(), DEFAULT_DISC).unwrap()
    })
}

fn nonzero_surd() -> impl Strategy<Value = QuadSurd> {
    surd().prop_filter("non-zero", |x| !x.is_zero())
}

/// Admissible digits after `[4, 3]`, built by rejection on each digit.
fn admissible_tail(len: usize) -> impl Strategy<Value = Vec<u32>> {
    proptest::collection::vec(1u32..=4, len * 2).prop_map(move |raw| {
        let mut w = vec![4, 3];
        for d in raw {
            if w.len() == len + 2 {
                break;
            }
            w.push(d);
            if !admissible(&w) {
                w.pop();
                w.push(if d == 4 { 1 } else { 2 });
                if !admissible(&w) {
                    w.pop();
                    w.push(3);
                }
            }
        }
        w
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_axioms(x in surd(), y in surd(), z in nonzero_surd()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&(&x / &z) * &z, x.clone());
        prop_assert_eq!(&x - &x, QuadSurd::from_integer(0, DEFAULT_DISC).unwrap());
        prop_assert_eq!(z.recip().unwrap().recip().unwrap(), z);
    }

    #[test]
    fn sign_agrees_with_decimal(x in nonzero_surd()) {
        let text = x.to_decimal(100);
        let negative = text.starts_with('-');
        prop_assert_eq!(negative, x.is_negative());
        // the enclosure at 100 places brackets the value
        let (lo, hi) = x.enclosure(100);
        let lo = QuadSurd::from_rational(lo, DEFAULT_DISC).unwrap();
        let hi = QuadSurd::from_rational(hi, DEFAULT_DISC).unwrap();
        prop_assert!(lo <= x && x <= hi);
    }

    #[test]
    fn text_round_trip(x in surd()) {
        prop_assert_eq!(x.to_string().parse::<QuadSurd>().unwrap(), x.clone());
        prop_assert_eq!(x.pretty().parse::<QuadSurd>().unwrap(), x);
    }

    #[test]
    fn convergent_determinant(digits in proptest::collection::vec(1u32..=20, 1..40), head in 0u32..10) {
        let mut d = vec![head];
        d.extend(digits);
        let c = convergents(&CfWord::new(d).unwrap());
        for k in 0..c.len() as isize {
            let det = c.p_at(k) * c.q_at(k - 1) - c.p_at(k - 1) * c.q_at(k);
            // (-1)^(k-1)
            let expect = if k % 2 == 0 { -BigInt::one() } else { BigInt::one() };
            prop_assert_eq!(det, expect);
        }
    }

    #[test]
    fn epsilon_in_range(digits in proptest::collection::vec(1u32..=4, 1..60)) {
        let mut d = vec![4];
        d.extend(digits);
        let eps = epsilon_seq(&CfWord::new(d).unwrap()).unwrap();
        let (fifth, one) = (BigRat::new(1.into(), 5.into()), BigRat::one());
        prop_assert!(eps[0].is_zero());
        for e in &eps[1..] {
            prop_assert!(*e >= fifth && *e <= one);
        }
    }

    #[test]
    fn periodic_fixed_point(
        prefix in proptest::collection::vec(1u32..=6, 0..5),
        period in proptest::collection::vec(1u32..=6, 1..7),
    ) {
        let x = eval_periodic(&PeriodicCf::new(prefix.clone(), period.clone()).unwrap()).unwrap();
        let tail = eval_periodic(&PeriodicCf::purely(period.clone()).unwrap()).unwrap();
        let residual = Mobius::of_digits(&period).apply(&tail).unwrap() - tail.clone();
        prop_assert!(residual.is_zero());
        if !prefix.is_empty() {
            prop_assert_eq!(Mobius::of_digits(&prefix).apply(&tail).unwrap(), x);
        }
    }

    #[test]
    fn child_cylinder_nested(w in admissible_tail(8), d in 1u32..=4) {
        let mut child = w.clone();
        child.push(d);
        prop_assume!(admissible(&child));
        let outer = cylinder(&w).unwrap();
        let inner = cylinder(&child).unwrap();
        prop_assert!(outer.contains_interval(&inner.lo, &inner.hi));
        prop_assert!(inner.lo < inner.hi);
    }

    #[test]
    fn interleave_blocks_reverse(
        x in admissible_tail(30),
        y in admissible_tail(30),
        stride in 2usize..5,
    ) {
        let cut = |w: &[u32], i: usize| (i * stride..w.len()).find(|&k| w[k] != 4);
        let mut cuts = Vec::new();
        for i in 1.. {
            match (cut(&x, i), cut(&y, i)) {
                (Some(n), Some(m)) => cuts.push((n, m)),
                _ => break,
            }
        }
        let w = interleave(&x, &y, &cuts).unwrap();
        prop_assert!(w.pattern_violations().is_empty());
        for (i, &(n, m)) in cuts.iter().enumerate() {
            let mut starred = w.block(i).to_vec();
            starred.reverse();
            let expect: Vec<u32> = y[..=m].iter().rev().chain(&x[..=n]).copied().collect();
            prop_assert_eq!(starred, expect);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn decompose_shrinks_width(frac in 0u64..1_000_000) {
        let (lo, hi) = product_interval();
        let t = &lo + &(&(&hi - &lo) * &QuadSurd::from_rational(BigRat::new(frac.into(), 1_000_000.into()), DEFAULT_DISC).unwrap());
        let d = decompose(&t, 30).unwrap();
        let widths = replay(&t, &d.state.history).unwrap();
        prop_assert!(widths.windows(2).all(|p| p[1] < p[0]));
        prop_assert!(widths.iter().all(|w| w.is_positive()));
    }
}

#[test]
fn cn_disjoint_and_nested() {
    let mut previous = enumerate_cn(1).unwrap();
    assert_eq!(previous.len(), 1);
    for n in 2..=8 {
        let cyl = enumerate_cn(n).unwrap();
        assert!(cylinders_disjoint(&cyl), "C_{n} overlaps");
        assert!(cylinders_nested(&previous, &cyl), "C_{n} escapes C_{}", n - 1);
        previous = cyl;
    }
}
