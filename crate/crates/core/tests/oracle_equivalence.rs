use nadslab_core::engine;
use nadslab_core::oracle;
use nadslab_core::schedule::{quad_partial_sum, ExplicitSchedule};
use nadslab_core::shift::metric;
use nadslab_core::{ExactRational, Lab, Point, Schedule, Word};
use proptest::prelude::*;

fn point() -> impl Strategy<Value = Point> {
    (
        prop::collection::vec(0..=1u8, 0..10),
        prop::collection::vec(0..=1u8, 1..8),
    )
        .prop_map(|(pre, per)| {
            Point::new(Word::from_symbols(pre), Word::from_symbols(per)).unwrap()
        })
}

fn explicit_schedule() -> impl Strategy<Value = Schedule> {
    (
        prop::collection::vec(0..=1u8, 0..6),
        prop::collection::vec(0..=1u8, 1..4),
    )
        .prop_map(|(prefix, period)| {
            Schedule::Explicit(ExplicitSchedule::new(prefix, period, 2).unwrap())
        })
}

proptest! {
    #[test]
    fn tm_orbit_matches_naive(x in point(), n in 0usize..300) {
        let lab = Lab::default();
        let tm = Schedule::ThueMorse;
        let unrolled = x.unroll(lab.shift_amount(n).unwrap() + 40);
        let naive = oracle::naive_orbit(&unrolled, &tm, n).unwrap();
        prop_assert_eq!(engine::evaluate(&lab, &tm, &x, n).unwrap().unroll(naive.len()), naive);
    }

    #[test]
    fn explicit_orbit_matches_naive(s in explicit_schedule(), x in point(), n in 0usize..100) {
        let lab = Lab::default();
        let shift = engine::total_shift(&lab, &s, n).unwrap();
        prop_assert_eq!(shift, oracle::naive_shift_amount(&s, n).unwrap());
        let unrolled = x.unroll(shift + 20);
        let naive = oracle::naive_orbit(&unrolled, &s, n).unwrap();
        prop_assert_eq!(engine::evaluate(&lab, &s, &x, n).unwrap().unroll(naive.len()), naive);
    }

    #[test]
    fn metric_within_series_bracket(x in point(), y in point(), terms in 1usize..64) {
        let d = metric(&x, &y);
        let (lo, hi) = oracle::rational_metric_series(&x, &y, terms);
        prop_assert!(lo <= d && d <= hi);
    }

    #[test]
    fn metric_equals_series_on_agreeing_tail(x in point(), i in 1usize..30) {
        let y = x.flip_symbol(i);
        prop_assert_eq!(metric(&x, &y), ExactRational::dyadic(i));
    }

    #[test]
    fn quad_sum_matches_listing(m in 0u64..20_000) {
        prop_assert_eq!(quad_partial_sum(m), oracle::naive_quad_partial_sum(m));
    }
}

#[test]
fn shift_amounts_match_parity_sum() {
    let lab = Lab::default();
    let fast = lab.shift_amounts(1 << 14).unwrap();
    let mut acc = 0u64;
    for (n, s) in fast.iter().enumerate().skip(1) {
        acc += 1 + u64::from(oracle::tm_parity(n as u64));
        assert_eq!(*s as u64, acc, "n={n}");
    }
}
