//! Slow, independent reference implementations. Nothing in the engines or
//! checkers calls into this module; tests compare the two.
//!
//! The Thue–Morse oracle uses the bit-parity characterization
//! `ξ_i = popcount(i - 1) mod 2` instead of block doubling, and orbit
//! simulation drops symbols one step at a time from an explicit deque.

use std::collections::VecDeque;

use crate::schedule::Schedule;
use crate::shift::{Cylinder, Point};
use crate::word::Word;
use crate::{ExactRational, LabError, Result};

/// `ξ_i` as the parity of the number of ones in the binary expansion of
/// `i - 1`.
pub fn tm_parity(i: u64) -> u8 {
    assert!(i >= 1, "Thue-Morse indices are 1-based");
    ((i - 1).count_ones() & 1) as u8
}

/// Symbols dropped by step `i` of a shift-space schedule.
fn step_drop(schedule: &Schedule, i: usize) -> Result<usize> {
    match schedule {
        Schedule::ThueMorse => Ok(1 + tm_parity(i as u64) as usize),
        Schedule::Explicit(e) => Ok(1 + e.index_at(i)? as usize),
        Schedule::QuadExponent => Err(LabError::WrongSystem),
    }
}

/// `S(n)` by summing per-step drops.
pub fn naive_shift_amount(schedule: &Schedule, n: usize) -> Result<usize> {
    (1..=n).map(|i| step_drop(schedule, i)).sum()
}

/// Applies `g_1, …, g_n` to a truncated sequence by literally deleting one
/// or two leading symbols per step. At least one symbol must survive.
pub fn naive_orbit(truncated: &Word, schedule: &Schedule, n: usize) -> Result<Word> {
    let mut symbols: VecDeque<u8> = truncated.iter().collect();
    let mut needed = 0;
    for i in 1..=n {
        let drop = step_drop(schedule, i)?;
        needed += drop;
        for _ in 0..drop {
            symbols.pop_front().ok_or(LabError::TruncationExhausted {
                needed: needed + 1,
                available: truncated.len(),
            })?;
        }
    }
    if symbols.is_empty() && n > 0 {
        return Err(LabError::TruncationExhausted {
            needed: needed + 1,
            available: truncated.len(),
        });
    }
    Ok(Word::from_symbols(symbols))
}

/// For each `n ≤ n_max`, decides whether `g_1^{(n)}(u) ∩ v` is nonempty by
/// trying to build a witness: a point of `u` whose `S(n)`-shift starts with
/// the base of `v`. A symbol clash while overlaying the two bases proves no
/// witness exists.
pub fn exhaustive_mixing(u: &Cylinder, v: &Cylinder, n_max: usize) -> Vec<bool> {
    (0..=n_max)
        .map(|n| {
            let s = naive_shift_amount(&Schedule::ThueMorse, n).expect("tm steps never fail");
            let len = u.base().len().max(s + v.base().len());
            let mut slots: Vec<Option<u8>> = vec![None; len];
            for (i, sym) in u.base().iter().enumerate() {
                slots[i] = Some(sym);
            }
            for (i, sym) in v.base().iter().enumerate() {
                match slots[s + i] {
                    Some(existing) if existing != sym => return false,
                    _ => slots[s + i] = Some(sym),
                }
            }
            let head = Word::from_symbols(slots.into_iter().map(|s| s.unwrap_or(0)));
            let witness = Point::new(head, Word::zeros(1)).expect("nonempty period");
            let image = naive_orbit(&witness.unroll(len + 1), &Schedule::ThueMorse, n)
                .expect("witness is long enough");
            u.contains(&witness) && v.base().is_prefix_of(&image)
        })
        .collect()
}

/// Partial sum of `|x_i - y_i| / 2^i` over `i ≤ terms`, and that sum plus
/// the largest possible tail `2^(-terms)`.
pub fn rational_metric_series(
    x: &Point,
    y: &Point,
    terms: usize,
) -> (ExactRational, ExactRational) {
    assert!(terms >= 1);
    let mut lower = ExactRational::zero();
    for i in 1..=terms {
        if x.symbol_at(i) != y.symbol_at(i) {
            lower = lower + ExactRational::dyadic(i);
        }
    }
    let upper = &lower + &ExactRational::dyadic(terms);
    (lower, upper)
}

/// `E(m)` by listing the exponent pattern `n, -n, -n, n` block by block.
pub fn naive_quad_partial_sum(m: u64) -> i64 {
    let mut listed = Vec::with_capacity(m as usize + 4);
    let mut n = 1i64;
    while (listed.len() as u64) < m {
        listed.extend_from_slice(&[n, -n, -n, n]);
        n += 1;
    }
    listed.iter().take(m as usize).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schedule::{quad_partial_sum, Lab};
    use crate::word::thue_morse_prefix;
    use crate::Cap;

    #[test]
    fn parity_examples() {
        assert_eq!(tm_parity(1), 0);
        assert_eq!(tm_parity(2), 1);
        assert_eq!(tm_parity(8), 1);
    }

    #[test]
    fn parity_matches_block_construction() {
        let xi = thue_morse_prefix(1 << 16, Cap::default()).unwrap();
        for i in 1..=(1u64 << 16) {
            assert_eq!(xi.symbol(i as usize), tm_parity(i), "i={i}");
        }
    }

    #[test]
    fn naive_orbit_examples() {
        let w: Word = "0110100110010110".parse().unwrap();
        assert_eq!(naive_orbit(&w, &Schedule::ThueMorse, 0).unwrap(), w);
        // drops 1, 2, 2
        assert_eq!(
            naive_orbit(&w, &Schedule::ThueMorse, 3).unwrap(),
            "00110010110".parse().unwrap()
        );
        let short: Word = "01101".parse().unwrap();
        assert!(matches!(
            naive_orbit(&short, &Schedule::ThueMorse, 3),
            Err(LabError::TruncationExhausted { .. })
        ));
        assert_eq!(
            naive_orbit(&w, &Schedule::QuadExponent, 1),
            Err(LabError::WrongSystem)
        );
    }

    #[test]
    fn naive_shift_matches_table() {
        let lab = Lab::default();
        for n in 0..2000 {
            assert_eq!(
                naive_shift_amount(&Schedule::ThueMorse, n).unwrap(),
                lab.shift_amount(n).unwrap()
            );
        }
    }

    #[test]
    fn mixing_examples() {
        let c = |s: &str| s.parse::<Cylinder>().unwrap();
        assert_eq!(
            exhaustive_mixing(&c("[0]"), &c("[1]"), 3),
            vec![false, true, true, true]
        );
        assert!(exhaustive_mixing(&c("[]"), &c("[0110]"), 10)
            .into_iter()
            .all(|b| b));
        // S(1) = 1: σ([01]) = [1] meets [10]; S(0) = 0: [01] vs [10] clash.
        assert_eq!(
            exhaustive_mixing(&c("[01]"), &c("[10]"), 2),
            vec![false, true, true]
        );
    }

    #[test]
    fn series_examples() {
        let p = |s: &str| s.parse::<Point>().unwrap();
        let x = p("01(10)");
        assert_eq!(
            rational_metric_series(&x, &x, 5),
            (ExactRational::zero(), ExactRational::dyadic(5))
        );
        assert_eq!(
            rational_metric_series(&p("(0)"), &p("(1)"), 4),
            (ExactRational::new(15, 16).unwrap(), ExactRational::one())
        );
        assert_eq!(
            rational_metric_series(&p("(0)"), &p("(01)"), 6),
            (
                ExactRational::new(21, 64).unwrap(),
                ExactRational::new(22, 64).unwrap()
            )
        );
    }

    #[test]
    fn quad_sum_examples() {
        assert_eq!(naive_quad_partial_sum(0), 0);
        assert_eq!(naive_quad_partial_sum(5), 2);
        assert_eq!(naive_quad_partial_sum(10), 0);
        for m in 0..=5000 {
            assert_eq!(naive_quad_partial_sum(m), quad_partial_sum(m), "m={m}");
        }
    }
}
