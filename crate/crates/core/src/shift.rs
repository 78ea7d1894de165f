//! Eventually periodic points of `{0,1}^N`, the shift map, cylinders, and the
//! product metric `d(x, y) = Σ |x_n - y_n| / 2^n` evaluated in closed form.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::word::Word;
use crate::{ExactRational, LabError, Result};

/// An eventually periodic sequence `u v v v ⋯`, kept in canonical form: the
/// period is primitive and the preperiod is as short as possible. Two points
/// are equal as sequences iff their canonical forms are identical, so the
/// derived `PartialEq` is sequence equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    preperiod: Word,
    period: Word,
}

impl Point {
    pub fn new(preperiod: Word, period: Word) -> Result<Point> {
        canonicalize(preperiod, period)
    }

    /// `period^∞`
    pub fn periodic(period: Word) -> Result<Point> {
        Point::new(Word::new(), period)
    }

    /// `0^∞` or `1^∞`.
    pub fn constant(symbol: u8) -> Point {
        Point {
            preperiod: Word::new(),
            period: Word::from_symbols([symbol]),
        }
    }

    /// `w 0^∞`, the zero-padded center of the cylinder `[w]`.
    pub fn zero_padded(w: &Word) -> Point {
        canonicalize(w.clone(), Word::zeros(1)).expect("period is nonempty")
    }

    pub fn preperiod(&self) -> &Word {
        &self.preperiod
    }

    pub fn period(&self) -> &Word {
        &self.period
    }

    /// Symbol `x_i`, 1-based.
    pub fn symbol_at(&self, i: usize) -> u8 {
        assert!(i >= 1, "symbol indices are 1-based");
        let pre = self.preperiod.len();
        if i <= pre {
            self.preperiod.symbol(i)
        } else {
            self.period.symbol((i - pre - 1) % self.period.len() + 1)
        }
    }

    /// `x_1 ⋯ x_len`
    pub fn unroll(&self, len: usize) -> Word {
        let pre = self.preperiod.len();
        if len <= pre {
            return self.preperiod.prefix(len);
        }
        let rest = len - pre;
        let reps = rest.div_ceil(self.period.len());
        let mut out = self.preperiod.concat(&self.period.power(reps));
        out = out.prefix(len);
        out
    }

    /// `σ^k(x)`
    pub fn shift(&self, k: usize) -> Point {
        let pre = self.preperiod.len();
        if k <= pre {
            // Dropping symbols from a minimal preperiod keeps it minimal.
            Point {
                preperiod: self.preperiod.drop_front(k),
                period: self.period.clone(),
            }
        } else {
            Point {
                preperiod: Word::new(),
                period: self.period.rotate_left((k - pre) % self.period.len()),
            }
        }
    }

    /// The point that agrees with `self` everywhere except at 1-based
    /// position `i`.
    pub fn flip_symbol(&self, i: usize) -> Point {
        assert!(i >= 1, "symbol indices are 1-based");
        let mut pre: Vec<u8> = self.unroll(i).iter().collect();
        pre[i - 1] ^= 1;
        let tail = self.shift(i);
        // tail is canonical; prepend and re-canonicalize.
        canonicalize(
            Word::from_symbols(pre).concat(tail.preperiod()),
            tail.period.clone(),
        )
        .expect("period is nonempty")
    }

    /// Sum of the aligned shape: preperiod length `P` and period length `L`
    /// that both points share once unrolled.
    fn aligned_shape(&self, other: &Point) -> (usize, usize) {
        let p = self.preperiod.len().max(other.preperiod.len());
        let l = self.period.len().lcm(&other.period.len());
        (p, l)
    }
}

/// Reduces `(preperiod, period)` to canonical form.
pub fn canonicalize(preperiod: Word, period: Word) -> Result<Point> {
    if period.is_empty() {
        return Err(LabError::EmptyPeriod);
    }
    let len = period.len();
    let root = (1..=len)
        .filter(|d| len.is_multiple_of(*d))
        .find(|&d| period.rotate_left(d) == period)
        .expect("d = len always qualifies");
    let period = period.prefix(root);

    // Absorb trailing preperiod symbols that match the period read backwards.
    let pre_len = preperiod.len();
    let mut absorbed = 0;
    while absorbed < pre_len
        && preperiod.symbol(pre_len - absorbed) == period.symbol(root - absorbed % root)
    {
        absorbed += 1;
    }
    Ok(Point {
        preperiod: preperiod.prefix(pre_len - absorbed),
        period: period.rotate_right(absorbed % root),
    })
}

fn dyadic_integer(bits: impl Iterator<Item = u8>) -> BigUint {
    let digits: Vec<u8> = bits.collect();
    if digits.is_empty() {
        return BigUint::zero();
    }
    BigUint::from_radix_be(&digits, 2).expect("binary digits")
}

/// `d(x, y)` exactly.
///
/// With both points aligned to a common preperiod length `P` and period
/// length `L`, let `H` be the first `P` difference bits read as a binary
/// integer and `T` the next `L`. Then
/// `d = (H·(2^L − 1) + T) / (2^P·(2^L − 1))`.
pub fn metric(x: &Point, y: &Point) -> ExactRational {
    if x == y {
        return ExactRational::zero();
    }
    let (p, l) = x.aligned_shape(y);
    let xs = x.unroll(p + l);
    let ys = y.unroll(p + l);
    let diff = || xs.iter().zip(ys.iter()).map(|(a, b)| a ^ b);
    let head = dyadic_integer(diff().take(p));
    let tail = dyadic_integer(diff().skip(p));
    let cycle = (BigUint::one() << l) - BigUint::one();
    let numer = head * &cycle + tail;
    let denom = (BigUint::one() << p) * cycle;
    ExactRational::from_biguints(numer, denom)
}

/// Length of the longest common prefix of two points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PrefixAgreement {
    Finite(usize),
    Infinite,
}

pub fn common_prefix_length(x: &Point, y: &Point) -> PrefixAgreement {
    if x == y {
        return PrefixAgreement::Infinite;
    }
    let (p, l) = x.aligned_shape(y);
    let xs = x.unroll(p + l);
    let ys = y.unroll(p + l);
    let first_diff = xs
        .iter()
        .zip(ys.iter())
        .position(|(a, b)| a != b)
        .expect("distinct canonical points differ within P + L symbols");
    PrefixAgreement::Finite(first_diff)
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.preperiod, self.period)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Point({self})")
    }
}

impl FromStr for Point {
    type Err = LabError;

    /// Parses `u(v)`; the parentheses are mandatory.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| LabError::Parse(format!("point {s:?}: {why}; expected u(v)"));
        let body = s.strip_suffix(')').ok_or_else(|| bad("missing ')'"))?;
        let (pre, per) = body.split_once('(').ok_or_else(|| bad("missing '('"))?;
        if per.contains('(') {
            return Err(bad("nested '('"));
        }
        let pre: Word = pre.parse()?;
        let per: Word = per.parse()?;
        if per.is_empty() {
            return Err(bad("empty period"));
        }
        Point::new(pre, per)
    }
}

impl Serialize for Point {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The cylinder `[w] = { x : x_1 ⋯ x_|w| = w }`. The empty base is the whole
/// space, so every representable cylinder is nonempty.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Cylinder {
    base: Word,
}

impl Cylinder {
    pub fn new(base: Word) -> Cylinder {
        Cylinder { base }
    }

    pub fn full() -> Cylinder {
        Cylinder::default()
    }

    pub fn base(&self) -> &Word {
        &self.base
    }

    pub fn is_full(&self) -> bool {
        self.base.is_empty()
    }

    /// `σ^k([w])`: drop the first `k` symbols of the base, or the whole space
    /// once `k ≥ |w|`.
    pub fn image(&self, k: usize) -> Cylinder {
        Cylinder {
            base: self.base.drop_front(k),
        }
    }

    /// Two cylinders meet iff one base is a prefix of the other.
    pub fn intersects(&self, other: &Cylinder) -> bool {
        self.base.is_prefix_of(&other.base) || other.base.is_prefix_of(&self.base)
    }

    pub fn contains(&self, x: &Point) -> bool {
        x.unroll(self.base.len()) == self.base
    }

    /// All cylinders with `|base| = len`, in lexicographic order.
    pub fn all_of_length(len: usize) -> impl Iterator<Item = Cylinder> {
        assert!(len < 64);
        (0..1u64 << len).map(move |v| Cylinder::new(Word::from_int(v, len)))
    }

    /// All cylinders with `|base| ≤ max_len`, shortest first.
    pub fn all_up_to(max_len: usize) -> impl Iterator<Item = Cylinder> {
        (0..=max_len).flat_map(Cylinder::all_of_length)
    }
}

impl fmt::Display for Cylinder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.base)
    }
}

impl fmt::Debug for Cylinder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cylinder{self}")
    }
}

impl FromStr for Cylinder {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self> {
        let base = s
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| LabError::Parse(format!("cylinder {s:?}: expected [w]")))?;
        Ok(Cylinder::new(base.parse()?))
    }
}

impl Serialize for Cylinder {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pt(s: &str) -> Point {
        s.parse().unwrap()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    /// Brute-force canonical form: among all (pre, per) with short lengths
    /// that generate the same stream, the one with the shortest period, then
    /// shortest preperiod.
    fn brute_canonical(x: &Point) -> (String, String) {
        let horizon = 4 * (x.preperiod().len() + x.period().len()) + 8;
        let stream = x.unroll(horizon);
        for per_len in 1..=x.period().len() {
            for pre_len in 0..=x.preperiod().len() {
                let ok = (pre_len + 1..=horizon).all(|i| {
                    i <= pre_len + per_len || stream.symbol(i) == stream.symbol(i - per_len)
                });
                if ok {
                    return (
                        stream.prefix(pre_len).to_string(),
                        stream.subword(pre_len + 1, per_len).to_string(),
                    );
                }
            }
        }
        unreachable!()
    }

    #[test]
    fn canonicalize_examples() {
        assert_eq!(pt("(0101)"), pt("(01)"));
        assert_eq!(pt("(0101)").to_string(), "(01)");
        assert_eq!(pt("0(0)").to_string(), "(0)");
        // 0,1,1,0,1,0,… is already canonical
        assert_eq!(pt("01(10)").to_string(), "01(10)");
        assert_eq!(brute_canonical(&pt("01(10)")), ("01".into(), "10".into()));
        assert_eq!(pt("1(01)").to_string(), "(10)");
        assert_eq!(Point::new(w("1"), Word::new()), Err(LabError::EmptyPeriod));
    }

    #[test]
    fn symbol_at_examples() {
        assert_eq!(pt("(0)").symbol_at(7), 0);
        let x = Point::new(w("1"), w("10")).unwrap();
        assert_eq!(x.symbol_at(2), 1);
        assert_eq!(x.symbol_at(5), 0);
        assert_eq!(x.unroll(5), w("11010"));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(pt("(0)").shift(5), pt("(0)"));
        assert_eq!(pt("10(0)").shift(1), pt("(0)"));
        assert_eq!(pt("(011)").shift(3), pt("(011)"));
        assert_eq!(pt("(011)").shift(1), pt("(110)"));
    }

    #[test]
    fn metric_examples() {
        assert_eq!(metric(&pt("(0)"), &pt("(1)")), ExactRational::one());
        assert_eq!(metric(&pt("01(10)"), &pt("01(10)")), ExactRational::zero());
        assert_eq!(
            metric(&pt("(0)"), &pt("(01)")),
            ExactRational::new(1, 3).unwrap()
        );
        assert_eq!(
            metric(&pt("(0)"), &pt("000001(0)")),
            ExactRational::dyadic(6)
        );
    }

    #[test]
    fn common_prefix_examples() {
        assert_eq!(
            common_prefix_length(&pt("(0)"), &pt("(1)")),
            PrefixAgreement::Finite(0)
        );
        assert_eq!(
            common_prefix_length(&pt("(01)"), &pt("(01)")),
            PrefixAgreement::Infinite
        );
        assert_eq!(
            common_prefix_length(&pt("(01)"), &pt("01(00)")),
            PrefixAgreement::Finite(3)
        );
    }

    #[test]
    fn cylinder_examples() {
        let c: Cylinder = "[01101]".parse().unwrap();
        assert_eq!(c.image(2), "[101]".parse().unwrap());
        assert_eq!(
            "[01]".parse::<Cylinder>().unwrap().image(5),
            Cylinder::full()
        );
        assert_eq!(c.image(0), c);
        let c0: Cylinder = "[0]".parse().unwrap();
        assert!(c0.intersects(&"[01]".parse().unwrap()));
        assert!(!c0.intersects(&"[1]".parse().unwrap()));
        assert!(Cylinder::full().intersects(&c));
        assert!("[000]".parse::<Cylinder>().unwrap().contains(&pt("(0)")));
        assert!(!"[1]".parse::<Cylinder>().unwrap().contains(&pt("(0)")));
        assert!("[011]".parse::<Cylinder>().unwrap().contains(&pt("01(1)")));
        assert_eq!(Cylinder::full().to_string(), "[]");
        assert_eq!(Cylinder::all_up_to(3).count(), 15);
    }

    #[test]
    fn point_syntax() {
        assert!("01".parse::<Point>().is_err());
        assert!("0(1".parse::<Point>().is_err());
        assert!("()".parse::<Point>().is_err());
        assert!("(2)".parse::<Point>().is_err());
        assert!("0((1))".parse::<Point>().is_err());
        assert_eq!(pt("(0)").to_string(), "(0)");
    }

    #[test]
    fn flip_symbol_examples() {
        assert_eq!(pt("(0)").flip_symbol(6), pt("000001(0)"));
        assert_eq!(pt("(1)").flip_symbol(2), pt("10(1)"));
        assert_eq!(pt("(01)").flip_symbol(2), pt("00(01)"));
    }

    fn arb_point(max: usize) -> impl Strategy<Value = Point> {
        (
            proptest::collection::vec(0u8..2, 0..=max),
            proptest::collection::vec(0u8..2, 1..=max),
        )
            .prop_map(|(pre, per)| {
                Point::new(Word::from_symbols(pre), Word::from_symbols(per)).unwrap()
            })
    }

    proptest! {
        #[test]
        fn canonical_form_matches_brute_force(
            pre in proptest::collection::vec(0u8..2, 0..10),
            per in proptest::collection::vec(0u8..2, 1..10),
        ) {
            let raw_pre = Word::from_symbols(pre);
            let raw_per = Word::from_symbols(per);
            let x = Point::new(raw_pre.clone(), raw_per.clone()).unwrap();
            let (bp, bq) = brute_canonical(&x);
            prop_assert_eq!(x.preperiod().to_string(), bp);
            prop_assert_eq!(x.period().to_string(), bq);
            // same stream as the raw input
            let horizon = 3 * (raw_pre.len() + raw_per.len());
            let raw_stream = raw_pre.concat(&raw_per.power(horizon)).prefix(horizon);
            prop_assert_eq!(x.unroll(horizon), raw_stream);
            // idempotent
            prop_assert_eq!(Point::new(x.preperiod().clone(), x.period().clone()).unwrap(), x);
        }

        #[test]
        fn shift_composes(x in arb_point(16), a in 0usize..=64, b in 0usize..=64) {
            prop_assert_eq!(x.shift(a).shift(b), x.shift(a + b));
            for i in 1..=20 {
                prop_assert_eq!(x.shift(a).symbol_at(i), x.symbol_at(i + a));
            }
        }

        #[test]
        fn metric_axioms(x in arb_point(12), y in arb_point(12), z in arb_point(12)) {
            let dxy = metric(&x, &y);
            prop_assert!(!dxy.is_negative());
            prop_assert_eq!(dxy.is_zero(), x == y);
            prop_assert_eq!(&dxy, &metric(&y, &x));
            prop_assert!(dxy <= &metric(&x, &z) + &metric(&z, &y));
        }

        #[test]
        fn prefix_bracket(x in arb_point(12), y in arb_point(12)) {
            if let PrefixAgreement::Finite(k) = common_prefix_length(&x, &y) {
                let d = metric(&x, &y);
                prop_assert!(ExactRational::dyadic(k + 1) <= d);
                prop_assert!(d <= ExactRational::dyadic(k));
            } else {
                prop_assert_eq!(x, y);
            }
        }

        #[test]
        fn image_soundness(
            base in proptest::collection::vec(0u8..2, 0..10),
            k_frac in 0usize..=20,
            target in arb_point(8),
        ) {
            let base = Word::from_symbols(base);
            let k = k_frac.min(2 * base.len());
            let c = Cylinder::new(base.clone());
            let image = c.image(k);
            // A σ^k-preimage of `target` inside c must be base-consistent:
            // write the base, then target starting at position k + 1.
            let head_len = k.max(base.len());
            let mut head: Vec<u8> = base.iter().collect();
            head.resize(k, 0);
            let mut consistent = true;
            for i in k + 1..=head_len {
                if base.symbol(i) != target.symbol_at(i - k) {
                    consistent = false;
                }
            }
            if consistent {
                let preimage = Point::new(Word::from_symbols(head.into_iter().take(k)), Word::zeros(1))
                    .unwrap();
                let preimage = Point::new(
                    preimage.unroll(k).concat(&target.unroll(target.preperiod().len())),
                    target.period().clone(),
                ).unwrap();
                prop_assert!(c.contains(&preimage));
                prop_assert_eq!(preimage.shift(k), target.clone());
            }
            prop_assert_eq!(image.contains(&target), consistent);
        }

        #[test]
        fn text_roundtrip(x in arb_point(20)) {
            prop_assert_eq!(x.to_string().parse::<Point>().unwrap(), x);
        }
    }
}
