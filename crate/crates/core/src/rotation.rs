//! Exact stand-in for the invertible system driven by the quad-exponent
//! schedule.
//!
//! Points are `a + bα (mod 1)` with `a` rational in `[0, 1)`, `b` an integer,
//! and `α` a fixed irrational kept purely symbolic. The map `f` is rotation by
//! `α`, so `f^k(a, b) = (a, b + k)`. Because `α` is irrational, `(a, b)`
//! determines the circle point uniquely and every question asked here reduces
//! to exact arithmetic on the pair.
//!
//! Limitation: this model reproduces the schedule mechanics (telescoping of
//! the exponents, invariant periodic orbits, orbit disjointness). It does not
//! model an almost equicontinuous non-minimal homeomorphism, so nothing here
//! says anything about sensitivity or equicontinuity of that system.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::report::Report;
use crate::schedule::quad_partial_sum;
use crate::{ExactRational, LabError, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RotationPoint {
    a: ExactRational,
    b: i64,
}

impl RotationPoint {
    /// Reduces `a` modulo 1.
    pub fn new(a: ExactRational, b: i64) -> RotationPoint {
        RotationPoint {
            a: a.fract_part(),
            b,
        }
    }

    pub fn origin() -> RotationPoint {
        RotationPoint::new(ExactRational::zero(), 0)
    }

    pub fn rational_part(&self) -> &ExactRational {
        &self.a
    }

    pub fn alpha_coefficient(&self) -> i64 {
        self.b
    }

    /// `f^k(x)`
    pub fn apply_power(&self, k: i64) -> RotationPoint {
        RotationPoint {
            a: self.a.clone(),
            b: self.b + k,
        }
    }

    /// `f_1^{(m)}(x) = f^{E(m)}(x)`
    pub fn quad_evaluate(&self, m: u64) -> RotationPoint {
        self.apply_power(quad_partial_sum(m))
    }
}

/// Orbits of `x` and `y` meet iff they differ by an integer power of `f`,
/// which happens iff their rational parts agree.
pub fn orbits_disjoint_exact(x: &RotationPoint, y: &RotationPoint) -> bool {
    x.a != y.a
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantPeriodicityCertificate {
    pub point: RotationPoint,
    pub horizon: u64,
    /// First `k ≤ horizon` with `f_1^{(2k)}(x) ≠ x`, if any.
    pub first_non_return: Option<u64>,
    /// Exponents `j` with `f^j(x)` in `{ f_1^{(m)}(x) : m ≤ 4·horizon }`.
    pub orbit_exponent_min: i64,
    pub orbit_exponent_max: i64,
    pub orbit_size: usize,
    /// The orbit equals `{ f^j(x) : |j| ≤ horizon }`.
    pub orbit_is_symmetric_range: bool,
}

impl InvariantPeriodicityCertificate {
    pub fn passed(&self) -> bool {
        self.first_non_return.is_none() && self.orbit_is_symmetric_range
    }

    pub fn report(&self) -> Report {
        let mut r = Report::new("example1-invariant-periodicity")
            .param("point", &self.point)
            .param("horizon", self.horizon);
        r.vacuous = self.horizon == 0;
        r.check(
            "even-step-return",
            format!("f_1^(2k)(x) = x for k <= {}", self.horizon),
            self.first_non_return.is_none(),
            match self.first_non_return {
                None => "all returned".to_string(),
                Some(k) => format!("k={k} did not return"),
            },
        );
        r.check(
            "orbit-symmetric-range",
            format!("orbit over m <= {}", 4 * self.horizon),
            self.orbit_is_symmetric_range,
            format!(
                "{} points, exponents {}..={}",
                self.orbit_size, self.orbit_exponent_min, self.orbit_exponent_max
            ),
        );
        r
    }
}

/// Certifies `f_1^{(2k)}(x) = x` for `k ≤ horizon` and that the schedule
/// orbit over `m ≤ 4·horizon` is exactly `{ f^j(x) : |j| ≤ horizon }`.
pub fn invariant_periodicity_certificate(
    x: &RotationPoint,
    horizon: u64,
) -> InvariantPeriodicityCertificate {
    let first_non_return = (1..=horizon).find(|&k| x.quad_evaluate(2 * k) != *x);
    let orbit: BTreeSet<RotationPoint> = (0..=4 * horizon).map(|m| x.quad_evaluate(m)).collect();
    let h = horizon as i64;
    let expected: BTreeSet<RotationPoint> = (-h..=h).map(|j| x.apply_power(j)).collect();
    let exponents = orbit.iter().map(|p| p.b - x.b);
    InvariantPeriodicityCertificate {
        point: x.clone(),
        horizon,
        first_non_return,
        orbit_exponent_min: exponents.clone().min().unwrap_or(0),
        orbit_exponent_max: exponents.max().unwrap_or(0),
        orbit_size: orbit.len(),
        orbit_is_symmetric_range: orbit == expected,
    }
}

impl fmt::Display for RotationPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b < 0 {
            write!(f, "{}-{}*alpha", self.a, self.b.unsigned_abs())
        } else {
            write!(f, "{}+{}*alpha", self.a, self.b)
        }
    }
}

impl fmt::Debug for RotationPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RotationPoint({self})")
    }
}

impl FromStr for RotationPoint {
    type Err = LabError;

    /// Parses `p/q+c*alpha` or `p/q-c*alpha`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || LabError::Parse(format!("rotation point {s:?}: expected p/q+c*alpha"));
        let body = s.strip_suffix("*alpha").ok_or_else(bad)?;
        let split = body
            .char_indices()
            .skip(1)
            .find(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .ok_or_else(bad)?;
        let a: ExactRational = body[..split].parse()?;
        let coeff = &body[split..];
        let b: i64 = coeff
            .strip_prefix('+')
            .unwrap_or(coeff)
            .parse()
            .map_err(|_| bad())?;
        Ok(RotationPoint::new(a, b))
    }
}

impl Serialize for RotationPoint {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RotationPoint {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<(i64, i64, i64)> for RotationPoint {
    /// `(p, q, b)` for `p/q + bα`; `q` must be nonzero.
    fn from((p, q, b): (i64, i64, i64)) -> Self {
        RotationPoint::new(
            ExactRational::new(BigInt::from(p), BigInt::from(q)).expect("nonzero denominator"),
            b,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rp(s: &str) -> RotationPoint {
        s.parse().unwrap()
    }

    #[test]
    fn apply_power_examples() {
        let o = RotationPoint::origin();
        assert_eq!(o.apply_power(3), RotationPoint::from((0, 1, 3)));
        let x = rp("1/3+5*alpha");
        assert_eq!(x.apply_power(0), x);
        assert_eq!(x.apply_power(2).apply_power(-2), x);
    }

    #[test]
    fn group_law() {
        let x = rp("2/7-4*alpha");
        for j in -100..=100 {
            for k in -100..=100 {
                assert_eq!(x.apply_power(j).apply_power(k), x.apply_power(j + k));
            }
        }
    }

    #[test]
    fn quad_evaluate_examples() {
        let x = rp("1/2+0*alpha");
        assert_eq!(x.quad_evaluate(2), x);
        for k in 0..=100 {
            assert_eq!(x.quad_evaluate(2 * k), x);
        }
        assert_eq!(x.quad_evaluate(5), rp("1/2+2*alpha"));
    }

    #[test]
    fn certificate_examples() {
        let x = rp("3/8+1*alpha");
        let cert = invariant_periodicity_certificate(&x, 10);
        assert!(cert.passed());
        assert_eq!(
            (cert.orbit_exponent_min, cert.orbit_exponent_max),
            (-10, 10)
        );
        assert_eq!(cert.orbit_size, 21);
        let cert = invariant_periodicity_certificate(&x, 3);
        assert_eq!((cert.orbit_exponent_min, cert.orbit_exponent_max), (-3, 3));
        let cert = invariant_periodicity_certificate(&x, 0);
        assert!(cert.passed());
        assert!(cert.report().vacuous);
        assert!(cert.report().passed());
    }

    #[test]
    fn disjointness_examples() {
        assert!(orbits_disjoint_exact(
            &rp("0/1+0*alpha"),
            &rp("1/2+0*alpha")
        ));
        assert!(!orbits_disjoint_exact(
            &rp("0/1+0*alpha"),
            &rp("0/1+3*alpha")
        ));
        assert!(!orbits_disjoint_exact(
            &rp("1/3+5*alpha"),
            &rp("1/3-7*alpha")
        ));
    }

    #[test]
    fn disjointness_agrees_with_power_search() {
        let pts: Vec<RotationPoint> = [
            (0, 1, 0),
            (1, 2, 0),
            (1, 3, 5),
            (4, 3, -7),
            (1, 2, 150),
            (2, 4, -30),
            (0, 1, -200),
        ]
        .into_iter()
        .map(RotationPoint::from)
        .collect();
        for x in &pts {
            for y in &pts {
                let related = (-400..=400).any(|k| x.apply_power(k) == *y);
                assert_eq!(orbits_disjoint_exact(x, y), !related, "{x} vs {y}");
                assert_eq!(orbits_disjoint_exact(x, y), orbits_disjoint_exact(y, x));
            }
        }
    }

    #[test]
    fn syntax() {
        assert_eq!(RotationPoint::origin().to_string(), "0/1+0*alpha");
        assert_eq!(rp("4/3+2*alpha").to_string(), "1/3+2*alpha");
        assert_eq!(rp("1/3-7*alpha").alpha_coefficient(), -7);
        assert_eq!(rp("1/3+-7*alpha").alpha_coefficient(), -7);
        assert!("1/3".parse::<RotationPoint>().is_err());
        assert!("x+1*alpha".parse::<RotationPoint>().is_err());
    }
}
