//! Composed maps `f_1^{(n)} = f_n ∘ ⋯ ∘ f_1` on the shift space, orbits, and
//! the periodic / invariant point predicates.
//!
//! Non-autonomous composites do not satisfy `f^{(m+n)} = f^{(n)} ∘ f^{(m)}`;
//! the law used here is `f_1^{(n)}(x) = σ^{S(n)}(x)`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::schedule::{Lab, Schedule};
use crate::{LabError, Point, Result};

/// Upper bound on orbit enumeration steps beyond the closure sweep.
pub const ORBIT_STEP_LIMIT: usize = 10_000;

/// Total shift of the first `n` steps of a shift-space schedule.
pub fn total_shift(lab: &Lab, schedule: &Schedule, n: usize) -> Result<usize> {
    match schedule {
        Schedule::ThueMorse => lab.shift_amount(n),
        Schedule::Explicit(e) => {
            lab.cap().check(n)?;
            e.shift_amount(n)
        }
        Schedule::QuadExponent => Err(LabError::WrongSystem),
    }
}

/// `f_1^{(n)}(x)`
pub fn evaluate(lab: &Lab, schedule: &Schedule, x: &Point, n: usize) -> Result<Point> {
    Ok(x.shift(total_shift(lab, schedule, n)?))
}

/// `[f_1^{(0)}(x), …, f_1^{(n)}(x)]`
pub fn orbit(lab: &Lab, schedule: &Schedule, x: &Point, n: usize) -> Result<Vec<Point>> {
    match schedule {
        Schedule::ThueMorse => Ok(lab.shift_accumulator(n)?.map(|(_, s)| x.shift(s)).collect()),
        _ => (0..=n).map(|k| evaluate(lab, schedule, x, k)).collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodCheck {
    pub k: usize,
    pub shift: usize,
    pub returned: bool,
}

/// Finite evidence for `f_1^{(nk)}(x) = x` over `k = 0..=horizon`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicityCertificate {
    pub schedule: String,
    pub point: Point,
    pub step: usize,
    pub horizon: usize,
    pub checks: Vec<PeriodCheck>,
    pub holds: bool,
    /// Set when the Thue–Morse checkpoint identity `S(2k|A_m|) = 3k|A_m|`
    /// covers every `k`: `step = 2|A_m|` and the point is purely periodic
    /// with period dividing `3|A_m|`.
    pub implied_by_checkpoint: bool,
}

impl PeriodicityCertificate {
    /// Re-derives every recorded check and returns the verdict they support.
    pub fn replay(&self, lab: &Lab) -> Result<bool> {
        let schedule: Schedule = self.schedule.parse()?;
        let mut all = true;
        for (idx, check) in self.checks.iter().enumerate() {
            if check.k != idx {
                return Ok(false);
            }
            let shift = total_shift(lab, &schedule, self.step * check.k)?;
            let returned = self.point.shift(shift) == self.point;
            if shift != check.shift || returned != check.returned {
                return Ok(false);
            }
            all &= returned;
        }
        let complete = self.checks.len() == self.horizon + 1 || !all;
        Ok(complete && all == self.holds)
    }
}

/// Checks `f_1^{(nk)}(x) = x` for every `k ≤ horizon`. Definition-level
/// periodicity quantifies over all `k`; this is a finite verification, with
/// the checkpoint flag marking the cases where the infinite statement follows.
pub fn is_periodic_point(
    lab: &Lab,
    schedule: &Schedule,
    x: &Point,
    step: usize,
    horizon: usize,
) -> Result<PeriodicityCertificate> {
    if step == 0 {
        return Err(LabError::InvalidParameter("period step must be ≥ 1".into()));
    }
    let reach = step.checked_mul(horizon).ok_or(LabError::CapExceeded {
        requested: usize::MAX,
        cap: lab.cap().0,
    })?;
    lab.cap().check(reach)?;
    let mut checks = Vec::with_capacity(horizon + 1);
    let mut holds = true;
    for k in 0..=horizon {
        let shift = total_shift(lab, schedule, step * k)?;
        let returned = x.shift(shift) == *x;
        checks.push(PeriodCheck { k, shift, returned });
        if !returned {
            holds = false;
            break;
        }
    }
    let implied_by_checkpoint = holds
        && matches!(schedule, Schedule::ThueMorse)
        && step >= 2
        && step.is_power_of_two()
        && x.preperiod().is_empty()
        && (3 * (step / 2)).is_multiple_of(x.period().len());
    Ok(PeriodicityCertificate {
        schedule: schedule.to_string(),
        point: x.clone(),
        step,
        horizon,
        checks,
        holds,
        implied_by_checkpoint,
    })
}

/// The full orbit set `{ f_1^{(n)}(x) : n ≥ 0 }`.
///
/// Every point of the orbit is some `σ^k(x)`, so the set is finite.
/// Enumeration stops once the total shift has passed the preperiod and a
/// sweep of `4(|u| + |v|) + 16` consecutive steps adds nothing new.
pub fn orbit_set(lab: &Lab, schedule: &Schedule, x: &Point) -> Result<BTreeSet<Point>> {
    let pre = x.preperiod().len();
    let sweep = 4 * (pre + x.period().len()) + 16;
    let limit = ORBIT_STEP_LIMIT + sweep;
    let mut seen = BTreeSet::new();
    let mut last_new = 0;
    for n in 0..=limit {
        let shift = match total_shift(lab, schedule, n) {
            Ok(s) => s,
            Err(LabError::ScheduleExhausted { .. }) => return Ok(seen),
            Err(e) => return Err(e),
        };
        if seen.insert(x.shift(shift)) {
            last_new = n;
        }
        if shift >= pre && n - last_new > sweep {
            return Ok(seen);
        }
    }
    Err(LabError::OrbitNotClosed { steps: limit })
}

/// Whether `orb(x)` is mapped into itself by every generator `σ^g`.
pub fn is_invariant_orbit(
    lab: &Lab,
    schedule: &Schedule,
    x: &Point,
    generators: &[usize],
) -> Result<bool> {
    let orbit = orbit_set(lab, schedule, x)?;
    Ok(orbit
        .iter()
        .all(|p| generators.iter().all(|&g| orbit.contains(&p.shift(g)))))
}

pub fn orbits_disjoint(lab: &Lab, schedule: &Schedule, x: &Point, y: &Point) -> Result<bool> {
    let ox = orbit_set(lab, schedule, x)?;
    let oy = orbit_set(lab, schedule, y)?;
    Ok(ox.is_disjoint(&oy))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(s: &str) -> Point {
        s.parse().unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let lab = Lab::default();
        let tm = Schedule::ThueMorse;
        let x = pt("01(10)");
        assert_eq!(evaluate(&lab, &tm, &x, 0).unwrap(), x);
        assert_eq!(evaluate(&lab, &tm, &pt("(0)"), 17).unwrap(), pt("(0)"));
        assert_eq!(evaluate(&lab, &tm, &pt("(011)"), 2).unwrap(), pt("(011)"));
        assert_eq!(
            evaluate(&lab, &Schedule::QuadExponent, &x, 1),
            Err(LabError::WrongSystem)
        );
    }

    #[test]
    fn fixed_points() {
        let lab = Lab::default();
        for p in [pt("(0)"), pt("(1)")] {
            for q in orbit(&lab, &Schedule::ThueMorse, &p, 10_000).unwrap() {
                assert_eq!(q, p);
            }
        }
    }

    #[test]
    fn orbit_examples() {
        let lab = Lab::default();
        let tm = Schedule::ThueMorse;
        assert_eq!(orbit(&lab, &tm, &pt("(1)"), 5).unwrap(), vec![pt("(1)"); 6]);
        let x = pt("(01)");
        let expected: Vec<Point> = [0, 1, 3, 5].iter().map(|&k| x.shift(k)).collect();
        assert_eq!(orbit(&lab, &tm, &x, 3).unwrap(), expected);
        assert_eq!(orbit(&lab, &tm, &x, 0).unwrap(), vec![x.clone()]);
        let explicit: Schedule = "explicit:1(0)".parse().unwrap();
        let y = pt("00(1)");
        let expected: Vec<Point> = [0, 2, 3].iter().map(|&k| y.shift(k)).collect();
        assert_eq!(orbit(&lab, &explicit, &y, 2).unwrap(), expected);
    }

    #[test]
    fn periodic_point_examples() {
        let lab = Lab::default();
        let tm = Schedule::ThueMorse;
        let c = is_periodic_point(&lab, &tm, &pt("(0)"), 1, 100).unwrap();
        assert!(c.holds);
        assert_eq!(c.checks.len(), 101);
        let c = is_periodic_point(&lab, &tm, &pt("(011)"), 2, 50).unwrap();
        assert!(c.holds && c.implied_by_checkpoint);
        assert!(c.checks.iter().all(|ch| ch.shift == 3 * ch.k));
        let c = is_periodic_point(&lab, &tm, &pt("(01)"), 1, 2).unwrap();
        assert!(!c.holds);
        assert_eq!(
            c.checks.last().unwrap(),
            &PeriodCheck {
                k: 1,
                shift: 1,
                returned: false
            }
        );
    }

    #[test]
    fn certificates_replay() {
        let lab = Lab::default();
        let tm = Schedule::ThueMorse;
        for (x, step, k) in [
            ("(011)", 2, 50),
            ("(01)", 1, 2),
            ("1(0)", 4, 10),
            ("(100110)", 4, 20),
        ] {
            let cert = is_periodic_point(&lab, &tm, &pt(x), step, k).unwrap();
            assert!(cert.replay(&lab).unwrap(), "{x}");
            let mut forged = cert.clone();
            forged.holds = !forged.holds;
            assert!(!forged.replay(&lab).unwrap());
        }
    }

    #[test]
    fn periodic_point_respects_cap() {
        let lab = Lab::new(crate::Cap(100));
        assert!(matches!(
            is_periodic_point(&lab, &Schedule::ThueMorse, &pt("(0)"), 10, 11),
            Err(LabError::CapExceeded { .. })
        ));
    }

    #[test]
    fn invariant_orbit_examples() {
        let lab = Lab::default();
        let tm = Schedule::ThueMorse;
        assert!(is_invariant_orbit(&lab, &tm, &pt("(0)"), &[1, 2]).unwrap());
        assert!(is_invariant_orbit(&lab, &tm, &pt("(1)"), &[1, 2]).unwrap());
        assert!(is_invariant_orbit(&lab, &tm, &pt("(01)"), &[1, 2]).unwrap());
        assert_eq!(
            orbit_set(&lab, &tm, &pt("(01)")).unwrap(),
            BTreeSet::from([pt("(01)"), pt("(10)")])
        );
        // 1 0^∞ leaves its orbit's start for good: σ(1(0)) = (0) but nothing maps back.
        let o = orbit_set(&lab, &tm, &pt("1(0)")).unwrap();
        assert_eq!(o, BTreeSet::from([pt("1(0)"), pt("(0)")]));
        assert!(is_invariant_orbit(&lab, &tm, &pt("1(0)"), &[1, 2]).unwrap());
        // S skips 2, so σ²(111 0^∞) = 1 0^∞ never appears in the orbit.
        assert!(!is_invariant_orbit(&lab, &tm, &pt("111(0)"), &[1, 2]).unwrap());
    }

    #[test]
    fn disjointness_examples() {
        let lab = Lab::default();
        let tm = Schedule::ThueMorse;
        assert!(orbits_disjoint(&lab, &tm, &pt("(0)"), &pt("(1)")).unwrap());
        assert!(!orbits_disjoint(&lab, &tm, &pt("(01)"), &pt("(01)")).unwrap());
        assert!(!orbits_disjoint(&lab, &tm, &pt("(01)"), &pt("(10)")).unwrap());
    }

    #[test]
    fn finite_explicit_orbit_closes() {
        let lab = Lab::default();
        let s: Schedule = "explicit:0,0".parse().unwrap();
        let o = orbit_set(&lab, &s, &pt("110(1)")).unwrap();
        assert_eq!(o.len(), 3);
    }
}
