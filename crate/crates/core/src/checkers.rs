//! Certificate-producing verifiers for the Thue–Morse shift system
//! `g_i = f_{ξ_i}` (`f_0 = σ`, `f_1 = σ²`) and for the rotation stand-in.
//!
//! Every verdict here is finite-resolution evidence. Topological statements
//! quantify over all open sets; the checkers quantify over cylinders up to a
//! stated length, and over step counts up to a stated horizon. Reports say so.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::engine::{self, PeriodicityCertificate};
use crate::report::Report;
use crate::rotation::{self, RotationPoint};
use crate::schedule::{exponent_range, quad_partial_sum, ExponentAccumulator, Lab, Schedule};
use crate::shift::{metric, Cylinder, Point};
use crate::word::{block_len, Word};
use crate::{ExactRational, LabError, Result};

/// Every cylinder is covered by its image once the shift passes its base.
const MIXING_TAIL: &str = "S(n) >= n, so for n >= |u| the image sigma^S(n)([u]) is the whole space";

const CYLINDER_BASIS: &str =
    "open sets are restricted to the cylinder basis up to the stated resolution";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MixingStep {
    pub n: usize,
    pub shift: usize,
    pub image: Cylinder,
    pub meets: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MixingCertificate {
    pub u: Cylinder,
    pub v: Cylinder,
    /// Least `N` with `g_1^{(n)}(u) ∩ v ≠ ∅` for every `n ≥ N`.
    pub threshold: usize,
    /// Pointwise checks for `n < |u|`; every later step meets by the tail
    /// argument.
    pub steps: Vec<MixingStep>,
}

/// Least `N` such that `σ^{S(n)}([u])` meets `[v]` for all `n ≥ N`.
pub fn mixing_threshold(lab: &Lab, u: &Cylinder, v: &Cylinder) -> Result<MixingCertificate> {
    let len = u.base().len();
    let steps: Vec<MixingStep> = lab
        .shift_accumulator(len)?
        .take(len)
        .map(|(n, shift)| {
            let image = u.image(shift);
            let meets = image.intersects(v);
            MixingStep {
                n,
                shift,
                image,
                meets,
            }
        })
        .collect();
    let threshold = steps.iter().rposition(|s| !s.meets).map_or(0, |i| i + 1);
    Ok(MixingCertificate {
        u: u.clone(),
        v: v.clone(),
        threshold,
        steps,
    })
}

/// Thresholds for every ordered pair of cylinders with bases up to
/// `resolution`, one report item per `u`.
pub fn mixing_report(lab: &Lab, resolution: usize) -> Result<Report> {
    let mut r = Report::new("claim1-mixing").param("resolution", resolution);
    r.vacuous = resolution == 0;
    r.note(MIXING_TAIL);
    r.note(CYLINDER_BASIS);
    let cylinders: Vec<Cylinder> = Cylinder::all_up_to(resolution).collect();
    let mut worst = 0;
    for u in &cylinders {
        let mut thresholds = Vec::with_capacity(cylinders.len());
        let mut ok = true;
        for v in &cylinders {
            let cert = mixing_threshold(lab, u, v)?;
            ok &= cert.threshold <= u.base().len();
            worst = worst.max(cert.threshold);
            thresholds.push(cert.threshold.to_string());
        }
        r.check(
            "mixing-threshold-bounded",
            u.to_string(),
            ok,
            format!(
                "N<=|u|={} for all v; N per v: {}",
                u.base().len(),
                thresholds.join(",")
            ),
        );
    }
    r.witness("cylinder-pairs", cylinders.len() * cylinders.len());
    r.witness("max-threshold", worst);
    Ok(r)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Claim2Certificate {
    pub x: Point,
    pub n: usize,
    pub horizon: usize,
    /// `A = x_1 ⋯ x_{3|A_n|}`
    pub prefix: Word,
    /// `η = A^∞`
    pub eta: Point,
    pub distance: ExactRational,
    pub distance_bound: ExactRational,
    pub periodicity: PeriodicityCertificate,
    /// `k` values for which `S(2k|A_n|) = 3k|A_n|` failed.
    pub checkpoint_failures: Vec<usize>,
    pub eta_period_divides: bool,
}

impl Claim2Certificate {
    pub fn distance_ok(&self) -> bool {
        self.distance <= self.distance_bound
    }

    pub fn passed(&self) -> bool {
        self.distance_ok()
            && self.periodicity.holds
            && self.checkpoint_failures.is_empty()
            && self.eta_period_divides
    }

    pub fn report(&self) -> Report {
        let mut r = Report::new("claim2-periodic-approximation")
            .param("point", &self.x)
            .param("n", self.n)
            .param("k", self.horizon);
        self.fill(&mut r);
        r
    }

    fn fill(&self, r: &mut Report) {
        let subject = self.x.to_string();
        r.witness(format!("eta[{subject}]"), &self.eta);
        r.witness(format!("distance[{subject}]"), &self.distance);
        r.check(
            "distance-bound",
            &subject,
            self.distance_ok(),
            format!("d(x, eta) = {} <= {}", self.distance, self.distance_bound),
        );
        let basis = if self.periodicity.implied_by_checkpoint {
            "implied by checkpoint identity for all k"
        } else {
            "verified to horizon"
        };
        r.check(
            "periodic-point",
            &subject,
            self.periodicity.holds,
            format!(
                "g^(2|A_n|k)(eta) = eta for k <= {} ({basis})",
                self.periodicity.horizon
            ),
        );
        r.check(
            "checkpoint-identity",
            format!("n={}", self.n),
            self.checkpoint_failures.is_empty(),
            if self.checkpoint_failures.is_empty() {
                format!("S(2k|A_n|) = 3k|A_n| for 1 <= k <= {}", self.horizon)
            } else {
                format!("fails at k = {:?}", self.checkpoint_failures)
            },
        );
        r.check(
            "eta-period-divides-3|A_n|",
            &subject,
            self.eta_period_divides,
            format!(
                "period {} vs 3|A_n| = {}",
                self.eta.period().len(),
                3 * block_len(self.n)
            ),
        );
    }
}

/// Approximates `x` within `2^(-3|A_n|)` by the periodic point `η = A^∞`
/// with `A = x_1 ⋯ x_{3|A_n|}`.
pub fn verify_claim2(lab: &Lab, x: &Point, n: usize, horizon: usize) -> Result<Claim2Certificate> {
    if n == 0 {
        return Err(LabError::InvalidParameter("claim 2 needs n ≥ 1".into()));
    }
    let m = block_len(n);
    lab.cap().check(3 * m)?;
    let prefix = x.unroll(3 * m);
    let eta = Point::periodic(prefix.clone())?;
    let distance = metric(x, &eta);
    let periodicity = engine::is_periodic_point(lab, &Schedule::ThueMorse, &eta, 2 * m, horizon)?;
    let mut checkpoint_failures = Vec::new();
    for k in 1..=horizon {
        if !lab.checkpoint_identity(n, k)? {
            checkpoint_failures.push(k);
        }
    }
    let eta_period_divides = (3 * m).is_multiple_of(eta.period().len());
    Ok(Claim2Certificate {
        x: x.clone(),
        n,
        horizon,
        prefix,
        eta,
        distance,
        distance_bound: ExactRational::dyadic(3 * m),
        periodicity,
        checkpoint_failures,
        eta_period_divides,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DensePeriodicEntry {
    pub word: Word,
    pub certificate: Claim2Certificate,
    pub in_cylinder: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DensePeriodicCertificate {
    pub resolution: usize,
    pub n: usize,
    pub horizon: usize,
    pub entries: Vec<DensePeriodicEntry>,
}

impl DensePeriodicCertificate {
    pub fn passed(&self) -> bool {
        self.entries
            .iter()
            .all(|e| e.in_cylinder && e.certificate.passed())
    }

    pub fn report(&self) -> Report {
        let mut r = Report::new("claim2-dense-periodic-points")
            .param("resolution", self.resolution)
            .param("n", self.n)
            .param("k", self.horizon);
        r.vacuous = self.resolution == 0;
        r.note(CYLINDER_BASIS);
        r.note("cylinder centers are w 0^inf");
        for e in &self.entries {
            e.certificate.fill(&mut r);
            r.check(
                "eta-in-cylinder",
                format!("[{}]", e.word),
                e.in_cylinder,
                format!("eta = {}", e.certificate.eta),
            );
        }
        r
    }
}

/// Runs [`verify_claim2`] on the center `w 0^∞` of every cylinder `[w]` with
/// `|w| = resolution` and checks the periodic approximation stays inside.
pub fn dense_periodic_points(
    lab: &Lab,
    resolution: usize,
    n: usize,
    horizon: usize,
) -> Result<DensePeriodicCertificate> {
    if n == 0 || 3 * block_len(n) < resolution {
        return Err(LabError::InvalidParameter(format!(
            "dense periodic points need n >= 1 and 3|A_n| >= L (n={n}, L={resolution})"
        )));
    }
    if resolution >= 32 {
        return Err(LabError::InvalidParameter(format!(
            "resolution {resolution} is too large"
        )));
    }
    lab.cap().check(1 << resolution)?;
    let entries = Cylinder::all_of_length(resolution)
        .map(|c| {
            let certificate = verify_claim2(lab, &Point::zero_padded(c.base()), n, horizon)?;
            let in_cylinder = c.contains(&certificate.eta);
            Ok(DensePeriodicEntry {
                word: c.base().clone(),
                certificate,
                in_cylinder,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DensePeriodicCertificate {
        resolution,
        n,
        horizon,
        entries,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Claim3Certificate {
    pub horizon: usize,
    pub x: Point,
    pub y: Point,
    /// First `n ≤ horizon` that moved `x` or `y`.
    pub first_unfixed: Option<usize>,
    pub x_invariant: bool,
    pub y_invariant: bool,
    pub disjoint: bool,
    pub distance: ExactRational,
}

impl Claim3Certificate {
    pub fn passed(&self) -> bool {
        self.first_unfixed.is_none()
            && self.x_invariant
            && self.y_invariant
            && self.disjoint
            && self.distance == ExactRational::one()
    }

    pub fn report(&self) -> Report {
        let mut r = Report::new("claim3-invariant-fixed-points").param("horizon", self.horizon);
        r.witness("x", &self.x);
        r.witness("y", &self.y);
        r.check(
            "fixed-points",
            "x, y",
            self.first_unfixed.is_none(),
            match self.first_unfixed {
                None => format!("g^(n) fixes both for n <= {}", self.horizon),
                Some(n) => format!("moved at n={n}"),
            },
        );
        r.check(
            "invariant-orbit",
            self.x.to_string(),
            self.x_invariant,
            "generators sigma, sigma^2",
        );
        r.check(
            "invariant-orbit",
            self.y.to_string(),
            self.y_invariant,
            "generators sigma, sigma^2",
        );
        r.check(
            "orbits-disjoint",
            "x, y",
            self.disjoint,
            "no shared canonical point",
        );
        r.check(
            "metric",
            "d(x, y)",
            self.distance == ExactRational::one(),
            format!("{} (expected 1/1)", self.distance),
        );
        r
    }
}

/// The constant sequences `0^∞` and `1^∞` as invariant fixed points with
/// disjoint orbits.
pub fn verify_claim3(lab: &Lab, horizon: usize) -> Result<Claim3Certificate> {
    let tm = Schedule::ThueMorse;
    let x = Point::constant(0);
    let y = Point::constant(1);
    let xs = engine::orbit(lab, &tm, &x, horizon)?;
    let ys = engine::orbit(lab, &tm, &y, horizon)?;
    let first_unfixed = xs.iter().zip(&ys).position(|(a, b)| *a != x || *b != y);
    Ok(Claim3Certificate {
        horizon,
        first_unfixed,
        x_invariant: engine::is_invariant_orbit(lab, &tm, &x, &[1, 2])?,
        y_invariant: engine::is_invariant_orbit(lab, &tm, &y, &[1, 2])?,
        disjoint: engine::orbits_disjoint(lab, &tm, &x, &y)?,
        distance: metric(&x, &y),
        x,
        y,
    })
}

/// Sensitivity constant: the witness separates orbits by at least this much.
pub fn sensitivity_constant() -> ExactRational {
    ExactRational::dyadic(1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SensitivityWitness {
    pub x: Point,
    pub m: usize,
    pub n: usize,
    pub shift: usize,
    pub y: Point,
    pub pre_distance: ExactRational,
    pub post_distance: ExactRational,
}

impl SensitivityWitness {
    pub fn passed(&self) -> bool {
        self.pre_distance < ExactRational::dyadic(self.m)
            && self.post_distance >= sensitivity_constant()
    }

    fn fill(&self, r: &mut Report) {
        let subject = format!("x={} m={}", self.x, self.m);
        r.check(
            "within-delta",
            &subject,
            self.pre_distance < ExactRational::dyadic(self.m),
            format!(
                "d(x, y) = {} < {}",
                self.pre_distance,
                ExactRational::dyadic(self.m)
            ),
        );
        r.check(
            "separated",
            &subject,
            self.post_distance >= sensitivity_constant(),
            format!(
                "y={} n={} S(n)={} d(g^(n)x, g^(n)y) = {}",
                self.y, self.n, self.shift, self.post_distance
            ),
        );
    }

    pub fn report(&self) -> Report {
        let mut r = Report::new("sensitivity-witness")
            .param("point", &self.x)
            .param("m", self.m);
        r.witness("y", &self.y);
        r.witness("n", self.n);
        r.witness("pre-distance", &self.pre_distance);
        r.witness("post-distance", &self.post_distance);
        self.fill(&mut r);
        r
    }
}

/// For `δ = 2^(-m)`, flips symbol `S(m) + 1` of `x`. The resulting `y` is
/// within `2^(-(S(m)+1)) < δ` of `x`, and after `m` steps the two orbits
/// differ in their first symbol, so they are at distance at least `1/2`.
pub fn sensitivity_witness(lab: &Lab, x: &Point, m: usize) -> Result<SensitivityWitness> {
    if m == 0 {
        return Err(LabError::InvalidParameter(
            "sensitivity witness needs m ≥ 1".into(),
        ));
    }
    let tm = Schedule::ThueMorse;
    let n = m;
    let shift = lab.shift_amount(n)?;
    let y = x.flip_symbol(shift + 1);
    let post_distance = metric(
        &engine::evaluate(lab, &tm, x, n)?,
        &engine::evaluate(lab, &tm, &y, n)?,
    );
    Ok(SensitivityWitness {
        pre_distance: metric(x, &y),
        x: x.clone(),
        m,
        n,
        shift,
        y,
        post_distance,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitVisit {
    pub word: Word,
    pub step: usize,
    pub shift: usize,
    pub hit: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DenseOrbitCertificate {
    pub resolution: usize,
    pub x: Point,
    pub visits: Vec<OrbitVisit>,
}

impl DenseOrbitCertificate {
    pub fn passed(&self) -> bool {
        self.visits.iter().all(|v| v.hit)
    }

    /// Distinct cylinders the orbit was certified to visit.
    pub fn covered(&self) -> BTreeSet<Word> {
        self.visits
            .iter()
            .filter(|v| v.hit)
            .map(|v| v.word.clone())
            .collect()
    }

    pub fn report(&self) -> Report {
        let mut r = Report::new("dense-orbit").param("resolution", self.resolution);
        r.vacuous = self.resolution == 0;
        r.note(CYLINDER_BASIS);
        r.witness("x", &self.x);
        for v in &self.visits {
            r.check(
                "orbit-visits-cylinder",
                format!("[{}]", v.word),
                v.hit,
                format!("n={} S(n)={}", v.step, v.shift),
            );
        }
        r
    }
}

/// Builds a point whose orbit visits every cylinder of length `resolution`:
/// the `j`-th word is written at positions `S(n_j)+1 ⋯ S(n_j)+L` where `n_j`
/// is the first step whose shift clears the previous word.
pub fn dense_orbit_point(lab: &Lab, resolution: usize) -> Result<DenseOrbitCertificate> {
    if resolution >= 32 {
        return Err(LabError::InvalidParameter(format!(
            "resolution {resolution} is too large"
        )));
    }
    let count = 1usize << resolution;
    let budget = resolution * count;
    lab.cap().check(budget)?;
    let shifts = lab.shift_amounts(budget)?;
    let mut placements = Vec::with_capacity(count);
    let mut step = 0;
    for j in 0..count {
        if j > 0 {
            let floor = shifts[step] + resolution;
            step = (step..=budget)
                .find(|&n| shifts[n] >= floor)
                .expect("shifts grow by at least one per step");
        }
        placements.push((Word::from_int(j as u64, resolution), step, shifts[step]));
    }
    let (_, _, last_shift) = placements.last().expect("at least one word");
    let mut symbols = vec![0u8; last_shift + resolution];
    for (w, _, shift) in &placements {
        for (i, sym) in w.iter().enumerate() {
            symbols[shift + i] = sym;
        }
    }
    let x = Point::new(Word::from_symbols(symbols), Word::zeros(1))?;
    let tm = Schedule::ThueMorse;
    let visits = placements
        .into_iter()
        .map(|(word, step, shift)| {
            let image = engine::evaluate(lab, &tm, &x, step)?;
            let hit = Cylinder::new(word.clone()).contains(&image);
            Ok(OrbitVisit {
                word,
                step,
                shift,
                hit,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DenseOrbitCertificate {
        resolution,
        x,
        visits,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BanksConfig {
    /// Cylinder resolution `L`.
    pub resolution: usize,
    /// Block index `n` for the periodic approximations.
    pub n: usize,
    /// Periodicity horizon `K`.
    pub horizon: usize,
    pub aperiodicity_p_max: usize,
    pub aperiodicity_len: usize,
}

impl Default for BanksConfig {
    fn default() -> Self {
        BanksConfig {
            resolution: 6,
            n: 3,
            horizon: 100,
            aperiodicity_p_max: 256,
            aperiodicity_len: 4096,
        }
    }
}

impl BanksConfig {
    /// Default parameters at resolution `L`, with the smallest `n ≥ 3`
    /// such that `3|A_n| ≥ L`.
    pub fn at_resolution(resolution: usize) -> BanksConfig {
        let n = (3..)
            .find(|&n| 3 * block_len(n) >= resolution)
            .expect("grows");
        BanksConfig {
            resolution,
            n,
            ..BanksConfig::default()
        }
    }
}

pub fn finite_generation_report(schedule: &Schedule) -> Report {
    let mut r = Report::new("finite-generation").param("schedule", schedule);
    let count = schedule.generator_count();
    r.check(
        "generator-set-finite",
        schedule.to_string(),
        count.is_some(),
        match count {
            Some(c) => format!("{c} generators"),
            None => "infinitely many distinct maps".into(),
        },
    );
    r
}

pub fn aperiodicity_report(lab: &Lab, p_max: usize, len: usize) -> Result<Report> {
    let mut r = Report::new("schedule-aperiodicity")
        .param("p_max", p_max)
        .param("length", len);
    r.note("not periodic is read as: the index sequence xi is not eventually periodic");
    match lab.schedule_aperiodicity(p_max, len) {
        Ok(witnesses) => {
            let worst = witnesses.iter().map(|&(_, i)| i).max().unwrap_or(0);
            r.check(
                "disagreement-found",
                format!("1 <= p <= {p_max}"),
                true,
                format!("every p has i with xi_i != xi_(i+p); largest first witness i={worst}"),
            );
            for (p, i) in witnesses.iter().take(8) {
                r.witness(format!("p={p}"), format!("i={i}"));
            }
        }
        Err(LabError::NoWitnessFound { p }) => {
            r.check(
                "disagreement-found",
                format!("p={p}"),
                false,
                format!("xi agrees with its {p}-shift up to {len}"),
            );
        }
        Err(e) => return Err(e),
    }
    Ok(r)
}

fn sensitivity_grid(resolution: usize) -> (Vec<Point>, usize) {
    let width = resolution.min(4);
    let mut points: Vec<Point> = Cylinder::all_of_length(width)
        .map(|c| Point::zero_padded(c.base()))
        .collect();
    for extra in ["(1)", "(01)", "(011)", "1(10)"] {
        points.push(extra.parse().expect("literal point"));
    }
    (points, resolution.max(1))
}

pub fn sensitivity_report(lab: &Lab, resolution: usize) -> Result<Report> {
    let (points, m_max) = sensitivity_grid(resolution);
    let mut r = Report::new("sensitivity").param("resolution", resolution);
    r.note("finite-resolution evidence over a sample grid, not a proof");
    r.witness("epsilon", sensitivity_constant());
    for x in &points {
        for m in 1..=m_max {
            sensitivity_witness(lab, x, m)?.fill(&mut r);
        }
    }
    Ok(r)
}

/// Transitivity evidence, dense periodic points, invariant disjoint orbits,
/// finite generation, and aperiodicity, with sensitivity exhibited as the
/// conclusion.
pub fn banks_hypotheses_report(lab: &Lab, config: &BanksConfig) -> Result<Report> {
    let mut r = Report::new("banks-hypotheses")
        .param("resolution", config.resolution)
        .param("n", config.n)
        .param("k", config.horizon)
        .param("p_max", config.aperiodicity_p_max)
        .param("length", config.aperiodicity_len);
    r.note("finite-resolution evidence; topological transitivity, density, and sensitivity are not proved");

    let mut transitivity =
        Report::new("hypothesis-1-transitivity").param("resolution", config.resolution);
    transitivity.vacuous = config.resolution == 0;
    transitivity.note(CYLINDER_BASIS);
    transitivity.section(dense_orbit_point(lab, config.resolution)?.report());
    transitivity.section(mixing_report(lab, config.resolution)?);
    r.section(transitivity);

    let mut density =
        dense_periodic_points(lab, config.resolution, config.n, config.horizon)?.report();
    density.claim = "hypothesis-2-dense-periodic-points".into();
    r.section(density);

    let mut invariant = verify_claim3(lab, config.horizon)?.report();
    invariant.claim = "hypothesis-3-invariant-disjoint-orbits".into();
    r.section(invariant);

    r.section(finite_generation_report(&Schedule::ThueMorse));
    r.section(aperiodicity_report(
        lab,
        config.aperiodicity_p_max,
        config.aperiodicity_len,
    )?);

    let mut conclusion = sensitivity_report(lab, config.resolution)?;
    conclusion.claim = "conclusion-sensitivity".into();
    r.section(conclusion);
    Ok(r)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Example1Config {
    /// `E(2m) = 0` is checked for `m ≤ telescoping`.
    pub telescoping: u64,
    /// `exponent_range(4K) ⊇ [-K, K]` is checked for `K ≤ range`.
    pub range: u64,
    /// Horizon for the invariant periodicity certificates.
    pub horizon: u64,
}

impl Default for Example1Config {
    fn default() -> Self {
        Example1Config {
            telescoping: 100_000,
            range: 100,
            horizon: 1000,
        }
    }
}

/// Sample points of the rotation model used by the example-1 report.
pub fn example1_sample_points() -> Vec<RotationPoint> {
    [(0, 1, 0), (1, 2, 0), (1, 3, 5), (2, 7, -4), (5, 8, 12)]
        .into_iter()
        .map(RotationPoint::from)
        .collect()
}

pub fn example1_report(config: &Example1Config) -> Report {
    let mut r = Report::new("example1-rotation")
        .param("telescoping", config.telescoping)
        .param("range", config.range)
        .param("horizon", config.horizon);
    r.note("rotation stand-in: covers schedule mechanics only");
    r.note("not verified: transitivity and non-sensitivity of the underlying homeomorphism");

    let bad_closed_form = ExponentAccumulator::default()
        .take(2 * config.telescoping as usize + 1)
        .find(|&(m, e)| quad_partial_sum(m) != e);
    r.check(
        "closed-form-partial-sums",
        format!("m <= {}", 2 * config.telescoping),
        bad_closed_form.is_none(),
        format!("{bad_closed_form:?}"),
    );
    let bad_even = (0..=config.telescoping).find(|&m| quad_partial_sum(2 * m) != 0);
    r.check(
        "telescoping",
        format!("E(2m) = 0 for m <= {}", config.telescoping),
        bad_even.is_none(),
        format!("first failure: {bad_even:?}"),
    );
    let full = exponent_range(4 * config.range);
    let missing = (1..=config.range as i64).find(|&k| {
        let range = exponent_range(4 * k as u64);
        !(-k..=k).all(|e| range.contains(&e))
    });
    r.check(
        "exponent-range",
        format!("[-K, K] within E(0..=4K) for K <= {}", config.range),
        missing.is_none(),
        format!(
            "E(0..={}) spans {:?}..={:?}",
            4 * config.range,
            full.first(),
            full.last()
        ),
    );
    for x in example1_sample_points() {
        r.section(rotation::invariant_periodicity_certificate(&x, config.horizon).report());
    }
    let origin = RotationPoint::origin();
    let half = RotationPoint::from((1, 2, 0));
    r.check(
        "orbits-disjoint",
        format!("{origin} vs {half}"),
        rotation::orbits_disjoint_exact(&origin, &half),
        "rational parts differ",
    );
    let shifted = origin.apply_power(3);
    r.check(
        "orbits-meet",
        format!("{origin} vs {shifted}"),
        !rotation::orbits_disjoint_exact(&origin, &shifted),
        "rational parts agree",
    );
    let mut generation =
        Report::new("not-finitely-generated").param("schedule", Schedule::QuadExponent);
    generation.check(
        "generator-set-infinite",
        "quad",
        !Schedule::QuadExponent.is_finitely_generated(),
        "exponents are unbounded",
    );
    r.section(generation);
    r
}

fn param<T: std::str::FromStr>(report: &Report, key: &str) -> Result<T> {
    report
        .parameters
        .get(key)
        .ok_or_else(|| LabError::InvalidParameter(format!("report lacks parameter {key:?}")))?
        .parse()
        .map_err(|_| LabError::InvalidParameter(format!("report parameter {key:?} does not parse")))
}

/// Re-runs the checks a report records from its claim and parameters.
pub fn replay(lab: &Lab, report: &Report) -> Result<Report> {
    Ok(match report.claim.as_str() {
        "claim1-mixing" => mixing_report(lab, param(report, "resolution")?)?,
        "claim2-periodic-approximation" => verify_claim2(
            lab,
            &param::<Point>(report, "point")?,
            param(report, "n")?,
            param(report, "k")?,
        )?
        .report(),
        "claim2-dense-periodic-points" => dense_periodic_points(
            lab,
            param(report, "resolution")?,
            param(report, "n")?,
            param(report, "k")?,
        )?
        .report(),
        "claim3-invariant-fixed-points" => verify_claim3(lab, param(report, "horizon")?)?.report(),
        "sensitivity-witness" => {
            sensitivity_witness(lab, &param::<Point>(report, "point")?, param(report, "m")?)?
                .report()
        }
        "sensitivity" => sensitivity_report(lab, param(report, "resolution")?)?,
        "dense-orbit" => dense_orbit_point(lab, param(report, "resolution")?)?.report(),
        "finite-generation" => finite_generation_report(&param::<Schedule>(report, "schedule")?),
        "schedule-aperiodicity" => {
            aperiodicity_report(lab, param(report, "p_max")?, param(report, "length")?)?
        }
        "example1-invariant-periodicity" => rotation::invariant_periodicity_certificate(
            &param::<RotationPoint>(report, "point")?,
            param(report, "horizon")?,
        )
        .report(),
        "example1-rotation" => example1_report(&Example1Config {
            telescoping: param(report, "telescoping")?,
            range: param(report, "range")?,
            horizon: param(report, "horizon")?,
        }),
        "banks-hypotheses" => banks_hypotheses_report(
            lab,
            &BanksConfig {
                resolution: param(report, "resolution")?,
                n: param(report, "n")?,
                horizon: param(report, "k")?,
                aperiodicity_p_max: param(report, "p_max")?,
                aperiodicity_len: param(report, "length")?,
            },
        )?,
        other => {
            return Err(LabError::InvalidParameter(format!(
                "no replay rule for claim {other:?}"
            )));
        }
    })
}
