//! Driving schedules and their accumulators.
//!
//! On the shift space every generator is a power of `σ`, so the composite of
//! the first `n` steps is `σ^{S(n)}` for a total shift `S(n)`. For the
//! Thue–Morse schedule (`f_0 = σ`, `f_1 = σ²`) that is
//! `S(n) = n + #{i ≤ n : ξ_i = 1}`. For the quad-exponent schedule every
//! step is a power of one invertible map and the composite is `f^{E(m)}`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use crate::word::{self, block_len, BlockForm, Word};
use crate::{Cap, LabError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Schedule {
    /// Step `i` applies `f_{ξ_i}` with `f_0 = σ`, `f_1 = σ²`.
    ThueMorse,
    /// Step `i` applies `f^{e_i}` with `e_{4n-3} = e_{4n} = n` and
    /// `e_{4n-2} = e_{4n-1} = -n`.
    QuadExponent,
    Explicit(ExplicitSchedule),
}

/// An eventually periodic list of generator indices. Index `g` selects
/// `f_g = σ^{g+1}`; an empty period makes the schedule finite.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExplicitSchedule {
    prefix: Vec<u8>,
    period: Vec<u8>,
    generators: usize,
}

impl ExplicitSchedule {
    pub fn new(prefix: Vec<u8>, period: Vec<u8>, generators: usize) -> Result<Self> {
        if let Some(bad) = prefix
            .iter()
            .chain(&period)
            .find(|&&g| g as usize >= generators)
        {
            return Err(LabError::InvalidParameter(format!(
                "generator index {bad} outside a set of size {generators}"
            )));
        }
        Ok(ExplicitSchedule {
            prefix,
            period,
            generators,
        })
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn is_finite(&self) -> bool {
        self.period.is_empty()
    }

    /// Generator index applied at 1-based step `i`.
    pub fn index_at(&self, i: usize) -> Result<u8> {
        assert!(i >= 1, "schedule steps are 1-based");
        if i <= self.prefix.len() {
            Ok(self.prefix[i - 1])
        } else if self.period.is_empty() {
            Err(LabError::ScheduleExhausted {
                requested: i,
                len: self.prefix.len(),
            })
        } else {
            Ok(self.period[(i - self.prefix.len() - 1) % self.period.len()])
        }
    }

    /// Total shift of the first `n` steps.
    pub fn shift_amount(&self, n: usize) -> Result<usize> {
        let cost = |gs: &[u8]| gs.iter().map(|&g| g as usize + 1).sum::<usize>();
        if n <= self.prefix.len() {
            return Ok(cost(&self.prefix[..n]));
        }
        if self.period.is_empty() {
            return Err(LabError::ScheduleExhausted {
                requested: n,
                len: self.prefix.len(),
            });
        }
        let rest = n - self.prefix.len();
        let (cycles, tail) = (rest / self.period.len(), rest % self.period.len());
        Ok(cost(&self.prefix) + cycles * cost(&self.period) + cost(&self.period[..tail]))
    }
}

impl Schedule {
    /// Size of the generator set, or `None` when the schedule uses
    /// infinitely many distinct maps.
    pub fn generator_count(&self) -> Option<usize> {
        match self {
            Schedule::ThueMorse => Some(2),
            Schedule::QuadExponent => None,
            Schedule::Explicit(e) => Some(e.generators),
        }
    }

    pub fn is_finitely_generated(&self) -> bool {
        self.generator_count().is_some()
    }
}

fn join_indices(gs: &[u8]) -> String {
    gs.iter().map(u8::to_string).collect::<Vec<_>>().join(",")
}

fn parse_indices(s: &str) -> Result<Vec<u8>> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u8>()
                .map_err(|_| LabError::Parse(format!("{t:?} is not a generator index")))
        })
        .collect()
}

impl fmt::Display for Schedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Schedule::ThueMorse => f.write_str("tm"),
            Schedule::QuadExponent => f.write_str("quad"),
            Schedule::Explicit(e) if e.period.is_empty() => {
                write!(f, "explicit:{}", join_indices(&e.prefix))
            }
            Schedule::Explicit(e) => write!(
                f,
                "explicit:{}({})",
                join_indices(&e.prefix),
                join_indices(&e.period)
            ),
        }
    }
}

impl FromStr for Schedule {
    type Err = LabError;

    /// `tm`, `quad`, `explicit:<indices>` or `explicit:<indices>(<period>)`
    /// over the generator set `{σ, σ²}`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tm" => return Ok(Schedule::ThueMorse),
            "quad" => return Ok(Schedule::QuadExponent),
            _ => {}
        }
        let body = s
            .strip_prefix("explicit:")
            .ok_or_else(|| LabError::Parse(format!("unknown schedule {s:?}")))?;
        let (prefix, period) = match body.split_once('(') {
            Some((pre, rest)) => {
                let per = rest
                    .strip_suffix(')')
                    .ok_or_else(|| LabError::Parse(format!("schedule {s:?}: missing ')'")))?;
                if per.is_empty() {
                    return Err(LabError::Parse(format!("schedule {s:?}: empty period")));
                }
                (parse_indices(pre)?, parse_indices(per)?)
            }
            None => (parse_indices(body)?, Vec::new()),
        };
        Ok(Schedule::Explicit(ExplicitSchedule::new(
            prefix, period, 2,
        )?))
    }
}

/// Materialized `ξ_1 ⋯ ξ_len` with a per-64-bit-word rank table, so that
/// the number of ones in any prefix is one lookup plus one popcount.
#[derive(Debug)]
struct ShiftTable {
    xi: Word,
    ranks: Vec<usize>,
}

impl ShiftTable {
    fn build(len: usize, cap: Cap) -> Result<ShiftTable> {
        let xi = word::thue_morse_prefix(len, cap)?;
        let mut ranks = Vec::with_capacity(xi.raw_words().len() + 1);
        let mut acc = 0usize;
        ranks.push(0);
        for (w, raw) in xi.raw_words().iter().enumerate() {
            let valid = (xi.len() - 64 * w).min(64);
            let mask = if valid == 64 {
                u64::MAX
            } else {
                (1u64 << valid) - 1
            };
            acc += (raw & mask).count_ones() as usize;
            ranks.push(acc);
        }
        Ok(ShiftTable { xi, ranks })
    }

    fn len(&self) -> usize {
        self.xi.len()
    }

    fn ones_prefix(&self, n: usize) -> usize {
        debug_assert!(n <= self.len());
        let (w, r) = (n / 64, n % 64);
        let partial = if r == 0 {
            0
        } else {
            (self.xi.raw_words()[w] & ((1u64 << r) - 1)).count_ones() as usize
        };
        self.ranks[w] + partial
    }
}

const MIN_TABLE: usize = 1 << 12;

/// Shared context for Thue–Morse computations: the materialization cap and a
/// lazily grown, immutable-once-built prefix table.
#[derive(Debug)]
pub struct Lab {
    cap: Cap,
    table: RwLock<Arc<ShiftTable>>,
}

impl Default for Lab {
    fn default() -> Self {
        Lab::new(Cap::default())
    }
}

impl Lab {
    pub fn new(cap: Cap) -> Lab {
        Lab {
            cap,
            table: RwLock::new(Arc::new(ShiftTable {
                xi: Word::new(),
                ranks: vec![0],
            })),
        }
    }

    pub fn cap(&self) -> Cap {
        self.cap
    }

    fn table(&self, len: usize) -> Result<Arc<ShiftTable>> {
        self.cap.check(len)?;
        {
            let current = self.table.read().expect("table lock");
            if current.len() >= len {
                return Ok(Arc::clone(&current));
            }
        }
        let mut slot = self.table.write().expect("table lock");
        if slot.len() < len {
            let target = len.max(MIN_TABLE).next_power_of_two().min(self.cap.0);
            *slot = Arc::new(ShiftTable::build(target, self.cap)?);
        }
        Ok(Arc::clone(&slot))
    }

    /// `ξ_i`, 1-based.
    pub fn xi(&self, i: usize) -> Result<u8> {
        assert!(i >= 1, "Thue-Morse indices are 1-based");
        Ok(self.table(i)?.xi.symbol(i))
    }

    /// `ξ_1 ⋯ ξ_len`
    pub fn prefix(&self, len: usize) -> Result<Word> {
        Ok(self.table(len)?.xi.prefix(len))
    }

    /// `S(n)`, the total shift of `g_n ∘ ⋯ ∘ g_1`.
    pub fn shift_amount(&self, n: usize) -> Result<usize> {
        Ok(n + self.table(n)?.ones_prefix(n))
    }

    /// `S(0), S(1), …, S(n)` in one pass.
    pub fn shift_amounts(&self, n: usize) -> Result<Vec<usize>> {
        Ok(self.shift_accumulator(n)?.map(|(_, s)| s).collect())
    }

    /// Iterator over `(n, S(n))` for `n = 0..=steps`.
    pub fn shift_accumulator(&self, steps: usize) -> Result<ShiftAccumulator> {
        Ok(ShiftAccumulator {
            table: self.table(steps)?,
            steps,
            n: 0,
            total: 0,
            done: false,
        })
    }

    /// Whether `S(2k|A_n|) = 3k|A_n|`.
    pub fn checkpoint_identity(&self, n: usize, k: usize) -> Result<bool> {
        if n == 0 {
            return Err(LabError::InvalidParameter(
                "checkpoint identity needs n ≥ 1".into(),
            ));
        }
        let m = block_len(n);
        Ok(self.shift_amount(2 * k * m)? == 3 * k * m)
    }

    pub fn classify_block(&self, n: usize, j: usize) -> Result<BlockForm> {
        if n == 0 {
            return word::classify_block(&Word::new(), n, j);
        }
        let end = 2 * (j + 1) * block_len(n);
        let table = self.table(end)?;
        word::classify_block(&table.xi, n, j)
    }

    /// For every `p ≤ p_max`, a 1-based index `i ≤ len - p` with
    /// `ξ_i ≠ ξ_{i+p}`.
    pub fn schedule_aperiodicity(&self, p_max: usize, len: usize) -> Result<Vec<(usize, usize)>> {
        let xi = self.prefix(len)?;
        word::schedule_aperiodicity(&xi, p_max)
    }
}

/// Walks `(n, S(n))` for the Thue–Morse schedule.
#[derive(Debug)]
pub struct ShiftAccumulator {
    table: Arc<ShiftTable>,
    steps: usize,
    n: usize,
    total: usize,
    done: bool,
}

impl Iterator for ShiftAccumulator {
    type Item = (usize, usize);

    fn next(&mut self) -> Option<(usize, usize)> {
        if self.done {
            return None;
        }
        let item = (self.n, self.total);
        if self.n == self.steps {
            self.done = true;
        } else {
            self.n += 1;
            self.total += 1 + self.table.xi.symbol(self.n) as usize;
        }
        Some(item)
    }
}

/// `e_i` for 1-based step `i`.
pub fn quad_exponent(i: u64) -> i64 {
    assert!(i >= 1, "schedule steps are 1-based");
    let n = i.div_ceil(4) as i64;
    match i % 4 {
        1 | 0 => n,
        _ => -n,
    }
}

/// `E(m) = e_1 + ⋯ + e_m`. Each block of four sums to zero, so only the
/// position inside the current block matters.
pub fn quad_partial_sum(m: u64) -> i64 {
    let n = (m / 4) as i64 + 1;
    match m % 4 {
        1 => n,
        3 => -n,
        _ => 0,
    }
}

/// `{ E(m) : 0 ≤ m ≤ max_steps }`
pub fn exponent_range(max_steps: u64) -> BTreeSet<i64> {
    ExponentAccumulator::default()
        .take_while(|&(m, _)| m <= max_steps)
        .map(|(_, e)| e)
        .collect()
}

/// Walks `(m, E(m))` starting at `(0, 0)`.
#[derive(Clone, Debug, Default)]
pub struct ExponentAccumulator {
    steps: u64,
    net: i64,
    started: bool,
}

impl Iterator for ExponentAccumulator {
    type Item = (u64, i64);

    fn next(&mut self) -> Option<(u64, i64)> {
        if self.started {
            self.steps += 1;
            self.net += quad_exponent(self.steps);
        }
        self.started = true;
        Some((self.steps, self.net))
    }
}
