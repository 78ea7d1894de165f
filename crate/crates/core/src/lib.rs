//! Exact laboratory for two non-autonomous dynamical systems.
//!
//! The shift system lives on eventually periodic points of `{0,1}^N` and is
//! driven by the Thue–Morse sequence: step `i` applies `σ` when `ξ_i = 0` and
//! `σ²` when `ξ_i = 1`. The rotation system is an exact stand-in for an
//! invertible map driven by the exponent pattern `f, f⁻¹, f⁻¹, f, f², f⁻², …`.
//!
//! Every computation is exact: words are packed bits, distances are
//! arbitrary-precision rationals, and no floating point is used anywhere.
//!
//! Indexing convention: every public operation speaks 1-based symbol indices
//! (`ξ_1` is the first Thue–Morse symbol, `x_1` the first symbol of a point).
//! Storage is 0-based; symbol `i` lives at storage offset `i - 1`.

pub mod checkers;
pub mod engine;
mod error;
pub mod oracle;
pub mod rational;
pub mod report;
pub mod rotation;
pub mod schedule;
pub mod shift;
pub mod word;

pub use error::{LabError, Result};
pub use rational::ExactRational;
pub use report::{Report, Verdict};
pub use rotation::RotationPoint;
pub use schedule::{Lab, Schedule};
pub use shift::{Cylinder, Point, PrefixAgreement};
pub use word::{BlockForm, Word};

/// Default bound on the number of Thue–Morse symbols any operation may
/// materialize.
pub const DEFAULT_CAP: usize = 1 << 22;

/// Environment variable that overrides [`DEFAULT_CAP`].
pub const CAP_ENV_VAR: &str = "NADSLAB_CAP";

/// Materialization cap for sequence prefixes and step counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cap(pub usize);

impl Default for Cap {
    fn default() -> Self {
        Cap(DEFAULT_CAP)
    }
}

impl Cap {
    /// Reads `NADSLAB_CAP`, falling back to the default when unset.
    pub fn from_env() -> Result<Cap> {
        match std::env::var(CAP_ENV_VAR) {
            Ok(raw) => raw.trim().parse::<usize>().map(Cap).map_err(|_| {
                LabError::InvalidParameter(format!("{CAP_ENV_VAR}={raw:?} is not a natural number"))
            }),
            Err(_) => Ok(Cap::default()),
        }
    }

    /// Fails with [`LabError::CapExceeded`] when `requested` is above the cap.
    pub fn check(self, requested: usize) -> Result<()> {
        if requested > self.0 {
            Err(LabError::CapExceeded {
                requested,
                cap: self.0,
            })
        } else {
            Ok(())
        }
    }
}
