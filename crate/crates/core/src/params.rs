use std::fmt;

use crate::error::{Error, Result};
use crate::image::Mode;

/// How `secret / (n + 1)` is brought back to an integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rounding {
    Floor,
    Ceil,
    /// Nearest integer, ties away from zero.
    Round,
}

impl Rounding {
    pub const ALL: [Rounding; 3] = [Rounding::Floor, Rounding::Ceil, Rounding::Round];

    /// Integer quotient of `value / divisor` under this policy.
    pub fn quantize(self, value: u32, divisor: u32) -> u32 {
        debug_assert!(divisor > 0);
        match self {
            Rounding::Floor => value / divisor,
            Rounding::Ceil => value.div_ceil(divisor),
            Rounding::Round => (2 * value + divisor) / (2 * divisor),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Rounding::Floor => "floor",
            Rounding::Ceil => "ceil",
            Rounding::Round => "round",
        }
    }

    pub fn from_name(name: &str) -> Option<Rounding> {
        match name.to_ascii_lowercase().as_str() {
            "floor" => Some(Rounding::Floor),
            "ceil" => Some(Rounding::Ceil),
            "round" => Some(Rounding::Round),
            _ => None,
        }
    }
}

impl fmt::Display for Rounding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Everything that makes an encoding session deterministic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SharingParams {
    pub n: usize,
    pub mode: Mode,
    /// Ignored in binary mode, where no division takes place.
    pub rounding: Rounding,
    /// `None` draws the random matrix and session id from OS entropy.
    pub seed: Option<u64>,
}

/// Largest share count the container's 16-bit index field can address.
const MAX_SHARES: usize = u16::MAX as usize;

impl SharingParams {
    pub fn new(n: usize, mode: Mode) -> SharingParams {
        SharingParams {
            n,
            mode,
            rounding: Rounding::Round,
            seed: None,
        }
    }

    pub fn with_rounding(mut self, rounding: Rounding) -> SharingParams {
        self.rounding = rounding;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> SharingParams {
        self.seed = Some(seed);
        self
    }

    pub fn validate(&self) -> Result<()> {
        let limit = match self.mode {
            Mode::Binary => MAX_SHARES,
            Mode::Grayscale | Mode::Color => 255,
        };
        if self.n < 2 || self.n + 1 > limit {
            return Err(Error::UnsupportedN {
                n: self.n,
                mode: self.mode,
            });
        }
        Ok(())
    }

    /// Number of shares produced, `n + 1`.
    pub fn share_count(&self) -> usize {
        self.n + 1
    }

    /// Largest temporary-share value `c` with `(n + 1) * c <= 255`.
    pub(crate) fn temporary_ceiling(&self) -> u32 {
        255 / self.share_count() as u32
    }
}
