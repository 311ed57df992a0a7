//! Fixed-point LLR arithmetic in the `Qi.Qc.Qf` format.
//!
//! `Qi` is the total number of bits (including sign) used for internal LLRs,
//! `Qc` the total number of bits used for channel LLRs, and `Qf` the number
//! of fractional bits shared by both. All values are two's complement with
//! symmetric saturation: the most negative code point is never produced, so
//! `|x|` always fits the same width.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Rounding rule applied when quantizing channel LLRs.
///
/// The hardware this models is not explicit about the rule, so it is
/// configurable; the default rounds half away from zero, which is
/// sign-symmetric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Rounding {
    /// Round to nearest, halves away from zero.
    #[default]
    NearestHalfAway,
    /// Truncate toward zero.
    Truncate,
}

/// `Qi.Qc.Qf` quantization parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantSpec {
    /// Internal LLR width in bits, including sign.
    pub qi: u32,
    /// Channel LLR width in bits, including sign.
    pub qc: u32,
    /// Fractional bits shared by internal and channel LLRs.
    pub qf: u32,
}

impl QuantSpec {
    pub fn new(qi: u32, qc: u32, qf: u32) -> Result<Self> {
        if qc < 2 || qi < qc {
            return Err(Error::InvalidQuant(format!(
                "need qi >= qc >= 2, got qi={qi} qc={qc}"
            )));
        }
        if qf >= qc {
            return Err(Error::InvalidQuant(format!(
                "need qf < qc, got qf={qf} qc={qc}"
            )));
        }
        if qi > 24 {
            return Err(Error::InvalidQuant(format!("qi={qi} too wide (max 24)")));
        }
        Ok(QuantSpec { qi, qc, qf })
    }

    /// Largest representable internal magnitude, `2^(qi-1) - 1`.
    pub fn int_max(&self) -> i32 {
        (1 << (self.qi - 1)) - 1
    }

    /// Largest representable channel magnitude, `2^(qc-1) - 1`.
    pub fn chan_max(&self) -> i32 {
        (1 << (self.qc - 1)) - 1
    }

    /// LSB weight, `2^-qf`.
    pub fn lsb(&self) -> f64 {
        1.0 / f64::from(1u32 << self.qf)
    }

    /// Quantizes a real channel LLR: scale, round, saturate to the channel
    /// range, widen to `qi` bits.
    pub fn quantize_channel(&self, llr: f64, scale: f64) -> QLlr {
        self.quantize_channel_with(llr, scale, Rounding::NearestHalfAway)
    }

    pub fn quantize_channel_with(&self, llr: f64, scale: f64, rounding: Rounding) -> QLlr {
        let x = llr * scale * f64::from(1u32 << self.qf);
        let rounded = match rounding {
            // f64::round ties away from zero.
            Rounding::NearestHalfAway => x.round(),
            Rounding::Truncate => x.trunc(),
        };
        let m = f64::from(self.chan_max());
        QLlr(rounded.clamp(-m, m) as i32)
    }

    /// Saturating addition in the internal range.
    pub fn sat_add(&self, a: QLlr, b: QLlr) -> QLlr {
        let m = self.int_max();
        QLlr((a.0 + b.0).clamp(-m, m))
    }

    /// Clamps an already-integer value into the internal range.
    pub fn clamp(&self, raw: i32) -> QLlr {
        let m = self.int_max();
        QLlr(raw.clamp(-m, m))
    }
}

/// Hard decision: 0 when the LLR is non-negative, 1 otherwise.
///
/// In two's complement this is the sign bit, and raw 0 maps to bit 0.
pub fn hard_bit(a: QLlr) -> u8 {
    u8::from(a.0 < 0)
}

/// A fixed-point LLR. The implicit scale is `2^-qf` of the owning
/// [`QuantSpec`]; arithmetic on raw values goes through that `QuantSpec` so
/// saturation bounds are applied consistently.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, PartialOrd, Ord)]
pub struct QLlr(pub i32);

impl QLlr {
    pub fn raw(self) -> i32 {
        self.0
    }
}

impl fmt::Display for QuantSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}.{}", self.qi, self.qc, self.qf)
    }
}

impl FromStr for QuantSpec {
    type Err = Error;

    /// Parses the `"Qi.Qc.Qf"` form used in CLI flags and file headers,
    /// e.g. `"5.4.0"`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split('.').collect();
        if parts.len() != 3 {
            return Err(Error::InvalidQuant(format!("expected Qi.Qc.Qf, got {s:?}")));
        }
        let parse = |p: &str| {
            p.parse::<u32>()
                .map_err(|_| Error::InvalidQuant(format!("bad field {p:?} in {s:?}")))
        };
        QuantSpec::new(parse(parts[0])?, parse(parts[1])?, parse(parts[2])?)
    }
}
