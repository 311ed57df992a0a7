//! LLR arithmetic domains.
//!
//! The decoders are generic over a domain providing the `f` (min-sum), `g`
//! (conditional add/subtract) and hard-decision primitives. Two domains are
//! provided: [`FloatLlr`] for `f64` reference arithmetic and [`FixedLlr`] for
//! the saturating `Qi.Qc.Qf` fixed-point arithmetic of the hardware models.

use crate::quant::{QLlr, QuantSpec};

/// Arithmetic required by the successive-cancellation recursion.
pub trait LlrDomain: Copy + Send + Sync {
    type Llr: Copy + PartialEq + Default + std::fmt::Debug + Send + Sync;

    /// Min-sum check update: `sign(a*b) * min(|a|, |b|)`, with zero treated
    /// as positive so a zero input yields a (positive) zero output.
    fn f(&self, a: Self::Llr, b: Self::Llr) -> Self::Llr;

    /// Variable update: `b + a` when the partial-sum bit is 0, `b - a`
    /// otherwise. Saturating in fixed point.
    fn g(&self, a: Self::Llr, b: Self::Llr, bit: u8) -> Self::Llr;

    /// Hard decision: 0 when the LLR is non-negative.
    fn hard(&self, a: Self::Llr) -> u8;

    /// Strict magnitude comparison `|a| < |b|` (for parity-flip selection).
    fn abs_lt(&self, a: Self::Llr, b: Self::Llr) -> bool;

    /// Threshold decision on the sum of all inputs at widened precision
    /// (no intermediate saturation): 0 when the sum is non-negative.
    fn wide_sum_bit(&self, alpha: &[Self::Llr]) -> u8;
}

/// `f64` reference arithmetic.
#[derive(Debug, Clone, Copy, Default)]
pub struct FloatLlr;

impl LlrDomain for FloatLlr {
    type Llr = f64;

    #[inline]
    fn f(&self, a: f64, b: f64) -> f64 {
        let mag = a.abs().min(b.abs());
        if (a < 0.0) ^ (b < 0.0) {
            -mag
        } else {
            mag
        }
    }

    #[inline]
    fn g(&self, a: f64, b: f64, bit: u8) -> f64 {
        if bit == 0 {
            b + a
        } else {
            b - a
        }
    }

    #[inline]
    fn hard(&self, a: f64) -> u8 {
        u8::from(a < 0.0)
    }

    #[inline]
    fn abs_lt(&self, a: f64, b: f64) -> bool {
        a.abs() < b.abs()
    }

    fn wide_sum_bit(&self, alpha: &[f64]) -> u8 {
        let sum: f64 = alpha.iter().sum();
        u8::from(sum < 0.0)
    }
}

/// Saturating fixed-point arithmetic for a [`QuantSpec`].
#[derive(Debug, Clone, Copy)]
pub struct FixedLlr {
    max: i32,
}

impl FixedLlr {
    pub fn new(q: QuantSpec) -> Self {
        FixedLlr { max: q.int_max() }
    }

    #[inline]
    fn sat(&self, v: i32) -> i32 {
        v.clamp(-self.max, self.max)
    }
}

impl LlrDomain for FixedLlr {
    type Llr = QLlr;

    #[inline]
    fn f(&self, a: QLlr, b: QLlr) -> QLlr {
        let mag = a.0.abs().min(b.0.abs());
        QLlr(if (a.0 < 0) ^ (b.0 < 0) { -mag } else { mag })
    }

    #[inline]
    fn g(&self, a: QLlr, b: QLlr, bit: u8) -> QLlr {
        let sum = if bit == 0 { b.0 + a.0 } else { b.0 - a.0 };
        QLlr(self.sat(sum))
    }

    #[inline]
    fn hard(&self, a: QLlr) -> u8 {
        u8::from(a.0 < 0)
    }

    #[inline]
    fn abs_lt(&self, a: QLlr, b: QLlr) -> bool {
        a.0.abs() < b.0.abs()
    }

    fn wide_sum_bit(&self, alpha: &[QLlr]) -> u8 {
        let sum: i64 = alpha.iter().map(|l| i64::from(l.0)).sum();
        u8::from(sum < 0)
    }
}
