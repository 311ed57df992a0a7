//! Reference successive-cancellation decoder.
//!
//! This is the correctness oracle for the pruned-tree decoder: a plain
//! full-tree recursion of the `f`, `g` and `combine` updates with frozen
//! leaves forced to zero and hard decisions at information leaves. It
//! returns the codeword estimate (the systematic view), not the
//! transform-domain vector.

use crate::code::CodeSpec;
use crate::llr::{FixedLlr, FloatLlr, LlrDomain};
use crate::quant::{QLlr, QuantSpec};
use crate::{Error, Result};

/// Vector min-sum update: `out[i] = f(alpha[i], alpha[i + len/2])`.
pub fn f_op<D: LlrDomain>(dom: &D, alpha: &[D::Llr]) -> Vec<D::Llr> {
    let m = alpha.len() / 2;
    debug_assert_eq!(alpha.len() % 2, 0);
    (0..m).map(|i| dom.f(alpha[i], alpha[i + m])).collect()
}

/// Vector variable update: `out[i] = alpha[i+m] ± alpha[i]` keyed by the
/// left child's bit estimates.
pub fn g_op<D: LlrDomain>(dom: &D, alpha: &[D::Llr], beta_left: &[u8]) -> Vec<D::Llr> {
    let m = alpha.len() / 2;
    debug_assert_eq!(beta_left.len(), m);
    (0..m)
        .map(|i| dom.g(alpha[i], alpha[i + m], beta_left[i]))
        .collect()
}

/// Combines children bit estimates: lower half XOR, upper half copied.
pub fn combine_op(beta_left: &[u8], beta_right: &[u8]) -> Vec<u8> {
    debug_assert_eq!(beta_left.len(), beta_right.len());
    let mut out = Vec::with_capacity(2 * beta_left.len());
    out.extend(beta_left.iter().zip(beta_right).map(|(&l, &r)| l ^ r));
    out.extend_from_slice(beta_right);
    out
}

fn sc_rec<D: LlrDomain>(dom: &D, frozen: &[bool], alpha: &[D::Llr]) -> Vec<u8> {
    let n = alpha.len();
    if n == 1 {
        return if frozen[0] {
            vec![0]
        } else {
            vec![dom.hard(alpha[0])]
        };
    }
    let m = n / 2;
    let alpha_left = f_op(dom, alpha);
    let beta_left = sc_rec(dom, &frozen[..m], &alpha_left);
    let alpha_right = g_op(dom, alpha, &beta_left);
    let beta_right = sc_rec(dom, &frozen[m..], &alpha_right);
    combine_op(&beta_left, &beta_right)
}

/// Full successive-cancellation decode over any LLR domain.
pub fn sc_decode<D: LlrDomain>(dom: &D, spec: &CodeSpec, channel: &[D::Llr]) -> Result<Vec<u8>> {
    if channel.len() != spec.n() {
        return Err(Error::LengthMismatch {
            expected: spec.n(),
            got: channel.len(),
        });
    }
    Ok(sc_rec(dom, spec.frozen_mask(), channel))
}

/// Floating-point decode of real channel LLRs.
pub fn sc_decode_f64(spec: &CodeSpec, channel: &[f64]) -> Result<Vec<u8>> {
    sc_decode(&FloatLlr, spec, channel)
}

/// Fixed-point decode of already-quantized channel LLRs.
pub fn sc_decode_fixed(spec: &CodeSpec, quant: QuantSpec, channel: &[QLlr]) -> Result<Vec<u8>> {
    sc_decode(&FixedLlr::new(quant), spec, channel)
}
