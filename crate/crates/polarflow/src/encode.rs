//! Non-systematic and systematic polar encoding over GF(2).
//!
//! The transform is the recursive butterfly in natural bit order (no
//! bit-reversal permutation), so encoder indices, tree spans and decoder
//! indices all line up. Frozen positions carry zero.

use crate::code::CodeSpec;
use crate::{Error, Result};

/// Applies the polar transform in place: `x <- x * F^(log2 n)` over GF(2).
///
/// The matrix is self-inverse, so this doubles as the inverse transform.
pub fn polar_transform_in_place(bits: &mut [u8]) {
    let n = bits.len();
    debug_assert!(n.is_power_of_two());
    let mut h = 1;
    while h < n {
        for block in (0..n).step_by(2 * h) {
            for j in block..block + h {
                bits[j] ^= bits[j + h];
            }
        }
        h *= 2;
    }
}

/// Out-of-place polar transform.
pub fn polar_transform(u: &[u8]) -> Result<Vec<u8>> {
    if u.is_empty() || !u.len().is_power_of_two() {
        return Err(Error::LengthNotPowerOfTwo(u.len()));
    }
    let mut x = u.to_vec();
    polar_transform_in_place(&mut x);
    Ok(x)
}

/// Non-systematic encoding: information bits go to the non-frozen transform-
/// domain positions in ascending order, frozen positions are zero.
pub fn encode_nonsystematic(spec: &CodeSpec, info: &[u8]) -> Result<Vec<u8>> {
    let mut u = place_info(spec, info)?;
    polar_transform_in_place(&mut u);
    Ok(u)
}

/// Systematic encoding by the two-pass transform method: the resulting
/// codeword carries `info` verbatim at the non-frozen positions and its
/// transform is zero on the frozen set.
pub fn encode_systematic(spec: &CodeSpec, info: &[u8]) -> Result<Vec<u8>> {
    let mut x = place_info(spec, info)?;
    polar_transform_in_place(&mut x);
    for (i, b) in x.iter_mut().enumerate() {
        if spec.is_frozen(i) {
            *b = 0;
        }
    }
    polar_transform_in_place(&mut x);
    Ok(x)
}

/// Reads the information bits back out of a systematic codeword.
pub fn extract_info(spec: &CodeSpec, codeword: &[u8]) -> Vec<u8> {
    spec.info_indices().iter().map(|&i| codeword[i]).collect()
}

fn place_info(spec: &CodeSpec, info: &[u8]) -> Result<Vec<u8>> {
    if info.len() != spec.k() {
        return Err(Error::LengthMismatch {
            expected: spec.k(),
            got: info.len(),
        });
    }
    debug_assert!(info.iter().all(|&b| b <= 1));
    let mut u = vec![0u8; spec.n()];
    for (&pos, &bit) in spec.info_indices().iter().zip(info) {
        u[pos] = bit;
    }
    Ok(u)
}
