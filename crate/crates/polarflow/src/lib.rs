//! Polar-code engineering toolkit.
//!
//! `polarflow` covers the full path from a polar code definition to a
//! hardware-style performance model of its decoder:
//!
//! - **Code construction** ([`code`]): frozen-set construction via the
//!   Bhattacharyya recursion or a Gaussian approximation, assembly of master
//!   codes from two constituent codes, and a JSON file format for code specs.
//! - **Encoding** ([`encode`]): non-systematic and systematic polar encoding
//!   over GF(2) in natural bit order.
//! - **Decoding** ([`sc`], [`fastssc`]): a reference successive-cancellation
//!   decoder and a pruned-tree Fast-SSC decoder with Rate-0/Rate-1,
//!   repetition, single-parity-check and fused Rep-SPC nodes, bit-exact to
//!   the reference in both floating-point and fixed-point arithmetic.
//! - **Fixed point** ([`quant`]): the `Qi.Qc.Qf` saturating two's-complement
//!   LLR domain used by the hardware models.
//! - **Pipeline compilation** ([`unroll`]): unrolls a decoder tree into a
//!   stage-assigned operation schedule, derives register chains and the
//!   maximum initiation interval, converts long chains to SRAM, and reports
//!   throughput/latency/area.
//! - **Cycle-accurate simulation** ([`pipesim`]): steps the unrolled pipeline
//!   clock by clock with several frames in flight, including multi-mode
//!   operation where constituent-code decoders inside a master decoder are
//!   fed and tapped directly.
//! - **Link-level simulation** ([`ber`]): BPSK/AWGN Monte-Carlo FER/BER
//!   estimation with reproducible per-frame random streams.

pub mod ber;
pub mod code;
pub mod encode;
pub mod fastssc;
pub mod llr;
pub mod pipesim;
pub mod quant;
pub mod refdata;
pub mod sc;
pub mod unroll;

mod error;

pub use error::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
