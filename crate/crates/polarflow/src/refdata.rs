//! Reference figures of the published 65 nm unrolled-decoder implementation,
//! used as calibration targets by the report command and the acceptance
//! suite. Cycle counts depend on register placement choices that were never
//! published, so computed values are printed side by side with these figures
//! rather than asserted against them.

use crate::code::{assemble_master, construct, CodeSpec, ConstructionMethod};
use crate::fastssc::NodeConstraints;
use crate::Result;

/// Design SNR (Es/N0, dB) for the rate-1/2 length-1024 construction,
/// equivalent to a design Eb/N0 of 2.5 dB at rate 1/2.
pub fn design_snr_rate_half_db() -> f64 {
    2.5 + 10.0 * 0.5f64.log10()
}

/// Design SNR (Es/N0, dB) for the rate-5/6 length-1024 construction,
/// equivalent to a design Eb/N0 of 5 dB at rate 853/1024. At this point the
/// construction reproduces the published (512, 363) / (512, 490) halves of
/// the (1024, 853) master exactly.
pub fn design_snr_rate_high_db() -> f64 {
    5.0 + 10.0 * (853.0f64 / 1024.0).log10()
}

/// Reported maximum initiation interval of the (1024, 512) decoder.
pub const REF_IMAX_1024_512: u32 = 167;
/// Reported decoding latency (cycles, load and offload included) of the
/// (1024, 512) decoder.
pub const REF_LATENCY_1024_512: u32 = 364;

/// Node constraints of the published decoder with a 1024-bit master code.
pub fn constraints_nmax_1024() -> NodeConstraints {
    NodeConstraints {
        max_rep: 8,
        max_spc: 4,
        enable_repspc: false,
    }
}

/// Node constraints of the published decoder with a 2048-bit master code.
pub fn constraints_nmax_2048() -> NodeConstraints {
    NodeConstraints {
        max_rep: 16,
        max_spc: 8,
        enable_repspc: true,
    }
}

/// The (1024, 512) code underlying the initiation-interval study.
pub fn code_1024_512() -> Result<CodeSpec> {
    construct(
        1024,
        512,
        design_snr_rate_half_db(),
        ConstructionMethod::GaussianApproximation,
    )
}

/// The (1024, 853) master code of the 1024-bit multi-mode decoder.
pub fn master_1024() -> Result<CodeSpec> {
    construct(
        1024,
        853,
        design_snr_rate_high_db(),
        ConstructionMethod::GaussianApproximation,
    )
}

/// The assembled (2048, 1365) master code of the 2048-bit multi-mode
/// decoder: a (1024, 512) constituent on the left, (1024, 853) on the right.
pub fn master_2048() -> Result<CodeSpec> {
    assemble_master(&code_1024_512()?, &master_1024()?)
}

/// Subtree spans (offset, length) of the eight modes supported by the
/// 1024-bit decoder, master first.
pub const MODE_SPANS_1024: [(usize, usize); 8] = [
    (0, 1024),
    (0, 512),
    (512, 512),
    (0, 256),
    (256, 256),
    (256, 128),
    (0, 128),
    (128, 128),
];

/// Subtree spans of the ten modes supported by the 2048-bit decoder,
/// master first. The right half hosts the (1024, 853) constituent and its
/// subcodes; the left half is the (1024, 512) constituent.
pub const MODE_SPANS_2048: [(usize, usize); 10] = [
    (0, 2048),
    (0, 1024),
    (1024, 1024),
    (1024, 512),
    (1536, 512),
    (1024, 256),
    (1280, 256),
    (1280, 128),
    (1024, 128),
    (1152, 128),
];

/// One row of the published multi-mode latency/throughput table.
#[derive(Debug, Clone, Copy)]
pub struct ModeRefRow {
    pub n: usize,
    pub k: usize,
    /// Info throughput (Gbit/s) on the 1024-bit decoder at 500 MHz, I = 20.
    pub info_tp_1024_gbps: Option<f64>,
    /// Info throughput (Gbit/s) on the 2048-bit decoder at 250 MHz, I = 20.
    pub info_tp_2048_gbps: Option<f64>,
    /// Latency (cycles) on the 1024-bit decoder.
    pub latency_1024_cc: Option<u32>,
    /// Latency (cycles) on the 2048-bit decoder.
    pub latency_2048_cc: Option<u32>,
}

/// Published per-mode throughput and latency figures.
pub const MODE_REF_ROWS: [ModeRefRow; 10] = [
    ModeRefRow {
        n: 2048,
        k: 1365,
        info_tp_1024_gbps: None,
        info_tp_2048_gbps: Some(17.1),
        latency_1024_cc: None,
        latency_2048_cc: Some(503),
    },
    ModeRefRow {
        n: 1024,
        k: 853,
        info_tp_1024_gbps: Some(21.3),
        info_tp_2048_gbps: Some(10.7),
        latency_1024_cc: Some(323),
        latency_2048_cc: Some(236),
    },
    ModeRefRow {
        n: 1024,
        k: 512,
        info_tp_1024_gbps: None,
        info_tp_2048_gbps: Some(6.4),
        latency_1024_cc: None,
        latency_2048_cc: Some(265),
    },
    ModeRefRow {
        n: 512,
        k: 490,
        info_tp_1024_gbps: Some(12.3),
        info_tp_2048_gbps: Some(6.2),
        latency_1024_cc: Some(95),
        latency_2048_cc: Some(75),
    },
    ModeRefRow {
        n: 512,
        k: 363,
        info_tp_1024_gbps: Some(9.1),
        info_tp_2048_gbps: Some(4.5),
        latency_1024_cc: Some(226),
        latency_2048_cc: Some(159),
    },
    ModeRefRow {
        n: 256,
        k: 228,
        info_tp_1024_gbps: Some(5.7),
        info_tp_2048_gbps: Some(2.6),
        latency_1024_cc: Some(86),
        latency_2048_cc: Some(61),
    },
    ModeRefRow {
        n: 256,
        k: 135,
        info_tp_1024_gbps: Some(3.4),
        info_tp_2048_gbps: Some(1.7),
        latency_1024_cc: Some(138),
        latency_2048_cc: Some(96),
    },
    ModeRefRow {
        n: 128,
        k: 108,
        info_tp_1024_gbps: Some(2.7),
        info_tp_2048_gbps: Some(1.4),
        latency_1024_cc: Some(54),
        latency_2048_cc: Some(40),
    },
    ModeRefRow {
        n: 128,
        k: 96,
        info_tp_1024_gbps: Some(2.4),
        info_tp_2048_gbps: Some(1.2),
        latency_1024_cc: Some(82),
        latency_2048_cc: Some(52),
    },
    ModeRefRow {
        n: 128,
        k: 39,
        info_tp_1024_gbps: Some(0.98),
        info_tp_2048_gbps: Some(0.49),
        latency_1024_cc: Some(54),
        latency_2048_cc: Some(42),
    },
];

/// One row of the published deep-pipeline scaling table (rate 1/2,
/// 500 MHz).
#[derive(Debug, Clone, Copy)]
pub struct ScalingRefRow {
    pub n: usize,
    pub total_area_mm2: f64,
    pub logic_area_mm2: f64,
    pub memory_area_mm2: f64,
    pub latency_ns: f64,
    pub coded_tp_gbps: f64,
}

/// Published area/latency/throughput of deeply-pipelined rate-1/2 decoders.
#[allow(clippy::approx_constant)] // 3.14 mm^2 is the published figure
pub const SCALING_REF_ROWS: [ScalingRefRow; 5] = [
    ScalingRefRow {
        n: 128,
        total_area_mm2: 0.349,
        logic_area_mm2: 0.05,
        memory_area_mm2: 0.29,
        latency_ns: 152.0,
        coded_tp_gbps: 64.0,
    },
    ScalingRefRow {
        n: 256,
        total_area_mm2: 1.121,
        logic_area_mm2: 0.12,
        memory_area_mm2: 0.99,
        latency_ns: 268.0,
        coded_tp_gbps: 128.0,
    },
    ScalingRefRow {
        n: 512,
        total_area_mm2: 3.413,
        logic_area_mm2: 0.27,
        memory_area_mm2: 3.14,
        latency_ns: 408.0,
        coded_tp_gbps: 256.0,
    },
    ScalingRefRow {
        n: 1024,
        total_area_mm2: 12.369,
        logic_area_mm2: 0.60,
        memory_area_mm2: 11.75,
        latency_ns: 728.0,
        coded_tp_gbps: 512.0,
    },
    ScalingRefRow {
        n: 2048,
        total_area_mm2: 43.541,
        logic_area_mm2: 1.32,
        memory_area_mm2: 42.16,
        latency_ns: 1304.0,
        coded_tp_gbps: 1024.0,
    },
];

/// Published latency (cycles) of length-1024 deeply-pipelined decoders at
/// common rates.
pub const RATE_LATENCY_REF_ROWS: [(usize, u32); 4] =
    [(512, 364), (683, 326), (768, 373), (853, 323)];

/// Published (128, 96) mode detail: enable offset and latency on the
/// 1024-bit decoder at I = 20.
pub const REF_MODE_128_96_I_START_MOD: u32 = 17;
pub const REF_MODE_128_96_LATENCY_CC: u32 = 82;
