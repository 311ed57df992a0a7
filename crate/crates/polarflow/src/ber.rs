//! BPSK/AWGN link-level simulation: FER/BER Monte-Carlo estimation for any
//! of the toolkit's decoders.
//!
//! Randomness is keyed per `(seed, sweep point, frame index)` with a
//! counter-seeded ChaCha stream, so results are byte-identical regardless of
//! how many worker threads run the sweep. Frames are processed in batches;
//! each batch is merged in frame order before the stopping rule is checked.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::code::CodeSpec;
use crate::encode::encode_systematic;
use crate::fastssc::{self, DecoderTree, NodeConstraints};
use crate::llr::{FixedLlr, FloatLlr};
use crate::quant::{QLlr, QuantSpec};
use crate::sc;
use crate::Result;

/// Channel and scaling parameters for one Eb/N0 point.
#[derive(Debug, Clone, Copy)]
pub struct ChannelConfig {
    pub ebn0_db: f64,
    /// Code rate used for noise scaling.
    pub rate: f64,
    pub seed: u64,
    /// Multiplies channel LLRs before quantization.
    pub llr_scale: f64,
}

impl ChannelConfig {
    /// Noise variance `1 / (2 R Eb/N0)`.
    pub fn sigma2(&self) -> f64 {
        1.0 / (2.0 * self.rate * 10f64.powf(self.ebn0_db / 10.0))
    }
}

/// BPSK-maps a codeword (0 -> +1, 1 -> -1), adds white Gaussian noise and
/// returns the channel LLRs `2 y / sigma^2`, scaled by `llr_scale`.
pub fn transmit<R: Rng>(codeword: &[u8], cfg: &ChannelConfig, rng: &mut R) -> Vec<f64> {
    let sigma2 = cfg.sigma2();
    let sigma = sigma2.sqrt();
    codeword
        .iter()
        .map(|&b| {
            let x = if b == 0 { 1.0 } else { -1.0 };
            let y = x + sigma * standard_normal(rng);
            cfg.llr_scale * 2.0 * y / sigma2
        })
        .collect()
}

/// Box-Muller standard normal; two uniforms per draw keeps the stream
/// layout independent of the platform's float rounding.
fn standard_normal<R: Rng>(rng: &mut R) -> f64 {
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen::<f64>();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

/// The decoders a sweep can drive.
pub trait FrameDecoder: Sync {
    /// Decodes real channel LLRs into a codeword estimate.
    fn decode_frame(&self, llr: &[f64]) -> Vec<u8>;
    /// Identifier written to result rows.
    fn id(&self) -> String;
    /// Quantization label written to result rows ("float" if none).
    fn quant_label(&self) -> String {
        "float".into()
    }
}

/// Floating-point successive cancellation.
pub struct ScFloatDecoder {
    pub spec: CodeSpec,
}

impl FrameDecoder for ScFloatDecoder {
    fn decode_frame(&self, llr: &[f64]) -> Vec<u8> {
        sc::sc_decode_f64(&self.spec, llr).expect("frame length checked upstream")
    }

    fn id(&self) -> String {
        "sc-float".into()
    }
}

/// Fixed-point successive cancellation.
pub struct ScFixedDecoder {
    pub spec: CodeSpec,
    pub quant: QuantSpec,
}

impl FrameDecoder for ScFixedDecoder {
    fn decode_frame(&self, llr: &[f64]) -> Vec<u8> {
        let q: Vec<QLlr> = llr
            .iter()
            .map(|&l| self.quant.quantize_channel(l, 1.0))
            .collect();
        sc::sc_decode_fixed(&self.spec, self.quant, &q).expect("frame length checked upstream")
    }

    fn id(&self) -> String {
        "sc-fixed".into()
    }

    fn quant_label(&self) -> String {
        self.quant.to_string()
    }
}

/// Fixed-point pruned-tree decoding.
pub struct FastSscFixedDecoder {
    pub tree: DecoderTree,
    pub quant: QuantSpec,
}

impl FastSscFixedDecoder {
    pub fn new(spec: &CodeSpec, constraints: NodeConstraints, quant: QuantSpec) -> Self {
        FastSscFixedDecoder {
            tree: fastssc::build_tree(spec, constraints),
            quant,
        }
    }
}

impl FrameDecoder for FastSscFixedDecoder {
    fn decode_frame(&self, llr: &[f64]) -> Vec<u8> {
        let q: Vec<QLlr> = llr
            .iter()
            .map(|&l| self.quant.quantize_channel(l, 1.0))
            .collect();
        fastssc::fastssc_decode_fixed(&self.tree, self.quant, &q)
            .expect("frame length checked upstream")
    }

    fn id(&self) -> String {
        "fastssc-fixed".into()
    }

    fn quant_label(&self) -> String {
        self.quant.to_string()
    }
}

/// Floating-point pruned-tree decoding.
pub struct FastSscFloatDecoder {
    pub tree: DecoderTree,
}

impl FrameDecoder for FastSscFloatDecoder {
    fn decode_frame(&self, llr: &[f64]) -> Vec<u8> {
        fastssc::fastssc_decode_f64(&self.tree, llr).expect("frame length checked upstream")
    }

    fn id(&self) -> String {
        "fastssc-float".into()
    }
}

/// Stopping rule for one Eb/N0 point.
#[derive(Debug, Clone, Copy)]
pub struct StopRule {
    pub min_frame_errors: u64,
    pub max_frames: u64,
}

impl Default for StopRule {
    fn default() -> Self {
        StopRule {
            min_frame_errors: 100,
            max_frames: 10_000_000,
        }
    }
}

/// Monte-Carlo record for one (Eb/N0, decoder) pair.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub ebn0_db: f64,
    pub frames: u64,
    pub bit_errors: u64,
    pub frame_errors: u64,
    pub ber: f64,
    pub fer: f64,
    pub decoder: String,
    pub quant: String,
    pub code: String,
}

/// CSV header matching [`result_rows_to_csv`].
pub const RESULT_CSV_HEADER: &str =
    "ebn0_db,frames,bit_errors,frame_errors,ber,fer,decoder,quant,code";

pub fn result_rows_to_csv(rows: &[ResultRow]) -> String {
    let mut out = String::from(RESULT_CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{:.6e},{:.6e},{},{},{}\n",
            r.ebn0_db,
            r.frames,
            r.bit_errors,
            r.frame_errors,
            r.ber,
            r.fer,
            r.decoder,
            r.quant,
            r.code
        ));
    }
    out
}

fn mix_seed(seed: u64, point: u64, frame: u64) -> u64 {
    // splitmix64 over the packed key; cheap and collision-free enough for
    // stream separation.
    let mut z = seed
        .wrapping_add(point.wrapping_mul(0x9e37_79b9_7f4a_7c15))
        .wrapping_add(frame.wrapping_mul(0xbf58_476d_1ce4_e5b9));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// RNG for one simulated frame, fully determined by `(seed, point, frame)`.
pub fn frame_rng(seed: u64, point: u64, frame: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(mix_seed(seed, point, frame))
}

#[derive(Debug, Clone, Copy, Default)]
struct FrameOutcome {
    bit_errors: u64,
    frame_error: bool,
    // Split of bit errors between codeword halves, for assembled-code
    // diagnostics.
    left_half_error: bool,
    right_half_error: bool,
}

fn simulate_frame(
    spec: &CodeSpec,
    decoder: &dyn FrameDecoder,
    cfg: &ChannelConfig,
    point: u64,
    frame: u64,
) -> FrameOutcome {
    let mut rng = frame_rng(cfg.seed, point, frame);
    let info: Vec<u8> = (0..spec.k()).map(|_| rng.gen_range(0..2u8)).collect();
    let codeword = encode_systematic(spec, &info).expect("info length matches spec");
    let llr = transmit(&codeword, cfg, &mut rng);
    let estimate = decoder.decode_frame(&llr);

    let half = spec.n() / 2;
    let mut out = FrameOutcome::default();
    for &i in &spec.info_indices() {
        if estimate[i] != codeword[i] {
            out.bit_errors += 1;
            if i < half {
                out.left_half_error = true;
            } else {
                out.right_half_error = true;
            }
        }
    }
    out.frame_error = out.bit_errors > 0;
    out
}

/// Detailed tallies of one sweep point (superset of a [`ResultRow`]).
#[derive(Debug, Clone, Copy, Default)]
pub struct PointStats {
    pub frames: u64,
    pub bit_errors: u64,
    pub frame_errors: u64,
    pub left_half_frame_errors: u64,
    pub right_half_frame_errors: u64,
}

impl PointStats {
    pub fn fer(&self) -> f64 {
        self.frame_errors as f64 / self.frames as f64
    }

    pub fn ber(&self, k: usize) -> f64 {
        self.bit_errors as f64 / (self.frames as f64 * k as f64)
    }
}

/// Simulates one Eb/N0 point until the stopping rule is met.
pub fn run_point(
    spec: &CodeSpec,
    decoder: &dyn FrameDecoder,
    cfg: &ChannelConfig,
    point: u64,
    stop: StopRule,
) -> PointStats {
    const BATCH: u64 = 2048;
    let mut stats = PointStats::default();
    let mut next_frame = 0u64;
    while stats.frame_errors < stop.min_frame_errors && stats.frames < stop.max_frames {
        let batch = BATCH.min(stop.max_frames - stats.frames);
        let outcomes: Vec<FrameOutcome> = (next_frame..next_frame + batch)
            .into_par_iter()
            .map(|frame| simulate_frame(spec, decoder, cfg, point, frame))
            .collect();
        // Merge in frame order; the tallies are order-insensitive anyway,
        // which is what makes the sweep scheduling-independent.
        for o in outcomes {
            stats.frames += 1;
            stats.bit_errors += o.bit_errors;
            stats.frame_errors += u64::from(o.frame_error);
            stats.left_half_frame_errors += u64::from(o.left_half_error);
            stats.right_half_frame_errors += u64::from(o.right_half_error);
            debug_assert!(o.bit_errors == 0 || o.frame_error);
        }
        next_frame += batch;
    }
    stats
}

/// Runs a decoder across an Eb/N0 sweep and returns one row per point.
pub fn montecarlo(
    spec: &CodeSpec,
    decoder: &dyn FrameDecoder,
    ebn0_points_db: &[f64],
    seed: u64,
    llr_scale: f64,
    stop: StopRule,
) -> Vec<ResultRow> {
    ebn0_points_db
        .iter()
        .enumerate()
        .map(|(point, &ebn0_db)| {
            let cfg = ChannelConfig {
                ebn0_db,
                rate: spec.rate(),
                seed,
                llr_scale,
            };
            let stats = run_point(spec, decoder, &cfg, point as u64, stop);
            ResultRow {
                ebn0_db,
                frames: stats.frames,
                bit_errors: stats.bit_errors,
                frame_errors: stats.frame_errors,
                ber: stats.ber(spec.k()),
                fer: stats.fer(),
                decoder: decoder.id(),
                quant: decoder.quant_label(),
                code: format!("({}, {})", spec.n(), spec.k()),
            }
        })
        .collect()
}

/// Outcome of a paired SC / Fast-SSC equivalence run.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct EquivalenceReport {
    pub trials: u64,
    pub mismatches: u64,
    /// First mismatching trial index, if any.
    pub first_mismatch: Option<u64>,
}

/// Decodes identical quantized LLR streams with the reference recursion and
/// the pruned tree, counting mismatching codeword estimates. Channel noise
/// cycles through a range of Eb/N0 points for coverage.
pub fn equivalence_run(
    spec: &CodeSpec,
    constraints: NodeConstraints,
    quant: QuantSpec,
    trials: u64,
    seed: u64,
) -> Result<EquivalenceReport> {
    if trials == 0 {
        return Ok(EquivalenceReport::default());
    }
    let tree = fastssc::build_tree(spec, constraints);
    let dom = FixedLlr::new(quant);
    let ebn0_grid = [0.0, 1.0, 2.0, 3.0, 4.0, 5.0];
    let mismatch_trials: Vec<u64> = (0..trials)
        .into_par_iter()
        .filter(|&trial| {
            let cfg = ChannelConfig {
                ebn0_db: ebn0_grid[(trial % ebn0_grid.len() as u64) as usize],
                rate: spec.rate().max(1.0 / spec.n() as f64),
                seed,
                llr_scale: 1.0,
            };
            let mut rng = frame_rng(seed, u64::MAX, trial);
            let info: Vec<u8> = (0..spec.k()).map(|_| rng.gen_range(0..2u8)).collect();
            let codeword = encode_systematic(spec, &info).expect("valid spec");
            let llr = transmit(&codeword, &cfg, &mut rng);
            let q: Vec<QLlr> = llr
                .iter()
                .map(|&l| quant.quantize_channel(l, 1.0))
                .collect();
            let slow = sc::sc_decode_fixed(spec, quant, &q).expect("length ok");
            let fast = fastssc::fastssc_decode(&dom, &tree, &q).expect("length ok");
            slow != fast
        })
        .collect();
    Ok(EquivalenceReport {
        trials,
        mismatches: mismatch_trials.len() as u64,
        first_mismatch: mismatch_trials.into_iter().min(),
    })
}

/// Floating-point twin of [`equivalence_run`].
pub fn equivalence_run_f64(
    spec: &CodeSpec,
    constraints: NodeConstraints,
    trials: u64,
    seed: u64,
) -> Result<EquivalenceReport> {
    if trials == 0 {
        return Ok(EquivalenceReport::default());
    }
    let tree = fastssc::build_tree(spec, constraints);
    let mismatch_trials: Vec<u64> = (0..trials)
        .into_par_iter()
        .filter(|&trial| {
            let cfg = ChannelConfig {
                ebn0_db: 2.0,
                rate: spec.rate().max(1.0 / spec.n() as f64),
                seed,
                llr_scale: 1.0,
            };
            let mut rng = frame_rng(seed, u64::MAX - 1, trial);
            let info: Vec<u8> = (0..spec.k()).map(|_| rng.gen_range(0..2u8)).collect();
            let codeword = encode_systematic(spec, &info).expect("valid spec");
            let llr = transmit(&codeword, &cfg, &mut rng);
            let slow = sc::sc_decode(&FloatLlr, spec, &llr).expect("length ok");
            let fast = fastssc::fastssc_decode_f64(&tree, &llr).expect("length ok");
            slow != fast
        })
        .collect();
    Ok(EquivalenceReport {
        trials,
        mismatches: mismatch_trials.len() as u64,
        first_mismatch: mismatch_trials.into_iter().min(),
    })
}
