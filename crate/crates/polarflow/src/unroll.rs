//! Compilation of a pruned decoder tree into an unrolled, stage-assigned
//! operation schedule, plus the storage and cost model of the resulting
//! pipeline.
//!
//! Every operation of the decode becomes its own pipeline stage; stage
//! indices are prefix sums of per-operation cycle costs along the in-order
//! traversal. Stage 0 is the register holding the channel LLRs. A value
//! produced at stage `p` and last consumed by an operation reading at stage
//! `r` must be carried by a register chain of `r - p + 1` registers (the
//! producer's output register plus `r - p` synchronization registers).
//!
//! With an initiation interval `I`, registers are enabled once every `I`
//! cycles (keyed by pipeline location modulo `I`), which shrinks every chain
//! to `ceil(L / I)` registers. The largest useful interval is the lifetime
//! of the channel LLRs: after the root-level `G` consumes them the input
//! register may be overwritten by the next frame. Long chains can keep their
//! first register and replace the rest by a circular-buffer SRAM of depth
//! `L - 1`.

use serde::Serialize;

use crate::fastssc::{DecoderTree, NodeKind, Span};
use crate::quant::QuantSpec;
use crate::{Error, Result};

/// Pipeline operation kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OpKind {
    F,
    G,
    G0R,
    Combine,
    C0R,
    Rep,
    Spc,
    Rate1,
    RepSpc,
}

impl std::fmt::Display for OpKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            OpKind::F => "F",
            OpKind::G => "G",
            OpKind::G0R => "G0R",
            OpKind::Combine => "Combine",
            OpKind::C0R => "C0R",
            OpKind::Rep => "Rep",
            OpKind::Spc => "SPC",
            OpKind::Rate1 => "Rate1",
            OpKind::RepSpc => "RepSPC",
        };
        f.write_str(s)
    }
}

/// Cycle cost of each operation kind plus frame load/offload.
///
/// The defaults put one register stage behind every operation except Rate-1,
/// which is a wire (hard decisions fuse into the operation feeding them);
/// the fused Rep-SPC node takes two stages. These are the unique values
/// consistent with a decode latency of `3 (log2 Nv - log2 Nspc) + 1` cycles
/// for a pure SPC subtree. All fields are configurable because real
/// register placement varies with the target clock.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CostModel {
    pub f: u32,
    pub g: u32,
    pub g0r: u32,
    pub combine: u32,
    pub c0r: u32,
    pub rep: u32,
    pub spc: u32,
    pub rate1: u32,
    pub repspc: u32,
    pub load_cycles: u32,
    pub offload_cycles: u32,
}

impl Default for CostModel {
    fn default() -> Self {
        CostModel {
            f: 1,
            g: 1,
            g0r: 1,
            combine: 1,
            c0r: 1,
            rep: 1,
            spc: 1,
            rate1: 0,
            repspc: 2,
            load_cycles: 1,
            offload_cycles: 1,
        }
    }
}

impl CostModel {
    pub fn cost(&self, kind: OpKind) -> u32 {
        match kind {
            OpKind::F => self.f,
            OpKind::G => self.g,
            OpKind::G0R => self.g0r,
            OpKind::Combine => self.combine,
            OpKind::C0R => self.c0r,
            OpKind::Rep => self.rep,
            OpKind::Spc => self.spc,
            OpKind::Rate1 => self.rate1,
            OpKind::RepSpc => self.repspc,
        }
    }
}

/// Index into [`Schedule::values`].
pub type ValueId = usize;

/// What a value holds, which fixes its register width.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ValueKind {
    /// Channel LLRs, `qc` bits per position.
    ChannelLlr,
    /// Internal LLRs, `qi` bits per position.
    Llr,
    /// Bit estimates, one bit per position.
    Bits,
}

/// A value flowing through the pipeline.
#[derive(Debug, Clone, Serialize)]
pub struct ValueInfo {
    pub kind: ValueKind,
    /// Number of LLR or bit positions.
    pub span_len: usize,
    /// Stage of the producing operation's output register (0 for the
    /// channel LLRs).
    pub producer_stage: u32,
    /// Producing op index; `None` for the channel LLRs.
    pub producer_op: Option<usize>,
    /// Stages at which consumers read this value.
    pub reads: Vec<u32>,
    /// False when every consumer is a zero-cost operation fused into the
    /// producer's stage; such values are wires, not registers.
    pub registered: bool,
}

impl ValueInfo {
    /// Register-chain length including the producer's output register.
    pub fn chain_len(&self) -> u32 {
        let last = self
            .reads
            .iter()
            .copied()
            .max()
            .unwrap_or(self.producer_stage);
        last - self.producer_stage + 1
    }

    /// Stages the value must persist beyond its production.
    pub fn persist_extra(&self) -> u32 {
        self.chain_len() - 1
    }

    /// Register width in bits for the given quantization.
    pub fn width_bits(&self, quant: QuantSpec) -> u64 {
        let per_pos = match self.kind {
            ValueKind::ChannelLlr => u64::from(quant.qc),
            ValueKind::Llr => u64::from(quant.qi),
            ValueKind::Bits => 1,
        };
        per_pos * self.span_len as u64
    }
}

/// An operation input: a produced value or an all-zero bit constant (the
/// absent operand of `C0R` and of a `Combine` whose right child is Rate-0).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OpInput {
    Value(ValueId),
    ZeroBits(usize),
}

/// One pipeline operation.
#[derive(Debug, Clone, Serialize)]
pub struct Op {
    pub kind: OpKind,
    /// Span of the tree node this operation belongs to.
    pub span: Span,
    pub inputs: Vec<OpInput>,
    pub output: ValueId,
    /// Stage of the output register; prefix sum of costs.
    pub stage: u32,
    pub cost: u32,
}

/// Dataflow bookkeeping for one tree node, used to place multi-mode taps.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct NodeIo {
    /// Soft input feeding the node's subtree; `None` for skipped Rate-0
    /// leaves.
    pub alpha: Option<ValueId>,
    /// The node's bit-estimate output; `None` for Rate-0 (constant zero).
    pub beta: Option<ValueId>,
}

/// Linear operation schedule for one decoder tree.
#[derive(Debug, Clone, Serialize)]
pub struct Schedule {
    pub n: usize,
    pub k: usize,
    pub ops: Vec<Op>,
    pub values: Vec<ValueInfo>,
    /// Per tree-node dataflow taps, indexed like the tree's nodes.
    pub node_io: Vec<NodeIo>,
    /// Stage of the last output register; decode-only cycle count.
    pub depth: u32,
    pub load_cycles: u32,
    pub offload_cycles: u32,
    /// Frozen mask reconstructed from the tree's leaves.
    pub frozen: Vec<bool>,
}

impl Schedule {
    /// Decode-only cycles (load and offload excluded).
    pub fn decode_cycles(&self) -> u32 {
        self.depth
    }

    /// Load + decode + offload.
    pub fn latency_cycles(&self) -> u32 {
        self.load_cycles + self.depth + self.offload_cycles
    }

    /// The channel-LLR value id.
    pub fn channel_value(&self) -> ValueId {
        0
    }

    /// Information bit count within a span of the frozen mask.
    pub fn span_k(&self, span: Span) -> usize {
        self.frozen[span.offset..span.offset + span.len]
            .iter()
            .filter(|&&f| !f)
            .count()
    }

    /// Graphviz rendering of the unrolled dataflow.
    pub fn to_dot(&self) -> String {
        use std::fmt::Write as _;
        let mut out =
            String::from("digraph unrolled {\n  rankdir=LR;\n  node [fontname=\"monospace\"];\n");
        let _ = writeln!(out, "  ch [label=\"alpha_c\" shape=cds];");
        for (i, op) in self.ops.iter().enumerate() {
            let _ = writeln!(
                out,
                "  op{i} [label=\"{} {} @{}\" shape=box];",
                op.kind, op.span, op.stage
            );
            for inp in &op.inputs {
                match *inp {
                    OpInput::Value(v) => match self.values[v].producer_op {
                        Some(p) => {
                            let _ = writeln!(out, "  op{p} -> op{i};");
                        }
                        None => {
                            let _ = writeln!(out, "  ch -> op{i};");
                        }
                    },
                    OpInput::ZeroBits(_) => {
                        let _ = writeln!(out, "  zero -> op{i} [style=dotted];");
                    }
                }
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("schedule serialization cannot fail")
    }
}

struct Emitter<'a> {
    tree: &'a DecoderTree,
    cm: &'a CostModel,
    ops: Vec<Op>,
    values: Vec<ValueInfo>,
    node_io: Vec<NodeIo>,
    cursor: u32,
}

impl Emitter<'_> {
    fn new_value(
        &mut self,
        kind: ValueKind,
        span_len: usize,
        producer_op: Option<usize>,
    ) -> ValueId {
        let producer_stage = self.cursor;
        self.values.push(ValueInfo {
            kind,
            span_len,
            producer_stage,
            producer_op,
            reads: Vec::new(),
            registered: true,
        });
        self.values.len() - 1
    }

    /// Emits one op, advancing the stage cursor by its cost.
    fn emit(
        &mut self,
        kind: OpKind,
        span: Span,
        inputs: Vec<OpInput>,
        out_kind: ValueKind,
        out_len: usize,
    ) -> ValueId {
        let mut cost = self.cm.cost(kind);
        // A zero-cost op needs something to fuse into; at the very head of
        // the pipeline it must still occupy a register stage.
        if cost == 0 && self.cursor == 0 {
            cost = 1;
        }
        let read_stage = self.cursor;
        for inp in &inputs {
            if let OpInput::Value(v) = *inp {
                self.values[v].reads.push(read_stage);
            }
        }
        self.cursor += cost;
        let op_idx = self.ops.len();
        let output = self.new_value(out_kind, out_len, Some(op_idx));
        self.ops.push(Op {
            kind,
            span,
            inputs,
            output,
            stage: self.cursor,
            cost,
        });
        output
    }

    /// Emits the subtree rooted at `node`, consuming soft input `alpha`.
    /// Returns the node's bit-estimate value (`None` for Rate-0).
    fn emit_node(&mut self, node: usize, alpha: ValueId) -> Option<ValueId> {
        let n = self.tree.nodes()[node];
        let span = n.span;
        let beta = match n.kind {
            NodeKind::Rate0 => {
                self.node_io[node] = NodeIo {
                    alpha: Some(alpha),
                    beta: None,
                };
                return None;
            }
            NodeKind::Rate1 => Some(self.emit(
                OpKind::Rate1,
                span,
                vec![OpInput::Value(alpha)],
                ValueKind::Bits,
                span.len,
            )),
            NodeKind::Rep => Some(self.emit(
                OpKind::Rep,
                span,
                vec![OpInput::Value(alpha)],
                ValueKind::Bits,
                span.len,
            )),
            NodeKind::Spc => Some(self.emit(
                OpKind::Spc,
                span,
                vec![OpInput::Value(alpha)],
                ValueKind::Bits,
                span.len,
            )),
            NodeKind::RepSpc => Some(self.emit(
                OpKind::RepSpc,
                span,
                vec![OpInput::Value(alpha)],
                ValueKind::Bits,
                span.len,
            )),
            NodeKind::RateR => {
                let (left, right) = n.children.expect("Rate-R has children");
                let m = span.len / 2;
                let out = if self.tree.nodes()[left].kind == NodeKind::Rate0 {
                    // Left estimate is all-zero a priori: G0R, then C0R
                    // duplicates the right estimate.
                    let alpha_r = self.emit(
                        OpKind::G0R,
                        span,
                        vec![OpInput::Value(alpha)],
                        ValueKind::Llr,
                        m,
                    );
                    let beta_r = self
                        .emit_node(right, alpha_r)
                        .expect("sibling of Rate-0 cannot be Rate-0");
                    self.emit(
                        OpKind::C0R,
                        span,
                        vec![OpInput::Value(beta_r)],
                        ValueKind::Bits,
                        span.len,
                    )
                } else {
                    let alpha_l = self.emit(
                        OpKind::F,
                        span,
                        vec![OpInput::Value(alpha)],
                        ValueKind::Llr,
                        m,
                    );
                    let beta_l = self
                        .emit_node(left, alpha_l)
                        .expect("non-Rate-0 left child has output");
                    if self.tree.nodes()[right].kind == NodeKind::Rate0 {
                        self.node_io[right] = NodeIo {
                            alpha: None,
                            beta: None,
                        };
                        self.emit(
                            OpKind::Combine,
                            span,
                            vec![OpInput::Value(beta_l), OpInput::ZeroBits(m)],
                            ValueKind::Bits,
                            span.len,
                        )
                    } else {
                        let alpha_r = self.emit(
                            OpKind::G,
                            span,
                            vec![OpInput::Value(alpha), OpInput::Value(beta_l)],
                            ValueKind::Llr,
                            m,
                        );
                        let beta_r = self
                            .emit_node(right, alpha_r)
                            .expect("non-Rate-0 right child has output");
                        self.emit(
                            OpKind::Combine,
                            span,
                            vec![OpInput::Value(beta_l), OpInput::Value(beta_r)],
                            ValueKind::Bits,
                            span.len,
                        )
                    }
                };
                Some(out)
            }
        };
        self.node_io[node] = NodeIo {
            alpha: Some(alpha),
            beta,
        };
        beta
    }
}

/// Unrolls a decoder tree into a linear schedule under the given cost model.
pub fn unroll(tree: &DecoderTree, cm: &CostModel) -> Schedule {
    let mut e = Emitter {
        tree,
        cm,
        ops: Vec::new(),
        values: Vec::new(),
        node_io: vec![
            NodeIo {
                alpha: None,
                beta: None
            };
            tree.nodes().len()
        ],
        cursor: 0,
    };
    // Value 0 is always the channel LLR register at stage 0.
    let channel = e.new_value(ValueKind::ChannelLlr, tree.n(), None);
    e.emit_node(0, channel);

    let ops = e.ops;
    let mut values = e.values;
    // Values consumed only by fused (zero-cost) operations are wires.
    for (id, value) in values.iter_mut().enumerate() {
        if value.producer_op.is_some() && !value.reads.is_empty() {
            let consumers: Vec<&Op> = ops
                .iter()
                .filter(|op| op.inputs.contains(&OpInput::Value(id)))
                .collect();
            if !consumers.is_empty() && consumers.iter().all(|op| op.cost == 0) {
                value.registered = false;
            }
        }
    }

    let frozen = reconstruct_mask(tree);
    Schedule {
        n: tree.n(),
        k: tree.k(),
        depth: e.cursor,
        ops,
        values,
        node_io: e.node_io,
        load_cycles: cm.load_cycles,
        offload_cycles: cm.offload_cycles,
        frozen,
    }
}

/// Rebuilds the frozen mask from the pruned tree's leaf kinds.
fn reconstruct_mask(tree: &DecoderTree) -> Vec<bool> {
    let mut frozen = vec![false; tree.n()];
    for (_, leaf) in tree.leaves() {
        let Span { offset, len } = leaf.span;
        match leaf.kind {
            NodeKind::Rate0 => frozen[offset..offset + len].fill(true),
            NodeKind::Rate1 => {}
            NodeKind::Rep => frozen[offset..offset + len - 1].fill(true),
            NodeKind::Spc => frozen[offset] = true,
            NodeKind::RepSpc => {
                for d in [0, 1, 2, 4] {
                    frozen[offset + d] = true;
                }
            }
            NodeKind::RateR => unreachable!(),
        }
    }
    frozen
}

/// The largest admissible initiation interval: the lifetime of the channel
/// LLRs, i.e. the stage count until the last operation that reads them.
pub fn compute_imax(s: &Schedule) -> u32 {
    let channel = s.channel_value();
    s.values[channel]
        .reads
        .iter()
        .map(|&r| r + 1)
        .max()
        .unwrap_or(1)
}

/// Storage backing one register chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Storage {
    Registers,
    /// First register kept; the remaining stages live in a circular-buffer
    /// SRAM of the given depth.
    Sram {
        depth: u32,
        width_bits: u64,
    },
}

/// One value's storage after interval assignment.
#[derive(Debug, Clone, Serialize)]
pub struct ChainInfo {
    pub value: ValueId,
    /// Full chain length at interval 1 (producer register included).
    pub full_len: u32,
    /// Registers needed at the plan's interval: `ceil(full_len / I)`.
    pub eff_len: u32,
    pub width_bits: u64,
    pub storage: Storage,
}

/// A schedule bound to an initiation interval and a quantization.
#[derive(Debug, Clone, Serialize)]
pub struct PipelinePlan {
    pub schedule: Schedule,
    pub interval: u32,
    pub quant: QuantSpec,
    /// Indexed by value id; `None` for unregistered (wire) values.
    pub chains: Vec<Option<ChainInfo>>,
}

impl PipelinePlan {
    /// Total register bits (SRAM capacity excluded).
    pub fn register_bits(&self) -> u64 {
        self.chains
            .iter()
            .flatten()
            .map(|c| match c.storage {
                Storage::Registers => u64::from(c.eff_len) * c.width_bits,
                Storage::Sram { .. } => c.width_bits,
            })
            .sum()
    }

    /// Total SRAM capacity in bits.
    pub fn sram_bits(&self) -> u64 {
        self.chains
            .iter()
            .flatten()
            .map(|c| match c.storage {
                Storage::Registers => 0,
                Storage::Sram { depth, width_bits } => u64::from(depth) * width_bits,
            })
            .sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plan serialization cannot fail")
    }
}

/// Binds a schedule to an initiation interval: every chain of length `L`
/// becomes `ceil(L / I)` registers.
pub fn apply_interval(s: &Schedule, interval: u32, quant: QuantSpec) -> Result<PipelinePlan> {
    let imax = compute_imax(s);
    if interval == 0 || interval > imax {
        return Err(Error::IntervalOutOfRange {
            interval,
            max: imax,
        });
    }
    let chains = s
        .values
        .iter()
        .enumerate()
        .map(|(id, v)| {
            v.registered.then(|| {
                let full = v.chain_len();
                ChainInfo {
                    value: id,
                    full_len: full,
                    eff_len: full.div_ceil(interval),
                    width_bits: v.width_bits(quant),
                    storage: Storage::Registers,
                }
            })
        })
        .collect();
    Ok(PipelinePlan {
        schedule: s.clone(),
        interval,
        quant,
        chains,
    })
}

/// Replaces every register chain of effective length `>= min_chain` by its
/// first register plus an SRAM of depth `len - 1`. Only chains whose
/// consumers read the first and last positions qualify (which is every chain
/// under the default cost model); others are left as registers.
pub fn sram_convert(plan: &PipelinePlan, min_chain: u32) -> Result<PipelinePlan> {
    if min_chain < 2 {
        return Err(Error::InvalidArgument(format!(
            "min_chain must be at least 2, got {min_chain}"
        )));
    }
    let mut out = plan.clone();
    for chain in out.chains.iter_mut().flatten() {
        if chain.eff_len < min_chain {
            continue;
        }
        let v = &plan.schedule.values[chain.value];
        let endpoints_only = v.reads.iter().all(|&r| {
            let idx = (r - v.producer_stage) / plan.interval;
            idx == 0 || idx == chain.eff_len - 1
        });
        if endpoints_only {
            chain.storage = Storage::Sram {
                depth: chain.eff_len - 1,
                width_bits: chain.width_bits,
            };
        }
    }
    Ok(out)
}

/// Throughput/latency/area estimate for a plan.
#[derive(Debug, Clone, Serialize)]
pub struct CostReport {
    pub n: usize,
    pub k: usize,
    pub interval: u32,
    pub frequency_hz: f64,
    /// Coded throughput `N * f / I` in bit/s.
    pub coded_bps: f64,
    /// Information throughput `R * T_C` in bit/s.
    pub info_bps: f64,
    pub latency_cycles: u32,
    pub latency_s: f64,
    /// Output bus width in bits (equal to the code length).
    pub bus_width: usize,
    /// Combinational logic estimate `N log2(N) / 17000` in mm^2 (65 nm).
    pub logic_area_mm2: f64,
    /// Deep-pipeline memory-area fit `a + b N + c N^2` in mm^2 (65 nm).
    pub memory_area_mm2: f64,
    pub register_bits: u64,
    pub sram_bits: u64,
}

/// 65 nm logic-area fit constant: `N log2 N / 17000` mm^2.
pub const LOGIC_AREA_DIVISOR: f64 = 17_000.0;

/// 65 nm deep-pipeline memory-area fit `a + b N + c N^2` (mm^2).
pub const MEM_FIT_A: f64 = 0.249;
pub const MEM_FIT_B: f64 = 2.466e-3;
pub const MEM_FIT_C: f64 = 8.912e-6;

pub fn logic_area_mm2(n: usize) -> f64 {
    let nf = n as f64;
    nf * nf.log2() / LOGIC_AREA_DIVISOR
}

pub fn memory_area_fit_mm2(n: usize) -> f64 {
    let nf = n as f64;
    MEM_FIT_A + MEM_FIT_B * nf + MEM_FIT_C * nf * nf
}

/// Evaluates throughput, latency and the fitted area model for a plan.
pub fn estimate_cost(plan: &PipelinePlan, f_hz: f64) -> CostReport {
    let s = &plan.schedule;
    let coded = s.n as f64 * f_hz / f64::from(plan.interval);
    let info = coded * s.k as f64 / s.n as f64;
    let latency_cycles = s.latency_cycles();
    CostReport {
        n: s.n,
        k: s.k,
        interval: plan.interval,
        frequency_hz: f_hz,
        coded_bps: coded,
        info_bps: info,
        latency_cycles,
        latency_s: f64::from(latency_cycles) / f_hz,
        bus_width: s.n,
        logic_area_mm2: logic_area_mm2(s.n),
        memory_area_mm2: memory_area_fit_mm2(s.n),
        register_bits: plan.register_bits(),
        sram_bits: plan.sram_bits(),
    }
}

/// Decode-only latency of a pure-SPC subtree of length `nv` whose SPC nodes
/// are capped at `n_spc`, under the default cost model:
/// `3 (log2 nv - log2 n_spc) + 1`.
pub fn spc_chain_latency(nv: usize, n_spc: usize) -> Result<u32> {
    if !nv.is_power_of_two() || !n_spc.is_power_of_two() {
        return Err(Error::LengthNotPowerOfTwo(if nv.is_power_of_two() {
            n_spc
        } else {
            nv
        }));
    }
    if nv < n_spc {
        return Err(Error::InvalidArgument(format!(
            "nv {nv} smaller than n_spc {n_spc}"
        )));
    }
    let delta = nv.trailing_zeros() - n_spc.trailing_zeros();
    Ok(3 * delta + 1)
}
