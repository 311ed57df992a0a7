//! Cycle-accurate simulation of an unrolled pipeline.
//!
//! The simulator models exactly the storage a [`PipelinePlan`] describes:
//! one register chain (or first register plus circular-buffer SRAM) per
//! value, with every register enabled once per initiation interval according
//! to its pipeline location modulo `I`. All registers latch simultaneously
//! on each clock edge from pre-edge state, so several frames are in flight
//! at once.
//!
//! Multi-mode operation taps the constituent-code decoders embedded in the
//! master pipeline: a mode injects channel LLRs directly into the register
//! feeding its subtree and reads estimates from the register its subtree
//! writes. The enable-phase generator is offset per mode (`i_start`) so the
//! entry register latches on injection cycles and no cycles are wasted. One
//! mode is active per pipeline state; switching modes requires draining.

use std::collections::VecDeque;

use crate::fastssc::{decode_leaf, NodeKind, Span};
use crate::llr::LlrDomain;
use crate::sc::{combine_op, f_op, g_op};
use crate::unroll::{CostReport, OpInput, OpKind, PipelinePlan, Storage, ValueId, ValueKind};
use crate::{Error, Result};

/// Routing and timing of one supported mode.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct ModeInfo {
    /// Tree node the mode decodes; node 0 is the master code.
    pub node: usize,
    pub span: Span,
    /// Information bits of the constituent code.
    pub k: usize,
    /// Value whose first register is the injection point.
    pub entry_value: ValueId,
    /// Value whose first register holds the mode's codeword estimate.
    pub exit_value: ValueId,
    /// Pipeline location of the injection register.
    pub entry_stage: u32,
    /// Pipeline location of the estimate register.
    pub exit_stage: u32,
    /// Load + decode + offload cycles for this mode.
    pub latency_cycles: u32,
    /// Enable-counter offset: `entry_stage mod I`.
    pub i_start: u32,
}

impl ModeInfo {
    /// Cycles from injection latch to estimate latch.
    pub fn decode_delay(&self) -> u32 {
        self.exit_stage - self.entry_stage
    }
}

/// The controller's two lookup tables: per-mode latency and enable offset.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ModeTable {
    pub modes: Vec<ModeInfo>,
}

/// Where an operation reads each input from.
#[derive(Debug, Clone, Copy)]
enum InSrc {
    /// Register `idx` of a value's chain.
    ChainReg {
        value: ValueId,
        idx: usize,
    },
    /// Output latch of a value's SRAM (the last chain position).
    SramOut {
        value: ValueId,
    },
    /// Same-edge combinational output of the producing op (fused paths).
    Pending {
        value: ValueId,
    },
    ZeroBits(usize),
}

/// An executable pipeline: a plan plus routing for its supported modes.
#[derive(Debug)]
pub struct Pipeline<D: LlrDomain> {
    dom: D,
    plan: PipelinePlan,
    modes: Vec<ModeInfo>,
    op_inputs: Vec<Vec<InSrc>>,
    /// Per phase: ops whose output register latches.
    latch_ops: Vec<Vec<usize>>,
    /// Per phase: multi-cycle ops that read their inputs.
    read_ops: Vec<Vec<usize>>,
    /// Per phase: values whose register chains shift.
    shift_values: Vec<Vec<ValueId>>,
}

#[derive(Debug, Clone)]
enum Slot<D: LlrDomain> {
    Llr(Vec<D::Llr>),
    Bits(Vec<u8>),
}

impl<D: LlrDomain> Slot<D> {
    fn zero(kind: ValueKind, len: usize) -> Self {
        match kind {
            ValueKind::ChannelLlr | ValueKind::Llr => Slot::Llr(vec![D::Llr::default(); len]),
            ValueKind::Bits => Slot::Bits(vec![0; len]),
        }
    }

    fn llr(&self) -> &[D::Llr] {
        match self {
            Slot::Llr(v) => v,
            Slot::Bits(_) => panic!("expected LLR slot"),
        }
    }

    fn bits(&self) -> &[u8] {
        match self {
            Slot::Bits(v) => v,
            Slot::Llr(_) => panic!("expected bit slot"),
        }
    }
}

#[derive(Debug, Clone)]
struct SramState<D: LlrDomain> {
    mem: Vec<Slot<D>>,
    out_latch: Slot<D>,
    write_ptr: usize,
}

#[derive(Debug, Clone)]
struct ChainState<D: LlrDomain> {
    regs: Vec<Slot<D>>,
    sram: Option<SramState<D>>,
}

/// Mutable clocked state of a pipeline run.
#[derive(Debug)]
pub struct PipelineState<D: LlrDomain> {
    cycle: u64,
    active_mode: usize,
    chains: Vec<Option<ChainState<D>>>,
    queues: Vec<VecDeque<(u64, Slot<D>)>>,
}

impl<D: LlrDomain> PipelineState<D> {
    pub fn cycle(&self) -> u64 {
        self.cycle
    }

    pub fn active_mode(&self) -> usize {
        self.active_mode
    }
}

/// One line of the optional cycle trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceRow {
    pub cycle: u64,
    pub phase: u32,
    pub injected_frame: Option<usize>,
    pub emitted_frame: Option<usize>,
}

/// Builds a pipeline supporting the master code plus the given subtree
/// modes. The master (node 0) is always mode 0.
pub fn build_pipeline<D: LlrDomain>(
    plan: PipelinePlan,
    dom: D,
    mode_nodes: &[usize],
) -> Result<Pipeline<D>> {
    let interval = plan.interval as usize;
    let s = &plan.schedule;

    let mut nodes: Vec<usize> = vec![0];
    nodes.extend(mode_nodes.iter().copied().filter(|&n| n != 0));

    let mut modes = Vec::with_capacity(nodes.len());
    for node in nodes {
        let io = s
            .node_io
            .get(node)
            .copied()
            .ok_or(Error::ModeNotInTree(node))?;
        let (Some(entry_value), Some(exit_value)) = (io.alpha, io.beta) else {
            // Rate-0 subtrees and skipped leaves have no decoder to tap.
            return Err(Error::ModeNotInTree(node));
        };
        let span = node_span(s, entry_value, exit_value);
        let entry_stage = s.values[entry_value].producer_stage;
        let exit_stage = s.values[exit_value].producer_stage;
        modes.push(ModeInfo {
            node,
            span,
            k: s.span_k(span),
            entry_value,
            exit_value,
            entry_stage,
            exit_stage,
            latency_cycles: s.load_cycles + (exit_stage - entry_stage) + s.offload_cycles,
            i_start: entry_stage % plan.interval,
        });
    }

    // Resolve every op input to a concrete storage location.
    let mut op_inputs = Vec::with_capacity(s.ops.len());
    for op in &s.ops {
        let read_stage = op.stage - op.cost;
        let mut srcs = Vec::with_capacity(op.inputs.len());
        for inp in &op.inputs {
            let src = match *inp {
                OpInput::ZeroBits(len) => InSrc::ZeroBits(len),
                OpInput::Value(value) => {
                    let v = &s.values[value];
                    if op.cost == 0 {
                        InSrc::Pending { value }
                    } else {
                        let idx = ((read_stage - v.producer_stage) / plan.interval) as usize;
                        match plan.chains[value]
                            .as_ref()
                            .expect("registered input")
                            .storage
                        {
                            Storage::Sram { depth, .. } if idx == depth as usize => {
                                InSrc::SramOut { value }
                            }
                            Storage::Sram { depth, .. } => {
                                assert_eq!(idx, 0, "SRAM chain read in the middle");
                                let _ = depth;
                                InSrc::ChainReg { value, idx: 0 }
                            }
                            Storage::Registers => InSrc::ChainReg { value, idx },
                        }
                    }
                }
            };
            srcs.push(src);
        }
        op_inputs.push(srcs);
    }

    let mut latch_ops = vec![Vec::new(); interval];
    let mut read_ops = vec![Vec::new(); interval];
    for (i, op) in s.ops.iter().enumerate() {
        latch_ops[(op.stage as usize) % interval].push(i);
        if op.cost >= 2 {
            read_ops[((op.stage - op.cost + 1) as usize) % interval].push(i);
        }
    }
    let mut shift_values = vec![Vec::new(); interval];
    for (id, v) in s.values.iter().enumerate() {
        if v.registered {
            shift_values[(v.producer_stage as usize) % interval].push(id);
        }
    }

    Ok(Pipeline {
        dom,
        plan,
        modes,
        op_inputs,
        latch_ops,
        read_ops,
        shift_values,
    })
}

/// Span of a mode from its entry/exit values (the exit value covers the
/// subtree's span; the entry value has the same length).
fn node_span(s: &crate::unroll::Schedule, entry: ValueId, exit: ValueId) -> Span {
    let len = s.values[exit].span_len;
    // Find the node span via the op that produced the exit value.
    let op = s.values[exit]
        .producer_op
        .map(|i| &s.ops[i])
        .expect("exit value has a producer");
    debug_assert_eq!(s.values[entry].span_len, len);
    Span {
        offset: op.span.offset,
        len,
    }
}

impl<D: LlrDomain> Pipeline<D> {
    pub fn plan(&self) -> &PipelinePlan {
        &self.plan
    }

    pub fn interval(&self) -> u32 {
        self.plan.interval
    }

    pub fn mode_table(&self) -> ModeTable {
        ModeTable {
            modes: self.modes.clone(),
        }
    }

    pub fn modes(&self) -> &[ModeInfo] {
        &self.modes
    }

    /// Fresh all-zero state running the given mode.
    pub fn new_state(&self, mode: usize) -> Result<PipelineState<D>> {
        if mode >= self.modes.len() {
            return Err(Error::InvalidArgument(format!(
                "mode {mode} not supported (have {})",
                self.modes.len()
            )));
        }
        let s = &self.plan.schedule;
        let chains = s
            .values
            .iter()
            .enumerate()
            .map(|(id, v)| {
                self.plan.chains[id].as_ref().map(|chain| {
                    let (regs, sram) = match chain.storage {
                        Storage::Registers => (
                            vec![Slot::zero(v.kind, v.span_len); chain.eff_len as usize],
                            None,
                        ),
                        Storage::Sram { depth, .. } => (
                            vec![Slot::zero(v.kind, v.span_len)],
                            Some(SramState {
                                mem: vec![Slot::zero(v.kind, v.span_len); depth as usize],
                                out_latch: Slot::zero(v.kind, v.span_len),
                                write_ptr: 0,
                            }),
                        ),
                    };
                    ChainState { regs, sram }
                })
            })
            .collect();
        Ok(PipelineState {
            cycle: 0,
            active_mode: mode,
            chains,
            queues: vec![VecDeque::new(); s.ops.len()],
        })
    }

    fn read_src(
        &self,
        src: InSrc,
        state: &PipelineState<D>,
        pending: &[Option<Slot<D>>],
    ) -> Slot<D> {
        match src {
            InSrc::ZeroBits(len) => Slot::Bits(vec![0; len]),
            InSrc::Pending { value } => pending[value]
                .clone()
                .expect("fused op evaluated before its producer"),
            InSrc::ChainReg { value, idx } => {
                state.chains[value].as_ref().expect("registered value").regs[idx].clone()
            }
            InSrc::SramOut { value } => state.chains[value]
                .as_ref()
                .expect("registered value")
                .sram
                .as_ref()
                .expect("SRAM chain")
                .out_latch
                .clone(),
        }
    }

    fn eval_op(
        &self,
        op_idx: usize,
        state: &PipelineState<D>,
        pending: &[Option<Slot<D>>],
    ) -> Slot<D> {
        let op = &self.plan.schedule.ops[op_idx];
        let srcs = &self.op_inputs[op_idx];
        let dom = &self.dom;
        match op.kind {
            OpKind::F => {
                let a = self.read_src(srcs[0], state, pending);
                Slot::Llr(f_op(dom, a.llr()))
            }
            OpKind::G => {
                let a = self.read_src(srcs[0], state, pending);
                let b = self.read_src(srcs[1], state, pending);
                Slot::Llr(g_op(dom, a.llr(), b.bits()))
            }
            OpKind::G0R => {
                let a = self.read_src(srcs[0], state, pending);
                let zeros = vec![0u8; a.llr().len() / 2];
                Slot::Llr(g_op(dom, a.llr(), &zeros))
            }
            OpKind::Combine => {
                let l = self.read_src(srcs[0], state, pending);
                let r = self.read_src(srcs[1], state, pending);
                Slot::Bits(combine_op(l.bits(), r.bits()))
            }
            OpKind::C0R => {
                let r = self.read_src(srcs[0], state, pending);
                let mut out = r.bits().to_vec();
                out.extend_from_slice(r.bits());
                Slot::Bits(out)
            }
            OpKind::Rate1 | OpKind::Rep | OpKind::Spc | OpKind::RepSpc => {
                let a = self.read_src(srcs[0], state, pending);
                let kind = match op.kind {
                    OpKind::Rate1 => NodeKind::Rate1,
                    OpKind::Rep => NodeKind::Rep,
                    OpKind::Spc => NodeKind::Spc,
                    _ => NodeKind::RepSpc,
                };
                Slot::Bits(decode_leaf(dom, kind, a.llr()))
            }
        }
    }

    /// Advances one clock cycle. `inject` places a frame on the active
    /// mode's input bus; its entry register only latches it when the enable
    /// phase matches (callers keep the `I`-cycle cadence).
    pub fn step(&self, state: &mut PipelineState<D>, inject: Option<&[D::Llr]>) -> Result<()> {
        let mode = &self.modes[state.active_mode];
        if let Some(frame) = inject {
            if frame.len() != mode.span.len {
                return Err(Error::FrameSizeMismatch {
                    expected: mode.span.len,
                    got: frame.len(),
                });
            }
        }
        let interval = u64::from(self.plan.interval);
        let phase = ((state.cycle + u64::from(mode.i_start)) % interval) as usize;

        // Multi-cycle ops read their inputs, results mature cost-1 cycles.
        for &op_idx in &self.read_ops[phase] {
            let op = &self.plan.schedule.ops[op_idx];
            let value = self.eval_op(op_idx, state, &[]);
            state.queues[op_idx].push_back((state.cycle + u64::from(op.cost) - 1, value));
        }

        // Outputs latching on this edge, evaluated from pre-edge state in
        // schedule order so fused (zero-cost) ops see their producers.
        let mut pending: Vec<Option<Slot<D>>> = vec![None; self.plan.schedule.values.len()];
        for &op_idx in &self.latch_ops[phase] {
            let op = &self.plan.schedule.ops[op_idx];
            let value = if op.cost >= 2 {
                // Internal registers of a multi-cycle op come up zeroed, so
                // until the first read matures the latch produces zeros.
                match state.queues[op_idx].front() {
                    Some(&(ready, _)) if ready == state.cycle => {
                        state.queues[op_idx].pop_front().expect("front exists").1
                    }
                    _ => {
                        let out = &self.plan.schedule.values[op.output];
                        Slot::zero(out.kind, out.span_len)
                    }
                }
            } else {
                self.eval_op(op_idx, state, &pending)
            };
            pending[op.output] = Some(value);
        }

        // Commit: shift every chain whose enable phase matches.
        for &vid in &self.shift_values[phase] {
            let v = &self.plan.schedule.values[vid];
            let new_head = if vid == mode.entry_value {
                match inject {
                    Some(frame) => Slot::Llr(frame.to_vec()),
                    // No frame on the bus: the entry register still latches.
                    None => pending[vid]
                        .take()
                        .unwrap_or_else(|| Slot::zero(v.kind, v.span_len)),
                }
            } else {
                match pending[vid].take() {
                    Some(p) => p,
                    // Producer op not latching this edge can only be the
                    // channel register of a non-master mode; hold zeros.
                    None => Slot::zero(v.kind, v.span_len),
                }
            };
            let chain = state.chains[vid].as_mut().expect("registered value");
            if let Some(sram) = chain.sram.as_mut() {
                // Circular buffer: write the displaced head, then present
                // the slot one position ahead (the entry written depth
                // events ago) on the output latch.
                let old_head = std::mem::replace(&mut chain.regs[0], new_head);
                sram.mem[sram.write_ptr] = old_head;
                sram.write_ptr = (sram.write_ptr + 1) % sram.mem.len();
                sram.out_latch = sram.mem[sram.write_ptr].clone();
            } else {
                chain.regs.rotate_right(1);
                chain.regs[0] = new_head;
            }
        }

        state.cycle += 1;
        Ok(())
    }

    /// Current content of the active mode's estimate register.
    pub fn output(&self, state: &PipelineState<D>) -> Vec<u8> {
        let mode = &self.modes[state.active_mode];
        state.chains[mode.exit_value]
            .as_ref()
            .expect("exit value registered")
            .regs[0]
            .bits()
            .to_vec()
    }

    /// Streams frames through the pipeline: one injection every `I` cycles,
    /// one estimate harvested exactly `exit - entry` cycles after each
    /// injection. Returns the per-frame codeword estimates.
    pub fn run_stream(&self, mode: usize, frames: &[Vec<D::Llr>]) -> Result<Vec<Vec<u8>>> {
        Ok(self.run_stream_traced(mode, frames)?.0)
    }

    /// [`Pipeline::run_stream`] plus a per-cycle trace.
    pub fn run_stream_traced(
        &self,
        mode: usize,
        frames: &[Vec<D::Llr>],
    ) -> Result<(Vec<Vec<u8>>, Vec<TraceRow>)> {
        let mut state = self.new_state(mode)?;
        let info = self.modes[mode];
        let interval = u64::from(self.plan.interval);
        let delay = u64::from(info.decode_delay());
        let mut outputs = Vec::with_capacity(frames.len());
        let mut trace = Vec::new();
        if frames.is_empty() {
            return Ok((outputs, trace));
        }
        let last_harvest = (frames.len() as u64 - 1) * interval + delay;
        for cycle in 0..=last_harvest {
            let injected = if cycle % interval == 0 {
                usize::try_from(cycle / interval)
                    .ok()
                    .filter(|&f| f < frames.len())
            } else {
                None
            };
            let phase = ((cycle + u64::from(info.i_start)) % interval) as u32;
            self.step(&mut state, injected.map(|f| frames[f].as_slice()))?;
            let emitted = if cycle >= delay && (cycle - delay) % interval == 0 {
                usize::try_from((cycle - delay) / interval)
                    .ok()
                    .filter(|&f| f < frames.len())
            } else {
                None
            };
            if let Some(f) = emitted {
                debug_assert_eq!(f, outputs.len());
                outputs.push(self.output(&state));
            }
            trace.push(TraceRow {
                cycle,
                phase,
                injected_frame: injected,
                emitted_frame: emitted,
            });
        }
        Ok((outputs, trace))
    }

    /// Throughput/latency report for one mode: `T_C = span * f / I`,
    /// `T_I = rate * T_C`, latency from the mode table. Area figures refer
    /// to the whole master pipeline.
    pub fn throughput_report(&self, mode: usize, f_hz: f64) -> Result<CostReport> {
        let info = self
            .modes
            .get(mode)
            .ok_or_else(|| Error::InvalidArgument(format!("mode {mode} not supported")))?;
        let coded = info.span.len as f64 * f_hz / f64::from(self.plan.interval);
        Ok(CostReport {
            n: info.span.len,
            k: info.k,
            interval: self.plan.interval,
            frequency_hz: f_hz,
            coded_bps: coded,
            info_bps: coded * info.k as f64 / info.span.len as f64,
            latency_cycles: info.latency_cycles,
            latency_s: f64::from(info.latency_cycles) / f_hz,
            bus_width: self.plan.schedule.n,
            logic_area_mm2: crate::unroll::logic_area_mm2(self.plan.schedule.n),
            memory_area_mm2: crate::unroll::memory_area_fit_mm2(self.plan.schedule.n),
            register_bits: self.plan.register_bits(),
            sram_bits: self.plan.sram_bits(),
        })
    }
}

/// Renders a trace as CSV with header `cycle,phase,injected,emitted`.
pub fn trace_to_csv(rows: &[TraceRow]) -> String {
    let mut out = String::from("cycle,phase,injected,emitted\n");
    for r in rows {
        let inj = r.injected_frame.map_or(String::new(), |f| f.to_string());
        let emi = r.emitted_frame.map_or(String::new(), |f| f.to_string());
        out.push_str(&format!("{},{},{},{}\n", r.cycle, r.phase, inj, emi));
    }
    out
}
