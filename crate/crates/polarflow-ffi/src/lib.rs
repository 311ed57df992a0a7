//! C ABI for the polarflow toolkit.
//!
//! Handles are opaque pointers owned by the library; every constructor has a
//! matching `_free`. Functions return [`PfStatus`] codes; the message for
//! the most recent failure on the calling thread is available via
//! [`pf_last_error_message`]. The committed `include/polarflow.h` mirrors
//! these declarations.
//!
//! # Safety
//!
//! All entry points taking pointers are `unsafe`: handles must originate
//! from this library and not be freed twice, buffer pointers must be valid
//! for the stated lengths, and strings must be NUL-terminated. Null handles
//! and null buffers are detected and reported as `PF_STATUS_NULL_POINTER`.

use std::cell::RefCell;
use std::ffi::{c_char, c_double, c_int, CStr, CString};
use std::path::{Path, PathBuf};

use polarflow::code::{self, CodeSpec, ConstructionMethod};
use polarflow::fastssc::{build_tree, fastssc_decode, DecoderTree, NodeConstraints};
use polarflow::llr::{FixedLlr, FloatLlr};
use polarflow::quant::{QLlr, QuantSpec};
use polarflow::unroll::{
    apply_interval, compute_imax, estimate_cost, sram_convert, unroll, CostModel, PipelinePlan,
    Schedule,
};

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PfStatus {
    Ok = 0,
    InvalidArgument = 1,
    Io = 2,
    Parse = 3,
    NullPointer = 4,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn fail(status: PfStatus, message: &str) -> PfStatus {
    set_error(message);
    status
}

fn status_of(err: &polarflow::Error) -> PfStatus {
    match err {
        polarflow::Error::Io(_) => PfStatus::Io,
        polarflow::Error::Json(_) => PfStatus::Parse,
        _ => PfStatus::InvalidArgument,
    }
}

/// Message for the most recent error on this thread. The pointer stays
/// valid until the next failing call from the same thread.
#[no_mangle]
pub extern "C" fn pf_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Opaque polar code definition.
pub struct PfCode {
    spec: CodeSpec,
}

/// Opaque decoder: pruned tree plus arithmetic selection.
pub struct PfDecoder {
    tree: DecoderTree,
    quant: Option<QuantSpec>,
    n: usize,
}

/// Opaque pipeline plan with its schedule-level metrics.
pub struct PfPlan {
    schedule: Schedule,
    plan: PipelinePlan,
}

unsafe fn parse_path(path: *const c_char) -> Result<PathBuf, PfStatus> {
    if path.is_null() {
        return Err(fail(PfStatus::NullPointer, "path is null"));
    }
    let cstr = unsafe { CStr::from_ptr(path) };
    match cstr.to_str() {
        Ok(s) => Ok(Path::new(s).to_path_buf()),
        Err(_) => Err(fail(PfStatus::InvalidArgument, "path is not valid UTF-8")),
    }
}

fn quant_from(qi: u32, qc: u32, qf: u32) -> Result<Option<QuantSpec>, PfStatus> {
    if qi == 0 {
        return Ok(None);
    }
    match QuantSpec::new(qi, qc, qf) {
        Ok(q) => Ok(Some(q)),
        Err(e) => Err(fail(PfStatus::InvalidArgument, &e.to_string())),
    }
}

fn constraints_from(
    max_rep: u32,
    max_spc: u32,
    enable_repspc: c_int,
) -> Result<NodeConstraints, PfStatus> {
    NodeConstraints::new(max_rep as usize, max_spc as usize, enable_repspc != 0)
        .map_err(|e| fail(PfStatus::InvalidArgument, &e.to_string()))
}

/// Constructs an `(n, k)` code. `use_gaussian_approx` selects the Gaussian
/// approximation; zero selects the Bhattacharyya recursion. `design_snr_db`
/// is Es/N0 in dB.
///
/// # Safety
/// `out` must be a valid location for a handle pointer.
#[no_mangle]
pub unsafe extern "C" fn pf_code_construct(
    n: u32,
    k: u32,
    design_snr_db: c_double,
    use_gaussian_approx: c_int,
    out: *mut *mut PfCode,
) -> PfStatus {
    if out.is_null() {
        return fail(PfStatus::NullPointer, "out is null");
    }
    let method = if use_gaussian_approx != 0 {
        ConstructionMethod::GaussianApproximation
    } else {
        ConstructionMethod::Bhattacharyya
    };
    match code::construct(n as usize, k as usize, design_snr_db, method) {
        Ok(spec) => {
            unsafe { *out = Box::into_raw(Box::new(PfCode { spec })) };
            PfStatus::Ok
        }
        Err(e) => fail(status_of(&e), &e.to_string()),
    }
}

/// Loads a code spec from its JSON file format.
///
/// # Safety
/// `path` must be NUL-terminated; `out` must be a valid location.
#[no_mangle]
pub unsafe extern "C" fn pf_code_load_json(path: *const c_char, out: *mut *mut PfCode) -> PfStatus {
    if out.is_null() {
        return fail(PfStatus::NullPointer, "out is null");
    }
    let path = match unsafe { parse_path(path) } {
        Ok(p) => p,
        Err(s) => return s,
    };
    match code::load_spec(&path) {
        Ok(spec) => {
            unsafe { *out = Box::into_raw(Box::new(PfCode { spec })) };
            PfStatus::Ok
        }
        Err(e) => fail(status_of(&e), &e.to_string()),
    }
}

/// Saves a code spec as JSON.
///
/// # Safety
/// `code` must be a live handle; `path` must be NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn pf_code_save_json(code: *const PfCode, path: *const c_char) -> PfStatus {
    let Some(code) = (unsafe { code.as_ref() }) else {
        return fail(PfStatus::NullPointer, "code is null");
    };
    let path = match unsafe { parse_path(path) } {
        Ok(p) => p,
        Err(s) => return s,
    };
    match code::save_spec(&code.spec, &path) {
        Ok(()) => PfStatus::Ok,
        Err(e) => fail(status_of(&e), &e.to_string()),
    }
}

/// Concatenates two equal-length codes into a master code.
///
/// # Safety
/// `left` and `right` must be live handles; `out` must be a valid location.
#[no_mangle]
pub unsafe extern "C" fn pf_code_assemble(
    left: *const PfCode,
    right: *const PfCode,
    out: *mut *mut PfCode,
) -> PfStatus {
    let (Some(left), Some(right)) = (unsafe { left.as_ref() }, unsafe { right.as_ref() }) else {
        return fail(PfStatus::NullPointer, "constituent is null");
    };
    if out.is_null() {
        return fail(PfStatus::NullPointer, "out is null");
    }
    match code::assemble_master(&left.spec, &right.spec) {
        Ok(spec) => {
            unsafe { *out = Box::into_raw(Box::new(PfCode { spec })) };
            PfStatus::Ok
        }
        Err(e) => fail(status_of(&e), &e.to_string()),
    }
}

/// Code length; 0 for a null handle.
///
/// # Safety
/// `code` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn pf_code_n(code: *const PfCode) -> u32 {
    unsafe { code.as_ref() }.map_or(0, |c| c.spec.n() as u32)
}

/// Information bit count; 0 for a null handle.
///
/// # Safety
/// `code` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn pf_code_k(code: *const PfCode) -> u32 {
    unsafe { code.as_ref() }.map_or(0, |c| c.spec.k() as u32)
}

/// Writes the frozen mask (1 = frozen) into `mask`, which must hold `n`
/// bytes.
///
/// # Safety
/// `code` must be a live handle; `mask` must be writable for `mask_len`.
#[no_mangle]
pub unsafe extern "C" fn pf_code_frozen_mask(
    code: *const PfCode,
    mask: *mut u8,
    mask_len: usize,
) -> PfStatus {
    let Some(code) = (unsafe { code.as_ref() }) else {
        return fail(PfStatus::NullPointer, "code is null");
    };
    if mask.is_null() {
        return fail(PfStatus::NullPointer, "mask is null");
    }
    if mask_len != code.spec.n() {
        return fail(
            PfStatus::InvalidArgument,
            &format!("mask length {} != n {}", mask_len, code.spec.n()),
        );
    }
    let out = unsafe { std::slice::from_raw_parts_mut(mask, mask_len) };
    for (dst, &frozen) in out.iter_mut().zip(code.spec.frozen_mask()) {
        *dst = u8::from(frozen);
    }
    PfStatus::Ok
}

/// # Safety
/// `code` must come from this library and not be freed twice; null is a
/// no-op.
#[no_mangle]
pub unsafe extern "C" fn pf_code_free(code: *mut PfCode) {
    if !code.is_null() {
        drop(unsafe { Box::from_raw(code) });
    }
}

/// Systematically encodes `k` information bits (`info`, one byte per bit)
/// into `n` codeword bits (`codeword`).
///
/// # Safety
/// `code` must be a live handle; `info` must be readable for `info_len` and
/// `codeword` writable for `codeword_len`.
#[no_mangle]
pub unsafe extern "C" fn pf_encode_systematic(
    code: *const PfCode,
    info: *const u8,
    info_len: usize,
    codeword: *mut u8,
    codeword_len: usize,
) -> PfStatus {
    let Some(code) = (unsafe { code.as_ref() }) else {
        return fail(PfStatus::NullPointer, "code is null");
    };
    if info.is_null() || codeword.is_null() {
        return fail(PfStatus::NullPointer, "buffer is null");
    }
    if codeword_len != code.spec.n() {
        return fail(
            PfStatus::InvalidArgument,
            &format!("codeword length {} != n {}", codeword_len, code.spec.n()),
        );
    }
    let info = unsafe { std::slice::from_raw_parts(info, info_len) };
    if info.iter().any(|&b| b > 1) {
        return fail(PfStatus::InvalidArgument, "info bits must be 0 or 1");
    }
    match polarflow::encode::encode_systematic(&code.spec, info) {
        Ok(word) => {
            let out = unsafe { std::slice::from_raw_parts_mut(codeword, codeword_len) };
            out.copy_from_slice(&word);
            PfStatus::Ok
        }
        Err(e) => fail(status_of(&e), &e.to_string()),
    }
}

/// Creates a decoder. `qi = 0` selects floating-point arithmetic; otherwise
/// `qi.qc.qf` fixed point with channel quantization applied to the input
/// LLRs.
///
/// # Safety
/// `code` must be a live handle; `out` must be a valid location.
#[no_mangle]
pub unsafe extern "C" fn pf_decoder_new(
    code: *const PfCode,
    max_rep: u32,
    max_spc: u32,
    enable_repspc: c_int,
    qi: u32,
    qc: u32,
    qf: u32,
    out: *mut *mut PfDecoder,
) -> PfStatus {
    let Some(code) = (unsafe { code.as_ref() }) else {
        return fail(PfStatus::NullPointer, "code is null");
    };
    if out.is_null() {
        return fail(PfStatus::NullPointer, "out is null");
    }
    let constraints = match constraints_from(max_rep, max_spc, enable_repspc) {
        Ok(c) => c,
        Err(s) => return s,
    };
    let quant = match quant_from(qi, qc, qf) {
        Ok(q) => q,
        Err(s) => return s,
    };
    let decoder = PfDecoder {
        tree: build_tree(&code.spec, constraints),
        quant,
        n: code.spec.n(),
    };
    unsafe { *out = Box::into_raw(Box::new(decoder)) };
    PfStatus::Ok
}

/// Decodes one frame of `n` channel LLRs into `n` codeword bit estimates.
///
/// # Safety
/// `decoder` must be a live handle; `llr` must be readable for `llr_len`
/// and `codeword` writable for `codeword_len`.
#[no_mangle]
pub unsafe extern "C" fn pf_decoder_decode(
    decoder: *const PfDecoder,
    llr: *const c_double,
    llr_len: usize,
    codeword: *mut u8,
    codeword_len: usize,
) -> PfStatus {
    let Some(decoder) = (unsafe { decoder.as_ref() }) else {
        return fail(PfStatus::NullPointer, "decoder is null");
    };
    if llr.is_null() || codeword.is_null() {
        return fail(PfStatus::NullPointer, "buffer is null");
    }
    if llr_len != decoder.n || codeword_len != decoder.n {
        return fail(
            PfStatus::InvalidArgument,
            &format!("frame length must be {}", decoder.n),
        );
    }
    let llr = unsafe { std::slice::from_raw_parts(llr, llr_len) };
    let result = match decoder.quant {
        Some(q) => {
            let quantized: Vec<QLlr> = llr.iter().map(|&l| q.quantize_channel(l, 1.0)).collect();
            fastssc_decode(&FixedLlr::new(q), &decoder.tree, &quantized)
        }
        None => fastssc_decode(&FloatLlr, &decoder.tree, llr),
    };
    match result {
        Ok(bits) => {
            let out = unsafe { std::slice::from_raw_parts_mut(codeword, codeword_len) };
            out.copy_from_slice(&bits);
            PfStatus::Ok
        }
        Err(e) => fail(status_of(&e), &e.to_string()),
    }
}

/// # Safety
/// `decoder` must come from this library and not be freed twice; null is a
/// no-op.
#[no_mangle]
pub unsafe extern "C" fn pf_decoder_free(decoder: *mut PfDecoder) {
    if !decoder.is_null() {
        drop(unsafe { Box::from_raw(decoder) });
    }
}

/// Unrolls the decoder tree and binds it to an initiation interval.
/// `sram_min_chain = 0` keeps every chain in registers. `qi.qc.qf` set the
/// register widths.
///
/// # Safety
/// `code` must be a live handle; `out` must be a valid location.
#[no_mangle]
pub unsafe extern "C" fn pf_plan_new(
    code: *const PfCode,
    max_rep: u32,
    max_spc: u32,
    enable_repspc: c_int,
    qi: u32,
    qc: u32,
    qf: u32,
    interval: u32,
    sram_min_chain: u32,
    out: *mut *mut PfPlan,
) -> PfStatus {
    let Some(code) = (unsafe { code.as_ref() }) else {
        return fail(PfStatus::NullPointer, "code is null");
    };
    if out.is_null() {
        return fail(PfStatus::NullPointer, "out is null");
    }
    let constraints = match constraints_from(max_rep, max_spc, enable_repspc) {
        Ok(c) => c,
        Err(s) => return s,
    };
    let quant = match quant_from(qi, qc, qf) {
        Ok(Some(q)) => q,
        Ok(None) => return fail(PfStatus::InvalidArgument, "plans require qi >= qc >= 2"),
        Err(s) => return s,
    };
    let tree = build_tree(&code.spec, constraints);
    let schedule = unroll(&tree, &CostModel::default());
    let mut plan = match apply_interval(&schedule, interval, quant) {
        Ok(p) => p,
        Err(e) => return fail(status_of(&e), &e.to_string()),
    };
    if sram_min_chain > 0 {
        plan = match sram_convert(&plan, sram_min_chain) {
            Ok(p) => p,
            Err(e) => return fail(status_of(&e), &e.to_string()),
        };
    }
    unsafe { *out = Box::into_raw(Box::new(PfPlan { schedule, plan })) };
    PfStatus::Ok
}

/// Largest admissible initiation interval; 0 for a null handle.
///
/// # Safety
/// `plan` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn pf_plan_imax(plan: *const PfPlan) -> u32 {
    unsafe { plan.as_ref() }.map_or(0, |p| compute_imax(&p.schedule))
}

/// Decode-only cycle count; 0 for a null handle.
///
/// # Safety
/// `plan` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn pf_plan_decode_cycles(plan: *const PfPlan) -> u32 {
    unsafe { plan.as_ref() }.map_or(0, |p| p.schedule.decode_cycles())
}

/// Load + decode + offload cycles; 0 for a null handle.
///
/// # Safety
/// `plan` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn pf_plan_latency_cycles(plan: *const PfPlan) -> u32 {
    unsafe { plan.as_ref() }.map_or(0, |p| p.schedule.latency_cycles())
}

/// Total register bits; 0 for a null handle.
///
/// # Safety
/// `plan` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn pf_plan_register_bits(plan: *const PfPlan) -> u64 {
    unsafe { plan.as_ref() }.map_or(0, |p| p.plan.register_bits())
}

/// Total SRAM capacity in bits; 0 for a null handle.
///
/// # Safety
/// `plan` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn pf_plan_sram_bits(plan: *const PfPlan) -> u64 {
    unsafe { plan.as_ref() }.map_or(0, |p| p.plan.sram_bits())
}

/// Coded throughput `N * f / I` in bit/s at the given clock.
///
/// # Safety
/// `plan` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn pf_plan_coded_bps(plan: *const PfPlan, f_hz: c_double) -> c_double {
    unsafe { plan.as_ref() }.map_or(0.0, |p| estimate_cost(&p.plan, f_hz).coded_bps)
}

/// Information throughput `R * N * f / I` in bit/s at the given clock.
///
/// # Safety
/// `plan` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn pf_plan_info_bps(plan: *const PfPlan, f_hz: c_double) -> c_double {
    unsafe { plan.as_ref() }.map_or(0.0, |p| estimate_cost(&p.plan, f_hz).info_bps)
}

/// # Safety
/// `plan` must come from this library and not be freed twice; null is a
/// no-op.
#[no_mangle]
pub unsafe extern "C" fn pf_plan_free(plan: *mut PfPlan) {
    if !plan.is_null() {
        drop(unsafe { Box::from_raw(plan) });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use polarflow::sc;
    use std::ptr;

    fn construct(n: u32, k: u32) -> *mut PfCode {
        let mut code: *mut PfCode = ptr::null_mut();
        let status = unsafe { pf_code_construct(n, k, 2.0, 1, &mut code) };
        assert_eq!(status, PfStatus::Ok);
        assert!(!code.is_null());
        code
    }

    #[test]
    fn construct_query_free() {
        unsafe {
            let code = construct(64, 32);
            assert_eq!(pf_code_n(code), 64);
            assert_eq!(pf_code_k(code), 32);
            let mut mask = vec![0u8; 64];
            assert_eq!(
                pf_code_frozen_mask(code, mask.as_mut_ptr(), mask.len()),
                PfStatus::Ok
            );
            assert_eq!(mask.iter().filter(|&&m| m == 1).count(), 32);
            pf_code_free(code);
        }
    }

    #[test]
    fn rejects_bad_construction() {
        unsafe {
            let mut code: *mut PfCode = ptr::null_mut();
            assert_eq!(
                pf_code_construct(24, 4, 2.0, 1, &mut code),
                PfStatus::InvalidArgument
            );
            let msg = CStr::from_ptr(pf_last_error_message());
            assert!(msg.to_str().unwrap().contains("power of two"));
            assert_eq!(
                pf_code_construct(8, 4, 2.0, 1, ptr::null_mut()),
                PfStatus::NullPointer
            );
        }
    }

    #[test]
    fn encode_decode_round_trip() {
        unsafe {
            let code = construct(128, 64);
            let mut decoder: *mut PfDecoder = ptr::null_mut();
            assert_eq!(
                pf_decoder_new(code, 8, 4, 0, 5, 4, 0, &mut decoder),
                PfStatus::Ok
            );

            let info: Vec<u8> = (0..64).map(|i| (i % 3 == 0) as u8).collect();
            let mut codeword = vec![0u8; 128];
            assert_eq!(
                pf_encode_systematic(code, info.as_ptr(), info.len(), codeword.as_mut_ptr(), 128),
                PfStatus::Ok
            );

            let llr: Vec<f64> = codeword
                .iter()
                .map(|&b| if b == 0 { 5.0 } else { -5.0 })
                .collect();
            let mut estimate = vec![0u8; 128];
            assert_eq!(
                pf_decoder_decode(decoder, llr.as_ptr(), 128, estimate.as_mut_ptr(), 128),
                PfStatus::Ok
            );
            assert_eq!(estimate, codeword);

            // Cross-check against the underlying reference decoder.
            let spec =
                code::construct(128, 64, 2.0, ConstructionMethod::GaussianApproximation).unwrap();
            let q = QuantSpec::new(5, 4, 0).unwrap();
            let quantized: Vec<QLlr> = llr.iter().map(|&l| q.quantize_channel(l, 1.0)).collect();
            assert_eq!(estimate, sc::sc_decode_fixed(&spec, q, &quantized).unwrap());

            assert_eq!(
                pf_decoder_decode(decoder, llr.as_ptr(), 64, estimate.as_mut_ptr(), 128),
                PfStatus::InvalidArgument
            );
            pf_decoder_free(decoder);
            pf_code_free(code);
        }
    }

    #[test]
    fn assemble_matches_core() {
        unsafe {
            let left = construct(64, 32);
            let right = construct(64, 48);
            let mut master: *mut PfCode = ptr::null_mut();
            assert_eq!(pf_code_assemble(left, right, &mut master), PfStatus::Ok);
            assert_eq!(pf_code_n(master), 128);
            assert_eq!(pf_code_k(master), 80);
            pf_code_free(master);
            pf_code_free(left);
            pf_code_free(right);
        }
    }

    #[test]
    fn plan_metrics_match_core() {
        unsafe {
            let code = construct(1024, 512);
            let mut plan: *mut PfPlan = ptr::null_mut();
            assert_eq!(
                pf_plan_new(code, 8, 4, 0, 5, 4, 0, 1, 0, &mut plan),
                PfStatus::Ok
            );
            assert_eq!(pf_plan_coded_bps(plan, 500e6), 512e9);
            assert!(pf_plan_imax(plan) > 1);
            assert!(pf_plan_register_bits(plan) > 0);
            assert_eq!(pf_plan_sram_bits(plan), 0);

            // An interval beyond I_max is rejected.
            let imax = pf_plan_imax(plan);
            let mut too_big: *mut PfPlan = ptr::null_mut();
            assert_eq!(
                pf_plan_new(code, 8, 4, 0, 5, 4, 0, imax + 1, 0, &mut too_big),
                PfStatus::InvalidArgument
            );

            // SRAM conversion moves bits out of registers.
            let mut srammed: *mut PfPlan = ptr::null_mut();
            assert_eq!(
                pf_plan_new(code, 8, 4, 0, 5, 4, 0, 1, 2, &mut srammed),
                PfStatus::Ok
            );
            assert!(pf_plan_sram_bits(srammed) > 0);
            assert!(pf_plan_register_bits(srammed) < pf_plan_register_bits(plan));

            pf_plan_free(plan);
            pf_plan_free(srammed);
            pf_code_free(code);
        }
    }

    #[test]
    fn json_round_trip_via_files() {
        unsafe {
            let dir = std::env::temp_dir().join("polarflow-ffi-test");
            std::fs::create_dir_all(&dir).unwrap();
            let path = dir.join("code.json");
            let cpath = CString::new(path.to_str().unwrap()).unwrap();

            let code = construct(32, 16);
            assert_eq!(pf_code_save_json(code, cpath.as_ptr()), PfStatus::Ok);
            let mut loaded: *mut PfCode = ptr::null_mut();
            assert_eq!(pf_code_load_json(cpath.as_ptr(), &mut loaded), PfStatus::Ok);
            assert_eq!(pf_code_n(loaded), 32);
            assert_eq!(pf_code_k(loaded), 16);
            pf_code_free(loaded);
            pf_code_free(code);
            std::fs::remove_file(&path).ok();

            let missing = CString::new("/nonexistent/dir/code.json").unwrap();
            let mut out: *mut PfCode = ptr::null_mut();
            assert_eq!(pf_code_load_json(missing.as_ptr(), &mut out), PfStatus::Io);
        }
    }
}
