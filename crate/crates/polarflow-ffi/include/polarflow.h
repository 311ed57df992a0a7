/* C API for the polarflow polar-code toolkit.
 *
 * All handles are opaque and owned by the library; release them with the
 * matching *_free function. Fallible calls return pf_status; on failure a
 * thread-local message is available from pf_last_error_message() until the
 * next failing call on the same thread.
 *
 * Bit buffers use one byte per bit (0 or 1). LLRs follow the convention
 * that non-negative values decide bit 0.
 */

#ifndef POLARFLOW_H
#define POLARFLOW_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pf_status {
  PF_STATUS_OK = 0,
  PF_STATUS_INVALID_ARGUMENT = 1,
  PF_STATUS_IO = 2,
  PF_STATUS_PARSE = 3,
  PF_STATUS_NULL_POINTER = 4,
} pf_status;

/* Opaque handles. */
typedef struct PfCode PfCode;
typedef struct PfDecoder PfDecoder;
typedef struct PfPlan PfPlan;

/* Message for the most recent error on the calling thread. */
const char *pf_last_error_message(void);

/* --- Code definitions --------------------------------------------------- */

/* Construct an (n, k) code; n must be a power of two and k <= n.
 * design_snr_db is Es/N0 in dB. use_gaussian_approx != 0 selects the
 * Gaussian approximation, 0 the Bhattacharyya recursion. */
pf_status pf_code_construct(uint32_t n, uint32_t k, double design_snr_db,
                            int use_gaussian_approx, PfCode **out);

/* JSON code-spec file I/O:
 * {"n": ..., "k": ..., "frozen": [ascending indices], "provenance": {...}} */
pf_status pf_code_load_json(const char *path, PfCode **out);
pf_status pf_code_save_json(const PfCode *code, const char *path);

/* Concatenate two equal-length codes (left mask first). */
pf_status pf_code_assemble(const PfCode *left, const PfCode *right,
                           PfCode **out);

uint32_t pf_code_n(const PfCode *code);
uint32_t pf_code_k(const PfCode *code);

/* Write the frozen mask (1 = frozen) into mask[0..mask_len); mask_len must
 * equal n. */
pf_status pf_code_frozen_mask(const PfCode *code, uint8_t *mask,
                              size_t mask_len);

void pf_code_free(PfCode *code);

/* --- Encoding ----------------------------------------------------------- */

/* Systematic encoding: info holds k bits, codeword receives n bits, and the
 * information bits appear verbatim at the non-frozen positions. */
pf_status pf_encode_systematic(const PfCode *code, const uint8_t *info,
                               size_t info_len, uint8_t *codeword,
                               size_t codeword_len);

/* --- Decoding ----------------------------------------------------------- */

/* Create a pruned-tree decoder. max_rep / max_spc bound the specialized
 * node widths (powers of two >= 2); enable_repspc fuses length-8
 * repetition/SPC concatenations. qi = 0 selects floating-point arithmetic;
 * otherwise LLRs are quantized to the saturating Qi.Qc.Qf fixed-point
 * format (qi >= qc >= 2, qf < qc). */
pf_status pf_decoder_new(const PfCode *code, uint32_t max_rep,
                         uint32_t max_spc, int enable_repspc, uint32_t qi,
                         uint32_t qc, uint32_t qf, PfDecoder **out);

/* Decode one frame: llr holds n channel LLRs, codeword receives the n-bit
 * codeword estimate (systematic view). */
pf_status pf_decoder_decode(const PfDecoder *decoder, const double *llr,
                            size_t llr_len, uint8_t *codeword,
                            size_t codeword_len);

void pf_decoder_free(PfDecoder *decoder);

/* --- Unrolled pipeline plans -------------------------------------------- */

/* Unroll the decoder tree into a pipeline schedule bound to an initiation
 * interval (1 <= interval <= I_max). sram_min_chain > 0 converts register
 * chains of at least that effective length into circular-buffer SRAM. */
pf_status pf_plan_new(const PfCode *code, uint32_t max_rep, uint32_t max_spc,
                      int enable_repspc, uint32_t qi, uint32_t qc,
                      uint32_t qf, uint32_t interval, uint32_t sram_min_chain,
                      PfPlan **out);

/* Largest admissible initiation interval (channel-LLR lifetime). */
uint32_t pf_plan_imax(const PfPlan *plan);

/* Decode-only cycles, and load + decode + offload cycles. */
uint32_t pf_plan_decode_cycles(const PfPlan *plan);
uint32_t pf_plan_latency_cycles(const PfPlan *plan);

uint64_t pf_plan_register_bits(const PfPlan *plan);
uint64_t pf_plan_sram_bits(const PfPlan *plan);

/* Coded (N f / I) and information (R N f / I) throughput in bit/s. */
double pf_plan_coded_bps(const PfPlan *plan, double f_hz);
double pf_plan_info_bps(const PfPlan *plan, double f_hz);

void pf_plan_free(PfPlan *plan);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* POLARFLOW_H */
