//! Polar code definitions: length, dimension, frozen set, construction and
//! master-code assembly.
//!
//! Bit indices are in natural (non-bit-reversed) order throughout the crate:
//! index 0 is the least reliable synthetic channel of a properly constructed
//! code and the left-most leaf of the decoder tree.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// How a spec's frozen set came to be.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    /// Built by [`construct`] for a design SNR.
    Constructed {
        design_snr_db: f64,
        method: ConstructionMethod,
    },
    /// Concatenation of two constituent codes.
    Assembled { left_id: String, right_id: String },
    /// Read from a file or supplied directly.
    Imported { path: String },
}

/// Frozen-set construction methods.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstructionMethod {
    /// Bhattacharyya-parameter recursion on an erasure-channel proxy.
    Bhattacharyya,
    /// Gaussian approximation of density evolution for BPSK on AWGN.
    GaussianApproximation,
}

impl std::fmt::Display for ConstructionMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConstructionMethod::Bhattacharyya => write!(f, "bhattacharyya"),
            ConstructionMethod::GaussianApproximation => write!(f, "gaussian_approximation"),
        }
    }
}

/// An `(n, k)` polar code: length, dimension and frozen mask.
#[derive(Debug, Clone, PartialEq)]
pub struct CodeSpec {
    n: usize,
    k: usize,
    frozen: Vec<bool>,
    provenance: Provenance,
}

impl CodeSpec {
    /// Builds a spec from an explicit frozen mask, checking the invariants.
    pub fn from_mask(frozen: Vec<bool>, provenance: Provenance) -> Result<Self> {
        let n = frozen.len();
        if n == 0 || !n.is_power_of_two() {
            return Err(Error::LengthNotPowerOfTwo(n));
        }
        let k = frozen.iter().filter(|&&f| !f).count();
        Ok(CodeSpec {
            n,
            k,
            frozen,
            provenance,
        })
    }

    /// Builds a spec from the ascending list of frozen indices.
    pub fn from_frozen_indices(
        n: usize,
        indices: &[usize],
        provenance: Provenance,
    ) -> Result<Self> {
        if n == 0 || !n.is_power_of_two() {
            return Err(Error::LengthNotPowerOfTwo(n));
        }
        let mut frozen = vec![false; n];
        for &i in indices {
            if i >= n {
                return Err(Error::InvalidSpec(format!("frozen index {i} >= n {n}")));
            }
            if frozen[i] {
                return Err(Error::InvalidSpec(format!("duplicate frozen index {i}")));
            }
            frozen[i] = true;
        }
        CodeSpec::from_mask(frozen, provenance)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n as f64
    }

    pub fn is_frozen(&self, i: usize) -> bool {
        self.frozen[i]
    }

    pub fn frozen_mask(&self) -> &[bool] {
        &self.frozen
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Ascending frozen indices.
    pub fn frozen_indices(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.frozen[i]).collect()
    }

    /// Ascending information (non-frozen) indices.
    pub fn info_indices(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| !self.frozen[i]).collect()
    }

    /// The constituent code covering `span_offset..span_offset + span_len`.
    ///
    /// Its frozen pattern is the master's mask restricted to the span, which
    /// is exactly the code decoded by the corresponding subtree.
    pub fn subcode(&self, span_offset: usize, span_len: usize) -> Result<CodeSpec> {
        if span_offset + span_len > self.n || !span_len.is_power_of_two() || span_len == 0 {
            return Err(Error::InvalidSpec(format!(
                "span {span_offset}+{span_len} not a valid subcode of n={}",
                self.n
            )));
        }
        CodeSpec::from_mask(
            self.frozen[span_offset..span_offset + span_len].to_vec(),
            Provenance::Imported {
                path: format!("subcode({span_offset}, {span_len})"),
            },
        )
    }
}

/// Per-channel reliability ranking produced during construction.
#[derive(Debug, Clone)]
pub struct ReliabilityOrder {
    /// Permutation of `0..n`, least reliable first. The frozen set of an
    /// `(n, k)` code is the first `n - k` entries.
    pub order: Vec<usize>,
    pub method: ConstructionMethod,
}

impl ReliabilityOrder {
    /// Computes the ranking for length `n` at the given design SNR.
    ///
    /// The design SNR is interpreted as Es/N0 in dB. It is deliberately
    /// independent of `k` so that information sets are nested across rates
    /// for a fixed `(n, method, design SNR)`.
    pub fn compute(n: usize, design_snr_db: f64, method: ConstructionMethod) -> Result<Self> {
        if n == 0 || !n.is_power_of_two() {
            return Err(Error::LengthNotPowerOfTwo(n));
        }
        let scores = match method {
            ConstructionMethod::Bhattacharyya => bhattacharyya_unreliability(n, design_snr_db),
            ConstructionMethod::GaussianApproximation => ga_unreliability(n, design_snr_db),
        };
        // Stable sort on (unreliability descending, index ascending): ties go
        // to the lower index, which keeps construction deterministic.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| {
            scores[b]
                .partial_cmp(&scores[a])
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(a.cmp(&b))
        });
        Ok(ReliabilityOrder { order, method })
    }
}

/// Constructs an `(n, k)` code: the `k` most reliable synthetic channels
/// carry information, the rest are frozen.
pub fn construct(
    n: usize,
    k: usize,
    design_snr_db: f64,
    method: ConstructionMethod,
) -> Result<CodeSpec> {
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::LengthNotPowerOfTwo(n));
    }
    if k > n {
        return Err(Error::DimensionOutOfRange { n, k });
    }
    let rel = ReliabilityOrder::compute(n, design_snr_db, method)?;
    let mut frozen = vec![false; n];
    for &i in rel.order.iter().take(n - k) {
        frozen[i] = true;
    }
    CodeSpec::from_mask(
        frozen,
        Provenance::Constructed {
            design_snr_db,
            method,
        },
    )
}

/// Unreliability of each synthetic channel under the Bhattacharyya-parameter
/// recursion `z -> {2z - z^2, z^2}` started from an erasure-probability proxy
/// of the design SNR. Higher means worse.
fn bhattacharyya_unreliability(n: usize, design_snr_db: f64) -> Vec<f64> {
    let snr = 10f64.powf(design_snr_db / 10.0);
    let z0 = (-snr).exp().clamp(1e-12, 1.0 - 1e-12);
    let m = n.trailing_zeros();
    (0..n)
        .map(|i| {
            let mut z = z0;
            // Walk the index bits from the outermost split inward: a zero bit
            // takes the degraded branch, a one bit the upgraded branch.
            for level in (0..m).rev() {
                z = if (i >> level) & 1 == 0 {
                    2.0 * z - z * z
                } else {
                    z * z
                };
            }
            z
        })
        .collect()
}

/// Unreliability under the Gaussian approximation: tracks the mean LLR of
/// each synthetic channel and returns its negation so that higher is worse.
fn ga_unreliability(n: usize, design_snr_db: f64) -> Vec<f64> {
    let snr = 10f64.powf(design_snr_db / 10.0);
    // BPSK on AWGN with Es = 1: sigma^2 = 1 / (2 Es/N0), mean LLR 2/sigma^2.
    let mu0 = 4.0 * snr;
    let m = n.trailing_zeros();
    (0..n)
        .map(|i| {
            let mut mu = mu0;
            for level in (0..m).rev() {
                mu = if (i >> level) & 1 == 0 {
                    ga_check(mu)
                } else {
                    2.0 * mu
                };
            }
            -mu
        })
        .collect()
}

// The approximation phi(x) = exp(a - b x^c). A single smooth form (rather
// than the usual piecewise fit) keeps the update strictly monotone, which
// makes the ranking respect pairwise channel domination and keeps sibling
// rates clean at every tree level.
const GA_A: f64 = 0.0218;
const GA_B: f64 = 0.4527;
const GA_C: f64 = 0.86;

/// Mean-LLR update for the degraded (check) branch,
/// `phi^-1(1 - (1 - phi(mu))^2)`, evaluated in the log domain so it stays
/// finite when `phi(mu)` underflows.
fn ga_check(mu: f64) -> f64 {
    if mu <= 0.0 {
        return 0.0;
    }
    // 1 - (1 - t)^2 = t (2 - t) with t = phi(mu), so
    // ln y = (a - b mu^c) + ln(2 - t) and phi_inv has a closed form.
    let b_mu_c = GA_B * mu.powf(GA_C);
    let t = (GA_A - b_mu_c).exp();
    let ln_y = (GA_A - b_mu_c) + (2.0 - t).ln();
    ((GA_A - ln_y) / GA_B).powf(1.0 / GA_C)
}

/// Concatenates two constituent codes of equal length into a master code of
/// twice the length; the mask is `left ‖ right` verbatim.
pub fn assemble_master(left: &CodeSpec, right: &CodeSpec) -> Result<CodeSpec> {
    if left.n != right.n {
        return Err(Error::LengthMismatch {
            expected: left.n,
            got: right.n,
        });
    }
    let mut frozen = Vec::with_capacity(2 * left.n);
    frozen.extend_from_slice(&left.frozen);
    frozen.extend_from_slice(&right.frozen);
    CodeSpec::from_mask(
        frozen,
        Provenance::Assembled {
            left_id: format!("({}, {})", left.n, left.k),
            right_id: format!("({}, {})", right.n, right.k),
        },
    )
}

/// Warns when the assembly order loses coding gain: the lower-rate
/// constituent belongs on the left.
pub fn assembly_rate_warning(left: &CodeSpec, right: &CodeSpec) -> Option<String> {
    (left.rate() > right.rate()).then(|| {
        format!(
            "left constituent rate {:.4} exceeds right rate {:.4}; \
             the lowest-rate code should go on the left",
            left.rate(),
            right.rate()
        )
    })
}

/// A span of the full binary tree whose left half carries more information
/// bits than its right half.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SiblingRateViolation {
    pub span_offset: usize,
    pub span_len: usize,
    pub k_left: usize,
    pub k_right: usize,
}

/// Checks every internal node of the full binary span tree for the
/// polarization property that the left sibling's rate never exceeds the
/// right sibling's. Properly constructed codes return an empty list.
pub fn check_sibling_rates(spec: &CodeSpec) -> Vec<SiblingRateViolation> {
    let mut violations = Vec::new();
    let mut len = spec.n;
    while len >= 2 {
        for offset in (0..spec.n).step_by(len) {
            let half = len / 2;
            let k_of = |o: usize| spec.frozen[o..o + half].iter().filter(|&&f| !f).count();
            let (k_left, k_right) = (k_of(offset), k_of(offset + half));
            if k_left > k_right {
                violations.push(SiblingRateViolation {
                    span_offset: offset,
                    span_len: len,
                    k_left,
                    k_right,
                });
            }
        }
        len /= 2;
    }
    violations
}

/// On-disk form of a code spec.
#[derive(Serialize, Deserialize)]
struct SpecFile {
    n: usize,
    k: usize,
    frozen: Vec<usize>,
    provenance: Provenance,
}

/// Serializes a spec to its JSON file format.
pub fn spec_to_json(spec: &CodeSpec) -> String {
    let file = SpecFile {
        n: spec.n,
        k: spec.k,
        frozen: spec.frozen_indices(),
        provenance: spec.provenance.clone(),
    };
    serde_json::to_string_pretty(&file).expect("spec serialization cannot fail")
}

/// Parses and validates a JSON code spec.
pub fn spec_from_json(json: &str) -> Result<CodeSpec> {
    let file: SpecFile = serde_json::from_str(json)?;
    if file.n == 0 || !file.n.is_power_of_two() {
        return Err(Error::LengthNotPowerOfTwo(file.n));
    }
    let spec = CodeSpec::from_frozen_indices(file.n, &file.frozen, file.provenance)?;
    if spec.k != file.k {
        return Err(Error::InvalidSpec(format!(
            "declared k={} but mask leaves {} information positions",
            file.k, spec.k
        )));
    }
    Ok(spec)
}

pub fn save_spec(spec: &CodeSpec, path: &Path) -> Result<()> {
    fs::write(path, spec_to_json(spec))?;
    Ok(())
}

pub fn load_spec(path: &Path) -> Result<CodeSpec> {
    let json = fs::read_to_string(path)?;
    spec_from_json(&json)
}
