//! Pruned-tree (Fast-SSC) decoding.
//!
//! [`build_tree`] prunes a code's full binary tree under node-size
//! constraints: subtrees whose frozen pattern matches a constituent code
//! become single leaves decoded in one shot (Rate-0, Rate-1, repetition,
//! single-parity-check, fused Rep-SPC), everything else stays a Rate-R node
//! with an `F` / `G` / `Combine` recursion. When the left child is Rate-0 the
//! `F` step and the left subtree disappear entirely (`G0R` / `C0R`).
//!
//! Two flavours of each leaf rule exist:
//!
//! - The one-shot forms ([`decode_rate1`], [`decode_rep`], [`decode_spc`])
//!   are the hardware decision rules: copy the sign bit, threshold the
//!   widened input sum, flip the smallest-magnitude position (lowest index
//!   on ties) when parity fails.
//! - The tree decoder itself uses fused forms that perform the same
//!   `f`/`g`/`hard` operations as the plain recursion, in the same order.
//!   On inputs with zero LLRs or tied magnitudes the one-shot rules can pick
//!   a different (equally likely) codeword than the recursion; the fused
//!   forms cannot, which keeps pruning lossless bit for bit at any
//!   quantization. Both forms agree whenever the decision is unique, and
//!   both always land on a maximum-likelihood word of the leaf's codebook.

use std::fmt::Write as _;

use crate::code::CodeSpec;
use crate::llr::{FixedLlr, FloatLlr, LlrDomain};
use crate::quant::{QLlr, QuantSpec};
use crate::sc::{combine_op, f_op, g_op};
use crate::{Error, Result};

/// Maximum widths for the specialized leaf decoders.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NodeConstraints {
    /// Largest repetition node, power of two >= 2.
    pub max_rep: usize,
    /// Largest single-parity-check node, power of two >= 2.
    pub max_spc: usize,
    /// Whether length-8 repetition/SPC concatenations fuse into one node.
    pub enable_repspc: bool,
}

impl NodeConstraints {
    pub fn new(max_rep: usize, max_spc: usize, enable_repspc: bool) -> Result<Self> {
        for (name, v) in [("max_rep", max_rep), ("max_spc", max_spc)] {
            if v < 2 || !v.is_power_of_two() {
                return Err(Error::InvalidArgument(format!(
                    "{name} must be a power of two >= 2, got {v}"
                )));
            }
        }
        Ok(NodeConstraints {
            max_rep,
            max_spc,
            enable_repspc,
        })
    }
}

impl Default for NodeConstraints {
    /// The constraints of the reference 1024-bit decoder configuration.
    fn default() -> Self {
        NodeConstraints {
            max_rep: 8,
            max_spc: 4,
            enable_repspc: false,
        }
    }
}

/// Half-open span of codeword positions covered by a node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Span {
    pub offset: usize,
    pub len: usize,
}

impl std::fmt::Display for Span {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}..{}", self.offset, self.offset + self.len)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum NodeKind {
    Rate0,
    Rate1,
    Rep,
    Spc,
    RepSpc,
    RateR,
}

impl std::fmt::Display for NodeKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            NodeKind::Rate0 => "Rate0",
            NodeKind::Rate1 => "Rate1",
            NodeKind::Rep => "Rep",
            NodeKind::Spc => "SPC",
            NodeKind::RepSpc => "RepSPC",
            NodeKind::RateR => "RateR",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct TreeNode {
    pub kind: NodeKind,
    pub span: Span,
    /// `(left, right)` node indices for Rate-R nodes.
    pub children: Option<(usize, usize)>,
}

/// A pruned decoder tree. Node 0 is the root; children always have larger
/// indices (pre-order layout).
#[derive(Debug, Clone)]
pub struct DecoderTree {
    nodes: Vec<TreeNode>,
    n: usize,
    k: usize,
    constraints: NodeConstraints,
}

impl DecoderTree {
    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    pub fn node(&self, idx: usize) -> Option<&TreeNode> {
        self.nodes.get(idx)
    }

    pub fn root(&self) -> &TreeNode {
        &self.nodes[0]
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn constraints(&self) -> NodeConstraints {
        self.constraints
    }

    /// Leaf nodes in span order.
    pub fn leaves(&self) -> impl Iterator<Item = (usize, &TreeNode)> {
        self.nodes
            .iter()
            .enumerate()
            .filter(|(_, n)| n.children.is_none())
    }

    /// The node rooted at the given span, if the tree has one.
    pub fn find_span(&self, offset: usize, len: usize) -> Option<usize> {
        self.nodes
            .iter()
            .position(|n| n.span.offset == offset && n.span.len == len)
    }

    /// Graphviz rendering of the pruned tree.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph decoder_tree {\n  node [fontname=\"monospace\"];\n");
        for (i, node) in self.nodes.iter().enumerate() {
            let shape = if node.children.is_some() {
                "ellipse"
            } else {
                "box"
            };
            let _ = writeln!(
                out,
                "  n{i} [label=\"{} {}\" shape={shape}];",
                node.kind, node.span
            );
        }
        for (i, node) in self.nodes.iter().enumerate() {
            if let Some((l, r)) = node.children {
                let _ = writeln!(out, "  n{i} -> n{l};");
                let _ = writeln!(out, "  n{i} -> n{r};");
            }
        }
        out.push_str("}\n");
        out
    }
}

fn is_rep_pattern(mask: &[bool]) -> bool {
    mask.len() >= 2 && !mask[mask.len() - 1] && mask[..mask.len() - 1].iter().all(|&f| f)
}

fn is_spc_pattern(mask: &[bool]) -> bool {
    mask.len() >= 2 && mask[0] && mask[1..].iter().all(|&f| !f)
}

fn classify(mask: &[bool], c: &NodeConstraints) -> NodeKind {
    let len = mask.len();
    if mask.iter().all(|&f| f) {
        NodeKind::Rate0
    } else if mask.iter().all(|&f| !f) {
        NodeKind::Rate1
    } else if is_rep_pattern(mask) && len <= c.max_rep {
        NodeKind::Rep
    } else if is_spc_pattern(mask) && len <= c.max_spc {
        NodeKind::Spc
    } else if c.enable_repspc
        && len == 8
        && is_rep_pattern(&mask[..4])
        && is_spc_pattern(&mask[4..])
    {
        NodeKind::RepSpc
    } else {
        NodeKind::RateR
    }
}

/// Prunes the code's binary tree maximally under the given constraints.
pub fn build_tree(spec: &CodeSpec, constraints: NodeConstraints) -> DecoderTree {
    let mut nodes = Vec::new();
    build_rec(spec.frozen_mask(), 0, &constraints, &mut nodes);
    DecoderTree {
        nodes,
        n: spec.n(),
        k: spec.k(),
        constraints,
    }
}

fn build_rec(
    mask: &[bool],
    offset: usize,
    c: &NodeConstraints,
    nodes: &mut Vec<TreeNode>,
) -> usize {
    let kind = classify(mask, c);
    let idx = nodes.len();
    nodes.push(TreeNode {
        kind,
        span: Span {
            offset,
            len: mask.len(),
        },
        children: None,
    });
    if kind == NodeKind::RateR {
        let m = mask.len() / 2;
        let left = build_rec(&mask[..m], offset, c, nodes);
        let right = build_rec(&mask[m..], offset + m, c, nodes);
        nodes[idx].children = Some((left, right));
    }
    idx
}

// ---------------------------------------------------------------------------
// One-shot leaf rules (hardware decision forms)
// ---------------------------------------------------------------------------

/// Rate-0: the exact decision is the all-zero vector.
pub fn decode_rate0(len: usize) -> Vec<u8> {
    vec![0; len]
}

/// Rate-1: hard decision per position (the sign bit in fixed point).
pub fn decode_rate1<D: LlrDomain>(dom: &D, alpha: &[D::Llr]) -> Vec<u8> {
    alpha.iter().map(|&a| dom.hard(a)).collect()
}

/// Repetition: threshold the widened sum of all inputs, replicate.
pub fn decode_rep<D: LlrDomain>(dom: &D, alpha: &[D::Llr]) -> Vec<u8> {
    vec![dom.wide_sum_bit(alpha); alpha.len()]
}

/// Single parity check: hard decisions; when their parity is odd, flip the
/// position with the smallest LLR magnitude (lowest index on ties).
pub fn decode_spc<D: LlrDomain>(dom: &D, alpha: &[D::Llr]) -> Vec<u8> {
    let mut bits = decode_rate1(dom, alpha);
    let parity = bits.iter().fold(0u8, |p, &b| p ^ b);
    if parity != 0 {
        let mut min_i = 0;
        for i in 1..alpha.len() {
            if dom.abs_lt(alpha[i], alpha[min_i]) {
                min_i = i;
            }
        }
        bits[min_i] ^= 1;
    }
    bits
}

/// Fused length-8 repetition/SPC node, defined as the expansion
/// `f -> rep -> g -> spc -> combine` over the two halves.
pub fn decode_repspc<D: LlrDomain>(dom: &D, alpha: &[D::Llr]) -> Vec<u8> {
    debug_assert_eq!(alpha.len(), 8);
    repspc_node(dom, alpha)
}

// ---------------------------------------------------------------------------
// Fused leaf rules used inside the tree (recursion-exact)
// ---------------------------------------------------------------------------

fn rate1_node<D: LlrDomain>(dom: &D, alpha: &[D::Llr]) -> Vec<u8> {
    if alpha.len() == 1 {
        return vec![dom.hard(alpha[0])];
    }
    let beta_left = rate1_node(dom, &f_op(dom, alpha));
    let beta_right = rate1_node(dom, &g_op(dom, alpha, &beta_left));
    combine_op(&beta_left, &beta_right)
}

fn rep_node<D: LlrDomain>(dom: &D, alpha: &[D::Llr]) -> Vec<u8> {
    // Every level's left child is Rate-0, so the recursion collapses into
    // pairwise (saturating) sums followed by one hard decision.
    let mut cur = alpha.to_vec();
    while cur.len() > 1 {
        let zeros = vec![0u8; cur.len() / 2];
        cur = g_op(dom, &cur, &zeros);
    }
    vec![dom.hard(cur[0]); alpha.len()]
}

fn spc_node<D: LlrDomain>(dom: &D, alpha: &[D::Llr]) -> Vec<u8> {
    if alpha.len() == 2 {
        let b = dom.hard(dom.g(alpha[0], alpha[1], 0));
        return vec![b, b];
    }
    let beta_left = spc_node(dom, &f_op(dom, alpha));
    let beta_right = rate1_node(dom, &g_op(dom, alpha, &beta_left));
    combine_op(&beta_left, &beta_right)
}

fn repspc_node<D: LlrDomain>(dom: &D, alpha: &[D::Llr]) -> Vec<u8> {
    let beta_left = rep_node(dom, &f_op(dom, alpha));
    let beta_right = spc_node(dom, &g_op(dom, alpha, &beta_left));
    combine_op(&beta_left, &beta_right)
}

/// Decodes one leaf span with the tree-internal (recursion-exact) rule.
/// The pipeline simulator uses this too, so schedules, the tree decoder and
/// the reference recursion all produce identical bits.
pub(crate) fn decode_leaf<D: LlrDomain>(dom: &D, kind: NodeKind, alpha: &[D::Llr]) -> Vec<u8> {
    match kind {
        NodeKind::Rate0 => decode_rate0(alpha.len()),
        NodeKind::Rate1 => rate1_node(dom, alpha),
        NodeKind::Rep => rep_node(dom, alpha),
        NodeKind::Spc => spc_node(dom, alpha),
        NodeKind::RepSpc => repspc_node(dom, alpha),
        NodeKind::RateR => unreachable!("Rate-R is not a leaf"),
    }
}

// ---------------------------------------------------------------------------
// Tree decoding
// ---------------------------------------------------------------------------

fn decode_node<D: LlrDomain>(dom: &D, tree: &DecoderTree, idx: usize, alpha: &[D::Llr]) -> Vec<u8> {
    let node = &tree.nodes[idx];
    let Some((left, right)) = node.children else {
        return decode_leaf(dom, node.kind, alpha);
    };
    let m = alpha.len() / 2;
    if tree.nodes[left].kind == NodeKind::Rate0 {
        // G0R: the left estimate is all-zero a priori; C0R duplicates beta_r.
        let zeros = vec![0u8; m];
        let alpha_right = g_op(dom, alpha, &zeros);
        let beta_right = decode_node(dom, tree, right, &alpha_right);
        let mut beta = beta_right.clone();
        beta.extend_from_slice(&beta_right);
        return beta;
    }
    let alpha_left = f_op(dom, alpha);
    let beta_left = decode_node(dom, tree, left, &alpha_left);
    if tree.nodes[right].kind == NodeKind::Rate0 {
        let zeros = vec![0u8; m];
        return combine_op(&beta_left, &zeros);
    }
    let alpha_right = g_op(dom, alpha, &beta_left);
    let beta_right = decode_node(dom, tree, right, &alpha_right);
    combine_op(&beta_left, &beta_right)
}

/// Decodes a channel LLR vector with the pruned tree. Bit-exact to
/// [`crate::sc::sc_decode`] under the same arithmetic domain.
pub fn fastssc_decode<D: LlrDomain>(
    dom: &D,
    tree: &DecoderTree,
    channel: &[D::Llr],
) -> Result<Vec<u8>> {
    if channel.len() != tree.n {
        return Err(Error::LengthMismatch {
            expected: tree.n,
            got: channel.len(),
        });
    }
    Ok(decode_node(dom, tree, 0, channel))
}

pub fn fastssc_decode_f64(tree: &DecoderTree, channel: &[f64]) -> Result<Vec<u8>> {
    fastssc_decode(&FloatLlr, tree, channel)
}

pub fn fastssc_decode_fixed(
    tree: &DecoderTree,
    quant: QuantSpec,
    channel: &[QLlr],
) -> Result<Vec<u8>> {
    fastssc_decode(&FixedLlr::new(quant), tree, channel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{construct, CodeSpec, ConstructionMethod, Provenance};
    use crate::sc::{sc_decode_f64, sc_decode_fixed};
    use rand::prelude::*;

    fn imported(n: usize, frozen: &[usize]) -> CodeSpec {
        CodeSpec::from_frozen_indices(n, frozen, Provenance::Imported { path: "t".into() }).unwrap()
    }

    fn fig1_16_12() -> CodeSpec {
        imported(16, &[0, 1, 2, 4])
    }

    #[test]
    fn tree_for_16_12_matches_reference_figure() {
        let tree = build_tree(&fig1_16_12(), NodeConstraints::default());
        let leaves: Vec<(NodeKind, usize, usize)> = tree
            .leaves()
            .map(|(_, n)| (n.kind, n.span.offset, n.span.len))
            .collect();
        assert_eq!(
            leaves,
            vec![
                (NodeKind::Rep, 0, 4),
                (NodeKind::Spc, 4, 4),
                (NodeKind::Rate1, 8, 8),
            ]
        );
    }

    #[test]
    fn repspc_fuses_the_8_4_pattern() {
        let c = NodeConstraints::new(8, 4, true).unwrap();
        let tree = build_tree(&imported(8, &[0, 1, 2, 4]), c);
        assert_eq!(tree.nodes().len(), 1);
        assert_eq!(tree.root().kind, NodeKind::RepSpc);
    }

    #[test]
    fn degenerate_trees() {
        let one = build_tree(
            &construct(16, 16, 0.0, ConstructionMethod::Bhattacharyya).unwrap(),
            NodeConstraints::default(),
        );
        assert_eq!(one.nodes().len(), 1);
        assert_eq!(one.root().kind, NodeKind::Rate1);

        let zero = build_tree(
            &construct(16, 0, 0.0, ConstructionMethod::Bhattacharyya).unwrap(),
            NodeConstraints::default(),
        );
        assert_eq!(zero.root().kind, NodeKind::Rate0);
    }

    #[test]
    fn size_limits_split_oversized_nodes() {
        // A pure repetition pattern of length 16 with max_rep 4 must split.
        let spec = imported(16, &(0..15).collect::<Vec<_>>());
        let tree = build_tree(&spec, NodeConstraints::new(4, 4, false).unwrap());
        for (_, leaf) in tree.leaves() {
            if leaf.kind == NodeKind::Rep {
                assert!(leaf.span.len <= 4);
            }
        }
        let big = build_tree(&spec, NodeConstraints::new(16, 4, false).unwrap());
        assert_eq!(big.nodes().len(), 1);
        assert_eq!(big.root().kind, NodeKind::Rep);
    }

    #[test]
    fn leaf_spans_partition_the_codeword() {
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..50 {
            let n = 1 << rng.gen_range(1..8);
            let frozen: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
            let spec =
                CodeSpec::from_mask(frozen, Provenance::Imported { path: "t".into() }).unwrap();
            let tree = build_tree(&spec, NodeConstraints::default());
            let mut covered = vec![false; n];
            for (_, leaf) in tree.leaves() {
                for slot in &mut covered[leaf.span.offset..leaf.span.offset + leaf.span.len] {
                    assert!(!*slot, "overlapping spans");
                    *slot = true;
                }
            }
            assert!(covered.iter().all(|&c| c));
        }
    }

    #[test]
    fn one_shot_rule_examples() {
        let d = FloatLlr;
        assert_eq!(decode_rate0(4), vec![0, 0, 0, 0]);
        assert_eq!(decode_rate0(1), vec![0]);
        assert_eq!(decode_rate1(&d, &[-1.0, 0.0, 3.0]), vec![1, 0, 0]);
        assert_eq!(decode_rate1(&d, &[2.0, 5.0]), vec![0, 0]);
        assert_eq!(decode_rate1(&d, &[-2.0, -5.0]), vec![1, 1]);

        // Sum of zero decides 0.
        assert_eq!(decode_rep(&d, &[1.0, -3.0, 1.0, 1.0]), vec![0; 4]);
        assert_eq!(decode_rep(&d, &[-1.0, -1.0, 1.0, -2.0]), vec![1; 4]);
        assert_eq!(decode_rep(&d, &[5.0, -1.0]), vec![0, 0]);

        // Parity already satisfied.
        assert_eq!(decode_spc(&d, &[1.0, -2.0, -3.0, 4.0]), vec![0, 1, 1, 0]);
        // Parity violated: flip the smallest magnitude (index 0).
        assert_eq!(decode_spc(&d, &[1.0, -2.0, 3.0, 4.0]), vec![1, 1, 0, 0]);
        // Zero magnitude is the minimum.
        assert_eq!(decode_spc(&d, &[0.0, 2.0, 2.0, -2.0]), vec![1, 0, 0, 1]);
    }

    /// Correlation of a word against the LLRs: bit 0 adds the LLR, bit 1
    /// subtracts it. Maximum-likelihood words maximize this.
    fn correlation(alpha: &[f64], word: &[u8]) -> f64 {
        alpha
            .iter()
            .zip(word)
            .map(|(&a, &b)| if b == 0 { a } else { -a })
            .sum()
    }

    fn best_metric<F: Fn(u32) -> bool>(alpha: &[f64], admit: F) -> f64 {
        let n = alpha.len();
        let mut best = f64::NEG_INFINITY;
        for w in 0..1u32 << n {
            if !admit(w) {
                continue;
            }
            let word: Vec<u8> = (0..n).map(|i| ((w >> i) & 1) as u8).collect();
            best = best.max(correlation(alpha, &word));
        }
        best
    }

    #[test]
    fn spc_rules_are_maximum_likelihood() {
        // Exhaustive over a small grid for lengths 4 and 8: both the
        // one-shot rule and the fused rule must achieve the even-parity
        // codebook's best correlation.
        let d = FloatLlr;
        let grid = [-2.0f64, -1.0, 0.0, 1.0, 2.0];
        for len in [4usize, 8] {
            let draws = if len == 4 { grid.len().pow(4) } else { 4096 };
            let mut rng = StdRng::seed_from_u64(23);
            for t in 0..draws {
                let alpha: Vec<f64> = if len == 4 {
                    (0..4)
                        .map(|i| grid[(t / grid.len().pow(i as u32)) % grid.len()])
                        .collect()
                } else {
                    (0..len).map(|_| *grid.choose(&mut rng).unwrap()).collect()
                };
                let best = best_metric(&alpha, |w| w.count_ones() % 2 == 0);
                for word in [decode_spc(&d, &alpha), spc_node(&d, &alpha)] {
                    assert_eq!(word.iter().fold(0u8, |p, &b| p ^ b), 0, "parity violated");
                    assert_eq!(
                        correlation(&alpha, &word),
                        best,
                        "suboptimal for {alpha:?}: {word:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn rep_rules_are_maximum_likelihood() {
        let d = FloatLlr;
        let mut rng = StdRng::seed_from_u64(29);
        for len in [2usize, 4, 8, 16] {
            for _ in 0..2000 {
                let alpha: Vec<f64> = (0..len).map(|_| rng.gen_range(-3..=3) as f64).collect();
                let best =
                    correlation(&alpha, &vec![0; len]).max(correlation(&alpha, &vec![1; len]));
                for word in [decode_rep(&d, &alpha), rep_node(&d, &alpha)] {
                    assert!(word.iter().all(|&b| b == word[0]));
                    assert_eq!(correlation(&alpha, &word), best);
                }
            }
        }
    }

    #[test]
    fn repspc_equals_expanded_subtree() {
        // Force the expansion by disabling the fused node; the fused decode
        // must match bit for bit, including on tied inputs.
        let spec = imported(8, &[0, 1, 2, 4]);
        let fused = build_tree(&spec, NodeConstraints::new(8, 4, true).unwrap());
        let expanded = build_tree(&spec, NodeConstraints::new(4, 4, false).unwrap());
        assert_eq!(fused.root().kind, NodeKind::RepSpc);
        assert!(expanded.nodes().len() > 1);

        let q = QuantSpec::new(5, 4, 0).unwrap();
        let dom = FixedLlr::new(q);
        let mut rng = StdRng::seed_from_u64(31);
        for _ in 0..10_000 {
            let alpha: Vec<QLlr> = (0..8).map(|_| QLlr(rng.gen_range(-7..=7))).collect();
            assert_eq!(
                fastssc_decode(&dom, &fused, &alpha).unwrap(),
                fastssc_decode(&dom, &expanded, &alpha).unwrap()
            );
        }
    }

    #[test]
    fn pruning_is_lossless_exhaustively_small() {
        // Every constructed spec with n <= 8, every k, over a quantized grid
        // rich in ties and zeros; several constraint sets.
        let q = QuantSpec::new(4, 3, 0).unwrap();
        let dom = FixedLlr::new(q);
        let grid: Vec<i32> = vec![-3, -1, 0, 1, 3];
        let constraint_sets = [
            NodeConstraints::default(),
            NodeConstraints::new(2, 2, false).unwrap(),
            NodeConstraints::new(16, 8, true).unwrap(),
        ];
        for n in [1usize, 2, 4, 8] {
            for k in 0..=n {
                let spec = construct(n, k, 0.0, ConstructionMethod::Bhattacharyya).unwrap();
                for c in constraint_sets {
                    let tree = build_tree(&spec, c);
                    let total = grid.len().pow(n as u32);
                    for t in 0..total {
                        let alpha: Vec<QLlr> = (0..n)
                            .map(|i| QLlr(grid[(t / grid.len().pow(i as u32)) % grid.len()]))
                            .collect();
                        let fast = fastssc_decode(&dom, &tree, &alpha).unwrap();
                        let slow = sc_decode_fixed(&spec, q, &alpha).unwrap();
                        assert_eq!(fast, slow, "n={n} k={k} c={c:?} alpha={alpha:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn pruning_is_lossless_on_random_masks() {
        // Random masks include patterns a real construction never produces
        // (e.g. Rate-0 right children).
        let q = QuantSpec::new(5, 4, 0).unwrap();
        let dom = FixedLlr::new(q);
        let mut rng = StdRng::seed_from_u64(37);
        for _ in 0..300 {
            let n = 1 << rng.gen_range(1..6);
            let frozen: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
            let spec =
                CodeSpec::from_mask(frozen, Provenance::Imported { path: "t".into() }).unwrap();
            let tree = build_tree(&spec, NodeConstraints::default());
            for _ in 0..200 {
                let alpha: Vec<QLlr> = (0..n).map(|_| QLlr(rng.gen_range(-7..=7))).collect();
                assert_eq!(
                    fastssc_decode(&dom, &tree, &alpha).unwrap(),
                    sc_decode_fixed(&spec, q, &alpha).unwrap()
                );
            }
        }
    }

    #[test]
    fn pruning_is_lossless_float_1024() {
        let spec = construct(1024, 512, 2.5, ConstructionMethod::GaussianApproximation).unwrap();
        let tree = build_tree(&spec, NodeConstraints::default());
        let mut rng = StdRng::seed_from_u64(41);
        for _ in 0..200 {
            let alpha: Vec<f64> = (0..1024).map(|_| rng.gen_range(-8.0..8.0)).collect();
            assert_eq!(
                fastssc_decode_f64(&tree, &alpha).unwrap(),
                sc_decode_f64(&spec, &alpha).unwrap()
            );
        }
    }

    #[test]
    fn decode_rejects_wrong_length() {
        let tree = build_tree(&fig1_16_12(), NodeConstraints::default());
        assert!(fastssc_decode_f64(&tree, &[0.0; 8]).is_err());
    }
}
