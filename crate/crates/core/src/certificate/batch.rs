use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::TheoremVerifier;
use crate::error::Result;
use crate::expansion::{Mode, SearchConfig};
use crate::graph::Graph;
use crate::spectral::spectral_gap_c;

#[derive(Debug, Clone, Copy)]
pub struct BatchConfig {
    pub max_n: usize,
    pub seed: u64,
    /// Largest `n` whose edge subsets are enumerated in full.
    pub full_enumeration_max_n: usize,
    /// Number of distinct connected graphs sampled above that size.
    pub sample_cap: usize,
    /// Gaps `c` at or below this are skipped.
    pub min_gap: f64,
    pub mode: Mode,
    pub search: SearchConfig,
}

impl Default for BatchConfig {
    fn default() -> Self {
        Self {
            max_n: 7,
            seed: 0,
            full_enumeration_max_n: 6,
            sample_cap: 50_000,
            min_gap: 1e-8,
            mode: Mode::Exact,
            search: SearchConfig::default(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct BatchLine {
    pub n: usize,
    pub sampled: bool,
    pub graphs: usize,
    /// `(graph, k)` pairs with `c` above the gap floor.
    pub instances: usize,
    pub violations: usize,
    /// Reports carrying at least one failed proof-step check.
    pub failed_checks: usize,
    pub max_a_plus_b_minus_k: i64,
    /// First few violating instances as `(edges, k)`.
    pub examples: Vec<(Vec<(usize, usize)>, usize)>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct BatchSummary {
    pub lines: Vec<BatchLine>,
}

impl BatchSummary {
    pub fn violations(&self) -> usize {
        self.lines.iter().map(|l| l.violations).sum()
    }

    pub fn failed_checks(&self) -> usize {
        self.lines.iter().map(|l| l.failed_checks).sum()
    }

    pub fn instances(&self) -> usize {
        self.lines.iter().map(|l| l.instances).sum()
    }
}

fn graph_from_mask(n: usize, pairs: &[(usize, usize)], mask: u64) -> Graph {
    let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
    Graph::new(n, edges).expect("pairs are valid")
}

/// Connected graphs on `n` labelled nodes, by raw edge-subset enumeration
/// when `n <= full_max_n`, otherwise `cap` distinct uniformly sampled
/// connected edge subsets. Returns the graphs and whether sampling was used.
pub fn connected_graphs(n: usize, full_max_n: usize, cap: usize, seed: u64) -> (Vec<Graph>, bool) {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let bits = pairs.len();
    if n <= full_max_n {
        let graphs = (0..1u64 << bits)
            .into_par_iter()
            .map(|mask| graph_from_mask(n, &pairs, mask))
            .filter(Graph::is_connected)
            .collect();
        return (graphs, false);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let mut seen = HashSet::new();
    let mut graphs = Vec::with_capacity(cap);
    let full = if bits >= 64 { u64::MAX } else { (1u64 << bits) - 1 };
    while graphs.len() < cap {
        let mask = rng.gen::<u64>() & full;
        if !seen.insert(mask) {
            continue;
        }
        let g = graph_from_mask(n, &pairs, mask);
        if g.is_connected() {
            graphs.push(g);
        }
    }
    (graphs, true)
}

#[derive(Default)]
struct GraphOutcome {
    instances: usize,
    violations: Vec<usize>,
    failed_checks: usize,
    worst: i64,
}

fn verify_graph(g: &Graph, cfg: &BatchConfig) -> Result<GraphOutcome> {
    let verifier = TheoremVerifier::new(g)?;
    let mut out = GraphOutcome { worst: i64::MIN, ..Default::default() };
    for k in 2..g.node_count() {
        if spectral_gap_c(verifier.spectrum(), k)? <= cfg.min_gap {
            continue;
        }
        out.instances += 1;
        let report = verifier.verify(k, cfg.mode.strategy(), &cfg.search)?;
        out.worst = out.worst.max((report.a + report.b) as i64 - k as i64);
        if !report.theorem_holds {
            out.violations.push(k);
        }
        if report.failed_checks().next().is_some() {
            out.failed_checks += 1;
        }
    }
    Ok(out)
}

/// Checks `a + b <= k` for every connected graph with `3 <= n <= max_n` and
/// every `k` in `2..n` with a nondegenerate gap.
pub fn batch_verify(cfg: &BatchConfig) -> Result<BatchSummary> {
    let mut summary = BatchSummary::default();
    for n in 3..=cfg.max_n {
        let (graphs, sampled) = connected_graphs(n, cfg.full_enumeration_max_n, cfg.sample_cap, cfg.seed);
        let outcomes: Vec<GraphOutcome> = graphs.par_iter().map(|g| verify_graph(g, cfg)).collect::<Result<_>>()?;
        let mut line = BatchLine { n, sampled, graphs: graphs.len(), max_a_plus_b_minus_k: i64::MIN, ..Default::default() };
        for (g, o) in graphs.iter().zip(&outcomes) {
            line.instances += o.instances;
            line.violations += o.violations.len();
            line.failed_checks += o.failed_checks;
            line.max_a_plus_b_minus_k = line.max_a_plus_b_minus_k.max(o.worst);
            for &k in &o.violations {
                if line.examples.len() < 5 {
                    line.examples.push((g.edges().to_vec(), k));
                }
            }
        }
        summary.lines.push(line);
    }
    Ok(summary)
}
