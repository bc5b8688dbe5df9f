use super::{below, CutEvaluator, Mode, PartitionCertificate, SearchConfig, SearchStrategy};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeWeights};
use crate::registry::Named;

/// Exhaustive enumeration. Verdicts and "no partition" answers are proofs.
#[derive(Debug, Clone, Copy, Default)]
pub struct Exact;

impl Named for Exact {
    fn name(&self) -> &'static str {
        "exact"
    }
}

/// Calls `visit` on every restricted growth string of length `n` using
/// exactly `k` blocks, in lexicographic order, until it returns `true`.
/// Returns whether enumeration was stopped early.
pub fn for_each_set_partition(n: usize, k: usize, mut visit: impl FnMut(&[usize]) -> bool) -> bool {
    fn rec(i: usize, used: usize, k: usize, labels: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        let n = labels.len();
        if i == n {
            return used == k && visit(labels);
        }
        if k - used > n - i {
            return false;
        }
        for b in 0..(used + 1).min(k) {
            labels[i] = b;
            if rec(i + 1, used.max(b + 1), k, labels, visit) {
                return true;
            }
        }
        false
    }
    if k == 0 || k > n {
        return false;
    }
    let mut labels = vec![0; n];
    rec(0, 0, k, &mut labels, &mut visit)
}

impl SearchStrategy for Exact {
    fn mode(&self) -> Mode {
        Mode::Exact
    }

    /// Enumerates every bipartition of the weighted nodes (the first weighted
    /// node stays in `S`); ties go to the lexicographically smallest set.
    fn best_cut(&self, g: &Graph, w: &NodeWeights, cfg: &SearchConfig) -> Result<Option<Vec<usize>>> {
        let ev = CutEvaluator::new(g, w);
        let p = ev.len();
        if p > cfg.bipartition_cap {
            return Err(Error::ExactCapExceeded { size: p, cap: cfg.bipartition_cap });
        }
        if p < 2 {
            return Ok(None);
        }
        let mut inside = vec![false; p];
        let mut best: Option<(f64, Vec<usize>)> = None;
        // Bit j of `mask` is node j + 1; node 0 is always inside.
        for mask in 0u64..(1u64 << (p - 1)) - 1 {
            inside[0] = true;
            for (j, slot) in inside.iter_mut().enumerate().skip(1) {
                *slot = mask >> (j - 1) & 1 == 1;
            }
            let value = ev.set_phi(&inside);
            let better = match &best {
                None => true,
                Some((b, _)) if value < *b => true,
                Some((b, set)) if value == *b => ev.lift_mask(&inside) < *set,
                _ => false,
            };
            if better {
                best = Some((value, ev.lift_mask(&inside)));
            }
        }
        Ok(best.map(|(_, set)| set))
    }

    /// First valid partition in restricted-growth order over the weighted
    /// nodes. `None` proves no `(k, c)` partition exists.
    fn partition(&self, g: &Graph, w: &NodeWeights, k: usize, c: f64, cfg: &SearchConfig) -> Result<Option<PartitionCertificate>> {
        let ev = CutEvaluator::new(g, w);
        let p = ev.len();
        if p > cfg.partition_cap {
            return Err(Error::ExactCapExceeded { size: p, cap: cfg.partition_cap });
        }
        let mut found = None;
        let mut failure = None;
        for_each_set_partition(p, k, |labels| {
            if ev.class_phis(labels, k).iter().any(|&x| !below(x, c)) {
                return false;
            }
            match PartitionCertificate::certify(g, w, ev.lift_labels(g, labels, k), c) {
                Ok(cert) if cert.valid => {
                    found = Some(cert);
                    true
                }
                Ok(_) => false,
                Err(e) => {
                    failure = Some(e);
                    true
                }
            }
        });
        match failure {
            Some(e) => Err(e),
            None => Ok(found),
        }
    }
}
