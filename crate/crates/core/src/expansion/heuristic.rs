use std::cmp::Ordering;

use super::{below, sweep_cut, weighted_fiedler_order, CutEvaluator, Mode, PartitionCertificate, SearchConfig, SearchStrategy};
use crate::error::Result;
use crate::graph::{Graph, NodeWeights};
use crate::registry::Named;

/// Sweep cuts along weighted Fiedler orderings plus greedy single-node
/// moves. Anything it returns is re-verified; failing to find a cut or a
/// partition proves nothing.
#[derive(Debug, Clone, Copy, Default)]
pub struct Heuristic;

impl Named for Heuristic {
    fn name(&self) -> &'static str {
        "heuristic"
    }
}

/// (classes at or above `c`, total excess over `c`, largest `Phi`); smaller is better.
fn score(phis: &[f64], c: f64) -> (usize, f64, f64) {
    let bad = phis.iter().filter(|&&p| !below(p, c)).count();
    let excess = phis.iter().map(|&p| if p.is_finite() { (p - c).max(0.0) } else { 1e300 }).sum();
    let max = phis.iter().copied().fold(0.0, f64::max);
    (bad, excess, max)
}

fn cmp_score(a: &(usize, f64, f64), b: &(usize, f64, f64)) -> Ordering {
    a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)).then(a.2.total_cmp(&b.2))
}

impl SearchStrategy for Heuristic {
    fn mode(&self) -> Mode {
        Mode::Heuristic
    }

    fn best_cut(&self, g: &Graph, w: &NodeWeights, cfg: &SearchConfig) -> Result<Option<Vec<usize>>> {
        let ev = CutEvaluator::new(g, w);
        if ev.len() < 2 {
            return Ok(None);
        }
        let order = weighted_fiedler_order(g, w);
        let Some(start) = sweep_cut(g, w, &order)? else {
            return Ok(None);
        };
        let mut inside: Vec<bool> = ev.nodes.iter().map(|u| start.set.binary_search(u).is_ok()).collect();
        let mut current = ev.set_phi(&inside);
        let mut evals = 0;
        'passes: loop {
            let mut improved = false;
            for i in 0..inside.len() {
                if evals >= cfg.budget {
                    break 'passes;
                }
                evals += 1;
                inside[i] = !inside[i];
                let value = ev.set_phi(&inside);
                if value < current {
                    current = value;
                    improved = true;
                } else {
                    inside[i] = !inside[i];
                }
            }
            if !improved {
                break;
            }
        }
        Ok(Some(ev.lift_mask(&inside)))
    }

    fn partition(&self, g: &Graph, w: &NodeWeights, k: usize, c: f64, cfg: &SearchConfig) -> Result<Option<PartitionCertificate>> {
        let ev = CutEvaluator::new(g, w);
        let p = ev.len();
        let mut labels = vec![0usize; p];
        let mut classes = 1;

        // Recursive splitting: at each step split whichever class gives the
        // best resulting score.
        while classes < k {
            let mut best: Option<((usize, f64, f64), Vec<usize>)> = None;
            for target in 0..classes {
                let members: Vec<usize> = (0..p).filter(|&i| labels[i] == target).collect();
                if members.len() < 2 {
                    continue;
                }
                let parent: Vec<usize> = members.iter().map(|&i| ev.nodes[i]).collect();
                let sub = g.induced_subgraph(&parent)?;
                let ws = w.restrict(&sub);
                let order = weighted_fiedler_order(&sub.graph, &ws);
                let Some(cut) = sweep_cut(&sub.graph, &ws, &order)? else {
                    continue;
                };
                let mut trial = labels.clone();
                for &local in &cut.set {
                    trial[members[local]] = classes;
                }
                let s = score(&ev.class_phis(&trial, classes + 1), c);
                if best.as_ref().is_none_or(|(b, _)| cmp_score(&s, b) == Ordering::Less) {
                    best = Some((s, trial));
                }
            }
            match best {
                Some((_, trial)) => {
                    labels = trial;
                    classes += 1;
                }
                None => return Ok(None),
            }
        }

        let mut sizes = vec![0usize; k];
        for &l in &labels {
            sizes[l] += 1;
        }
        let mut current = score(&ev.class_phis(&labels, k), c);
        let mut evals = 0;
        'passes: while current.0 > 0 {
            let mut improved = false;
            for i in 0..p {
                let from = labels[i];
                if sizes[from] == 1 {
                    continue;
                }
                for to in (0..k).filter(|&t| t != from) {
                    if evals >= cfg.budget {
                        break 'passes;
                    }
                    evals += 1;
                    labels[i] = to;
                    let s = score(&ev.class_phis(&labels, k), c);
                    if cmp_score(&s, &current) == Ordering::Less {
                        current = s;
                        sizes[from] -= 1;
                        sizes[to] += 1;
                        improved = true;
                        break;
                    }
                    labels[i] = from;
                }
            }
            if !improved {
                break;
            }
        }
        if current.0 > 0 {
            return Ok(None);
        }
        let cert = PartitionCertificate::certify(g, w, ev.lift_labels(g, &labels, k), c)?;
        Ok(cert.valid.then_some(cert))
    }
}
