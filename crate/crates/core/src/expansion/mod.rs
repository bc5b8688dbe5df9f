//! Weighted expansion `Phi_w(S)`, c-expander verdicts and searches for
//! partitions whose classes all expand less than a threshold.
//!
//! `Phi_w(S) = sum_{ij in E, i in S, j not in S} sqrt(w_i w_j) / min(w(S), w(V \ S))`.
//! The sum runs over edges only.

mod exact;
mod heuristic;

pub use exact::{for_each_set_partition, Exact};
pub use heuristic::Heuristic;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fmt::{serialize_f64, serialize_opt_f64, serialize_vec_f64};
use crate::graph::{Graph, NodeWeights};
use crate::registry::{Named, Registry};
use crate::spectral::{eigendecompose, select_eigenpair};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Heuristic,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Heuristic => "heuristic",
        }
    }

    pub fn strategy(self) -> &'static dyn SearchStrategy {
        static EXACT: Exact = Exact;
        static HEURISTIC: Heuristic = Heuristic;
        match self {
            Mode::Exact => &EXACT,
            Mode::Heuristic => &HEURISTIC,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Move evaluations allowed to the heuristic.
    pub budget: usize,
    /// Largest weighted node count for exact bipartition enumeration.
    pub bipartition_cap: usize,
    /// Largest weighted node count for exact set-partition enumeration.
    pub partition_cap: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self { budget: 10_000, bipartition_cap: 20, partition_cap: 12 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CutValue {
    #[serde(serialize_with = "serialize_f64")]
    pub numerator: f64,
    #[serde(serialize_with = "serialize_f64")]
    pub denominator: f64,
    #[serde(serialize_with = "serialize_f64")]
    pub phi: f64,
}

fn membership(g: &Graph, set: &[usize]) -> Result<Vec<bool>> {
    let n = g.node_count();
    let mut inside = vec![false; n];
    for &u in set {
        if u >= n {
            return Err(Error::NodeOutOfRange { node: u, n });
        }
        inside[u] = true;
    }
    Ok(inside)
}

/// Relative band within which `Phi` and `c` count as equal.
pub const TIE_BAND: f64 = 1e-9;

/// Whether `phi` is below `c` by more than rounding. Values inside the tie
/// band count as `Phi >= c`, so symmetric graphs whose cuts hit `c` exactly
/// are classified the same way on every platform.
pub fn below(phi: f64, c: f64) -> bool {
    phi < c - TIE_BAND * (1.0 + c.abs())
}

/// `Phi_w(S)` of `set` in `g`. Fails when `S` or its complement carries no
/// weight.
pub fn phi(g: &Graph, w: &NodeWeights, set: &[usize]) -> Result<CutValue> {
    w.check_len(g)?;
    let inside = membership(g, set)?;
    let (mut weight_s, mut weight_rest) = (0.0, 0.0);
    for (u, &is_in) in inside.iter().enumerate() {
        if is_in {
            weight_s += w[u];
        } else {
            weight_rest += w[u];
        }
    }
    if weight_s <= 0.0 || weight_rest <= 0.0 {
        return Err(Error::UndefinedPhi { weight_s, weight_rest });
    }
    let numerator: f64 = g
        .edges()
        .iter()
        .filter(|&&(u, v)| inside[u] != inside[v])
        .map(|&(u, v)| (w[u] * w[v]).sqrt())
        .sum();
    let denominator = weight_s.min(weight_rest);
    Ok(CutValue { numerator, denominator, phi: numerator / denominator })
}

/// A partition of all nodes into positive-weight classes with each class's
/// expansion measured in the ground graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PartitionCertificate {
    pub classes: Vec<Vec<usize>>,
    #[serde(serialize_with = "serialize_vec_f64")]
    pub phis: Vec<f64>,
    #[serde(serialize_with = "serialize_f64")]
    pub c: f64,
    pub valid: bool,
}

impl PartitionCertificate {
    /// Checks disjointness, coverage and class weights, then evaluates every
    /// class's `Phi` directly. A single class is the trivial certificate.
    pub fn certify(g: &Graph, w: &NodeWeights, classes: Vec<Vec<usize>>, c: f64) -> Result<Self> {
        w.check_len(g)?;
        let n = g.node_count();
        let mut owner = vec![usize::MAX; n];
        let mut classes = classes;
        for (ci, class) in classes.iter_mut().enumerate() {
            class.sort_unstable();
            for &u in class.iter() {
                if u >= n {
                    return Err(Error::NodeOutOfRange { node: u, n });
                }
                if owner[u] != usize::MAX {
                    return Err(Error::OverlappingClasses(u));
                }
                owner[u] = ci;
            }
            if w.of(class) <= 0.0 {
                return Err(Error::EmptyClass { class: ci });
            }
        }
        if let Some(u) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(Error::UncoveredNode(u));
        }
        if classes.is_empty() {
            return Err(Error::ZeroClasses);
        }
        let phis = if classes.len() == 1 {
            Vec::new()
        } else {
            classes.iter().map(|s| phi(g, w, s).map(|cv| cv.phi)).collect::<Result<Vec<_>>>()?
        };
        let valid = phis.iter().all(|&p| below(p, c));
        Ok(Self { classes, phis, c, valid })
    }

    pub fn k(&self) -> usize {
        self.classes.len()
    }

    pub fn max_phi(&self) -> Option<f64> {
        self.phis.iter().copied().reduce(f64::max)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpanderVerdict {
    pub is_expander: bool,
    #[serde(serialize_with = "serialize_f64")]
    pub c: f64,
    pub mode: Mode,
    /// Smallest `Phi` seen; `None` when no proper cut exists.
    #[serde(serialize_with = "serialize_opt_f64")]
    pub min_phi: Option<f64>,
    pub min_set: Option<Vec<usize>>,
    /// A set with `Phi < c`, present only when `is_expander` is false.
    pub witness: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaxPartition {
    pub k_best: usize,
    pub certificate: PartitionCertificate,
    pub mode: Mode,
    /// True for heuristic runs: `k_best` is a lower bound, not the maximum.
    pub lower_bound_only: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepCut {
    pub set: Vec<usize>,
    pub cut: CutValue,
}

/// Best prefix of `order` by `Phi`; ties go to the shorter prefix. Only
/// prefixes with `0 < w(S) < w(V)` are considered.
pub fn sweep_cut(g: &Graph, w: &NodeWeights, order: &[usize]) -> Result<Option<SweepCut>> {
    w.check_len(g)?;
    let n = g.node_count();
    let mut seen = vec![false; n];
    if order.len() != n || order.iter().any(|&u| u >= n || std::mem::replace(&mut seen[u], true)) {
        return Err(Error::BadOrdering);
    }
    if w.total() <= 0.0 {
        return Err(Error::ZeroWeights);
    }
    let mut suffix = vec![0.0; n + 1];
    for i in (0..n).rev() {
        suffix[i] = suffix[i + 1] + w[order[i]];
    }
    let mut inside = vec![false; n];
    let (mut num, mut weight_s) = (0.0, 0.0);
    let mut best: Option<(usize, f64)> = None;
    for (i, &v) in order.iter().enumerate().take(n.saturating_sub(1)) {
        inside[v] = true;
        weight_s += w[v];
        for &u in g.neighbors(v) {
            let s = (w[u] * w[v]).sqrt();
            if inside[u] {
                num -= s;
            } else {
                num += s;
            }
        }
        let rest = suffix[i + 1];
        if weight_s <= 0.0 || rest <= 0.0 {
            continue;
        }
        let value = num.max(0.0) / weight_s.min(rest);
        if best.is_none_or(|(_, b)| value < b) {
            best = Some((i + 1, value));
        }
    }
    match best {
        None => Ok(None),
        Some((len, _)) => {
            let mut set = order[..len].to_vec();
            set.sort_unstable();
            let cut = phi(g, w, &set)?;
            Ok(Some(SweepCut { set, cut }))
        }
    }
}

/// Orders nodes by the second eigenvector of the node-weighted Laplacian
/// `W^{-1/2} L_s W^{-1/2}`, where `L_s` has edge weights `sqrt(w_u w_v)`.
/// Weighted nodes come first (descending by `x_u / sqrt(w_u)`), then
/// zero-weight nodes by index.
pub fn weighted_fiedler_order(g: &Graph, w: &NodeWeights) -> Vec<usize> {
    let n = g.node_count();
    let positive: Vec<usize> = (0..n).filter(|&u| w[u] > 0.0).collect();
    let zeros = (0..n).filter(|&u| w[u] <= 0.0);
    if positive.len() <= 2 {
        return positive.into_iter().chain(zeros).collect();
    }
    let sub = g.induced_subgraph(&positive).expect("nodes in range");
    let ws = sub.restrict(w.as_slice());
    let p = positive.len();
    let mut m = nalgebra::DMatrix::zeros(p, p);
    for &(a, b) in sub.graph.edges() {
        m[(a, b)] = -1.0;
        m[(b, a)] = -1.0;
        m[(a, a)] += (ws[b] / ws[a]).sqrt();
        m[(b, b)] += (ws[a] / ws[b]).sqrt();
    }
    let scores: Vec<f64> = match eigendecompose(&m).and_then(|d| select_eigenpair(&d, 2, None)) {
        Ok(sel) => sel.y.iter().zip(&ws).map(|(x, wi)| x / wi.sqrt()).collect(),
        Err(_) => vec![0.0; p],
    };
    let mut idx: Vec<usize> = (0..p).collect();
    idx.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));
    idx.into_iter().map(|i| positive[i]).chain(zeros).collect()
}

/// Fast `Phi` evaluation restricted to the weighted nodes of a graph.
pub(crate) struct CutEvaluator {
    pub nodes: Vec<usize>,
    pub edges: Vec<(usize, usize, f64)>,
    pub weights: Vec<f64>,
    pub total: f64,
}

impl CutEvaluator {
    pub fn new(g: &Graph, w: &NodeWeights) -> Self {
        let n = g.node_count();
        let nodes: Vec<usize> = (0..n).filter(|&u| w[u] > 0.0).collect();
        let mut local = vec![usize::MAX; n];
        for (i, &u) in nodes.iter().enumerate() {
            local[u] = i;
        }
        let edges = g
            .edges()
            .iter()
            .filter(|&&(u, v)| local[u] != usize::MAX && local[v] != usize::MAX)
            .map(|&(u, v)| (local[u], local[v], (w[u] * w[v]).sqrt()))
            .collect();
        let weights: Vec<f64> = nodes.iter().map(|&u| w[u]).collect();
        let total = weights.iter().sum();
        Self { nodes, edges, weights, total }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    /// Per-class `Phi` for a labelling of the weighted nodes into `k` classes.
    pub fn class_phis(&self, labels: &[usize], k: usize) -> Vec<f64> {
        let mut wc = vec![0.0; k];
        let mut cut = vec![0.0; k];
        for (i, &l) in labels.iter().enumerate() {
            wc[l] += self.weights[i];
        }
        for &(a, b, s) in &self.edges {
            let (la, lb) = (labels[a], labels[b]);
            if la != lb {
                cut[la] += s;
                cut[lb] += s;
            }
        }
        (0..k)
            .map(|j| {
                let d = wc[j].min(self.total - wc[j]);
                if d > 0.0 {
                    cut[j] / d
                } else {
                    f64::INFINITY
                }
            })
            .collect()
    }

    /// `Phi` of a subset of the weighted nodes given as a membership mask.
    pub fn set_phi(&self, inside: &[bool]) -> f64 {
        let ws: f64 = self.weights.iter().zip(inside).filter(|(_, &b)| b).map(|(w, _)| w).sum();
        let rest: f64 = self.weights.iter().zip(inside).filter(|(_, &b)| !b).map(|(w, _)| w).sum();
        if ws <= 0.0 || rest <= 0.0 {
            return f64::INFINITY;
        }
        let num: f64 = self.edges.iter().filter(|&&(a, b, _)| inside[a] != inside[b]).map(|e| e.2).sum();
        num / ws.min(rest)
    }

    pub fn lift_mask(&self, inside: &[bool]) -> Vec<usize> {
        self.nodes.iter().zip(inside).filter(|(_, &b)| b).map(|(&u, _)| u).collect()
    }

    /// Turns a labelling of the weighted nodes into full classes; zero-weight
    /// nodes join the class of their lowest-index labelled neighbour.
    pub fn lift_labels(&self, g: &Graph, labels: &[usize], k: usize) -> Vec<Vec<usize>> {
        let n = g.node_count();
        let mut owner = vec![usize::MAX; n];
        for (i, &u) in self.nodes.iter().enumerate() {
            owner[u] = labels[i];
        }
        loop {
            let mut changed = false;
            for u in 0..n {
                if owner[u] == usize::MAX {
                    if let Some(&v) = g.neighbors(u).iter().find(|&&v| owner[v] != usize::MAX) {
                        owner[u] = owner[v];
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let mut classes = vec![Vec::new(); k];
        for (u, &o) in owner.iter().enumerate() {
            classes[if o == usize::MAX { 0 } else { o }].push(u);
        }
        classes
    }
}

fn validate(g: &Graph, w: &NodeWeights, c: f64) -> Result<()> {
    w.check_len(g)?;
    if c.is_nan() || c <= 0.0 || c.is_infinite() {
        return Err(Error::NonPositiveThreshold(c));
    }
    if w.total() <= 0.0 {
        return Err(Error::ZeroWeights);
    }
    Ok(())
}

/// A way of searching cuts and multiway partitions.
pub trait SearchStrategy: Named + Send + Sync {
    fn mode(&self) -> Mode;

    /// The lowest-`Phi` proper cut this strategy finds, or `None` when fewer
    /// than two nodes carry weight.
    fn best_cut(&self, g: &Graph, w: &NodeWeights, cfg: &SearchConfig) -> Result<Option<Vec<usize>>>;

    /// A valid certificate with exactly `k >= 2` classes, if one is found.
    fn partition(&self, g: &Graph, w: &NodeWeights, k: usize, c: f64, cfg: &SearchConfig) -> Result<Option<PartitionCertificate>>;

    fn is_expander(&self, g: &Graph, w: &NodeWeights, c: f64, cfg: &SearchConfig) -> Result<ExpanderVerdict> {
        validate(g, w, c)?;
        let mut verdict = ExpanderVerdict { is_expander: true, c, mode: self.mode(), min_phi: None, min_set: None, witness: None };
        if let Some(set) = self.best_cut(g, w, cfg)? {
            let value = phi(g, w, &set)?.phi;
            verdict.min_phi = Some(value);
            if below(value, c) {
                verdict.is_expander = false;
                verdict.witness = Some(set.clone());
            }
            verdict.min_set = Some(set);
        }
        Ok(verdict)
    }

    fn find_partition(&self, g: &Graph, w: &NodeWeights, k: usize, c: f64, cfg: &SearchConfig) -> Result<Option<PartitionCertificate>> {
        validate(g, w, c)?;
        if k == 0 {
            return Err(Error::ZeroClasses);
        }
        if k == 1 {
            return PartitionCertificate::certify(g, w, vec![(0..g.node_count()).collect()], c).map(Some);
        }
        let weighted = (0..g.node_count()).filter(|&u| w[u] > 0.0).count();
        if k > weighted {
            return Ok(None);
        }
        let found = self.partition(g, w, k, c, cfg)?;
        debug_assert!(found.as_ref().is_none_or(|cert| cert.valid && cert.k() == k));
        Ok(found.filter(|cert| cert.valid && cert.k() == k))
    }

    /// Largest `k` with a certificate. Partitionability is closed under
    /// merging classes, so the search stops at the first failure.
    fn max_partitionable(&self, g: &Graph, w: &NodeWeights, c: f64, cfg: &SearchConfig) -> Result<MaxPartition> {
        let mut best = self.find_partition(g, w, 1, c, cfg)?.expect("trivial certificate");
        let weighted = (0..g.node_count()).filter(|&u| w[u] > 0.0).count();
        for k in 2..=weighted {
            match self.find_partition(g, w, k, c, cfg)? {
                Some(cert) => best = cert,
                None => break,
            }
        }
        Ok(MaxPartition { k_best: best.k(), certificate: best, mode: self.mode(), lower_bound_only: self.mode() == Mode::Heuristic })
    }
}

pub fn strategies() -> Registry<dyn SearchStrategy> {
    let mut reg: Registry<dyn SearchStrategy> = Registry::new("search mode");
    reg.register(Box::new(Exact));
    reg.register(Box::new(Heuristic));
    reg
}

pub fn is_expander(g: &Graph, w: &NodeWeights, c: f64, mode: Mode, cfg: &SearchConfig) -> Result<ExpanderVerdict> {
    mode.strategy().is_expander(g, w, c, cfg)
}

pub fn find_partition(g: &Graph, w: &NodeWeights, k: usize, c: f64, mode: Mode, cfg: &SearchConfig) -> Result<Option<PartitionCertificate>> {
    mode.strategy().find_partition(g, w, k, c, cfg)
}

pub fn max_partitionable(g: &Graph, w: &NodeWeights, c: f64, mode: Mode, cfg: &SearchConfig) -> Result<MaxPartition> {
    mode.strategy().max_partitionable(g, w, c, cfg)
}
