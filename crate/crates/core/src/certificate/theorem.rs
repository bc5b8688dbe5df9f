use serde::Serialize;

use super::{proof_tolerance, CheckRecord, ProofObjects};
use crate::error::{Error, Result};
use crate::expansion::{ExpanderVerdict, Mode, SearchConfig, SearchStrategy};
use crate::fmt::{round_sig, serialize_f64};
use crate::graph::{Graph, NodeWeights, SignSupport};
use crate::spectral::{eigendecompose, select_eigenpair, spectral_gap_c, EigenpairSelection, SpectralDecomposition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GraphSummary {
    pub n: usize,
    pub m: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct SidePartitions {
    pub positive: Vec<Vec<usize>>,
    pub negative: Vec<Vec<usize>>,
}

fn serialize_spectrum<S: serde::Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let band = 1e-10 * (1.0 + xs.iter().fold(0.0f64, |m, v| m.max(v.abs())));
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for &x in xs {
        seq.serialize_element(&if x.abs() <= band { 0.0 } else { round_sig(x) })?;
    }
    seq.end()
}

fn serialize_phis<S: serde::Serializer>(sides: &[Vec<Option<f64>>; 2], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut map = s.serialize_map(Some(2))?;
    for (key, side) in ["positive", "negative"].iter().zip(sides) {
        let rounded: Vec<Option<f64>> = side.iter().map(|p| p.map(round_sig)).collect();
        map.serialize_entry(key, &rounded)?;
    }
    map.end()
}

/// Outcome of checking `a + b <= k` for one eigenpair.
#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub graph: GraphSummary,
    pub k: usize,
    pub mode: Mode,
    #[serde(serialize_with = "serialize_spectrum")]
    pub lambda: Vec<f64>,
    #[serde(serialize_with = "serialize_f64")]
    pub c: f64,
    pub a: usize,
    pub b: usize,
    pub theorem_holds: bool,
    pub flags: Vec<&'static str>,
    pub checks: Vec<CheckRecord>,
    pub partitions: SidePartitions,
    #[serde(serialize_with = "serialize_phis")]
    pub class_phis: [Vec<Option<f64>>; 2],
    #[serde(skip)]
    pub multiplicity_flag: bool,
    #[serde(skip)]
    pub degenerate_gap_flag: bool,
}

impl TheoremReport {
    pub fn a_plus_b_le_k(&self) -> bool {
        self.a + self.b <= self.k
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// True when exact search produced `a + b > k` on a non-degenerate gap.
    pub fn is_violation(&self) -> bool {
        self.flags.contains(&"theorem_violation")
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CorollaryReport {
    pub graph: GraphSummary,
    #[serde(serialize_with = "serialize_f64")]
    pub c: f64,
    pub gap_meaningful: bool,
    pub positive: Option<ExpanderVerdict>,
    pub negative: Option<ExpanderVerdict>,
    pub holds: bool,
    pub flags: Vec<&'static str>,
}

/// Caches the Laplacian spectrum of one graph so that many eigen indices can
/// be checked without re-solving.
pub struct TheoremVerifier {
    graph: Graph,
    spectrum: SpectralDecomposition,
    tol: f64,
}

impl TheoremVerifier {
    pub fn new(g: &Graph) -> Result<Self> {
        let spectrum = eigendecompose(&g.laplacian())?;
        Ok(Self { graph: g.clone(), spectrum, tol: proof_tolerance(g) })
    }

    pub fn with_spectrum(g: &Graph, spectrum: SpectralDecomposition) -> Self {
        Self { graph: g.clone(), spectrum, tol: proof_tolerance(g) }
    }

    pub fn spectrum(&self) -> &SpectralDecomposition {
        &self.spectrum
    }

    pub fn tolerance(&self) -> f64 {
        self.tol
    }

    pub fn selection(&self, k: usize) -> Result<EigenpairSelection> {
        select_eigenpair(&self.spectrum, k, None)
    }

    pub fn proof_objects(&self, k: usize, pos: Vec<Vec<usize>>, neg: Vec<Vec<usize>>) -> Result<ProofObjects> {
        ProofObjects::build(&self.graph, &self.spectrum, &self.selection(k)?, pos, neg)
    }

    fn summary(&self) -> GraphSummary {
        GraphSummary { n: self.graph.node_count(), m: self.graph.edge_count() }
    }

    pub fn verify(&self, k: usize, strategy: &dyn SearchStrategy, cfg: &SearchConfig) -> Result<TheoremReport> {
        let n = self.graph.node_count();
        if k == 0 || k >= n {
            return Err(Error::IndexOutOfRange { k, max: n.saturating_sub(1) });
        }
        let sel = self.selection(k)?;
        let c = spectral_gap_c(&self.spectrum, k)?;
        let support = SignSupport::new(&sel.y, sel.tau);
        let w = NodeWeights::from_eigenvector(&sel.y);
        let mut flags = Vec::new();
        if sel.multiplicity_flag {
            flags.push("multiplicity");
        }
        if support.positive.is_empty() {
            flags.push("empty_positive_support");
        }
        if support.negative.is_empty() {
            flags.push("empty_negative_support");
        }

        let degenerate = c <= self.tol;
        let mut partitions = SidePartitions::default();
        if degenerate {
            flags.push("degenerate_gap");
            if !support.positive.is_empty() {
                partitions.positive.push(support.positive.clone());
            }
            if !support.negative.is_empty() {
                partitions.negative.push(support.negative.clone());
            }
        } else {
            for (side, out) in [(&support.positive, &mut partitions.positive), (&support.negative, &mut partitions.negative)] {
                if side.is_empty() {
                    continue;
                }
                let sub = self.graph.induced_subgraph(side)?;
                let ws = w.restrict(&sub);
                let best = strategy.max_partitionable(&sub.graph, &ws, c, cfg)?;
                *out = best.certificate.classes.iter().map(|cl| sub.lift(cl)).collect();
            }
            if strategy.mode() == Mode::Heuristic {
                flags.push("lower_bound_counts");
            }
        }
        let (a, b) = (partitions.positive.len(), partitions.negative.len());
        let holds = degenerate || a + b <= k;
        if !holds && strategy.mode() == Mode::Exact {
            flags.push("theorem_violation");
        }

        let objects = ProofObjects::build(&self.graph, &self.spectrum, &sel, partitions.positive.clone(), partitions.negative.clone())?;
        let checks = objects.all_checks(!degenerate)?;
        let phis = objects.class_phis()?;
        let class_phis = [phis[..a].to_vec(), phis[a..].to_vec()];

        Ok(TheoremReport {
            graph: self.summary(),
            k,
            mode: strategy.mode(),
            lambda: self.spectrum.values.clone(),
            c,
            a,
            b,
            theorem_holds: holds,
            flags,
            checks,
            partitions,
            class_phis,
            multiplicity_flag: sel.multiplicity_flag,
            degenerate_gap_flag: degenerate,
        })
    }

    pub fn corollary(&self, cfg: &SearchConfig) -> Result<CorollaryReport> {
        let n = self.graph.node_count();
        if n < 3 {
            return Err(Error::IndexOutOfRange { k: 2, max: n.saturating_sub(1) });
        }
        let sel = self.selection(2)?;
        let c = spectral_gap_c(&self.spectrum, 2)?;
        let support = SignSupport::new(&sel.y, sel.tau);
        let w = NodeWeights::from_eigenvector(&sel.y);
        let mut report = CorollaryReport {
            graph: self.summary(),
            c,
            gap_meaningful: c > self.tol,
            positive: None,
            negative: None,
            holds: true,
            flags: Vec::new(),
        };
        if !report.gap_meaningful {
            report.flags.push("degenerate_gap");
            return Ok(report);
        }
        for (side, slot) in [(&support.positive, &mut report.positive), (&support.negative, &mut report.negative)] {
            if side.is_empty() {
                continue;
            }
            let sub = self.graph.induced_subgraph(side)?;
            let ws = w.restrict(&sub);
            let mode = if side.len() > cfg.bipartition_cap {
                report.flags.push("heuristic_fallback");
                Mode::Heuristic
            } else {
                Mode::Exact
            };
            let mut verdict = mode.strategy().is_expander(&sub.graph, &ws, c, cfg)?;
            let lift = |s: &Vec<usize>| sub.lift(s);
            verdict.min_set = verdict.min_set.as_ref().map(lift);
            verdict.witness = verdict.witness.as_ref().map(lift);
            report.holds &= verdict.is_expander;
            *slot = Some(verdict);
        }
        Ok(report)
    }
}

/// Checks `a + b <= k` for eigenpair `k` of `g`.
pub fn verify_theorem1(g: &Graph, k: usize, mode: Mode, cfg: &SearchConfig) -> Result<TheoremReport> {
    TheoremVerifier::new(g)?.verify(k, mode.strategy(), cfg)
}

/// Both supports of the second eigenvector are `(lambda_3 - lambda_2)/2`
/// expanders under `w = y^2`.
pub fn verify_corollary1(g: &Graph, cfg: &SearchConfig) -> Result<CorollaryReport> {
    TheoremVerifier::new(g)?.corollary(cfg)
}

/// The sum bound for a given split with `a + b = k + 1`.
pub fn verify_prop_sum(g: &Graph, k: usize, pos: Vec<Vec<usize>>, neg: Vec<Vec<usize>>) -> Result<CheckRecord> {
    let expected = k + 1;
    let got = pos.len() + neg.len();
    if got != expected {
        return Err(Error::ClassCountMismatch { got, expected });
    }
    let objects = TheoremVerifier::new(g)?.proof_objects(k, pos, neg)?;
    let phis = objects.class_phis()?;
    objects.check_prop_sum(&phis)
}
