//! Proof objects for the nodal expansion bound and numerical checks of each
//! step of its argument.
//!
//! Given an eigenpair `(lambda_k, y)` of the Laplacian `L` and partitions of
//! the positive support into `a` classes and of the negative support into
//! `b` classes, the objects are:
//!
//! * the shifted matrix `M = L - lambda_k I` (so `M y = 0`);
//! * the pieces `y^i` (`y` restricted to class `i`) and their norms `z_i`;
//! * the compressed matrix `B_ij = <y^i/z_i, M y^j/z_j>` with spectrum `mu`;
//! * the comparison matrix `C`, which keeps `B` within each side, drops the
//!   cross-side entries and sets the diagonal so that `C z = 0`.
//!
//! Every check returns a [`CheckRecord`] with a signed slack; a record
//! passes when `slack >= -tolerance`.

mod batch;
mod theorem;

pub use batch::{batch_verify, connected_graphs, BatchConfig, BatchLine, BatchSummary};
pub use theorem::{
    verify_corollary1, verify_prop_sum, verify_theorem1, CorollaryReport, GraphSummary, SidePartitions, TheoremReport,
    TheoremVerifier,
};

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::expansion::{below, phi};
use crate::fmt::{round_snap, round_sig};
use crate::graph::{Graph, NodeWeights, SignSupport};
use crate::spectral::{eigendecompose, select_eigenpair, EigenpairSelection, SpectralDecomposition};

#[derive(Debug, Clone, PartialEq)]
pub struct CheckRecord {
    pub name: &'static str,
    pub passed: bool,
    pub slack: f64,
    pub tolerance: f64,
}

impl CheckRecord {
    pub fn new(name: &'static str, slack: f64, tolerance: f64) -> Self {
        Self { name, passed: slack >= -tolerance, slack, tolerance }
    }

    /// Combines several margins; the record's slack is the smallest.
    fn from_margins(name: &'static str, margins: impl IntoIterator<Item = f64>, tolerance: f64) -> Self {
        let slack = margins.into_iter().fold(f64::INFINITY, |m, x| if x.is_nan() { f64::NEG_INFINITY } else { m.min(x) });
        Self::new(name, if slack == f64::INFINITY { 0.0 } else { slack }, tolerance)
    }
}

impl Serialize for CheckRecord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("CheckRecord", 4)?;
        st.serialize_field("name", self.name)?;
        st.serialize_field("passed", &self.passed)?;
        st.serialize_field("slack", &round_snap(self.slack, 1e-12))?;
        st.serialize_field("tolerance", &round_sig(self.tolerance))?;
        st.end()
    }
}

/// Uniform proof-step tolerance `1e-8 * (1 + ||L||_max * n)`.
pub fn proof_tolerance(g: &Graph) -> f64 {
    1e-8 * (1.0 + g.max_degree() as f64 * g.node_count() as f64)
}

#[derive(Debug, Clone)]
pub struct ProofObjects {
    pub graph: Graph,
    pub k: usize,
    /// Full Laplacian spectrum, ascending.
    pub lambda: Vec<f64>,
    pub lambda_k: f64,
    pub lambda_next: Option<f64>,
    /// `(lambda_{k+1} - lambda_k) / 2`, absent when `k = n`.
    pub threshold: Option<f64>,
    pub y: Vec<f64>,
    pub support: SignSupport,
    pub shifted: DMatrix<f64>,
    pub a: usize,
    pub b: usize,
    /// Positive classes first, then negative classes.
    pub parts: Vec<Vec<usize>>,
    pub pieces: Vec<DVector<f64>>,
    pub norms: Vec<f64>,
    pub compressed: DMatrix<f64>,
    pub comparison: DMatrix<f64>,
    /// Ascending eigenvalues of `compressed`.
    pub mu: Vec<f64>,
    /// Per class, the cut mass `sum sqrt(w_u w_v)` over edges of its side's
    /// support subgraph leaving the class. Computed from edges directly.
    pub side_cut: Vec<f64>,
    pub tol: f64,
}

fn check_side(support: &[usize], classes: &[Vec<usize>], offset: usize, n: usize) -> Result<()> {
    let mut in_support = vec![false; n];
    for &u in support {
        in_support[u] = true;
    }
    let mut covered = vec![false; n];
    for (ci, class) in classes.iter().enumerate() {
        if class.is_empty() {
            return Err(Error::EmptyClass { class: ci + offset });
        }
        for &u in class {
            if u >= n {
                return Err(Error::NodeOutOfRange { node: u, n });
            }
            if !in_support[u] {
                return Err(Error::OffSupport { class: ci + offset, node: u });
            }
            if std::mem::replace(&mut covered[u], true) {
                return Err(Error::OverlappingClasses(u));
            }
        }
    }
    match support.iter().find(|&&u| !covered[u]) {
        Some(&u) => Err(Error::UncoveredNode(u)),
        None => Ok(()),
    }
}

fn symmetrized(m: &DMatrix<f64>) -> DMatrix<f64> {
    (m + m.transpose()) * 0.5
}

fn spectrum_of(m: &DMatrix<f64>) -> Vec<f64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    eigendecompose(&symmetrized(m)).map(|d| d.values).unwrap_or_else(|_| vec![f64::NAN; m.nrows()])
}

pub fn build_proof_objects(g: &Graph, k: usize, pos: Vec<Vec<usize>>, neg: Vec<Vec<usize>>) -> Result<ProofObjects> {
    let spectrum = eigendecompose(&g.laplacian())?;
    let sel = select_eigenpair(&spectrum, k, None)?;
    ProofObjects::build(g, &spectrum, &sel, pos, neg)
}

impl ProofObjects {
    pub fn build(
        g: &Graph,
        spectrum: &SpectralDecomposition,
        sel: &EigenpairSelection,
        pos: Vec<Vec<usize>>,
        neg: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let n = g.node_count();
        let support = SignSupport::new(&sel.y, sel.tau);
        check_side(&support.positive, &pos, 0, n)?;
        check_side(&support.negative, &neg, pos.len(), n)?;
        let (a, b) = (pos.len(), neg.len());
        let mut parts = pos;
        parts.extend(neg);
        for p in &mut parts {
            p.sort_unstable();
        }
        let count = parts.len();

        let lambda_k = sel.lambda_k;
        let lambda_next = spectrum.values.get(sel.k).copied();
        let threshold = lambda_next.map(|next| ((next - lambda_k) / 2.0).max(0.0));
        let shifted = g.laplacian() - DMatrix::identity(n, n) * lambda_k;

        let pieces: Vec<DVector<f64>> = parts
            .iter()
            .map(|class| {
                let mut v = DVector::zeros(n);
                for &u in class {
                    v[u] = sel.y[u];
                }
                v
            })
            .collect();
        let norms: Vec<f64> = pieces.iter().map(|v| v.norm()).collect();
        let units: Vec<DVector<f64>> = pieces.iter().zip(&norms).map(|(v, z)| v / *z).collect();
        let images: Vec<DVector<f64>> = units.iter().map(|u| &shifted * u).collect();
        let compressed = DMatrix::from_fn(count, count, |i, j| units[i].dot(&images[j]));

        let same_side = |i: usize, j: usize| (i < a) == (j < a);
        let comparison = DMatrix::from_fn(count, count, |i, j| {
            if i != j {
                if same_side(i, j) {
                    compressed[(i, j)]
                } else {
                    0.0
                }
            } else {
                -(0..count)
                    .filter(|&r| r != i && same_side(i, r))
                    .map(|r| norms[r] / norms[i] * compressed[(i, r)])
                    .sum::<f64>()
            }
        });
        let mu = spectrum_of(&compressed);

        let mut owner = vec![usize::MAX; n];
        for (ci, class) in parts.iter().enumerate() {
            for &u in class {
                owner[u] = ci;
            }
        }
        let mut side_cut = vec![0.0; count];
        for &(u, v) in g.edges() {
            let (cu, cv) = (owner[u], owner[v]);
            if cu == usize::MAX || cv == usize::MAX || cu == cv || !same_side(cu, cv) {
                continue;
            }
            let s = (sel.y[u] * sel.y[v]).abs();
            side_cut[cu] += s;
            side_cut[cv] += s;
        }

        Ok(Self {
            graph: g.clone(),
            k: sel.k,
            lambda: spectrum.values.clone(),
            lambda_k,
            lambda_next,
            threshold,
            y: sel.y.clone(),
            support,
            shifted,
            a,
            b,
            parts,
            pieces,
            norms,
            compressed,
            comparison,
            mu,
            side_cut,
            tol: proof_tolerance(g),
        })
    }

    pub fn class_count(&self) -> usize {
        self.parts.len()
    }

    fn same_side(&self, i: usize, j: usize) -> bool {
        (i < self.a) == (j < self.a)
    }

    /// `Phi` of every class inside its own side's support subgraph with
    /// `w = y^2`; `None` for a class that is its whole side.
    pub fn class_phis(&self) -> Result<Vec<Option<f64>>> {
        let w = NodeWeights::from_eigenvector(&self.y);
        let mut out = Vec::with_capacity(self.class_count());
        for (side, range) in [(&self.support.positive, 0..self.a), (&self.support.negative, self.a..self.class_count())] {
            if range.is_empty() {
                continue;
            }
            let sub = self.graph.induced_subgraph(side)?;
            let ws = w.restrict(&sub);
            for ci in range {
                if self.parts[ci].len() == side.len() {
                    out.push(None);
                    continue;
                }
                let local: Vec<usize> = self.parts[ci].iter().map(|u| sub.to_parent.binary_search(u).expect("class inside side")).collect();
                out.push(Some(phi(&sub.graph, &ws, &local)?.phi));
            }
        }
        Ok(out)
    }

    /// Classes that cover their whole side (no cut inside the side).
    pub fn whole_side_classes(&self) -> Vec<usize> {
        (0..self.class_count())
            .filter(|&i| {
                let side = if i < self.a { &self.support.positive } else { &self.support.negative };
                self.parts[i].len() == side.len()
            })
            .collect()
    }

    fn norm_vector(&self) -> DVector<f64> {
        DVector::from_column_slice(&self.norms)
    }

    pub fn eigen_residual(&self) -> f64 {
        (&self.shifted * DVector::from_column_slice(&self.y)).amax()
    }

    pub fn compressed_kernel_residual(&self) -> f64 {
        (&self.compressed * self.norm_vector()).amax()
    }

    pub fn comparison_kernel_residual(&self) -> f64 {
        (&self.comparison * self.norm_vector()).amax()
    }

    /// `M y = 0` up to rounding in the eigenpair.
    pub fn check_eigen_residual(&self) -> CheckRecord {
        CheckRecord::new("eigen_residual", -self.eigen_residual(), 1e-8 * (1.0 + self.lambda_k.abs()))
    }

    /// The normalised pieces are orthonormal.
    pub fn check_orthonormal_pieces(&self) -> CheckRecord {
        let count = self.class_count();
        let mut margins = Vec::new();
        for i in 0..count {
            for j in 0..count {
                let dot = self.pieces[i].dot(&self.pieces[j]) / (self.norms[i] * self.norms[j]);
                let target = if i == j { 1.0 } else { 0.0 };
                margins.push(-(dot - target).abs());
            }
        }
        CheckRecord::from_margins("orthonormal_pieces", margins, 1e-9)
    }

    /// Recomputes the compressed matrix from edges:
    /// `<y^i, M y^j> = -sum_{edges uv between V_i, V_j} y_u y_v` off the
    /// diagonal, and `sum_{u in V_i} (deg u - lambda_k) y_u^2 - 2 sum_{edges in V_i} y_u y_v`
    /// on it.
    pub fn check_compressed_two_way(&self) -> CheckRecord {
        let count = self.class_count();
        let n = self.graph.node_count();
        let mut owner = vec![usize::MAX; n];
        for (ci, class) in self.parts.iter().enumerate() {
            for &u in class {
                owner[u] = ci;
            }
        }
        let mut raw = DMatrix::<f64>::zeros(count, count);
        for (ci, class) in self.parts.iter().enumerate() {
            for &u in class {
                raw[(ci, ci)] += (self.graph.degree(u) as f64 - self.lambda_k) * self.y[u] * self.y[u];
            }
        }
        for &(u, v) in self.graph.edges() {
            let (cu, cv) = (owner[u], owner[v]);
            if cu == usize::MAX || cv == usize::MAX {
                continue;
            }
            let prod = self.y[u] * self.y[v];
            if cu == cv {
                raw[(cu, cu)] -= 2.0 * prod;
            } else {
                raw[(cu, cv)] -= prod;
                raw[(cv, cu)] -= prod;
            }
        }
        let margins = (0..count).flat_map(|i| (0..count).map(move |j| (i, j))).map(|(i, j)| {
            let edge_form: f64 = raw[(i, j)] / (self.norms[i] * self.norms[j]);
            -(edge_form - self.compressed[(i, j)]).abs()
        });
        CheckRecord::from_margins("compressed_two_way", margins.collect::<Vec<_>>(), 1e-9)
    }

    /// Same-side off-diagonal entries are `<= 0`, cross-side entries `>= 0`.
    pub fn check_sign_pattern(&self) -> CheckRecord {
        let count = self.class_count();
        let mut margins = Vec::new();
        for i in 0..count {
            for j in 0..count {
                if i == j {
                    continue;
                }
                let v = self.compressed[(i, j)];
                margins.push(if self.same_side(i, j) { -v } else { v });
            }
        }
        CheckRecord::from_margins("compressed_sign_pattern", margins, self.tol)
    }

    /// `B z = 0`, slack normalised by `1 + ||B||_max ||z||_inf`.
    pub fn check_compressed_kernel(&self) -> CheckRecord {
        let scale = 1.0 + self.compressed.amax() * self.norm_vector().amax();
        CheckRecord::new("compressed_kernel", -self.compressed_kernel_residual() / scale, self.tol)
    }

    /// `lambda_i - lambda_k <= mu_i` for every `i <= a + b`.
    pub fn check_interlacing(&self) -> CheckRecord {
        let margins = self.mu.iter().enumerate().map(|(i, &m)| m - (self.lambda[i] - self.lambda_k));
        CheckRecord::from_margins("interlacing", margins.collect::<Vec<_>>(), self.tol)
    }

    /// `C z = 0`.
    pub fn check_comparison_kernel(&self) -> CheckRecord {
        let scale = 1.0 + self.comparison.amax() * self.norm_vector().amax();
        CheckRecord::new("comparison_kernel", -self.comparison_kernel_residual() / scale, self.tol)
    }

    /// Diagonal of the comparison matrix against the side cuts:
    /// `C_ii z_i^2` equals the cut mass leaving class `i` within its side,
    /// hence `C_ii <= Phi(V_i)`, and `C_ii < c` when `threshold` is given
    /// (a valid certificate at that threshold).
    pub fn check_comparison_diagonal(&self, phis: &[Option<f64>], threshold: Option<f64>) -> CheckRecord {
        let mut margins = Vec::new();
        for i in 0..self.class_count() {
            let d = self.comparison[(i, i)];
            let z2 = self.norms[i] * self.norms[i];
            margins.push(-(d * z2 - self.side_cut[i]).abs());
            match phis.get(i).copied().flatten() {
                Some(p) => margins.push(p - d),
                None => margins.push(-d.abs()),
            }
            if let Some(c) = threshold {
                margins.push(c - d);
            }
        }
        CheckRecord::from_margins("comparison_diagonal", margins, self.tol)
    }

    /// Structure of `D X D` with `D = diag(z)`: nonnegative diagonal,
    /// nonpositive off-diagonal, zero row sums. Returns the margins.
    fn dominance_margins(&self, x: &DMatrix<f64>) -> Vec<f64> {
        let count = self.class_count();
        let mut margins = Vec::new();
        for i in 0..count {
            let mut row = 0.0;
            for j in 0..count {
                let v = self.norms[i] * x[(i, j)] * self.norms[j];
                row += v;
                margins.push(if i == j { v } else { -v });
            }
            margins.push(-row.abs());
        }
        margins
    }

    pub fn difference(&self) -> DMatrix<f64> {
        &self.comparison - &self.compressed
    }

    /// `C - B` is positive semidefinite: structurally (diagonal dominance
    /// after scaling by `z`) and spectrally.
    pub fn check_difference_psd(&self) -> CheckRecord {
        let diff = self.difference();
        let mut margins = self.dominance_margins(&diff);
        margins.push(spectrum_of(&diff).first().copied().unwrap_or(0.0));
        CheckRecord::from_margins("difference_psd", margins, self.tol)
    }

    pub fn comparison_top_eigenvalue(&self) -> f64 {
        spectrum_of(&self.comparison).last().copied().unwrap_or(0.0)
    }

    /// `lambda_max(C) < 2c` and `mu_max <= lambda_max(C)`; when `a + b = k + 1`
    /// also `lambda_{k+1} - lambda_k <= mu_max`. Requires every class `Phi`
    /// to be below `c`.
    pub fn check_top_eigenvalue(&self, phis: &[Option<f64>]) -> Result<CheckRecord> {
        let c = self.threshold.ok_or(Error::IndexOutOfRange { k: self.k, max: self.lambda.len().saturating_sub(1) })?;
        for (class, p) in phis.iter().enumerate() {
            let value = p.unwrap_or(0.0);
            if !below(value, c) {
                return Err(Error::InvalidCertificate { class, phi: value, c });
            }
        }
        let top = self.comparison_top_eigenvalue();
        let mu_max = self.mu.last().copied().unwrap_or(0.0);
        let mut margins = vec![2.0 * c - top, top - mu_max];
        if self.class_count() == self.k + 1 {
            margins.push(mu_max - 2.0 * c);
        }
        Ok(CheckRecord::from_margins("comparison_top_eigenvalue", margins, self.tol))
    }

    /// With `a + b = k + 1`: `lambda_{k+1} - lambda_k <= sum of class Phi`,
    /// via `mu_max <= trace(C)` and `C` positive semidefinite. A class that
    /// is its whole side contributes 0.
    pub fn check_prop_sum(&self, phis: &[Option<f64>]) -> Result<CheckRecord> {
        if self.class_count() != self.k + 1 {
            return Err(Error::ClassCountMismatch { got: self.class_count(), expected: self.k + 1 });
        }
        let next = self.lambda_next.ok_or(Error::IndexOutOfRange { k: self.k, max: self.lambda.len().saturating_sub(1) })?;
        let gap = next - self.lambda_k;
        let phi_sum: f64 = phis.iter().map(|p| p.unwrap_or(0.0)).sum();
        let trace = self.comparison.trace();
        let mu_max = self.mu.last().copied().unwrap_or(0.0);
        let mut margins = vec![phi_sum - gap, trace - mu_max];
        margins.extend(self.dominance_margins(&self.comparison));
        margins.push(spectrum_of(&self.comparison).first().copied().unwrap_or(0.0));
        Ok(CheckRecord::from_margins("proposition_sum", margins, self.tol))
    }

    /// All checks that apply. `certified` marks partitions known to be valid
    /// at the threshold, which enables the top-eigenvalue check.
    pub fn all_checks(&self, certified: bool) -> Result<Vec<CheckRecord>> {
        let phis = self.class_phis()?;
        let threshold = if certified { self.threshold } else { None };
        let mut checks = vec![
            self.check_eigen_residual(),
            self.check_orthonormal_pieces(),
            self.check_compressed_two_way(),
            self.check_sign_pattern(),
            self.check_compressed_kernel(),
            self.check_interlacing(),
            self.check_comparison_kernel(),
            self.check_comparison_diagonal(&phis, threshold),
            self.check_difference_psd(),
        ];
        if certified && self.threshold.is_some_and(|c| c > 0.0) {
            checks.push(self.check_top_eigenvalue(&phis)?);
        }
        if self.class_count() == self.k + 1 && self.lambda_next.is_some() {
            checks.push(self.check_prop_sum(&phis)?);
        }
        Ok(checks)
    }
}
