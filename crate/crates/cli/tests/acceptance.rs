//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero when any criterion fails.

mod common;

use std::time::Instant;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use nodal_core::certificate::{batch_verify, BatchConfig, TheoremVerifier};
use nodal_core::expansion::{is_expander, phi, Mode, SearchConfig};
use nodal_core::generators::{gen_expander_path_expander, gen_gnp};
use nodal_core::graph::{Graph, NodeWeights, SignSupport};
use nodal_core::spectral::{eigendecompose, eigendecompose_with, solvers};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-8;
const PHI_REL: f64 = 1e-12;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

// ---- oracles -------------------------------------------------------------

/// Brute-force `Phi_w` of the node set encoded by `mask`.
fn oracle_phi(n: usize, edges: &[(usize, usize)], w: &[f64], mask: u64) -> Option<f64> {
    let inside = |u: usize| mask >> u & 1 == 1;
    let ws: f64 = (0..n).filter(|&u| inside(u)).map(|u| w[u]).sum();
    let wr: f64 = (0..n).filter(|&u| !inside(u)).map(|u| w[u]).sum();
    if ws <= 0.0 || wr <= 0.0 {
        return None;
    }
    let cut: f64 = edges.iter().filter(|&&(u, v)| inside(u) != inside(v)).map(|&(u, v)| (w[u] * w[v]).sqrt()).sum();
    Some(cut / ws.min(wr))
}

/// Minimum `Phi_w` over all subsets, with its minimising mask.
fn oracle_min_phi(n: usize, edges: &[(usize, usize)], w: &[f64]) -> Option<(f64, u64)> {
    let mut best: Option<(f64, u64)> = None;
    for mask in 1..(1u64 << n) - 1 {
        if let Some(p) = oracle_phi(n, edges, w, mask) {
            if best.is_none_or(|(b, _)| p < b) {
                best = Some((p, mask));
            }
        }
    }
    best
}

fn mask_of(set: &[usize]) -> u64 {
    set.iter().fold(0, |m, &u| m | 1 << u)
}

fn oracle_laplacian(n: usize, edges: &[(usize, usize)]) -> DMatrix<f64> {
    let mut l = DMatrix::zeros(n, n);
    for &(u, v) in edges {
        l[(u, u)] += 1.0;
        l[(v, v)] += 1.0;
        l[(u, v)] -= 1.0;
        l[(v, u)] -= 1.0;
    }
    l
}

fn sorted_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    let mut v: Vec<f64> = SymmetricEigen::new(m.clone()).eigenvalues.iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

/// Characteristic polynomial coefficients `c[0] + c[1] x + ... + x^n` by
/// Faddeev-LeVerrier.
fn char_poly(a: &DMatrix<f64>) -> Vec<f64> {
    let n = a.nrows();
    let mut coeffs = vec![0.0; n + 1];
    coeffs[n] = 1.0;
    let mut m = DMatrix::<f64>::zeros(n, n);
    for k in 1..=n {
        let mut next = a * &m;
        for i in 0..n {
            next[(i, i)] += coeffs[n - k + 1];
        }
        m = next;
        let am = a * &m;
        coeffs[n - k] = -am.trace() / k as f64;
    }
    coeffs
}

fn eval_poly(c: &[f64], x: f64) -> (f64, f64) {
    let (mut p, mut dp) = (0.0, 0.0);
    for &ci in c.iter().rev() {
        dp = dp * x + p;
        p = p * x + ci;
    }
    (p, dp)
}

/// Real roots of a polynomial with only real roots, by Newton from above
/// with deflation and a polishing pass on the original polynomial.
fn real_roots(coeffs: &[f64]) -> Vec<f64> {
    let mut poly = coeffs.to_vec();
    let mut roots = Vec::new();
    while poly.len() > 1 {
        let lead = *poly.last().unwrap();
        let bound = 1.0 + poly.iter().take(poly.len() - 1).map(|c| (c / lead).abs()).fold(0.0, f64::max);
        let mut x = bound;
        for _ in 0..500 {
            let (p, dp) = eval_poly(&poly, x);
            if dp == 0.0 {
                break;
            }
            let step = p / dp;
            x -= step;
            if step.abs() <= 1e-15 * (1.0 + x.abs()) {
                break;
            }
        }
        for _ in 0..5 {
            let (p, dp) = eval_poly(coeffs, x);
            if dp != 0.0 {
                x -= p / dp;
            }
        }
        roots.push(x);
        let deg = poly.len() - 1;
        let mut quotient = vec![0.0; deg];
        let mut carry = poly[deg];
        for i in (0..deg).rev() {
            quotient[i] = carry;
            carry = poly[i] + carry * x;
        }
        poly = quotient;
    }
    roots.sort_by(f64::total_cmp);
    roots
}

fn union_find_components(n: usize, edges: &[(usize, usize)]) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut count = n;
    for &(u, v) in edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a] = b;
            count -= 1;
        }
    }
    count
}

fn random_connected_gnp(rng: &mut ChaCha8Rng, n_range: std::ops::RangeInclusive<usize>, p_range: std::ops::Range<f64>) -> Graph {
    loop {
        let n = rng.gen_range(n_range.clone());
        let p = rng.gen_range(p_range.clone());
        let g = gen_gnp(n, p, rng.gen()).unwrap();
        if g.is_connected() {
            return g;
        }
    }
}

/// Splits `nodes` into `parts` nonempty random classes.
fn random_split(rng: &mut ChaCha8Rng, nodes: &[usize], parts: usize) -> Vec<Vec<usize>> {
    let mut shuffled = nodes.to_vec();
    shuffled.shuffle(rng);
    let mut classes: Vec<Vec<usize>> = shuffled[..parts].iter().map(|&u| vec![u]).collect();
    for &u in &shuffled[parts..] {
        classes[rng.gen_range(0..parts)].push(u);
    }
    for c in &mut classes {
        c.sort_unstable();
    }
    classes
}

/// `Phi` of every class measured in the induced support subgraph with
/// `w = y^2`; a class equal to its whole side counts 0.
fn oracle_side_phis(g: &Graph, y: &[f64], side: &[usize], classes: &[Vec<usize>]) -> Vec<f64> {
    let local: Vec<Option<usize>> = (0..g.node_count()).map(|u| side.iter().position(|&s| s == u)).collect();
    let edges: Vec<(usize, usize)> =
        g.edges().iter().filter_map(|&(u, v)| Some((local[u]?, local[v]?))).collect();
    let w: Vec<f64> = side.iter().map(|&u| y[u] * y[u]).collect();
    classes
        .iter()
        .map(|class| {
            if class.len() == side.len() {
                0.0
            } else {
                let mask = class.iter().fold(0u64, |m, &u| m | 1 << local[u].unwrap());
                oracle_phi(side.len(), &edges, &w, mask).unwrap()
            }
        })
        .collect()
}

// ---- criteria ------------------------------------------------------------

fn exhaustive_theorem() -> Outcome {
    let cfg = BatchConfig { max_n: 7, seed: 17, full_enumeration_max_n: 6, sample_cap: 50_000, min_gap: 1e-8, ..BatchConfig::default() };
    let summary = match batch_verify(&cfg) {
        Ok(s) => s,
        Err(e) => return outcome(false, format!("batch failed: {e}")),
    };
    let per_n: Vec<String> = summary.lines.iter().map(|l| format!("n={}:{}", l.n, l.graphs)).collect();
    outcome(
        summary.violations() == 0,
        format!(
            "{} (graph, k) instances over graphs {}; {} violations of a+b <= k; {} failed proof checks",
            summary.instances(),
            per_n.join(" "),
            summary.violations(),
            summary.failed_checks()
        ),
    )
}

fn corollary_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let cfg = SearchConfig::default();
    let (mut tested, mut violations, mut fallbacks) = (0, 0, 0);
    while tested < 500 {
        let g = random_connected_gnp(&mut rng, 3..=14, 0.15..0.8);
        let v = TheoremVerifier::new(&g).unwrap();
        let values = &v.spectrum().values;
        if values[2] - values[1] <= 1e-6 {
            continue;
        }
        tested += 1;
        let report = v.corollary(&cfg).unwrap();
        if report.flags.contains(&"heuristic_fallback") {
            fallbacks += 1;
        }
        if !report.holds {
            violations += 1;
        }
    }
    outcome(
        violations == 0 && fallbacks == 0,
        format!("{tested} graphs with lambda3 - lambda2 > 1e-6; {violations} supports below c; {fallbacks} non-exact searches"),
    )
}

struct ProofStats {
    instances: usize,
    sum_instances: usize,
    certified: usize,
    invariant_failures: Vec<String>,
    sum_failures: Vec<String>,
}

fn proof_instances() -> ProofStats {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut stats = ProofStats { instances: 0, sum_instances: 0, certified: 0, invariant_failures: Vec::new(), sum_failures: Vec::new() };
    while stats.instances < 1000 {
        let g = random_connected_gnp(&mut rng, 4..=12, 0.2..0.75);
        let n = g.node_count();
        let k = rng.gen_range(2..n);
        let v = TheoremVerifier::new(&g).unwrap();
        let sel = v.selection(k).unwrap();
        let support = SignSupport::new(&sel.y, sel.tau);
        let (np, nn) = (support.positive.len(), support.negative.len());
        if np == 0 || nn == 0 {
            continue;
        }
        let want_sum = stats.instances.is_multiple_of(2);
        let total = if want_sum && np + nn > k {
            k + 1
        } else {
            rng.gen_range(2..=k.min(np + nn))
        };
        let a_lo = total.saturating_sub(nn).max(1);
        let a_hi = np.min(total - 1);
        if a_lo > a_hi {
            continue;
        }
        let a = rng.gen_range(a_lo..=a_hi);
        let b = total - a;
        let pos = random_split(&mut rng, &support.positive, a);
        let neg = random_split(&mut rng, &support.negative, b);
        let objects = v.proof_objects(k, pos.clone(), neg.clone()).unwrap();
        stats.instances += 1;

        // Oracle construction of the proof matrices.
        let lambda = v.spectrum().values.clone();
        let lambda_k = lambda[k - 1];
        let c = (lambda[k] - lambda_k) / 2.0;
        let y = &objects.y;
        let parts: Vec<&Vec<usize>> = pos.iter().chain(neg.iter()).collect();
        let side_of = |i: usize| usize::from(i >= a);
        let m = total;
        let z: Vec<f64> = parts.iter().map(|p| p.iter().map(|&u| y[u] * y[u]).sum::<f64>().sqrt()).collect();
        let mut unit = DMatrix::<f64>::zeros(n, m);
        for (i, p) in parts.iter().enumerate() {
            for &u in p.iter() {
                unit[(u, i)] = y[u] / z[i];
            }
        }
        let shifted = oracle_laplacian(n, g.edges()) - DMatrix::<f64>::identity(n, n) * lambda_k;
        let bmat = unit.transpose() * shifted * &unit;
        let mut cmat = DMatrix::<f64>::zeros(m, m);
        for i in 0..m {
            for j in 0..m {
                if i != j && side_of(i) == side_of(j) {
                    cmat[(i, j)] = bmat[(i, j)];
                }
            }
            let off: f64 = (0..m).filter(|&j| j != i).map(|j| cmat[(i, j)] * z[j]).sum();
            cmat[(i, i)] = -off / z[i];
        }
        let zv = DVector::from_vec(z.clone());
        let mu = sorted_eigenvalues(&bmat);
        let cmax = *sorted_eigenvalues(&cmat).last().unwrap();
        let diff_min = sorted_eigenvalues(&(&cmat - &bmat))[0];

        let mut fail = |what: String| stats.invariant_failures.push(format!("n={n} k={k} a={a} b={b}: {what}"));
        let bz = (&bmat * &zv).amax();
        let cz = (&cmat * &zv).amax();
        if bz > TOL {
            fail(format!("|Bz| = {bz:e}"));
        }
        if cz > TOL {
            fail(format!("|Cz| = {cz:e}"));
        }
        for i in 0..m {
            for j in 0..m {
                if i == j {
                    continue;
                }
                let x = bmat[(i, j)];
                if side_of(i) == side_of(j) && x > TOL || side_of(i) != side_of(j) && x < -TOL {
                    fail(format!("B sign pattern at ({i},{j}) = {x:e}"));
                }
            }
        }
        if diff_min < -TOL {
            fail(format!("lambda_min(C - B) = {diff_min:e}"));
        }
        for i in 0..m {
            if lambda[i] - lambda_k > mu[i] + TOL {
                fail(format!("interlacing at {i}: {} > {}", lambda[i] - lambda_k, mu[i]));
            }
        }
        let implementation_gap = (&objects.compressed - &bmat).amax().max((&objects.comparison - &cmat).amax());
        if implementation_gap > TOL {
            fail(format!("library matrices differ from oracle by {implementation_gap:e}"));
        }
        let phis: Vec<f64> = oracle_side_phis(&g, y, &support.positive, &pos)
            .into_iter()
            .chain(oracle_side_phis(&g, y, &support.negative, &neg))
            .collect();
        if phis.iter().all(|&p| p < c) {
            stats.certified += 1;
            if cmax >= 2.0 * c + TOL {
                fail(format!("lambda_max(C) = {cmax} >= 2c = {}", 2.0 * c));
            }
        }
        if m == k + 1 && lambda[k] - lambda_k > mu[m - 1] + TOL {
            fail(format!("gap {} > mu_max {}", lambda[k] - lambda_k, mu[m - 1]));
        }

        if m == k + 1 {
            stats.sum_instances += 1;
            let gap = lambda[m - 1] - lambda[m - 2];
            let phi_sum: f64 = phis.iter().sum();
            if gap > phi_sum + TOL {
                stats.sum_failures.push(format!("n={n} k={k}: gap {gap} > sum of Phi {phi_sum}"));
            }
            if mu[m - 1] > cmat.trace() + TOL {
                stats.sum_failures.push(format!("n={n} k={k}: mu_max {} > trace(C) {}", mu[m - 1], cmat.trace()));
            }
            let library: Vec<Option<f64>> = objects.class_phis().unwrap();
            match objects.check_prop_sum(&library) {
                Ok(record) if record.passed => {}
                other => stats.sum_failures.push(format!("n={n} k={k}: library check {other:?}")),
            }
        }
    }
    stats
}

fn proof_invariants(stats: &ProofStats) -> Outcome {
    let mut detail = format!(
        "{} instances ({} with a+b = k+1, {} with every class below c); {} violations",
        stats.instances,
        stats.sum_instances,
        stats.certified,
        stats.invariant_failures.len()
    );
    if let Some(first) = stats.invariant_failures.first() {
        detail += &format!("; first: {first}");
    }
    outcome(stats.invariant_failures.is_empty(), detail)
}

fn proposition_sum(stats: &ProofStats) -> Outcome {
    let mut detail = format!("{} instances with a+b = k+1; {} violations", stats.sum_instances, stats.sum_failures.len());
    if let Some(first) = stats.sum_failures.first() {
        detail += &format!("; first: {first}");
    }
    outcome(stats.sum_instances > 0 && stats.sum_failures.is_empty(), detail)
}

fn eigensolver() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let registry = solvers();
    let mut worst_recon: f64 = 0.0;
    let mut worst_orth: f64 = 0.0;
    let mut worst_poly: f64 = 0.0;
    let mut failures = Vec::new();
    let mut matrices = 0;
    for name in registry.names() {
        let solver = registry.get(name).unwrap();
        for n in (1..=64).step_by(3).chain([64]) {
            let mut a = DMatrix::<f64>::zeros(n, n);
            for i in 0..n {
                for j in 0..=i {
                    let x = rng.gen_range(-1.0..1.0);
                    a[(i, j)] = x;
                    a[(j, i)] = x;
                }
            }
            let d = eigendecompose_with(solver, &a).unwrap();
            let v = &d.vectors;
            worst_recon = worst_recon.max((d.reconstruct() - &a).amax());
            worst_orth = worst_orth.max((v.transpose() * v - DMatrix::<f64>::identity(n, n)).amax());
            matrices += 1;
        }
        for _ in 0..200 {
            let n = rng.gen_range(1..=4);
            let mut a = DMatrix::<f64>::zeros(n, n);
            for i in 0..n {
                for j in 0..=i {
                    let x = rng.gen_range(-2.0..2.0);
                    a[(i, j)] = x;
                    a[(j, i)] = x;
                }
            }
            let d = eigendecompose_with(solver, &a).unwrap();
            let roots = real_roots(&char_poly(&a));
            for (x, r) in d.values.iter().zip(&roots) {
                worst_poly = worst_poly.max((x - r).abs());
            }
        }
    }
    let (mut laplacians, mut worst_first, mut null_mismatch) = (0, 0.0f64, 0);
    for _ in 0..300 {
        let n = rng.gen_range(1..=30);
        let p = rng.gen_range(0.0..0.4);
        let g = gen_gnp(n, p, rng.gen()).unwrap();
        let d = eigendecompose(&g.laplacian()).unwrap();
        worst_first = worst_first.max(d.values[0].abs());
        let components = union_find_components(n, g.edges());
        if d.null_count(1e-9) != components {
            null_mismatch += 1;
        }
        laplacians += 1;
    }
    if worst_recon > TOL {
        failures.push("reconstruction");
    }
    if worst_orth > TOL {
        failures.push("orthonormality");
    }
    if worst_poly > TOL {
        failures.push("characteristic polynomial");
    }
    if worst_first > 1e-9 {
        failures.push("lambda_1");
    }
    if null_mismatch > 0 {
        failures.push("null count");
    }
    outcome(
        failures.is_empty(),
        format!(
            "{matrices} matrices up to n=64 (recon {worst_recon:.1e}, orth {worst_orth:.1e}); n<=4 vs char poly {worst_poly:.1e}; \
             {laplacians} Laplacians (|lambda_1| <= {worst_first:.1e}, {null_mismatch} null-count mismatches){}",
            if failures.is_empty() { String::new() } else { format!("; failed: {}", failures.join(", ")) }
        ),
    )
}

fn phi_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let cfg = SearchConfig::default();
    let (mut disagreements, mut worst_sym, mut worst_scale, mut non_expanders) = (0, 0.0f64, 0.0f64, 0);
    let mut instances = 0;
    while instances < 200 {
        let n = rng.gen_range(2..=8);
        let g = gen_gnp(n, rng.gen_range(0.2..0.9), rng.gen()).unwrap();
        let ws: Vec<f64> = (0..n).map(|_| rng.gen_range(0.01..5.0)).collect();
        let w = NodeWeights::new(ws.clone()).unwrap();
        let (min, _) = oracle_min_phi(n, g.edges(), &ws).unwrap();
        let c = if min > 0.0 { rng.gen_range(0.25..1.75) * min } else { rng.gen_range(0.1..1.0) };
        instances += 1;
        let verdict = is_expander(&g, &w, c, Mode::Exact, &cfg).unwrap();
        let oracle_says = min >= c;
        if !oracle_says {
            non_expanders += 1;
        }
        let min_matches = verdict.min_phi.is_some_and(|m| (m - min).abs() <= PHI_REL * (1.0 + min));
        if verdict.is_expander != oracle_says || !min_matches {
            disagreements += 1;
        }
        let t = rng.gen_range(1e-3..1e3);
        let scaled = w.scaled(t);
        for _ in 0..4 {
            let mask = rng.gen_range(1..(1u64 << n) - 1);
            let set: Vec<usize> = (0..n).filter(|&u| mask >> u & 1 == 1).collect();
            let rest: Vec<usize> = (0..n).filter(|&u| mask >> u & 1 == 0).collect();
            let base = phi(&g, &w, &set).unwrap().phi;
            let expected = oracle_phi(n, g.edges(), &ws, mask_of(&set)).unwrap();
            let scale = 1.0 + base.abs();
            worst_sym = worst_sym.max((base - phi(&g, &w, &rest).unwrap().phi).abs() / scale);
            worst_scale = worst_scale.max((base - phi(&g, &scaled, &set).unwrap().phi).abs() / scale);
            if (base - expected).abs() > PHI_REL * scale {
                disagreements += 1;
            }
        }
    }
    outcome(
        disagreements == 0 && worst_sym <= PHI_REL && worst_scale <= PHI_REL,
        format!(
            "{instances} weighted graphs ({non_expanders} non-expanders); {disagreements} disagreements with brute force; \
             symmetry {worst_sym:.1e}, scale {worst_scale:.1e}"
        ),
    )
}

fn counterexample_demo() -> Outcome {
    let g = gen_expander_path_expander(10, 3, 20, 7).unwrap();
    let v = TheoremVerifier::new(&g).unwrap();
    let values = &v.spectrum().values;
    let (l2, l3) = (values[1], values[2]);
    let c = (l3 - l2) / 2.0;
    let sel = v.selection(2).unwrap();
    let support = SignSupport::new(&sel.y, sel.tau);
    let side = &support.positive;
    let local: Vec<Option<usize>> = (0..g.node_count()).map(|u| side.iter().position(|&s| s == u)).collect();
    let edges: Vec<(usize, usize)> =
        g.edges().iter().filter_map(|&(u, v)| Some((local[u]?, local[v]?))).collect();
    let weighted: Vec<f64> = side.iter().map(|&u| sel.y[u] * sel.y[u]).collect();
    let (weighted_min, _) = oracle_min_phi(side.len(), &edges, &weighted).unwrap();
    let (unweighted_min, _) = oracle_min_phi(side.len(), &edges, &vec![1.0; side.len()]).unwrap();

    let small_first_gap = l2 < l3 - l2;
    let unweighted_below = unweighted_min < c;
    let weighted_expands = weighted_min >= c;
    let golden = common::check_golden(common::GOLDEN_CASES.iter().find(|g| g.golden == "demo_counterexample_seed7.json").unwrap());
    let mut detail = format!(
        "lambda2 = {l2:.6} {} lambda3 - lambda2 = {:.6}; c = {c:.6}; |positive support| = {}; \
         unweighted min Phi = {unweighted_min:.6} ({} c); weighted min Phi = {weighted_min:.6} ({} c)",
        if small_first_gap { "<" } else { ">=" },
        l3 - l2,
        side.len(),
        if unweighted_below { "<" } else { ">=" },
        if weighted_expands { ">=" } else { "<" },
    );
    if let Err(e) = &golden {
        detail += &format!("; golden: {e}");
    }
    outcome(small_first_gap && unweighted_below && weighted_expands && golden.is_ok(), detail)
}

fn cli_goldens() -> Outcome {
    let failures: Vec<String> = common::GOLDEN_CASES.iter().filter_map(|c| common::check_golden(c).err()).collect();
    let mut codes = Vec::new();
    for (args, expected) in [
        (&["spectrum", "missing.txt"][..], 2),
        (&["spectrum", "bad_endpoint.txt"][..], 2),
        (&["spectrum", "p3.txt", "--bogus"][..], 2),
        (&["expander-check", "p4.txt", "--c", "0.5"][..], 2),
        (&["analyze", "p4.txt", "--k", "2"][..], 0),
    ] {
        let code = common::nodal(args).status.code();
        if code != Some(expected) {
            codes.push(format!("{args:?} exited {code:?}, expected {expected}"));
        }
    }
    let line_reported = String::from_utf8_lossy(&common::nodal(&["spectrum", "bad_endpoint.txt"]).stderr).contains("line 3");
    outcome(
        failures.is_empty() && codes.is_empty() && line_reported,
        format!(
            "{} golden invocations, {} mismatches; exit-code contract {}; malformed input {}{}",
            common::GOLDEN_CASES.len(),
            failures.len(),
            if codes.is_empty() { "holds" } else { "broken" },
            if line_reported { "reports its line" } else { "lacks a line number" },
            failures.iter().chain(&codes).map(|f| format!("; {f}")).collect::<String>()
        ),
    )
}

fn main() {
    let mut all_passed = true;
    let mut report = |id: usize, name: &str, run: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let o = run();
        all_passed &= o.passed;
        println!(
            "acceptance {id} {:<4} {name} [{:.1}s]: {}",
            if o.passed { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            o.detail
        );
    };
    report(1, "exhaustive a+b <= k", &mut exhaustive_theorem);
    report(2, "second-eigenvector supports expand", &mut corollary_suite);
    let mut stats = None;
    report(3, "proof-object invariants", &mut || {
        let s = proof_instances();
        let o = proof_invariants(&s);
        stats = Some(s);
        o
    });
    let stats = stats.unwrap();
    report(4, "gap bounded by sum of class expansions", &mut || proposition_sum(&stats));
    report(5, "eigensolver accuracy", &mut eigensolver);
    report(6, "expansion matches brute force", &mut phi_oracle);
    report(7, "weighted versus unweighted counterexample", &mut counterexample_demo);
    report(8, "CLI goldens and exit codes", &mut cli_goldens);
    if !all_passed {
        std::process::exit(1);
    }
}
