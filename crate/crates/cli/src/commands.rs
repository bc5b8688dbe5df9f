use std::fs;
use std::io::{self, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};
use nodal_core::certificate::{BatchConfig, TheoremVerifier};
use nodal_core::expansion::{self, Mode, SearchConfig, SearchStrategy};
use nodal_core::fmt::{fmt_float, round_sig};
use nodal_core::generators::{families, gen_expander_path_expander};
use nodal_core::graph::{Graph, NodeWeights, SignSupport};
use nodal_core::io::{parse_edge_list, parse_partition, parse_weights, write_edge_list};
use nodal_core::spectral::{eigendecompose_with, solvers, SpectralDecomposition};
use serde_json::{json, Value};

use crate::{Cli, Command, Outcome, SearchArgs, WeightSource};

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_graph(path: &Path) -> Result<Graph> {
    parse_edge_list(&read(path)?).with_context(|| format!("{}", path.display()))
}

fn spectrum(cli: &Cli, g: &Graph) -> Result<SpectralDecomposition> {
    let registry = solvers();
    let solver = registry.resolve(&cli.solver)?;
    Ok(eigendecompose_with(solver, &g.laplacian())?)
}

fn verifier(cli: &Cli, g: &Graph) -> Result<TheoremVerifier> {
    Ok(TheoremVerifier::with_spectrum(g, spectrum(cli, g)?))
}

fn search(args: &SearchArgs) -> Result<(&'static dyn SearchStrategy, SearchConfig)> {
    let mode = expansion::strategies().resolve(&args.mode)?.mode();
    Ok((mode.strategy(), SearchConfig { budget: args.budget, ..SearchConfig::default() }))
}

fn emit(text: &str) -> Result<()> {
    match io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn print_json(v: &impl serde::Serialize) -> Result<()> {
    emit(&format!("{}\n", serde_json::to_string_pretty(v)?))
}

fn snapped_csv(values: &[f64]) -> String {
    let band = 1e-10 * (1.0 + values.iter().fold(0.0f64, |m, v| m.max(v.abs())));
    let cells: Vec<String> = values.iter().map(|&v| if v.abs() <= band { "0".into() } else { fmt_float(v) }).collect();
    cells.join(",")
}

/// Support subgraphs of eigenvector `k` with `w = y^2`, as
/// `(side name, parent nodes, subgraph, weights)`.
fn support_sides(v: &TheoremVerifier, g: &Graph, k: usize) -> Result<Vec<(&'static str, nodal_core::graph::InducedSubgraph, NodeWeights)>> {
    let sel = v.selection(k)?;
    let support = SignSupport::new(&sel.y, sel.tau);
    let w = NodeWeights::from_eigenvector(&sel.y);
    let mut out = Vec::new();
    for (name, side) in [("positive", &support.positive), ("negative", &support.negative)] {
        let sub = g.induced_subgraph(side)?;
        let ws = w.restrict(&sub);
        out.push((name, sub, ws));
    }
    Ok(out)
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Spectrum { file } => {
            let g = load_graph(file)?;
            emit(&format!("{}\n", snapped_csv(&spectrum(cli, &g)?.values)))?;
            Ok(Outcome::Pass)
        }
        Command::Analyze { file, k, search: args, corollary } => {
            let g = load_graph(file)?;
            let (strategy, cfg) = search(args)?;
            let v = verifier(cli, &g)?;
            let report = v.verify(*k, strategy, &cfg)?;
            let mut ok = report.theorem_holds && report.failed_checks().next().is_none();
            if report.is_violation() {
                eprintln!("THEOREM VIOLATION: a + b = {} > k = {} in exact mode", report.a + report.b, report.k);
            }
            let mut out = serde_json::to_value(&report)?;
            if *corollary {
                let cor = v.corollary(&cfg)?;
                ok &= cor.holds;
                out["corollary"] = serde_json::to_value(&cor)?;
            }
            print_json(&out)?;
            Ok(if ok { Outcome::Pass } else { Outcome::CheckFailed })
        }
        Command::ExpanderCheck { file, source, c, search: args } => {
            let g = load_graph(file)?;
            let (strategy, cfg) = search(args)?;
            let out = match (source.eigvec, &source.weights) {
                (Some(k), _) => {
                    let v = verifier(cli, &g)?;
                    let mut out = json!({ "eigvec": k, "c": round_sig(*c), "mode": strategy.mode() });
                    for (name, sub, ws) in support_sides(&v, &g, k)? {
                        out[name] = if sub.to_parent.is_empty() {
                            Value::Null
                        } else {
                            let mut verdict = strategy.is_expander(&sub.graph, &ws, *c, &cfg)?;
                            verdict.min_set = verdict.min_set.map(|s| sub.lift(&s));
                            verdict.witness = verdict.witness.map(|s| sub.lift(&s));
                            serde_json::to_value(verdict)?
                        };
                    }
                    out
                }
                (None, Some(path)) => {
                    let w = load_weights(path, &g)?;
                    json!({ "c": round_sig(*c), "mode": strategy.mode(), "verdict": strategy.is_expander(&g, &w, *c, &cfg)? })
                }
                (None, None) => unreachable_source(source)?,
            };
            print_json(&out)?;
            Ok(Outcome::Pass)
        }
        Command::Partition { file, k, c, source, search: args } => {
            let g = load_graph(file)?;
            let (strategy, cfg) = search(args)?;
            let out = match (source.eigvec, &source.weights) {
                (Some(j), _) => {
                    let v = verifier(cli, &g)?;
                    let mut out = json!({ "eigvec": j, "k": k, "c": round_sig(*c), "mode": strategy.mode() });
                    for (name, sub, ws) in support_sides(&v, &g, j)? {
                        out[name] = if sub.to_parent.is_empty() {
                            Value::Null
                        } else {
                            match strategy.find_partition(&sub.graph, &ws, *k, *c, &cfg)? {
                                Some(mut cert) => {
                                    cert.classes = cert.classes.iter().map(|cl| sub.lift(cl)).collect();
                                    serde_json::to_value(cert)?
                                }
                                None => Value::Null,
                            }
                        };
                    }
                    out
                }
                (None, Some(path)) => {
                    let w = load_weights(path, &g)?;
                    let cert = strategy.find_partition(&g, &w, *k, *c, &cfg)?;
                    json!({ "k": k, "c": round_sig(*c), "mode": strategy.mode(), "certificate": cert })
                }
                (None, None) => unreachable_source(source)?,
            };
            print_json(&out)?;
            Ok(Outcome::Pass)
        }
        Command::VerifyProof { file, k, pos, neg } => {
            let g = load_graph(file)?;
            let pos = parse_partition(&read(pos)?).with_context(|| pos.display().to_string())?;
            let neg = parse_partition(&read(neg)?).with_context(|| neg.display().to_string())?;
            let v = verifier(cli, &g)?;
            let objects = v.proof_objects(*k, pos, neg)?;
            let phis = objects.class_phis()?;
            let certified = objects.threshold.is_some_and(|c| c > 0.0 && phis.iter().all(|p| expansion::below(p.unwrap_or(0.0), c)));
            let checks = objects.all_checks(certified)?;
            let mut flags = Vec::new();
            if !objects.whole_side_classes().is_empty() {
                flags.push("whole_side_class");
            }
            if certified {
                flags.push("certified_below_c");
            }
            let ok = checks.iter().all(|c| c.passed);
            print_json(&json!({
                "k": k,
                "a": objects.a,
                "b": objects.b,
                "c": objects.threshold.map(round_sig),
                "class_phis": phis.iter().map(|p| p.map(round_sig)).collect::<Vec<_>>(),
                "flags": flags,
                "checks": checks,
            }))?;
            Ok(if ok { Outcome::Pass } else { Outcome::CheckFailed })
        }
        Command::Gen { family, params, seed, output } => {
            let registry = families();
            let g = registry.resolve(family)?.generate(params, *seed)?;
            let text = write_edge_list(&g);
            match output {
                Some(path) => fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?,
                None => emit(&text)?,
            }
            Ok(Outcome::Pass)
        }
        Command::DemoCounterexample { n_block, d, seed, path_len } => {
            let path_len = path_len.unwrap_or(2 * n_block);
            let g = gen_expander_path_expander(*n_block, *d, path_len, *seed)?;
            let demo = crate::commands::demo(cli, &g)?;
            print_json(&json!({
                "n_block": n_block, "d": d, "path_len": path_len, "seed": seed, "demo": demo,
            }))?;
            Ok(Outcome::Pass)
        }
        Command::BatchVerify { max_n, seed, sample_cap, full_max_n } => {
            let cfg = BatchConfig { max_n: *max_n, seed: *seed, sample_cap: *sample_cap, full_enumeration_max_n: *full_max_n, ..BatchConfig::default() };
            let summary = nodal_core::certificate::batch_verify(&cfg)?;
            let mut report = String::new();
            for line in &summary.lines {
                report += &format!(
                    "n={} graphs={}{} instances={} violations={} failed_checks={} max_a_plus_b_minus_k={}\n",
                    line.n,
                    line.graphs,
                    if line.sampled { " (sampled)" } else { "" },
                    line.instances,
                    line.violations,
                    line.failed_checks,
                    line.max_a_plus_b_minus_k
                );
                for (edges, k) in &line.examples {
                    eprintln!("  violation: k={k} edges={edges:?}");
                }
            }
            report += &format!("total instances={} violations={} failed_checks={}\n", summary.instances(), summary.violations(), summary.failed_checks());
            emit(&report)?;
            Ok(if summary.violations() == 0 && summary.failed_checks() == 0 { Outcome::Pass } else { Outcome::CheckFailed })
        }
    }
}

fn unreachable_source(_: &WeightSource) -> Result<Value> {
    bail!("one of --eigvec or --weights is required")
}

fn load_weights(path: &Path, g: &Graph) -> Result<NodeWeights> {
    let w = parse_weights(&read(path)?).with_context(|| path.display().to_string())?;
    w.check_len(g)?;
    Ok(w)
}

/// Weighted (`w = y^2`) against unweighted expansion of the positive
/// support of the second eigenvector.
pub fn demo(cli: &Cli, g: &Graph) -> Result<Value> {
    let v = verifier(cli, g)?;
    let values = &v.spectrum().values;
    if values.len() < 3 {
        bail!("graph needs at least 3 nodes");
    }
    let (l2, l3) = (values[1], values[2]);
    let c = (l3 - l2) / 2.0;
    let sides = support_sides(&v, g, 2)?;
    let (_, sub, ws) = &sides[0];
    let cfg = SearchConfig::default();
    let mode = if sub.to_parent.len() <= cfg.bipartition_cap { Mode::Exact } else { Mode::Heuristic };
    let lift = |mut verdict: expansion::ExpanderVerdict| {
        verdict.min_set = verdict.min_set.map(|s| sub.lift(&s));
        verdict.witness = verdict.witness.map(|s| sub.lift(&s));
        verdict
    };
    let weighted = lift(mode.strategy().is_expander(&sub.graph, ws, c, &cfg)?);
    let unweighted = lift(mode.strategy().is_expander(&sub.graph, &NodeWeights::uniform(sub.to_parent.len()), c, &cfg)?);
    Ok(json!({
        "n": g.node_count(),
        "m": g.edge_count(),
        "lambda_2": round_sig(l2),
        "lambda_3": round_sig(l3),
        "gap_3_2": round_sig(l3 - l2),
        "c": round_sig(c),
        "small_first_gap": l2 < l3 - l2,
        "positive_support": sub.to_parent,
        "weighted": weighted,
        "unweighted": unweighted,
        "weighted_expander": weighted.is_expander,
        "unweighted_below_c": !unweighted.is_expander,
    }))
}
