//! Deterministic graph families, each registered by name.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::registry::{Named, Registry};

pub const REGULAR_RETRIES: usize = 1000;

pub fn gen_path(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidParams("path needs n >= 1".into()));
    }
    Graph::new(n, (1..n).map(|i| (i - 1, i)))
}

pub fn gen_cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParams("cycle needs n >= 3".into()));
    }
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn gen_complete(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidParams("complete graph needs n >= 1".into()));
    }
    Graph::new(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
}

/// Erdos-Renyi `G(n, p)`; pairs are visited in lexicographic order.
pub fn gen_gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParams(format!("edge probability {p} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen::<f64>() < p {
                edges.push((i, j));
            }
        }
    }
    Graph::new(n, edges)
}

/// Simple `d`-regular graph from the pairing model, resampling whenever a
/// self-loop or repeated pair shows up.
pub fn gen_random_regular(n: usize, d: usize, seed: u64) -> Result<Graph> {
    if (n * d) % 2 == 1 {
        return Err(Error::InvalidParams(format!("n * d = {} is odd", n * d)));
    }
    if d >= n && !(n == 0 || d == 0) {
        return Err(Error::InvalidParams(format!("degree {d} needs more than {n} nodes")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<usize> = (0..n).flat_map(|u| std::iter::repeat_n(u, d)).collect();
    'attempt: for _ in 0..REGULAR_RETRIES {
        points.sort_unstable();
        points.shuffle(&mut rng);
        let mut seen = std::collections::HashSet::with_capacity(points.len() / 2);
        for pair in points.chunks_exact(2) {
            let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if u == v || !seen.insert((u, v)) {
                continue 'attempt;
            }
        }
        return Graph::new(n, seen);
    }
    Err(Error::RetriesExhausted(REGULAR_RETRIES))
}

/// Two isomorphic `d`-regular blocks joined by a path of `path_len` new
/// nodes: block 1 is `0..n_block`, block 2 is its copy shifted by
/// `n_block`, the path occupies the last `path_len` indices. The path's
/// ends attach to node 0 of each block.
pub fn gen_expander_path_expander(n_block: usize, d: usize, path_len: usize, seed: u64) -> Result<Graph> {
    if path_len == 0 || n_block == 0 {
        return Err(Error::InvalidParams("need n_block >= 1 and path_len >= 1".into()));
    }
    let block = gen_random_regular(n_block, d, seed)?;
    let start = 2 * n_block;
    let n = start + path_len;
    let mut edges: Vec<(usize, usize)> = block.edges().to_vec();
    edges.extend(block.edges().iter().map(|&(u, v)| (u + n_block, v + n_block)));
    edges.extend((start + 1..n).map(|i| (i - 1, i)));
    edges.push((0, start));
    edges.push((n_block, n - 1));
    Graph::new(n, edges)
}

/// A generator family parameterised by positional string arguments.
pub trait GraphFamily: Named + Send + Sync {
    fn usage(&self) -> &'static str;
    fn generate(&self, params: &[String], seed: u64) -> Result<Graph>;
}

fn arg<T: std::str::FromStr>(params: &[String], i: usize, usage: &str) -> Result<T> {
    params
        .get(i)
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::InvalidParams(format!("usage: {usage}")))
}

fn arity(params: &[String], min: usize, max: usize, usage: &str) -> Result<()> {
    if params.len() < min || params.len() > max {
        return Err(Error::InvalidParams(format!("usage: {usage}")));
    }
    Ok(())
}

macro_rules! family {
    ($ty:ident, $name:literal, $usage:literal, |$p:ident, $seed:ident| $body:expr) => {
        pub struct $ty;
        impl Named for $ty {
            fn name(&self) -> &'static str {
                $name
            }
        }
        impl GraphFamily for $ty {
            fn usage(&self) -> &'static str {
                $usage
            }
            fn generate(&self, $p: &[String], $seed: u64) -> Result<Graph> {
                $body
            }
        }
    };
}

family!(PathFamily, "path", "path N", |p, _seed| {
    arity(p, 1, 1, "path N")?;
    gen_path(arg(p, 0, "path N")?)
});
family!(CycleFamily, "cycle", "cycle N", |p, _seed| {
    arity(p, 1, 1, "cycle N")?;
    gen_cycle(arg(p, 0, "cycle N")?)
});
family!(CompleteFamily, "complete", "complete N", |p, _seed| {
    arity(p, 1, 1, "complete N")?;
    gen_complete(arg(p, 0, "complete N")?)
});
family!(RegularFamily, "random_regular", "random_regular N D", |p, seed| {
    let u = "random_regular N D";
    arity(p, 2, 2, u)?;
    gen_random_regular(arg(p, 0, u)?, arg(p, 1, u)?, seed)
});
family!(GnpFamily, "gnp", "gnp N P", |p, seed| {
    let u = "gnp N P";
    arity(p, 2, 2, u)?;
    gen_gnp(arg(p, 0, u)?, arg(p, 1, u)?, seed)
});
family!(BarbellPathFamily, "expander_path_expander", "expander_path_expander N_BLOCK D [PATH_LEN]", |p, seed| {
    let u = "expander_path_expander N_BLOCK D [PATH_LEN]";
    arity(p, 2, 3, u)?;
    let n_block: usize = arg(p, 0, u)?;
    let path_len = if p.len() == 3 { arg(p, 2, u)? } else { 2 * n_block };
    gen_expander_path_expander(n_block, arg(p, 1, u)?, path_len, seed)
});

pub fn families() -> Registry<dyn GraphFamily> {
    let mut reg: Registry<dyn GraphFamily> = Registry::new("graph family");
    reg.register(Box::new(PathFamily))
        .register(Box::new(CycleFamily))
        .register(Box::new(CompleteFamily))
        .register(Box::new(RegularFamily))
        .register(Box::new(GnpFamily))
        .register(Box::new(BarbellPathFamily));
    reg
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenSpec {
    pub family: String,
    pub params: Vec<String>,
    pub seed: u64,
}

impl GenSpec {
    pub fn generate(&self) -> Result<Graph> {
        families().resolve(&self.family)?.generate(&self.params, self.seed)
    }
}
