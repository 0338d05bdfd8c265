//! Seeded random instances: Erdős–Rényi edges, rejection on the minimum
//! degree, uniformly random preference lists.
//!
//! Instance `i` of seed `s` is drawn from `ChaCha8Rng::seed_from_u64(s)`
//! switched to stream `i`, so instances are independent of each other and
//! of the order in which they are generated.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::instance::{Instance, Vertex};

pub const DEFAULT_REJECTION_CAP: u64 = 1_000_000;

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct GenConfig {
    pub n: usize,
    /// Accepted graphs have minimum degree exactly `n - c`.
    pub c: usize,
    pub p: f64,
    pub seed: u64,
    pub rejection_cap: u64,
}

impl GenConfig {
    pub fn new(n: usize, c: usize, p: f64, seed: u64) -> Self {
        GenConfig {
            n,
            c,
            p,
            seed,
            rejection_cap: DEFAULT_REJECTION_CAP,
        }
    }

    pub fn with_rejection_cap(mut self, cap: u64) -> Self {
        self.rejection_cap = cap;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::Config(format!(
                "n must be at least 2, got {}",
                self.n
            )));
        }
        if self.c < 1 || self.c > self.n - 1 {
            return Err(Error::Config(format!(
                "c must lie in 1..={}, got {}",
                self.n - 1,
                self.c
            )));
        }
        if !(0.0..=1.0).contains(&self.p) {
            return Err(Error::Config(format!(
                "p must lie in [0,1], got {}",
                self.p
            )));
        }
        Ok(())
    }

    pub fn min_degree(&self) -> usize {
        self.n - self.c
    }
}

/// The generator state for instance `stream_index`.
pub fn stream_rng(seed: u64, stream_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream_index);
    rng
}

/// Draws instance `stream_index` for `cfg`.
pub fn gen_instance(cfg: &GenConfig, stream_index: u64) -> Result<Instance> {
    cfg.validate()?;
    let mut rng = stream_rng(cfg.seed, stream_index);
    let adjacency = accepted_graph(cfg, &mut rng)?;
    Ok(assign_preferences(adjacency, &mut rng))
}

/// Neighbour lists in vertex order of the first graph meeting the degree
/// rule.
fn accepted_graph(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> Result<Vec<Vec<Vertex>>> {
    let n = cfg.n;
    let target = cfg.min_degree();
    for _ in 0..cfg.rejection_cap {
        let mut adjacency = vec![Vec::new(); n];
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(cfg.p) {
                    adjacency[u].push(Vertex::new(v));
                    adjacency[v].push(Vertex::new(u));
                }
            }
        }
        let min = adjacency.iter().map(Vec::len).min().unwrap_or(0);
        if min == target {
            for list in &mut adjacency {
                list.sort_unstable();
            }
            return Ok(adjacency);
        }
    }
    Err(Error::RejectionCap(cfg.rejection_cap))
}

/// Shuffles every neighbour list into a preference list.
pub fn assign_preferences(mut adjacency: Vec<Vec<Vertex>>, rng: &mut impl Rng) -> Instance {
    for list in &mut adjacency {
        list.shuffle(rng);
    }
    let names = (1..=adjacency.len()).map(|i| format!("v{i}")).collect();
    Instance::from_lists(names, adjacency).expect("shuffled adjacency lists are symmetric")
}

/// Sorted degree sequence.
pub fn degree_profile(inst: &Instance) -> Vec<usize> {
    let mut degrees: Vec<usize> = inst.vertices().map(|v| inst.degree(v)).collect();
    degrees.sort_unstable();
    degrees
}
