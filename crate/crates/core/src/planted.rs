//! Hierarchical planted-partition generator.
//!
//! Blocks are grouped into supergroups. A vertex pair inside one block is an
//! edge with probability `p_in`, a pair in different blocks of the same
//! supergroup with `p_mid`, and a pair across supergroups with `p_out`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::Partition;
use crate::seeded_rng;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlantedModel {
    pub block_sizes: Vec<usize>,
    pub p_in: f64,
    pub p_mid: f64,
    pub p_out: f64,
    /// Partition of the block indices `0..block_sizes.len()`.
    pub supergroups: Vec<Vec<usize>>,
    pub seed: u64,
}

/// Which probability level a vertex pair falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeLevel {
    SameBlock,
    SameSupergroup,
    CrossSupergroup,
}

impl PlantedModel {
    /// Five blocks of 40 split into supergroups {0,1} and {2,3,4}, with two
    /// clearly separated probability levels below `p_in`.
    pub fn five_block_default(seed: u64) -> Self {
        PlantedModel {
            block_sizes: vec![40; 5],
            p_in: 0.5,
            p_mid: 0.05,
            p_out: 0.005,
            supergroups: vec![vec![0, 1], vec![2, 3, 4]],
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if self.block_sizes.is_empty() {
            return bad("at least one block is required".into());
        }
        if let Some(i) = self.block_sizes.iter().position(|&s| s == 0) {
            return bad(format!("block {i} has size 0"));
        }
        for (name, p) in [
            ("p_in", self.p_in),
            ("p_mid", self.p_mid),
            ("p_out", self.p_out),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return bad(format!("{name} = {p} is not a probability"));
            }
        }
        if !(self.p_in >= self.p_mid && self.p_mid >= self.p_out) {
            return bad(format!(
                "probabilities must satisfy p_in >= p_mid >= p_out (got {}, {}, {})",
                self.p_in, self.p_mid, self.p_out
            ));
        }
        let k = self.block_sizes.len();
        let mut seen = vec![false; k];
        for &b in self.supergroups.iter().flatten() {
            if b >= k {
                return bad(format!("supergroup names block {b}, only {k} blocks exist"));
            }
            if std::mem::replace(&mut seen[b], true) {
                return bad(format!("block {b} appears in more than one supergroup"));
            }
        }
        if let Some(b) = seen.iter().position(|s| !s) {
            return bad(format!("block {b} belongs to no supergroup"));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.block_sizes.iter().sum()
    }

    /// Supergroup index of each block.
    fn block_supergroup(&self) -> Vec<usize> {
        let mut out = vec![0; self.block_sizes.len()];
        for (g, members) in self.supergroups.iter().enumerate() {
            for &b in members {
                out[b] = g;
            }
        }
        out
    }

    /// Ground-truth block label of every vertex.
    pub fn block_labels(&self) -> Vec<usize> {
        self.block_sizes
            .iter()
            .enumerate()
            .flat_map(|(b, &s)| std::iter::repeat_n(b, s))
            .collect()
    }

    pub fn level(&self, block_u: usize, block_v: usize, supergroup_of: &[usize]) -> EdgeLevel {
        if block_u == block_v {
            EdgeLevel::SameBlock
        } else if supergroup_of[block_u] == supergroup_of[block_v] {
            EdgeLevel::SameSupergroup
        } else {
            EdgeLevel::CrossSupergroup
        }
    }

    fn probability(&self, level: EdgeLevel) -> f64 {
        match level {
            EdgeLevel::SameBlock => self.p_in,
            EdgeLevel::SameSupergroup => self.p_mid,
            EdgeLevel::CrossSupergroup => self.p_out,
        }
    }

    /// Supergroup membership lifted to vertices, as a partition.
    pub fn supergroup_partition(&self) -> Result<Partition> {
        self.validate()?;
        let sg = self.block_supergroup();
        let labels = self.block_labels().into_iter().map(|b| sg[b]).collect();
        Partition::new(labels, self.supergroups.len())
    }
}

/// Draws one graph from the model together with its block partition.
///
/// Pairs `(u, v)`, `u < v`, are visited in lexicographic order and each
/// consumes exactly one uniform draw from the seeded generator, so a seed
/// fixes the output bit for bit.
pub fn generate_planted(model: &PlantedModel) -> Result<(Graph, Partition)> {
    model.validate()?;
    let n = model.n();
    let blocks = model.block_labels();
    let sg = model.block_supergroup();
    let mut rng = seeded_rng(model.seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            let p = model.probability(model.level(blocks[u], blocks[v], &sg));
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    let graph = Graph::from_edges(n, &edges)?;
    let truth = Partition::new(blocks, model.block_sizes.len())?;
    Ok((graph, truth))
}
