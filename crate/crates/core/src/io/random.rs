use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::IoError;
use crate::tree_model::{NestedNode, WeightedTree};

/// How leaf weights are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum WeightDistribution {
    /// `exp(U(ln min, ln max))`.
    LogUniform { min: f64, max: f64 },
    /// `U(0, 1]`.
    Uniform,
    /// At every internal node one random child receives `share` of the
    /// parent's weight and the rest is split evenly.
    HugeChild { share: f64 },
}

impl Default for WeightDistribution {
    fn default() -> Self {
        WeightDistribution::LogUniform { min: 1e-4, max: 1.0 }
    }
}

/// Shape and weight parameters for [`generate_random_tree`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RandomTreeSpec {
    pub max_depth: usize,
    pub max_children: usize,
    pub leaf_count: usize,
    pub weights: WeightDistribution,
}

impl Default for RandomTreeSpec {
    fn default() -> Self {
        RandomTreeSpec {
            max_depth: 12,
            max_children: 6,
            leaf_count: 100,
            weights: WeightDistribution::default(),
        }
    }
}

impl RandomTreeSpec {
    fn check(&self) -> Result<(), IoError> {
        let bad = |m: &str| Err(IoError::BadSpec(m.into()));
        if self.leaf_count == 0 {
            return bad("leaf_count must be positive");
        }
        if self.leaf_count > 1 && (self.max_depth == 0 || self.max_children < 2) {
            return bad("more than one leaf needs max_depth ≥ 1 and max_children ≥ 2");
        }
        let capacity = (self.max_children as f64).powi(self.max_depth.min(64) as i32);
        if (self.leaf_count as f64) > capacity {
            return bad("leaf_count exceeds max_children^max_depth");
        }
        match self.weights {
            WeightDistribution::LogUniform { min, max } if !(min > 0.0 && min <= max && max.is_finite()) => {
                bad("log-uniform bounds must satisfy 0 < min ≤ max")
            }
            WeightDistribution::HugeChild { share } if !(share > 0.0 && share < 1.0) => {
                bad("huge-child share must lie in (0, 1)")
            }
            _ => Ok(()),
        }
    }
}

struct Shape {
    children: Vec<Vec<usize>>,
    depth: Vec<usize>,
}

/// Random tree with exactly `leaf_count` leaves and depth at most
/// `max_depth`, deterministic in `seed` (ChaCha8).
///
/// The shape grows from a single node: each step either splits a leaf into
/// two or more children or adds a child to an internal node with spare
/// capacity, chosen uniformly among the possible moves.
pub fn generate_random_tree(seed: u64, spec: &RandomTreeSpec) -> Result<WeightedTree, IoError> {
    spec.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut shape = Shape {
        children: vec![Vec::new()],
        depth: vec![0],
    };
    let mut leaves = 1;
    while leaves < spec.leaf_count {
        let moves: Vec<usize> = (0..shape.depth.len())
            .filter(|&v| {
                let k = shape.children[v].len();
                if k == 0 {
                    shape.depth[v] < spec.max_depth
                } else {
                    k < spec.max_children
                }
            })
            .collect();
        let v = moves[rng.random_range(0..moves.len())];
        let add = if shape.children[v].is_empty() {
            let most = (spec.leaf_count - leaves + 1).min(spec.max_children);
            rng.random_range(2..=most.max(2))
        } else {
            1
        };
        leaves += add - usize::from(shape.children[v].is_empty());
        for _ in 0..add {
            shape.children.push(Vec::new());
            shape.depth.push(shape.depth[v] + 1);
            let id = shape.depth.len() - 1;
            shape.children[v].push(id);
        }
    }

    let mut weight = vec![1.0; shape.depth.len()];
    match spec.weights {
        WeightDistribution::LogUniform { min, max } => {
            let (lo, hi) = (min.ln(), max.ln());
            for (v, w) in weight.iter_mut().enumerate() {
                if shape.children[v].is_empty() {
                    *w = if hi > lo {
                        rng.random_range(lo..hi).exp()
                    } else {
                        min
                    };
                }
            }
        }
        WeightDistribution::Uniform => {
            for (v, w) in weight.iter_mut().enumerate() {
                if shape.children[v].is_empty() {
                    *w = 1.0 - rng.random::<f64>();
                }
            }
        }
        WeightDistribution::HugeChild { share } => {
            // ids increase with depth, so parents are scaled first
            for v in 0..shape.depth.len() {
                let kids = &shape.children[v];
                if kids.is_empty() {
                    continue;
                }
                let huge = kids[rng.random_range(0..kids.len())];
                let rest = (1.0 - share) / (kids.len() - 1) as f64;
                for &c in kids {
                    weight[c] = weight[v] * if c == huge { share } else { rest };
                }
            }
        }
    }

    fn build(v: usize, shape: &Shape, weight: &[f64]) -> NestedNode {
        let name = format!("n{v}");
        if shape.children[v].is_empty() {
            NestedNode::leaf(name, weight[v])
        } else {
            NestedNode::internal(
                name,
                shape.children[v]
                    .iter()
                    .map(|&c| build(c, shape, weight))
                    .collect(),
            )
        }
    }
    WeightedTree::from_nested(&build(0, &shape, &weight)).map_err(|source| IoError::Tree {
        location: "generated tree".into(),
        source,
    })
}
