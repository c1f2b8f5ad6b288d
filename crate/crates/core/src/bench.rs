//! Seeded batches of random trees: lay out, verify, and tally aspect ratios
//! and branch frequencies.

use std::collections::BTreeMap;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::geometry::ShapeClass;
use crate::io::{generate_random_tree, IoError, RandomTreeSpec};
use crate::layout::{compute_layout, Algorithm, LayoutError};
use crate::verifier::{verify, VerifyError};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchConfig {
    pub algorithm: Algorithm,
    pub trials: usize,
    pub seed: u64,
    pub spec: RandomTreeSpec,
}

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error(transparent)]
    Io(#[from] IoError),
    #[error("trial {trial}: {source}")]
    Layout { trial: usize, source: LayoutError },
    #[error("trial {trial}: {source}")]
    Verify { trial: usize, source: VerifyError },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialResult {
    pub trial: usize,
    pub seed: u64,
    pub nodes: usize,
    pub leaves: usize,
    pub depth: usize,
    /// Ortho aspect for rectilinear layouts, convex aspect otherwise.
    pub max_leaf_aspect: f64,
    pub max_internal_aspect: f64,
    /// Convex layouts: largest `asp_convex / (depth + 6)` over all regions.
    pub max_depth_scaled_aspect: f64,
    pub max_tiling_residual: f64,
    pub max_area_residual: f64,
    pub pass: bool,
    pub cases: BTreeMap<String, usize>,
    pub leaf_shapes: BTreeMap<String, usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchSummary {
    pub algorithm: Algorithm,
    pub trials: usize,
    pub seed: u64,
    pub passed: usize,
    pub max_leaf_aspect: f64,
    pub mean_max_leaf_aspect: f64,
    pub max_internal_aspect: f64,
    pub cases: BTreeMap<String, usize>,
    pub leaf_shapes: BTreeMap<String, usize>,
    /// Share of leaves drawn as S-shapes.
    pub s_shape_fraction: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub config: BenchConfig,
    pub summary: BenchSummary,
    pub trials: Vec<TrialResult>,
}

/// Per-trial seeds drawn from one ChaCha8 stream seeded with `seed`.
pub fn trial_seeds(seed: u64, trials: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials).map(|_| rng.next_u64()).collect()
}

/// The tree spec actually used for `algorithm`: single-level runs flatten
/// the tree to depth one.
pub fn effective_spec(algorithm: Algorithm, spec: &RandomTreeSpec) -> RandomTreeSpec {
    match algorithm {
        Algorithm::Single => RandomTreeSpec {
            max_depth: 1,
            max_children: spec.leaf_count.max(2),
            ..*spec
        },
        _ => *spec,
    }
}

/// Runs one trial.
pub fn run_trial(
    algorithm: Algorithm,
    trial: usize,
    seed: u64,
    spec: &RandomTreeSpec,
) -> Result<TrialResult, BenchError> {
    let t = generate_random_tree(seed, &effective_spec(algorithm, spec))?;
    let (layout, trace) =
        compute_layout(&t, algorithm).map_err(|source| BenchError::Layout { trial, source })?;
    let rep = verify(&t, &layout, algorithm).map_err(|source| BenchError::Verify { trial, source })?;
    let aspect = |r: &crate::verifier::RegionReport| match algorithm {
        Algorithm::Convex => r.asp_convex,
        _ => r.asp_ortho,
    };
    let mut leaf_shapes = BTreeMap::new();
    for r in rep.regions.iter().filter(|r| r.leaf) {
        *leaf_shapes.entry(r.shape.to_string()).or_insert(0) += 1;
    }
    Ok(TrialResult {
        trial,
        seed,
        nodes: t.len(),
        leaves: t.leaf_count(),
        depth: t.depth(),
        max_leaf_aspect: rep
            .regions
            .iter()
            .filter(|r| r.leaf)
            .map(aspect)
            .fold(0.0, f64::max),
        max_internal_aspect: rep
            .regions
            .iter()
            .filter(|r| !r.leaf)
            .map(aspect)
            .fold(0.0, f64::max),
        max_depth_scaled_aspect: rep
            .regions
            .iter()
            .map(|r| r.asp_convex / (r.depth as f64 + 6.0))
            .fold(0.0, f64::max),
        max_tiling_residual: rep.max_tiling_residual,
        max_area_residual: rep.max_area_residual,
        pass: rep.pass,
        cases: trace
            .case_counts()
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect(),
        leaf_shapes,
    })
}

/// Runs all trials in parallel; results are kept in trial order.
pub fn run_bench(config: &BenchConfig) -> Result<BenchReport, BenchError> {
    let seeds = trial_seeds(config.seed, config.trials);
    let trials = seeds
        .par_iter()
        .enumerate()
        .map(|(i, &s)| run_trial(config.algorithm, i, s, &config.spec))
        .collect::<Result<Vec<_>, _>>()?;
    let mut cases = BTreeMap::new();
    let mut leaf_shapes = BTreeMap::new();
    for tr in &trials {
        for (k, v) in &tr.cases {
            *cases.entry(k.clone()).or_insert(0) += v;
        }
        for (k, v) in &tr.leaf_shapes {
            *leaf_shapes.entry(k.clone()).or_insert(0) += v;
        }
    }
    let total_leaves: usize = leaf_shapes.values().sum();
    let s_shapes = leaf_shapes
        .get(&ShapeClass::SShape.to_string())
        .copied()
        .unwrap_or(0);
    let n = trials.len().max(1) as f64;
    let summary = BenchSummary {
        algorithm: config.algorithm,
        trials: trials.len(),
        seed: config.seed,
        passed: trials.iter().filter(|t| t.pass).count(),
        max_leaf_aspect: trials.iter().map(|t| t.max_leaf_aspect).fold(0.0, f64::max),
        mean_max_leaf_aspect: trials.iter().map(|t| t.max_leaf_aspect).sum::<f64>() / n,
        max_internal_aspect: trials.iter().map(|t| t.max_internal_aspect).fold(0.0, f64::max),
        cases,
        leaf_shapes,
        s_shape_fraction: if total_leaves == 0 {
            0.0
        } else {
            s_shapes as f64 / total_leaves as f64
        },
    };
    Ok(BenchReport {
        config: config.clone(),
        summary,
        trials,
    })
}
