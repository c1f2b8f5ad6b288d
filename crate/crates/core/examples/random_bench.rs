//! Seeded batch of random trees for each algorithm, with aspect and case
//! statistics.
//!
//! cargo run --release --example random_bench [trials]

use bounded_treemap::bench::{run_bench, BenchConfig};
use bounded_treemap::io::{RandomTreeSpec, WeightDistribution};
use bounded_treemap::layout::Algorithm;

fn main() {
    let trials = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(50);
    for weights in [
        WeightDistribution::LogUniform { min: 1e-4, max: 1.0 },
        WeightDistribution::HugeChild { share: 0.9 },
    ] {
        for algorithm in [Algorithm::Convex, Algorithm::Ortho, Algorithm::Single] {
            let config = BenchConfig {
                algorithm,
                trials,
                seed: 42,
                spec: RandomTreeSpec {
                    leaf_count: 200,
                    weights,
                    ..RandomTreeSpec::default()
                },
            };
            let rep = run_bench(&config).expect("bench runs");
            let s = &rep.summary;
            println!(
                "{:<7} {:<40} passed {}/{}; leaf aspect max {:.3} mean {:.3}; internal max {:.3}",
                algorithm.name(),
                format!("{weights:?}"),
                s.passed,
                s.trials,
                s.max_leaf_aspect,
                s.mean_max_leaf_aspect,
                s.max_internal_aspect
            );
            println!("        cases {:?}", s.cases);
        }
    }
}
