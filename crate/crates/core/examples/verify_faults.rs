//! The verifier against hand-broken layouts: swapped regions, a shifted
//! region and a missing region.
//!
//! cargo run --example verify_faults

use bounded_treemap::geometry::Point;
use bounded_treemap::layout::{compute_layout, Algorithm};
use bounded_treemap::tree_model::WeightedTree;
use bounded_treemap::verifier::{verify, VerificationReport};

fn report(name: &str, rep: &VerificationReport) {
    println!(
        "{name:<10} pass={} tiling residual {:.2e}",
        rep.pass, rep.max_tiling_residual
    );
    for (node, v) in rep.violations() {
        println!("  node {node}: {v:?}");
    }
}

fn main() {
    let t = WeightedTree::from_leaf_weights(&[0.4, 0.3, 0.2, 0.1]).unwrap();
    let (layout, _) = compute_layout(&t, Algorithm::Ortho).unwrap();
    report("original", &verify(&t, &layout, Algorithm::Ortho).unwrap());

    let mut swapped = layout.clone();
    let first = swapped.regions[1].polygon.clone();
    swapped.regions[1].polygon = std::mem::replace(&mut swapped.regions[4].polygon, first);
    report("swapped", &verify(&t, &swapped, Algorithm::Ortho).unwrap());

    let mut shifted = layout.clone();
    shifted.regions[2].polygon = shifted.regions[2]
        .polygon
        .map_points(|p| Point::new(p.x + 0.05, p.y))
        .unwrap();
    report("shifted", &verify(&t, &shifted, Algorithm::Ortho).unwrap());

    let mut missing = layout;
    missing.regions.pop();
    println!(
        "missing    {}",
        verify(&t, &missing, Algorithm::Ortho).unwrap_err()
    );
}
