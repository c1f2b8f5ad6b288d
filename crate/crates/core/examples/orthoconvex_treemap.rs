//! Orthoconvex treemap: which recursion cases ran and which leaf shapes came out.
//!
//! cargo run --example orthoconvex_treemap [seed]

use std::collections::BTreeMap;

use bounded_treemap::io::{generate_random_tree, RandomTreeSpec};
use bounded_treemap::layout::Algorithm;
use bounded_treemap::ortho_layout::{layout_ortho_with, OrthoCase, OrthoOptions};
use bounded_treemap::verifier::verify;

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let spec = RandomTreeSpec {
        leaf_count: 300,
        ..RandomTreeSpec::default()
    };
    let t = generate_random_tree(seed, &spec).expect("valid spec");
    let (layout, trace) = layout_ortho_with(&t, OrthoOptions::default()).expect("layout");
    println!(
        "tree: {} nodes, {} leaves, depth {}",
        t.len(),
        t.leaf_count(),
        t.depth()
    );
    for case in OrthoCase::ALL {
        println!("  {:<16} {}", case.name(), trace.count(case));
    }
    println!("largest container aspect {:.3}", trace.max_container_aspect);

    let rep = verify(&t, &layout, Algorithm::Ortho).expect("complete layout");
    let mut shapes: BTreeMap<String, (usize, f64)> = BTreeMap::new();
    for r in rep.regions.iter().filter(|r| r.leaf) {
        let e = shapes.entry(r.shape.to_string()).or_insert((0, 0.0));
        e.0 += 1;
        e.1 = e.1.max(r.asp_ortho);
    }
    for (shape, (n, asp)) in shapes {
        println!("  {shape:<10} {n:>4} leaves, max aspect {asp:.3}");
    }
    let internal = rep.max_asp_ortho(|r| !r.leaf);
    println!(
        "internal regions: max aspect {internal:.3}; verify {}",
        if rep.pass { "pass" } else { "FAIL" }
    );
}
