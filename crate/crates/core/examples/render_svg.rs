//! Renders a random hierarchy with each algorithm to SVG files.
//!
//! cargo run --example render_svg [output-dir]

use std::path::PathBuf;

use bounded_treemap::io::{generate_random_tree, render_svg, write_file, RandomTreeSpec, RenderStyle};
use bounded_treemap::layout::{compute_layout, Algorithm};

fn main() {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(std::env::temp_dir);
    let spec = RandomTreeSpec {
        leaf_count: 120,
        max_depth: 5,
        ..RandomTreeSpec::default()
    };
    let t = generate_random_tree(7, &spec).expect("valid spec");
    let flat_spec = RandomTreeSpec {
        max_depth: 1,
        max_children: 40,
        leaf_count: 40,
        ..spec
    };
    let flat = generate_random_tree(7, &flat_spec).expect("valid spec");
    for (alg, tree) in [
        (Algorithm::Convex, &t),
        (Algorithm::Ortho, &t),
        (Algorithm::Single, &flat),
    ] {
        let (layout, _) = compute_layout(tree, alg).expect("layout");
        let path = dir.join(format!("treemap_{}.svg", alg.name()));
        write_file(&path, &render_svg(tree, &layout, &RenderStyle::default())).expect("writable");
        println!("wrote {}", path.display());
    }
}
