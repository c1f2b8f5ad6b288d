//! Depth-one treemaps: case counts, the aspect bounds, and the lower-bound
//! instance that no rectangle-and-L layout can beat.
//!
//! cargo run --example single_level

use bounded_treemap::layout::Algorithm;
use bounded_treemap::single_level::{
    layout_single_level_traced, leaf_bound, lower_bound_aspect_closed_form, lower_bound_instance,
    lower_bound_root, rect_bound, SingleLevelInstance,
};
use bounded_treemap::verifier::verify;

fn show(name: &str, inst: &SingleLevelInstance) {
    let (layout, trace) = layout_single_level_traced(inst);
    let rep = verify(&inst.tree(), &layout, Algorithm::Single).expect("complete layout");
    println!(
        "{name:<12} balanced {} slice {} wrap {}; max leaf aspect {:.4}, max rect aspect {:.4}, verify {}",
        trace.balanced,
        trace.slices,
        trace.wraps,
        trace.max_leaf_aspect,
        trace.max_rect_aspect,
        if rep.pass { "pass" } else { "FAIL" }
    );
}

fn main() {
    println!(
        "bounds: leaves {:.6}, intermediate rectangles {:.6}",
        leaf_bound(),
        rect_bound()
    );
    let zipf: Vec<f64> = (1..=30).map(|i| 1.0 / i as f64).collect();
    show("zipf(30)", &SingleLevelInstance::new(&zipf).unwrap());
    show(
        "one heavy",
        &SingleLevelInstance::new(&[20.0, 1.0, 1.0, 1.0, 1.0]).unwrap(),
    );
    show("equal(7)", &SingleLevelInstance::new(&[1.0; 7]).unwrap());

    let x = lower_bound_root();
    println!(
        "lower-bound root x = {x:.12}, 1/x = {:.12}, closed form {:.12}",
        1.0 / x,
        lower_bound_aspect_closed_form()
    );
    show("lower bound", &lower_bound_instance());
}
