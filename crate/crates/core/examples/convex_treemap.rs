//! Convex treemap of a small hierarchy, with the per-region invariants.
//!
//! cargo run --example convex_treemap

use bounded_treemap::convex_layout::{check_k_phi, layout_convex_traced, separation_angle, BOX_RATIO};
use bounded_treemap::geometry::ConvexPolygon;
use bounded_treemap::io::parse_tree_json;
use bounded_treemap::layout::Algorithm;
use bounded_treemap::verifier::verify;

fn main() {
    let t = parse_tree_json(
        r#"{"name": "src", "children": [
            {"name": "geometry", "children": [
                {"name": "convex.rs", "weight": 310},
                {"name": "ortho.rs", "weight": 420},
                {"name": "transform.rs", "weight": 160}]},
            {"name": "layout.rs", "weight": 140},
            {"name": "verifier.rs", "weight": 520},
            {"name": "io", "children": [
                {"name": "mod.rs", "weight": 350},
                {"name": "svg.rs", "weight": 120},
                {"name": "random.rs", "weight": 240}]}]}"#,
    )
    .expect("valid hierarchy");
    let (layout, trace) = layout_convex_traced(&t).expect("layout");
    println!(
        "{} regions, {} new-direction cuts, {} axis cuts",
        layout.regions.len(),
        trace.new_direction_cuts,
        trace.axis_cuts
    );
    println!(
        "{:<28} {:>5} {:>8} {:>9} {:>6} {:>9}",
        "path", "depth", "weight", "asp", "edges", "min angle"
    );
    for r in &layout.regions {
        let d = t.depth_of(r.node);
        let p = ConvexPolygon::new(r.polygon.vertices().to_vec()).expect("convex region");
        let k = check_k_phi(&p, BOX_RATIO, separation_angle(d));
        println!(
            "{:<28} {:>5} {:>8.4} {:>9.3} {:>6} {:>9.4}",
            t.path(r.node),
            d,
            t.weight(r.node),
            p.asp_convex(),
            p.non_axis_edge_count(),
            k.min_pairwise_angle
        );
    }
    let rep = verify(&t, &layout, Algorithm::Convex).expect("complete layout");
    println!("verify: {}", if rep.pass { "pass" } else { "FAIL" });
}
