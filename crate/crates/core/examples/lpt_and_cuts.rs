//! The two-way splitting steps: LPT bins, rectangle cuts and vertical cuts of
//! convex polygons, each with the bound it guarantees.
//!
//! cargo run --example lpt_and_cuts

use bounded_treemap::geometry::{convex_hull, Point, Rect};
use bounded_treemap::partition::{lpt_bound, lpt_partition, split_rect, vertical_cut_widths};

fn main() {
    let w = [0.3, 0.25, 0.2, 0.15, 0.1];
    let s = lpt_partition(&w).unwrap();
    let t = w.iter().copied().fold(0.0, f64::max);
    println!(
        "LPT {w:?}: bins {:?} / {:?}, w1 = {:.3} (bound {:?})",
        s.h1,
        s.h2,
        s.w1,
        lpt_bound(t)
    );

    let r = Rect::from_bounds(0.0, 0.0, 2.0, 1.0).unwrap();
    let (a, b) = split_rect(&r, 1.5, 0.5).unwrap();
    println!(
        "split 2x1 into 1.5/0.5: aspects {:.3} and {:.3}, bounds {:.3} and {:.3}",
        a.aspect(),
        b.aspect(),
        r.aspect().max(r.area() / 1.5),
        r.aspect().max(r.area() / 0.5)
    );

    let tri = convex_hull(&[Point::new(0.0, 0.0), Point::new(2.0, 0.0), Point::new(0.0, 1.0)]).unwrap();
    for f in [1.0 / 3.0, 0.5, 2.0 / 3.0] {
        let c = vertical_cut_widths(&tri, f).unwrap();
        println!(
            "triangle, share {f:.3}: cut at x = {:.4}, heavy side {}, widths {:.4} / {:.4}, within quarters {}",
            c.cut_x,
            if c.heavy_left { "left" } else { "right" },
            c.left_width,
            c.right_width,
            c.within_quarters
        );
    }
}
