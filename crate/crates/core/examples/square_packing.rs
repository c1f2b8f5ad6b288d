//! Square packing through the single-level reduction: a packing exists
//! exactly when the reduced instance has a layout of aspect ratio 1.
//!
//! cargo run --example square_packing

use bounded_treemap::layout::Algorithm;
use bounded_treemap::single_level::{
    find_packing, layout_from_packing, reduce_square_packing, SquarePackingInstance,
};
use bounded_treemap::verifier::verify;

fn main() {
    for (side, sides) in [
        (3, vec![2, 2]),
        (4, vec![2, 2, 2, 2]),
        (5, vec![3, 2, 2, 1]),
        (4, vec![3, 1, 1]),
    ] {
        let sp = SquarePackingInstance::new(side, sides.clone()).expect("fits by area");
        let w = sp.reduce().expect("valid instance");
        print!(
            "{sides:?} in {side}: weights {:?}/{}",
            w.numerators, w.denominator
        );
        match find_packing(&sp).expect("small instance") {
            None => println!(" -> no packing"),
            Some(placement) => {
                let layout = layout_from_packing(&sp, &placement);
                let t = reduce_square_packing(&sp).unwrap().tree();
                let rep = verify(&t, &layout, Algorithm::Single).expect("complete layout");
                let worst = rep.regions.iter().map(|r| r.asp_ortho).fold(0.0, f64::max);
                println!(
                    " -> packed at {placement:?}, max aspect {worst:.12}, verify {}",
                    if rep.pass { "pass" } else { "FAIL" }
                );
            }
        }
    }
}
