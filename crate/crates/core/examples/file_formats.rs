//! Hierarchy and layout files: CSV in, nested JSON out, and a layout record
//! that reloads to the same geometry.
//!
//! cargo run --example file_formats

use bounded_treemap::io::{emit_layout_json, emit_tree_json, parse_layout_json, parse_tree_csv};
use bounded_treemap::layout::{compute_layout, Algorithm};

fn main() {
    let csv = "path,weight\n\
               home/docs/report.pdf,12\n\
               home/docs/notes.txt,1\n\
               home/music/a.flac,30\n\
               home/music/b.flac,25\n\
               home/photos,40\n";
    let t = parse_tree_csv(csv).expect("valid csv");
    println!("{}", emit_tree_json(&t));

    let (layout, _) = compute_layout(&t, Algorithm::Ortho).expect("layout");
    let record = emit_layout_json(&t, &layout);
    let back = parse_layout_json(&record, &t).expect("valid record");
    println!(
        "layout record: {} bytes, reloads identically: {}",
        record.len(),
        back == layout
    );

    match parse_tree_csv("path,weight\nhome/a,1\nhome/b,-2\n") {
        Ok(_) => println!("unexpectedly accepted"),
        Err(e) => println!("rejected: {e}"),
    }
}
