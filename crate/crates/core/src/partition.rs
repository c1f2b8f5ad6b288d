//! Two-way weight balancing and rectangle/polygon splitting bounds.

use thiserror::Error;

use crate::geometry::{
    area_cut, clip_convex, convex_intersection_area, ConvexPolygon, GeomError, Point, Rect,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PartitionError {
    #[error("need at least two items, got {0}")]
    TooFewItems(usize),
    #[error("bad weights: {0}")]
    BadWeights(String),
}

/// Two bins of item indices; `w1 >= w2`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightSplit {
    pub h1: Vec<usize>,
    pub h2: Vec<usize>,
    pub w1: f64,
    pub w2: f64,
}

/// Longest-processing-time greedy split into two bins.
///
/// Items are taken in non-increasing weight order (ties by index) and each
/// goes to the currently lighter bin (ties to the first). The heavier bin is
/// reported as `h1`.
pub fn lpt_partition(weights: &[f64]) -> Result<WeightSplit, PartitionError> {
    if weights.len() < 2 {
        return Err(PartitionError::TooFewItems(weights.len()));
    }
    if weights.iter().any(|w| !(*w > 0.0 && w.is_finite())) {
        return Err(PartitionError::BadWeights("weights must be positive".into()));
    }
    let mut order: Vec<usize> = (0..weights.len()).collect();
    order.sort_by(|&a, &b| weights[b].total_cmp(&weights[a]).then(a.cmp(&b)));
    let (mut h1, mut h2) = (Vec::new(), Vec::new());
    let (mut w1, mut w2) = (0.0, 0.0);
    for i in order {
        if w1 <= w2 {
            h1.push(i);
            w1 += weights[i];
        } else {
            h2.push(i);
            w2 += weights[i];
        }
    }
    if w2 > w1 {
        std::mem::swap(&mut h1, &mut h2);
        std::mem::swap(&mut w1, &mut w2);
    }
    Ok(WeightSplit { h1, h2, w1, w2 })
}

/// Upper bound on the heavier LPT bin when every item is at most `t·total`,
/// for `t` in `[3/10, 2/3]`.
pub fn lpt_bound(t: f64) -> Option<f64> {
    if (0.3..1.0 / 3.0).contains(&t) {
        Some(2.0 * t)
    } else if (1.0 / 3.0..=2.0 / 3.0).contains(&t) {
        Some(2.0 / 3.0)
    } else {
        None
    }
}

/// Cuts `r` perpendicular to its longer side (vertical on ties) into pieces
/// of area `w1` and `w2`. The first piece is the left or bottom one.
pub fn split_rect(r: &Rect, w1: f64, w2: f64) -> Result<(Rect, Rect), PartitionError> {
    let total = w1 + w2;
    if !(w1 > 0.0 && w2 > 0.0) || (total - r.area()).abs() > 1e-9 * r.area() {
        return Err(PartitionError::BadWeights(format!(
            "{w1} + {w2} does not match area {}",
            r.area()
        )));
    }
    let f = w1 / total;
    Ok(if r.width() >= r.height() {
        let x = r.min.x + f * r.width();
        (
            Rect {
                min: r.min,
                max: Point::new(x, r.max.y),
            },
            Rect {
                min: Point::new(x, r.min.y),
                max: r.max,
            },
        )
    } else {
        let y = r.min.y + f * r.height();
        (
            Rect {
                min: r.min,
                max: Point::new(r.max.x, y),
            },
            Rect {
                min: Point::new(r.min.x, y),
                max: r.max,
            },
        )
    })
}

/// Whether the low end (left, or bottom when `vertical` is false) of `p`
/// holds at least as much area as the high end, measured over the outer
/// quarter of the bounding box on each side.
pub fn heavier_low_end(p: &ConvexPolygon, vertical: bool) -> bool {
    let b = p.bbox();
    let (low, high) = if vertical {
        let q = b.width() / 4.0;
        (
            Rect::from_bounds(b.min.x, b.min.y, b.min.x + q, b.max.y),
            Rect::from_bounds(b.max.x - q, b.min.y, b.max.x, b.max.y),
        )
    } else {
        let q = b.height() / 4.0;
        (
            Rect::from_bounds(b.min.x, b.min.y, b.max.x, b.min.y + q),
            Rect::from_bounds(b.min.x, b.max.y - q, b.max.x, b.max.y),
        )
    };
    let area =
        |r: Result<Rect, GeomError>| r.map_or(0.0, |r| convex_intersection_area(p, &ConvexPolygon::from(r)));
    area(low) >= area(high)
}

/// Outcome of a vertical area cut of a convex polygon.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CutWidthReport {
    pub cut_x: f64,
    /// The larger share went to the left piece.
    pub heavy_left: bool,
    pub left_width: f64,
    pub right_width: f64,
    pub width: f64,
    pub within_quarters: bool,
}

/// Vertical cut splitting `p` into shares `fraction` and `1 - fraction`,
/// the larger share on the end with more area in its outer quarter, with a
/// check that both piece widths lie in `[w/4, 3w/4]`.
pub fn vertical_cut_widths(p: &ConvexPolygon, fraction: f64) -> Result<CutWidthReport, GeomError> {
    let heavy = fraction.max(1.0 - fraction);
    let heavy_left = heavier_low_end(p, true);
    let left_share = if heavy_left { heavy } else { 1.0 - heavy };
    let line = area_cut(p, std::f64::consts::FRAC_PI_2, left_share);
    let (left, right) = clip_convex(p, &line)?;
    let (lw, rw) = (left.width(), right.width());
    let w = p.width();
    let tol = 1e-9 * w;
    Ok(CutWidthReport {
        cut_x: line.point.x,
        heavy_left,
        left_width: lw,
        right_width: rw,
        width: w,
        within_quarters: [lw, rw]
            .iter()
            .all(|&x| x >= w / 4.0 - tol && x <= 0.75 * w + tol),
    })
}
