//! Convex treemaps: recursive polygon cuts whose aspect ratio grows only with
//! the depth of the input tree.
//!
//! Each binary node carries a depth label `d`. A region at label `d` has at
//! most `d + 4` edges that are not axis-parallel, and every such edge is at
//! least `π / (2(d + 6))` away from every other edge direction and from both
//! axes. New cut directions are introduced only when the heavier child starts
//! a new level; otherwise the cut is axis-parallel.

use std::f64::consts::{FRAC_PI_2, PI};

use thiserror::Error;

use crate::geometry::{
    angle_between_lines, area_cut, clip_convex, edge_axis, Axis, ConvexPolygon, GeomError, Polygon, Rect,
    ANGLE_TOL,
};
use crate::layout::{Algorithm, Layout};
use crate::partition::heavier_low_end;
use crate::tree_model::{to_binary_convex, BinId, WeightedTree};

/// Bounding-box ratio allowed when a region has a parallel axis pair.
pub const BOX_RATIO: f64 = 4.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConvexLayoutError {
    #[error("axis cut fraction {0} outside [1/3, 2/3]")]
    FractionOutOfRange(f64),
    #[error(transparent)]
    Geometry(#[from] GeomError),
}

/// Minimum edge separation required at depth label `d`.
pub fn separation_angle(d: usize) -> f64 {
    PI / (2.0 * (d as f64 + 6.0))
}

/// A region together with the depth label it is laid out under.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvexRegionState {
    pub region: ConvexPolygon,
    pub d: usize,
}

impl ConvexRegionState {
    pub fn non_axis_edges(&self) -> usize {
        self.region.non_axis_edge_count()
    }

    /// Edge-count and separation invariants for this label.
    pub fn holds_invariants(&self) -> bool {
        self.non_axis_edges() <= self.d + 4
            && check_k_phi(&self.region, BOX_RATIO, separation_angle(self.d)).ok
    }
}

/// Result of checking the separated-polygon conditions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KPhiReport {
    /// Smallest angle between a non-axis edge and any other edge or axis;
    /// `π/2` when there is no non-axis edge.
    pub min_pairwise_angle: f64,
    pub has_two_horizontal: bool,
    pub has_two_vertical: bool,
    /// Bounding-box width over height.
    pub width_height_ratio: f64,
    pub ok: bool,
}

/// Checks that `p` has no parallel edges other than one horizontal and one
/// vertical pair, that every non-axis edge is at least `phi` from every other
/// edge and from both axes, and that a parallel pair implies a bounding-box
/// ratio of at most `k` in that direction.
pub fn check_k_phi(p: &ConvexPolygon, k: f64, phi: f64) -> KPhiReport {
    let mut horizontal = 0;
    let mut vertical = 0;
    let mut slanted = Vec::new();
    for (a, b) in p.polygon().edges() {
        match edge_axis(a, b) {
            Some(Axis::Horizontal) => horizontal += 1,
            Some(Axis::Vertical) => vertical += 1,
            None => slanted.push(crate::geometry::line_angle(b - a)),
        }
    }
    let mut min_angle = FRAC_PI_2;
    for (i, &e) in slanted.iter().enumerate() {
        min_angle = min_angle
            .min(angle_between_lines(e, 0.0))
            .min(angle_between_lines(e, FRAC_PI_2));
        for &f in &slanted[i + 1..] {
            min_angle = min_angle.min(angle_between_lines(e, f));
        }
    }
    let b = p.bbox();
    let ratio = b.width() / b.height();
    let two_h = horizontal >= 2;
    let two_v = vertical >= 2;
    let ok =
        min_angle >= phi - ANGLE_TOL && (!two_h || ratio <= k + 1e-9) && (!two_v || 1.0 / ratio <= k + 1e-9);
    KPhiReport {
        min_pairwise_angle: min_angle,
        has_two_horizontal: two_h,
        has_two_vertical: two_v,
        width_height_ratio: ratio,
        ok,
    }
}

/// Direction in `[0, π)` bisecting the widest angular gap between the edge
/// directions of `p` and the two axes. Ties go to the first gap.
pub fn choose_direction(p: &ConvexPolygon) -> f64 {
    let mut angles = p.edge_angles();
    angles.push(0.0);
    angles.push(FRAC_PI_2);
    for a in &mut angles {
        if *a >= PI - ANGLE_TOL {
            *a = 0.0;
        }
    }
    angles.sort_by(f64::total_cmp);
    angles.dedup_by(|b, a| *b - *a <= ANGLE_TOL);
    let n = angles.len();
    let mut best = (f64::NEG_INFINITY, 0.0);
    for i in 0..n {
        let start = angles[i];
        let end = if i + 1 < n { angles[i + 1] } else { angles[0] + PI };
        let gap = end - start;
        if gap > best.0 + 1e-12 {
            best = (gap, start + gap / 2.0);
        }
    }
    best.1.rem_euclid(PI)
}

/// Cut at a new direction. Returns `(heavier piece, lighter piece)`.
///
/// The direction comes from [`choose_direction`]. An equal-area cut in that
/// direction picks the half with fewer non-axis edges (ties to the left half);
/// the real cut is parallel and keeps the lighter piece inside that half.
pub fn split_case1(
    p: &ConvexPolygon,
    w1: f64,
    w2: f64,
) -> Result<(ConvexPolygon, ConvexPolygon), ConvexLayoutError> {
    let theta = choose_direction(p);
    let half = area_cut(p, theta, 0.5);
    let (l, r) = clip_convex(p, &half)?;
    let lighter_left = l.non_axis_edge_count() <= r.non_axis_edge_count();
    let total = w1 + w2;
    if lighter_left {
        let (a, b) = clip_convex(p, &area_cut(p, theta, w2 / total))?;
        Ok((b, a))
    } else {
        let (a, b) = clip_convex(p, &area_cut(p, theta, w1 / total))?;
        Ok((a, b))
    }
}

/// Axis-parallel cut orthogonal to the longer side of the bounding box. The
/// heavier share goes to the end whose outer quarter holds more area, which
/// keeps both pieces at least a quarter as wide. Returns `(heavier, lighter)`.
pub fn split_case2(
    p: &ConvexPolygon,
    w1: f64,
    w2: f64,
) -> Result<(ConvexPolygon, ConvexPolygon), ConvexLayoutError> {
    let f = w1 / (w1 + w2);
    if !(1.0 / 3.0 - 1e-12..=2.0 / 3.0 + 1e-12).contains(&f) {
        return Err(ConvexLayoutError::FractionOutOfRange(f));
    }
    let b = p.bbox();
    let vertical = b.width() >= b.height();
    // the left side of the cut line is the low end in both directions
    let theta = if vertical { FRAC_PI_2 } else { PI };
    if heavier_low_end(p, vertical) {
        let (low, high) = clip_convex(p, &area_cut(p, theta, f))?;
        Ok((low, high))
    } else {
        let (low, high) = clip_convex(p, &area_cut(p, theta, 1.0 - f))?;
        Ok((high, low))
    }
}

/// How often each cut kind was used.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ConvexTrace {
    pub new_direction_cuts: usize,
    pub axis_cuts: usize,
}

/// Convex treemap of `t` in the unit square.
pub fn layout_convex(t: &WeightedTree) -> Result<Layout, ConvexLayoutError> {
    layout_convex_traced(t).map(|(l, _)| l)
}

pub fn layout_convex_traced(t: &WeightedTree) -> Result<(Layout, ConvexTrace), ConvexLayoutError> {
    let conv = to_binary_convex(t);
    let b = &conv.tree;
    let mut regions: Vec<Option<ConvexPolygon>> = vec![None; b.len()];
    let mut trace = ConvexTrace::default();
    let mut stack: Vec<(BinId, ConvexPolygon)> = vec![(b.root(), ConvexPolygon::from(Rect::unit()))];
    while let Some((id, poly)) = stack.pop() {
        if let Some([l, r]) = b.children(id) {
            let (heavy, light) = if b.weight(l) >= b.weight(r) {
                (l, r)
            } else {
                (r, l)
            };
            let (w1, w2) = (b.weight(heavy), b.weight(light));
            let (ph, pl) = if b.node(heavy).d > b.node(id).d {
                trace.new_direction_cuts += 1;
                split_case1(&poly, w1, w2)?
            } else {
                trace.axis_cuts += 1;
                split_case2(&poly, w1, w2)?
            };
            stack.push((light, pl));
            stack.push((heavy, ph));
        }
        regions[id] = Some(poly);
    }
    let polygons: Vec<Polygon> = conv
        .node_map
        .iter()
        .map(|&bid| {
            regions[bid]
                .clone()
                .expect("every binary node gets a region")
                .into_polygon()
        })
        .collect();
    Ok((Layout::new(Algorithm::Convex, polygons), trace))
}
