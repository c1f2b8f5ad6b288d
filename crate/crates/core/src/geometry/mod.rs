//! Geometric kernel shared by every layout algorithm.
//!
//! All coordinates live in (and around) the unit square. Polygons are kept
//! counterclockwise with duplicate and collinear vertices removed, so that
//! edge censuses (how many non-axis-parallel edges, how many reflex corners)
//! are meaningful.

mod convex;
mod ortho;
mod transform;

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use convex::{area_cut, clip_convex, convex_hull, convex_intersection_area, Line};
pub use ortho::{
    classify_shape, is_orthoconvex, is_staircase, ortho_difference, ortho_union, rectilinear_mismatch_area,
};
pub use transform::{canonicalize, Isometry};

/// Angular tolerance (radians) for parallelism and axis tests.
pub const ANGLE_TOL: f64 = 1e-9;

/// Points closer than this fraction of the bounding-box diagonal are treated
/// as the same vertex.
pub(crate) const MERGE_TOL: f64 = 1e-13;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("degenerate polygon: {0}")]
    DegeneratePolygon(String),
    #[error("polygon is not convex")]
    NotConvex,
    #[error("polygon has an edge that is not axis-parallel")]
    NotRectilinear,
    #[error("polygon is not orthoconvex")]
    NotOrthoconvex,
    #[error("cut line does not properly intersect the polygon")]
    NoIntersection,
    #[error("region is not a single simple polygon: {0}")]
    FragmentedRegion(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl std::ops::Sub for Point {
    type Output = Point;

    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl std::ops::Add for Point {
    type Output = Point;

    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn scale(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }

    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Point) -> f64 {
        (self - o).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// One of the four corners of an axis-aligned box.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Corner {
    BottomLeft,
    BottomRight,
    TopLeft,
    TopRight,
}

impl Corner {
    pub const ALL: [Corner; 4] = [
        Corner::BottomLeft,
        Corner::BottomRight,
        Corner::TopLeft,
        Corner::TopRight,
    ];

    pub fn from_sides(right: bool, top: bool) -> Corner {
        match (right, top) {
            (false, false) => Corner::BottomLeft,
            (true, false) => Corner::BottomRight,
            (false, true) => Corner::TopLeft,
            (true, true) => Corner::TopRight,
        }
    }

    pub fn is_right(self) -> bool {
        matches!(self, Corner::BottomRight | Corner::TopRight)
    }

    pub fn is_top(self) -> bool {
        matches!(self, Corner::TopLeft | Corner::TopRight)
    }

    pub fn opposite(self) -> Corner {
        Corner::from_sides(!self.is_right(), !self.is_top())
    }
}

/// Axis-aligned rectangle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub min: Point,
    pub max: Point,
}

impl Rect {
    pub fn new(min: Point, max: Point) -> Result<Rect, GeomError> {
        if !(min.is_finite() && max.is_finite()) || !(max.x > min.x && max.y > min.y) {
            return Err(GeomError::DegeneratePolygon(format!(
                "rectangle {min} .. {max} has no interior"
            )));
        }
        Ok(Rect { min, max })
    }

    pub fn from_bounds(x0: f64, y0: f64, x1: f64, y1: f64) -> Result<Rect, GeomError> {
        Rect::new(Point::new(x0, y0), Point::new(x1, y1))
    }

    pub fn unit() -> Rect {
        Rect {
            min: Point::new(0.0, 0.0),
            max: Point::new(1.0, 1.0),
        }
    }

    pub fn width(&self) -> f64 {
        self.max.x - self.min.x
    }

    pub fn height(&self) -> f64 {
        self.max.y - self.min.y
    }

    pub fn area(&self) -> f64 {
        self.width() * self.height()
    }

    /// `max(w/h, h/w)`, which coincides with the bounding-square definition.
    pub fn aspect(&self) -> f64 {
        let (w, h) = (self.width(), self.height());
        (w / h).max(h / w)
    }

    pub fn corner(&self, c: Corner) -> Point {
        Point::new(
            if c.is_right() { self.max.x } else { self.min.x },
            if c.is_top() { self.max.y } else { self.min.y },
        )
    }

    pub fn center(&self) -> Point {
        Point::new(0.5 * (self.min.x + self.max.x), 0.5 * (self.min.y + self.max.y))
    }

    pub fn contains(&self, p: Point) -> bool {
        p.x >= self.min.x && p.x <= self.max.x && p.y >= self.min.y && p.y <= self.max.y
    }

    pub fn to_polygon(&self) -> Polygon {
        Polygon {
            vertices: vec![
                self.min,
                Point::new(self.max.x, self.min.y),
                self.max,
                Point::new(self.min.x, self.max.y),
            ],
        }
    }
}

/// Shape classes used when reporting regions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "anchor")]
pub enum ShapeClass {
    Rectangle,
    LShape,
    SShape,
    Staircase(Corner),
    OrthoOther,
    Convex,
}

impl fmt::Display for ShapeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShapeClass::Rectangle => f.write_str("rectangle"),
            ShapeClass::LShape => f.write_str("l_shape"),
            ShapeClass::SShape => f.write_str("s_shape"),
            ShapeClass::Staircase(c) => write!(f, "staircase({c:?})"),
            ShapeClass::OrthoOther => f.write_str("ortho_other"),
            ShapeClass::Convex => f.write_str("convex"),
        }
    }
}

/// A simple polygon with counterclockwise vertices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Polygon {
    vertices: Vec<Point>,
}

impl Polygon {
    /// Builds a polygon, dropping repeated and collinear vertices and fixing
    /// the orientation to counterclockwise.
    pub fn new(points: Vec<Point>) -> Result<Polygon, GeomError> {
        if points.iter().any(|p| !p.is_finite()) {
            return Err(GeomError::DegeneratePolygon("non-finite coordinate".into()));
        }
        let mut pts = cleanup(points);
        if pts.len() < 3 {
            return Err(GeomError::DegeneratePolygon(format!(
                "{} distinct vertices",
                pts.len()
            )));
        }
        let a = signed_area(&pts);
        if a.abs() <= 1e-300 || !a.is_finite() {
            return Err(GeomError::DegeneratePolygon("zero area".into()));
        }
        if a < 0.0 {
            pts.reverse();
        }
        Ok(Polygon { vertices: pts })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    pub fn bbox(&self) -> Rect {
        let mut min = Point::new(f64::INFINITY, f64::INFINITY);
        let mut max = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in &self.vertices {
            min.x = min.x.min(p.x);
            min.y = min.y.min(p.y);
            max.x = max.x.max(p.x);
            max.y = max.y.max(p.y);
        }
        Rect { min, max }
    }

    /// Squared diameter by a pairwise scan; polygons here are small.
    pub fn diameter_sq(&self) -> f64 {
        let v = &self.vertices;
        let mut best: f64 = 0.0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                let d = v[i] - v[j];
                best = best.max(d.dot(d));
            }
        }
        best
    }

    /// Area of the smallest enclosing axis-aligned square.
    pub fn bounding_square_area(&self) -> f64 {
        let b = self.bbox();
        let s = b.width().max(b.height());
        s * s
    }

    /// Bounding-square aspect ratio: `area(σ(P)) / area(P)`.
    pub fn asp_ortho(&self) -> f64 {
        self.bounding_square_area() / self.area()
    }

    /// Diameter aspect ratio: `diam(P)² / area(P)`.
    pub fn asp_convex(&self) -> f64 {
        self.diameter_sq() / self.area()
    }

    /// Number of vertices where the boundary turns clockwise.
    pub fn reflex_count(&self) -> usize {
        let v = &self.vertices;
        let n = v.len();
        (0..n)
            .filter(|&i| {
                let a = v[(i + n - 1) % n];
                let b = v[i];
                let c = v[(i + 1) % n];
                (b - a).cross(c - b) < 0.0
            })
            .count()
    }

    /// Whether every edge is within [`ANGLE_TOL`] of an axis.
    pub fn is_rectilinear(&self) -> bool {
        self.edges().all(|(a, b)| edge_axis(a, b).is_some())
    }

    /// Number of edges that are not axis-parallel.
    pub fn non_axis_edge_count(&self) -> usize {
        self.edges().filter(|&(a, b)| edge_axis(a, b).is_none()).count()
    }

    /// Even-odd point-in-polygon test (boundary points may go either way).
    pub fn contains(&self, p: Point) -> bool {
        let v = &self.vertices;
        let n = v.len();
        let mut inside = false;
        let mut j = n - 1;
        for i in 0..n {
            let (a, b) = (v[i], v[j]);
            if (a.y > p.y) != (b.y > p.y) {
                let x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
                if p.x < x {
                    inside = !inside;
                }
            }
            j = i;
        }
        inside
    }

    /// Applies `f` to every vertex and re-normalizes orientation.
    pub fn map_points(&self, f: impl Fn(Point) -> Point) -> Result<Polygon, GeomError> {
        Polygon::new(self.vertices.iter().map(|&p| f(p)).collect())
    }
}

impl From<Rect> for Polygon {
    fn from(r: Rect) -> Polygon {
        r.to_polygon()
    }
}

/// Convex polygon, strictly convex after collinear-vertex removal.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvexPolygon(Polygon);

impl ConvexPolygon {
    pub fn new(points: Vec<Point>) -> Result<ConvexPolygon, GeomError> {
        ConvexPolygon::try_from(Polygon::new(points)?)
    }

    pub fn polygon(&self) -> &Polygon {
        &self.0
    }

    pub fn into_polygon(self) -> Polygon {
        self.0
    }

    pub fn vertices(&self) -> &[Point] {
        self.0.vertices()
    }

    pub fn area(&self) -> f64 {
        self.0.area()
    }

    pub fn bbox(&self) -> Rect {
        self.0.bbox()
    }

    pub fn asp_convex(&self) -> f64 {
        self.0.asp_convex()
    }

    pub fn width(&self) -> f64 {
        self.bbox().width()
    }

    pub fn height(&self) -> f64 {
        self.bbox().height()
    }

    pub fn non_axis_edge_count(&self) -> usize {
        self.0.non_axis_edge_count()
    }

    /// Direction angles in `[0, π)` of every edge.
    pub fn edge_angles(&self) -> Vec<f64> {
        self.0.edges().map(|(a, b)| line_angle(b - a)).collect()
    }
}

impl TryFrom<Polygon> for ConvexPolygon {
    type Error = GeomError;

    fn try_from(p: Polygon) -> Result<Self, GeomError> {
        let v = p.vertices();
        let n = v.len();
        for i in 0..n {
            let a = v[i];
            let b = v[(i + 1) % n];
            let c = v[(i + 2) % n];
            if (b - a).cross(c - b) <= 0.0 {
                return Err(GeomError::NotConvex);
            }
        }
        Ok(ConvexPolygon(p))
    }
}

impl From<Rect> for ConvexPolygon {
    fn from(r: Rect) -> ConvexPolygon {
        ConvexPolygon(r.to_polygon())
    }
}

/// Rectilinear polygon: every edge axis-parallel, orientations alternate.
#[derive(Clone, Debug, PartialEq)]
pub struct OrthoPolygon(Polygon);

impl OrthoPolygon {
    pub fn new(points: Vec<Point>) -> Result<OrthoPolygon, GeomError> {
        OrthoPolygon::try_from(Polygon::new(points)?)
    }

    pub fn polygon(&self) -> &Polygon {
        &self.0
    }

    pub fn into_polygon(self) -> Polygon {
        self.0
    }

    pub fn vertices(&self) -> &[Point] {
        self.0.vertices()
    }

    pub fn area(&self) -> f64 {
        self.0.area()
    }

    pub fn bbox(&self) -> Rect {
        self.0.bbox()
    }

    pub fn asp_ortho(&self) -> f64 {
        self.0.asp_ortho()
    }
}

impl TryFrom<Polygon> for OrthoPolygon {
    type Error = GeomError;

    fn try_from(p: Polygon) -> Result<Self, GeomError> {
        if !p.is_rectilinear() {
            return Err(GeomError::NotRectilinear);
        }
        Ok(OrthoPolygon(p))
    }
}

impl From<Rect> for OrthoPolygon {
    fn from(r: Rect) -> OrthoPolygon {
        OrthoPolygon(r.to_polygon())
    }
}

/// Bounding-square aspect ratio of a rectilinear region.
pub fn asp_ortho(p: &OrthoPolygon) -> f64 {
    p.asp_ortho()
}

/// Diameter-based aspect ratio of a convex region.
pub fn asp_convex(p: &ConvexPolygon) -> f64 {
    p.asp_convex()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Axis {
    Horizontal,
    Vertical,
}

/// Which axis an edge is parallel to, if any.
pub(crate) fn edge_axis(a: Point, b: Point) -> Option<Axis> {
    let d = b - a;
    let len = d.norm();
    if len == 0.0 {
        return None;
    }
    if (d.y / len).abs() <= ANGLE_TOL {
        Some(Axis::Horizontal)
    } else if (d.x / len).abs() <= ANGLE_TOL {
        Some(Axis::Vertical)
    } else {
        None
    }
}

/// Direction of a vector as a line angle in `[0, π)`.
pub fn line_angle(d: Point) -> f64 {
    let mut a = d.y.atan2(d.x);
    if a < 0.0 {
        a += PI;
    }
    if a >= PI {
        a -= PI;
    }
    a
}

/// Smallest angle between two undirected line directions.
pub fn angle_between_lines(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(PI);
    d.min(PI - d)
}

pub(crate) fn signed_area(v: &[Point]) -> f64 {
    let n = v.len();
    if n == 0 {
        return 0.0;
    }
    // relative to the first vertex, so small polygons far from the origin
    // keep their precision
    let o = v[0];
    let mut s = 0.0;
    for i in 1..n.saturating_sub(1) {
        s += (v[i] - o).cross(v[i + 1] - o);
    }
    0.5 * s
}

/// Removes repeated vertices, spikes and collinear vertices.
fn cleanup(mut pts: Vec<Point>) -> Vec<Point> {
    let (mut lo, mut hi) = (
        Point::new(f64::INFINITY, f64::INFINITY),
        Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
    );
    for p in &pts {
        lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    // never below a few ulps of the coordinates themselves
    let magnitude = [lo.x, lo.y, hi.x, hi.y]
        .iter()
        .fold(0.0f64, |m, v| m.max(v.abs()));
    let tol = (MERGE_TOL * hi.dist(lo)).max(4.0 * f64::EPSILON * magnitude);
    loop {
        let n = pts.len();
        if n < 3 {
            return pts;
        }
        let mut out: Vec<Point> = Vec::with_capacity(n);
        for &p in &pts {
            if out.last().is_some_and(|q: &Point| q.dist(p) <= tol) {
                continue;
            }
            out.push(p);
        }
        while out.len() > 1 && out[0].dist(*out.last().unwrap()) <= tol {
            out.pop();
        }
        let n = out.len();
        if n < 3 {
            return out;
        }
        let mut keep = vec![true; n];
        let mut changed = false;
        for i in 0..n {
            let a = out[(i + n - 1) % n];
            let b = out[i];
            let c = out[(i + 1) % n];
            let u = b - a;
            let w = c - b;
            let s = u.cross(w) / (u.norm() * w.norm());
            if s.abs() <= ANGLE_TOL {
                keep[i] = false;
                changed = true;
                break;
            }
        }
        if !changed && out.len() == pts.len() {
            return out;
        }
        pts = out
            .into_iter()
            .zip(keep)
            .filter_map(|(p, k)| k.then_some(p))
            .collect();
    }
}
