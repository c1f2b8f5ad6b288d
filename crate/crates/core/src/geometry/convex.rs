use super::{signed_area, ConvexPolygon, GeomError, Point};

/// A directed line through `point` with unit direction `dir`.
///
/// The left side of the line is `{q : dir × (q - point) > 0}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Line {
    pub point: Point,
    pub dir: Point,
}

impl Line {
    pub fn new(point: Point, dir: Point) -> Line {
        let n = dir.norm();
        Line {
            point,
            dir: dir.scale(1.0 / n),
        }
    }

    /// Line through `point` whose direction makes angle `theta` with the x-axis.
    pub fn from_angle(point: Point, theta: f64) -> Line {
        Line {
            point,
            dir: unit_dir(theta),
        }
    }

    pub fn vertical(x: f64) -> Line {
        Line {
            point: Point::new(x, 0.0),
            dir: Point::new(0.0, 1.0),
        }
    }

    pub fn horizontal(y: f64) -> Line {
        Line {
            point: Point::new(0.0, y),
            dir: Point::new(-1.0, 0.0),
        }
    }

    /// Positive on the left of the line.
    pub fn side(&self, q: Point) -> f64 {
        self.dir.cross(q - self.point)
    }
}

/// Unit vector at angle `theta`, exact for multiples of a right angle.
pub(crate) fn unit_dir(theta: f64) -> Point {
    let quarter = theta / std::f64::consts::FRAC_PI_2;
    let k = quarter.round();
    if (quarter - k).abs() < 1e-14 {
        match (k as i64).rem_euclid(4) {
            0 => Point::new(1.0, 0.0),
            1 => Point::new(0.0, 1.0),
            2 => Point::new(-1.0, 0.0),
            _ => Point::new(0.0, -1.0),
        }
    } else {
        Point::new(theta.cos(), theta.sin())
    }
}

/// Splits a convex polygon by a line into its (left, right) pieces.
///
/// Vertices within `1e-12 · diam` of the line are treated as lying on it, and
/// both pieces reuse the same intersection points, so the shared edge matches
/// bit for bit.
pub fn clip_convex(p: &ConvexPolygon, line: &Line) -> Result<(ConvexPolygon, ConvexPolygon), GeomError> {
    let v = p.vertices();
    let eps = 1e-12 * p.polygon().diameter_sq().sqrt();
    let s: Vec<f64> = v
        .iter()
        .map(|&q| {
            let t = line.side(q);
            if t.abs() <= eps {
                0.0
            } else {
                t
            }
        })
        .collect();
    if s.iter().all(|&t| t >= 0.0) || s.iter().all(|&t| t <= 0.0) {
        return Err(GeomError::NoIntersection);
    }
    let n = v.len();
    let mut left = Vec::with_capacity(n + 2);
    let mut right = Vec::with_capacity(n + 2);
    for i in 0..n {
        let j = (i + 1) % n;
        let (a, b) = (v[i], v[j]);
        let (sa, sb) = (s[i], s[j]);
        if sa >= 0.0 {
            left.push(a);
        }
        if sa <= 0.0 {
            right.push(a);
        }
        if (sa > 0.0 && sb < 0.0) || (sa < 0.0 && sb > 0.0) {
            let t = sa / (sa - sb);
            let mut x = a + (b - a).scale(t);
            // keep axis-parallel cuts and edges exactly axis-parallel
            if line.dir.x == 0.0 {
                x.x = line.point.x;
            } else if line.dir.y == 0.0 {
                x.y = line.point.y;
            }
            if a.x == b.x {
                x.x = a.x;
            } else if a.y == b.y {
                x.y = a.y;
            }
            left.push(x);
            right.push(x);
        }
    }
    let left = ConvexPolygon::new(left).map_err(|_| GeomError::NoIntersection)?;
    let right = ConvexPolygon::new(right).map_err(|_| GeomError::NoIntersection)?;
    Ok((left, right))
}

/// Keeps the part of `v` on the left of (or on) the line.
fn clip_half(v: &[Point], line: &Line) -> Vec<Point> {
    let n = v.len();
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..n {
        let (a, b) = (v[i], v[(i + 1) % n]);
        let (sa, sb) = (line.side(a), line.side(b));
        if sa >= 0.0 {
            out.push(a);
        }
        if (sa > 0.0 && sb < 0.0) || (sa < 0.0 && sb > 0.0) {
            let t = sa / (sa - sb);
            out.push(a + (b - a).scale(t));
        }
    }
    out
}

fn left_area(v: &[Point], dir: Point, offset: f64) -> f64 {
    let normal = Point::new(-dir.y, dir.x);
    let line = Line {
        point: normal.scale(offset),
        dir,
    };
    let part = clip_half(v, &line);
    if part.len() < 3 {
        0.0
    } else {
        signed_area(&part).max(0.0)
    }
}

/// Finds the line with direction `theta` whose left piece has area
/// `fraction · area(p)`.
///
/// The left area is piecewise quadratic in the line offset, with breakpoints
/// at the vertices; the bracketing piece is solved in closed form and the
/// result falls back to bisection if the closed form misses the tolerance.
pub fn area_cut(p: &ConvexPolygon, theta: f64, fraction: f64) -> Line {
    let dir = unit_dir(theta);
    let normal = Point::new(-dir.y, dir.x);
    // work relative to the first vertex for precision on small polygons
    let origin = p.vertices()[0];
    let local: Vec<Point> = p.vertices().iter().map(|&q| q - origin).collect();
    let v = &local[..];
    let total = p.area();
    let target = fraction.clamp(0.0, 1.0) * total;
    let area_at = |c: f64| left_area(v, dir, c);

    let mut hs: Vec<f64> = v.iter().map(|&q| dir.cross(q)).collect();
    hs.sort_by(f64::total_cmp);
    hs.dedup();

    // left area decreases from `total` at hs[0] to 0 at the last breakpoint
    let mut lo = hs[0];
    let mut hi = *hs.last().unwrap();
    let (mut a_lo, mut a_hi) = (total, 0.0);
    for w in hs.windows(2) {
        let a1 = area_at(w[1]);
        if a1 <= target {
            lo = w[0];
            hi = w[1];
            a_lo = area_at(w[0]);
            a_hi = a1;
            break;
        }
    }

    let tol = 1e-13 * total;
    let mut c = {
        let mid = 0.5 * (lo + hi);
        let a_mid = area_at(mid);
        let qa = 2.0 * a_hi + 2.0 * a_lo - 4.0 * a_mid;
        let qb = (a_hi - a_lo) - qa;
        let qc = a_lo - target;
        let t = solve_unit_quadratic(qa, qb, qc);
        lo + t * (hi - lo)
    };
    if (area_at(c) - target).abs() > tol {
        let (mut l, mut h) = (lo, hi);
        for _ in 0..200 {
            let m = 0.5 * (l + h);
            if m <= l || m >= h {
                break;
            }
            if area_at(m) > target {
                l = m;
            } else {
                h = m;
            }
        }
        c = 0.5 * (l + h);
    }
    Line {
        point: origin + normal.scale(c),
        dir,
    }
}

/// Root of `a t² + b t + c = 0` in `[0, 1]`, clamped.
fn solve_unit_quadratic(a: f64, b: f64, c: f64) -> f64 {
    let t = if a.abs() <= 1e-14 * (b.abs() + c.abs()) {
        if b == 0.0 {
            0.5
        } else {
            -c / b
        }
    } else {
        let disc = (b * b - 4.0 * a * c).max(0.0).sqrt();
        let q = -0.5 * (b + b.signum() * disc);
        let r1 = q / a;
        let r2 = if q != 0.0 { c / q } else { r1 };
        let in_range = |t: f64| (-1e-9..=1.0 + 1e-9).contains(&t);
        if in_range(r1) && (!in_range(r2) || (r1 - 0.5).abs() <= (r2 - 0.5).abs()) {
            r1
        } else {
            r2
        }
    };
    if t.is_finite() {
        t.clamp(0.0, 1.0)
    } else {
        0.5
    }
}

/// Convex hull by Andrew's monotone chain.
pub fn convex_hull(points: &[Point]) -> Result<ConvexPolygon, GeomError> {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup();
    if pts.len() < 3 {
        return Err(GeomError::DegeneratePolygon("hull of < 3 points".into()));
    }
    let turn = |o: Point, a: Point, b: Point| (a - o).cross(b - o);
    let mut hull: Vec<Point> = Vec::with_capacity(2 * pts.len());
    for &p in &pts {
        while hull.len() >= 2 && turn(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower && turn(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    ConvexPolygon::new(hull)
}

/// Area of the intersection of two convex polygons.
pub fn convex_intersection_area(a: &ConvexPolygon, b: &ConvexPolygon) -> f64 {
    let mut part: Vec<Point> = a.vertices().to_vec();
    for (p, q) in b.polygon().edges() {
        if part.len() < 3 {
            return 0.0;
        }
        part = clip_half(&part, &Line::new(p, q - p));
    }
    if part.len() < 3 {
        0.0
    } else {
        signed_area(&part).max(0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Rect;
    use std::f64::consts::PI;

    fn tri() -> ConvexPolygon {
        ConvexPolygon::new(vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(0.0, 1.0),
        ])
        .unwrap()
    }

    #[test]
    fn clip_unit_square_vertically() {
        let sq = ConvexPolygon::from(Rect::unit());
        let (l, r) = clip_convex(&sq, &Line::vertical(0.3)).unwrap();
        assert!((l.area() - 0.3).abs() < 1e-15);
        assert!((r.area() - 0.7).abs() < 1e-15);
    }

    #[test]
    fn clip_square_on_diagonal() {
        let sq = ConvexPolygon::from(Rect::unit());
        let line = Line::from_angle(Point::new(0.5, 0.5), PI / 4.0);
        let (l, r) = clip_convex(&sq, &line).unwrap();
        assert!((l.area() - 0.5).abs() < 1e-15);
        assert!((r.area() - 0.5).abs() < 1e-15);
        assert_eq!(l.vertices().len(), 3);
    }

    #[test]
    fn clip_triangle() {
        let (l, r) = clip_convex(&tri(), &Line::vertical(0.5)).unwrap();
        assert!((l.area() - 0.375).abs() < 1e-15);
        assert!((r.area() - 0.125).abs() < 1e-15);
    }

    #[test]
    fn clip_outside_fails() {
        let sq = ConvexPolygon::from(Rect::unit());
        assert_eq!(
            clip_convex(&sq, &Line::vertical(2.0)).unwrap_err(),
            GeomError::NoIntersection
        );
        // touching a vertex only
        assert!(clip_convex(&sq, &Line::vertical(1.0)).is_err());
    }

    #[test]
    fn area_cut_square_half() {
        let sq = ConvexPolygon::from(Rect::unit());
        let line = area_cut(&sq, PI / 2.0, 0.5);
        assert!((line.point.x - 0.5).abs() < 1e-12);
    }

    #[test]
    fn area_cut_triangle_three_quarters() {
        let line = area_cut(&tri(), PI / 2.0, 0.75);
        assert!((line.point.x - 0.5).abs() < 1e-12, "{line:?}");
    }

    #[test]
    fn area_cut_square_diagonal() {
        let sq = ConvexPolygon::from(Rect::unit());
        let line = area_cut(&sq, PI / 4.0, 0.5);
        // the main diagonal: both (0,0) and (1,1) on the line
        assert!(line.side(Point::new(0.0, 0.0)).abs() < 1e-12);
        assert!(line.side(Point::new(1.0, 1.0)).abs() < 1e-12);
    }

    #[test]
    fn area_cut_hits_fraction() {
        let p = convex_hull(&[
            Point::new(0.1, 0.0),
            Point::new(0.9, 0.2),
            Point::new(1.0, 0.8),
            Point::new(0.3, 1.0),
            Point::new(0.0, 0.4),
        ])
        .unwrap();
        for k in 1..20 {
            let f = k as f64 / 20.0;
            for theta in [0.0, 0.3, 1.0, PI / 2.0, 2.5] {
                let line = area_cut(&p, theta, f);
                let (l, _) = clip_convex(&p, &line).unwrap();
                assert!((l.area() / p.area() - f).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn hull_of_square_with_interior_points() {
        let h = convex_hull(&[
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(0.5, 0.5),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
            Point::new(0.5, 0.0),
        ])
        .unwrap();
        assert_eq!(h.vertices().len(), 4);
        assert_eq!(h.area(), 1.0);
    }

    #[test]
    fn intersection_area_of_overlapping_squares() {
        let a = ConvexPolygon::from(Rect::unit());
        let b = ConvexPolygon::from(Rect::from_bounds(0.5, 0.5, 1.5, 1.5).unwrap());
        assert!((convex_intersection_area(&a, &b) - 0.25).abs() < 1e-15);
        let c = ConvexPolygon::from(Rect::from_bounds(1.0, 0.0, 2.0, 1.0).unwrap());
        assert!(convex_intersection_area(&a, &c) < 1e-15);
    }
}
