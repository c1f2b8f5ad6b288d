//! Rectilinear predicates and grid-based boolean operations.

use std::collections::HashMap;

use super::{edge_axis, Axis, Corner, GeomError, OrthoPolygon, Point, Polygon, Rect, ShapeClass};

/// Coordinates closer than this are merged when building a grid.
const SNAP: f64 = 1e-12;

/// True iff every horizontal and vertical line meets `p` in one segment.
pub fn is_orthoconvex(p: &OrthoPolygon) -> bool {
    monotone_in(p.polygon(), Axis::Vertical) && monotone_in(p.polygon(), Axis::Horizontal)
}

/// Checks that every line orthogonal to the edges of kind `axis` crosses
/// exactly zero or two of them.
fn monotone_in(p: &Polygon, axis: Axis) -> bool {
    let key = |q: Point| if axis == Axis::Vertical { q.y } else { q.x };
    let cross = |q: Point| if axis == Axis::Vertical { q.x } else { q.y };
    let edges: Vec<(f64, f64, f64)> = p
        .edges()
        .filter(|&(a, b)| edge_axis(a, b) == Some(axis))
        .map(|(a, b)| {
            let (k0, k1) = (key(a), key(b));
            (k0.min(k1), k0.max(k1), cross(a))
        })
        .collect();
    let mut levels: Vec<f64> = p.vertices().iter().map(|&q| key(q)).collect();
    levels.sort_by(f64::total_cmp);
    levels.dedup();
    levels.windows(2).all(|w| {
        let mid = 0.5 * (w[0] + w[1]);
        let hits = edges.iter().filter(|&&(lo, hi, _)| lo < mid && mid < hi).count();
        hits == 0 || hits == 2
    })
}

/// Staircase test: the bounding-box corner `anchor` must be a vertex `v`,
/// and the chain from `v`'s successor around to its predecessor must be
/// monotone in both coordinates.
pub fn is_staircase(p: &OrthoPolygon, anchor: Corner) -> bool {
    let b = p.bbox();
    let target = b.corner(anchor);
    let tol = SNAP * (1.0 + b.width().max(b.height()));
    let v = p.vertices();
    let n = v.len();
    let Some(k) = v.iter().position(|q| q.dist(target) <= tol) else {
        return false;
    };
    let chain: Vec<Point> = (1..n).map(|i| v[(k + i) % n]).collect();
    monotone_seq(chain.iter().map(|q| q.x), tol) && monotone_seq(chain.iter().map(|q| q.y), tol)
}

fn monotone_seq(vals: impl Iterator<Item = f64>, tol: f64) -> bool {
    let vals: Vec<f64> = vals.collect();
    let up = vals.windows(2).all(|w| w[1] >= w[0] - tol);
    let down = vals.windows(2).all(|w| w[1] <= w[0] + tol);
    up || down
}

/// Classifies an orthoconvex polygon by its reflex-corner census.
pub fn classify_shape(p: &OrthoPolygon) -> Result<ShapeClass, GeomError> {
    if !is_orthoconvex(p) {
        return Err(GeomError::NotOrthoconvex);
    }
    Ok(match p.polygon().reflex_count() {
        0 => ShapeClass::Rectangle,
        1 => ShapeClass::LShape,
        2 => ShapeClass::SShape,
        _ => Corner::ALL
            .into_iter()
            .find(|&c| is_staircase(p, c))
            .map_or(ShapeClass::OrthoOther, ShapeClass::Staircase),
    })
}

/// Union of rectilinear polygons that share boundary but not interior.
///
/// Fails with [`GeomError::FragmentedRegion`] if the union is not a single
/// simple polygon without holes.
pub fn ortho_union(parts: &[&OrthoPolygon]) -> Result<OrthoPolygon, GeomError> {
    if let [one] = parts {
        return Ok((*one).clone());
    }
    let grid = Grid::new(parts.iter().flat_map(|p| p.vertices().iter().copied()));
    let mut covered = vec![false; grid.cells()];
    for p in parts {
        grid.fill(p.polygon(), |cell| covered[cell] = true);
    }
    grid.trace(&covered)
}

/// `base` minus a set of rectangles lying inside it.
pub fn ortho_difference(base: &Rect, holes: &[Rect]) -> Result<OrthoPolygon, GeomError> {
    let pts = std::iter::once(base.min)
        .chain(std::iter::once(base.max))
        .chain(holes.iter().flat_map(|h| [h.min, h.max]));
    let grid = Grid::new(pts);
    let mut covered = vec![false; grid.cells()];
    grid.fill(&base.to_polygon(), |cell| covered[cell] = true);
    for h in holes {
        grid.fill(&h.to_polygon(), |cell| covered[cell] = false);
    }
    grid.trace(&covered)
}

/// Area of the symmetric difference between `parent` and the multiset
/// union of `children` (overlaps count as mismatch).
///
/// Works on rectilinear polygons by sweeping horizontal strips and
/// integrating `|Σ children − parent|` along each strip.
pub fn rectilinear_mismatch_area(parent: &Polygon, children: &[&Polygon]) -> f64 {
    struct VEdge {
        x: f64,
        y0: f64,
        y1: f64,
        delta: i32,
    }
    let mut edges: Vec<VEdge> = Vec::new();
    let mut push = |p: &Polygon, weight: i32| {
        for (a, b) in p.edges() {
            if a.y == b.y {
                continue;
            }
            // downward edges of a counterclockwise polygon bound it on the left
            let delta = if b.y < a.y { weight } else { -weight };
            edges.push(VEdge {
                x: 0.5 * (a.x + b.x),
                y0: a.y.min(b.y),
                y1: a.y.max(b.y),
                delta,
            });
        }
    };
    push(parent, -1);
    for c in children {
        push(c, 1);
    }
    let mut ys: Vec<f64> = edges.iter().flat_map(|e| [e.y0, e.y1]).collect();
    ys.sort_by(f64::total_cmp);
    ys.dedup();
    edges.sort_by(|a, b| a.y0.total_cmp(&b.y0));

    let mut total = 0.0;
    let mut next = 0;
    let mut active: Vec<usize> = Vec::new();
    let mut events: Vec<(f64, i32)> = Vec::new();
    for w in ys.windows(2) {
        let (ya, yb) = (w[0], w[1]);
        while next < edges.len() && edges[next].y0 <= ya {
            active.push(next);
            next += 1;
        }
        active.retain(|&i| edges[i].y1 > ya);
        events.clear();
        events.extend(active.iter().map(|&i| (edges[i].x, edges[i].delta)));
        events.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut cur = 0i32;
        let mut len = 0.0;
        for k in 0..events.len() {
            cur += events[k].1;
            if cur != 0 && k + 1 < events.len() {
                len += f64::from(cur.abs()) * (events[k + 1].0 - events[k].0);
            }
        }
        total += len * (yb - ya);
    }
    total
}

/// A compressed grid over the coordinates of a handful of polygons.
struct Grid {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl Grid {
    fn new(points: impl Iterator<Item = Point>) -> Grid {
        let (mut xs, mut ys): (Vec<f64>, Vec<f64>) = points.map(|p| (p.x, p.y)).unzip();
        Grid {
            xs: snap_sorted(&mut xs),
            ys: snap_sorted(&mut ys),
        }
    }

    fn nx(&self) -> usize {
        self.xs.len() - 1
    }

    fn ny(&self) -> usize {
        self.ys.len() - 1
    }

    fn cells(&self) -> usize {
        self.nx() * self.ny()
    }

    /// Calls `mark` for every cell inside the rectilinear polygon `p`.
    fn fill(&self, p: &Polygon, mut mark: impl FnMut(usize)) {
        let mut rows: Vec<Vec<usize>> = vec![Vec::new(); self.ny()];
        for (a, b) in p.edges() {
            let ja = index_of(&self.ys, a.y);
            let jb = index_of(&self.ys, b.y);
            if ja == jb {
                continue;
            }
            let i = index_of(&self.xs, a.x);
            for row in rows.iter_mut().take(ja.max(jb)).skip(ja.min(jb)) {
                row.push(i);
            }
        }
        for (j, row) in rows.iter_mut().enumerate() {
            row.sort_unstable();
            for pair in row.chunks_exact(2) {
                for i in pair[0]..pair[1] {
                    mark(j * self.nx() + i);
                }
            }
        }
    }

    /// Boundary of the covered cells as one counterclockwise polygon.
    fn trace(&self, covered: &[bool]) -> Result<OrthoPolygon, GeomError> {
        let (nx, ny) = (self.nx(), self.ny());
        let stride = nx + 1;
        let at = |i: isize, j: isize| {
            i >= 0
                && j >= 0
                && (i as usize) < nx
                && (j as usize) < ny
                && covered[j as usize * nx + i as usize]
        };
        let mut next: HashMap<usize, usize> = HashMap::new();
        let mut add = |from: (usize, usize), to: (usize, usize)| -> Result<(), GeomError> {
            let f = from.1 * stride + from.0;
            let t = to.1 * stride + to.0;
            if next.insert(f, t).is_some() {
                return Err(GeomError::FragmentedRegion("boundary touches itself".into()));
            }
            Ok(())
        };
        for j in 0..ny {
            for i in 0..nx {
                if !covered[j * nx + i] {
                    continue;
                }
                let (ii, jj) = (i as isize, j as isize);
                if !at(ii, jj - 1) {
                    add((i, j), (i + 1, j))?;
                }
                if !at(ii + 1, jj) {
                    add((i + 1, j), (i + 1, j + 1))?;
                }
                if !at(ii, jj + 1) {
                    add((i + 1, j + 1), (i, j + 1))?;
                }
                if !at(ii - 1, jj) {
                    add((i, j + 1), (i, j))?;
                }
            }
        }
        let Some(&start) = next.keys().min() else {
            return Err(GeomError::FragmentedRegion("empty region".into()));
        };
        let mut loop_pts = Vec::new();
        let mut cur = start;
        loop {
            loop_pts.push(cur);
            cur = next[&cur];
            if cur == start {
                break;
            }
            if loop_pts.len() > next.len() {
                return Err(GeomError::FragmentedRegion("open boundary".into()));
            }
        }
        if loop_pts.len() != next.len() {
            return Err(GeomError::FragmentedRegion(format!(
                "{} boundary edges outside the outer loop",
                next.len() - loop_pts.len()
            )));
        }
        let pts = loop_pts
            .into_iter()
            .map(|k| Point::new(self.xs[k % stride], self.ys[k / stride]))
            .collect();
        OrthoPolygon::new(pts)
    }
}

fn snap_sorted(v: &mut [f64]) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    let mut out: Vec<f64> = Vec::with_capacity(v.len());
    for &x in v.iter() {
        match out.last() {
            Some(&last) if x - last <= SNAP * (1.0 + last.abs()) => {}
            _ => out.push(x),
        }
    }
    out
}

fn index_of(vals: &[f64], x: f64) -> usize {
    let i = vals.partition_point(|&v| v < x);
    let mut best = i.min(vals.len() - 1);
    if i > 0 && (x - vals[i - 1]).abs() < (vals[best] - x).abs() {
        best = i - 1;
    }
    best
}
