//! Depth-one treemaps with rectangles and L-shapes, the matching lower-bound
//! instance, and the square-packing reduction with a small exact solver.

use thiserror::Error;

use crate::geometry::{ortho_difference, Point, Polygon, Rect};
use crate::layout::{Algorithm, Layout};
use crate::partition::{lpt_partition, split_rect};
use crate::tree_model::{TreeError, WeightedTree};

/// Heaviest-child threshold `(3 - √3) / 4` separating the three cases.
pub fn heavy_threshold() -> f64 {
    (3.0 - 3f64.sqrt()) / 4.0
}

/// Aspect-ratio bound for every leaf region: `2 + 2√3/3`.
pub fn leaf_bound() -> f64 {
    2.0 + 2.0 * 3f64.sqrt() / 3.0
}

/// Aspect-ratio bound for every intermediate rectangle: `1 + √3`.
pub fn rect_bound() -> f64 {
    1.0 + 3f64.sqrt()
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SingleLevelError {
    #[error("instance has no weights")]
    EmptyInstance,
    #[error(transparent)]
    Tree(#[from] TreeError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PackingError {
    #[error("squares of total area {total} exceed the container area {capacity}")]
    Overfull { total: u64, capacity: u64 },
    #[error("square of side {0} does not fit the container")]
    SquareTooBig(u32),
    #[error("instance beyond the exhaustive-search limits")]
    TooLarge,
}

/// Positive weights, normalized to sum to 1.
#[derive(Clone, Debug, PartialEq)]
pub struct SingleLevelInstance {
    weights: Vec<f64>,
}

impl SingleLevelInstance {
    pub fn new(weights: &[f64]) -> Result<SingleLevelInstance, SingleLevelError> {
        if weights.is_empty() {
            return Err(SingleLevelError::EmptyInstance);
        }
        let t = WeightedTree::from_leaf_weights(weights)?;
        Ok(SingleLevelInstance {
            weights: t.leaves().map(|l| t.weight(l)).collect(),
        })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Root with one leaf per weight; leaf `i` is node `i + 1`.
    pub fn tree(&self) -> WeightedTree {
        WeightedTree::from_leaf_weights(&self.weights).expect("weights were validated")
    }
}

/// Which rule split a rectangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SingleCase {
    /// No heavy item: balanced two-bin split.
    Balanced,
    /// Heaviest item cut off as a slice.
    Slice,
    /// Heaviest item wraps a similar copy of the rectangle.
    Wrap,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SingleTrace {
    pub balanced: usize,
    pub slices: usize,
    pub wraps: usize,
    pub max_leaf_aspect: f64,
    pub max_rect_aspect: f64,
}

/// Lays out a single-level instance in the unit square.
///
/// Rectangles holding two or more items are recorded in
/// [`Layout::auxiliary`].
pub fn layout_single_level(inst: &SingleLevelInstance) -> Layout {
    layout_single_level_traced(inst).0
}

pub fn layout_single_level_traced(inst: &SingleLevelInstance) -> (Layout, SingleTrace) {
    let w = &inst.weights;
    let c = heavy_threshold();
    let mut leaves: Vec<Option<Polygon>> = vec![None; w.len()];
    let mut auxiliary = Vec::new();
    let mut trace = SingleTrace::default();
    let mut stack: Vec<(Rect, Vec<usize>)> = vec![(Rect::unit(), (0..w.len()).collect())];
    while let Some((rect, items)) = stack.pop() {
        if let [only] = items[..] {
            trace.max_leaf_aspect = trace.max_leaf_aspect.max(rect.aspect());
            leaves[only] = Some(rect.to_polygon());
            continue;
        }
        trace.max_rect_aspect = trace.max_rect_aspect.max(rect.aspect());
        auxiliary.push(rect.to_polygon());

        let total: f64 = items.iter().map(|&i| w[i]).sum();
        let heavy = items
            .iter()
            .copied()
            .fold(items[0], |best, i| if w[i] > w[best] { i } else { best });
        let rest: Vec<usize> = items.iter().copied().filter(|&i| i != heavy).collect();
        let r1 = w[heavy] / total;
        let a = rect.aspect();
        if r1 < c {
            trace.balanced += 1;
            let ws: Vec<f64> = items.iter().map(|&i| w[i]).collect();
            let split = lpt_partition(&ws).expect("at least two items");
            let (r_a, r_b) = split_rect_exact(&rect, split.w1, split.w2);
            stack.push((r_b, split.h2.iter().map(|&k| items[k]).collect()));
            stack.push((r_a, split.h1.iter().map(|&k| items[k]).collect()));
        } else if r1 < a * c {
            trace.slices += 1;
            let (r_a, r_b) = split_rect_exact(&rect, w[heavy], total - w[heavy]);
            stack.push((r_a, vec![heavy]));
            stack.push((r_b, rest));
        } else {
            trace.wraps += 1;
            let s = (1.0 - r1).sqrt();
            let inner = Rect {
                min: Point::new(rect.min.x, rect.max.y - s * rect.height()),
                max: Point::new(rect.min.x + s * rect.width(), rect.max.y),
            };
            let shape = ortho_difference(&rect, &[inner])
                .expect("a corner rectangle leaves an L-shape")
                .into_polygon();
            trace.max_leaf_aspect = trace.max_leaf_aspect.max(shape.asp_ortho());
            leaves[heavy] = Some(shape);
            stack.push((inner, rest));
        }
    }
    let mut polygons = vec![Rect::unit().to_polygon()];
    polygons.extend(leaves.into_iter().map(|p| p.expect("every item placed")));
    let mut layout = Layout::new(Algorithm::Single, polygons);
    layout.auxiliary = auxiliary;
    (layout, trace)
}

/// [`split_rect`] on fractions, so rounding in the weight sums cannot trip
/// its area check.
fn split_rect_exact(r: &Rect, w1: f64, w2: f64) -> (Rect, Rect) {
    let f = w1 / (w1 + w2);
    split_rect(r, f * r.area(), (1.0 - f) * r.area()).expect("positive weights")
}

/// The real root of `4x³ - 4x² + 4x - 1` in `(0.31, 0.32)`, by bisection.
pub fn lower_bound_root() -> f64 {
    let f = |x: f64| ((4.0 * x - 4.0) * x + 4.0) * x - 1.0;
    let (mut lo, mut hi) = (0.31, 0.32);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Closed form of `1/x` for the lower-bound root.
pub fn lower_bound_aspect_closed_form() -> f64 {
    let r = 3.0 * 57f64.sqrt();
    6.0 / (2.0 + (r - 1.0).cbrt() - (r + 1.0).cbrt())
}

/// Three equal weights `x` and one `1 - 3x`, where no rectangle-and-L layout
/// beats aspect ratio `1/x`.
pub fn lower_bound_instance() -> SingleLevelInstance {
    let x = lower_bound_root();
    SingleLevelInstance {
        weights: vec![x, x, x, 1.0 - 3.0 * x],
    }
}

/// Integer squares to be packed into an integer container square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarePackingInstance {
    pub container_side: u32,
    pub sides: Vec<u32>,
}

/// Reduction weights as exact fractions over `container_side²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedWeights {
    pub numerators: Vec<u64>,
    pub denominator: u64,
}

impl ReducedWeights {
    pub fn to_f64(&self) -> Vec<f64> {
        self.numerators
            .iter()
            .map(|&n| n as f64 / self.denominator as f64)
            .collect()
    }
}

impl SquarePackingInstance {
    pub fn new(container_side: u32, sides: Vec<u32>) -> Result<Self, PackingError> {
        let inst = SquarePackingInstance {
            container_side,
            sides,
        };
        inst.validate()?;
        Ok(inst)
    }

    fn capacity(&self) -> u64 {
        u64::from(self.container_side).pow(2)
    }

    fn used(&self) -> u64 {
        self.sides.iter().map(|&s| u64::from(s).pow(2)).sum()
    }

    fn validate(&self) -> Result<(), PackingError> {
        if let Some(&s) = self.sides.iter().find(|&&s| s == 0 || s > self.container_side) {
            return Err(PackingError::SquareTooBig(s));
        }
        if self.used() > self.capacity() {
            return Err(PackingError::Overfull {
                total: self.used(),
                capacity: self.capacity(),
            });
        }
        Ok(())
    }

    /// One weight per square (its area share), then one unit-cell weight per
    /// uncovered cell.
    pub fn reduce(&self) -> Result<ReducedWeights, PackingError> {
        self.validate()?;
        let mut numerators: Vec<u64> = self.sides.iter().map(|&s| u64::from(s).pow(2)).collect();
        numerators.extend(std::iter::repeat_n(1, (self.capacity() - self.used()) as usize));
        Ok(ReducedWeights {
            numerators,
            denominator: self.capacity(),
        })
    }
}

/// The weights of the reduction as a single-level instance.
pub fn reduce_square_packing(sp: &SquarePackingInstance) -> Result<SingleLevelInstance, PackingError> {
    let r = sp.reduce()?;
    Ok(SingleLevelInstance { weights: r.to_f64() })
}

/// Lower-left corner and side of each square, in input order.
pub type Placement = Vec<(u32, u32, u32)>;

pub const MAX_ORACLE_SIDE: u32 = 6;
pub const MAX_ORACLE_SQUARES: usize = 8;

/// Whether the squares pack into the container.
pub fn packing_oracle(sp: &SquarePackingInstance) -> Result<bool, PackingError> {
    find_packing(sp).map(|p| p.is_some())
}

/// Exhaustive search on the integer grid: the first empty cell in scan order
/// is covered by some remaining square or by a unit filler cell.
pub fn find_packing(sp: &SquarePackingInstance) -> Result<Option<Placement>, PackingError> {
    sp.validate()?;
    if sp.container_side > MAX_ORACLE_SIDE || sp.sides.len() > MAX_ORACLE_SQUARES {
        return Err(PackingError::TooLarge);
    }
    let n = sp.container_side as usize;
    let mut search = Search {
        n,
        grid: vec![false; n * n],
        sides: &sp.sides,
        used: vec![false; sp.sides.len()],
        fillers: (sp.capacity() - sp.used()) as usize,
        placement: vec![(0, 0, 0); sp.sides.len()],
    };
    Ok(search.run().then_some(search.placement))
}

struct Search<'a> {
    n: usize,
    grid: Vec<bool>,
    sides: &'a [u32],
    used: Vec<bool>,
    fillers: usize,
    placement: Placement,
}

impl Search<'_> {
    fn fits(&self, x: usize, y: usize, s: usize) -> bool {
        x + s <= self.n
            && y + s <= self.n
            && (y..y + s).all(|r| (x..x + s).all(|c| !self.grid[r * self.n + c]))
    }

    fn fill(&mut self, x: usize, y: usize, s: usize, v: bool) {
        for r in y..y + s {
            for c in x..x + s {
                self.grid[r * self.n + c] = v;
            }
        }
    }

    fn run(&mut self) -> bool {
        let Some(cell) = self.grid.iter().position(|&g| !g) else {
            return true;
        };
        let (x, y) = (cell % self.n, cell / self.n);
        let mut tried: Vec<u32> = Vec::new();
        for i in 0..self.sides.len() {
            let s = self.sides[i];
            if self.used[i] || tried.contains(&s) {
                continue;
            }
            tried.push(s);
            if !self.fits(x, y, s as usize) {
                continue;
            }
            self.used[i] = true;
            self.fill(x, y, s as usize, true);
            self.placement[i] = (x as u32, y as u32, s);
            if self.run() {
                return true;
            }
            self.fill(x, y, s as usize, false);
            self.used[i] = false;
        }
        if self.fillers > 0 {
            self.fillers -= 1;
            self.grid[cell] = true;
            if self.run() {
                return true;
            }
            self.grid[cell] = false;
            self.fillers += 1;
        }
        false
    }
}

/// Aspect-one layout of the reduced instance from a packing: squares at their
/// placements, one unit cell per filler, all scaled into the unit square.
///
/// Region order matches [`reduce_square_packing`]: root, squares, fillers.
pub fn layout_from_packing(sp: &SquarePackingInstance, placement: &Placement) -> Layout {
    let n = sp.container_side as usize;
    let scale = 1.0 / f64::from(sp.container_side);
    let cell = |x: u32, y: u32, s: u32| {
        let x0 = f64::from(x) * scale;
        let y0 = f64::from(y) * scale;
        let x1 = if x + s == sp.container_side {
            1.0
        } else {
            f64::from(x + s) * scale
        };
        let y1 = if y + s == sp.container_side {
            1.0
        } else {
            f64::from(y + s) * scale
        };
        Rect::from_bounds(x0, y0, x1, y1)
            .expect("positive side")
            .to_polygon()
    };
    let mut covered = vec![false; n * n];
    let mut polygons = vec![Rect::unit().to_polygon()];
    for &(x, y, s) in placement {
        for r in y..y + s {
            for c in x..x + s {
                covered[r as usize * n + c as usize] = true;
            }
        }
        polygons.push(cell(x, y, s));
    }
    for (k, _) in covered.iter().enumerate().filter(|(_, &c)| !c) {
        polygons.push(cell((k % n) as u32, (k / n) as u32, 1));
    }
    Layout::new(Algorithm::Single, polygons)
}
