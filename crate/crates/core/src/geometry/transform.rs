//! Axis-preserving isometries that move a marked rectangle corner to a
//! canonical position.

use super::{Corner, Point, Rect};

/// Maps a container rectangle onto `[0, W] x [0, H]` with `W >= H` and the
/// marked corner at the bottom right.
///
/// The forward map translates to local coordinates, applies the flips, then
/// swaps the axes if the container is taller than wide.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Isometry {
    container: Rect,
    flip_x: bool,
    flip_y: bool,
    transpose: bool,
}

/// Builds the isometry that puts `marked` at the canonical bottom-right.
pub fn canonicalize(container: &Rect, marked: Corner) -> Isometry {
    let transpose = container.height() > container.width();
    let (flip_x, flip_y) = if transpose {
        (marked.is_right(), !marked.is_top())
    } else {
        (!marked.is_right(), marked.is_top())
    };
    Isometry {
        container: *container,
        flip_x,
        flip_y,
        transpose,
    }
}

impl Isometry {
    pub fn container(&self) -> &Rect {
        &self.container
    }

    pub fn is_transposed(&self) -> bool {
        self.transpose
    }

    /// Longer side of the container.
    pub fn canonical_width(&self) -> f64 {
        self.container.width().max(self.container.height())
    }

    /// Shorter side of the container.
    pub fn canonical_height(&self) -> f64 {
        self.container.width().min(self.container.height())
    }

    pub fn forward(&self, p: Point) -> Point {
        let r = &self.container;
        let mut u = p.x - r.min.x;
        let mut v = p.y - r.min.y;
        if self.flip_x {
            u = r.width() - u;
        }
        if self.flip_y {
            v = r.height() - v;
        }
        if self.transpose {
            std::mem::swap(&mut u, &mut v);
        }
        Point::new(u, v)
    }

    pub fn inverse(&self, q: Point) -> Point {
        let r = &self.container;
        let (mut u, mut v) = (q.x, q.y);
        if self.transpose {
            std::mem::swap(&mut u, &mut v);
        }
        if self.flip_y {
            v = r.height() - v;
        }
        if self.flip_x {
            u = r.width() - u;
        }
        Point::new(r.min.x + u, r.min.y + v)
    }

    /// The global container corner that the canonical corner `c` maps to.
    pub fn to_global_corner(&self, c: Corner) -> Corner {
        let (right, top) = if self.transpose {
            (c.is_top(), c.is_right())
        } else {
            (c.is_right(), c.is_top())
        };
        Corner::from_sides(right != self.flip_x, top != self.flip_y)
    }

    /// Global rectangle covering the canonical slab `f0 <= u/W <= f1` over the
    /// full canonical height. Fractions 0 and 1 hit the container sides exactly.
    pub fn slice(&self, f0: f64, f1: f64) -> Rect {
        let r = &self.container;
        let (lo, hi, reversed) = if self.transpose {
            (r.min.y, r.max.y, self.flip_y)
        } else {
            (r.min.x, r.max.x, self.flip_x)
        };
        let len = hi - lo;
        let bound = |f: f64| {
            if f <= 0.0 {
                if reversed {
                    hi
                } else {
                    lo
                }
            } else if f >= 1.0 {
                if reversed {
                    lo
                } else {
                    hi
                }
            } else if reversed {
                hi - f * len
            } else {
                lo + f * len
            }
        };
        let (a, b) = (bound(f0), bound(f1));
        let (s0, s1) = (a.min(b), a.max(b));
        if self.transpose {
            Rect {
                min: Point::new(r.min.x, s0),
                max: Point::new(r.max.x, s1),
            }
        } else {
            Rect {
                min: Point::new(s0, r.min.y),
                max: Point::new(s1, r.max.y),
            }
        }
    }

    /// Rectangle similar to the container, scaled by `scale`, sharing the
    /// corner that canonical corner `c` maps to.
    pub fn corner_rect(&self, c: Corner, scale: f64) -> Rect {
        let r = &self.container;
        let g = self.to_global_corner(c);
        let p = r.corner(g);
        let (w, h) = (scale * r.width(), scale * r.height());
        let (x0, x1) = if g.is_right() {
            (p.x - w, p.x)
        } else {
            (p.x, p.x + w)
        };
        let (y0, y1) = if g.is_top() {
            (p.y - h, p.y)
        } else {
            (p.y, p.y + h)
        };
        Rect {
            min: Point::new(x0, y0),
            max: Point::new(x1, y1),
        }
    }
}
