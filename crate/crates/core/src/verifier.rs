//! Independent checker for treemap layouts.
//!
//! Everything is re-derived from the input tree and the output polygons:
//! areas, tiling of each parent by its children, and the shape and aspect
//! bounds of the chosen profile.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::convex_layout::{check_k_phi, separation_angle, BOX_RATIO};
use crate::geometry::{
    classify_shape, convex_intersection_area, rectilinear_mismatch_area, ConvexPolygon, OrthoPolygon,
    Polygon, ShapeClass,
};
use crate::layout::{Algorithm, Layout};
use crate::ortho_layout::CONTAINER_ASPECT;
use crate::single_level::{leaf_bound, rect_bound};
use crate::tree_model::{NodeId, WeightedTree};

pub const AREA_TOL: f64 = 1e-6;
pub const TILING_TOL: f64 = 1e-6;
pub const ASPECT_TOL: f64 = 1e-6;

/// Leaf rectangle bound for orthoconvex layouts.
pub const ORTHO_RECT_BOUND: f64 = CONTAINER_ASPECT;
/// Leaf L- and S-shape bound for orthoconvex layouts.
pub const ORTHO_LS_BOUND: f64 = 4.0 * CONTAINER_ASPECT;
/// Internal-region bound for orthoconvex layouts.
pub const ORTHO_INTERNAL_BOUND: f64 = 8.0 * CONTAINER_ASPECT;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VerifyError {
    #[error("node {0} has no region")]
    MissingRegion(NodeId),
    #[error("region for node {node} is malformed: {reason}")]
    MalformedRegion { node: NodeId, reason: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Violation {
    /// Root region is not the unit square.
    RootNotUnit {
        residual: f64,
    },
    Area {
        area: f64,
        weight: f64,
    },
    /// Children do not tile the parent; reported on the parent.
    Tiling {
        residual: f64,
    },
    NotConvex,
    NotRectilinear,
    NotOrthoconvex,
    EdgeCount {
        edges: usize,
        limit: usize,
    },
    Separation {
        min_angle: f64,
        phi: f64,
    },
    BoxRatio {
        ratio: f64,
        limit: f64,
    },
    UnexpectedShape {
        shape: ShapeClass,
    },
    Aspect {
        aspect: f64,
        bound: f64,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionReport {
    pub node: NodeId,
    pub path: String,
    pub depth: usize,
    pub leaf: bool,
    pub shape: ShapeClass,
    pub area: f64,
    pub weight: f64,
    pub asp_ortho: f64,
    pub asp_convex: f64,
    pub violations: Vec<Violation>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuxiliaryReport {
    pub index: usize,
    pub aspect: f64,
    pub violations: Vec<Violation>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub profile: Algorithm,
    pub regions: Vec<RegionReport>,
    pub auxiliary: Vec<AuxiliaryReport>,
    pub root_residual: f64,
    pub max_area_residual: f64,
    pub max_tiling_residual: f64,
    pub pass: bool,
}

impl VerificationReport {
    pub fn violations(&self) -> impl Iterator<Item = (NodeId, &Violation)> {
        self.regions
            .iter()
            .flat_map(|r| r.violations.iter().map(move |v| (r.node, v)))
    }

    pub fn violation_count(&self) -> usize {
        self.regions.iter().map(|r| r.violations.len()).sum::<usize>()
            + self.auxiliary.iter().map(|a| a.violations.len()).sum::<usize>()
    }

    /// Largest ortho aspect over regions with `pred`.
    pub fn max_asp_ortho(&self, pred: impl Fn(&RegionReport) -> bool) -> f64 {
        self.regions
            .iter()
            .filter(|r| pred(r))
            .map(|r| r.asp_ortho)
            .fold(0.0, f64::max)
    }
}

/// Checks `layout` against `t` under the bounds of `profile`.
pub fn verify(
    t: &WeightedTree,
    layout: &Layout,
    profile: Algorithm,
) -> Result<VerificationReport, VerifyError> {
    let polys = collect_regions(t, layout)?;
    let mut regions: Vec<RegionReport> = (0..t.len())
        .map(|v| base_report(t, v, polys[v], profile))
        .collect();

    let root = t.root();
    let bb = polys[root].bbox();
    let root_residual = [
        (polys[root].area() - 1.0).abs(),
        bb.min.x.abs(),
        bb.min.y.abs(),
        (bb.max.x - 1.0).abs(),
        (bb.max.y - 1.0).abs(),
    ]
    .into_iter()
    .fold(0.0, f64::max);
    if root_residual > AREA_TOL {
        regions[root].violations.push(Violation::RootNotUnit {
            residual: root_residual,
        });
    }

    let mut max_area_residual: f64 = 0.0;
    let mut max_tiling_residual: f64 = 0.0;
    for v in 0..t.len() {
        let area_res = (polys[v].area() - t.weight(v)).abs();
        max_area_residual = max_area_residual.max(area_res);
        if area_res > AREA_TOL {
            regions[v].violations.push(Violation::Area {
                area: polys[v].area(),
                weight: t.weight(v),
            });
        }
        if t.is_leaf(v) {
            continue;
        }
        let kids: Vec<&Polygon> = t.children(v).iter().map(|&c| polys[c]).collect();
        let residual = match profile {
            Algorithm::Convex => convex_mismatch(polys[v], &kids),
            Algorithm::Ortho | Algorithm::Single => {
                if std::iter::once(polys[v])
                    .chain(kids.iter().copied())
                    .all(Polygon::is_rectilinear)
                {
                    Some(rectilinear_mismatch_area(polys[v], &kids))
                } else {
                    None
                }
            }
        };
        // a non-rectilinear or non-convex piece is already flagged on its node
        if let Some(r) = residual {
            max_tiling_residual = max_tiling_residual.max(r);
            if r > TILING_TOL {
                regions[v].violations.push(Violation::Tiling { residual: r });
            }
        }
    }

    let auxiliary = if profile == Algorithm::Single {
        layout
            .auxiliary
            .iter()
            .enumerate()
            .map(|(index, p)| {
                let mut violations = Vec::new();
                let aspect = p.asp_ortho();
                if !p.is_rectilinear() {
                    violations.push(Violation::NotRectilinear);
                } else if p.reflex_count() != 0 {
                    violations.push(Violation::UnexpectedShape {
                        shape: ShapeClass::OrthoOther,
                    });
                }
                if aspect > rect_bound() + ASPECT_TOL {
                    violations.push(Violation::Aspect {
                        aspect,
                        bound: rect_bound(),
                    });
                }
                AuxiliaryReport {
                    index,
                    aspect,
                    violations,
                }
            })
            .collect()
    } else {
        Vec::new()
    };

    let pass = regions.iter().all(|r| r.violations.is_empty())
        && auxiliary.iter().all(|a| a.violations.is_empty())
        && max_tiling_residual <= TILING_TOL
        && max_area_residual <= AREA_TOL
        && root_residual <= AREA_TOL;
    Ok(VerificationReport {
        profile,
        regions,
        auxiliary,
        root_residual,
        max_area_residual,
        max_tiling_residual,
        pass,
    })
}

fn collect_regions<'a>(t: &WeightedTree, layout: &'a Layout) -> Result<Vec<&'a Polygon>, VerifyError> {
    let mut polys: Vec<Option<&Polygon>> = vec![None; t.len()];
    for r in &layout.regions {
        let slot = polys
            .get_mut(r.node)
            .ok_or_else(|| VerifyError::MalformedRegion {
                node: r.node,
                reason: format!("tree has only {} nodes", t.len()),
            })?;
        if slot.is_some() {
            return Err(VerifyError::MalformedRegion {
                node: r.node,
                reason: "node has more than one region".into(),
            });
        }
        if r.polygon.len() < 3 || r.polygon.area().is_nan() || r.polygon.area() <= 0.0 {
            return Err(VerifyError::MalformedRegion {
                node: r.node,
                reason: "polygon has no interior".into(),
            });
        }
        *slot = Some(&r.polygon);
    }
    polys
        .into_iter()
        .enumerate()
        .map(|(v, p)| p.ok_or(VerifyError::MissingRegion(v)))
        .collect()
}

/// Per-node shape and aspect checks.
fn base_report(t: &WeightedTree, v: NodeId, p: &Polygon, profile: Algorithm) -> RegionReport {
    let depth = t.depth_of(v);
    let leaf = t.is_leaf(v);
    let mut violations = Vec::new();
    let asp_ortho = p.asp_ortho();
    let shape = match profile {
        Algorithm::Convex => {
            match ConvexPolygon::try_from(p.clone()) {
                Ok(cp) => {
                    let edges = cp.non_axis_edge_count();
                    if edges > depth + 4 {
                        violations.push(Violation::EdgeCount {
                            edges,
                            limit: depth + 4,
                        });
                    }
                    let phi = separation_angle(depth);
                    let rep = check_k_phi(&cp, BOX_RATIO, phi);
                    if !rep.ok {
                        if rep.min_pairwise_angle < phi - crate::geometry::ANGLE_TOL {
                            violations.push(Violation::Separation {
                                min_angle: rep.min_pairwise_angle,
                                phi,
                            });
                        } else {
                            violations.push(Violation::BoxRatio {
                                ratio: rep.width_height_ratio,
                                limit: BOX_RATIO,
                            });
                        }
                    }
                }
                Err(_) => violations.push(Violation::NotConvex),
            }
            ShapeClass::Convex
        }
        Algorithm::Ortho | Algorithm::Single => match OrthoPolygon::try_from(p.clone()) {
            Err(_) => {
                violations.push(Violation::NotRectilinear);
                ShapeClass::OrthoOther
            }
            Ok(op) => match classify_shape(&op) {
                Err(_) => {
                    violations.push(Violation::NotOrthoconvex);
                    ShapeClass::OrthoOther
                }
                Ok(shape) => {
                    let bound = shape_bound(profile, leaf, shape);
                    match bound {
                        None => violations.push(Violation::UnexpectedShape { shape }),
                        Some(b) if asp_ortho > b + ASPECT_TOL => violations.push(Violation::Aspect {
                            aspect: asp_ortho,
                            bound: b,
                        }),
                        Some(_) => {}
                    }
                    shape
                }
            },
        },
    };
    RegionReport {
        node: v,
        path: t.path(v),
        depth,
        leaf,
        shape,
        area: p.area(),
        weight: t.weight(v),
        asp_ortho,
        asp_convex: p.asp_convex(),
        violations,
    }
}

/// Aspect bound for a region of `shape`, or `None` if the shape is not allowed.
fn shape_bound(profile: Algorithm, leaf: bool, shape: ShapeClass) -> Option<f64> {
    match (profile, leaf, shape) {
        (Algorithm::Ortho, true, ShapeClass::Rectangle) => Some(ORTHO_RECT_BOUND),
        (Algorithm::Ortho, true, ShapeClass::LShape | ShapeClass::SShape) => Some(ORTHO_LS_BOUND),
        (Algorithm::Ortho, true, _) => None,
        (Algorithm::Ortho, false, _) => Some(ORTHO_INTERNAL_BOUND),
        (Algorithm::Single, true, ShapeClass::Rectangle | ShapeClass::LShape) => Some(leaf_bound()),
        (Algorithm::Single, true, _) => None,
        // internal nodes of a single-level layout are the unit square
        (Algorithm::Single, false, _) => Some(rect_bound()),
        (Algorithm::Convex, _, _) => None,
    }
}

/// Symmetric-difference area between a convex parent and its convex
/// children, from pairwise clip areas. `None` if some piece is not convex.
fn convex_mismatch(parent: &Polygon, kids: &[&Polygon]) -> Option<f64> {
    let parent = ConvexPolygon::try_from(parent.clone()).ok()?;
    let kids: Vec<ConvexPolygon> = kids
        .iter()
        .map(|k| ConvexPolygon::try_from((*k).clone()).ok())
        .collect::<Option<_>>()?;
    let mut inside = 0.0;
    let mut outside = 0.0;
    let mut overlap = 0.0;
    for (i, k) in kids.iter().enumerate() {
        let a = convex_intersection_area(k, &parent);
        inside += a;
        outside += (k.area() - a).max(0.0);
        for other in &kids[i + 1..] {
            overlap += convex_intersection_area(k, other);
        }
    }
    let uncovered = (parent.area() - inside + overlap).max(0.0);
    Some(uncovered + overlap + outside)
}
