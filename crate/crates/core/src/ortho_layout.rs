//! Orthoconvex treemaps with constant aspect ratio.
//!
//! The recursion works on a binary tree fragment inside a rectangle with
//! aspect ratio at most 8. One node of the fragment and one corner of the
//! rectangle are marked; the marked node and its ancestors end up as
//! staircases anchored at that corner, which is what lets fragments of one
//! subtree drawn in different calls glue into an orthoconvex region.
//!
//! Leaves come out as rectangles (aspect ratio at most 8) or as L- and
//! S-shapes (at most 32); internal nodes as orthoconvex polygons (at most 64).
//!
//! All case logic is phrased in a canonical frame where the marked corner is
//! the bottom-right one and the rectangle is at least as wide as it is tall;
//! [`Isometry`] maps canonical slices and corners back to the container.

use serde::Serialize;
use thiserror::Error;

use crate::geometry::{
    canonicalize, is_staircase, ortho_difference, ortho_union, Corner, GeomError, OrthoPolygon, Polygon, Rect,
};
use crate::layout::{Algorithm, Layout};
use crate::tree_model::{
    find_drawable, to_binary_generic, BinId, BinaryTree, NodeId, RelCategory, WeightedTree,
};

/// Largest container aspect ratio a recursive call may receive.
pub const CONTAINER_ASPECT: f64 = 8.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OrthoLayoutError {
    #[error("case precondition violated: {0}")]
    CasePreconditionViolated(String),
    #[error("no small node below the heavy-path node")]
    SearchFailed,
    #[error(transparent)]
    Geometry(#[from] GeomError),
}

/// Which branch of the recursion handled a call.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OrthoCase {
    /// Single leaf: the container itself.
    Leaf,
    /// Non-tiny marked node; the drawable node gets a side slice.
    DrawableSlice,
    /// Non-tiny marked node; a huge leaf wraps a similar copy of the container.
    HugeLeaf,
    /// Tiny marked node below a small or large ancestor.
    SmallAncestor,
    /// Tiny marked node, no small or large ancestor, a leaf of weight >= 1/4.
    HeavyLeaf,
    /// Tiny marked node, no small or large ancestor, only light leaves.
    ThreeSlices,
}

impl OrthoCase {
    pub const ALL: [OrthoCase; 6] = [
        OrthoCase::Leaf,
        OrthoCase::DrawableSlice,
        OrthoCase::HugeLeaf,
        OrthoCase::SmallAncestor,
        OrthoCase::HeavyLeaf,
        OrthoCase::ThreeSlices,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OrthoCase::Leaf => "leaf",
            OrthoCase::DrawableSlice => "drawable_slice",
            OrthoCase::HugeLeaf => "huge_leaf",
            OrthoCase::SmallAncestor => "small_ancestor",
            OrthoCase::HeavyLeaf => "heavy_leaf",
            OrthoCase::ThreeSlices => "three_slices",
        }
    }

    fn index(self) -> usize {
        OrthoCase::ALL.iter().position(|&c| c == self).unwrap()
    }
}

/// One pending recursive call.
#[derive(Clone, Debug)]
pub struct Frame {
    pub tree: BinaryTree,
    pub marked: BinId,
    pub container: Rect,
    pub corner: Corner,
}

/// Per-layout statistics and self-checks.
#[derive(Clone, Debug, Default, Serialize)]
pub struct OrthoTrace {
    /// Calls per case, indexed like [`OrthoCase::ALL`].
    pub case_counts: [usize; 6],
    pub max_container_aspect: f64,
    /// Calls whose container exceeded [`CONTAINER_ASPECT`].
    pub container_violations: usize,
    /// Marked-lineage regions checked for the staircase property.
    pub staircase_checks: usize,
    pub staircase_failures: usize,
}

impl OrthoTrace {
    pub fn count(&self, case: OrthoCase) -> usize {
        self.case_counts[case.index()]
    }
}

/// Options for [`layout_ortho_with`].
#[derive(Clone, Copy, Debug, Default)]
pub struct OrthoOptions {
    /// Re-check after the fact that every call's marked node and its
    /// ancestors form staircases at the marked corner. Quadratic; meant for
    /// tests on small trees.
    pub check_staircases: bool,
}

fn category(t: &BinaryTree, id: BinId) -> RelCategory {
    t.category(id)
}

fn lowest_huge_ancestor(t: &BinaryTree, id: BinId) -> Option<BinId> {
    t.ancestors(id).find(|&a| category(t, a) == RelCategory::Huge)
}

/// Child of `anc` on the path down to `id`.
fn child_toward(t: &BinaryTree, anc: BinId, id: BinId) -> BinId {
    let mut cur = id;
    while t.parent(cur) != Some(anc) {
        cur = t.parent(cur).expect("anc is an ancestor of id");
    }
    cur
}

/// Decides which case handles `marked` within `t`.
pub fn dispatch(t: &BinaryTree, marked: BinId) -> OrthoCase {
    if t.len() == 1 {
        return OrthoCase::Leaf;
    }
    if category(t, marked) != RelCategory::Tiny {
        let nu = find_drawable(t, marked);
        return if category(t, nu) == RelCategory::Huge {
            OrthoCase::HugeLeaf
        } else {
            OrthoCase::DrawableSlice
        };
    }
    let mid_ancestor = t
        .ancestors(marked)
        .any(|a| matches!(category(t, a), RelCategory::Small | RelCategory::Large));
    if mid_ancestor {
        OrthoCase::SmallAncestor
    } else if t.leaves().any(|l| t.rel(l) >= 0.25) {
        OrthoCase::HeavyLeaf
    } else {
        OrthoCase::ThreeSlices
    }
}

/// Output of a single call: leaf shapes and further calls.
struct Step {
    case: OrthoCase,
    shapes: Vec<(NodeId, Polygon)>,
    frames: Vec<Frame>,
}

fn leaf_origin(t: &BinaryTree, id: BinId) -> NodeId {
    t.node(id).origin.expect("binary leaves stand for input leaves")
}

/// Runs one call of the recursion.
fn step(frame: Frame) -> Result<Step, OrthoLayoutError> {
    let Frame {
        tree: t,
        marked,
        container,
        corner,
    } = frame;
    let iso = canonicalize(&container, corner);
    let case = dispatch(&t, marked);
    let total = t.total_weight();
    let sub = |tree: BinaryTree, marked: BinId, container: Rect, c: Corner| Frame {
        tree,
        marked,
        container,
        corner: iso.to_global_corner(c),
    };
    let mut shapes = Vec::new();
    let mut frames = Vec::new();
    match case {
        OrthoCase::Leaf => {
            shapes.push((leaf_origin(&t, t.root()), container.to_polygon()));
        }
        OrthoCase::DrawableSlice | OrthoCase::HugeLeaf => {
            let nu = find_drawable(&t, marked);
            let (rest, map) = t.without(&[nu]).ok_or_else(|| {
                OrthoLayoutError::CasePreconditionViolated("drawable node is the root".into())
            })?;
            let rest_mark = map[t.sibling(nu).expect("non-root")].expect("sibling survives");
            let f = rest.total_weight() / total;
            if case == OrthoCase::DrawableSlice {
                let (nu_tree, nu_map) = t.subtree(nu);
                let nu_root = nu_map[nu].expect("root of its own subtree");
                frames.push(sub(rest, rest_mark, iso.slice(0.0, f), Corner::BottomRight));
                frames.push(sub(nu_tree, nu_root, iso.slice(f, 1.0), Corner::BottomRight));
            } else {
                if !t.is_leaf(nu) {
                    return Err(OrthoLayoutError::CasePreconditionViolated(
                        "huge drawable node is not a leaf".into(),
                    ));
                }
                let inner = iso.corner_rect(Corner::TopLeft, f.sqrt());
                let shape = ortho_difference(&container, &[inner])?;
                shapes.push((leaf_origin(&t, nu), shape.into_polygon()));
                frames.push(sub(rest, rest_mark, inner, Corner::BottomRight));
            }
        }
        OrthoCase::SmallAncestor => {
            let (_, hat) = huge_split(&t, marked)?;
            let (rest, map) = t.without(&[hat]).expect("hat is not the root");
            let rest_mark = map[t.sibling(hat).unwrap()].unwrap();
            let (hat_tree, hat_map) = t.subtree(hat);
            let f = rest.total_weight() / total;
            frames.push(sub(rest, rest_mark, iso.slice(0.0, f), Corner::BottomRight));
            frames.push(sub(
                hat_tree,
                hat_map[marked].unwrap(),
                iso.slice(f, 1.0),
                Corner::BottomRight,
            ));
        }
        OrthoCase::HeavyLeaf => {
            let (_, hat) = huge_split(&t, marked)?;
            let lambda = heaviest_leaf(&t);
            if t.rel(lambda) < 0.25 || t.is_ancestor(hat, lambda) {
                return Err(OrthoLayoutError::CasePreconditionViolated(
                    "no heavy leaf outside the marked branch".into(),
                ));
            }
            let (hat_tree, hat_map) = t.subtree(hat);
            let hat_rect = iso.corner_rect(Corner::BottomRight, t.rel(hat).sqrt());
            frames.push(sub(
                hat_tree,
                hat_map[marked].unwrap(),
                hat_rect,
                Corner::BottomRight,
            ));

            let (t1, m1) = t.without(&[hat]).expect("hat is not the root");
            let lambda1 = m1[lambda].unwrap();
            let mut holes = vec![hat_rect];
            if t1.len() > 1 {
                let (rest, m2) = t1.without(&[lambda1]).expect("lambda is not the root");
                let rest_mark = m2[t1.sibling(lambda1).unwrap()].unwrap();
                let f = rest.total_weight() / total;
                let rest_rect = if f < 0.125 {
                    iso.corner_rect(Corner::TopLeft, f.sqrt())
                } else {
                    iso.slice(0.0, f)
                };
                holes.push(rest_rect);
                frames.push(sub(rest, rest_mark, rest_rect, Corner::BottomRight));
            }
            let shape = ortho_difference(&container, &holes)?;
            shapes.push((leaf_origin(&t, lambda), shape.into_polygon()));
        }
        OrthoCase::ThreeSlices => {
            let (star, hat) = huge_split(&t, marked)?;
            let mut nu_hat = star;
            while t.rel(nu_hat) > 0.75 {
                nu_hat = t.heavier_child(nu_hat).ok_or(OrthoLayoutError::SearchFailed)?;
            }
            let mut nu = nu_hat;
            while t.rel(nu) >= 0.25 {
                nu = t.heavier_child(nu).ok_or(OrthoLayoutError::SearchFailed)?;
            }
            if t.is_ancestor(hat, nu_hat) || t.is_ancestor(nu_hat, hat) {
                return Err(OrthoLayoutError::CasePreconditionViolated(
                    "heavy path meets the marked branch".into(),
                ));
            }
            let (rest, map) = t.without(&[hat, nu_hat]).expect("something remains");
            let rest_mark = map[t.sibling(nu_hat).unwrap()].ok_or_else(|| {
                OrthoLayoutError::CasePreconditionViolated(
                    "sibling of the heavy-path node was removed".into(),
                )
            })?;
            let (nu_hat_tree, nh_map) = t.subtree(nu_hat);
            let nu_in = nh_map[nu].unwrap();
            let (middle, mid_map) = nu_hat_tree.without(&[nu_in]).expect("nu is below nu_hat");
            let middle_mark = mid_map[nu_hat_tree.sibling(nu_in).unwrap()].unwrap();
            let (hat_tree, hat_map) = t.subtree(hat);
            let (nu_tree, _) = t.subtree(nu);
            let (joined, off_hat, _) = BinaryTree::join(&hat_tree, &nu_tree);
            let joined_mark = hat_map[marked].unwrap() + off_hat;

            let f1 = rest.total_weight() / total;
            let f2 = (rest.total_weight() + middle.total_weight()) / total;
            frames.push(sub(rest, rest_mark, iso.slice(0.0, f1), Corner::BottomRight));
            frames.push(sub(middle, middle_mark, iso.slice(f1, f2), Corner::TopRight));
            frames.push(sub(joined, joined_mark, iso.slice(f2, 1.0), Corner::BottomRight));
        }
    }
    Ok(Step { case, shapes, frames })
}

/// Lowest huge proper ancestor of the marked node and its child toward it.
fn huge_split(t: &BinaryTree, marked: BinId) -> Result<(BinId, BinId), OrthoLayoutError> {
    let star = lowest_huge_ancestor(t, marked).ok_or_else(|| {
        OrthoLayoutError::CasePreconditionViolated("marked node has no huge ancestor".into())
    })?;
    Ok((star, child_toward(t, star, marked)))
}

/// Heaviest leaf, ties to the lowest id.
fn heaviest_leaf(t: &BinaryTree) -> BinId {
    let mut best = None::<BinId>;
    for l in t.leaves() {
        if best.is_none_or(|b| t.weight(l) > t.weight(b)) {
            best = Some(l);
        }
    }
    best.expect("a tree has leaves")
}

/// Runs the whole recursion from the unit square, root and bottom-right
/// corner marked. Returns leaf shapes indexed by input node.
pub fn run_frames(
    t: &WeightedTree,
    options: OrthoOptions,
) -> Result<(Vec<Option<Polygon>>, OrthoTrace), OrthoLayoutError> {
    let conv = to_binary_generic(t);
    let root = conv.tree.root();
    let mut work = vec![Frame {
        tree: conv.tree,
        marked: root,
        container: Rect::unit(),
        corner: Corner::BottomRight,
    }];
    let mut leaf_shapes: Vec<Option<Polygon>> = vec![None; t.len()];
    let mut trace = OrthoTrace::default();
    let mut recorded: Vec<Frame> = Vec::new();
    while let Some(frame) = work.pop() {
        let asp = frame.container.aspect();
        trace.max_container_aspect = trace.max_container_aspect.max(asp);
        if asp > CONTAINER_ASPECT + 1e-9 {
            trace.container_violations += 1;
        }
        if options.check_staircases && frame.tree.len() > 1 {
            recorded.push(frame.clone());
        }
        let out = step(frame)?;
        trace.case_counts[out.case.index()] += 1;
        for (node, shape) in out.shapes {
            leaf_shapes[node] = Some(shape);
        }
        work.extend(out.frames);
    }
    for f in &recorded {
        check_staircases(f, &leaf_shapes, &mut trace)?;
    }
    Ok((leaf_shapes, trace))
}

/// Checks the marked node and its ancestors within one recorded call.
fn check_staircases(
    f: &Frame,
    leaf_shapes: &[Option<Polygon>],
    trace: &mut OrthoTrace,
) -> Result<(), OrthoLayoutError> {
    let t = &f.tree;
    let anchor_point = f.container.corner(f.corner);
    let mut lineage = vec![f.marked];
    lineage.extend(t.ancestors(f.marked));
    for &node in &lineage {
        let parts: Vec<OrthoPolygon> = t
            .leaves()
            .filter(|&l| t.is_ancestor(node, l))
            .map(|l| {
                let shape = leaf_shapes[leaf_origin(t, l)].clone().expect("all leaves drawn");
                OrthoPolygon::try_from(shape)
            })
            .collect::<Result<_, _>>()?;
        let refs: Vec<&OrthoPolygon> = parts.iter().collect();
        trace.staircase_checks += 1;
        let ok = match ortho_union(&refs) {
            Ok(region) => {
                let b = region.bbox();
                let c = b.corner(f.corner);
                is_staircase(&region, f.corner) && c.dist(anchor_point) <= 1e-9
            }
            Err(_) => false,
        };
        if !ok {
            trace.staircase_failures += 1;
        }
    }
    Ok(())
}

/// Unions leaf shapes bottom-up into one region per input node.
pub fn assemble_regions(
    t: &WeightedTree,
    leaf_shapes: Vec<Option<Polygon>>,
) -> Result<Vec<Polygon>, OrthoLayoutError> {
    let mut regions: Vec<Option<OrthoPolygon>> = vec![None; t.len()];
    for id in (0..t.len()).rev() {
        let region = if t.is_leaf(id) {
            let shape = leaf_shapes[id].clone().ok_or_else(|| {
                OrthoLayoutError::CasePreconditionViolated(format!("leaf {} was never drawn", t.path(id)))
            })?;
            OrthoPolygon::try_from(shape)?
        } else {
            let parts: Vec<&OrthoPolygon> = t
                .children(id)
                .iter()
                .map(|&c| regions[c].as_ref().expect("children first"))
                .collect();
            ortho_union(&parts).map_err(|e| match e {
                GeomError::FragmentedRegion(msg) => {
                    GeomError::FragmentedRegion(format!("{}: {msg}", t.path(id)))
                }
                other => other,
            })?
        };
        regions[id] = Some(region);
    }
    Ok(regions
        .into_iter()
        .map(|r| r.expect("all assembled").into_polygon())
        .collect())
}

/// Orthoconvex treemap of `t` in the unit square.
pub fn layout_ortho(t: &WeightedTree) -> Result<Layout, OrthoLayoutError> {
    layout_ortho_with(t, OrthoOptions::default()).map(|(l, _)| l)
}

pub fn layout_ortho_with(
    t: &WeightedTree,
    options: OrthoOptions,
) -> Result<(Layout, OrthoTrace), OrthoLayoutError> {
    let (leaf_shapes, trace) = run_frames(t, options)?;
    let regions = assemble_regions(t, leaf_shapes)?;
    Ok((Layout::new(Algorithm::Ortho, regions), trace))
}
