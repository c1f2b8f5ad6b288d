//! Layout results shared by all algorithms.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::convex_layout::{layout_convex_traced, ConvexLayoutError, ConvexTrace};
use crate::geometry::{Polygon, Rect};
use crate::ortho_layout::{layout_ortho_with, OrthoCase, OrthoLayoutError, OrthoOptions, OrthoTrace};
use crate::single_level::{layout_single_level_traced, SingleLevelInstance, SingleTrace};
use crate::tree_model::{NodeId, WeightedTree};

/// Which layout algorithm produced a [`Layout`], and which bounds apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Convex,
    Ortho,
    Single,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Convex => "convex",
            Algorithm::Ortho => "ortho",
            Algorithm::Single => "single",
        }
    }
}

impl std::str::FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "convex" => Ok(Algorithm::Convex),
            "ortho" => Ok(Algorithm::Ortho),
            "single" => Ok(Algorithm::Single),
            other => Err(format!("unknown algorithm `{other}`")),
        }
    }
}

/// The polygon assigned to one input node.
#[derive(Clone, Debug, PartialEq)]
pub struct Region {
    pub node: NodeId,
    pub polygon: Polygon,
}

/// Regions for the nodes of a tree, in node order, plus any intermediate
/// rectangles the algorithm wants checked.
#[derive(Clone, Debug, PartialEq)]
pub struct Layout {
    pub algorithm: Algorithm,
    pub regions: Vec<Region>,
    pub auxiliary: Vec<Polygon>,
}

impl Layout {
    pub fn new(algorithm: Algorithm, polygons: Vec<Polygon>) -> Layout {
        Layout {
            algorithm,
            regions: polygons
                .into_iter()
                .enumerate()
                .map(|(node, polygon)| Region { node, polygon })
                .collect(),
            auxiliary: Vec::new(),
        }
    }

    /// Region of `node`, if present.
    pub fn region(&self, node: NodeId) -> Option<&Polygon> {
        match self.regions.get(node) {
            Some(r) if r.node == node => Some(&r.polygon),
            _ => self.regions.iter().find(|r| r.node == node).map(|r| &r.polygon),
        }
    }
}

#[derive(Debug, Error)]
pub enum LayoutError {
    #[error(transparent)]
    Convex(#[from] ConvexLayoutError),
    #[error(transparent)]
    Ortho(#[from] OrthoLayoutError),
    #[error("the single-level algorithm needs a tree whose root children are all leaves")]
    NotSingleLevel,
}

/// Algorithm-specific statistics from one layout run.
#[derive(Clone, Debug)]
pub enum Trace {
    Convex(ConvexTrace),
    Ortho(OrthoTrace),
    Single(SingleTrace),
}

impl Trace {
    /// Named counters for how often each branch ran.
    pub fn case_counts(&self) -> Vec<(&'static str, usize)> {
        match self {
            Trace::Convex(c) => vec![
                ("new_direction_cut", c.new_direction_cuts),
                ("axis_cut", c.axis_cuts),
            ],
            Trace::Ortho(o) => OrthoCase::ALL.iter().map(|&c| (c.name(), o.count(c))).collect(),
            Trace::Single(s) => vec![("balanced", s.balanced), ("slice", s.slices), ("wrap", s.wraps)],
        }
    }
}

/// Runs `algorithm` on `t`.
pub fn compute_layout(t: &WeightedTree, algorithm: Algorithm) -> Result<(Layout, Trace), LayoutError> {
    match algorithm {
        Algorithm::Convex => {
            let (l, tr) = layout_convex_traced(t)?;
            Ok((l, Trace::Convex(tr)))
        }
        Algorithm::Ortho => {
            let (l, tr) = layout_ortho_with(t, OrthoOptions::default())?;
            Ok((l, Trace::Ortho(tr)))
        }
        Algorithm::Single => {
            if t.len() == 1 {
                let l = Layout::new(Algorithm::Single, vec![Rect::unit().to_polygon()]);
                return Ok((l, Trace::Single(SingleTrace::default())));
            }
            if t.depth() != 1 {
                return Err(LayoutError::NotSingleLevel);
            }
            let weights: Vec<f64> = t.children(t.root()).iter().map(|&c| t.weight(c)).collect();
            let inst = SingleLevelInstance::new(&weights).map_err(|_| LayoutError::NotSingleLevel)?;
            let (l, tr) = layout_single_level_traced(&inst);
            Ok((l, Trace::Single(tr)))
        }
    }
}
