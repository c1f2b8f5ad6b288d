//! File formats: hierarchy documents, path/weight CSV, layout records and
//! reports, plus SVG rendering and seeded random trees.

mod random;
mod svg;

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{Point, Polygon};
use crate::layout::{Algorithm, Layout, Region};
use crate::tree_model::{NestedNode, TreeError, WeightedTree};

pub use random::{generate_random_tree, RandomTreeSpec, WeightDistribution};
pub use svg::{render_svg, RenderStyle};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {message}")]
    File { path: String, message: String },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{location}: {source}")]
    Tree {
        location: String,
        #[source]
        source: TreeError,
    },
    #[error("layout record: {0}")]
    Layout(String),
    #[error("bad random-tree spec: {0}")]
    BadSpec(String),
}

fn read(path: &Path) -> Result<String, IoError> {
    fs::read_to_string(path).map_err(|e| IoError::File {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// Writes `contents`, creating nothing but the file itself.
pub fn write_file(path: &Path, contents: &str) -> Result<(), IoError> {
    fs::write(path, contents).map_err(|e| IoError::File {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn json_error(e: serde_json::Error) -> IoError {
    IoError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

/// Reads a hierarchy file; `.csv` files use the path/weight format.
pub fn parse_tree(path: &Path) -> Result<WeightedTree, IoError> {
    let text = read(path)?;
    if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) {
        parse_tree_csv(&text)
    } else {
        parse_tree_json(&text)
    }
}

/// Parses the nested `{"name", "weight", "children"}` document.
pub fn parse_tree_json(text: &str) -> Result<WeightedTree, IoError> {
    let root: NestedNode = serde_json::from_str(text).map_err(json_error)?;
    WeightedTree::from_nested(&root).map_err(|source| IoError::Tree {
        location: locate(&root, &source),
        source,
    })
}

/// Path of the first node whose label the error names.
fn locate(root: &NestedNode, err: &TreeError) -> String {
    let label = match err {
        TreeError::NonPositiveLeafWeight { node, .. }
        | TreeError::InconsistentInternalWeight { node, .. }
        | TreeError::MissingLeafWeight(node) => node,
        _ => return format!("node `{}`", root.name),
    };
    fn find(n: &NestedNode, label: &str, path: &mut Vec<String>) -> bool {
        path.push(n.name.clone());
        if n.name == label || n.children.iter().any(|c| find(c, label, path)) {
            return true;
        }
        path.pop();
        false
    }
    let mut path = Vec::new();
    find(root, label, &mut path);
    format!("node `{}`", path.join("/"))
}

#[derive(Debug, Deserialize)]
struct CsvRow {
    path: String,
    #[serde(default)]
    weight: Option<f64>,
}

/// Parses `path,weight` rows with `/`-separated paths sharing one root.
/// Intermediate nodes are created as needed; their weight is optional.
pub fn parse_tree_csv(text: &str) -> Result<WeightedTree, IoError> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut root: Option<NestedNode> = None;
    let mut lines: HashMap<String, usize> = HashMap::new();
    let csv_error = |e: csv::Error| {
        let line = e.position().map_or(0, |p| p.line() as usize);
        IoError::Parse {
            line,
            column: 1,
            message: e.to_string(),
        }
    };
    let headers = reader.headers().map_err(csv_error)?.clone();
    for record in reader.records() {
        let record = record.map_err(csv_error)?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let row: CsvRow = record.deserialize(Some(&headers)).map_err(csv_error)?;
        let parts: Vec<&str> = row.path.split('/').filter(|s| !s.is_empty()).collect();
        let Some((&first, rest)) = parts.split_first() else {
            return Err(IoError::Parse {
                line,
                column: 1,
                message: "empty path".into(),
            });
        };
        let r = root.get_or_insert_with(|| NestedNode::internal(first, Vec::new()));
        if r.name != first {
            return Err(IoError::Parse {
                line,
                column: 1,
                message: format!("second root `{first}` (first was `{}`)", r.name),
            });
        }
        let mut node = r;
        for &part in rest {
            let idx = match node.children.iter().position(|c| c.name == part) {
                Some(i) => i,
                None => {
                    node.children.push(NestedNode::internal(part, Vec::new()));
                    node.children.len() - 1
                }
            };
            node = &mut node.children[idx];
        }
        node.weight = row.weight;
        lines.insert(node.name.clone(), line);
    }
    let root = root.ok_or_else(|| IoError::Parse {
        line: 1,
        column: 1,
        message: "no rows".into(),
    })?;
    WeightedTree::from_nested(&root).map_err(|source| {
        let loc = locate(&root, &source);
        let label = match &source {
            TreeError::NonPositiveLeafWeight { node, .. }
            | TreeError::InconsistentInternalWeight { node, .. }
            | TreeError::MissingLeafWeight(node) => Some(node),
            _ => None,
        };
        let location = match label.and_then(|l| lines.get(l)) {
            Some(line) => format!("line {line}, {loc}"),
            None => loc,
        };
        IoError::Tree { location, source }
    })
}

/// Nested JSON with normalized weights on every node.
pub fn emit_tree_json(t: &WeightedTree) -> String {
    serde_json::to_string_pretty(&t.to_nested()).expect("tree serializes")
}

/// One region of a layout file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionRecord {
    pub path: String,
    pub vertices: Vec<[f64; 2]>,
}

/// Layout file: regions keyed by node path.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LayoutRecord {
    pub algorithm: Algorithm,
    pub regions: Vec<RegionRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub auxiliary: Vec<Vec<[f64; 2]>>,
}

fn vertices(p: &Polygon) -> Vec<[f64; 2]> {
    p.vertices().iter().map(|v| [v.x, v.y]).collect()
}

fn polygon(vs: &[[f64; 2]]) -> Result<Polygon, crate::geometry::GeomError> {
    Polygon::new(vs.iter().map(|&[x, y]| Point::new(x, y)).collect())
}

impl LayoutRecord {
    pub fn from_layout(t: &WeightedTree, layout: &Layout) -> LayoutRecord {
        LayoutRecord {
            algorithm: layout.algorithm,
            regions: layout
                .regions
                .iter()
                .map(|r| RegionRecord {
                    path: t.path(r.node),
                    vertices: vertices(&r.polygon),
                })
                .collect(),
            auxiliary: layout.auxiliary.iter().map(vertices).collect(),
        }
    }

    /// Resolves paths against `t`. Paths must be unique in the tree.
    pub fn to_layout(&self, t: &WeightedTree) -> Result<Layout, IoError> {
        let mut ids: HashMap<String, usize> = HashMap::new();
        for v in 0..t.len() {
            if ids.insert(t.path(v), v).is_some() {
                return Err(IoError::Layout(format!(
                    "tree path `{}` is not unique",
                    t.path(v)
                )));
            }
        }
        let regions = self
            .regions
            .iter()
            .map(|r| {
                let node = *ids
                    .get(&r.path)
                    .ok_or_else(|| IoError::Layout(format!("unknown node path `{}`", r.path)))?;
                let polygon =
                    polygon(&r.vertices).map_err(|e| IoError::Layout(format!("`{}`: {e}", r.path)))?;
                Ok(Region { node, polygon })
            })
            .collect::<Result<Vec<_>, IoError>>()?;
        let auxiliary = self
            .auxiliary
            .iter()
            .map(|vs| polygon(vs).map_err(|e| IoError::Layout(format!("auxiliary: {e}"))))
            .collect::<Result<Vec<_>, IoError>>()?;
        Ok(Layout {
            algorithm: self.algorithm,
            regions,
            auxiliary,
        })
    }
}

pub fn emit_layout_json(t: &WeightedTree, layout: &Layout) -> String {
    serde_json::to_string_pretty(&LayoutRecord::from_layout(t, layout)).expect("layout serializes")
}

pub fn parse_layout_json(text: &str, t: &WeightedTree) -> Result<Layout, IoError> {
    let rec: LayoutRecord = serde_json::from_str(text).map_err(json_error)?;
    rec.to_layout(t)
}

pub fn read_layout(path: &Path, t: &WeightedTree) -> Result<Layout, IoError> {
    parse_layout_json(&read(path)?, t)
}

/// Any serializable report as pretty JSON.
pub fn emit_report<T: Serialize>(report: &T) -> String {
    serde_json::to_string_pretty(report).expect("report serializes")
}
