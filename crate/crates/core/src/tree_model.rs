//! Weighted input hierarchies and the strictly binary trees derived from them.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::partition::lpt_partition;

/// Index of a node in a [`WeightedTree`]. Ids follow preorder, root is 0.
pub type NodeId = usize;

/// Index of a node in a [`BinaryTree`].
pub type BinId = usize;

/// Relative tolerance for supplied internal weights in strict mode.
pub const STRICT_WEIGHT_TOL: f64 = 1e-6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TreeError {
    #[error("leaf `{node}` has non-positive weight {weight}")]
    NonPositiveLeafWeight { node: String, weight: f64 },
    #[error("leaf `{0}` has no weight")]
    MissingLeafWeight(String),
    #[error("node `{node}` declares weight {supplied} but its children sum to {computed}")]
    InconsistentInternalWeight {
        node: String,
        supplied: f64,
        computed: f64,
    },
    #[error("malformed tree: {0}")]
    MalformedTree(String),
    #[error("relative weight out of domain: {0}")]
    DomainError(String),
}

/// Nested `name`/`weight`/`children` form used by the JSON format.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NestedNode {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<NestedNode>,
}

impl NestedNode {
    pub fn leaf(name: impl Into<String>, weight: f64) -> NestedNode {
        NestedNode {
            name: name.into(),
            weight: Some(weight),
            children: Vec::new(),
        }
    }

    pub fn internal(name: impl Into<String>, children: Vec<NestedNode>) -> NestedNode {
        NestedNode {
            name: name.into(),
            weight: None,
            children,
        }
    }
}

/// Unvalidated node table: children refer to indices into `nodes`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RawTree {
    pub nodes: Vec<RawNode>,
    pub root: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RawNode {
    pub label: String,
    pub weight: Option<f64>,
    pub children: Vec<usize>,
}

impl RawTree {
    pub fn from_nested(root: &NestedNode) -> RawTree {
        let mut raw = RawTree::default();
        let mut stack = vec![(root, None::<usize>)];
        while let Some((n, parent)) = stack.pop() {
            let id = raw.nodes.len();
            raw.nodes.push(RawNode {
                label: n.name.clone(),
                weight: n.weight,
                children: Vec::new(),
            });
            if let Some(p) = parent {
                raw.nodes[p].children.push(id);
            }
            for c in n.children.iter().rev() {
                stack.push((c, Some(id)));
            }
        }
        // children were pushed in reverse pop order; restore input order
        for n in &mut raw.nodes {
            n.children.sort_unstable();
        }
        raw
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Node {
    pub label: String,
    pub weight: f64,
    pub parent: Option<NodeId>,
    pub children: Vec<NodeId>,
    pub depth: usize,
    /// One past the last preorder id in this node's subtree.
    pub subtree_end: NodeId,
}

/// A validated, properly weighted tree with root weight 1.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedTree {
    nodes: Vec<Node>,
}

impl WeightedTree {
    /// Validates the structure and rescales so that the root weight is 1.
    ///
    /// Supplied internal weights are ignored unless `strict` is set, in which
    /// case they must match their children's sum to [`STRICT_WEIGHT_TOL`].
    pub fn validate_and_normalize(raw: &RawTree, strict: bool) -> Result<WeightedTree, TreeError> {
        let n = raw.nodes.len();
        if n == 0 || raw.root >= n {
            return Err(TreeError::MalformedTree("missing root".into()));
        }
        let mut parent_count = vec![0usize; n];
        for node in &raw.nodes {
            for &c in &node.children {
                if c >= n {
                    return Err(TreeError::MalformedTree(format!(
                        "`{}` refers to unknown child {c}",
                        node.label
                    )));
                }
                parent_count[c] += 1;
            }
        }
        if parent_count[raw.root] > 0 {
            return Err(TreeError::MalformedTree("root has a parent (cycle)".into()));
        }
        if let Some(i) = parent_count.iter().position(|&c| c > 1) {
            return Err(TreeError::MalformedTree(format!(
                "`{}` has {} parents",
                raw.nodes[i].label, parent_count[i]
            )));
        }

        // preorder walk from the root
        let mut order: Vec<(usize, Option<NodeId>, usize)> = Vec::with_capacity(n);
        let mut stack = vec![(raw.root, None, 0usize)];
        let mut seen = vec![false; n];
        while let Some((r, parent, depth)) = stack.pop() {
            if seen[r] {
                return Err(TreeError::MalformedTree("cycle".into()));
            }
            seen[r] = true;
            let id = order.len();
            order.push((r, parent, depth));
            for &c in raw.nodes[r].children.iter().rev() {
                stack.push((c, Some(id), depth + 1));
            }
        }
        if order.len() != n {
            return Err(TreeError::MalformedTree(format!(
                "{} nodes are not reachable from the root",
                n - order.len()
            )));
        }

        let mut nodes: Vec<Node> = order
            .iter()
            .map(|&(r, parent, depth)| Node {
                label: raw.nodes[r].label.clone(),
                weight: 0.0,
                parent,
                children: Vec::new(),
                depth,
                subtree_end: 0,
            })
            .collect();
        for id in 1..n {
            let p = nodes[id].parent.expect("non-root has a parent");
            nodes[p].children.push(id);
        }

        // raw sums bottom-up (reverse preorder visits children first)
        let mut sums = vec![0.0f64; n];
        for id in (0..n).rev() {
            let src = &raw.nodes[order[id].0];
            nodes[id].subtree_end = nodes[id]
                .children
                .last()
                .map_or(id + 1, |&c| nodes[c].subtree_end);
            if nodes[id].children.is_empty() {
                let w = src
                    .weight
                    .ok_or_else(|| TreeError::MissingLeafWeight(src.label.clone()))?;
                if !(w > 0.0 && w.is_finite()) {
                    return Err(TreeError::NonPositiveLeafWeight {
                        node: src.label.clone(),
                        weight: w,
                    });
                }
                sums[id] = w;
            } else {
                let s: f64 = nodes[id].children.iter().map(|&c| sums[c]).sum();
                if strict {
                    if let Some(w) = src.weight {
                        if (w - s).abs() > STRICT_WEIGHT_TOL * s {
                            return Err(TreeError::InconsistentInternalWeight {
                                node: src.label.clone(),
                                supplied: w,
                                computed: s,
                            });
                        }
                    }
                }
                sums[id] = s;
            }
        }

        let total = sums[0];
        for id in (0..n).rev() {
            nodes[id].weight = if nodes[id].children.is_empty() {
                sums[id] / total
            } else {
                nodes[id].children.iter().map(|&c| nodes[c].weight).sum()
            };
        }
        Ok(WeightedTree { nodes })
    }

    pub fn from_nested(root: &NestedNode) -> Result<WeightedTree, TreeError> {
        WeightedTree::validate_and_normalize(&RawTree::from_nested(root), false)
    }

    /// A depth-one tree whose leaves carry `weights` in order.
    pub fn from_leaf_weights(weights: &[f64]) -> Result<WeightedTree, TreeError> {
        let children = weights
            .iter()
            .enumerate()
            .map(|(i, &w)| NestedNode::leaf(format!("leaf{i}"), w))
            .collect();
        WeightedTree::from_nested(&NestedNode::internal("root", children))
    }

    /// Back to nested form, with every node's normalized weight attached.
    pub fn to_nested(&self) -> NestedNode {
        fn build(t: &WeightedTree, id: NodeId) -> NestedNode {
            let n = t.node(id);
            NestedNode {
                name: n.label.clone(),
                weight: Some(n.weight),
                children: n.children.iter().map(|&c| build(t, c)).collect(),
            }
        }
        build(self, 0)
    }

    pub fn root(&self) -> NodeId {
        0
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id]
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn weight(&self, id: NodeId) -> f64 {
        self.nodes[id].weight
    }

    pub fn children(&self, id: NodeId) -> &[NodeId] {
        &self.nodes[id].children
    }

    pub fn parent(&self, id: NodeId) -> Option<NodeId> {
        self.nodes[id].parent
    }

    pub fn depth_of(&self, id: NodeId) -> usize {
        self.nodes[id].depth
    }

    pub fn is_leaf(&self, id: NodeId) -> bool {
        self.nodes[id].children.is_empty()
    }

    /// Length of the longest root-to-leaf path.
    pub fn depth(&self) -> usize {
        self.nodes.iter().map(|n| n.depth).max().unwrap_or(0)
    }

    pub fn leaves(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.len()).filter(|&i| self.is_leaf(i))
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves().count()
    }

    /// Preorder ids of the subtree rooted at `id`, including `id`.
    pub fn subtree(&self, id: NodeId) -> std::ops::Range<NodeId> {
        id..self.nodes[id].subtree_end
    }

    /// Labels from the root down to `id`, joined by `/`.
    pub fn path(&self, id: NodeId) -> String {
        let mut parts = Vec::new();
        let mut cur = Some(id);
        while let Some(c) = cur {
            parts.push(self.nodes[c].label.as_str());
            cur = self.nodes[c].parent;
        }
        parts.reverse();
        parts.join("/")
    }
}

/// Relative-weight categories.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RelCategory {
    Tiny,
    Small,
    Large,
    Huge,
}

/// Classifies `node_weight / subtree_weight` by the boundaries 1/8, 1/4, 7/8.
pub fn classify_rel(node_weight: f64, subtree_weight: f64) -> Result<RelCategory, TreeError> {
    if !(node_weight > 0.0 && subtree_weight > 0.0) || node_weight > subtree_weight * (1.0 + 1e-12) {
        return Err(TreeError::DomainError(format!(
            "{node_weight} of {subtree_weight}"
        )));
    }
    Ok(rel_category(node_weight / subtree_weight))
}

pub(crate) fn rel_category(rel: f64) -> RelCategory {
    if rel < 0.125 {
        RelCategory::Tiny
    } else if rel < 0.25 {
        RelCategory::Small
    } else if rel <= 0.875 {
        RelCategory::Large
    } else {
        RelCategory::Huge
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeKind {
    Original,
    Auxiliary,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BinaryNode {
    pub weight: f64,
    /// Depth label: the original-tree level this node belongs to.
    pub d: usize,
    /// Input node this binary node stands for; `None` for auxiliary nodes.
    pub origin: Option<NodeId>,
    pub children: Option<[BinId; 2]>,
    pub parent: Option<BinId>,
    pub kind: NodeKind,
}

impl BinaryNode {
    pub fn is_leaf(&self) -> bool {
        self.children.is_none()
    }
}

/// Strictly binary tree stored as an arena.
#[derive(Clone, Debug, PartialEq)]
pub struct BinaryTree {
    nodes: Vec<BinaryNode>,
    root: BinId,
}

/// A binary tree plus, for each input node, the binary node representing it.
///
/// Unary input nodes share the binary node of their only child.
#[derive(Clone, Debug)]
pub struct BinaryConversion {
    pub tree: BinaryTree,
    pub node_map: Vec<BinId>,
}

impl BinaryTree {
    pub fn root(&self) -> BinId {
        self.root
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, id: BinId) -> &BinaryNode {
        &self.nodes[id]
    }

    pub fn nodes(&self) -> &[BinaryNode] {
        &self.nodes
    }

    pub fn weight(&self, id: BinId) -> f64 {
        self.nodes[id].weight
    }

    pub fn total_weight(&self) -> f64 {
        self.nodes[self.root].weight
    }

    pub fn children(&self, id: BinId) -> Option<[BinId; 2]> {
        self.nodes[id].children
    }

    pub fn parent(&self, id: BinId) -> Option<BinId> {
        self.nodes[id].parent
    }

    pub fn is_leaf(&self, id: BinId) -> bool {
        self.nodes[id].is_leaf()
    }

    pub fn sibling(&self, id: BinId) -> Option<BinId> {
        let [l, r] = self.children(self.parent(id)?)?;
        Some(if l == id { r } else { l })
    }

    /// The heavier child, ties to the left.
    pub fn heavier_child(&self, id: BinId) -> Option<BinId> {
        let [l, r] = self.children(id)?;
        Some(if self.weight(l) >= self.weight(r) { l } else { r })
    }

    /// Ancestors of `id` from its parent up to the root.
    pub fn ancestors(&self, id: BinId) -> impl Iterator<Item = BinId> + '_ {
        std::iter::successors(self.parent(id), move |&a| self.parent(a))
    }

    pub fn is_ancestor(&self, anc: BinId, id: BinId) -> bool {
        anc == id || self.ancestors(id).any(|a| a == anc)
    }

    pub fn leaves(&self) -> impl Iterator<Item = BinId> + '_ {
        (0..self.len()).filter(|&i| self.is_leaf(i))
    }

    /// Relative weight with respect to the whole tree.
    pub fn rel(&self, id: BinId) -> f64 {
        self.weight(id) / self.total_weight()
    }

    pub fn category(&self, id: BinId) -> RelCategory {
        rel_category(self.rel(id))
    }

    /// Copy of the subtree rooted at `id`, and the old-to-new id map.
    pub fn subtree(&self, id: BinId) -> (BinaryTree, Vec<Option<BinId>>) {
        self.rebuild(id, &[])
    }

    /// Copy without the subtrees rooted at `remove`; the parent of each
    /// removed node is contracted so its sibling takes its place.
    ///
    /// Returns `None` if nothing is left.
    pub fn without(&self, remove: &[BinId]) -> Option<(BinaryTree, Vec<Option<BinId>>)> {
        let (t, map) = self.rebuild(self.root, remove);
        (!t.is_empty()).then_some((t, map))
    }

    /// Joins two trees under a new auxiliary root; returns the id offsets of
    /// `a` and `b` inside the result.
    pub fn join(a: &BinaryTree, b: &BinaryTree) -> (BinaryTree, usize, usize) {
        let mut nodes = Vec::with_capacity(a.len() + b.len() + 1);
        let shift = |n: &BinaryNode, off: usize| BinaryNode {
            children: n.children.map(|[l, r]| [l + off, r + off]),
            parent: n.parent.map(|p| p + off),
            ..n.clone()
        };
        nodes.extend(a.nodes.iter().map(|n| shift(n, 0)));
        let off_b = nodes.len();
        nodes.extend(b.nodes.iter().map(|n| shift(n, off_b)));
        let root = nodes.len();
        let (ra, rb) = (a.root, b.root + off_b);
        nodes[ra].parent = Some(root);
        nodes[rb].parent = Some(root);
        nodes.push(BinaryNode {
            weight: a.total_weight() + b.total_weight(),
            d: 0,
            origin: None,
            children: Some([ra, rb]),
            parent: None,
            kind: NodeKind::Auxiliary,
        });
        (BinaryTree { nodes, root }, 0, off_b)
    }

    fn rebuild(&self, from: BinId, skip: &[BinId]) -> (BinaryTree, Vec<Option<BinId>>) {
        let mut out = BinaryTree {
            nodes: Vec::new(),
            root: 0,
        };
        let mut map = vec![None; self.len()];
        if let Some(r) = self.copy_into(from, skip, &mut out.nodes, &mut map) {
            out.root = r;
            out.nodes[r].parent = None;
        }
        (out, map)
    }

    fn copy_into(
        &self,
        id: BinId,
        skip: &[BinId],
        out: &mut Vec<BinaryNode>,
        map: &mut [Option<BinId>],
    ) -> Option<BinId> {
        if skip.contains(&id) {
            return None;
        }
        let node = &self.nodes[id];
        let new_id = match node.children {
            None => {
                out.push(BinaryNode {
                    parent: None,
                    ..node.clone()
                });
                out.len() - 1
            }
            Some([l, r]) => {
                let nl = self.copy_into(l, skip, out, map);
                let nr = self.copy_into(r, skip, out, map);
                match (nl, nr) {
                    (Some(a), Some(b)) => {
                        out.push(BinaryNode {
                            weight: out[a].weight + out[b].weight,
                            children: Some([a, b]),
                            parent: None,
                            ..node.clone()
                        });
                        let me = out.len() - 1;
                        out[a].parent = Some(me);
                        out[b].parent = Some(me);
                        me
                    }
                    (Some(a), None) | (None, Some(a)) => return Some(a),
                    (None, None) => return None,
                }
            }
        };
        map[id] = Some(new_id);
        Some(new_id)
    }
}

/// Arena builder shared by both conversions.
struct Builder<'a> {
    t: &'a WeightedTree,
    nodes: Vec<BinaryNode>,
    node_map: Vec<BinId>,
}

impl<'a> Builder<'a> {
    fn new(t: &'a WeightedTree) -> Self {
        Builder {
            t,
            nodes: Vec::with_capacity(2 * t.len()),
            node_map: vec![usize::MAX; t.len()],
        }
    }

    fn push(&mut self, weight: f64, d: usize, origin: Option<NodeId>, children: Option<[BinId; 2]>) -> BinId {
        let id = self.nodes.len();
        self.nodes.push(BinaryNode {
            weight,
            d,
            origin,
            children,
            parent: None,
            kind: if origin.is_some() {
                NodeKind::Original
            } else {
                NodeKind::Auxiliary
            },
        });
        if let Some([l, r]) = children {
            self.nodes[l].parent = Some(id);
            self.nodes[r].parent = Some(id);
        }
        id
    }

    fn finish(self, root: BinId) -> BinaryConversion {
        BinaryConversion {
            tree: BinaryTree {
                nodes: self.nodes,
                root,
            },
            node_map: self.node_map,
        }
    }

    /// Converts input node `v` with depth label `d`, collapsing unary chains.
    fn convex(&mut self, v: NodeId, d: usize) -> BinId {
        let kids = self.t.children(v);
        let id = match kids.len() {
            0 => self.push(self.t.weight(v), d, Some(v), None),
            1 => self.convex(kids[0], d),
            _ => {
                let kids = kids.to_vec();
                self.convex_group(&kids, d, Some(v))
            }
        };
        self.node_map[v] = id;
        id
    }

    /// Builds the binary node for a set of siblings under a node at label `d`.
    fn convex_group(&mut self, items: &[NodeId], d: usize, origin: Option<NodeId>) -> BinId {
        if let [only] = items {
            return self.convex(*only, d + 1);
        }
        let weights: Vec<f64> = items.iter().map(|&c| self.t.weight(c)).collect();
        let total: f64 = weights.iter().sum();
        if items.len() == 2 {
            let l = self.convex(items[0], d + 1);
            let r = self.convex(items[1], d + 1);
            return self.push(total, d, origin, Some([l, r]));
        }
        let heavy = argmax_first(&weights);
        let (left, right) = if weights[heavy] >= total / 2.0 {
            let rest: Vec<NodeId> = items
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != heavy)
                .map(|(_, &c)| c)
                .collect();
            let l = self.convex(items[heavy], d + 1);
            (l, self.convex_group(&rest, d, None))
        } else {
            let split = lpt_partition(&weights).expect("at least three items");
            let s1: Vec<NodeId> = split.h1.iter().map(|&i| items[i]).collect();
            let s2: Vec<NodeId> = split.h2.iter().map(|&i| items[i]).collect();
            let l = self.convex_group(&s1, d, None);
            (l, self.convex_group(&s2, d, None))
        };
        let w = self.nodes[left].weight + self.nodes[right].weight;
        self.push(w, d, origin, Some([left, right]))
    }

    fn generic(&mut self, v: NodeId) -> BinId {
        let kids = self.t.children(v);
        let id = match kids.len() {
            0 => self.push(self.t.weight(v), 0, Some(v), None),
            1 => self.generic(kids[0]),
            _ => {
                let kids = kids.to_vec();
                self.generic_group(&kids, Some(v))
            }
        };
        self.node_map[v] = id;
        id
    }

    fn generic_group(&mut self, items: &[NodeId], origin: Option<NodeId>) -> BinId {
        if let [only] = items {
            return self.generic(*only);
        }
        let (left, right) = if items.len() == 2 {
            (self.generic(items[0]), self.generic(items[1]))
        } else {
            let weights: Vec<f64> = items.iter().map(|&c| self.t.weight(c)).collect();
            let split = lpt_partition(&weights).expect("at least three items");
            let s1: Vec<NodeId> = split.h1.iter().map(|&i| items[i]).collect();
            let s2: Vec<NodeId> = split.h2.iter().map(|&i| items[i]).collect();
            (self.generic_group(&s1, None), self.generic_group(&s2, None))
        };
        let w = self.nodes[left].weight + self.nodes[right].weight;
        self.push(w, 0, origin, Some([left, right]))
    }
}

fn argmax_first(w: &[f64]) -> usize {
    let mut best = 0;
    for (i, &x) in w.iter().enumerate() {
        if x > w[best] {
            best = i;
        }
    }
    best
}

/// Binary conversion with depth labels for the convex layout.
///
/// A node with two children hands label `d + 1` to both. Otherwise a child of
/// at least half the weight is split off with `d + 1` and the rest stays in an
/// auxiliary node labelled `d`; failing that, the children are split into two
/// LPT bins, each an auxiliary node labelled `d`.
pub fn to_binary_convex(t: &WeightedTree) -> BinaryConversion {
    let mut b = Builder::new(t);
    let root = b.convex(t.root(), 0);
    b.finish(root)
}

/// Binary conversion grouping children with LPT; depth labels are all zero.
pub fn to_binary_generic(t: &WeightedTree) -> BinaryConversion {
    let mut b = Builder::new(t);
    let root = b.generic(t.root());
    b.finish(root)
}

/// Descends from a non-tiny `id` to the heavier child while the current node
/// is huge and internal. The result is a non-tiny leaf or a small or large node.
pub fn find_drawable(t: &BinaryTree, id: BinId) -> BinId {
    let mut cur = id;
    while t.category(cur) == RelCategory::Huge {
        match t.heavier_child(cur) {
            Some(c) => cur = c,
            None => break,
        }
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;

    fn leaves(ws: &[f64]) -> WeightedTree {
        WeightedTree::from_leaf_weights(ws).unwrap()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn normalizes_leaf_weights() {
        let t = leaves(&[2.0, 3.0, 5.0]);
        let w: Vec<f64> = t.leaves().map(|l| t.weight(l)).collect();
        assert!(close(w[0], 0.2) && close(w[1], 0.3) && close(w[2], 0.5));
        assert!(close(t.weight(t.root()), 1.0));
        let single = WeightedTree::from_nested(&NestedNode::leaf("x", 7.0)).unwrap();
        assert_eq!(single.weight(0), 1.0);
    }

    #[test]
    fn rejects_bad_weights() {
        assert!(matches!(
            WeightedTree::from_leaf_weights(&[1.0, 0.0]),
            Err(TreeError::NonPositiveLeafWeight { .. })
        ));
        let mut n = NestedNode::internal("r", vec![NestedNode::leaf("a", 1.0), NestedNode::leaf("b", 1.0)]);
        n.weight = Some(3.0);
        let raw = RawTree::from_nested(&n);
        assert!(WeightedTree::validate_and_normalize(&raw, false).is_ok());
        assert!(matches!(
            WeightedTree::validate_and_normalize(&raw, true),
            Err(TreeError::InconsistentInternalWeight { .. })
        ));
    }

    #[test]
    fn rejects_malformed_structure() {
        let node = |label: &str, children: Vec<usize>| RawNode {
            label: label.into(),
            weight: Some(1.0),
            children,
        };
        let two_parents = RawTree {
            nodes: vec![
                node("r", vec![1, 2]),
                node("a", vec![3]),
                node("b", vec![3]),
                node("c", vec![]),
            ],
            root: 0,
        };
        assert!(matches!(
            WeightedTree::validate_and_normalize(&two_parents, false),
            Err(TreeError::MalformedTree(_))
        ));
        let cycle = RawTree {
            nodes: vec![node("r", vec![1]), node("a", vec![2]), node("b", vec![1])],
            root: 0,
        };
        assert!(WeightedTree::validate_and_normalize(&cycle, false).is_err());
        let missing = RawTree {
            nodes: vec![],
            root: 0,
        };
        assert!(WeightedTree::validate_and_normalize(&missing, false).is_err());
    }

    #[test]
    fn preorder_paths_and_ranges() {
        let t = WeightedTree::from_nested(&NestedNode::internal(
            "r",
            vec![
                NestedNode::internal("a", vec![NestedNode::leaf("x", 1.0), NestedNode::leaf("y", 1.0)]),
                NestedNode::leaf("b", 2.0),
            ],
        ))
        .unwrap();
        let labels: Vec<&str> = t.nodes().iter().map(|n| n.label.as_str()).collect();
        assert_eq!(labels, ["r", "a", "x", "y", "b"]);
        assert_eq!(t.path(3), "r/a/y");
        assert_eq!(t.subtree(1), 1..4);
        assert_eq!(t.depth(), 2);
        assert!(close(t.weight(1), 0.5));
    }

    #[test]
    fn convex_conversion_heavy_child() {
        let t = leaves(&[0.5, 0.3, 0.2]);
        let conv = to_binary_convex(&t);
        let b = &conv.tree;
        let [l, r] = b.children(b.root()).unwrap();
        assert_eq!(b.node(l).origin, Some(1));
        assert_eq!(b.node(l).d, 1);
        assert_eq!(b.node(r).kind, NodeKind::Auxiliary);
        assert_eq!(b.node(r).d, 0);
        assert!(close(b.weight(r), 0.5));
        let [rl, rr] = b.children(r).unwrap();
        assert_eq!((b.node(rl).origin, b.node(rr).origin), (Some(2), Some(3)));
        assert_eq!((b.node(rl).d, b.node(rr).d), (1, 1));
    }

    #[test]
    fn convex_conversion_two_children_and_lpt() {
        let t = leaves(&[0.6, 0.4]);
        let b = to_binary_convex(&t).tree;
        let [l, r] = b.children(b.root()).unwrap();
        assert_eq!((b.node(l).d, b.node(r).d), (1, 1));

        let t = leaves(&[0.25; 4]);
        let b = to_binary_convex(&t).tree;
        let [l, r] = b.children(b.root()).unwrap();
        for c in [l, r] {
            assert_eq!(b.node(c).kind, NodeKind::Auxiliary);
            assert_eq!(b.node(c).d, 0);
            assert!(close(b.weight(c), 0.5));
        }
    }

    #[test]
    fn generic_conversion() {
        let t = leaves(&[0.5, 0.3, 0.2]);
        let b = to_binary_generic(&t).tree;
        let [l, r] = b.children(b.root()).unwrap();
        assert_eq!(b.node(l).origin, Some(1));
        assert_eq!(b.node(r).kind, NodeKind::Auxiliary);
        let t = leaves(&[0.2; 5]);
        let b = to_binary_generic(&t).tree;
        let internal = b.nodes().iter().filter(|n| !n.is_leaf()).count();
        assert_eq!(internal, 4);
        assert_eq!(b.leaves().count(), 5);
    }

    #[test]
    fn unary_chains_collapse() {
        let t = WeightedTree::from_nested(&NestedNode::internal(
            "r",
            vec![NestedNode::internal("only", vec![NestedNode::leaf("x", 1.0)])],
        ))
        .unwrap();
        let conv = to_binary_convex(&t);
        assert_eq!(conv.tree.len(), 1);
        assert_eq!(conv.node_map, vec![0, 0, 0]);
    }

    #[test]
    fn rel_categories() {
        assert_eq!(classify_rel(0.05, 1.0).unwrap(), RelCategory::Tiny);
        assert_eq!(classify_rel(0.125, 1.0).unwrap(), RelCategory::Small);
        assert_eq!(classify_rel(0.25, 1.0).unwrap(), RelCategory::Large);
        assert_eq!(classify_rel(0.875, 1.0).unwrap(), RelCategory::Large);
        assert_eq!(classify_rel(0.9, 1.0).unwrap(), RelCategory::Huge);
        assert!(classify_rel(1.1, 1.0).is_err());
    }

    #[test]
    fn drawable_descent() {
        // root{a{a1 0.85, a2 0.05}, b 0.1}
        let t = WeightedTree::from_nested(&NestedNode::internal(
            "root",
            vec![
                NestedNode::internal(
                    "a",
                    vec![NestedNode::leaf("a1", 0.85), NestedNode::leaf("a2", 0.05)],
                ),
                NestedNode::leaf("b", 0.1),
            ],
        ))
        .unwrap();
        let conv = to_binary_generic(&t);
        let b = &conv.tree;
        assert_eq!(find_drawable(b, b.root()), conv.node_map[2]);
        let small = conv.node_map[4];
        assert_eq!(find_drawable(b, conv.node_map[1]), conv.node_map[2]);
        assert_eq!(b.category(small), RelCategory::Tiny);
    }

    #[test]
    fn without_contracts_parent() {
        let t = leaves(&[0.4, 0.3, 0.2, 0.1]);
        let b = to_binary_generic(&t).tree;
        let leaf = b.leaves().next().unwrap();
        let sib = b.sibling(leaf).unwrap();
        let (rest, map) = b.without(&[leaf]).unwrap();
        assert_eq!(rest.len(), b.len() - 2);
        assert!(close(rest.total_weight(), 1.0 - b.weight(leaf)));
        let s = map[sib].unwrap();
        assert!(close(rest.weight(s), b.weight(sib)));
        assert!(b.without(&[b.root()]).is_none());
        let (joined, oa, ob) = BinaryTree::join(&rest, &b.subtree(leaf).0);
        assert_eq!(oa, 0);
        assert_eq!(ob, rest.len());
        assert!(close(joined.total_weight(), 1.0));
        assert_eq!(joined.parent(ob), Some(joined.root()));
    }
}
