use std::fmt::Write;

use crate::geometry::Polygon;
use crate::layout::Layout;
use crate::tree_model::WeightedTree;

const VIEWPORT: f64 = 1000.0;

/// Border and fill styling by depth.
///
/// Stroke width at depth `d` is `max(base_stroke * stroke_decay^d,
/// min_stroke)`; stroke color moves from `stroke_dark` to `stroke_light`
/// over `color_depths` levels. Leaves are filled from `palette` by their
/// top-level ancestor.
#[derive(Clone, Debug, PartialEq)]
pub struct RenderStyle {
    pub base_stroke: f64,
    pub stroke_decay: f64,
    pub min_stroke: f64,
    pub stroke_dark: [u8; 3],
    pub stroke_light: [u8; 3],
    pub color_depths: usize,
    pub palette: Vec<String>,
}

impl Default for RenderStyle {
    fn default() -> Self {
        RenderStyle {
            base_stroke: 4.0,
            stroke_decay: 0.75,
            min_stroke: 0.25,
            stroke_dark: [0x10, 0x10, 0x10],
            stroke_light: [0xb0, 0xb0, 0xb0],
            color_depths: 8,
            palette: [
                "#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462", "#b3de69", "#fccde5",
                "#d9d9d9", "#bc80bd",
            ]
            .map(String::from)
            .to_vec(),
        }
    }
}

impl RenderStyle {
    pub fn stroke_width(&self, depth: usize) -> f64 {
        (self.base_stroke * self.stroke_decay.powi(depth as i32)).max(self.min_stroke)
    }

    pub fn stroke_color(&self, depth: usize) -> String {
        let t = (depth as f64 / self.color_depths.max(1) as f64).min(1.0);
        let c: Vec<u8> = (0..3)
            .map(|i| {
                let a = f64::from(self.stroke_dark[i]);
                let b = f64::from(self.stroke_light[i]);
                (a + (b - a) * t).round() as u8
            })
            .collect();
        format!("#{:02x}{:02x}{:02x}", c[0], c[1], c[2])
    }
}

fn path_data(p: &Polygon) -> String {
    let mut d = String::new();
    for (i, v) in p.vertices().iter().enumerate() {
        let cmd = if i == 0 { 'M' } else { 'L' };
        write!(d, "{cmd}{:.6} {:.6} ", v.x * VIEWPORT, (1.0 - v.y) * VIEWPORT).unwrap();
    }
    d.push('Z');
    d
}

/// SVG 1.1 document of `layout`: leaves filled, internal regions outlined,
/// deepest regions painted first so that higher-level borders stay on top.
pub fn render_svg(t: &WeightedTree, layout: &Layout, style: &RenderStyle) -> String {
    let mut order: Vec<&crate::layout::Region> = layout.regions.iter().collect();
    order.sort_by_key(|r| (std::cmp::Reverse(t.depth_of(r.node)), r.node));
    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{0}" height="{0}" viewBox="0 0 {0} {0}">"#,
        VIEWPORT
    )
    .unwrap();
    for r in order {
        let depth = t.depth_of(r.node);
        let fill = if t.is_leaf(r.node) {
            let mut top = r.node;
            while let Some(p) = t.parent(top).filter(|&p| p != t.root()) {
                top = p;
            }
            let slot = t.children(t.root()).iter().position(|&c| c == top).unwrap_or(0);
            style.palette[slot % style.palette.len()].clone()
        } else {
            "none".to_string()
        };
        writeln!(
            out,
            r#"<path d="{}" fill="{}" stroke="{}" stroke-width="{:.6}" stroke-linejoin="miter"><title>{}</title></path>"#,
            path_data(&r.polygon),
            fill,
            style.stroke_color(depth),
            style.stroke_width(depth),
            escape(&t.path(r.node)),
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Rect;
    use crate::layout::Algorithm;
    use crate::single_level::{layout_single_level, SingleLevelInstance};
    use crate::tree_model::NestedNode;

    #[test]
    fn single_leaf_one_filled_square() {
        let t = WeightedTree::from_nested(&NestedNode::leaf("only", 1.0)).unwrap();
        let l = Layout::new(Algorithm::Ortho, vec![Rect::unit().to_polygon()]);
        let svg = render_svg(&t, &l, &RenderStyle::default());
        assert_eq!(svg.matches("<path").count(), 1);
        assert!(svg.contains("fill=\"#8dd3c7\""));
        assert!(svg.contains("M0.000000 1000.000000 L1000.000000 1000.000000"));
    }

    #[test]
    fn root_stroke_is_widest_and_last() {
        let inst = SingleLevelInstance::new(&[0.25; 4]).unwrap();
        let t = inst.tree();
        let svg = render_svg(&t, &layout_single_level(&inst), &RenderStyle::default());
        let paths: Vec<&str> = svg.lines().filter(|l| l.starts_with("<path")).collect();
        assert_eq!(paths.len(), 5);
        assert!(paths[4].contains("fill=\"none\"") && paths[4].contains("stroke-width=\"4.000000\""));
        assert!(paths[..4].iter().all(|p| p.contains("stroke-width=\"3.000000\"")));
    }

    #[test]
    fn widths_never_increase() {
        let s = RenderStyle::default();
        for d in 0..30 {
            assert!(s.stroke_width(d + 1) <= s.stroke_width(d));
        }
        assert_eq!(s.stroke_width(40), 0.25);
    }
}
